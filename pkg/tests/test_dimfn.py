import math

import numpy as np
import pytest

from flab import dimfn
from flab.dimfn import (
    DimensionFunction,
    EQUIVALENT,
    FIRST_SMALLER,
    SECOND_SMALLER,
    compare,
    evaluate,
    gap,
    identity,
    inverse,
    inverse_log,
    is_doubling,
    is_zero_dimensional,
    power,
    power_log,
    table_gauge,
)
from flab.errors import DomainError, RangeError


def test_evaluate_power_half():
    assert evaluate(power(0.5), 0.25) == pytest.approx(0.5)


def test_evaluate_identity():
    assert evaluate(power(1.0), 0.3) == pytest.approx(0.3)


def test_evaluate_inverse_log():
    assert evaluate(inverse_log(1.0), math.exp(-2)) == pytest.approx(0.5)


def test_evaluate_domain_errors():
    with pytest.raises(DomainError):
        evaluate(power(0.5), 0.0)
    with pytest.raises(DomainError):
        evaluate(power(0.5), -1.0)
    with pytest.raises(DomainError):
        evaluate(inverse_log(1.0), 0.9)  # above x_max


def test_power_is_nonnegative_nondecreasing_on_grid():
    for h in [power(0.3), power_log(0.5, 2.0), inverse_log(1.0), power(1.5)]:
        xs = 2.0 ** -np.arange(math.ceil(h.min_j()), 41)
        vals = [evaluate(h, x) for x in xs]
        assert all(v >= 0 for v in vals)
        # xs is decreasing, so values must be non-increasing along the list
        assert all(a >= b for a, b in zip(vals, vals[1:]))


def test_vanishing_proxy_for_fast_gauges():
    # h(2^-40) far below h at the coarsest usable scale, for gauges that
    # vanish at a power-like or faster rate
    for h in [power(0.5), power(1.0), power_log(0.5, 1.0), inverse_log(3.0)]:
        j0 = math.ceil(h.min_j())
        assert evaluate(h, 2.0 ** -40) < 1e-3 * evaluate(h, 2.0 ** -j0)


def test_is_doubling_power():
    res = is_doubling(power(0.7), 2.0)
    assert res.verdict == "yes"
    assert res.constant == pytest.approx(2 ** 0.7, rel=1e-12)
    # homogeneity: every sampled ratio equals 2^0.7 exactly
    assert np.allclose(res.ratios, 2 ** 0.7, rtol=1e-12)


def test_is_doubling_inverse_log():
    # ratio log(1/x)/log(1/2x) tabulated over x = 2^-j is j/(j-1) <= 2,
    # decreasing, so the verdict is yes with fitted C <= 2
    res = is_doubling(inverse_log(1.0), 2.0)
    assert res.verdict == "yes"
    assert 1.0 <= res.constant <= 2.0
    assert res.ratios[-1] == pytest.approx(1.0, abs=0.05)


def test_is_doubling_superexponential_table_inconclusive():
    # h(2^-j) = 2^(-j^2): the doubling ratio at 2^-j is 2^(2j-1), growing
    # without bound through the finest scales
    pts = [(2.0 ** -j, 2.0 ** -(j * j)) for j in range(1, 21)]
    res = is_doubling(table_gauge(pts), 2.0, samples=19)
    assert res.verdict == "inconclusive"


def test_doubling_constant_at_least_one():
    for h in [power(0.2), power_log(0.4, 1.5), inverse_log(2.0)]:
        res = is_doubling(h, 3.0)
        if res.verdict == "yes":
            assert res.constant >= 1.0


def test_compare_powers():
    assert compare(power(0.5), power(0.7)) == FIRST_SMALLER
    assert compare(power(0.7), power(0.5)) == SECOND_SMALLER


def test_compare_equivalent_scaled():
    g = power(0.5)
    h = DimensionFunction("power-log", alpha=0.5, theta=1e-12, scale=3.0, x_max=1.0)
    # h = 3 * x^0.5 up to a negligible log factor: constant ratio 3
    assert compare(g, h) == EQUIVALENT


def test_compare_inverse_log_vs_small_power():
    # gap(j) = 2^(-0.1 j) * j * ln 2 -> 0: the power eventually wins
    assert compare(inverse_log(1.0), power(0.1)) == FIRST_SMALLER


def test_compare_antisymmetry():
    pairs = [
        (power(0.4), power(0.9)),
        (inverse_log(1.0), power(0.2)),
        (power_log(0.5, 1.0), power(0.8)),
    ]
    for g, h in pairs:
        v = compare(g, h)
        w = compare(h, g)
        if v == FIRST_SMALLER:
            assert w == SECOND_SMALLER
        if v == SECOND_SMALLER:
            assert w == FIRST_SMALLER


def test_gap_power_pair():
    assert gap(power(1.0), power(2.0), 1 / 8) == pytest.approx(1 / 8)


def test_gap_identical():
    h = power(0.6)
    for x in [0.5, 0.1, 2.0 ** -20]:
        assert gap(h, h, x) == pytest.approx(1.0)


def test_gap_power_log_pair():
    g = power(0.5)
    h = power_log(0.5, 1.0)
    x = 2.0 ** -8
    assert gap(g, h, x) == pytest.approx(8 * math.log(2))


def test_gap_reciprocal():
    rng = np.random.default_rng(7)
    for _ in range(20):
        a, b = rng.uniform(0.2, 1.5, size=2)
        x = 2.0 ** -rng.integers(2, 30)
        g, h = power(a), power(b)
        assert gap(g, h, x) * gap(h, g, x) == pytest.approx(1.0, rel=1e-9)


def test_inverse_power():
    assert inverse(power(2.0), 0.25) == pytest.approx(0.5)
    assert inverse(power(1.0), 0.3) == pytest.approx(0.3)


def test_inverse_inverse_log():
    assert inverse(inverse_log(1.0), 0.5, tol=1e-9) == pytest.approx(math.exp(-2), rel=1e-6)


def test_inverse_out_of_range():
    with pytest.raises(RangeError):
        inverse(power(0.5), 2.0)


def test_inverse_roundtrip_random():
    rng = np.random.default_rng(42)
    fams = []
    for _ in range(100):
        kind = rng.integers(0, 3)
        if kind == 0:
            h = power(float(rng.uniform(0.2, 2.0)))
        elif kind == 1:
            h = power_log(float(rng.uniform(0.3, 1.2)), float(rng.uniform(0.5, 3.0)))
        else:
            h = inverse_log(float(rng.uniform(0.5, 3.0)))
        fams.append(h)
    for h in fams:
        j = float(rng.uniform(max(4.0, h.min_j() + 1), 40.0))
        x = 2.0 ** -j
        y = evaluate(h, x)
        xb = inverse(h, y, tol=1e-9)
        assert evaluate(h, xb) == pytest.approx(y, rel=1e-6)


def test_zero_dimensional_inverse_log():
    assert is_zero_dimensional(inverse_log(1.0)) == "yes"


def test_zero_dimensional_power_no():
    assert is_zero_dimensional(power(0.3)) == "no"


def test_zero_dimensional_power_log_no():
    assert is_zero_dimensional(power_log(0.2, 3.0)) == "no"


def test_json_roundtrip():
    for h in [power(0.5), power_log(0.4, 2.0, 1.5), inverse_log(1.0),
              table_gauge([(0.5, 0.3), (0.25, 0.2)])]:
        again = DimensionFunction.from_json(h.to_json())
        assert again == h


def test_identity_is_power_one():
    assert identity.family == "power"
    assert evaluate(identity, 0.125) == 0.125
