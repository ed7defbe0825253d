"""Pure-numpy implementations of the grid kernels.

Same contracts as the compiled extension in ``_kernels.pyx``; selected at
import time by ``flab.kernels`` when the extension is unavailable (or when
FLAB_KERNELS=python).  The formulas here are kept operation-for-operation
identical to the compiled versions so both backends agree bit-for-bit.

Geometry conventions: the grid covers [0,1]^2 at resolution m (cell side
s = 2^-m); cell (ix, iy) has center ((ix+0.5)s, (iy+0.5)s).  A tube of
half-width delta around a spine segment AB contains the cells whose centers
lie within distance delta of the segment (the capsule around AB).  Capsules
are convex, so each grid row meets one in a single contiguous x-interval;
all rasterization is row-interval based.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def capsule_rows(m, ax, ay, bx, by, delta):
    """Row intervals of the capsule cells.

    Returns (ys, xlo, xhi): int64 arrays where row ys[i] contributes cells
    xlo[i]..xhi[i] inclusive.  Rows with no cells are omitted; everything is
    clamped to the grid.
    """
    n = 1 << m
    s = 1.0 / n
    dx, dy = bx - ax, by - ay
    length = np.hypot(dx, dy)
    if length > 0:
        ux, uy = dx / length, dy / length
    else:
        ux, uy = 1.0, 0.0

    ymin = min(ay, by) - delta
    ymax = max(ay, by) + delta
    y_lo = max(0, int(np.ceil(ymin / s - 0.5)))
    y_hi = min(n - 1, int(np.floor(ymax / s - 0.5)))
    if y_hi < y_lo:
        z = np.zeros(0, dtype=np.int64)
        return z, z.copy(), z.copy()

    ys = np.arange(y_lo, y_hi + 1, dtype=np.int64)
    py = (ys + 0.5) * s
    big = 4.0  # sentinel outside [0,1] by a wide margin

    lo = np.full(ys.shape, big)
    hi = np.full(ys.shape, -big)

    # endpoint disks
    for ex, ey in ((ax, ay), (bx, by)):
        q = delta * delta - (py - ey) ** 2
        ok = q >= 0.0
        r = np.sqrt(np.where(ok, q, 0.0))
        lo = np.where(ok, np.minimum(lo, ex - r), lo)
        hi = np.where(ok, np.maximum(hi, ex + r), hi)

    # core rectangle: 0 <= (P-A).u <= L and |(P-A).v| <= delta, v = (-uy, ux)
    if length > 0:
        t = py - ay
        if ux != 0.0:
            c1a = (0.0 - t * uy) / ux + ax
            c1b = (length - t * uy) / ux + ax
            r1lo, r1hi = np.minimum(c1a, c1b), np.maximum(c1a, c1b)
            ok1 = np.ones(ys.shape, dtype=bool)
        else:
            val = t * uy
            ok1 = (val >= 0.0) & (val <= length)
            r1lo = np.full(ys.shape, -big)
            r1hi = np.full(ys.shape, big)
        if uy != 0.0:
            c2a = (t * ux - delta) / uy + ax
            c2b = (t * ux + delta) / uy + ax
            r2lo, r2hi = np.minimum(c2a, c2b), np.maximum(c2a, c2b)
            ok2 = np.ones(ys.shape, dtype=bool)
        else:
            ok2 = np.abs(t * ux) <= delta
            r2lo = np.full(ys.shape, -big)
            r2hi = np.full(ys.shape, big)
        rlo = np.maximum(r1lo, r2lo)
        rhi = np.minimum(r1hi, r2hi)
        ok = ok1 & ok2 & (rlo <= rhi)
        lo = np.where(ok, np.minimum(lo, rlo), lo)
        hi = np.where(ok, np.maximum(hi, rhi), hi)

    xlo = np.ceil(lo / s - 0.5).astype(np.int64)
    xhi = np.floor(hi / s - 0.5).astype(np.int64)
    np.clip(xlo, 0, n - 1, out=xlo)
    np.clip(xhi, 0, n - 1, out=xhi)
    keep = (hi >= lo) & (xlo <= xhi)
    return ys[keep], xlo[keep], xhi[keep]


def rows_to_cells(ys, xlo, xhi):
    """Expand row intervals into explicit (xs, ys) cell arrays."""
    if len(ys) == 0:
        z = np.zeros(0, dtype=np.int64)
        return z, z.copy()
    counts = (xhi - xlo + 1).astype(np.int64)
    total = int(counts.sum())
    xs = np.empty(total, dtype=np.int64)
    yy = np.repeat(ys, counts)
    pos = 0
    for i in range(len(ys)):
        c = counts[i]
        xs[pos:pos + c] = np.arange(xlo[i], xhi[i] + 1)
        pos += c
    return xs, yy


def capsule_cell_count(ys, xlo, xhi):
    if len(ys) == 0:
        return 0
    return int((xhi - xlo + 1).sum())


def capsule_sum(values, m, ax, ay, bx, by, delta):
    """Sum of a dense (2^m, 2^m) field over the capsule cells, with count.

    values is indexed [ix, iy].  Returns (total, count).
    """
    ys, xlo, xhi = capsule_rows(m, ax, ay, bx, by, delta)
    total = 0.0
    count = 0
    for i in range(len(ys)):
        seg = values[xlo[i]:xhi[i] + 1, ys[i]]
        total += float(seg.sum())
        count += xhi[i] - xlo[i] + 1
    return total, count


def sampled_segment_cells(m, ax, ay, bx, by):
    """Cells hit by sampling the segment at half-cell spacing.

    Deterministic rasterization used for fiber placement: sample points
    t = i/nsteps along AB with nsteps = ceil(2 * L * 2^m), clamp each to the
    grid.  Duplicates are not removed.
    """
    n = 1 << m
    length = np.hypot(bx - ax, by - ay)
    nsteps = max(1, int(np.ceil(2.0 * length * n)))
    t = np.arange(nsteps + 1, dtype=np.float64) / nsteps
    px = ax + t * (bx - ax)
    py = ay + t * (by - ay)
    xs = np.clip(np.floor(px * n), 0, n - 1).astype(np.int64)
    ys = np.clip(np.floor(py * n), 0, n - 1).astype(np.int64)
    return xs, ys


_CHUNK_ROWS = 256


def bin_all_cells(m, ux, uy, a0, p0, inv_w, na, npp):
    """Histogram of all 2^m x 2^m cell centers in rotated (a, p) bins.

    a = x*ux + y*uy, p = -x*uy + y*ux; bin index floor((a - a0) * inv_w).
    Caller must size the bin grid to cover every cell.
    """
    n = 1 << m
    s = 1.0 / n
    hist = np.zeros(na * npp, dtype=np.int64)
    centers = (np.arange(n, dtype=np.float64) + 0.5) * s
    for x0 in range(0, n, _CHUNK_ROWS):
        cx = centers[x0:x0 + _CHUNK_ROWS][:, None]
        cy = centers[None, :]
        a = cx * ux + cy * uy
        p = -cx * uy + cy * ux
        ia = np.floor((a - a0) * inv_w).astype(np.int64)
        ip = np.floor((p - p0) * inv_w).astype(np.int64)
        idx = (ia * npp + ip).ravel()
        hist += np.bincount(idx, minlength=na * npp)
    return hist.reshape(na, npp)


def bin_cells(xs, ys, weights, m, ux, uy, a0, p0, inv_w, na, npp):
    """Weighted rotated-bin histogram of specific cells (weights=None: counts)."""
    n = 1 << m
    s = 1.0 / n
    cx = (xs.astype(np.float64) + 0.5) * s
    cy = (ys.astype(np.float64) + 0.5) * s
    a = cx * ux + cy * uy
    p = -cx * uy + cy * ux
    ia = np.floor((a - a0) * inv_w).astype(np.int64)
    ip = np.floor((p - p0) * inv_w).astype(np.int64)
    idx = ia * npp + ip
    if weights is None:
        hist = np.bincount(idx, minlength=na * npp).astype(np.float64)
    else:
        hist = np.bincount(idx, weights=weights, minlength=na * npp)
    return hist.reshape(na, npp)
