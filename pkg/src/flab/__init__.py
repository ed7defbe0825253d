"""Fractal-direction Furstenberg set lab.

Construction of planar sets carrying fractal families of line segments,
estimation of their size (box counting, entropy, Hausdorff content on
dyadic covers), a discrete Kakeya maximal operator, and brute-force
verifiers for the combinatorial inequalities behind the dimension bounds.
"""

__version__ = "0.1.0"
