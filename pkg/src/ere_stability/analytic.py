"""Closed-form reference values for the circular (e = 0) problem.

Characteristic polynomials of the autonomous essential systems, the
degenerate parameter values on the e = 0 axis, the exact omega-index tables,
and the tangent-slope constants of the first degenerate curves.
"""

from __future__ import annotations

import numpy as np

SQRT1297 = float(np.sqrt(1297.0))

#: first -1-degenerate parameter of the non-convex family at e = 0
BETA_HAT_HALF = (-35.0 + SQRT1297) / 24.0

#: -1-degenerate parameter of the convex family at e = 0 (double root)
BETA_STAR = (1331.0 - 35.0 * SQRT1297) / 288.0

#: hyperbolic onset of the convex family at e = 0
BETA_DOUBLE_STAR = 16.0 * (182.0 - 37.0 * np.sqrt(21.0)) / 625.0

#: rotation parameter of the double unit-circle collision at BETA_DOUBLE_STAR
THETA_DOUBLE_STAR = float(np.sqrt(3.0 + 2.0 * np.sqrt(21.0)) / 5.0)

#: |d beta_tilde / d e| at e = 0 of the first non-convex -1-curves
SLOPE_NONCONVEX = (41.0 + 5.0 * SQRT1297) / (48.0 * SQRT1297)

#: |d beta / d e| at e = 0 of the convex -1-curves
SLOPE_CONVEX = (2525.0 + 67.0 * SQRT1297) / (288.0 * SQRT1297)


def beta_hat(n: float) -> float:
    """n-th degenerate parameter of the non-convex family at e = 0.

    Integer n gives the 1-degenerate values (beta_hat(0) = 0,
    beta_hat(1) = 1/3, ...); half-integer n gives the -1-degenerate values.
    """
    n = float(n)
    if n < 0:
        raise ValueError("n must be >= 0")
    return (n * n - 9.0 + np.sqrt(25.0 * n ** 4 - 6.0 * n * n + 81.0)) / 6.0


def kernel_coefficient(n: int) -> float:
    """Ratio a_n of the e = 0 kernel eigenfunction
    R(t) (a_n sin((n+1/2) t), cos((n+1/2) t))^T at beta_hat(n + 1/2)."""
    return ((n + 0.5) ** 2 - beta_hat(n + 0.5)) / (2.0 * n + 1.0)


#: ratio of the convex kernel eigenfunction at BETA_STAR
KERNEL_COEFFICIENT_CONVEX = (41.0 + SQRT1297) / 24.0


def nonconvex_charpoly(beta_tilde: float) -> tuple[float, float, float, float, float]:
    """Coefficients (c0..c4) of the e = 0 non-convex characteristic polynomial
    x^4 - ((bt+1)/2) x^2 - 3 bt (bt+3)/2."""
    bt = float(beta_tilde)
    return (-1.5 * bt * (bt + 3.0), 0.0, -(bt + 1.0) / 2.0, 0.0, 1.0)


def convex_charpoly(beta: float) -> tuple[float, float, float, float, float]:
    """Coefficients (c0..c4) of the e = 0 convex characteristic polynomial
    x^4 + ((s-1)/2) x^2 + 3 s (3-s)/2 with s = sqrt(9 - beta)."""
    s = float(np.sqrt(9.0 - beta))
    return (1.5 * s * (3.0 - s), 0.0, (s - 1.0) / 2.0, 0.0, 1.0)


def i1_nonconvex_e0(beta_tilde: float) -> int:
    """Exact 1-index of the non-convex family at e = 0."""
    if beta_tilde <= 0.0:
        return 0
    n = 0
    while beta_hat(n + 1) < beta_tilde:
        n += 1
    return 2 * n + 1


def im1_nonconvex_e0(beta_tilde: float) -> int:
    """Exact -1-index of the non-convex family at e = 0."""
    if beta_tilde <= BETA_HAT_HALF:
        return 0
    n = 1
    while beta_hat(n + 0.5) < beta_tilde:
        n += 1
    return 2 * n


def i1_convex_e0(beta: float) -> int:
    """Exact 1-index of the convex family at e = 0 (identically zero)."""
    if not 0.0 <= beta <= 5.0:
        raise ValueError("the exact table covers beta in [0, 5]")
    return 0


def im1_convex_e0(beta: float) -> int:
    """Exact -1-index of the convex family at e = 0."""
    if not 0.0 <= beta <= 5.0:
        raise ValueError("the exact table covers beta in [0, 5]")
    if beta == BETA_STAR:
        raise ValueError("degenerate point: the index jumps here")
    return 2 if beta < BETA_STAR else 0
