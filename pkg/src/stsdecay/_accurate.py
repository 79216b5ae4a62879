"""Compensated floating-point primitives used by the closed-form spectra.

The separability and uncertainty margins of near-pure two-mode states are
tiny differences of products of large numbers (``b1*b2 - c**2`` with
``b ~ e^{2r}``), so evaluating them naively loses all significant digits
well before the squeeze parameter reaches 2.  The helpers here compute
``a*b - c*d`` and paired sums with an error term carried explicitly
(Dekker/Kahan style), which keeps those margins accurate to a few ulps of
the *result* instead of a few ulps of the operands.

Everything in this module is scalar ``float`` arithmetic on purpose: it is
called inside tight rejection-sampling and bisection loops where numpy
dispatch overhead dominates, and the double-double tricks require strict
IEEE evaluation order anyway.
"""

from __future__ import annotations

import math

# Splitter constant for Dekker's algorithm: 2**27 + 1 for binary64.
_SPLITTER = 134217729.0


def two_sum(a: float, b: float) -> tuple[float, float]:
    """Return ``(s, e)`` with ``s = fl(a + b)`` and ``a + b = s + e`` exactly."""
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _split(a: float) -> tuple[float, float]:
    """Split ``a`` into high/low parts with non-overlapping 26-bit mantissas."""
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def two_prod(a: float, b: float) -> tuple[float, float]:
    """Return ``(p, e)`` with ``p = fl(a * b)`` and ``a * b = p + e`` exactly."""
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    # The grouping keeps the error term symmetric under a <-> b swap, which
    # downstream code relies on for exact mode-exchange covariance.
    return p, ((ah * bh - p) + (ah * bl + al * bh)) + al * bl


def prod_diff(a: float, b: float, c: float, d: float) -> float:
    """Compute ``a*b - c*d`` with one compensated rounding.

    Relative accuracy is a few ulps of the exact difference even under
    heavy cancellation, whereas the naive expression is only accurate to
    ulps of the individual products.
    """
    p1, e1 = two_prod(a, b)
    p2, e2 = two_prod(c, d)
    s, t = two_sum(p1, -p2)
    return s + (t + (e1 - e2))


def sum_sq_minus_4c2(b1: float, b2: float, c: float) -> float:
    """Compute ``(b1 + b2)**2 - 4*c**2`` without cancellation blow-up.

    The result is assembled as ``(s - 2c)*(s + 2c)`` on the exact sum
    ``s = b1 + b2`` so that the subtraction in the first factor happens
    between nearby numbers (Sterbenz-exact when within a factor of two),
    instead of between two huge squares.
    """
    s_hi, s_lo = two_sum(b1, b2)
    tc = 2.0 * c
    d = (s_hi - tc) + s_lo
    e = (s_hi + tc) + s_lo
    return d * e


def finite(*values: float) -> bool:
    """True when every argument is a finite float."""
    return all(math.isfinite(v) for v in values)
