"""Closed-form quantum correlations of two-mode squeezed thermal states.

Everything here reduces to the entropic function

    h(x) = (x + 1/2) ln(x + 1/2) - (x - 1/2) ln(x - 1/2)

evaluated at standard-form entries and symplectic eigenvalues: the
entanglement of formation through its auxiliary parameter x_m, the two
Gaussian measurement discords, and the quantum mutual information.  All
results are in nats; unit conversion is a display concern left to callers.

Numerical notes.  The measures stay well conditioned only if the inputs to
``h`` are formed without cancellation, so internally ``h`` is evaluated on
the offset ``a = x - 1/2`` (fast-converging log1p form), and every offset
is produced by a compensated product difference.  Pure states get an exact
branch: their minus symplectic eigenvalue carries an unavoidable O(b^2 eps)
representation error, and pushing that through the log singularity of
``h`` near 1/2 would destroy the pure-state identities (EF = D1 = D2) that
this family satisfies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._accurate import prod_diff, sum_sq_minus_4c2
from .core import StandardForm, is_pure, is_separable
from .errors import InvalidParameterError, NonPhysicalStateError

__all__ = [
    "CorrelationReport",
    "entropic_h",
    "entanglement_of_formation",
    "discords",
    "mutual_information",
    "correlation_report",
]

# Discord/MI values in [-1e-10, 0) are rounding residue and clamp to zero;
# anything more negative indicates a genuinely broken input.
_NEG_CLAMP = 1e-10


@dataclass(frozen=True)
class CorrelationReport:
    """All correlation measures of one state, computed consistently.

    Attributes:
        ef: entanglement of formation (nats); 0 exactly iff separable.
        d1: discord with Gaussian measurements on mode 2 (nats).
        d2: discord with Gaussian measurements on mode 1 (nats).
        mutual_information: quantum mutual information (nats).
        separable: PPT separability verdict.
        x_m: auxiliary parameter of the EF formula (>= 1/2).
        y: auxiliary parameter of d1, ``b1 - c^2/(b2 + 1/2)``.
        z: auxiliary parameter of d2, ``b2 - c^2/(b1 + 1/2)``.
        invariant_d: main symplectic invariant
            ``(b1 b2 - c^2)^2 - (b1^2 + b2^2 - 2 c^2)/4 + 1/16`` (>= 0).
    """

    ef: float
    d1: float
    d2: float
    mutual_information: float
    separable: bool
    x_m: float
    y: float
    z: float
    invariant_d: float


def _h_offset(a: float) -> float:
    """Entropic function evaluated at ``x = 1/2 + a`` for ``a >= 0``.

    Uses h(1/2 + a) = log1p(a) + a*log1p(1/a), which is accurate for both
    tiny and huge offsets; the direct two-logarithm form loses digits as
    a -> 0.  Non-positive offsets are rounding residue and map to 0.
    """
    if a <= 0.0:
        return 0.0
    return math.log1p(a) + a * math.log1p(1.0 / a)


def entropic_h(x: float) -> float:
    """Entropy h(x) of a thermal mode with symplectic eigenvalue ``x``.

    h(x) = (x+1/2) ln(x+1/2) - (x-1/2) ln(x-1/2), in nats, with
    h(1/2) = 0 by the usual 0*ln(0) = 0 convention.  Inputs within 1e-12
    below 1/2 are clamped to 1/2; anything lower is rejected.
    """
    if not math.isfinite(x) or x < 0.5 - 1e-12:
        raise InvalidParameterError(f"entropic_h requires x >= 1/2, got {x!r}")
    return _h_offset(x - 0.5)


def _spectrum_scalars(b1: float, b2: float, c: float) -> tuple[float, float, float, float]:
    """Shared kernel: (delta, u, kappa_plus, kappa_minus) for one state.

    delta = (b1+b2)^2 - 4c^2 and u = b1*b2 - c^2, both compensated;
    kappa_minus comes from the eigenvalue product u = kappa_plus *
    kappa_minus rather than from the subtractive closed form.
    """
    delta = sum_sq_minus_4c2(b1, b2, c)
    if delta <= 0.0:
        raise NonPhysicalStateError(
            f"(b1+b2)^2 - 4c^2 = {delta!r} <= 0: degenerate or non-physical state"
        )
    u = prod_diff(b1, b2, c, c)
    if u <= 0.0:
        raise NonPhysicalStateError(
            f"b1*b2 - c^2 = {u!r} <= 0: non-physical state"
        )
    kp = 0.5 * (math.sqrt(delta) + abs(b1 - b2))
    return delta, u, kp, u / kp


def entanglement_of_formation(sf: StandardForm) -> tuple[float, float]:
    """Entanglement of formation of ``sf`` and its auxiliary parameter.

    Returns ``(ef, x_m)``.  Separable states return ``(0.0, 0.5)`` (the EF
    of a separable state is zero by definition).  Entangled states use

        D   = (b1 b2 - c^2)^2 - (b1^2 + b2^2 - 2c^2)/4 + 1/16
        x_m = [ (b1+b2)(b1 b2 - c^2 + 1/4) - 2 c sqrt(D) ] / [ (b1+b2)^2 - 4 c^2 ]
        ef  = h(x_m)

    with D evaluated in the equivalent product form
    (kappa_plus^2 - 1/4)(kappa_minus^2 - 1/4), which does not cancel.
    Pure states short-circuit to the exact identity ef = h(b), x_m = b.
    """
    if is_separable(sf):
        return 0.0, 0.5
    b1, b2, c = sf.b1, sf.b2, sf.c
    if is_pure(sf):
        b = 0.5 * (b1 + b2)
        return _h_offset(b - 0.5), b
    delta, u, kp, km = _spectrum_scalars(b1, b2, c)
    mp = (kp - 0.5) * (kp + 0.5)
    mm = max((km - 0.5) * (km + 0.5), 0.0)
    sqrt_d = math.sqrt(mp) * math.sqrt(mm)
    x_m = ((b1 + b2) * (u + 0.25) - 2.0 * c * sqrt_d) / delta
    x_m = max(x_m, 0.5)
    return _h_offset(x_m - 0.5), x_m


def _clamp_measure(value: float, name: str) -> float:
    """Clamp tiny negative rounding residue of a measure to zero."""
    if value >= 0.0:
        return value
    if value >= -_NEG_CLAMP:
        return 0.0
    raise NonPhysicalStateError(f"{name} = {value!r} is negative beyond rounding tolerance")


def discords(sf: StandardForm) -> tuple[float, float, float, float]:
    """Gaussian quantum discords of ``sf``.

    Returns ``(d1, d2, y, z)`` where

        y  = b1 - c^2/(b2 + 1/2)        z  = b2 - c^2/(b1 + 1/2)
        d1 = h(b2) - h(k+) - h(k-) + h(y)
        d2 = h(b1) - h(k+) - h(k-) + h(z)

    d1 is the discord extracted by Gaussian measurements on mode 2, d2 by
    measurements on mode 1.  For squeezed thermal states these Gaussian
    expressions are the exact discords.  Values in [-1e-10, 0) clamp to 0.

    Raises:
        NonPhysicalStateError: if y or z falls below 1/2 - 1e-9, which no
            bona fide input can produce.
    """
    b1, b2, c = sf.b1, sf.b2, sf.c
    if c == 0.0:
        return 0.0, 0.0, b1, b2
    if is_pure(sf):
        hb = _h_offset(0.5 * (b1 + b2) - 0.5)
        return hb, hb, 0.5, 0.5
    _, _, kp, km = _spectrum_scalars(b1, b2, c)
    # Offsets y - 1/2 and z - 1/2 as compensated product differences:
    # y - 1/2 = [ (b1 - 1/2)(b2 + 1/2) - c^2 ] / (b2 + 1/2).
    y_off = prod_diff(b1 - 0.5, b2 + 0.5, c, c) / (b2 + 0.5)
    z_off = prod_diff(b2 - 0.5, b1 + 0.5, c, c) / (b1 + 0.5)
    if y_off < -1e-9 or z_off < -1e-9:
        raise NonPhysicalStateError(
            f"discord auxiliaries below 1/2: y={0.5 + y_off!r}, z={0.5 + z_off!r}"
        )
    y_off = max(y_off, 0.0)
    z_off = max(z_off, 0.0)
    hk = _h_offset(kp - 0.5) + _h_offset(km - 0.5)
    d1 = _clamp_measure(_h_offset(b2 - 0.5) - hk + _h_offset(y_off), "d1")
    d2 = _clamp_measure(_h_offset(b1 - 0.5) - hk + _h_offset(z_off), "d2")
    return d1, d2, 0.5 + y_off, 0.5 + z_off


def mutual_information(sf: StandardForm) -> float:
    """Quantum mutual information ``h(b1) + h(b2) - h(k+) - h(k-)`` in nats."""
    b1, b2, c = sf.b1, sf.b2, sf.c
    if c == 0.0:
        return 0.0
    if is_pure(sf):
        return 2.0 * _h_offset(0.5 * (b1 + b2) - 0.5)
    _, _, kp, km = _spectrum_scalars(b1, b2, c)
    mi = (
        _h_offset(b1 - 0.5)
        + _h_offset(b2 - 0.5)
        - _h_offset(kp - 0.5)
        - _h_offset(km - 0.5)
    )
    return _clamp_measure(mi, "mutual information")


def correlation_report(sf: StandardForm) -> CorrelationReport:
    """Compute every correlation measure of ``sf`` in one consistent pass."""
    b1, b2, c = sf.b1, sf.b2, sf.c
    separable = is_separable(sf)
    if c == 0.0:
        kp, km = max(b1, b2), min(b1, b2)
        inv_d = (kp - 0.5) * (kp + 0.5) * max((km - 0.5) * (km + 0.5), 0.0)
        return CorrelationReport(
            ef=0.0,
            d1=0.0,
            d2=0.0,
            mutual_information=0.0,
            separable=True,
            x_m=0.5,
            y=b1,
            z=b2,
            invariant_d=inv_d,
        )
    if is_pure(sf):
        b = 0.5 * (b1 + b2)
        hb = _h_offset(b - 0.5)
        return CorrelationReport(
            ef=hb,
            d1=hb,
            d2=hb,
            mutual_information=2.0 * hb,
            separable=separable,
            x_m=b,
            y=0.5,
            z=0.5,
            invariant_d=0.0,
        )
    delta, u, kp, km = _spectrum_scalars(b1, b2, c)
    mp = (kp - 0.5) * (kp + 0.5)
    mm = max((km - 0.5) * (km + 0.5), 0.0)
    inv_d = mp * mm
    if separable:
        ef, x_m = 0.0, 0.5
    else:
        sqrt_d = math.sqrt(mp) * math.sqrt(mm)
        x_m = max(((b1 + b2) * (u + 0.25) - 2.0 * c * sqrt_d) / delta, 0.5)
        ef = _h_offset(x_m - 0.5)
    d1, d2, y, z = discords(sf)
    mi = mutual_information(sf)
    return CorrelationReport(
        ef=ef,
        d1=d1,
        d2=d2,
        mutual_information=mi,
        separable=separable,
        x_m=x_m,
        y=y,
        z=z,
        invariant_d=inv_d,
    )
