"""Exact dissipative dynamics of two-mode states in local thermal reservoirs.

Each mode couples to its own Markovian thermal bath with damping rate
``gamma_i`` and mean occupancy ``n_ri``.  The evolved state stays Gaussian
and stays in standard form; its entries follow the closed expressions

    b_i(t) = b_i e^{-gamma_i t} + (n_ri + 1/2)(1 - e^{-gamma_i t})
    c(t)   = c e^{-(gamma_1 + gamma_2) t / 2}

so no differential equation is ever integrated.  On top of the evolution
this module provides the steady states, the evolved characteristic
function, and the closed-form entanglement sudden-death times for the two
bath layouts that admit one (identical baths, and a single bath on one
mode).  Zero-temperature baths never produce a finite death time; those
queries return the ASYMPTOTIC_ONLY marker instead of a number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._accurate import finite
from .core import StandardForm, full_cm, separability_margin
from .errors import InvalidParameterError, NonPhysicalStateError, SeparableInputError

__all__ = [
    "ReservoirConfig",
    "EvolvedState",
    "AsymptoticOnly",
    "ASYMPTOTIC_ONLY",
    "evolve",
    "evolve_identical_baths",
    "esd_time_identical_baths",
    "esd_time_single_bath",
    "steady_state",
    "characteristic_function",
    "gaussian_cf",
]


class AsymptoticOnly:
    """Marker result: entanglement decays only asymptotically.

    Returned (as the ASYMPTOTIC_ONLY singleton) by the sudden-death-time
    functions when every active bath has zero temperature, in which case
    the separability threshold is reached only as t -> infinity and no
    finite answer exists.  Deliberately not a float so that arithmetic on
    it fails loudly instead of propagating an infinity.
    """

    __slots__ = ()

    def __repr__(self) -> str:
        return "ASYMPTOTIC_ONLY"


ASYMPTOTIC_ONLY = AsymptoticOnly()


@dataclass(frozen=True)
class ReservoirConfig:
    """Local thermal reservoirs for the two modes.

    ``gamma1``/``gamma2`` are the damping rates (>= 0, inverse time) and
    ``n_r1``/``n_r2`` the reservoir mean occupancies (>= 0).  A rate of 0
    decouples that mode; both rates 0 is the trivial identity channel.
    """

    gamma1: float
    n_r1: float
    gamma2: float
    n_r2: float

    def __post_init__(self) -> None:
        if not finite(self.gamma1, self.n_r1, self.gamma2, self.n_r2):
            raise InvalidParameterError("ReservoirConfig fields must be finite numbers")
        if min(self.gamma1, self.n_r1, self.gamma2, self.n_r2) < 0.0:
            raise InvalidParameterError(
                "damping rates and reservoir occupancies must be >= 0, got "
                f"gamma1={self.gamma1!r}, n_r1={self.n_r1!r}, "
                f"gamma2={self.gamma2!r}, n_r2={self.n_r2!r}"
            )

    @classmethod
    def identical(cls, gamma: float, n_r: float) -> ReservoirConfig:
        """Two identical baths: both modes damped at ``gamma`` into occupancy ``n_r``."""
        return cls(gamma, n_r, gamma, n_r)

    @classmethod
    def single_bath(cls, gamma: float, n_r: float) -> ReservoirConfig:
        """One bath on mode 1 only; mode 2 evolves freely."""
        return cls(gamma, n_r, 0.0, 0.0)


@dataclass(frozen=True)
class EvolvedState:
    """A standard-form state tagged with the elapsed evolution time."""

    t: float
    sf: StandardForm


def _check_time(t: float) -> None:
    if not math.isfinite(t) or t < 0.0:
        raise InvalidParameterError(f"evolution time must be finite and >= 0, got {t!r}")


def _evolved_entries(
    sf0: StandardForm, res: ReservoirConfig, t: float
) -> tuple[float, float, float]:
    """Scalar (b1(t), b2(t), c(t)) without StandardForm construction overhead."""
    w1 = math.exp(-res.gamma1 * t)
    w2 = math.exp(-res.gamma2 * t)
    # Convex-combination form: exact at t = 0 (weights are exactly 1) and
    # exact in the t -> infinity limit (weights are exactly 0).
    b1t = sf0.b1 * w1 + (res.n_r1 + 0.5) * (1.0 - w1)
    b2t = sf0.b2 * w2 + (res.n_r2 + 0.5) * (1.0 - w2)
    ct = sf0.c * math.exp(-0.5 * (res.gamma1 + res.gamma2) * t)
    return b1t, b2t, ct


def evolve(sf0: StandardForm, res: ReservoirConfig, t: float) -> EvolvedState:
    """State after damping ``sf0`` in the reservoirs ``res`` for time ``t``.

    At t = 0 the input is returned unchanged; the phase never evolves.
    The channel is physical, so the output always satisfies the
    uncertainty inequality.

    Raises:
        InvalidParameterError: for negative or non-finite ``t``.
    """
    _check_time(t)
    b1t, b2t, ct = _evolved_entries(sf0, res, t)
    return EvolvedState(t, StandardForm(b1t, b2t, ct, sf0.phi))


def evolve_identical_baths(
    sf0: StandardForm, gamma: float, n_r: float, t: float
) -> EvolvedState:
    """Damp both modes in identical baths ``(gamma, n_r)`` for time ``t``.

    Equivalent to the full covariance-matrix contraction
    V(t) = e^{-gamma t} V(0) + (n_r + 1/2)(1 - e^{-gamma t}) I_4;
    a symmetric input (b1 = b2) therefore stays symmetric exactly.
    """
    return evolve(sf0, ReservoirConfig.identical(gamma, n_r), t)


def _check_rates(gamma: float, n_r: float) -> None:
    if not finite(gamma, n_r) or gamma <= 0.0 or n_r < 0.0:
        raise InvalidParameterError(
            f"need damping rate > 0 and reservoir occupancy >= 0, got gamma={gamma!r}, n_r={n_r!r}"
        )


def esd_time_identical_baths(
    sf0: StandardForm, gamma: float, n_r: float
) -> float | AsymptoticOnly:
    """Exact time at which two identical baths disentangle ``sf0``.

        t_s = (1/gamma) * ln(1 + (1/2 - kt_minus) / n_r)

    with kt_minus the smaller symplectic eigenvalue of the partially
    transposed input.  Internally the numerator is evaluated as
    -margin / (kt_plus - 1/2) on the compensated separability margin,
    which stays accurate when the input is barely entangled; the offset
    kt_plus - 1/2 is assembled from non-negative terms only.

    Returns ASYMPTOTIC_ONLY for a zero-temperature bath (n_r = 0).

    Raises:
        SeparableInputError: if ``sf0`` is already separable.
    """
    _check_rates(gamma, n_r)
    margin = separability_margin(sf0)
    if margin >= 0.0:
        raise SeparableInputError(
            "input is already separable: no finite disentanglement time to compute"
        )
    if n_r == 0.0:
        return ASYMPTOTIC_ONLY
    b1, b2, c = sf0.b1, sf0.b2, sf0.c
    ktp_off = 0.5 * ((b1 - 0.5) + (b2 - 0.5) + math.hypot(b1 - b2, 2.0 * c))
    return math.log1p(-margin / (ktp_off * n_r)) / gamma


def esd_time_single_bath(
    sf0: StandardForm, gamma: float, n_r: float
) -> float | AsymptoticOnly:
    """Exact time at which a single bath on mode 1 disentangles ``sf0``.

        t_s = (1/gamma) * ln( 1 - margin / (n_r * (b2 - 1/2)) )

    where margin = (b1 - 1/2)(b2 - 1/2) - c^2 < 0 for the entangled
    input.  For pure inputs this collapses to (1/gamma)*ln(1 + 1/n_r),
    independent of the squeezing strength.

    Returns ASYMPTOTIC_ONLY for n_r = 0.

    Raises:
        SeparableInputError: if ``sf0`` is already separable.
        NonPhysicalStateError: if b2 = 1/2 (entangled inputs cannot reach
            this; the division is guarded rather than taken as a limit).
    """
    _check_rates(gamma, n_r)
    margin = separability_margin(sf0)
    if margin >= 0.0:
        raise SeparableInputError(
            "input is already separable: no finite disentanglement time to compute"
        )
    if n_r == 0.0:
        return ASYMPTOTIC_ONLY
    b2_off = sf0.b2 - 0.5
    if b2_off <= 0.0:
        raise NonPhysicalStateError(
            "b2 = 1/2 with residual entanglement: degenerate denominator in the "
            "single-bath disentanglement time"
        )
    return math.log1p(-margin / (n_r * b2_off)) / gamma


def steady_state(res: ReservoirConfig, sf0: StandardForm) -> StandardForm:
    """Asymptotic (t -> infinity) state of ``sf0`` under ``res``.

    With both baths active the state relaxes to the product of the two
    reservoir thermal states, b_i = n_ri + 1/2 with no cross block.  With
    a single active bath, the free mode keeps its initial variance.  The
    result is always a product state, hence has zero discord and zero
    entanglement.

    Raises:
        InvalidParameterError: when both damping rates are 0 (nothing
            relaxes, no steady state exists).
    """
    if res.gamma1 == 0.0 and res.gamma2 == 0.0:
        raise InvalidParameterError("steady state undefined for the identity channel")
    b1 = res.n_r1 + 0.5 if res.gamma1 > 0.0 else sf0.b1
    b2 = res.n_r2 + 0.5 if res.gamma2 > 0.0 else sf0.b2
    return StandardForm(b1, b2, 0.0, sf0.phi)


def gaussian_cf(sf: StandardForm, lambda1: complex, lambda2: complex) -> complex:
    """Characteristic function of the zero-mean Gaussian state ``sf``.

    chi(lambda1, lambda2) = exp(-K^T V K / 2) with V = full_cm(sf) and
    K = sqrt(2) * (Im l1, -Re l1, Im l2, -Re l2); real and positive for
    these zero-mean states, returned as complex for uniformity.
    """
    l1 = complex(lambda1)
    l2 = complex(lambda2)
    k = math.sqrt(2.0) * np.array([l1.imag, -l1.real, l2.imag, -l2.real])
    return complex(math.exp(-0.5 * float(k @ full_cm(sf) @ k)))


def characteristic_function(
    sf0: StandardForm,
    res: ReservoirConfig,
    t: float,
    lambda1: complex,
    lambda2: complex,
) -> complex:
    """Evolved two-mode characteristic function at phase-space point (l1, l2).

    chi(l1, l2, t) = chi_0(l1 e^{-g1 t/2}, l2 e^{-g2 t/2})
                     * exp[-(n_r1 + 1/2)(1 - e^{-g1 t}) |l1|^2]
                     * exp[-(n_r2 + 1/2)(1 - e^{-g2 t}) |l2|^2]

    where chi_0 is the input state's Gaussian characteristic function.
    Always satisfies chi(0, 0, t) = 1 and |chi| <= 1.  Agrees pointwise
    with the Gaussian characteristic function of evolve(sf0, res, t) — a
    cross-check the verification layer exercises.
    """
    _check_time(t)
    l1 = complex(lambda1)
    l2 = complex(lambda2)
    w1 = math.exp(-res.gamma1 * t)
    w2 = math.exp(-res.gamma2 * t)
    chi0 = gaussian_cf(sf0, l1 * math.exp(-0.5 * res.gamma1 * t), l2 * math.exp(-0.5 * res.gamma2 * t))
    damping = math.exp(
        -(res.n_r1 + 0.5) * (1.0 - w1) * (l1.real * l1.real + l1.imag * l1.imag)
        - (res.n_r2 + 0.5) * (1.0 - w2) * (l2.real * l2.real + l2.imag * l2.imag)
    )
    return chi0 * damping
