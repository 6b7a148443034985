"""Shannon, Rényi and Tsallis entropies of hydrogenic densities, and moment bounds on them.

Entropies are computed by one-dimensional quadrature, which is exact only for
l = 0 where the full density is the radial one divided by the sphere area Ω.
The bounds need nothing but a radial moment, so they are available for every
state.  Bounds in momentum space use <p^α> in place of <r^α>.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import roots_gegenbauer, roots_genlaguerre

from .hydrogenic import (
    HydrogenicState,
    derive_params,
    log_radial_density_momentum,
    log_radial_density_position,
    momentum_expectation,
    position_expectation,
)
from .quadrature import integrate
from .specfun import DomainError, log_gamma, log_surface_area

# integrand values more than this many e-folds below the peak are dropped
_LOG_CUTOFF = 90.0
_GRID = 6001


class EntropyKind(str, enum.Enum):
    SHANNON = "shannon"
    RENYI = "renyi"
    TSALLIS = "tsallis"


class Space(str, enum.Enum):
    POSITION = "position"
    MOMENTUM = "momentum"


class Direction(str, enum.Enum):
    UPPER = "upper"
    LOWER = "lower"


@dataclass(frozen=True)
class EntropyValue:
    kind: EntropyKind
    q: Optional[float]
    space: Space
    value: float
    log_w: Optional[float] = None  # log W_q, kept for the power functionals


@dataclass(frozen=True)
class BoundInputs:
    q: Optional[float]
    alpha: float
    moment_sign: int


@dataclass(frozen=True)
class BoundReport:
    """A bound together with the entropy it constrains, when that entropy is computable.

    For Shannon and Rényi the compared quantity is the entropy itself.  For
    Tsallis it is 1 + (1-q) T_q = W_q, the form in which the inequality holds.
    """

    entropy: Optional[EntropyValue]
    bound_value: float
    direction: Direction
    inputs: BoundInputs
    satisfied: Optional[bool]
    compared_value: Optional[float] = None

    @property
    def margin(self) -> Optional[float]:
        if self.compared_value is None:
            return None
        if self.direction is Direction.UPPER:
            return self.bound_value - self.compared_value
        return self.compared_value - self.bound_value


def _judge(compared: Optional[float], bound: float, direction: Direction) -> Optional[bool]:
    if compared is None:
        return None
    if direction is Direction.UPPER:
        return compared <= bound + 1e-9
    return compared >= bound - 1e-9


# --------------------------------------------------------------------------
# quadrature in log space


def _bracket(logg, lo: float, hi: float):
    """Peak value, peak location and a few level crossings of ``logg`` on a grid."""
    x = np.linspace(lo, hi, _GRID)[1:-1]
    y = logg(x)
    y = np.where(np.isfinite(y), y, -np.inf)
    i = int(np.argmax(y))
    peak = float(y[i])
    pts = [float(x[i])]
    for drop in (1.0, 4.0, 16.0, 40.0):
        above = np.nonzero(y > peak - drop)[0]
        pts += [float(x[above[0]]), float(x[above[-1]])]
    alive = np.nonzero(y > peak - _LOG_CUTOFF)[0]
    return peak, pts, float(x[alive[0]]), float(x[alive[-1]]), y


def _integrate_log(logg, lo: float, hi: float, roots=(), weight=None,
                   semi_infinite: bool = False, rel_tol: float = 1e-12):
    """Return (peak, I) with ∫ exp(logg) weight = exp(peak) I over [lo, hi].

    With ``semi_infinite`` the upper end is pushed out until the integrand has
    dropped by the cutoff; ``hi`` is only the first guess.
    """
    if semi_infinite:
        while True:
            peak, pts, a, b, y = _bracket(logg, lo, hi)
            if y[-1] < peak - _LOG_CUTOFF:
                break
            hi *= 2.0
    else:
        peak, pts, a, b, y = _bracket(logg, lo, hi)
    step = (hi - lo) / (_GRID - 1)
    a = max(lo, a - step)
    b = min(hi, b + step)
    bps = [a, b] + [p for p in list(pts) + list(roots) if a < p < b]

    def f(x):
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            e = np.exp(logg(x) - peak)
            if weight is not None:
                e = e * weight(x)
        return np.where(np.isfinite(e), e, 0.0)

    res = integrate(f, bps, rel_tol=rel_tol, abs_tol=1e-300, max_evals=60000, strict=True)
    return peak, res.value


def _position_pieces(state: HydrogenicState):
    """(log radial density in u, log Jacobian r^(D-1) dr/du, roots, first guess for the range)."""
    p = derive_params(state)
    lam = p.length_scale
    D = state.D

    def log_rho(u):
        return log_radial_density_position(state, lam * u)

    def log_jac(u):
        with np.errstate(divide="ignore"):
            return D * math.log(lam) + (D - 1) * np.log(u)

    roots = tuple(roots_genlaguerre(p.k, 2 * p.grand_l + 1)[0]) if p.k else ()
    return log_rho, log_jac, roots, 4.0 * (2 * p.grand_l + 2 * p.k + 2) + 40.0


def _momentum_pieces(state: HydrogenicState):
    """Same as :func:`_position_pieces` for p = (Z/η) tan(θ/2), θ in (0, π)."""
    p = derive_params(state)
    scale = state.Z / p.eta
    D = state.D

    def log_rho(theta):
        return log_radial_density_momentum(state, scale * np.tan(theta / 2))

    def log_jac(theta):
        with np.errstate(divide="ignore"):
            half = theta / 2
            return ((D - 1) * np.log(scale * np.tan(half))
                    + math.log(scale / 2) - 2 * np.log(np.cos(half)))

    roots = ()
    if p.k:
        roots = tuple(np.arccos(roots_gegenbauer(p.k, p.grand_l + 1)[0]))
    return log_rho, log_jac, roots, math.pi


def _pieces(state, space):
    return _position_pieces(state) if Space(space) is Space.POSITION else _momentum_pieces(state)


def _radial_shannon(state: HydrogenicState, space: Space) -> float:
    """-∫ ρ log ρ over the radial measure (no angular part)."""
    log_rho, log_jac, roots, hi = _pieces(state, space)
    semi = Space(space) is Space.POSITION
    peak, val = _integrate_log(lambda x: log_rho(x) + log_jac(x), 0.0, hi, roots,
                               weight=log_rho, semi_infinite=semi)
    return -math.exp(peak) * val


def _radial_log_power(state: HydrogenicState, space: Space, q: float) -> float:
    """log ∫ ρ^q over the radial measure."""
    log_rho, log_jac, roots, hi = _pieces(state, space)
    semi = Space(space) is Space.POSITION
    peak, val = _integrate_log(lambda x: q * log_rho(x) + log_jac(x), 0.0, hi, roots,
                               semi_infinite=semi)
    return peak + math.log(val)


def entropy_quadrature(state: HydrogenicState, kind: EntropyKind = EntropyKind.SHANNON,
                       q: Optional[float] = None,
                       space: Space = Space.POSITION) -> Optional[EntropyValue]:
    """Entropy of the full D-dimensional density, or None when l > 0."""
    kind, space = EntropyKind(kind), Space(space)
    if state.l != 0:
        return None
    log_omega = log_surface_area(state.D)
    if kind is EntropyKind.SHANNON:
        return EntropyValue(kind, None, space, _radial_shannon(state, space) + log_omega)
    if q is None or not q > 0 or q == 1:
        raise DomainError("the order q must be positive and different from 1")
    log_w = (1 - q) * log_omega + _radial_log_power(state, space, q)
    if kind is EntropyKind.RENYI:
        value = log_w / (1 - q)
    else:
        value = -math.expm1(log_w) / (q - 1)
    return EntropyValue(kind, q, space, value, log_w)


# --------------------------------------------------------------------------
# variational constants


def A0(alpha: float, D: int) -> float:
    """D/α + log[(2π^(D/2)/α)(α/D)^(D/α) Γ(D/α)/Γ(D/2)]."""
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    return (D / alpha + math.log(2.0) + 0.5 * D * math.log(math.pi) - math.log(alpha)
            + (D / alpha) * math.log(alpha / D) + log_gamma(D / alpha) - log_gamma(D / 2))


def _log_beta(a: float, b: float) -> float:
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b)


def log_L1(q: float, alpha: float, D: int) -> float:
    """log L₁(q, α, D).

    For q > 1 this is the extremal constant of W_q at fixed <r^α>.  For q < 1
    the extremal density is heavy tailed instead of compactly supported and the
    beta function becomes B(D/α, 1/(1-q) - D/α); that branch needs q > D/(D+α)
    so that the moment of the extremal density exists.
    """
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    if not q > 0 or q == 1:
        raise DomainError("q must be positive and different from 1")
    s = D * (q - 1) + alpha * q
    if q > 1:
        log_b = _log_beta(q / (q - 1), D / alpha)
    else:
        if not s > 0:
            raise DomainError(f"q < 1 requires q > D/(D+alpha) = {D / (D + alpha)}")
        log_b = _log_beta(D / alpha, 1 / (1 - q) - D / alpha)
    inner = (math.log(alpha) + log_gamma(D / 2) + (D / alpha) * math.log(abs(D * (q - 1)) / s)
             - math.log(2.0) - 0.5 * D * math.log(math.pi) - log_b)
    return math.log(q * alpha / s) + (q - 1) * inner


def log_L2(q: float, alpha: float, D: int) -> float:
    """log L₂(q, α, D), the constant for a negative moment <r^(-α)>; needs q > 1 and α < D(q-1)/q."""
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    if not q > 1:
        raise DomainError("the negative-moment bound needs q > 1")
    s = D * (q - 1) - alpha * q
    if not s > 0:
        raise DomainError(
            f"condition alpha < D(q-1)/q violated: alpha = {alpha}, D(q-1)/q = {D * (q - 1) / q}")
    inner = (math.log(alpha) + log_gamma(D / 2) + (D / alpha) * math.log(s / (D * (q - 1)))
             - math.log(2.0) - 0.5 * D * math.log(math.pi)
             - _log_beta(D / alpha - 1 / (q - 1), q / (q - 1)))
    return math.log(q * alpha / s) + (q - 1) * inner


def L1(q: float, alpha: float, D: int) -> float:
    return math.exp(log_L1(q, alpha, D))


def L2(q: float, alpha: float, D: int) -> float:
    return math.exp(log_L2(q, alpha, D))


# --------------------------------------------------------------------------
# bounds


def _log_moment(state: HydrogenicState, order: float, space: Space) -> float:
    if Space(space) is Space.POSITION:
        v = position_expectation(state, order).value
    else:
        v = momentum_expectation(state, order).value
    return math.log(v)


def _sign(moment_sign) -> int:
    if moment_sign in (1, "+", "plus"):
        return 1
    if moment_sign in (-1, "-", "minus"):
        return -1
    raise DomainError(f"moment sign must be + or -, got {moment_sign!r}")


def bound_shannon_upper(state: HydrogenicState, alpha: float,
                        space: Space = Space.POSITION) -> BoundReport:
    """S ≤ A₀(α, D) + (D/α) log <r^α>."""
    space = Space(space)
    bound = A0(alpha, state.D) + (state.D / alpha) * _log_moment(state, alpha, space)
    ent = entropy_quadrature(state, EntropyKind.SHANNON, space=space)
    compared = None if ent is None else ent.value
    return BoundReport(ent, bound, Direction.UPPER, BoundInputs(None, alpha, 1),
                       _judge(compared, bound, Direction.UPPER), compared)


def _power_bound_log(state, q, alpha, sign, space, literal=False) -> float:
    """log of the extremal value of W_q at a fixed moment <r^(±α)>.

    That value is L₁ <r^α>^(-D(q-1)/α) for the positive moment and
    L₂ <r^(-α)>^(+D(q-1)/α) for the negative one; only these exponents make
    W_q scale as length^(-D(q-1)).  ``literal=True`` uses -D(q-1)/α for the
    negative moment as well, which does not bound W_q.
    """
    log_m = _log_moment(state, sign * alpha, space)
    power = state.D * (q - 1) / alpha
    if sign > 0:
        return log_L1(q, alpha, state.D) - power * log_m
    log_l = log_L2(q, alpha, state.D)
    return log_l - power * log_m if literal else log_l + power * log_m


def bound_renyi_upper(state: HydrogenicState, q: float, alpha: float, moment_sign=1,
                      space: Space = Space.POSITION, literal: bool = False) -> BoundReport:
    """R_q ≤ log(W_q extremal value) / (1-q); see :func:`_power_bound_log`."""
    space, sign = Space(space), _sign(moment_sign)
    bound = _power_bound_log(state, q, alpha, sign, space, literal) / (1 - q)
    ent = entropy_quadrature(state, EntropyKind.RENYI, q=q, space=space)
    compared = None if ent is None else ent.value
    return BoundReport(ent, bound, Direction.UPPER, BoundInputs(q, alpha, sign),
                       _judge(compared, bound, Direction.UPPER), compared)


def bound_tsallis_lower(state: HydrogenicState, q: float, alpha: float, moment_sign=1,
                        space: Space = Space.POSITION, literal: bool = False) -> BoundReport:
    """1 + (1-q) T_q ≥ W_q extremal value, for q > 1.

    For q < 1 (positive moments only) the same constant bounds W_q from above,
    and the report direction says so.  The negative-moment condition used is
    α < D(q-1)/q, the one under which L₂ is finite.
    """
    space, sign = Space(space), _sign(moment_sign)
    bound = math.exp(_power_bound_log(state, q, alpha, sign, space, literal))
    direction = Direction.LOWER if q > 1 else Direction.UPPER
    ent = entropy_quadrature(state, EntropyKind.TSALLIS, q=q, space=space)
    compared = None if ent is None else 1 + (1 - q) * ent.value
    return BoundReport(ent, bound, direction, BoundInputs(q, alpha, sign),
                       _judge(compared, bound, direction), compared)


# --------------------------------------------------------------------------
# large-D forms of the bounds (position space)


@dataclass(frozen=True)
class AsymptoticTerms:
    A0_exact: float
    A0_asymptotic: float
    A1: float
    A1_negative: float
    A2: float
    A3: Optional[float]
    log_A5: Optional[float]
    shannon_upper: float
    renyi_upper: Optional[float]
    renyi_upper_negative: Optional[float]
    log_tsallis_lower: Optional[float]
    log_tsallis_lower_printed: Optional[float]


def A0_asymptotic(alpha: float, D: int) -> float:
    """Stirling form of A₀ for large D."""
    return (-(D - 1) / 2 * math.log(D / 2) + math.log(math.pi * math.e) * D / 2
            - 0.5 * math.log(D / alpha) + math.log(2 / alpha))


def A1(state: HydrogenicState, alpha: float) -> float:
    """log of the two first-order factors of the large-D <r^α>."""
    n, l, D = state.n, state.l, state.D
    return math.log((1 + (alpha + 1) * (alpha + 4 * l - 2) / (2 * D))
                    * (1 + (alpha + 1) * (alpha + 2) * (n - l - 1) / D))


def A2(alpha: float, D: int, literal: bool = False) -> float:
    """(3D/2) log D + log(πe/8) D/2 + ½ log(α/2).

    ``literal=True`` uses 3D log D for the leading term.  That coefficient does
    not follow from A₀ + (D/α) log <r^α>, whose leading term is (3D/2) log D.
    """
    lead = 3 * D if literal else 1.5 * D
    return lead * math.log(D) + math.log(math.pi * math.e / 8) * D / 2 + 0.5 * math.log(alpha / 2)


def A3(q: float) -> float:
    c = q / (q - 1)
    return math.log(c) + (1 - q) * log_gamma(c) + (1 - q) / 2 * math.log(2 / math.pi)


def log_A5(q: float, alpha: float, D: int, Z: float) -> float:
    """log of the printed prefactor of the large-D Tsallis bound, evaluated as written."""
    c = q / (q - 1)
    log_core = (3 * D - 1) * math.log(D) - (3 * D + 2) * math.log(2.0) \
        - (D + 1) * math.log(math.pi) - 2 * D * math.log(Z)
    log_v = (math.log(c) + (1 - q) / 2 * log_core + (1 - q) * D / 2
             - q * math.log(alpha) + (1 - q) * log_gamma(c))
    return log_v


def asymptotic_bound_terms(state: HydrogenicState, alpha: float, q: Optional[float] = None,
                           literal: bool = False) -> AsymptoticTerms:
    """Large-D pieces of the position-space bounds and the bounds assembled from them.

    Tsallis quantities are returned as logarithms since they underflow at large
    D.  ``log_tsallis_lower`` is (1-q) R_q^asym, the W_q bound implied by the
    Rényi form.  ``log_tsallis_lower_printed`` evaluates A₅ A₁^(-D(q-1)/α)
    literally, which raises the logarithm A₁ to a power; it is returned for
    comparison only and is None when that power is undefined.
    """
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    D, Z = state.D, state.Z
    a1 = A1(state, alpha)
    try:
        a1n = A1(state, -alpha)
    except ValueError:
        a1n = math.nan
    shannon = (A2(alpha, D, literal) + (D / alpha) * a1 - D * math.log(Z)
               + math.log(2 / alpha))
    a3 = a5 = renyi = renyi_neg = tsallis = tsallis_printed = None
    if q is not None:
        if not q > 1:
            raise DomainError("the large-D Rényi and Tsallis forms need q > 1")
        a3 = A3(q)
        a5 = log_A5(q, alpha, D, Z)
        base = ((3 * D - 1) / 2 * math.log(D)
                + (0.5 * math.log(math.pi * math.e / 8) - math.log(Z)) * D)
        renyi = base + (D / alpha) * a1 + a3 / (1 - q)
        renyi_neg = base + (D / alpha) * a1n + a3 / (1 - q)
        tsallis = (1 - q) * renyi
        if a1 > 0:
            tsallis_printed = a5 - D * (q - 1) / alpha * math.log(a1)
    return AsymptoticTerms(A0(alpha, D), A0_asymptotic(alpha, D), a1, a1n,
                           A2(alpha, D, literal), a3, a5, shannon, renyi, renyi_neg,
                           tsallis, tsallis_printed)


__all__ = [
    "A0", "A0_asymptotic", "A1", "A2", "A3", "log_A5", "AsymptoticTerms", "BoundInputs",
    "BoundReport", "Direction", "EntropyKind", "EntropyValue", "L1", "L2", "Space",
    "asymptotic_bound_terms", "bound_renyi_upper", "bound_shannon_upper",
    "bound_tsallis_lower", "entropy_quadrature", "log_L1", "log_L2",
]
