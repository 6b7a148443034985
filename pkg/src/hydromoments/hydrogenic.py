"""States, densities and exact radial expectation values of D-dimensional hydrogen.

Radial quantities do not depend on the magnetic hyperquantum numbers, so a state
is fully described by ``(n, l, D, Z)``.  Lengths are in Bohr radii (atomic
units); ``Z`` is the nuclear charge.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .specfun import (
    HypSpec,
    digamma,
    gegenbauer,
    hyp_terminating_signed,
    laguerre,
    log_gamma,
)

log = logging.getLogger(__name__)


class ValidityError(ValueError):
    """A formula was requested outside the range where it holds."""


class SingularFormulaError(ZeroDivisionError):
    """A closed form has a vanishing denominator for this state."""


class Method(str, enum.Enum):
    EXACT = "exact"
    CLOSED_FORM = "closedForm"
    LARGE_D = "largeD"
    RYDBERG = "rydberg"
    ORACLE = "oracle"


@dataclass(frozen=True)
class Evaluation:
    value: float
    method: Method
    validity: str

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ArithmeticError(f"non-finite value {self.value!r} ({self.validity})")

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class HydrogenicState:
    n: int
    l: int
    D: int
    Z: float = 1

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValidityError(f"n must be an integer >= 1, got {self.n!r}")
        if int(self.l) != self.l or not 0 <= self.l <= self.n - 1:
            raise ValidityError(f"l must satisfy 0 <= l <= n-1, got l={self.l!r}, n={self.n}")
        if int(self.D) != self.D or self.D < 2:
            raise ValidityError(f"D must be an integer >= 2, got {self.D!r}")
        if not self.Z > 0:
            raise ValidityError(f"Z must be positive, got {self.Z!r}")

    @property
    def is_circular(self) -> bool:
        return self.l == self.n - 1

    def with_Z(self, Z) -> "HydrogenicState":
        return HydrogenicState(self.n, self.l, self.D, Z)


@dataclass(frozen=True)
class DerivedParams:
    eta: float
    grand_l: float
    length_scale: float
    k: int
    nu: float


def derive_params(state: HydrogenicState, exact: bool = False) -> DerivedParams:
    """η, L, η/(2Z), k = n-l-1 and ν = L+1.

    With ``exact=True`` the half-integer parameters are returned as Fractions.
    """
    n, l, D = state.n, state.l, state.D
    if exact:
        half = Fraction(D - 3, 2)
        Z = Fraction(state.Z)
    else:
        half = (D - 3) / 2
        Z = state.Z
    eta = n + half
    L = l + half
    return DerivedParams(eta=eta, grand_l=L, length_scale=eta / (2 * Z), k=n - l - 1, nu=L + 1)


def energy(state: HydrogenicState) -> float:
    p = derive_params(state)
    return -state.Z ** 2 / (2 * p.eta ** 2)


# --------------------------------------------------------------------------
# densities


def log_radial_density_position(state: HydrogenicState, r):
    """ln ρ_{n,l}(r), normalised so that ∫ r^(D-1) ρ dr = 1."""
    p = derive_params(state)
    x = np.asarray(r, dtype=float) / p.length_scale
    beta = 2 * p.grand_l + 1
    const = (-state.D * math.log(p.length_scale) - math.log(2 * p.eta)
             + log_gamma(p.k + 1) - log_gamma(p.k + beta + 1))
    poly = laguerre(p.k, beta, x)
    with np.errstate(divide="ignore"):
        out = const - x + 2 * np.log(np.abs(poly))
        if state.l:
            out = out + 2 * state.l * np.log(x)
    return out


def radial_density_position(state: HydrogenicState, r: float) -> float:
    if not r > 0:
        raise ValidityError("r must be positive")
    return float(np.exp(log_radial_density_position(state, r)))


def _log_momentum_norm(state: HydrogenicState) -> float:
    p = derive_params(state)
    return (-state.D * math.log(state.Z) + (4 * p.grand_l + 6) * math.log(2.0)
            + log_gamma(p.k + 1) - math.log(2 * math.pi)
            - log_gamma(state.n + state.l + state.D - 2)
            + 2 * log_gamma(p.grand_l + 1) + (state.D + 1) * math.log(p.eta))


def log_radial_density_momentum(state: HydrogenicState, momentum):
    """ln M²_{n,l}(p), normalised so that ∫ p^(D-1) M² dp = 1."""
    p = derive_params(state)
    y = p.eta * np.asarray(momentum, dtype=float) / state.Z
    y2 = y * y
    t = (1 - y2) / (1 + y2)
    poly = gegenbauer(p.k, p.grand_l + 1, t)
    with np.errstate(divide="ignore"):
        out = (_log_momentum_norm(state) - (2 * p.grand_l + 4) * np.log1p(y2)
               + 2 * np.log(np.abs(poly)))
        if state.l:
            out = out + 2 * state.l * np.log(y)
    return out


def radial_density_momentum(state: HydrogenicState, momentum: float) -> float:
    if not momentum > 0:
        raise ValidityError("p must be positive")
    return float(np.exp(log_radial_density_momentum(state, momentum)))


# --------------------------------------------------------------------------
# position space


def _assemble(log_pref: float, series) -> float:
    if series.sign == 0:
        return 0.0
    log_v = log_pref + series.log_abs
    if log_v > 709.7:
        raise OverflowError(f"moment overflows double precision (log value {log_v:.1f})")
    return series.sign * math.exp(log_v)


def position_validity(state: HydrogenicState, alpha: float) -> str:
    bound = -state.D - 2 * state.l
    if not alpha > bound:
        raise ValidityError(f"<r^alpha> diverges unless alpha > -D-2l = {bound}; got {alpha}")
    return f"alpha > -D-2l = {bound}"


def position_hyp_spec(state: HydrogenicState, alpha: float) -> HypSpec:
    p = derive_params(state)
    return HypSpec((-p.k, -alpha - 1, alpha + 2), (2 * p.grand_l + 2, 1))


def position_expectation(state: HydrogenicState, alpha: float) -> Evaluation:
    """<r^alpha> from the terminating 3F2 representation."""
    validity = position_validity(state, alpha)
    p = derive_params(state)
    L2 = 2 * p.grand_l
    log_pref = ((alpha - 1) * math.log(p.eta) - (alpha + 1) * math.log(2.0)
                - alpha * math.log(state.Z)
                + log_gamma(L2 + alpha + 3) - log_gamma(L2 + 2))
    series = hyp_terminating_signed(position_hyp_spec(state, alpha))
    return Evaluation(_assemble(log_pref, series), Method.EXACT, validity)


def _nonzero(x, what):
    if x == 0:
        raise SingularFormulaError(f"{what} vanishes for this state")
    return x


def position_closed_forms(state: HydrogenicState, alpha: int, exact: bool = False):
    """Explicit <r^alpha> for alpha in {-4, -3, -2, -1, 1, 2}.

    Returns an :class:`Evaluation`, or a ``Fraction`` when ``exact`` is set.
    """
    validity = position_validity(state, alpha)
    p = derive_params(state, exact=exact)
    eta, L = p.eta, p.grand_l
    Z = Fraction(state.Z) if exact else state.Z
    half = Fraction(1, 2) if exact else 0.5
    if alpha == -1:
        v = Z / eta ** 2
    elif alpha == 1:
        v = (3 * eta ** 2 - L * (L + 1)) / (2 * Z)
    elif alpha == 2:
        v = eta ** 2 * (5 * eta ** 2 + 1 - 3 * L * (L + 1)) / (2 * Z ** 2)
    elif alpha == -2:
        v = Z ** 2 / (eta ** 3 * _nonzero(L + half, "L+1/2"))
    elif alpha == -3:
        v = Z ** 3 / (eta ** 3 * _nonzero(L * (L + half) * (L + 1), "L(L+1/2)(L+1)"))
    elif alpha == -4:
        den = (L - half) * L * (L + half) * (L + 1) * (L + 3 * half)
        v = Z ** 4 * (3 * eta ** 2 - L * (L + 1)) / (2 * eta ** 5 * _nonzero(den, "(L-1/2)...(L+3/2)"))
    else:
        raise ValueError(f"no closed form for alpha={alpha}")
    if exact:
        return v
    return Evaluation(float(v), Method.CLOSED_FORM, validity)


def log_position_expectation(state: HydrogenicState) -> Evaluation:
    n, l, D = state.n, state.l, state.D
    p = derive_params(state)
    v = (math.log(p.eta) + (2 * n - 2 * l - 1) / (2 * n + D - 3)
         + digamma(n + l + D - 2) - math.log(2 * state.Z))
    return Evaluation(v, Method.EXACT, "all states")


# --------------------------------------------------------------------------
# momentum space


def momentum_validity(state: HydrogenicState, alpha: float) -> str:
    lo = -state.D - 2 * state.l
    hi = state.D + 2 * state.l + 2
    if not lo < alpha < hi:
        raise ValidityError(f"<p^alpha> requires {lo} < alpha < {hi}; got {alpha}")
    return f"{lo} < alpha < {hi}"


def momentum_hyp_spec(state: HydrogenicState, alpha: float) -> HypSpec:
    p = derive_params(state)
    nu, k = p.nu, p.k
    return HypSpec(
        (-k, k + 2 * nu, nu, nu + (alpha + 1) / 2, nu + (3 - alpha) / 2),
        (2 * nu, nu + 0.5, nu + 1, nu + 1.5),
    )


def momentum_expectation(state: HydrogenicState, alpha: float) -> Evaluation:
    """<p^alpha> from the terminating 5F4 representation."""
    validity = momentum_validity(state, alpha)
    p = derive_params(state)
    nu, k = p.nu, p.k
    log_pref = math.fsum([
        (1 - 2 * nu) * math.log(2.0),
        alpha * math.log(state.Z / p.eta),
        0.5 * math.log(math.pi),
        -log_gamma(k + 1),
        math.log(k + nu),
        log_gamma(k + 2 * nu),
        log_gamma(nu + (alpha + 1) / 2),
        log_gamma(nu + (3 - alpha) / 2),
        -2 * log_gamma(nu + 0.5),
        -log_gamma(nu + 1),
        -log_gamma(nu + 1.5),
    ])
    series = hyp_terminating_signed(momentum_hyp_spec(state, alpha))
    return Evaluation(_assemble(log_pref, series), Method.EXACT, validity)


def momentum_closed_forms(state: HydrogenicState, alpha: int, exact: bool = False):
    """Explicit <p^alpha> for alpha in {-2, 2, 4, 6}."""
    validity = momentum_validity(state, alpha)
    p = derive_params(state, exact=exact)
    eta, L = p.eta, p.grand_l
    Z = Fraction(state.Z) if exact else state.Z
    if alpha == 2:
        v = Z ** 2 / eta ** 2
    elif alpha == -2:
        v = eta ** 2 / Z ** 2 * (8 * eta - 3 * (2 * L + 1)) / _nonzero(2 * L + 1, "2L+1")
    elif alpha == 4:
        v = Z ** 4 / eta ** 4 * (8 * eta - 3 * (2 * L + 1)) / _nonzero(2 * L + 1, "2L+1")
    elif alpha == 6:
        k, nu = p.k, L + 1
        den = _nonzero((2 * L + 3) * (2 * L + 1) * (2 * L - 1), "(2L+3)(2L+1)(2L-1)")
        v = (Z ** 6 / eta ** 6 * (4 * k + 2 * nu + 1)
             * (16 * k ** 2 + 40 * nu * k - 4 * k + 4 * nu ** 2 + 16 * nu + 15) / den)
    else:
        raise ValueError(f"no closed form for alpha={alpha}")
    if exact:
        return v
    value = float(v)
    ref = momentum_expectation(state, alpha).value
    if abs(value - ref) > 1e-9 * abs(ref):
        log.warning("closed-form <p^%s> = %r disagrees with the 5F4 value %r for %s",
                    alpha, value, ref, state)
    return Evaluation(value, Method.CLOSED_FORM, validity)


def momentum_reflection(state: HydrogenicState, beta: int) -> float:
    """Relative deviation between <p^-beta> and (η/Z)^(2beta+2) <p^(beta+2)>."""
    p = derive_params(state)
    lhs = momentum_expectation(state, -beta).value
    rhs = (p.eta / state.Z) ** (2 * beta + 2) * momentum_expectation(state, beta + 2).value
    return abs(lhs - rhs) / abs(lhs)


def log_momentum_expectation(state: HydrogenicState) -> Evaluation:
    n, l, D = state.n, state.l, state.D
    m = 2 * n + D - 3
    if m == 1:
        # 0/0 at n=1, D=2; the continuous-D limit log 2 - 1/2 is not substituted
        raise SingularFormulaError("(2n+D-3)^2 - 1 vanishes (n=1, D=2)")
    p = derive_params(state)
    v = -math.log(p.eta) + (2 * l + D - 2) * m / (m * m - 1) - 1 + math.log(state.Z)
    return Evaluation(v, Method.EXACT, "(2n+D-3)^2 != 1")
