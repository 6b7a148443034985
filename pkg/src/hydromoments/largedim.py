"""Large-dimension asymptotics of radial moments, and the f_k machinery behind them.

The leading behaviour is r ~ D²/(4Z) and p ~ 2Z/D.  Expansions are evaluated in
product form (never re-expanded), so they reproduce tabulated asymptotic values
digit for digit.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .hydrogenic import (
    Evaluation,
    HydrogenicState,
    Method,
    ValidityError,
    derive_params,
    log_momentum_expectation,
    log_position_expectation,
    momentum_expectation,
    momentum_validity,
    position_expectation,
    position_validity,
)
from .specfun import log_gamma


@dataclass(frozen=True)
class ExpansionTerm:
    order: int
    coefficient: float


@dataclass(frozen=True)
class DSequenceEntry:
    j: int
    value: object
    product_value: object


# --------------------------------------------------------------------------
# moments


def position_largeD(state: HydrogenicState, alpha: float, eta_correction: bool = False) -> Evaluation:
    """(D²/4Z)^α (1 + (α+1)(α+4l-2)/(2D)) (1 + (α+1)(α+2)(n-l-1)/D).

    This product drops the O(1/D) shift between η^(α-1) and (D/2)^(α-1), so its
    residual is O(1/D) rather than O(1/D²).  ``eta_correction=True`` multiplies
    by the missing factor (1 + (α-1)(2n-3)/D), which restores an O(1/D²)
    residual.
    """
    validity = position_validity(state, alpha)
    n, l, D, Z = state.n, state.l, state.D, state.Z
    v = ((D * D / (4 * Z)) ** alpha
         * (1 + (alpha + 1) * (alpha + 4 * l - 2) / (2 * D))
         * (1 + (alpha + 1) * (alpha + 2) * (n - l - 1) / D))
    if eta_correction:
        v *= 1 + (alpha - 1) * (2 * n - 3) / D
    return Evaluation(v, Method.LARGE_D, validity + ", D -> infinity")


def momentum_largeD(state: HydrogenicState, alpha: float, prefactor: str = "D") -> Evaluation:
    """(s)^α (1 + α(α-2)(2n-2l-1)/(2D)) with s = 2Z/D, or s = Z/η for ``prefactor="eta"``.

    Only the η prefactor gives an O(1/D²) residual; with 2Z/D the residual is O(1/D).
    """
    validity = momentum_validity(state, alpha)
    n, l, D, Z = state.n, state.l, state.D, state.Z
    if prefactor == "D":
        s = 2 * Z / D
    elif prefactor == "eta":
        s = Z / derive_params(state).eta
    else:
        raise ValueError("prefactor must be 'D' or 'eta'")
    v = s ** alpha * (1 + alpha * (alpha - 2) * (2 * n - 2 * l - 1) / (2 * D))
    return Evaluation(v, Method.LARGE_D, validity + ", D -> infinity")


def momentum_largeD_nu(state: HydrogenicState, alpha: float) -> Evaluation:
    """(Z/η)^α (1 + α(α-2)(2k+1)/(4ν)) with k = n-l-1 and ν = l+(D-1)/2."""
    validity = momentum_validity(state, alpha)
    p = derive_params(state)
    v = (state.Z / p.eta) ** alpha * (1 + alpha * (alpha - 2) * (2 * p.k + 1) / (4 * p.nu))
    return Evaluation(v, Method.LARGE_D, validity + ", nu -> infinity")


def log_position_largeD(state: HydrogenicState) -> Evaluation:
    n, l, D = state.n, state.l, state.D
    v = 2 * math.log(D) - math.log(4 * state.Z) + (5 * n - l - 6.5) / D
    return Evaluation(v, Method.LARGE_D, "D -> infinity")


def log_momentum_largeD(state: HydrogenicState) -> Evaluation:
    n, l, D = state.n, state.l, state.D
    v = -(4 * n - 2 * l - 4) / D - math.log(D) + math.log(2 * state.Z)
    return Evaluation(v, Method.LARGE_D, "D -> infinity")


def _require_circular(state):
    if not state.is_circular:
        raise ValidityError(f"circular-state formula needs l = n-1; got n={state.n}, l={state.l}")


def circular_position_largeD(state: HydrogenicState, alpha: float) -> Evaluation:
    _require_circular(state)
    validity = position_validity(state, alpha)
    n, D, Z = state.n, state.D, state.Z
    v = (D * D / (4 * Z)) ** alpha * (1 + (alpha + 1) * (4 * n + alpha - 6) / (2 * D))
    return Evaluation(v, Method.LARGE_D, validity + ", l = n-1, D -> infinity")


def circular_momentum_largeD(state: HydrogenicState, alpha: float) -> Evaluation:
    """(2Z/D)^α (1 + α(α-2)(2n-1)/(2D)).

    For n > 1 the coefficient 2n-1 differs from the general formula at l = n-1,
    whose coefficient is 2n-2l-1 = 1.
    """
    _require_circular(state)
    validity = momentum_validity(state, alpha)
    n, D, Z = state.n, state.D, state.Z
    v = (2 * Z / D) ** alpha * (1 + alpha * (alpha - 2) * (2 * n - 1) / (2 * D))
    return Evaluation(v, Method.LARGE_D, validity + ", l = n-1, D -> infinity")


def circular_log_position_largeD(state: HydrogenicState) -> Evaluation:
    _require_circular(state)
    n, D = state.n, state.D
    v = (4 * n - 5.5) / D + 2 * math.log(D) - math.log(4 * state.Z)
    return Evaluation(v, Method.LARGE_D, "l = n-1, D -> infinity")


def circular_log_momentum_largeD(state: HydrogenicState, literal: bool = False) -> Evaluation:
    """<log p> of a circular state at large D.

    By default this is the general expansion at l = n-1, with 1/D coefficient
    -(2n-2).  ``literal=True`` uses the coefficient -1 instead.  That variant
    disagrees with the exact value at order 1/D for every n != 3/2, so it
    comes with a warning.
    """
    _require_circular(state)
    if not literal:
        return log_momentum_largeD(state)
    warnings.warn("the -1/D circular <log p> coefficient is inconsistent with the exact "
                  "logarithmic moment; use literal=False for the consistent expansion",
                  stacklevel=2)
    D = state.D
    v = -1 / D - math.log(D / 2) + math.log(state.Z)
    return Evaluation(v, Method.LARGE_D, "l = n-1, D -> infinity (inconsistent coefficient)")


# --------------------------------------------------------------------------
# building blocks


def hyp3f2_largeD_partial(state: HydrogenicState, alpha: float, m: int) -> float:
    """First m terms of 3F2(-n+l+1, -α-1, α+2; 2l-1+D, 1; 1)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    n, l, D = state.n, state.l, state.D
    a = (-n + l + 1, -alpha - 1, alpha + 2)
    b = 2 * l - 1 + D
    terms = [1.0]
    t = 1.0
    for j in range(m - 1):
        t *= (a[0] + j) * (a[1] + j) * (a[2] + j) / ((b + j) * (1 + j) * (j + 1))
        terms.append(t)
    return math.fsum(terms)


def gamma_ratio_coefficients(l: int, alpha: float) -> tuple[float, float]:
    """1/D and 1/D² coefficients of Γ(D+2l+α)/Γ(D+2l-1) / D^(1+α)."""
    a, b = 2 * l + alpha, 2 * l - 1
    s = a - b
    c1 = s * (a + b - 1) / 2
    c2 = s * (s - 1) / 2 * (3 * (a + b - 1) ** 2 - s - 1) / 12
    return c1, c2


def gamma_ratio_expansion(l: int, alpha: float, D: int, orders: int = 1) -> float:
    """Γ(D+2l+α)/Γ(D+2l-1) expanded in 1/D and truncated after ``orders`` corrections."""
    if not D + 2 * l - 1 > 0:
        raise ValidityError("D + 2l - 1 must be positive")
    if orders not in (0, 1, 2):
        raise ValueError("orders must be 0, 1 or 2")
    c1, c2 = gamma_ratio_coefficients(l, alpha)
    corr = 1.0
    if orders >= 1:
        corr += c1 / D
    if orders >= 2:
        corr += c2 / D ** 2
    return D ** (1 + alpha) * corr


def gamma_ratio_exact(l: int, alpha: float, D: int) -> float:
    return math.exp(log_gamma(D + 2 * l + alpha) - log_gamma(D + 2 * l - 1))


# --------------------------------------------------------------------------
# the f_k sums


def _num(x, exact):
    return Fraction(x) if exact else float(x)


def _p_of(alpha):
    return alpha * (alpha - 2) / 4


def d_sequence(j: int, nu, alpha, exact: bool = False) -> DSequenceEntry:
    """d_j(ν) in both its Pochhammer-ratio form and its product form."""
    if not nu > 0:
        raise ValidityError("nu must be positive")
    nu, alpha = _num(nu, exact), _num(alpha, exact)
    half = _num(Fraction(1, 2), exact)
    ratio = nu / (nu + j)
    for i in range(j):
        ratio *= (nu + (alpha + 1) / 2 + i) * (nu + (3 - alpha) / 2 + i)
        ratio /= (nu + half + i) * (nu + 3 * half + i)
    p = _p_of(alpha)
    prod = nu / (nu + j)
    for i in range(1, j + 1):
        prod *= 1 - p / ((nu + i + half) * (nu + i - half))
    return DSequenceEntry(j, ratio, prod)


def d_values(k: int, nu, alpha, exact: bool = False) -> list:
    """[d_0, ..., d_k] from the product form, built incrementally."""
    nu, alpha = _num(nu, exact), _num(alpha, exact)
    half = _num(Fraction(1, 2), exact)
    p = _p_of(alpha)
    out = []
    prod = _num(1, exact)
    for j in range(k + 1):
        if j:
            prod *= 1 - p / ((nu + j + half) * (nu + j - half))
        out.append(nu / (nu + j) * prod)
    return out


def backward_difference(d: list, order: int, index: int | None = None, exact: bool = False):
    """∇^order d_index = Σ_j (-1)^j C(order, j) d_(index-j)."""
    if index is None:
        index = len(d) - 1
    if order > index:
        raise ValueError("difference order exceeds index")
    terms = [(-1) ** j * comb(order, j) * d[index - j] for j in range(order + 1)]
    return sum(terms, Fraction(0)) if exact else math.fsum(terms)


def _rising(a, j, exact):
    out = _num(1, exact)
    for i in range(j):
        out *= a + i
    return out


def fk_direct(k: int, nu, alpha, exact: bool = False):
    """f_k(ν) = (1/(2ν)_k) Σ_j (-1)^j C(k,j) (2ν+j)_k d_j."""
    if not nu > 0:
        raise ValidityError("nu must be positive")
    d = d_values(k, nu, alpha, exact)
    nu = _num(nu, exact)
    terms = [(-1) ** j * comb(k, j) * _rising(2 * nu + j, k, exact) * d[j] for j in range(k + 1)]
    s = sum(terms, Fraction(0)) if exact else math.fsum(terms)
    return s / _rising(2 * nu, k, exact)


def fk_prop1(k: int, nu, alpha, exact: bool = False):
    """f_k(ν) rewritten through backward differences of d at index k."""
    if not nu > 0:
        raise ValidityError("nu must be positive")
    d = d_values(k, nu, alpha, exact)
    nu = _num(nu, exact)
    terms = [comb(k, i) * backward_difference(d, i, k, exact)
             / (math.factorial(i) * _rising(2 * nu, k - i, exact)) for i in range(k + 1)]
    s = sum(terms, Fraction(0)) if exact else math.fsum(terms)
    return (-1) ** k * math.factorial(k) * s


def fk_asymptotic(k: int, nu: float, alpha: float) -> float:
    """k!/(2ν)^k (1 - k(k+3+2α(2-α))/(4ν))."""
    return (math.factorial(k) / (2 * nu) ** k
            * (1 - k * (k + 3 + 2 * alpha * (2 - alpha)) / (4 * nu)))


def fk_scaled_remainder(k: int, nu, alpha) -> float:
    """ν² |f_k - f_k^asym| (2ν)^k / k!, which stays bounded if the remainder is O(ν⁻²)."""
    exact = fk_direct(k, Fraction(nu), Fraction(alpha), exact=True)
    nu_f = Fraction(nu)
    alpha_f = Fraction(alpha)
    asym = (math.factorial(k) / (2 * nu_f) ** k
            * (1 - k * (k + 3 + 2 * alpha_f * (2 - alpha_f)) / (4 * nu_f)))
    return float(nu_f ** 2 * abs(exact - asym) * (2 * nu_f) ** k / math.factorial(k))


def lemma1_sides(a, j: int, k: int) -> tuple[Fraction, Fraction]:
    """Both sides of (a+j)_k/(a)_k = k! Σ_i C(j,i) / ((k-i)! (a)_i), exactly."""
    if not 0 <= j <= k:
        raise ValueError("need 0 <= j <= k")
    a = Fraction(a)
    lhs = _rising(a + j, k, True) / _rising(a, k, True)
    rhs = math.factorial(k) * sum(Fraction(comb(j, i)) / (math.factorial(k - i) * _rising(a, i, True))
                                  for i in range(j + 1))
    return lhs, rhs


def dk_first_coefficient(k: int, alpha, nus=(200, 400, 800)) -> float:
    """Estimate β₁(k) in d_k = 1 - β₁/ν + β₂/ν² - ... by Richardson extrapolation.

    g(ν) = ν(1 - d_k(ν)) = β₁ - β₂/ν + O(ν⁻²) is evaluated exactly at the
    given ν values (each double the previous one) and extrapolated to ν = ∞.
    """
    g = [float(nu * (1 - d_values(k, Fraction(nu), Fraction(alpha), exact=True)[-1])) for nu in nus]
    if len(g) == 2:
        return 2 * g[1] - g[0]
    r1 = [2 * g[i + 1] - g[i] for i in range(len(g) - 1)]
    return (4 * r1[1] - r1[0]) / 3


def scaled_nabla(order: int, k: int, nu, alpha) -> Fraction:
    """ν^order ∇^order d_k, exactly; tends to (-1)^order order! as ν grows."""
    nu = Fraction(nu)
    d = d_values(k, nu, Fraction(alpha), exact=True)
    return nu ** order * backward_difference(d, order, k, exact=True)


# --------------------------------------------------------------------------
# convergence sweeps


@dataclass(frozen=True)
class ConvergenceReport:
    dimensions: tuple
    exact: tuple
    asymptotic: tuple
    residuals: tuple
    ratios: tuple = field(default=())
    fitted_order: float = math.nan
    status: str = "ok"

    def within(self, lo: float, hi: float) -> bool:
        return self.status == "ok" and all(lo <= r <= hi for r in self.ratios)


def convergence_report(state: HydrogenicState, alpha: float, space: str,
                       dimensions=(100, 200, 400, 800), **options) -> ConvergenceReport:
    """Relative residual |exact - asymptotic| / exact along a doubling sweep in D.

    ``ratios`` holds R(D)/R(2D); an O(1/D^m) residual gives ratios near 2^m.
    Cells whose first-order correction vanishes identically are reported with
    status "degenerate correction" and no ratios; cells where the expansion is
    exact (all residuals at rounding level) get status "exact agreement".
    """
    if space == "position":
        exact_fn, asym_fn = position_expectation, position_largeD
        degenerate = alpha + 1 == 0
    elif space == "momentum":
        exact_fn, asym_fn = momentum_expectation, momentum_largeD
        degenerate = alpha in (0, 2)
    else:
        raise ValueError("space must be 'position' or 'momentum'")
    ex, asy, res = [], [], []
    for D in dimensions:
        s = HydrogenicState(state.n, state.l, D, state.Z)
        e = exact_fn(s, alpha).value
        a = asym_fn(s, alpha, **options).value
        ex.append(e)
        asy.append(a)
        res.append(abs(e - a) / abs(e))
    if degenerate:
        return ConvergenceReport(tuple(dimensions), tuple(ex), tuple(asy), tuple(res),
                                 status="degenerate correction")
    if max(res) < 1e-12:
        return ConvergenceReport(tuple(dimensions), tuple(ex), tuple(asy), tuple(res),
                                 status="exact agreement")
    ratios = tuple(res[i] / res[i + 1] if res[i + 1] > 0 else math.inf
                   for i in range(len(res) - 1))
    order = math.log2(ratios[-1]) if ratios and math.isfinite(ratios[-1]) and ratios[-1] > 0 else math.nan
    return ConvergenceReport(tuple(dimensions), tuple(ex), tuple(asy), tuple(res), ratios, order)


def log_moment_residuals(state: HydrogenicState, dimensions=(100, 200, 400, 800)):
    """(D, exact - asymptotic) for <log r> and <log p>."""
    out = []
    for D in dimensions:
        s = HydrogenicState(state.n, state.l, D, state.Z)
        out.append((D,
                    log_position_expectation(s).value - log_position_largeD(s).value,
                    log_momentum_expectation(s).value - log_momentum_largeD(s).value))
    return out
