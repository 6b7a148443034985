"""Highly excited (large-n) states: fixed-D limits and joint large-(n, D) limits.

The joint limit is governed by ``RatioLambda``, the limiting ratio of the
polynomial parameter to the degree.  It is a declared regime, not a property of
a finite state (see :func:`ratio_from_state` for a convenience estimate).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .hydrogenic import (
    Evaluation,
    HydrogenicState,
    Method,
    ValidityError,
    derive_params,
    momentum_validity,
    position_validity,
)
from .quadrature import QuadratureError, integrate
from .specfun import appell_f1, gauss_2f1, log_gamma

_TOL = 1e-12


@dataclass(frozen=True)
class RatioLambda:
    value: float

    def __post_init__(self):
        if not (self.value >= 0 and math.isfinite(self.value)):
            raise ValidityError(f"ratio must be finite and non-negative, got {self.value!r}")


@dataclass(frozen=True)
class EquilibriumMeasure:
    support_low: float
    support_high: float
    density: Callable[[np.ndarray], np.ndarray]
    # ∫ g dμ for a vectorized g, with the endpoint behaviour already removed
    expect: Callable[[Callable], float]

    def total_mass(self) -> float:
        return self.expect(lambda x: np.ones_like(x))


def ratio_from_state(state: HydrogenicState, space: str = "position") -> RatioLambda:
    """ν/k for a finite state.

    Position space uses ν = 2l + D - 2 (the Laguerre parameter); momentum space
    uses ν = l + (D-1)/2 (the Gegenbauer index).
    """
    k = state.n - state.l - 1
    if k == 0:
        raise ValidityError("ratio undefined for nodeless (k = 0) states")
    if space == "position":
        nu = 2 * state.l + state.D - 2
    elif space == "momentum":
        nu = state.l + (state.D - 1) / 2
    else:
        raise ValueError("space must be 'position' or 'momentum'")
    return RatioLambda(nu / k)


def _quad(f, pts, rel_tol=_TOL):
    res = integrate(f, pts, rel_tol=rel_tol, max_evals=40000)
    if not res.converged:
        raise QuadratureError(f"quadrature did not converge (estimate {res.error_estimate:.2e})")
    return res.value


# --------------------------------------------------------------------------
# fixed D, n -> infinity


def pos_rydberg_fixedD(state: HydrogenicState, alpha: float) -> Evaluation:
    """(η²/Z)^α 2^(α+1) Γ(α+3/2) / (√π Γ(α+2)), valid for α > -3/2."""
    if not alpha > -1.5:
        raise ValidityError(f"Rydberg position limit needs alpha > -3/2; got {alpha}")
    eta = derive_params(state).eta
    log_c = ((alpha + 1) * math.log(2) + log_gamma(alpha + 1.5)
             - 0.5 * math.log(math.pi) - log_gamma(alpha + 2))
    v = (eta * eta / state.Z) ** alpha * math.exp(log_c)
    return Evaluation(v, Method.RYDBERG, "alpha > -3/2, n -> infinity at fixed D")


def mom_rydberg_fixedD(state: HydrogenicState, alpha: float) -> Evaluation:
    """(Z/η)^α (α-1)/sin(π(α-1)/2), or (Z/η) 2/π at α = 1; valid for -1 < α < 3."""
    if not -1 < alpha < 3:
        raise ValidityError(f"Rydberg momentum limit needs -1 < alpha < 3; got {alpha}")
    eta = derive_params(state).eta
    c = 2 / math.pi if alpha == 1 else (alpha - 1) / math.sin(math.pi * (alpha - 1) / 2)
    return Evaluation((state.Z / eta) ** alpha * c, Method.RYDBERG,
                      "-1 < alpha < 3, n -> infinity at fixed D")


def _gap_integrand(alpha):
    r3 = math.sqrt(3.0)

    def f(theta):
        c = np.cos(theta)
        return (2 - r3 * c) ** (alpha / 2) * (2 + r3 * c) ** (1 - alpha / 2)
    return f


def nl_gap_constant(alpha: float) -> float:
    """(1/2π) ∫ (2-√3t)^(α/2) (2+√3t)^(1-α/2) / √(1-t²) dt over [-1, 1], with t = cos θ."""
    return _quad(_gap_integrand(alpha), np.linspace(0, math.pi, 5)) / (2 * math.pi)


def nl_gap_constant_chebyshev(alpha: float, nodes: int = 64) -> float:
    """Same constant by Gauss-Chebyshev quadrature of the first kind."""
    theta = (2 * np.arange(1, nodes + 1) - 1) * math.pi / (2 * nodes)
    return float(np.mean(_gap_integrand(alpha)(theta))) / 2


def mom_rydberg_fixed_nl_gap(state: HydrogenicState, alpha: float) -> Evaluation:
    """Momentum moment for n, l -> infinity with n - l fixed and D bounded."""
    momentum_validity(state, alpha)
    eta = derive_params(state).eta
    v = (state.Z / eta) ** alpha * nl_gap_constant(alpha)
    return Evaluation(v, Method.RYDBERG, "n, l -> infinity, n - l fixed, D bounded")


# --------------------------------------------------------------------------
# equilibrium measures


def position_support(ratio: RatioLambda) -> tuple[float, float]:
    lam = ratio.value
    s = math.sqrt(1 + 2 * lam)
    # a = λ + 1 - √(1+2λ), written to avoid cancellation at small λ
    a = lam * lam / (lam + 1 + s)
    return a, lam + 1 + s


def momentum_support(ratio: RatioLambda) -> float:
    lam = ratio.value
    return math.sqrt(lam + 0.25) / (lam + 0.5)


def equilibrium_position(ratio: RatioLambda) -> EquilibriumMeasure:
    """dμ = √((x-a)(b-x)) / (π x) dx on [a, b]."""
    a, b = position_support(ratio)

    def density(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(invalid="ignore"):
            return np.where((x > a) & (x < b), np.sqrt((x - a) * (b - x)) / (math.pi * x), 0.0)

    def expect(g):
        w = b - a

        # x = a + (b-a) sin²θ
        def f(th):
            s2 = np.sin(th) ** 2
            c2 = np.cos(th) ** 2
            x = a + w * s2
            return g(x) * 2 * w * w * s2 * c2 / (math.pi * x)
        return _quad(f, np.linspace(0, math.pi / 2, 5))

    return EquilibriumMeasure(a, b, density, expect)


def equilibrium_momentum(ratio: RatioLambda) -> EquilibriumMeasure:
    """dμ = (1+2λ) √(ξ²-x²) / (π (1-x²)) dx on [-ξ, ξ]."""
    lam = ratio.value
    xi = momentum_support(ratio)
    one_minus_xi2 = 1 - xi * xi

    def density(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.where(np.abs(x) < xi,
                            (1 + 2 * lam) * np.sqrt(xi * xi - x * x) / (math.pi * (1 - x * x)), 0.0)

    def expect(g):
        # x = ξ cos θ; 1 - x² = sin²θ + (1-ξ²)cos²θ keeps the ξ = 1 endpoints finite
        def f(th):
            s2 = np.sin(th) ** 2
            den = s2 + one_minus_xi2 * np.cos(th) ** 2
            return g(xi * np.cos(th)) * (1 + 2 * lam) * xi * xi * s2 / (math.pi * den)
        return _quad(f, np.linspace(0, math.pi, 5))

    return EquilibriumMeasure(-xi, xi, density, expect)


# --------------------------------------------------------------------------
# limiting integrals and their closed forms


def position_limiting_integral(alpha: float, ratio: RatioLambda) -> float:
    """(1/π) ∫_a^b x^α √((x-a)(b-x)) dx."""
    a, b = position_support(ratio)
    if a == 0 and not alpha > -1.5:
        raise ValidityError("integral diverges at x = 0 for alpha <= -3/2")
    w = b - a

    def f(th):
        s2 = np.sin(th) ** 2
        c2 = np.cos(th) ** 2
        return (a + w * s2) ** alpha * 2 * w * w * s2 * c2 / math.pi
    return _quad(f, np.linspace(0, math.pi / 2, 5))


def _one_minus_xi_cos(xi, th):
    # 1 - ξ cos θ = (1-ξ) + 2ξ sin²(θ/2)
    return (1 - xi) + 2 * xi * np.sin(th / 2) ** 2


def _one_plus_xi_cos(xi, th):
    return (1 - xi) + 2 * xi * np.cos(th / 2) ** 2


def momentum_integral(alpha: float, ratio: RatioLambda) -> float:
    """∫_{-ξ}^{ξ} (1-t)^(-1+α/2) (1+t)^(-α/2) √(ξ²-t²) dt (no normalizing factor)."""
    xi = momentum_support(ratio)
    if xi == 1 and not -1 < alpha < 3:
        raise ValidityError("integral diverges at t = ±1 for alpha outside (-1, 3)")

    def f(th):
        return (_one_minus_xi_cos(xi, th) ** (-1 + alpha / 2)
                * _one_plus_xi_cos(xi, th) ** (-alpha / 2) * (xi * np.sin(th)) ** 2)
    return _quad(f, np.linspace(0, math.pi, 5))


def limiting_integrals(alpha: float, ratio: RatioLambda) -> tuple[float, float]:
    """Position and momentum limiting moments of the two equilibrium measures.

    Returns ((1/π) ∫ x^α √((x-a)(b-x)) dx,
             ((1+2λ)/π) ∫ (1-t)^(-1+α/2) (1+t)^(-α/2) √(ξ²-t²) dt).
    """
    pos = position_limiting_integral(alpha, ratio)
    mom = (1 + 2 * ratio.value) / math.pi * momentum_integral(alpha, ratio)
    return pos, mom


def position_limit_closed_form(alpha: float, ratio: RatioLambda) -> float:
    """a^α (b-a)² / 8 · 2F1(-α, 3/2; 3; (a-b)/a)."""
    a, b = position_support(ratio)
    if a == 0:
        if alpha == 0:
            return b * b / 8
        raise ValidityError("closed form is singular at a = 0 (ratio 0) unless alpha = 0")
    return a ** alpha * (b - a) ** 2 / 8 * gauss_2f1(-alpha, 1.5, 3, (a - b) / a)


def momentum_limit_f1_short(alpha: float, ratio: RatioLambda) -> float:
    """(π/8) F1(3/2, 1-α/2, α/2, 3; u, -u) with u = 2ξ/(1+ξ)."""
    xi = momentum_support(ratio)
    u = 2 * xi / (1 + xi)
    return math.pi / 8 * appell_f1(1.5, 1 - alpha / 2, alpha / 2, 3, u, -u)


def momentum_limit_f1(alpha: float, ratio: RatioLambda) -> float:
    """4ξ² (1+ξ)^(-1+α/2) (1-ξ)^(-α/2) (π/8) F1(3/2, 1-α/2, α/2, 3; u, v).

    Here u = 2ξ/(1+ξ) and v = -2ξ/(1-ξ).  This comes from substituting
    t = ξ(2x-1) in :func:`momentum_integral` and the Euler integral for F1.
    """
    xi = momentum_support(ratio)
    if xi >= 1:
        raise ValidityError("closed form needs ξ < 1 (ratio > 0)")
    u = 2 * xi / (1 + xi)
    v = -2 * xi / (1 - xi)
    pref = 4 * xi * xi * (1 + xi) ** (-1 + alpha / 2) * (1 - xi) ** (-alpha / 2)
    return pref * math.pi / 8 * appell_f1(1.5, 1 - alpha / 2, alpha / 2, 3, u, v)


# --------------------------------------------------------------------------
# joint large-(n, D) limits


def _warn_literal():
    warnings.warn("closed large-(n, D) formula evaluated as written; it does not satisfy "
                  "the alpha = 0 normalization (see pos_rydberg_joint / mom_rydberg_joint)",
                  stacklevel=3)


def pos_rydberg_largeD(state: HydrogenicState, alpha: float, ratio: RatioLambda,
                       literal: bool = True) -> Evaluation:
    """Joint large-(n, D) position moment built on the equilibrium measure.

    ``literal=True`` evaluates
    (2n+D)^(α-1) n^(α+1) 2^(-2α-3) Z^(-α) a^α (b-a)² 2F1(-α, 3/2; 3; (a-b)/a).
    ``literal=False`` uses (1/2η)(η/2Z)^α k^(α+1) times the quadrature moment
    of the measure instead.  Both inherit the measure's normalization defect;
    :func:`pos_rydberg_joint` is the self-consistent version.
    """
    validity = position_validity(state, alpha)
    if not ratio.value > 0:
        raise ValidityError("joint limit needs ratio > 0")
    n, D, Z = state.n, state.D, state.Z
    if literal:
        _warn_literal()
        a, b = position_support(ratio)
        log_pref = ((alpha - 1) * math.log(2 * n + D) + (alpha + 1) * math.log(n)
                    - (2 * alpha + 3) * math.log(2) - alpha * math.log(Z))
        v = math.exp(log_pref) * a ** alpha * (b - a) ** 2 * gauss_2f1(-alpha, 1.5, 3, (a - b) / a)
        return Evaluation(v, Method.RYDBERG, validity + ", closed formula as written")
    p = derive_params(state)
    k = p.k
    log_pref = -math.log(2 * p.eta) + alpha * math.log(p.eta / (2 * Z)) + (alpha + 1) * math.log(k)
    v = math.exp(log_pref) * position_limiting_integral(alpha, ratio)
    return Evaluation(v, Method.RYDBERG, validity + ", measure-moment route")


def mom_rydberg_largeD(state: HydrogenicState, alpha: float, ratio: RatioLambda,
                       literal: bool = True) -> Evaluation:
    """Joint large-(n, D) momentum moment built on the equilibrium measure.

    ``literal=True`` evaluates Z^α (2/(2n+D-3))^α (1+2λ)/8 F1(3/2, 1-α/2, α/2, 3; u, -u)
    times (Γ(1+(D-1)/2)/Γ(ν'))² with ν' = 2l+D-2.  That gamma factor
    underflows for large D; the ratio is assembled in log space and a zero
    is returned with a warning when it is below the float range.
    ``literal=False`` uses Z^α (2/(2n+D-3))^α times the measure moment.
    """
    validity = momentum_validity(state, alpha)
    if not ratio.value > 0:
        raise ValidityError("joint limit needs ratio > 0")
    n, l, D, Z = state.n, state.l, state.D, state.Z
    base = alpha * (math.log(Z) + math.log(2 / (2 * n + D - 3)))
    if literal:
        _warn_literal()
        xi = momentum_support(ratio)
        u = 2 * xi / (1 + xi)
        f1 = appell_f1(1.5, 1 - alpha / 2, alpha / 2, 3, u, -u)
        nu_laguerre = 2 * l + D - 2
        log_g = 2 * (log_gamma(1 + (D - 1) / 2) - log_gamma(nu_laguerre))
        log_v = base + math.log((1 + 2 * ratio.value) / 8) + log_g
        if log_v < -745:
            warnings.warn("gamma factor underflows; returning 0", stacklevel=2)
            return Evaluation(0.0, Method.RYDBERG, validity + ", closed formula as written (underflow)")
        if log_v > 709:
            raise OverflowError("gamma factor overflows")
        return Evaluation(math.exp(log_v) * f1, Method.RYDBERG, validity + ", closed formula as written")
    _, mom = limiting_integrals(alpha, ratio)
    return Evaluation(math.exp(base) * mom, Method.RYDBERG, validity + ", measure-moment route")


def arcsine_position_moment(m: float, ratio: RatioLambda) -> float:
    """E[x^m] for the arcsine law on [(√(1+λ)-1)², (√(1+λ)+1)²]."""
    lam = ratio.value
    s = math.sqrt(1 + lam)
    lo = lam * lam / (s + 1) ** 2  # (s-1)²
    hi = (s + 1) ** 2
    w = hi - lo

    def f(th):
        return (lo + w * np.sin(th) ** 2) ** m * (2 / math.pi)
    return _quad(f, np.linspace(0, math.pi / 2, 5))


def arcsine_momentum_moment(alpha: float, ratio: RatioLambda) -> float:
    """E[(1-t)^(α/2) (1+t)^(1-α/2)] for the arcsine law on [-s, s], s = √(1+2λ)/(1+λ)."""
    lam = ratio.value
    s = math.sqrt(1 + 2 * lam) / (1 + lam)

    def f(th):
        return (_one_minus_xi_cos(s, th) ** (alpha / 2)
                * _one_plus_xi_cos(s, th) ** (1 - alpha / 2) / math.pi)
    return _quad(f, np.linspace(0, math.pi, 5))


def pos_rydberg_joint(state: HydrogenicState, alpha: float, ratio: RatioLambda | None = None) -> Evaluation:
    """<r^α> for k, ν' = 2l+D-2 -> infinity with ν'/k -> λ.

    The squared orthonormal Laguerre functions in the variable x = t/k tend to
    the arcsine law on the zero support [(√(1+λ)∓1)²], so
    <r^α> ≈ (1/2η)(η/2Z)^α k^(α+1) E[x^(α+1)].  At λ = 0 this reduces to the
    fixed-D Rydberg limit.
    """
    validity = position_validity(state, alpha)
    ratio = ratio or ratio_from_state(state, "position")
    p = derive_params(state)
    log_pref = -math.log(2 * p.eta) + alpha * math.log(p.eta / (2 * state.Z)) + (alpha + 1) * math.log(p.k)
    v = math.exp(log_pref) * arcsine_position_moment(alpha + 1, ratio)
    return Evaluation(v, Method.RYDBERG, validity + ", arcsine limit")


def mom_rydberg_joint(state: HydrogenicState, alpha: float, ratio: RatioLambda | None = None) -> Evaluation:
    """<p^α> for k, ν = l+(D-1)/2 -> infinity with ν/k -> λ.

    The squared orthonormal Gegenbauer polynomials tend to the arcsine law on
    [-s, s] with s = √(1+2λ)/(1+λ), so <p^α> ≈ (Z/η)^α E[(1-t)^(α/2)(1+t)^(1-α/2)].
    At λ = 0 this reduces to the fixed-D Rydberg limit.
    """
    validity = momentum_validity(state, alpha)
    ratio = ratio or ratio_from_state(state, "momentum")
    eta = derive_params(state).eta
    v = (state.Z / eta) ** alpha * arcsine_momentum_moment(alpha, ratio)
    return Evaluation(v, Method.RYDBERG, validity + ", arcsine limit")
