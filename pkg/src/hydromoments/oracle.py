"""Independent reference values: quadrature of the defining integrals and exact replays.

Nothing here calls into :mod:`hydromoments.hydrogenic` or
:mod:`hydromoments.largedim`; the polynomials come from ``scipy.special`` and
the integrals are taken directly over the wavefunction densities, so agreement
with the closed forms is real evidence.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import comb

import mpmath
import numpy as np
from scipy import special as sp

from .quadrature import QuadratureResult, integrate

# selector for the integrand: a real power, or the string "log"
LOG = "log"

_ZERO_NODE_LIMIT = 60


def _half(D):
    return Fraction(D - 3, 2)


def _combine(parts) -> QuadratureResult:
    return QuadratureResult(
        value=math.fsum(p.value for p in parts),
        error_estimate=sum(p.error_estimate for p in parts),
        node_count=sum(p.node_count for p in parts),
        converged=all(p.converged for p in parts),
    )


def _check_selector(f):
    if isinstance(f, str):
        if f != LOG:
            raise ValueError(f"unknown integrand selector {f!r}")
        return None
    return float(f)


# --------------------------------------------------------------------------
# position space


def quad_position_moment(state, f=0.0, rel_tol: float = 1e-11,
                         max_evals: int = 20000) -> QuadratureResult:
    """∫ r^(D-1) g(r) ρ(r) dr with g = r^alpha, or g = ln r when ``f == "log"``.

    Works in u = r/λ with λ = η/(2Z); the Laguerre weight is handled in log space.
    """
    n, l, D, Z = state.n, state.l, state.D, float(state.Z)
    alpha = _check_selector(f)
    if alpha is not None and not alpha > -D - 2 * l:
        raise ValueError(f"integral diverges for alpha={alpha} <= -D-2l")
    eta = n + (D - 3) / 2
    L = l + (D - 3) / 2
    k = n - l - 1
    beta = 2 * L + 1
    scale = eta / (2 * Z)
    power = (alpha if alpha is not None else 0.0) + 2 * L + 2
    log_c = math.lgamma(k + 1) - math.lgamma(k + beta + 1) - math.log(2 * eta)

    def weight(u):
        with np.errstate(divide="ignore", invalid="ignore"):
            poly = sp.eval_genlaguerre(k, beta, u)
            lw = log_c + power * np.log(u) - u + 2 * np.log(np.abs(poly))
            w = np.exp(lw)
        if alpha is None:
            w = w * (np.log(scale) + np.log(u))
        return w

    peak = 2 * L + 2 + max(alpha or 0.0, 0.0)
    width = math.sqrt(peak + 1.0)
    pts = {0.0, peak, 4 * eta}
    pts.update(max(peak + m * width, 0.0) for m in (-8, -4, -2, -1, 1, 2, 4, 8))
    if 0 < k <= _ZERO_NODE_LIMIT:
        pts.update(float(z) for z in sp.roots_genlaguerre(k, beta)[0])
    cut = max(pts) + 40.0
    pts.add(cut)
    pts = sorted(p for p in pts if p <= cut)

    body = integrate(weight, pts, rel_tol=rel_tol, max_evals=max_evals)

    def tail(t):
        with np.errstate(divide="ignore", invalid="ignore"):
            u = cut + t / (1 - t)
            return weight(u) / (1 - t) ** 2

    rest = integrate(tail, [0.0, 0.5, 1.0], rel_tol=rel_tol,
                     abs_tol=rel_tol * abs(body.value) * 1e-3, max_evals=max_evals)
    res = _combine([body, rest])
    if alpha:
        res = QuadratureResult(res.value * scale ** alpha, res.error_estimate * scale ** alpha,
                               res.node_count, res.converged)
    return res


# --------------------------------------------------------------------------
# momentum space


def quad_momentum_moment(state, f=0.0, rel_tol: float = 1e-11,
                         max_evals: int = 20000) -> QuadratureResult:
    """Momentum moment as an integral over t = (1-y²)/(1+y²), y = ηp/Z.

    In that variable <p^alpha> = (Z/η)^alpha ∫ w(t) (1-t)^(alpha/2) (1+t)^(1-alpha/2) C̃_k(t)² dt
    with C̃ the orthonormal Gegenbauer polynomial of index ν = L+1 and
    w(t) = (1-t²)^(ν-1/2).  The substitution t = cos θ removes the endpoint
    singularities.
    """
    n, l, D, Z = state.n, state.l, state.D, float(state.Z)
    alpha = _check_selector(f)
    if alpha is not None and not -D - 2 * l < alpha < D + 2 * l + 2:
        raise ValueError(f"integral diverges for alpha={alpha}")
    eta = n + (D - 3) / 2
    nu = l + (D - 1) / 2
    k = n - l - 1
    a = alpha if alpha is not None else 0.0
    log_h = (math.log(math.pi) + (1 - 2 * nu) * math.log(2) + math.lgamma(k + 2 * nu)
             - math.lgamma(k + 1) - math.log(k + nu) - 2 * math.lgamma(nu))

    def integrand(theta):
        with np.errstate(divide="ignore", invalid="ignore"):
            half_s = np.sin(0.5 * theta)
            half_c = np.cos(0.5 * theta)
            poly = sp.eval_gegenbauer(k, nu, np.cos(theta))
            lw = (2 * nu * np.log(np.sin(theta)) + a * np.log(half_s) + (2 - a) * np.log(half_c)
                  + math.log(2.0) + 2 * np.log(np.abs(poly)) - log_h)
            w = np.exp(lw)
        if alpha is None:
            w = w * (math.log(Z / eta) + np.log(half_s / half_c))
        return w

    width = 1.0 / math.sqrt(2 * nu + 1)
    pts = {0.0, math.pi, math.pi / 2}
    pts.update(math.pi / 2 + m * width for m in (-16, -8, -4, -2, -1, 1, 2, 4, 8, 16))
    if 0 < k <= _ZERO_NODE_LIMIT:
        pts.update(float(np.arccos(z)) for z in sp.roots_gegenbauer(k, nu)[0])
    pts = sorted(p for p in pts if 0.0 <= p <= math.pi)
    res = integrate(integrand, pts, rel_tol=rel_tol, max_evals=max_evals)
    if alpha:
        s = (Z / eta) ** alpha
        res = QuadratureResult(res.value * s, res.error_estimate * s, res.node_count, res.converged)
    return res


# --------------------------------------------------------------------------
# exact replays

_MP_DPS = 50


def _as_fraction(x, what):
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float) and x.is_integer():
        return Fraction(int(x))
    if isinstance(x, float) and (2 * x).is_integer():
        return Fraction(x)
    raise TypeError(f"{what}={x!r} is not an exact rational; pass an int or Fraction")


def _rising(a: Fraction, j: int) -> Fraction:
    out = Fraction(1)
    for i in range(j):
        out *= a + i
    return out


def _gamma_ratio(a: Fraction, b: Fraction) -> Fraction:
    """Γ(a)/Γ(b) for a - b an integer."""
    d = a - b
    if d.denominator != 1:
        raise ValueError("arguments do not differ by an integer")
    d = int(d)
    return _rising(b, d) if d >= 0 else 1 / _rising(a, -d)


def _terminating_sum(num, den, k) -> Fraction:
    total = Fraction(0)
    term = Fraction(1)
    for j in range(k + 1):
        total += term
        r = Fraction(1, j + 1)
        for a in num:
            r *= a + j
        for b in den:
            r /= b + j
        term *= r
    return total


def _mp_gamma_ratio(num, den):
    with mpmath.workdps(_MP_DPS):
        v = mpmath.mpf(0)
        for a in num:
            v += mpmath.loggamma(mpmath.mpf(a.numerator) / a.denominator)
        for b in den:
            v -= mpmath.loggamma(mpmath.mpf(b.numerator) / b.denominator)
        return mpmath.exp(v)


def _replay_position(state, alpha: Fraction):
    n, l, D = state.n, state.l, state.D
    Z = _as_fraction(state.Z, "Z")
    eta = n + _half(D)
    L = l + _half(D)
    k = n - l - 1
    series = _terminating_sum((Fraction(-k), -alpha - 1, alpha + 2), (2 * L + 2, Fraction(1)), k)
    if alpha.denominator == 1:
        a = int(alpha)
        return Fraction(eta) ** (a - 1) / (Fraction(2) ** (a + 1) * Z ** a) \
            * _gamma_ratio(2 * L + a + 3, 2 * L + 2) * series
    with mpmath.workdps(_MP_DPS):
        a = mpmath.mpf(alpha.numerator) / alpha.denominator
        pref = (mpmath.mpf(eta.numerator) / eta.denominator) ** (a - 1) \
            / (2 ** (a + 1) * (mpmath.mpf(Z.numerator) / Z.denominator) ** a)
        g = _mp_gamma_ratio([2 * L + alpha + 3], [2 * L + 2])
        return pref * g * mpmath.mpf(series.numerator) / series.denominator


def _replay_momentum(state, alpha: Fraction):
    n, l, D = state.n, state.l, state.D
    Z = _as_fraction(state.Z, "Z")
    eta = n + _half(D)
    nu = l + Fraction(D - 1, 2)
    k = n - l - 1
    up = nu + (alpha + 1) / 2
    dn = nu + (3 - alpha) / 2
    series = _terminating_sum((Fraction(-k), k + 2 * nu, nu, up, dn),
                              (2 * nu, nu + Fraction(1, 2), nu + 1, nu + Fraction(3, 2)), k)
    # duplication formula: 2^(1-2ν) √π / (Γ(ν+1/2) Γ(ν+1)) = 2 / Γ(2ν+1)
    base = 2 * (k + nu) * _gamma_ratio(k + 2 * nu, 2 * nu + 1) / math.factorial(k) * series
    if alpha.denominator == 1 and int(alpha) % 2 == 0:
        ratio = (_gamma_ratio(up, nu + Fraction(1, 2)) * _gamma_ratio(dn, nu + Fraction(3, 2)))
        return (Z / eta) ** int(alpha) * ratio * base
    with mpmath.workdps(_MP_DPS):
        a = mpmath.mpf(alpha.numerator) / alpha.denominator
        zr = mpmath.mpf(Z.numerator) / Z.denominator / (mpmath.mpf(eta.numerator) / eta.denominator)
        g = _mp_gamma_ratio([up, dn], [nu + Fraction(1, 2), nu + Fraction(3, 2)])
        return zr ** a * g * mpmath.mpf(base.numerator) / base.denominator


def _d_values(k: int, nu: Fraction, alpha: Fraction) -> list[Fraction]:
    out = []
    for j in range(k + 1):
        v = nu / (nu + j)
        v *= _rising(nu + (alpha + 1) / 2, j) * _rising(nu + (3 - alpha) / 2, j)
        v /= _rising(nu + Fraction(1, 2), j) * _rising(nu + Fraction(3, 2), j)
        out.append(v)
    return out


def replay_fk_direct(k: int, nu, alpha) -> Fraction:
    nu, alpha = _as_fraction(nu, "nu"), _as_fraction(alpha, "alpha")
    d = _d_values(k, nu, alpha)
    s = sum((-1) ** j * comb(k, j) * _rising(2 * nu + j, k) * d[j] for j in range(k + 1))
    return s / _rising(2 * nu, k)


def replay_fk_prop1(k: int, nu, alpha) -> Fraction:
    nu, alpha = _as_fraction(nu, "nu"), _as_fraction(alpha, "alpha")
    d = _d_values(k, nu, alpha)

    def nabla(m):
        return sum((-1) ** j * comb(m, j) * d[k - j] for j in range(m + 1))

    s = sum(comb(k, i) * nabla(i) / (math.factorial(i) * _rising(2 * nu, k - i))
            for i in range(k + 1))
    return (-1) ** k * math.factorial(k) * s


def rational_replay(expression: str, state=None, alpha=0, *, k: int | None = None, nu=None):
    """Re-evaluate a formula in exact arithmetic.

    ``expression`` is one of ``"position"``, ``"momentum"`` (moments of
    ``state``), ``"fk_direct"`` or ``"fk_prop1"`` (the f_k sums, using ``k``
    and ``nu``).  The result is a :class:`~fractions.Fraction` whenever the
    value is rational.  For moments whose gamma prefactor is irrational
    (non-integer alpha, or odd alpha in momentum space) the hypergeometric sum
    is still exact and the prefactor is taken to 50 digits, giving an
    ``mpmath.mpf``.
    """
    a = _as_fraction(alpha, "alpha")
    if expression == "position":
        if not a > -state.D - 2 * state.l:
            raise ValueError("alpha outside the convergence range")
        return _replay_position(state, a)
    if expression == "momentum":
        if not -state.D - 2 * state.l < a < state.D + 2 * state.l + 2:
            raise ValueError("alpha outside the convergence range")
        return _replay_momentum(state, a)
    if expression == "fk_direct":
        return replay_fk_direct(k, nu, a)
    if expression == "fk_prop1":
        return replay_fk_prop1(k, nu, a)
    raise ValueError(f"unknown expression {expression!r}")
