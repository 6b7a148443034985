"""Special functions used by every other module.

Everything here works on plain floats; the terminating hypergeometric sums also
have an exact :class:`fractions.Fraction` path.  Gamma-function ratios are always
formed from ``log_gamma`` differences so nothing overflows at D ~ 1e4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import numpy as np
from scipy import special as _sp

from .quadrature import integrate


class DomainError(ValueError):
    """An argument lies outside the domain of the function."""


class NonTerminatingError(ValueError):
    """A hypergeometric specification does not reduce to a finite sum."""


class DivergenceError(ArithmeticError):
    """A series failed to converge."""


# --------------------------------------------------------------------------
# log-magnitude numbers


@dataclass(frozen=True)
class LogSigned:
    """A real number stored as ``sign * exp(log_abs)``."""

    log_abs: float
    sign: int

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or +1")

    @classmethod
    def from_float(cls, x: float) -> "LogSigned":
        if x == 0:
            return cls(-math.inf, 0)
        return cls(math.log(abs(x)), 1 if x > 0 else -1)

    @property
    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_abs)

    def __float__(self) -> float:
        return self.value

    def __mul__(self, other: "LogSigned") -> "LogSigned":
        if self.sign == 0 or other.sign == 0:
            return ZERO
        return LogSigned(self.log_abs + other.log_abs, self.sign * other.sign)

    def __truediv__(self, other: "LogSigned") -> "LogSigned":
        if other.sign == 0:
            raise ZeroDivisionError("division by a zero LogSigned")
        if self.sign == 0:
            return ZERO
        return LogSigned(self.log_abs - other.log_abs, self.sign * other.sign)

    def __pow__(self, p: float) -> "LogSigned":
        if self.sign == 0:
            if p <= 0:
                raise ZeroDivisionError("0 to a non-positive power")
            return ZERO
        if self.sign < 0 and p != int(p):
            raise DomainError("non-integer power of a negative number")
        sign = self.sign if int(p) % 2 else 1
        return LogSigned(self.log_abs * p, sign)


ZERO = LogSigned(-math.inf, 0)
ONE = LogSigned(0.0, 1)


# --------------------------------------------------------------------------
# gamma family


def log_gamma(x: float) -> float:
    """ln Γ(x) for x > 0."""
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def log_gamma_ratio(num: Sequence[float], den: Sequence[float]) -> float:
    """ln[Π Γ(num) / Π Γ(den)] for positive arguments."""
    return math.fsum([log_gamma(a) for a in num] + [-log_gamma(b) for b in den])


def digamma(x: float) -> float:
    """ψ(x) = Γ'(x)/Γ(x) for x > 0."""
    if not x > 0:
        raise DomainError(f"digamma requires x > 0, got {x!r}")
    return float(_sp.digamma(x))


def _is_nonpositive_int(a) -> bool:
    return a <= 0 and a == int(a)


def pochhammer(a: float, j: int) -> LogSigned:
    """Rising factorial (a)_j = a(a+1)...(a+j-1) as a :class:`LogSigned`."""
    if j < 0 or j != int(j):
        raise DomainError("pochhammer needs a non-negative integer j")
    j = int(j)
    if j == 0:
        return ONE
    if _is_nonpositive_int(a) and -a < j:
        return ZERO
    if a > 0:
        return LogSigned(log_gamma(a + j) - log_gamma(a), 1)
    # some factors negative: count them, magnitudes through the product
    log_abs = 0.0
    sign = 1
    terms = []
    for i in range(j):
        f = a + i
        if f < 0:
            sign = -sign
        terms.append(math.log(abs(f)))
    log_abs = math.fsum(terms)
    return LogSigned(log_abs, sign)


def pochhammer_exact(a, j: int) -> Fraction:
    a = Fraction(a)
    out = Fraction(1)
    for i in range(j):
        out *= a + i
    return out


# --------------------------------------------------------------------------
# terminating generalized hypergeometric series


@dataclass(frozen=True)
class HypSpec:
    numerator: tuple
    denominator: tuple
    argument: float = 1.0
    _k: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(self.numerator))
        object.__setattr__(self, "denominator", tuple(self.denominator))
        cands = [-int(a) for a in self.numerator if _is_nonpositive_int(a)]
        if not cands:
            raise NonTerminatingError(
                f"no numerator parameter of {self.numerator} is a non-positive integer; "
                "the series does not terminate")
        k = min(cands)
        bad = [b for b in self.denominator if _is_nonpositive_int(b) and -b < k]
        if bad:
            raise NonTerminatingError(
                f"denominator parameter(s) {bad} vanish before the series terminates "
                f"after {k + 1} terms")
        object.__setattr__(self, "_k", k)

    @property
    def order(self) -> int:
        """Index of the last non-zero term."""
        return self._k


def hyp_terms(spec: HypSpec) -> list[float]:
    """Float terms of the series, built by incremental term ratios."""
    terms = [1.0]
    t = 1.0
    z = float(spec.argument)
    for j in range(spec.order):
        num = 1.0
        for a in spec.numerator:
            num *= a + j
        den = float(j + 1)
        for b in spec.denominator:
            den *= b + j
        t = t * num / den * z
        terms.append(t)
    return terms


def hyp_terminating_exact(spec: HypSpec) -> Fraction:
    """Exact rational value of a terminating series with rational parameters.

    Evaluated in nested (Horner) form with integer numerators/denominators, so
    only a single gcd is taken at the end.
    """
    num_p = [Fraction(a) for a in spec.numerator]
    den_p = [Fraction(b) for b in spec.denominator]
    z = Fraction(spec.argument)
    p, q = 1, 1
    for j in range(spec.order - 1, -1, -1):
        n_j = z.numerator
        d_j = z.denominator * (j + 1)
        for a in num_p:
            n_j *= a.numerator + j * a.denominator
            d_j *= a.denominator
        for b in den_p:
            d_j *= b.numerator + j * b.denominator
            n_j *= b.denominator
        # value <- 1 + (n_j/d_j) * value
        p, q = d_j * q + n_j * p, d_j * q
    return Fraction(p, q)


def hyp_terminating(spec: HypSpec, max_condition: float = 1e3, exact: bool = False):
    """Sum a terminating pFq.

    With ``exact=True`` the exact rational value is returned (all parameters
    must then be rational; floats are taken at their exact binary value).

    Floating terms are accumulated with an error-free summation
    (:func:`math.fsum`).  When the terms cancel badly (sum of magnitudes more
    than ``max_condition`` times the result) or overflow, the sum is redone
    exactly in rational arithmetic; every finite float is a rational number.
    """
    if exact:
        return hyp_terminating_exact(spec)
    terms = hyp_terms(spec)
    if all(math.isfinite(t) for t in terms):
        s = math.fsum(terms)
        mag = math.fsum(abs(t) for t in terms)
        if s != 0 and mag <= max_condition * abs(s):
            return s
    return float(hyp_terminating_exact(spec))


def _log_abs_fraction(x: Fraction) -> float:
    # math.log accepts arbitrarily large ints
    return math.log(abs(x.numerator)) - math.log(x.denominator)


def hyp_terminating_signed(spec: HypSpec, max_condition: float = 1e3) -> LogSigned:
    """Terminating pFq as a :class:`LogSigned`, usable when the value leaves float range."""
    terms = hyp_terms(spec)
    if all(math.isfinite(t) for t in terms):
        s = math.fsum(terms)
        mag = math.fsum(abs(t) for t in terms)
        if s != 0 and mag <= max_condition * abs(s) and abs(s) > 1e-290:
            return LogSigned.from_float(s)
    exact = hyp_terminating_exact(spec)
    if exact == 0:
        return ZERO
    return LogSigned(_log_abs_fraction(exact), 1 if exact > 0 else -1)


# --------------------------------------------------------------------------
# Gauss 2F1 and Appell F1


def _series_2f1(a, b, c, z, tol=1e-17, max_terms=20000):
    terms = [1.0]
    t = 1.0
    running = 1.0
    # past this index the terms shrink monotonically by about |z| per step
    settle = abs(a) + abs(b) + abs(c) + 2
    for j in range(max_terms):
        t *= (a + j) * (b + j) / ((c + j) * (j + 1)) * z
        terms.append(t)
        running += t
        if t == 0.0 or (j > settle and abs(t) <= tol * abs(running)):
            return math.fsum(terms)
    raise DivergenceError(f"2F1 series did not converge for z={z}")


def gauss_2f1(a: float, b: float, c: float, z: float) -> float:
    """Gauss hypergeometric function for z <= 0 (any z when terminating)."""
    if _is_nonpositive_int(c):
        raise DomainError(f"c = {c} is a non-positive integer")
    if z == 0:
        return 1.0
    for p, q in ((a, b), (b, a)):
        if _is_nonpositive_int(p):
            return hyp_terminating(HypSpec((p, q), (c,), z))
    if z > 0:
        raise DomainError("non-terminating 2F1 is only supported for z <= 0")
    if z >= -0.5:
        return _series_2f1(a, b, c, z)
    # Pfaff: 2F1(a,b;c;z) = (1-z)^(-a) 2F1(a, c-b; c; z/(z-1)), with w in (1/3, 1)
    w = z / (z - 1.0)
    pref = (1.0 - z) ** (-a)
    b2 = c - b
    if _is_nonpositive_int(b2):
        return pref * hyp_terminating(HypSpec((b2, a), (c,), w))
    if w <= 0.5:
        return pref * _series_2f1(a, b2, c, w)
    return pref * _2f1_near_one(a, b2, c, w)


def _2f1_near_one(a, b, c, w):
    """2F1(a,b;c;w) for 0.5 < w < 1 via the w -> 1-w connection formula."""
    s = c - a - b
    if abs(s - round(s)) < 1e-3:
        # logarithmic case, or close enough that the two branches cancel
        # catastrophically; scipy handles it internally
        return float(_sp.hyp2f1(a, b, c, w))
    one = 1.0 - w
    total = 0.0
    # a pole in a denominator gamma means 1/Γ = 0 and the branch drops out
    if not (_is_nonpositive_int(c - a) or _is_nonpositive_int(c - b)):
        g1 = math.exp(log_gamma_signed(c) + log_gamma_signed(s)
                      - log_gamma_signed(c - a) - log_gamma_signed(c - b)) \
            * _gamma_sign(c, s, c - a, c - b)
        total += g1 * _series_2f1(a, b, 1.0 - s, one)
    if not (_is_nonpositive_int(a) or _is_nonpositive_int(b)):
        g2 = math.exp(log_gamma_signed(c) + log_gamma_signed(-s)
                      - log_gamma_signed(a) - log_gamma_signed(b)) \
            * _gamma_sign(c, -s, a, b)
        total += g2 * one ** s * _series_2f1(c - a, c - b, 1.0 + s, one)
    return total


def log_gamma_signed(x: float) -> float:
    """ln|Γ(x)| for any non-pole real x."""
    if _is_nonpositive_int(x):
        raise DomainError(f"Γ has a pole at {x}")
    return math.lgamma(x)


def _gamma_sign(n1, n2, d1, d2) -> int:
    s = 1
    for x in (n1, n2, d1, d2):
        if x < 0 and math.floor(x) % 2 == 1:
            s = -s
    return s


def appell_f1(a: float, b: float, bp: float, c: float, x: float, y: float,
              tol: float = 1e-12) -> float:
    """Appell F1(a; b, b'; c; x, y).

    Inside the unit bidisk (with a safety margin) the double series is summed row
    by row; otherwise, and in particular at the x -> 1 boundary, the Euler-type
    integral representation is integrated numerically (requires c > a > 0 and
    x, y < 1).
    """
    if x == 0 and y == 0:
        return 1.0
    if max(abs(x), abs(y)) < 0.95:
        return _appell_series(a, b, bp, c, x, y, tol)
    return appell_f1_integral(a, b, bp, c, x, y)


def _appell_series(a, b, bp, c, x, y, tol):
    # row m: (a)_m (b)_m / ((c)_m m!) x^m  *  sum_n (a+m)_n (b')_n / ((c+m)_n n!) y^n
    rows = []
    row_coef = 1.0
    m = 0
    while True:
        inner = []
        t = 1.0
        inner.append(t)
        for n in range(100000):
            t *= (a + m + n) * (bp + n) / ((c + m + n) * (n + 1)) * y
            inner.append(t)
            if t == 0.0 or (n > 4 and abs(t) < 1e-18 * abs(inner[0])):
                break
        else:
            raise DivergenceError("Appell F1 inner series did not contract")
        rows.append(row_coef * math.fsum(inner))
        if row_coef == 0.0:
            break
        if m > 4 and abs(rows[-1]) <= tol * 1e-3 * abs(math.fsum(rows)):
            break
        row_coef *= (a + m) * (b + m) / ((c + m) * (m + 1)) * x
        m += 1
        if m > 100000:
            raise DivergenceError("Appell F1 outer series did not contract")
    return math.fsum(rows)


def appell_f1_integral(a, b, bp, c, x, y) -> float:
    """F1 via Γ(c)/(Γ(a)Γ(c-a)) ∫_0^1 t^(a-1) (1-t)^(c-a-1) (1-xt)^(-b) (1-yt)^(-b') dt."""
    if not (c > a > 0):
        raise DomainError("integral representation needs c > a > 0")
    if x > 1 or y > 1:
        raise DomainError("integral representation needs x, y <= 1")
    # t = sin^2(θ) removes the endpoint algebraic singularities
    def f(th):
        s2 = np.sin(th) ** 2
        with np.errstate(divide="ignore", invalid="ignore"):
            logv = ((2 * a - 1) * np.log(np.sin(th)) + (2 * (c - a) - 1) * np.log(np.cos(th))
                    - b * np.log1p(-x * s2) - bp * np.log1p(-y * s2))
        return 2.0 * np.exp(logv)
    res = integrate(f, np.linspace(0.0, math.pi / 2, 9), rel_tol=1e-13, max_evals=200000)
    if not res.converged:
        raise DivergenceError(f"Appell F1 integral failed to converge ({res})")
    log_norm = log_gamma(c) - log_gamma(a) - log_gamma(c - a)
    return res.value * math.exp(log_norm)


# --------------------------------------------------------------------------
# orthogonal polynomials


def laguerre(n: int, beta: float, x):
    """Generalized Laguerre polynomial L_n^(beta)(x) by three-term recurrence."""
    x = np.asarray(x, dtype=float)
    p0 = np.ones_like(x)
    if n == 0:
        return p0 if p0.ndim else float(p0)
    p1 = 1.0 + beta - x
    for m in range(1, n):
        p0, p1 = p1, ((2 * m + 1 + beta - x) * p1 - (m + beta) * p0) / (m + 1)
    return p1 if p1.ndim else float(p1)


def laguerre_orthonormal(n: int, beta: float, x):
    """Laguerre polynomial orthonormal w.r.t. x^beta e^(-x) on [0, inf)."""
    scale = math.exp(0.5 * (log_gamma(n + 1) - log_gamma(n + beta + 1)))
    return scale * laguerre(n, beta, x)


def gegenbauer(n: int, lam: float, x):
    """Gegenbauer polynomial C_n^(lam)(x) by three-term recurrence."""
    x = np.asarray(x, dtype=float)
    p0 = np.ones_like(x)
    if n == 0:
        return p0 if p0.ndim else float(p0)
    p1 = 2.0 * lam * x
    for m in range(1, n):
        p0, p1 = p1, (2 * (m + lam) * x * p1 - (m + 2 * lam - 1) * p0) / (m + 1)
    return p1 if p1.ndim else float(p1)


def log_gegenbauer_norm(n: int, lam: float) -> float:
    """ln h_n with h_n = ∫ (1-t^2)^(lam-1/2) [C_n^(lam)]^2 dt."""
    return (math.log(math.pi) + (1 - 2 * lam) * math.log(2.0) + log_gamma(n + 2 * lam)
            - log_gamma(n + 1) - math.log(n + lam) - 2 * log_gamma(lam))


def gegenbauer_orthonormal(n: int, lam: float, x):
    """Gegenbauer polynomial orthonormal w.r.t. (1-t^2)^(lam-1/2) on [-1, 1]."""
    return math.exp(-0.5 * log_gegenbauer_norm(n, lam)) * gegenbauer(n, lam, x)


# --------------------------------------------------------------------------


def log_surface_area(D: int) -> float:
    if D < 1:
        raise DomainError("dimension must be >= 1")
    return math.log(2.0) + 0.5 * D * math.log(math.pi) - log_gamma(0.5 * D)


def surface_area(D: int) -> float:
    """Area of the unit sphere S^(D-1) in R^D, 2 π^(D/2) / Γ(D/2)."""
    return math.exp(log_surface_area(D))


def is_rational(x) -> bool:
    return isinstance(x, (int, Rational))
