"""Heisenberg-like and logarithmic uncertainty relations of hydrogenic states."""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .hydrogenic import (
    Evaluation,
    HydrogenicState,
    Method,
    SingularFormulaError,
    derive_params,
    log_momentum_expectation,
    log_position_expectation,
    momentum_expectation,
    momentum_validity,
    position_expectation,
    position_validity,
)
from .specfun import HypSpec, digamma, hyp_terminating, log_gamma


class BoundKind(str, enum.Enum):
    KENNARD = "kennard"
    CENTRAL_REFINED = "centralRefined"
    LOG_GENERAL = "logGeneral"
    LOG_REFINED = "logRefined"


@dataclass(frozen=True)
class UncertaintyRecord:
    product_value: float
    bound: float
    margin: float
    bound_kind: BoundKind
    satisfied: bool

    @classmethod
    def build(cls, value: float, bound: float, kind: BoundKind) -> "UncertaintyRecord":
        margin = value - bound
        ok = margin >= -1e-12 * max(1.0, abs(bound))
        return cls(value, bound, margin, kind, ok)


# --------------------------------------------------------------------------
# Heisenberg-like products


def heisenberg_product_exact(state: HydrogenicState, alpha: float, beta: float) -> Evaluation:
    """<r^α><p^β> as the product of the two exact moments."""
    va = position_validity(state, alpha)
    vb = momentum_validity(state, beta)
    v = position_expectation(state, alpha).value * momentum_expectation(state, beta).value
    return Evaluation(v, Method.EXACT, f"{va}; beta: {vb}")


def r2p2_exact(state: HydrogenicState, exact: bool = False):
    """<r²><p²> = (5η² + 1 - 3L(L+1))/2, independent of Z."""
    p = derive_params(state, exact=exact)
    v = (5 * p.eta ** 2 + 1 - 3 * p.grand_l * (p.grand_l + 1)) / 2
    return v if exact else float(v)


def r2p2_dimension_form(state: HydrogenicState, exact: bool = False):
    """(D²/4){1 + (10n-6l-9)/D + [10n(n-3) - 6l(l-2) + 20]/D²}."""
    n, l = state.n, state.l
    D = Fraction(state.D) if exact else float(state.D)
    v = D * D / 4 * (1 + (10 * n - 6 * l - 9) / D + (10 * n * (n - 3) - 6 * l * (l - 2) + 20) / (D * D))
    return v


def heisenberg_product_combined(state: HydrogenicState, alpha: float, beta: float) -> float:
    """One-line gamma/3F2/5F4 expression for <r^α><p^β>, evaluated as written.

    Only a cross-check.  It differs from the product of the two audited
    moments by the factor Z^α 2^(α+1) / (2n+D-3) = (2Z)^α / η; see
    :func:`combined_product_discrepancy`.
    """
    n, l, D, Z = state.n, state.l, state.D, state.Z
    eta = derive_params(state).eta
    log_g = (log_gamma((D - beta + 2) / 2 + l) + log_gamma((D + beta) / 2 + l)
             + log_gamma(D + 2 * l + alpha) + log_gamma(D + l + n - 2)
             - 2 * log_gamma(D / 2 + l) - log_gamma(D + 2 * l - 1) - log_gamma(D + 2 * l + 1)
             - log_gamma(n - l))
    pref = 2 * Z ** beta * eta ** (alpha - beta - 1) * math.exp(log_g)
    f32 = hyp_terminating(HypSpec((l - n + 1, -alpha - 1, alpha + 2), (1, D + 2 * l - 1)))
    f54 = hyp_terminating(HypSpec(
        ((D - 1) / 2 + l, (D - beta + 2) / 2 + l, (D + beta) / 2 + l, l - n + 1, D + l + n - 2),
        (D / 2 + l, (D + 1) / 2 + l, D / 2 + l + 1, D + 2 * l - 1)))
    return pref * f32 * f54


def combined_product_discrepancy(state: HydrogenicState, alpha: float) -> float:
    """Ratio of :func:`heisenberg_product_combined` to the audited product."""
    return state.Z ** alpha * 2 ** (alpha + 1) / (2 * state.n + state.D - 3)


def heisenberg_product_largeD(state: HydrogenicState, alpha: float, beta: float,
                              literal_circular: bool = False) -> Evaluation:
    """Large-D product (D²/4Z)^α (D/2Z)^(-β) times three first-order factors.

    For circular states the position factors collapse to
    1 + (α+1)(α+4n-6)/(2D), and the momentum factor to 1 + β(β-2)/(2D).
    ``literal_circular=True`` uses (α+1)(4n-6) in place of (α+1)(α+4n-6);
    that variant disagrees with the general product at l = n-1 whenever α != 0.
    """
    va = position_validity(state, alpha)
    vb = momentum_validity(state, beta)
    n, l, D, Z = state.n, state.l, state.D, state.Z
    lead = (D * D / (4 * Z)) ** alpha * (D / (2 * Z)) ** (-beta)
    if state.is_circular:
        if literal_circular:
            warnings.warn("circular product with coefficient (alpha+1)(4n-6) is inconsistent "
                          "with the general product at l = n-1", stacklevel=2)
            c = (alpha + 1) * (4 * n - 6)
        else:
            c = (alpha + 1) * (alpha + 4 * n - 6)
        v = lead * (1 + c / (2 * D)) * (1 + beta * (beta - 2) / (2 * D))
    else:
        v = (lead * (1 + (alpha + 1) * (alpha + 4 * l - 2) / (2 * D))
             * (1 + (alpha + 1) * (alpha + 2) * (n - l - 1) / D)
             * (1 + (beta - 2) * beta * (2 * n - 2 * l - 1) / (2 * D)))
    return Evaluation(v, Method.LARGE_D, f"{va}; beta: {vb}; D -> infinity")


def heisenberg_bounds(state: HydrogenicState) -> dict[BoundKind, UncertaintyRecord]:
    """<r²><p²> against D²/4 and against (D/2 + l)²."""
    v = heisenberg_product_exact(state, 2, 2).value
    D, l = state.D, state.l
    return {
        BoundKind.KENNARD: UncertaintyRecord.build(v, D * D / 4, BoundKind.KENNARD),
        BoundKind.CENTRAL_REFINED: UncertaintyRecord.build(v, (D / 2 + l) ** 2, BoundKind.CENTRAL_REFINED),
    }


def check_heisenberg_bound(state: HydrogenicState) -> UncertaintyRecord:
    """The refined (central potential) Heisenberg record; see :func:`heisenberg_bounds` for both."""
    return heisenberg_bounds(state)[BoundKind.CENTRAL_REFINED]


# --------------------------------------------------------------------------
# logarithmic relations


def log_bound(state: HydrogenicState, kind: BoundKind = BoundKind.LOG_REFINED) -> float:
    if kind is BoundKind.LOG_GENERAL:
        return digamma(state.D / 4) + math.log(2)
    if kind is BoundKind.LOG_REFINED:
        return digamma((state.D + 2 * state.l) / 4) + math.log(2)
    raise ValueError(f"{kind} is not a logarithmic bound")


def log_sum_exact(state: HydrogenicState) -> float:
    return log_position_expectation(state).value + log_momentum_expectation(state).value


def log_uncertainty_sum(state: HydrogenicState,
                        kind: BoundKind = BoundKind.LOG_REFINED) -> UncertaintyRecord:
    """<log r> + <log p> against ψ(D/4) + log 2 or ψ((D+2l)/4) + log 2."""
    return UncertaintyRecord.build(log_sum_exact(state), log_bound(state, kind), kind)


def log_sum_closed(state: HydrogenicState, literal: bool = False) -> float:
    """Single-expression form of <log r> + <log p>.

    The digamma argument is n+l+D-2, which is what the two moments add up to.
    ``literal=True`` uses n+1+D-2 instead; the two agree only when l = 1.
    """
    n, l, D = state.n, state.l, state.D
    m = 2 * n + D - 3
    psi_arg = n + 1 + D - 2 if literal else n + l + D - 2
    if m == 1:
        raise SingularFormulaError("(2n+D-3)^2 - 1 vanishes (n=1, D=2)")
    return ((2 * n - 2 * l - 1) / m + m * (2 * l + D - 2) / (m * m - 1)
            - math.log(2) - 1 + digamma(psi_arg))


def log_uncertainty_sum_largeD(state: HydrogenicState) -> Evaluation:
    """log(D/2) + (n+l-5/2)/D; for circular states this is log(D/2) + (2n-7/2)/D."""
    n, l, D = state.n, state.l, state.D
    return Evaluation(math.log(D / 2) + (n + l - 2.5) / D, Method.LARGE_D, "D -> infinity")
