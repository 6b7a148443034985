import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hydromoments import HydrogenicState as H
from hydromoments import entropy as ent
from hydromoments.specfun import DomainError

S1 = H(1, 0, 3)
SWEEP = [H(n, 0, D, Z) for n in (1, 2, 3) for D in (3, 5, 10, 20) for Z in (1, 2)]


def test_shannon_ground_state():
    assert ent.entropy_quadrature(S1).value == pytest.approx(3 + math.log(math.pi), abs=1e-10)


def test_renyi_two_ground_state():
    assert ent.entropy_quadrature(S1, "renyi", 2).value == pytest.approx(math.log(8 * math.pi), abs=1e-10)


def test_ground_state_shannon_matches_closed_form_in_any_dimension():
    # rho = (2/eta)^D / Gamma(D) / Omega e^{-2r/eta}, so S = log(Omega Gamma(D) (eta/2)^D) + D
    for D in (2, 5, 12, 40):
        eta = (D - 1) / 2
        lo = math.log(2) + D / 2 * math.log(math.pi) - math.lgamma(D / 2)
        expected = lo + math.lgamma(D) + D * math.log(eta / 2) + D
        assert ent.entropy_quadrature(H(1, 0, D)).value == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize("space,sign", [("position", -1), ("momentum", 1)])
@pytest.mark.parametrize("kind,q", [("shannon", None), ("renyi", 2), ("renyi", 0.5)])
def test_z_scaling(space, sign, kind, q):
    s1 = ent.entropy_quadrature(H(2, 0, 5), kind, q, space).value
    s3 = ent.entropy_quadrature(H(2, 0, 5, 3), kind, q, space).value
    assert s3 == pytest.approx(s1 + sign * 5 * math.log(3), abs=1e-9)


def test_l_positive_entropy_not_applicable():
    assert ent.entropy_quadrature(H(2, 1, 3)) is None
    rep = ent.bound_shannon_upper(H(2, 1, 3), 2)
    assert rep.entropy is None and rep.satisfied is None and math.isfinite(rep.bound_value)


@pytest.mark.parametrize("q", [1, 0, -1])
def test_order_validation(q):
    with pytest.raises(DomainError):
        ent.entropy_quadrature(S1, "renyi", q)


@pytest.mark.parametrize("state", SWEEP[::3])
@pytest.mark.parametrize("q", [0.5, 2, 3])
def test_tsallis_renyi_identity(state, q):
    r = ent.entropy_quadrature(state, "renyi", q).value
    t = ent.entropy_quadrature(state, "tsallis", q).value
    assert t == pytest.approx(-math.expm1((1 - q) * r) / (q - 1), rel=1e-10, abs=1e-12)
    if q > 1:
        assert t <= 1 / (q - 1)


def test_large_dimension_power_functional_does_not_underflow():
    v = ent.entropy_quadrature(H(2, 0, 60), "renyi", 3)
    assert math.isfinite(v.value) and math.isfinite(v.log_w)


def test_a0_values():
    assert ent.A0(1, 3) == pytest.approx(3 + math.log(8 * math.pi / 27), rel=1e-14)
    assert ent.A0(2, 3) == pytest.approx(2.6088972, abs=1e-7)


def test_shannon_bound_example():
    rep = ent.bound_shannon_upper(S1, 2)
    assert rep.bound_value == pytest.approx(ent.A0(2, 3) + 1.5 * math.log(3), rel=1e-14)
    assert rep.bound_value == pytest.approx(4.2568156, abs=1e-7)
    assert rep.satisfied and rep.margin > 0.1


def test_shannon_bound_alpha_one_is_attained_by_ground_state():
    rep = ent.bound_shannon_upper(S1, 1)
    assert abs(rep.margin) <= 1e-9


def test_shannon_bound_domain():
    with pytest.raises(DomainError):
        ent.A0(0, 3)


@given(st.floats(0.1, 5), st.integers(2, 200), st.floats(0.1, 100), st.floats(0.1, 100))
def test_shannon_bound_monotone_in_moment(alpha, D, m1, m2):
    lo, hi = sorted((m1, m2))
    assert ent.A0(alpha, D) + D / alpha * math.log(lo) <= ent.A0(alpha, D) + D / alpha * math.log(hi)


def test_l1_example():
    # compact extremal (1 - r^2)_+ in D = 3: W_2 = 15/(14 pi), <r^2> = 3/7
    exact = 15 / (14 * math.pi) * (3 / 7) ** 1.5
    assert ent.L1(2, 2, 3) == pytest.approx(exact, rel=1e-13)
    assert ent.L1(2, 2, 3) == pytest.approx(0.0956856, abs=1e-6)


@settings(max_examples=50)
@given(st.floats(1.05, 5), st.floats(0.5, 4), st.integers(2, 50))
def test_l1_matches_high_precision(q, alpha, D):
    q, alpha = mpmath.mpf(q), mpmath.mpf(alpha)
    s = D * (q - 1) + alpha * q
    inner = (mpmath.log(alpha) + mpmath.loggamma(mpmath.mpf(D) / 2) + D / alpha * mpmath.log(D * (q - 1) / s)
             - mpmath.log(2) - D / 2 * mpmath.log(mpmath.pi) - mpmath.log(mpmath.beta(q / (q - 1), D / alpha)))
    ref = mpmath.log(q * alpha / s) + (q - 1) * inner
    assert ent.log_L1(float(q), float(alpha), D) == pytest.approx(float(ref), rel=1e-11, abs=1e-11)


def test_renyi_bound_example():
    rep = ent.bound_renyi_upper(S1, 2, 2)
    assert rep.bound_value == pytest.approx(-math.log(ent.L1(2, 2, 3) * 3 ** -1.5), rel=1e-14)
    assert rep.bound_value == pytest.approx(3.9946, abs=1e-4)
    assert rep.satisfied


def test_negative_moment_condition():
    with pytest.raises(DomainError, match="D\\(q-1\\)/q"):
        ent.bound_renyi_upper(S1, 2, 2, "-")
    with pytest.raises(DomainError):
        ent.bound_tsallis_lower(S1, 2, 2, "-")
    rep = ent.bound_renyi_upper(H(1, 0, 10), 2, 2, "-")
    assert rep.satisfied


def test_negative_moment_literal_exponent_is_not_a_bound():
    s = H(1, 0, 10)
    good = ent.bound_renyi_upper(s, 2, 2, "-").bound_value
    literal = ent.bound_renyi_upper(s, 2, 2, "-", literal=True).bound_value
    # the corrected exponent makes the bound dilation covariant
    s2 = H(1, 0, 10, 3)
    assert ent.bound_renyi_upper(s2, 2, 2, "-").bound_value == pytest.approx(good - 10 * math.log(3), rel=1e-12)
    assert ent.bound_renyi_upper(s2, 2, 2, "-", literal=True).bound_value != pytest.approx(
        literal - 10 * math.log(3), rel=1e-6)


def test_tsallis_example():
    rep = ent.bound_tsallis_lower(S1, 2, 2)
    assert rep.compared_value == pytest.approx(1 / (8 * math.pi), rel=1e-10)
    assert rep.bound_value == pytest.approx(ent.L1(2, 2, 3) / 3 ** 1.5, rel=1e-14)
    assert rep.direction is ent.Direction.LOWER and rep.satisfied


def test_tsallis_limit_degenerates():
    gaps = []
    for q in (1.1, 1.01, 1.001):
        rep = ent.bound_tsallis_lower(S1, q, 2)
        assert rep.satisfied
        assert rep.compared_value == pytest.approx(1, abs=10 * (q - 1))
        assert rep.bound_value == pytest.approx(1, abs=10 * (q - 1))
        gaps.append(rep.margin)
    assert gaps[2] < gaps[1] < gaps[0]


def test_tsallis_below_one_reverses_direction():
    rep = ent.bound_tsallis_lower(S1, 0.8, 2)
    assert rep.direction is ent.Direction.UPPER and rep.satisfied


def test_momentum_mirror():
    rep = ent.bound_tsallis_lower(S1, 2, 2, 1, "momentum")
    assert rep.bound_value == pytest.approx(ent.L1(2, 2, 3), rel=1e-12)
    assert rep.satisfied


@pytest.mark.parametrize("state", SWEEP)
def test_all_bounds_hold_on_sweep(state):
    for space in ("position", "momentum"):
        reps = [ent.bound_shannon_upper(state, a, space) for a in (1, 2, 3)]
        reps += [ent.bound_renyi_upper(state, q, a, 1, space) for q in (0.98, 2, 3) for a in (1, 2)]
        reps += [ent.bound_tsallis_lower(state, q, a, 1, space) for q in (0.98, 2, 3) for a in (1, 2)]
        if state.D >= 5:
            reps += [ent.bound_renyi_upper(state, 3, 1, -1, space), ent.bound_tsallis_lower(state, 3, 1, -1, space)]
        assert all(r.satisfied for r in reps), [r for r in reps if not r.satisfied]


def test_renyi_tends_to_shannon():
    # the offset is |q-1| Var(log rho)/2 and the variance grows like D, so D >= 10 exceeds 5e-4
    worst = max((abs(ent.entropy_quadrature(s, "renyi", q).value - ent.entropy_quadrature(s).value), s)
                for s in SWEEP for q in (1 - 1e-4, 1 + 1e-4))
    assert worst[0] <= 5e-4, worst


@pytest.mark.parametrize("state", SWEEP[::4])
def test_renyi_approach_is_linear_in_q_minus_one(state):
    # R_q - S = -(q-1) Var(log rho)/2 + O((q-1)^2), so the offsets are odd in q-1 and scale with it
    s = ent.entropy_quadrature(state).value
    d = {h: ent.entropy_quadrature(state, "renyi", 1 + h).value - s for h in (1e-4, -1e-4, 2e-4)}
    assert d[1e-4] < 0 < d[-1e-4]
    assert d[-1e-4] == pytest.approx(-d[1e-4], rel=1e-2)
    assert d[2e-4] == pytest.approx(2 * d[1e-4], rel=1e-2)


@pytest.mark.parametrize("state", SWEEP[::4])
def test_renyi_bound_tends_to_shannon_bound(state):
    sb = ent.bound_shannon_upper(state, 2).bound_value
    for q in (1 - 1e-4, 1 + 1e-4):
        assert ent.bound_renyi_upper(state, q, 2).bound_value == pytest.approx(sb, rel=1e-3)


def test_a1_examples():
    assert ent.A1(H(1, 0, 50), 2) == 0.0
    vals = [abs(ent.A1(H(2, 1, D), 2)) for D in (10, 100, 1000, 10000)]
    assert all(b < a / 5 for a, b in zip(vals, vals[1:]))


def test_a0_asymptotic_offset_settles():
    diffs = [ent.A0(2, D) - ent.A0_asymptotic(2, D) for D in (200, 400, 800, 1600, 3200)]
    assert max(diffs) - min(diffs) <= 1e-9


def test_asymptotic_shannon_bound_near_exact():
    s = H(1, 0, 1000)
    asym = ent.asymptotic_bound_terms(s, 2).shannon_upper
    assert asym == pytest.approx(ent.bound_shannon_upper(s, 2).bound_value, rel=0.02)


def test_a2_literal_coefficient_breaks_agreement():
    s = H(1, 0, 1000)
    exact = ent.bound_shannon_upper(s, 2).bound_value
    assert abs(ent.asymptotic_bound_terms(s, 2, literal=True).shannon_upper / exact - 1) > 0.5


def test_asymptotic_renyi_terms():
    t = ent.asymptotic_bound_terms(H(1, 0, 400), 2, q=2)
    assert t.A3 == pytest.approx(math.log(2) - math.log(2 / math.pi) / 2, rel=1e-14)
    assert t.log_tsallis_lower == pytest.approx(-t.renyi_upper, rel=1e-14)
    exact = ent.bound_renyi_upper(H(1, 0, 400), 2, 2).bound_value
    assert t.renyi_upper == pytest.approx(exact, rel=0.02)


def test_asymptotic_terms_need_q_above_one():
    with pytest.raises(DomainError):
        ent.asymptotic_bound_terms(S1, 2, q=0.5)
