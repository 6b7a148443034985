import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hydromoments import hydrogenic as hy
from hydromoments.hydrogenic import HydrogenicState as H
from hydromoments.quadrature import integrate

states = st.builds(lambda n, dl, D, Z: H(n, min(dl, n - 1), D, Z),
                   st.integers(1, 6), st.integers(0, 5), st.integers(2, 60),
                   st.sampled_from([1, 2, 0.5, 3.7]))


@pytest.mark.parametrize("bad", [(0, 0, 3), (2, 2, 3), (1, -1, 3), (1, 0, 1), (1, 0, 3, 0), (1.5, 0, 3)])
def test_state_validation(bad):
    with pytest.raises(hy.ValidityError):
        H(*bad)


@pytest.mark.parametrize("state,expected", [
    (H(1, 0, 3), (1, 0, 0, 1)),
    (H(2, 0, 50), (25.5, 23.5, 1, 24.5)),
    (H(3, 2, 3), (3, 2, 0, 3)),
])
def test_derived_parameters(state, expected):
    p = hy.derive_params(state)
    assert (p.eta, p.grand_l, p.k, p.nu) == pytest.approx(expected)
    assert p.length_scale == pytest.approx(p.eta / (2 * state.Z))


def test_derived_parameters_exact_are_half_integers():
    p = hy.derive_params(H(2, 0, 50), exact=True)
    assert p.eta == Fraction(51, 2) and p.grand_l == Fraction(47, 2)


@given(states)
def test_derived_parameter_invariants(s):
    p = hy.derive_params(s)
    assert p.eta - p.grand_l == s.n - s.l
    assert p.nu == p.grand_l + 1 and p.k >= 0 and p.length_scale > 0


@pytest.mark.parametrize("state,e", [(H(1, 0, 3), -0.5), (H(2, 0, 3), -0.125), (H(1, 0, 5), -0.125)])
def test_energy(state, e):
    assert hy.energy(state) == pytest.approx(e, rel=1e-15)


def test_ground_state_density_value():
    assert hy.radial_density_position(H(1, 0, 3), 1.0) == pytest.approx(0.5413411329, abs=1e-10)


@pytest.mark.parametrize("state", [H(1, 0, 3), H(3, 1, 5, 2), H(4, 2, 11, 0.5), H(2, 0, 50)])
def test_densities_are_normalized(state):
    D = state.D

    def weighted(logdens):
        def f(x):
            x = np.asarray(x, dtype=float)
            out = np.zeros_like(x)
            ok = (x > 0) & np.isfinite(x)
            with np.errstate(divide="ignore", invalid="ignore"):
                out[ok] = np.exp((D - 1) * np.log(x[ok]) + logdens(state, x[ok]))
            return out
        return f

    fr = weighted(hy.log_radial_density_position)
    fp = weighted(hy.log_radial_density_momentum)

    scale = hy.derive_params(state).length_scale
    # both tails are far below 1e-12 past the last breakpoint
    top = 8 * scale * (state.n + state.D) + 80 * scale
    r = integrate(fr, list(np.linspace(0, top, 41)), rel_tol=1e-11)
    p0 = state.Z / hy.derive_params(state).eta
    p = integrate(fp, [0, p0 / 4, p0 / 2, p0, 2 * p0, 4 * p0, 40 * p0, 1e3 * p0, 1e6 * p0], rel_tol=1e-11)
    assert r.value == pytest.approx(1, rel=1e-9)
    assert p.value == pytest.approx(1, rel=1e-9)


def test_log_density_accepts_arrays_and_zero():
    s = H(2, 1, 3)
    out = hy.log_radial_density_position(s, np.array([0.0, 1.0, 2.0]))
    assert out[0] == -math.inf and np.all(np.isfinite(out[1:]))


@pytest.mark.parametrize("state,alpha,expected", [
    (H(2, 0, 50), 1, 687.5),
    (H(1, 0, 3), 1, 1.5),
    (H(2, 0, 50), -1, 1 / 25.5 ** 2),
    (H(1, 0, 3), 2, 3.0),
    (H(1, 0, 3), -2, 2.0),
])
def test_position_moment_examples(state, alpha, expected):
    assert hy.position_expectation(state, alpha).value == pytest.approx(expected, rel=1e-9)


@given(states)
def test_alpha_zero_is_normalization(s):
    assert hy.position_expectation(s, 0).value == pytest.approx(1, rel=1e-13)
    assert hy.momentum_expectation(s, 0).value == pytest.approx(1, rel=1e-13)


@pytest.mark.parametrize("state,alpha,expected", [
    (H(2, 0, 50), 2, 0.00153787),
    (H(2, 0, 50), 1, 0.0380789),
    (H(1, 0, 3), -2, 5.0),
    (H(1, 0, 3), 4, 5.0),
])
def test_momentum_moment_examples(state, alpha, expected):
    assert hy.momentum_expectation(state, alpha).value == pytest.approx(expected, rel=5e-6)


@given(states)
def test_p2_is_minus_twice_energy(s):
    assert hy.momentum_expectation(s, 2).value == pytest.approx(-2 * hy.energy(s), rel=1e-12)


@given(states, st.sampled_from([-1.5, -0.5, 0.5, 1, 2, 3.5]))
def test_z_scaling(s, alpha):
    assume(alpha > -(s.D + 2 * s.l))
    one = H(s.n, s.l, s.D, 1)
    assert hy.position_expectation(s, alpha).value == pytest.approx(
        hy.position_expectation(one, alpha).value * s.Z ** -alpha, rel=1e-12)


def test_validity_errors():
    with pytest.raises(hy.ValidityError, match="diverges"):
        hy.position_expectation(H(1, 0, 3), -3)
    with pytest.raises(hy.ValidityError):
        hy.momentum_expectation(H(1, 0, 3), 5)
    with pytest.raises(hy.ValidityError):
        hy.momentum_expectation(H(1, 0, 3), -3)


@pytest.mark.parametrize("state", [H(1, 0, 3), H(3, 1, 7), H(4, 2, 12), H(5, 0, 20, 2)])
@pytest.mark.parametrize("alpha", [-2, -1, 1, 2])
def test_position_closed_forms_agree_with_series(state, alpha):
    assert float(hy.position_closed_forms(state, alpha)) == pytest.approx(
        hy.position_expectation(state, alpha).value, rel=1e-13)


@pytest.mark.parametrize("state", [H(1, 0, 3), H(3, 1, 7), H(4, 2, 12)])
@pytest.mark.parametrize("alpha", [-2, 2, 4])
def test_momentum_closed_forms_agree_with_series(state, alpha):
    assert float(hy.momentum_closed_forms(state, alpha)) == pytest.approx(
        hy.momentum_expectation(state, alpha).value, rel=1e-12)


def test_closed_form_singular_denominator():
    # <p^-2> needs 2L+1 != 0, which fails for l=0 at D=2
    with pytest.raises((hy.SingularFormulaError, hy.ValidityError)):
        hy.momentum_closed_forms(H(1, 0, 2), -2)


@given(states, st.sampled_from([1, 2]))
def test_momentum_reflection(s, beta):
    assume(hy.derive_params(s).grand_l > beta / 2 - 0.5)
    try:
        dev = hy.momentum_reflection(s, beta)
    except hy.ValidityError:
        return
    assert dev < 1e-11


def test_log_position_ground_state():
    # psi(3) - ln 2; the value 0.5 + psi(2) - ln 2 is the same number
    assert hy.log_position_expectation(H(1, 0, 3)).value == pytest.approx(0.2296371545, abs=1e-10)


@pytest.mark.parametrize("state,expected", [(H(1, 0, 3), -1 / 3), (H(2, 0, 3), -math.log(2) + 4 / 15 - 1)])
def test_log_momentum_examples(state, expected):
    assert hy.log_momentum_expectation(state).value == pytest.approx(expected, rel=1e-13)


def test_log_momentum_rejects_degenerate_denominator():
    with pytest.raises(hy.SingularFormulaError):
        hy.log_momentum_expectation(H(1, 0, 2))


@settings(max_examples=40)
@given(states)
def test_log_moments_shift_with_z(s):
    one = H(s.n, s.l, s.D, 1)
    assume(not (s.n == 1 and s.D == 2))
    assert hy.log_position_expectation(s).value == pytest.approx(
        hy.log_position_expectation(one).value - math.log(s.Z), abs=1e-12)
    assert hy.log_momentum_expectation(s).value == pytest.approx(
        hy.log_momentum_expectation(one).value + math.log(s.Z), abs=1e-12)


def test_large_dimension_has_no_overflow():
    s = H(3, 1, 10000)
    assert math.isfinite(hy.position_expectation(s, 3).value)
    assert math.isfinite(hy.momentum_expectation(s, -2.5).value)
