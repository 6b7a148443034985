import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hydromoments.quadrature import QuadratureError, integrate


def test_polynomial_is_exact():
    res = integrate(lambda x: 3 * x ** 2, [0.0, 2.0])
    assert res.value == pytest.approx(8.0, rel=1e-14) and res.converged


def test_semi_infinite_range_after_mapping():
    # x = t/(1-t) maps [0, 1) onto [0, inf)
    def g(t):
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            x = t / (1 - t)
            return np.exp(-x) / (1 - t) ** 2
    res = integrate(g, [0.0, 0.5, 1.0], rel_tol=1e-12)
    assert res.value == pytest.approx(1.0, rel=1e-12)


def test_infinite_breakpoints_rejected():
    with pytest.raises(ValueError, match="finite"):
        integrate(lambda x: np.exp(-x), [0.0, math.inf])


def test_endpoint_singularity():
    res = integrate(lambda x: 1 / np.sqrt(x), [0.0, 1.0], rel_tol=1e-10, max_evals=100000)
    assert res.value == pytest.approx(2.0, rel=1e-8)


@given(st.floats(0.1, 20))
def test_gaussian_mass(s):
    pts = [m * s for m in (-12, -4, -1, 0, 1, 4, 12)]
    res = integrate(lambda x: np.exp(-x * x / (2 * s * s)), pts, rel_tol=1e-11)
    assert res.value == pytest.approx(s * math.sqrt(2 * math.pi), rel=1e-10)


def test_converged_implies_error_within_tolerance():
    res = integrate(lambda x: np.cos(5 * x), [0.0, 3.0], rel_tol=1e-10)
    assert res.converged
    assert res.error_estimate <= 1e-10 * abs(res.value) + 1e-300


def test_node_ceiling_and_strict_mode():
    def wild(x):
        return np.sin(1 / np.maximum(x, 1e-300))
    loose = integrate(wild, [1e-6, 1.0], rel_tol=1e-14, max_evals=2000)
    assert not loose.converged and loose.node_count <= 2000 + 100
    with pytest.raises(QuadratureError):
        integrate(wild, [1e-6, 1.0], rel_tol=1e-14, max_evals=2000, strict=True)
