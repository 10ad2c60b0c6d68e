import math

import numpy as np
import pytest

from convexlab import sphere
from convexlab.errors import InvalidArgumentError, NumericDomainError


def test_total_weight_circle():
    q = sphere.build_quadrature(2, 8)
    assert q.total_weight == pytest.approx(2 * math.pi, abs=1e-12)


def test_total_weight_sphere():
    q = sphere.build_quadrature(3, 1000)
    assert q.total_weight == pytest.approx(4 * math.pi, abs=1e-9)


def test_total_weight_high_dim():
    q = sphere.build_quadrature(5, 1000, seed=3)
    assert q.total_weight == pytest.approx(sphere.sphere_surface_area(5), rel=1e-12)


def test_nodes_unit_norm():
    for dim in (2, 3, 4):
        q = sphere.build_quadrature(dim, 500, seed=1)
        norms = np.linalg.norm(q.nodes, axis=1)
        assert np.max(np.abs(norms - 1.0)) < 1e-12


def test_second_moment_on_s2():
    # analytic oracle: integral u1^2 dmu over S^2 equals |S^2| / 3 = 4 pi / 3
    q = sphere.build_quadrature(3, 8192)
    val = sphere.integrate(q, lambda U: U[:, 0] ** 2)
    assert val == pytest.approx(4 * math.pi / 3, abs=1e-2)


def test_l1_support_integral():
    # integral over [0, 2pi) of |cos| + |sin| equals 8; the integrand has
    # kinks, so the midpoint rule is only second order here
    q = sphere.build_quadrature(2, 2048)
    val = sphere.integrate(q, lambda U: np.abs(U[:, 0]) + np.abs(U[:, 1]))
    assert val == pytest.approx(8.0, abs=1e-4)


def test_constant_integrand():
    q = sphere.build_quadrature(2, 64)
    assert sphere.integrate(q, np.ones(64)) == pytest.approx(2 * math.pi, abs=1e-12)


@pytest.mark.parametrize("k", [1, 2, 3, 7, 15])
def test_trig_exactness(k):
    q = sphere.build_quadrature(2, 64)
    theta = np.arctan2(q.nodes[:, 1], q.nodes[:, 0])
    assert abs(sphere.integrate(q, np.cos(k * theta))) < 1e-10
    assert abs(sphere.integrate(q, np.sin(k * theta))) < 1e-10


def test_integrate_scaling():
    q = sphere.build_quadrature(3, 256)
    f = np.cos(q.nodes[:, 2])
    assert sphere.integrate(q, 5.0 * f) == 5.0 * sphere.integrate(q, f)


def test_determinism():
    a = sphere.build_quadrature(4, 1000, seed=99)
    b = sphere.build_quadrature(4, 1000, seed=99)
    assert np.array_equal(a.nodes, b.nodes)
    assert np.array_equal(a.weights, b.weights)


def test_seed_changes_mc_nodes():
    a = sphere.build_quadrature(4, 1000, seed=1)
    b = sphere.build_quadrature(4, 1000, seed=2)
    assert not np.array_equal(a.nodes, b.nodes)


def test_invalid_arguments():
    with pytest.raises(InvalidArgumentError):
        sphere.build_quadrature(1, 100)
    with pytest.raises(InvalidArgumentError):
        sphere.build_quadrature(3, 3)


def test_nonfinite_integrand_names_node():
    q = sphere.build_quadrature(2, 16)
    vals = np.ones(16)
    vals[5] = np.inf
    with pytest.raises(NumericDomainError, match="node 5"):
        sphere.integrate(q, vals)


def test_unit_ball_volume():
    assert sphere.unit_ball_volume(2) == pytest.approx(math.pi, rel=1e-15)
    assert sphere.unit_ball_volume(3) == pytest.approx(4 * math.pi / 3, rel=1e-14)
    # log-Gamma route stays accurate at n = 20
    assert sphere.unit_ball_volume(20) == pytest.approx(
        math.pi**10 / math.factorial(10), rel=1e-12
    )
