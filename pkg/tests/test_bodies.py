import math

import numpy as np
import pytest

from convexlab import bodies
from convexlab.errors import (
    DegeneracyError,
    InvalidArgumentError,
    OriginNotInteriorError,
)


class TestSupport:
    def test_cube_axis(self):
        assert bodies.support(bodies.cube(2), [1.0, 0.0]) == pytest.approx(1.0)

    def test_cube_diagonal(self):
        u = np.array([1.0, 1.0]) / math.sqrt(2)
        assert bodies.support(bodies.cube(2), u) == pytest.approx(math.sqrt(2))

    def test_ball_any_direction(self):
        rng = np.random.default_rng(0)
        u = rng.standard_normal(3)
        u /= np.linalg.norm(u)
        assert bodies.support(bodies.ball(3), u) == pytest.approx(1.0)

    def test_pball_is_dual_norm(self):
        # h of the p-ball is the q-norm, q = p / (p - 1)
        body = bodies.p_ball_smooth(2, 3.0)
        u = np.array([0.6, 0.8])
        q = 1.5
        assert bodies.support(body, u) == pytest.approx((0.6**q + 0.8**q) ** (1 / q))

    def test_p2_ball_is_round(self):
        body = bodies.p_ball_smooth(2, 2.0)
        dirs = bodies.default_quadrature(2).nodes[:100]
        assert np.allclose(bodies.support_values(body, dirs), 1.0)


class TestPolar:
    def test_cube_polar_is_cross(self):
        for n in (2, 3):
            pc = bodies.polar(bodies.cube(n))
            expect = np.vstack([np.eye(n), -np.eye(n)])
            got = pc.vertices[np.lexsort(pc.vertices.T)]
            want = expect[np.lexsort(expect.T)]
            assert np.allclose(got, want, atol=1e-12)

    def test_square_polar_volume(self):
        assert bodies.polar(bodies.cube(2)).volume == pytest.approx(2.0)

    def test_ball_polar(self):
        p = bodies.polar(bodies.ball(3))
        assert np.allclose(p.shape, np.eye(3))

    def test_bipolar_involution_random_symmetric(self):
        for seed in range(10):
            body = bodies.random_symmetric_polytope(3, 14, seed)
            back = bodies.polar(bodies.polar(body))
            a = body.vertices[np.lexsort(body.vertices.T)]
            b = back.vertices[np.lexsort(back.vertices.T)]
            assert a.shape == b.shape
            assert np.max(np.abs(a - b)) < 1e-9

    def test_pball_polar_is_dual_pball(self):
        p = bodies.polar(bodies.p_ball_smooth(2, 4.0))
        assert p.family == "pball"
        assert p.params["p"] == pytest.approx(4.0 / 3.0)

    def test_offcenter_ellipsoid_polar_flagged(self):
        e = bodies.ellipsoid_from_matrix(np.eye(2), center=[0.3, 0.0])
        dual = bodies.polar(e)
        assert "off-center-dual" in dual.flags


class TestVolume:
    def test_cube(self):
        assert bodies.cube(3).volume == pytest.approx(8.0)

    def test_cross_polytope(self):
        # 2^n / n!
        for n in (2, 3, 4):
            assert bodies.cross_polytope(n).volume == pytest.approx(
                2.0**n / math.factorial(n), abs=1e-12
            )

    def test_simplex_2d(self):
        # equilateral triangle inscribed in the unit circle: 3 sqrt(3) / 4
        assert bodies.regular_simplex(2).volume == pytest.approx(3 * math.sqrt(3) / 4)

    def test_ball_smooth_path(self):
        assert bodies.volume(bodies.ball(3)) == pytest.approx(4 * math.pi / 3, rel=1e-3)

    def test_pball_volume_against_gamma_formula(self):
        # closed-form oracle: Vol(B_p^n) = (2 Gamma(1 + 1/p))^n / Gamma(1 + n/p)
        for n, p in [(2, 1.5), (2, 4.0), (3, 3.0)]:
            expect = (2 * math.gamma(1 + 1 / p)) ** n / math.gamma(1 + n / p)
            assert bodies.volume(bodies.p_ball_smooth(n, p)) == pytest.approx(expect, rel=1e-3)

    def test_volume_invariant_under_interior_points(self):
        cube = bodies.cube(2)
        rng = np.random.default_rng(5)
        extra = rng.uniform(-0.9, 0.9, size=(20, 2))
        again = bodies.polytope_from_vertices(np.vstack([cube.vertices, extra]))
        assert again.volume == pytest.approx(cube.volume, abs=1e-12)
        assert len(again.vertices) == 4


class TestLinearTransform:
    def test_identity(self):
        c = bodies.cube(2)
        t = bodies.linear_transform(c, np.eye(2))
        assert np.allclose(np.sort(t.vertices, axis=0), np.sort(c.vertices, axis=0))

    def test_det_scaling(self):
        t = bodies.linear_transform(bodies.cube(2), 2 * np.eye(2))
        assert t.volume == pytest.approx(16.0)

    def test_unimodular_preserves_disc_volume(self):
        e = bodies.linear_transform(bodies.ball(2), np.diag([2.0, 0.5]))
        assert bodies.volume(e) == pytest.approx(math.pi, rel=1e-12)

    def test_gl_invariance_of_volume_ratio(self):
        rng = np.random.default_rng(11)
        for seed in range(5):
            T = rng.standard_normal((3, 3)) + 3 * np.eye(3)
            body = bodies.random_symmetric_polytope(3, 12, seed)
            ratio = bodies.linear_transform(body, T).volume / body.volume
            assert ratio == pytest.approx(abs(np.linalg.det(T)), rel=1e-9)

    def test_smooth_support_transform(self):
        T = np.array([[1.0, 0.5], [0.0, 1.0]])
        moved = bodies.linear_transform(bodies.p_ball_smooth(2, 3.0), T)
        dirs = bodies.default_quadrature(2).nodes[:64]
        # support of TK via max over transformed boundary samples
        cloud = bodies.radial_values(bodies.p_ball_smooth(2, 3.0), bodies.default_quadrature(2).nodes)
        pts = (cloud[:, None] * bodies.default_quadrature(2).nodes) @ T.T
        brute = np.max(dirs @ pts.T, axis=1)
        assert np.allclose(bodies.support_values(moved, dirs), brute, atol=1e-4)

    def test_singular_rejected(self):
        with pytest.raises(InvalidArgumentError):
            bodies.linear_transform(bodies.cube(2), np.zeros((2, 2)))


class TestGenerators:
    def test_simplex_circumscribed(self):
        for n in (2, 3, 4):
            v = bodies.regular_simplex(n).vertices
            assert np.allclose(np.linalg.norm(v, axis=1), 1.0, atol=1e-12)

    def test_support_positive_on_probe_grid(self):
        gens = [
            bodies.cube(3),
            bodies.cross_polytope(3),
            bodies.regular_simplex(3),
            bodies.ball(3),
            bodies.p_ball_smooth(3, 1.5),
            bodies.ellipsoid([2.0, 1.0, 0.5]),
        ]
        nodes = bodies.default_quadrature(3).nodes[:1024]
        for g in gens:
            assert np.min(bodies.support_values(g, nodes)) > 0

    def test_random_polytope_centered(self):
        body = bodies.random_polytope(3, 16, seed=2)
        assert np.linalg.norm(bodies.centroid(body)) < 1e-9

    def test_random_symmetric_is_symmetric(self):
        body = bodies.random_symmetric_polytope(2, 10, seed=4)
        assert bodies.is_origin_symmetric(body)

    def test_vertex_count_guard(self):
        with pytest.raises(InvalidArgumentError):
            bodies.random_polytope(3, 3, seed=0)


class TestErrors:
    def test_origin_outside(self):
        with pytest.raises(OriginNotInteriorError):
            bodies.polytope_from_vertices(np.array([[1.0, 1.0], [2.0, 1.0], [1.5, 2.0]]))

    def test_degenerate_points(self):
        line = np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0], [3.0, 3.0]])
        with pytest.raises(DegeneracyError):
            bodies.polytope_from_vertices(line)

    def test_bad_pball(self):
        with pytest.raises(InvalidArgumentError):
            bodies.p_ball_smooth(2, 1.0)


class TestBodySpec:
    def test_named(self):
        body = bodies.body_from_spec({"type": "named", "name": "cube", "dim": 2, "scale": 2.0})
        assert body.volume == pytest.approx(16.0)

    def test_polytope(self):
        body = bodies.body_from_spec(
            {"type": "polytope-v", "vertices": [[1, 1], [-1, 1], [-1, -1], [1, -1]]}
        )
        assert body.volume == pytest.approx(4.0)

    def test_ellipsoid(self):
        body = bodies.body_from_spec({"type": "ellipsoid", "shape": [[0.25, 0.0], [0.0, 4.0]]})
        assert bodies.volume(body) == pytest.approx(math.pi, rel=1e-12)

    def test_pball(self):
        body = bodies.body_from_spec({"type": "pball", "dim": 2, "p": 4})
        assert body.family == "pball"

    @pytest.mark.parametrize(
        "spec",
        [
            {},
            {"type": "mystery"},
            {"type": "named", "name": "frustum", "dim": 3},
            {"type": "pball", "dim": 2},
            {"type": "ellipsoid", "shape": [[1.0, 0.5], [0.0, 1.0]]},
            "not a dict",
        ],
    )
    def test_malformed(self, spec):
        with pytest.raises(InvalidArgumentError):
            bodies.body_from_spec(spec)
