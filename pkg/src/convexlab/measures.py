"""Boundary measures on S^{n-1}: surface-area, cone-volume and
mixed-volume measures, plus the mixed volume V1(L, K).

Polytopes yield atomic measures (facet normals weighted by facet areas);
smooth bodies with a curvature density yield quadrature-backed density
measures.  Cone-volume masses total Vol(L); mixed-volume masses total
V1(L, K) = (1/n) * integral h_K dS_L.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from . import bodies
from .bodies import ConvexBody, Ellipsoid, PolytopeV, SmoothBody, support_values
from .errors import (
    DimensionMismatchError,
    UnsupportedRepresentationError,
)
from .records import EXACT_TOL, InequalityRecord, quadrature_tolerance
from .sphere import SphereQuadrature, default_quadrature


@dataclass(frozen=True, eq=False)
class DiscreteSphereMeasure:
    """Atomic measure: unit directions with nonnegative masses."""

    dim: int
    directions: np.ndarray
    masses: np.ndarray
    kind: str

    def __post_init__(self):
        self.directions.setflags(write=False)
        self.masses.setflags(write=False)

    @property
    def total(self) -> float:
        return float(np.sum(self.masses))

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "atoms": [[*u.tolist(), float(m)] for u, m in zip(self.directions, self.masses)],
        }


@dataclass(frozen=True, eq=False)
class DensityMeasure:
    """Measure with a density against the spherical Lebesgue measure,
    sampled at the nodes of a quadrature."""

    dim: int
    quadrature: SphereQuadrature
    density: np.ndarray
    kind: str

    def __post_init__(self):
        self.density.setflags(write=False)

    @property
    def total(self) -> float:
        return float(np.dot(self.quadrature.weights, self.density))


SphereMeasure = Union[DiscreteSphereMeasure, DensityMeasure]


def integrate_measure(measure: SphereMeasure, f) -> float:
    """Integral of f (vectorized over directions, or a value array) against the measure."""
    if isinstance(measure, DiscreteSphereMeasure):
        values = f(measure.directions) if callable(f) else np.asarray(f, dtype=float)
        return float(np.dot(measure.masses, values))
    values = f(measure.quadrature.nodes) if callable(f) else np.asarray(f, dtype=float)
    return float(np.dot(measure.quadrature.weights * measure.density, values))


def _fd_curvature_2d(body: SmoothBody, q: SphereQuadrature) -> np.ndarray:
    """f = h + h'' on S^1 by central differences with the quadrature step."""
    step = 2.0 * np.pi / q.resolution
    theta = np.arctan2(q.nodes[:, 1], q.nodes[:, 0])

    def h_at(t):
        return support_values(body, np.column_stack([np.cos(t), np.sin(t)]))

    h0 = h_at(theta)
    hp = h_at(theta + step)
    hm = h_at(theta - step)
    return h0 + (hp - 2.0 * h0 + hm) / step**2


def curvature_density(L: ConvexBody, q: SphereQuadrature) -> np.ndarray:
    """Density f_L of dS_L at the quadrature nodes, for bodies that have one."""
    if isinstance(L, Ellipsoid):
        # f(u) = det(A)^{-1} / (u^T A^{-1} u)^{(n+1)/2}; translation-invariant
        n = L.dim
        quad = np.einsum("ij,jk,ik->i", q.nodes, L.shape_inv, q.nodes)
        det = float(np.linalg.det(L.shape))
        return quad ** (-0.5 * (n + 1)) / det
    if isinstance(L, SmoothBody):
        if L.curvature_fn is not None:
            return np.asarray(L.curvature_fn(q.nodes), dtype=float)
        if L.dim == 2 and (L.support_fn is not None or L.radial_fn is not None):
            return _fd_curvature_2d(L, q)
        raise UnsupportedRepresentationError(
            f"no curvature density available for {bodies.describe(L)} in dim {L.dim}"
        )
    raise UnsupportedRepresentationError(
        "polytopes carry an atomic surface measure, not a curvature density"
    )


def surface_measure(L: ConvexBody, quadrature: SphereQuadrature | None = None) -> SphereMeasure:
    """Surface-area measure dS_L."""
    if isinstance(L, PolytopeV):
        return DiscreteSphereMeasure(
            dim=L.dim,
            directions=L.facet_normals.copy(),
            masses=L.facet_areas.copy(),
            kind="surface",
        )
    q = quadrature if quadrature is not None else default_quadrature(L.dim)
    return DensityMeasure(dim=L.dim, quadrature=q, density=curvature_density(L, q), kind="surface")


def cone_volume_measure(L: ConvexBody, quadrature: SphereQuadrature | None = None) -> SphereMeasure:
    """Cone-volume measure dv_L = (1/n) h_L dS_L; total mass Vol(L)."""
    s = surface_measure(L, quadrature)
    return _weight_by_support(s, L, "cone-volume")


def mixed_volume_measure(
    L: ConvexBody, K: ConvexBody, quadrature: SphereQuadrature | None = None
) -> SphereMeasure:
    """Mixed-volume measure dv1 = (1/n) h_K dS_L; total mass V1(L, K)."""
    if L.dim != K.dim:
        raise DimensionMismatchError(f"body dims differ: {L.dim} vs {K.dim}")
    s = surface_measure(L, quadrature)
    return _weight_by_support(s, K, "mixed-volume")


def _weight_by_support(s: SphereMeasure, body: ConvexBody, kind: str) -> SphereMeasure:
    n = s.dim
    if isinstance(s, DiscreteSphereMeasure):
        h = support_values(body, s.directions)
        return DiscreteSphereMeasure(
            dim=n, directions=s.directions.copy(), masses=s.masses * h / n, kind=kind
        )
    h = support_values(body, s.quadrature.nodes)
    return DensityMeasure(dim=n, quadrature=s.quadrature, density=s.density * h / n, kind=kind)


def mixed_volume_V1(
    L: ConvexBody, K: ConvexBody, quadrature: SphereQuadrature | None = None
) -> float:
    """V1(L, K) = (1/n) * integral h_K dS_L; satisfies V1(L, L) = Vol(L)."""
    return mixed_volume_measure(L, K, quadrature).total


def minkowski_first_check(
    L: ConvexBody, K: ConvexBody, quadrature: SphereQuadrature | None = None
) -> InequalityRecord:
    """Minkowski's first inequality V1(L, K) >= Vol(K)^{1/n} Vol(L)^{(n-1)/n}."""
    n = L.dim
    v1 = mixed_volume_V1(L, K, quadrature)
    vol_k = bodies.volume(K, quadrature)
    vol_l = bodies.volume(L, quadrature)
    rhs = vol_k ** (1.0 / n) * vol_l ** ((n - 1.0) / n)
    exact = isinstance(L, PolytopeV) and isinstance(K, (PolytopeV, Ellipsoid))
    tol = EXACT_TOL if exact else quadrature_tolerance(rhs)
    return InequalityRecord(
        name="minkowski-first",
        dim=n,
        lhs=v1,
        rhs=rhs,
        tolerance=tol,
        body=bodies.describe(L),
        body2=bodies.describe(K),
    )
