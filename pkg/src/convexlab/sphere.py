"""Deterministic quadrature on the unit sphere S^{n-1}.

All surface integrals in the library are folds over a fixed node/weight
set.  Weights carry the *unnormalized* surface measure: they sum to
n * omega_n, the total surface area of S^{n-1}.  Normalized measures are
obtained by explicit division at the point of use.

Schemes:
    n = 2   midpoint trapezoid on the circle (exact for trigonometric
            polynomials of degree < resolution; the half-step offset keeps
            nodes off the coordinate axes, where several closed-form
            curvature densities have integrable singularities)
    n = 3   Fibonacci lattice with equal weights 4*pi/resolution
    n >= 4  seeded Monte Carlo (normalized Gaussians), equal weights
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import InvalidArgumentError, NumericDomainError

DEFAULT_SEED = 24137

GOLDEN_RATIO = (1.0 + math.sqrt(5.0)) / 2.0


def unit_ball_volume(dim: int) -> float:
    """omega_n = pi^(n/2) / Gamma(n/2 + 1), via log-Gamma to stay finite for large n."""
    if dim < 1:
        raise InvalidArgumentError(f"dimension must be >= 1, got {dim}")
    return math.exp(0.5 * dim * math.log(math.pi) - math.lgamma(0.5 * dim + 1.0))


def sphere_surface_area(dim: int) -> float:
    """Total surface measure of S^{n-1} in R^n, i.e. n * omega_n."""
    return dim * unit_ball_volume(dim)


@dataclass(frozen=True, eq=False)
class SphereQuadrature:
    """Immutable node/weight set on S^{n-1}.

    nodes: (N, dim) unit vectors; weights: (N,) positive, summing to n*omega_n.
    """

    dim: int
    nodes: np.ndarray
    weights: np.ndarray
    resolution: int
    seed: int
    scheme: str = field(default="")

    def __post_init__(self):
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    @property
    def total_weight(self) -> float:
        return float(np.sum(self.weights))

    def __len__(self) -> int:
        return self.nodes.shape[0]


def build_quadrature(dim: int, resolution: int, seed: int = DEFAULT_SEED) -> SphereQuadrature:
    """Build the deterministic quadrature for the given dimension.

    The node list is bit-reproducible for fixed (dim, resolution, seed).
    """
    if dim < 2:
        raise InvalidArgumentError(f"quadrature needs dim >= 2, got {dim}")
    if resolution < 4:
        raise InvalidArgumentError(f"quadrature needs resolution >= 4, got {resolution}")

    if dim == 2:
        theta = 2.0 * math.pi * (np.arange(resolution) + 0.5) / resolution
        nodes = np.column_stack([np.cos(theta), np.sin(theta)])
        weights = np.full(resolution, 2.0 * math.pi / resolution)
        scheme = "trapezoid"
    elif dim == 3:
        idx = np.arange(resolution, dtype=float) + 0.5
        phi = np.arccos(1.0 - 2.0 * idx / resolution)
        theta = 2.0 * math.pi * idx / GOLDEN_RATIO
        nodes = np.column_stack(
            [np.cos(theta) * np.sin(phi), np.sin(theta) * np.sin(phi), np.cos(phi)]
        )
        weights = np.full(resolution, 4.0 * math.pi / resolution)
        scheme = "fibonacci"
    else:
        rng = np.random.default_rng(seed)
        raw = rng.standard_normal((resolution, dim))
        nodes = raw / np.linalg.norm(raw, axis=1, keepdims=True)
        weights = np.full(resolution, sphere_surface_area(dim) / resolution)
        scheme = "monte-carlo"

    return SphereQuadrature(
        dim=dim, nodes=nodes, weights=weights, resolution=resolution, seed=seed, scheme=scheme
    )


DEFAULT_RESOLUTIONS = {2: 2048, 3: 8192}
DEFAULT_RESOLUTION_HIGH = 200_000


def default_resolution(dim: int) -> int:
    return DEFAULT_RESOLUTIONS.get(dim, DEFAULT_RESOLUTION_HIGH)


@lru_cache(maxsize=32)
def default_quadrature(dim: int, resolution: int | None = None, seed: int = DEFAULT_SEED) -> SphereQuadrature:
    """Cached quadrature with the desk-scale default resolution per dimension."""
    if resolution is None:
        resolution = default_resolution(dim)
    return build_quadrature(dim, resolution, seed)


def integrate_values(q: SphereQuadrature, values: np.ndarray) -> float:
    """Weighted sum of precomputed node values (fixed summation order)."""
    values = np.asarray(values, dtype=float)
    if values.shape != (len(q),):
        raise InvalidArgumentError(
            f"expected {len(q)} node values, got shape {values.shape}"
        )
    if not np.all(np.isfinite(values)):
        i = int(np.argmin(np.isfinite(values)))
        raise NumericDomainError(
            f"non-finite integrand value {values[i]} at node {i}: {q.nodes[i]}"
        )
    return float(np.dot(q.weights, values))


def integrate(q: SphereQuadrature, f) -> float:
    """Integrate f over S^{n-1} against the unnormalized surface measure.

    f is either a vectorized callable mapping an (N, dim) array of unit
    directions to (N,) values, or an array of values at the nodes.
    """
    values = f(q.nodes) if callable(f) else f
    return integrate_values(q, values)
