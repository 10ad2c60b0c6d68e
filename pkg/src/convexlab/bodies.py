"""Convex bodies containing the origin in their interior.

Three representations share one functional interface (support, polar,
volume, linear_transform):

    PolytopeV   vertex polytope with precomputed merged facet data; the
                exact-arithmetic anchor of the library (2 <= n <= 6)
    Ellipsoid   center + positive-definite shape matrix A, the set
                {x : (x - c)^T A (x - c) <= 1}
    SmoothBody  support / radial / curvature evaluators for smooth
                families (balls, ellipsoids, p-balls, custom)

Evaluators on SmoothBody are vectorized: they map an (N, dim) array of
unit directions to an (N,) array.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .errors import (
    DegeneracyError,
    DimensionMismatchError,
    InvalidArgumentError,
    OriginNotInteriorError,
)
from .sphere import default_quadrature, unit_ball_volume

DEDUP_TOL = 1e-12
NORMAL_MERGE_TOL = 1e-9  # radians
ORIGIN_TOL = 1e-9


# ---------------------------------------------------------------------------
# representations


@dataclass(frozen=True, eq=False)
class PolytopeV:
    """Vertex polytope with hull facet data (outward unit normals, support
    offsets h(u_F) and (n-1)-dimensional facet areas, coplanar facets merged)."""

    dim: int
    vertices: np.ndarray
    facet_normals: np.ndarray
    facet_offsets: np.ndarray
    facet_areas: np.ndarray
    volume: float

    def __post_init__(self):
        for a in (self.vertices, self.facet_normals, self.facet_offsets, self.facet_areas):
            a.setflags(write=False)


@dataclass(frozen=True, eq=False)
class Ellipsoid:
    """{x : (x - center)^T shape (x - center) <= 1} with shape symmetric positive definite."""

    dim: int
    center: np.ndarray
    shape: np.ndarray
    shape_inv: np.ndarray = field(repr=False, default=None)

    def __post_init__(self):
        if self.shape_inv is None:
            object.__setattr__(self, "shape_inv", np.linalg.inv(self.shape))
        self.center.setflags(write=False)
        self.shape.setflags(write=False)
        self.shape_inv.setflags(write=False)

    @property
    def is_centered(self) -> bool:
        return bool(np.linalg.norm(self.center) <= 1e-12)


@dataclass(frozen=True, eq=False)
class SmoothBody:
    """Smooth body given by evaluators on S^{n-1}.

    At least one of support_fn / radial_fn must be present; the missing one
    is recovered lazily from boundary samples.  curvature_fn, when present,
    is the density f of the surface-area measure with respect to the
    spherical Lebesgue measure.
    """

    dim: int
    support_fn: Optional[Callable] = None
    radial_fn: Optional[Callable] = None
    curvature_fn: Optional[Callable] = None
    family: str = "custom"
    params: dict = field(default_factory=dict)
    flags: tuple = ()
    _cache: dict = field(default_factory=dict, repr=False, compare=False)


ConvexBody = Union[PolytopeV, Ellipsoid, SmoothBody]


# ---------------------------------------------------------------------------
# polytope construction


def _simplex_facet_area(pts: np.ndarray) -> float:
    """Area of an (n-1)-simplex given its n vertices in R^n (Gram determinant)."""
    e = pts[1:] - pts[0]
    g = e @ e.T
    det = np.linalg.det(g)
    if det <= 0.0:
        return 0.0
    return math.sqrt(det) / math.factorial(len(pts) - 1)


def polytope_from_vertices(points) -> PolytopeV:
    """Build a PolytopeV from a point cloud.

    Runs a convex hull, keeps hull vertices only, merges coplanar
    triangulated facets, and checks that the origin is strictly interior.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if points.ndim != 2:
        raise InvalidArgumentError("vertex array must be 2-dimensional")
    n = points.shape[1]
    if n < 2 or n > 6:
        raise InvalidArgumentError(f"exact polytopes supported for 2 <= dim <= 6, got {n}")
    if points.shape[0] < n + 1:
        raise DegeneracyError(f"need at least {n + 1} points in R^{n}, got {points.shape[0]}")

    # deduplicate within absolute tolerance
    order = np.lexsort(points.T[::-1])
    pts = points[order]
    keep = [0]
    for i in range(1, len(pts)):
        if np.max(np.abs(pts[i] - pts[keep[-1]])) > DEDUP_TOL:
            keep.append(i)
    pts = pts[keep]
    if pts.shape[0] < n + 1:
        raise DegeneracyError("fewer than dim+1 distinct points after deduplication")

    try:
        hull = ConvexHull(pts)
    except QhullError as exc:
        raise DegeneracyError(f"degenerate point set: {exc}") from exc

    verts = pts[hull.vertices]
    eqs = hull.equations  # rows [normal, b] with normal.x + b <= 0 inside
    normals = eqs[:, :-1]
    offsets = -eqs[:, -1]  # support value in the facet normal direction

    # per-simplex facet areas, then merge facets sharing a supporting hyperplane
    areas = np.array([_simplex_facet_area(pts[s]) for s in hull.simplices])

    merged_n, merged_h, merged_a = [], [], []
    for i in range(len(normals)):
        u, h, a = normals[i], offsets[i], areas[i]
        placed = False
        for j in range(len(merged_n)):
            if (
                np.dot(u, merged_n[j]) >= 1.0 - 0.5 * NORMAL_MERGE_TOL**2
                and abs(h - merged_h[j]) <= 1e-9 * max(1.0, abs(h))
            ):
                merged_a[j] += a
                placed = True
                break
        if not placed:
            merged_n.append(u)
            merged_h.append(h)
            merged_a.append(a)

    facet_normals = np.array(merged_n)
    facet_offsets = np.array(merged_h)
    facet_areas = np.array(merged_a)

    circum = float(np.max(np.linalg.norm(verts, axis=1)))
    if np.min(facet_offsets) <= ORIGIN_TOL * max(1.0, circum):
        raise OriginNotInteriorError(
            f"origin not strictly interior: min facet support {np.min(facet_offsets):.3e}"
        )

    volume = float(np.dot(facet_offsets, facet_areas) / n)
    return PolytopeV(
        dim=n,
        vertices=verts,
        facet_normals=facet_normals,
        facet_offsets=facet_offsets,
        facet_areas=facet_areas,
        volume=volume,
    )


# ---------------------------------------------------------------------------
# support function


def support_values(body: ConvexBody, dirs: np.ndarray) -> np.ndarray:
    """Support function h(u) = max_{x in K} x.u at an (N, dim) array of unit directions."""
    dirs = np.atleast_2d(np.asarray(dirs, dtype=float))
    if dirs.shape[1] != body.dim:
        raise DimensionMismatchError(
            f"direction dim {dirs.shape[1]} != body dim {body.dim}"
        )
    if isinstance(body, PolytopeV):
        h = np.max(dirs @ body.vertices.T, axis=1)
    elif isinstance(body, Ellipsoid):
        quad = np.einsum("ij,jk,ik->i", dirs, body.shape_inv, dirs)
        h = dirs @ body.center + np.sqrt(np.maximum(quad, 0.0))
    else:
        h = np.asarray(_smooth_support(body)(dirs), dtype=float)
    if np.min(h) <= 0.0:
        raise OriginNotInteriorError(
            f"support {np.min(h):.3e} <= 0: origin not interior to the body"
        )
    return h


def support(body: ConvexBody, u) -> float:
    """Scalar support value in one direction."""
    return float(support_values(body, np.asarray(u, dtype=float)[None, :])[0])


def _boundary_cloud(body: SmoothBody, cap: int = 8192) -> np.ndarray:
    """Boundary samples rho(u) * u over a default grid (used for lazy duals)."""
    key = ("cloud", cap)
    if key not in body._cache:
        q = default_quadrature(body.dim)
        nodes = q.nodes
        if len(q) > cap:
            stride = len(q) // cap
            nodes = nodes[::stride]
        rho = radial_values(body, nodes)
        body._cache[key] = rho[:, None] * nodes
    return body._cache[key]


def _smooth_support(body: SmoothBody) -> Callable:
    if body.support_fn is not None:
        return body.support_fn
    if body.radial_fn is None:
        raise InvalidArgumentError("smooth body carries neither support nor radial evaluator")
    cloud = _boundary_cloud(body)

    def h(dirs):
        return np.max(dirs @ cloud.T, axis=1)

    return h


def radial_values(body: ConvexBody, dirs: np.ndarray) -> np.ndarray:
    """Radial function rho(u) = max {t >= 0 : t u in K} at unit directions."""
    dirs = np.atleast_2d(np.asarray(dirs, dtype=float))
    if isinstance(body, Ellipsoid):
        if not body.is_centered:
            raise InvalidArgumentError("radial function of an off-center ellipsoid is not supported")
        quad = np.einsum("ij,jk,ik->i", dirs, body.shape, dirs)
        return 1.0 / np.sqrt(quad)
    if isinstance(body, SmoothBody):
        if body.radial_fn is not None:
            return np.asarray(body.radial_fn(dirs), dtype=float)
        # rho_K = 1 / h_{K polar}; h_{K polar} from the polar's boundary samples
        return 1.0 / support_values(polar(body), dirs)
    if isinstance(body, PolytopeV):
        # rho(u) = min over facets of h_F / (u . n_F) restricted to positive dots
        dots = dirs @ body.facet_normals.T
        with np.errstate(divide="ignore"):
            t = np.where(dots > 1e-15, body.facet_offsets[None, :] / dots, np.inf)
        return np.min(t, axis=1)
    raise InvalidArgumentError(f"unknown body type {type(body)!r}")


# ---------------------------------------------------------------------------
# polar duality


def polar(body: ConvexBody) -> ConvexBody:
    """Polar body K* = {x : x.y <= 1 for all y in K}, taken about the origin."""
    if isinstance(body, PolytopeV):
        # vertices of the polar are facet-normal / offset duals
        return polytope_from_vertices(body.facet_normals / body.facet_offsets[:, None])
    if isinstance(body, Ellipsoid):
        if body.is_centered:
            return Ellipsoid(dim=body.dim, center=np.zeros(body.dim), shape=body.shape_inv.copy())
        h = _ellipsoid_support_closure(body)
        return SmoothBody(
            dim=body.dim,
            radial_fn=lambda dirs, h=h: 1.0 / h(dirs),
            family="polar-ellipsoid",
            flags=("off-center-dual",),
        )
    if isinstance(body, SmoothBody):
        if body.family == "pball":
            p = body.params["p"]
            scale = body.params.get("scale", 1.0)
            return p_ball_smooth(body.dim, p / (p - 1.0), scale=1.0 / scale)
        sup = body.support_fn
        rad = body.radial_fn
        return SmoothBody(
            dim=body.dim,
            support_fn=(lambda dirs, rad=rad: 1.0 / rad(dirs)) if rad is not None else None,
            radial_fn=(lambda dirs, sup=sup: 1.0 / sup(dirs)) if sup is not None else None,
            family=f"polar-{body.family}",
        )
    raise InvalidArgumentError(f"unknown body type {type(body)!r}")


def _ellipsoid_support_closure(body: Ellipsoid) -> Callable:
    c, ainv = body.center, body.shape_inv

    def h(dirs):
        quad = np.einsum("ij,jk,ik->i", dirs, ainv, dirs)
        return dirs @ c + np.sqrt(np.maximum(quad, 0.0))

    return h


# ---------------------------------------------------------------------------
# volume


def volume(body: ConvexBody, quadrature=None) -> float:
    """n-dimensional volume.

    Polytopes and ellipsoids are exact (to float); smooth bodies use the
    radial formula Vol = (1/n) * integral rho^n dmu when a radial evaluator
    exists, otherwise the curvature identity (1/n) * integral h f dmu,
    otherwise the dual-support path through the polar.
    """
    if isinstance(body, PolytopeV):
        return body.volume
    if isinstance(body, Ellipsoid):
        sign, logdet = np.linalg.slogdet(body.shape)
        if sign <= 0:
            raise InvalidArgumentError("ellipsoid shape matrix is not positive definite")
        return unit_ball_volume(body.dim) * math.exp(-0.5 * logdet)
    q = quadrature if quadrature is not None else default_quadrature(body.dim)
    n = body.dim
    if body.radial_fn is not None:
        rho = np.asarray(body.radial_fn(q.nodes), dtype=float)
        return float(np.dot(q.weights, rho**n) / n)
    if body.curvature_fn is not None:
        h = support_values(body, q.nodes)
        f = np.asarray(body.curvature_fn(q.nodes), dtype=float)
        return float(np.dot(q.weights, h * f) / n)
    hp = support_values(polar(body), q.nodes)
    return float(np.dot(q.weights, hp ** (-n)) / n)


# ---------------------------------------------------------------------------
# linear transforms


def linear_transform(body: ConvexBody, T) -> ConvexBody:
    """Image T K under an invertible linear map."""
    T = np.asarray(T, dtype=float)
    if T.shape != (body.dim, body.dim):
        raise InvalidArgumentError(f"transform must be {body.dim}x{body.dim}, got {T.shape}")
    sign, _ = np.linalg.slogdet(T)
    if sign == 0 or not np.all(np.isfinite(T)):
        raise InvalidArgumentError("transform matrix is singular or non-finite")

    if isinstance(body, PolytopeV):
        return polytope_from_vertices(body.vertices @ T.T)
    if isinstance(body, Ellipsoid):
        Tinv = np.linalg.inv(T)
        return Ellipsoid(dim=body.dim, center=T @ body.center, shape=Tinv.T @ body.shape @ Tinv)

    # scalar dilation keeps the family structure (and the curvature density)
    lam = T[0, 0]
    if np.allclose(T, lam * np.eye(body.dim), atol=1e-14) and lam > 0:
        return _scale_smooth(body, lam)

    Tt = T.T
    Tinv = np.linalg.inv(T)
    sup = body.support_fn
    rad = body.radial_fn

    def h_new(dirs, sup=sup, Tt=Tt):
        w = dirs @ Tt.T  # rows T^T u
        norms = np.linalg.norm(w, axis=1)
        return norms * sup(w / norms[:, None])

    def rho_new(dirs, rad=rad, Tinv=Tinv):
        w = dirs @ Tinv.T  # rows T^{-1} u
        norms = np.linalg.norm(w, axis=1)
        return rad(w / norms[:, None]) / norms

    return SmoothBody(
        dim=body.dim,
        support_fn=h_new if sup is not None else None,
        radial_fn=rho_new if rad is not None else None,
        family="custom",
        params={"origin_family": body.family},
    )


def _scale_smooth(body: SmoothBody, lam: float) -> SmoothBody:
    n = body.dim
    sup = body.support_fn
    rad = body.radial_fn
    cur = body.curvature_fn
    return SmoothBody(
        dim=n,
        support_fn=(lambda dirs, sup=sup: lam * sup(dirs)) if sup is not None else None,
        radial_fn=(lambda dirs, rad=rad: lam * rad(dirs)) if rad is not None else None,
        curvature_fn=(lambda dirs, cur=cur: lam ** (n - 1) * cur(dirs)) if cur is not None else None,
        family=body.family,
        params={**body.params, "scale": lam * body.params.get("scale", 1.0)},
    )


def scale(body: ConvexBody, lam: float) -> ConvexBody:
    if lam <= 0:
        raise InvalidArgumentError(f"scale factor must be positive, got {lam}")
    return linear_transform(body, lam * np.eye(body.dim))


# ---------------------------------------------------------------------------
# symmetry and centering


def is_origin_symmetric(body: ConvexBody, tol: float = 1e-9) -> bool:
    """True when h(u) == h(-u) within relative tol over probe directions."""
    if isinstance(body, Ellipsoid):
        return body.is_centered
    if isinstance(body, PolytopeV):
        dirs = body.facet_normals
    else:
        dirs = default_quadrature(body.dim).nodes[:512]
    h = support_values(body, dirs)
    hm = support_values(body, -dirs)
    return bool(np.max(np.abs(h - hm) / h) <= tol)


def centroid(body: PolytopeV) -> np.ndarray:
    """Volume centroid via the facet cone decomposition about the origin."""
    if not isinstance(body, PolytopeV):
        raise InvalidArgumentError("centroid is implemented for polytopes")
    hull = ConvexHull(body.vertices)
    pts = body.vertices
    total = 0.0
    acc = np.zeros(body.dim)
    apex = pts.mean(axis=0)
    n = body.dim
    for s in hull.simplices:
        simplex = np.vstack([pts[s], apex])
        e = simplex[:-1] - apex
        vol = abs(np.linalg.det(e)) / math.factorial(n)
        acc += vol * simplex.mean(axis=0)
        total += vol
    return acc / total


# ---------------------------------------------------------------------------
# generators


def cube(n: int, scale: float = 1.0) -> PolytopeV:
    """[-scale, scale]^n."""
    if n < 2 or n > 6:
        raise InvalidArgumentError("cube generator supports 2 <= n <= 6")
    corners = np.array(np.meshgrid(*([[-scale, scale]] * n))).T.reshape(-1, n)
    return polytope_from_vertices(corners)


def cross_polytope(n: int, scale: float = 1.0) -> PolytopeV:
    """conv{+-scale e_i}, the L^1 ball."""
    if n < 2 or n > 6:
        raise InvalidArgumentError("cross_polytope generator supports 2 <= n <= 6")
    return polytope_from_vertices(np.vstack([scale * np.eye(n), -scale * np.eye(n)]))


def regular_simplex(n: int) -> PolytopeV:
    """Regular n-simplex centered at its centroid, inscribed in the unit ball."""
    if n < 2 or n > 6:
        raise InvalidArgumentError("regular_simplex generator supports 2 <= n <= 6")
    A = np.eye(n + 1) - np.full((n + 1, n + 1), 1.0 / (n + 1))
    # orthonormal basis of the centered hyperplane
    _, _, vt = np.linalg.svd(A)
    basis = vt[:n]
    pts = A @ basis.T
    pts *= 1.0 / np.linalg.norm(pts[0])
    return polytope_from_vertices(pts)


def ball(n: int, radius: float = 1.0) -> Ellipsoid:
    if radius <= 0:
        raise InvalidArgumentError("radius must be positive")
    return Ellipsoid(dim=n, center=np.zeros(n), shape=np.eye(n) / radius**2)


def ellipsoid(axes) -> Ellipsoid:
    """Axis-aligned centered ellipsoid with the given semi-axes."""
    axes = np.asarray(axes, dtype=float)
    if axes.ndim != 1 or len(axes) < 2 or np.any(axes <= 0):
        raise InvalidArgumentError("axes must be a vector of >= 2 positive semi-axes")
    n = len(axes)
    return Ellipsoid(dim=n, center=np.zeros(n), shape=np.diag(1.0 / axes**2))


def ellipsoid_from_matrix(shape, center=None) -> Ellipsoid:
    shape = np.asarray(shape, dtype=float)
    n = shape.shape[0]
    if shape.shape != (n, n):
        raise InvalidArgumentError("shape matrix must be square")
    if np.max(np.abs(shape - shape.T)) > 1e-12:
        raise InvalidArgumentError("shape matrix must be symmetric within 1e-12")
    try:
        np.linalg.cholesky(shape)
    except np.linalg.LinAlgError as exc:
        raise InvalidArgumentError("shape matrix must be positive definite") from exc
    c = np.zeros(n) if center is None else np.asarray(center, dtype=float)
    return Ellipsoid(dim=n, center=c, shape=shape)


def _pball_curvature_2d(p: float, scale: float) -> Callable:
    """Closed-form curvature density of the planar p-ball.

    At normal direction (c, s): f = (|c s|)^(-(p-2)/(p-1)) * h^(2(p-2)/(p-1) - 3) / (p - 1),
    singular on the axes for p > 2 (the quadrature grid avoids them).
    """
    q = p / (p - 1.0)
    a = (p - 2.0) / (p - 1.0)

    def f(dirs):
        c = np.abs(dirs[:, 0])
        s = np.abs(dirs[:, 1])
        h = (c**q + s**q) ** (1.0 / q)
        with np.errstate(divide="ignore"):
            val = (c * s) ** (-a) * h ** (2.0 * a - 3.0) / (p - 1.0)
        return scale * val

    return f


def p_ball_smooth(n: int, p: float, scale: float = 1.0) -> SmoothBody:
    """Unit ball of the l_p norm (times scale) for p in (1, inf)."""
    if not (1.0 < p < math.inf):
        raise InvalidArgumentError(f"p must lie in (1, inf), got {p}")
    if scale <= 0:
        raise InvalidArgumentError("scale must be positive")
    q = p / (p - 1.0)

    def h(dirs):
        return scale * np.sum(np.abs(dirs) ** q, axis=1) ** (1.0 / q)

    def rho(dirs):
        return scale * np.sum(np.abs(dirs) ** p, axis=1) ** (-1.0 / p)

    curvature = _pball_curvature_2d(p, scale) if n == 2 else None
    return SmoothBody(
        dim=n,
        support_fn=h,
        radial_fn=rho,
        curvature_fn=curvature,
        family="pball",
        params={"p": p, "scale": scale},
    )


def random_symmetric_polytope(n: int, m: int, seed: int) -> PolytopeV:
    """Hull of +-(m//2) random unit vectors: an origin-symmetric polytope."""
    if m < n + 1:
        raise InvalidArgumentError(f"need m >= dim+1 = {n + 1} vertices, got {m}")
    rng = np.random.default_rng(seed)
    k = max((m + 1) // 2, n)
    pts = rng.standard_normal((k, n))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    return polytope_from_vertices(np.vstack([pts, -pts]))


def random_polytope(n: int, m: int, seed: int) -> PolytopeV:
    """Hull of m random unit vectors, shifted so the volume centroid is the origin."""
    if m < n + 1:
        raise InvalidArgumentError(f"need m >= dim+1 = {n + 1} vertices, got {m}")
    rng = np.random.default_rng(seed)
    for attempt in range(16):
        pts = rng.standard_normal((m, n))
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
        try:
            body = polytope_from_vertices(pts - pts.mean(axis=0))
            c = centroid(body)
            return polytope_from_vertices(body.vertices - c)
        except (OriginNotInteriorError, DegeneracyError):
            continue
    raise DegeneracyError(f"could not draw a valid random polytope (n={n}, m={m}, seed={seed})")


# ---------------------------------------------------------------------------
# descriptors and the JSON body spec


def describe(body: ConvexBody) -> str:
    if isinstance(body, PolytopeV):
        return f"polytope-v[n={body.dim},m={len(body.vertices)}]"
    if isinstance(body, Ellipsoid):
        axes = np.sort(1.0 / np.sqrt(np.linalg.eigvalsh(body.shape)))[::-1]
        tag = "" if body.is_centered else ",off-center"
        return f"ellipsoid[n={body.dim},axes={np.round(axes, 6).tolist()}{tag}]"
    bits = [f"n={body.dim}"]
    if body.family == "pball":
        bits.append(f"p={body.params['p']}")
    return f"{body.family}[{','.join(bits)}]"


_NAMED = {"cube": cube, "cross": cross_polytope, "ball": ball}


def body_from_spec(spec: dict) -> ConvexBody:
    """Build a body from the JSON body schema.

    {"type": "polytope-v"|"ellipsoid"|"pball"|"named", "dim": n,
     "vertices": [[...]], "shape": [[...]], "center": [...], "p": r,
     "name": "cube|cross|simplex|ball", "scale": r}
    """
    if not isinstance(spec, dict):
        raise InvalidArgumentError(f"body spec must be an object, got {type(spec).__name__}")
    kind = spec.get("type")
    try:
        if kind == "polytope-v":
            return polytope_from_vertices(spec["vertices"])
        if kind == "ellipsoid":
            return ellipsoid_from_matrix(spec["shape"], spec.get("center"))
        if kind == "pball":
            return p_ball_smooth(int(spec["dim"]), float(spec["p"]), float(spec.get("scale", 1.0)))
        if kind == "named":
            name = spec.get("name")
            dim = int(spec["dim"])
            s = float(spec.get("scale", 1.0))
            if name == "simplex":
                body = regular_simplex(dim)
                return scale(body, s) if s != 1.0 else body
            if name in _NAMED:
                return _NAMED[name](dim, s)
            raise InvalidArgumentError(f"unknown named body {name!r}")
    except KeyError as exc:
        raise InvalidArgumentError(f"body spec missing field {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise InvalidArgumentError(f"malformed body spec: {exc}") from exc
    raise InvalidArgumentError(f"unknown body type {kind!r}")
