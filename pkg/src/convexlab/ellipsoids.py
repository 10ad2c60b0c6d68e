"""Loewner ellipsoids, exterior volume ratios, John containment, and the
evr-based lower bounds on the volume product with their explicit constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bodies, functionals
from ._kernels import khachiyan_weights
from .bodies import ConvexBody, Ellipsoid, PolytopeV, SmoothBody, support_values
from .errors import ConvergenceError, DegeneracyError, InvalidArgumentError
from .records import EXACT_TOL, InequalityRecord, quadrature_tolerance
from .sphere import default_quadrature, unit_ball_volume

MVEE_EPS = 1e-7
MVEE_MAX_ITER = 100_000
MVEE_SAMPLE_CAP = 4096


@dataclass(frozen=True)
class MveeInfo:
    iterations: int
    residual: float


@dataclass(frozen=True)
class EvrResult:
    body: str
    dim: int
    loewner: Ellipsoid
    evr: float
    iterations: int
    residual: float
    flags: tuple = ()

    def to_json(self) -> dict:
        return {
            "body": self.body,
            "dim": self.dim,
            "evr": self.evr,
            "loewner_center": self.loewner.center.tolist(),
            "loewner_shape": self.loewner.shape.tolist(),
            "iterations": self.iterations,
            "kkt_residual": self.residual,
            "flags": list(self.flags),
        }


def mvee(
    points,
    eps: float = MVEE_EPS,
    symmetric: bool = False,
    max_iter: int = MVEE_MAX_ITER,
) -> tuple[Ellipsoid, MveeInfo]:
    """Minimum-volume enclosing ellipsoid of a point set (Khachiyan iteration).

    With symmetric=True the center is pinned at the origin and the result
    encloses +-points.  Termination certificate: the dual weights satisfy
    max_j q_j^T V^{-1} q_j <= (1 + eps) * D.
    """
    P = np.atleast_2d(np.array(points, dtype=float))  # copy: kernel needs a writable buffer
    N, d = P.shape
    need = d if symmetric else d + 1
    if N < need:
        raise DegeneracyError(f"MVEE needs at least {need} points in R^{d}, got {N}")

    Q = P if symmetric else np.hstack([P, np.ones((N, 1))])
    try:
        u, iterations, residual = khachiyan_weights(Q, eps, max_iter)
    except np.linalg.LinAlgError as exc:
        raise DegeneracyError(f"degenerate point set in MVEE: {exc}") from exc
    if residual > eps:
        raise ConvergenceError(
            f"MVEE hit the iteration cap ({max_iter}) at residual {residual:.3e}",
            residual=residual,
        )

    if symmetric:
        V = (P * u[:, None]).T @ P
        try:
            A = np.linalg.inv(V) / d
        except np.linalg.LinAlgError as exc:
            raise DegeneracyError(f"degenerate scatter matrix in MVEE: {exc}") from exc
        center = np.zeros(d)
    else:
        center = P.T @ u
        S = (P * u[:, None]).T @ P - np.outer(center, center)
        try:
            A = np.linalg.inv(S) / d
        except np.linalg.LinAlgError as exc:
            raise DegeneracyError(f"degenerate scatter matrix in MVEE: {exc}") from exc
    A = 0.5 * (A + A.T)
    return Ellipsoid(dim=d, center=center, shape=A), MveeInfo(iterations, residual)


def _boundary_points(body: SmoothBody, cap: int = MVEE_SAMPLE_CAP) -> np.ndarray:
    q = default_quadrature(body.dim)
    nodes = q.nodes
    if len(nodes) > cap:
        nodes = nodes[:: len(nodes) // cap]
    rho = bodies.radial_values(body, nodes)
    return rho[:, None] * nodes


def loewner_ellipsoid(
    K: ConvexBody, eps: float = MVEE_EPS
) -> tuple[Ellipsoid, MveeInfo]:
    """Minimum-volume enclosing ellipsoid of a body.

    Ellipsoids are their own Loewner ellipsoid (exact shortcut); polytopes
    feed their vertices to mvee; smooth bodies feed boundary samples.
    Origin-symmetric inputs use the center-pinned symmetric iteration.
    """
    if isinstance(K, Ellipsoid):
        return K, MveeInfo(0, 0.0)
    if isinstance(K, PolytopeV):
        pts = K.vertices
    else:
        pts = _boundary_points(K)
    symmetric = bodies.is_origin_symmetric(K)
    return mvee(pts, eps=eps, symmetric=symmetric)


def exterior_volume_ratio(K: ConvexBody, eps: float = MVEE_EPS) -> EvrResult:
    """evr(K) = (Vol K / Vol Loewner(K))^{1/n}, in (0, 1]."""
    E, info = loewner_ellipsoid(K, eps)
    n = K.dim
    evr = (bodies.volume(K) / bodies.volume(E)) ** (1.0 / n)
    flags = ()
    if np.linalg.norm(E.center) > 1e-6:
        flags = ("loewner-center-offset",)
    return EvrResult(
        body=bodies.describe(K),
        dim=n,
        loewner=E,
        evr=float(evr),
        iterations=info.iterations,
        residual=info.residual,
        flags=flags,
    )


def john_containment_check(K: ConvexBody, eps: float = MVEE_EPS) -> InequalityRecord:
    """John's theorem: (1/n) E_L (shrunk about its center) inside K inside E_L.

    Verified by support dominance over probe directions; lhs is the worst
    margin over both inclusions (nonnegative iff both hold).
    """
    E, _ = loewner_ellipsoid(K, eps)
    n = K.dim
    if isinstance(K, PolytopeV):
        probes = np.vstack([K.facet_normals, default_quadrature(n).nodes[:512]])
        outer_pts = K.vertices
    elif isinstance(K, Ellipsoid):
        probes = default_quadrature(n).nodes[:2048]
        outer_pts = None  # E == K exactly
    else:
        probes = default_quadrature(n).nodes[:2048]
        outer_pts = _boundary_points(K)
    scale = float(np.max(support_values(E, probes)))
    # outer inclusion on the points the enclosing ellipsoid was built from
    if outer_pts is None:
        outer_margin = 0.0
    else:
        diffs = outer_pts - E.center
        mahal = np.sqrt(np.einsum("ij,jk,ik->i", diffs, E.shape, diffs))
        outer_margin = float((1.0 - np.max(mahal)) * scale)
    # inner ellipsoid: E shrunk by 1/n about its own center
    inner = Ellipsoid(dim=n, center=E.center / n, shape=E.shape * n**2)
    h_k = support_values(K, probes)
    h_inner = support_values(inner, probes)
    inner_margin = float(np.min(h_k - h_inner))
    tol = 1e-6 * scale
    return InequalityRecord(
        name="john-containment",
        dim=n,
        lhs=min(outer_margin, inner_margin),
        rhs=0.0,
        tolerance=tol,
        body=bodies.describe(K),
        flags=(f"outer_margin={outer_margin:.6e}", f"inner_margin={inner_margin:.6e}"),
    )


def barthe_constants(n: int) -> tuple[float, float]:
    """The two explicit lower-bound constants, already multiplied by omega_n^2.

    sym_bound     = [2^n Gamma(n/2+1) / (n! pi^{n/2})] * omega_n^2 = 2^n omega_n / n!
    general_bound = [(n+1)^{(n+1)/2} Gamma(n/2+1) / (n! (n pi)^{n/2})] * omega_n^2
    """
    if n < 2 or n > 20:
        raise InvalidArgumentError(f"constants are provided for 2 <= n <= 20, got {n}")
    omega = unit_ball_volume(n)
    log_fact = math.lgamma(n + 1.0)
    sym = math.exp(n * math.log(2.0) + math.log(omega) - log_fact)
    log_gen = (
        0.5 * (n + 1.0) * math.log(n + 1.0)
        + math.lgamma(0.5 * n + 1.0)
        - log_fact
        - 0.5 * n * math.log(n * math.pi)
        + 2.0 * math.log(omega)
    )
    return sym, math.exp(log_gen)


def _sqrtm_spd(A: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(A)
    if np.min(vals) <= 0:
        raise DegeneracyError("shape matrix not positive definite")
    return (vecs * np.sqrt(vals)) @ vecs.T


def theorem11_check(K: ConvexBody, eps: float = MVEE_EPS) -> InequalityRecord:
    """evr-based lower bound on the volume product:

    Vol(K) Vol(K*) > max{evr^n(K), evr^n(K*)} * omega_n^2.

    Follows the proof path: K is first mapped by the linear transform that
    sends its Loewner ellipsoid to the unit ball, after which
    evr^n(K) = Vol(TK)/omega_n.  A Loewner center away from the origin is
    flagged, not silently translated.
    """
    n = K.dim
    omega = unit_ball_volume(n)
    E, _ = loewner_ellipsoid(K, eps)
    flags = []
    center_norm = float(np.linalg.norm(E.center))
    if center_norm > 1e-6:
        flags.append(f"loewner-center-offset={center_norm:.3e}")
    T = _sqrtm_spd(E.shape)
    K1 = bodies.linear_transform(K, T)
    evr_k_n = bodies.volume(K1) / omega
    evr_polar = exterior_volume_ratio(bodies.polar(K1), eps)
    evr_ko_n = evr_polar.evr**n

    lhs = functionals.volume_product(K)
    rhs = max(evr_k_n, evr_ko_n) * omega**2
    sym, gen = barthe_constants(n)
    flags.append(f"universal_sym={sym!r}")
    flags.append(f"universal_gen={gen!r}")
    exact = isinstance(K, (PolytopeV,)) or (isinstance(K, Ellipsoid) and K.is_centered)
    tol = EXACT_TOL if exact and n <= 3 else quadrature_tolerance(rhs)
    if abs(lhs - rhs) <= tol:
        flags.append("equality-boundary")
    return InequalityRecord(
        name="volume-product-evr-bound",
        dim=n,
        lhs=lhs,
        rhs=rhs,
        tolerance=tol,
        body=bodies.describe(K),
        flags=tuple(flags),
    )
