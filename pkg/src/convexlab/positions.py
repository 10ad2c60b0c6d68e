"""SL(n) position optimization of the mean-width functional and the
elongating-ellipsoid degeneracy experiment.

The search runs in the traceless-matrix chart A -> exp(A) of SL(n)
(n^2 - 1 coordinates), with a seeded multi-restart derivative-free
simplex-reflection (Nelder-Mead) ascent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize

from . import bodies, functionals
from .bodies import ConvexBody
from .errors import InvalidArgumentError
from .sphere import DEFAULT_SEED, default_quadrature, unit_ball_volume

SEARCH_RADIUS = 3.0


def traceless_basis(n: int) -> list[np.ndarray]:
    """Basis of the traceless n x n matrices: off-diagonal units plus
    diag(e_k) - diag(e_n) for k < n."""
    basis = []
    for i in range(n):
        for j in range(n):
            if i != j:
                B = np.zeros((n, n))
                B[i, j] = 1.0
                basis.append(B)
    for k in range(n - 1):
        B = np.zeros((n, n))
        B[k, k] = 1.0
        B[n - 1, n - 1] = -1.0
        basis.append(B)
    return basis


def _coords_to_matrix(x: np.ndarray, basis) -> np.ndarray:
    A = np.zeros_like(basis[0])
    for c, B in zip(x, basis):
        A += c * B
    return A


def sl_exp(A) -> np.ndarray:
    """Matrix exponential of a traceless matrix; det(exp A) = 1."""
    A = np.asarray(A, dtype=float)
    if abs(np.trace(A)) > 1e-12:
        raise InvalidArgumentError(f"matrix must be traceless, trace = {np.trace(A):.3e}")
    return expm(A)


@dataclass(frozen=True)
class PositionResult:
    body: str
    dim: int
    T_star: np.ndarray
    M_star: float
    omega_M: float
    volume_product: float
    restarts: int
    evaluations: int
    best_per_restart: tuple
    seed: int
    flags: tuple = ()

    def to_json(self) -> dict:
        return {
            "body": self.body,
            "dim": self.dim,
            "T_star": self.T_star.tolist(),
            "M_star": self.M_star,
            "omega_M": self.omega_M,
            "volume_product": self.volume_product,
            "restarts": self.restarts,
            "evaluations": self.evaluations,
            "best_per_restart": list(self.best_per_restart),
            "seed": self.seed,
            "flags": list(self.flags),
        }


def optimize_M(
    K: ConvexBody,
    restarts: int = 8,
    seed: int = DEFAULT_SEED,
    quadrature=None,
) -> PositionResult:
    """Maximize T -> M(K, T) over SL(n) via the exponential chart.

    The returned M_star is a certified lower bound on the true maximum
    (it is an evaluated value), is >= M(K, I), and satisfies the
    volume-product upper bound omega_n * M_star <= Vol(K) Vol(K*).
    """
    n = K.dim
    basis = traceless_basis(n)
    d = len(basis)
    q = quadrature if quadrature is not None else default_quadrature(n)
    rng = np.random.default_rng(seed)
    evals = 0

    def m_of(x):
        return functionals.M_functional(K, sl_exp(_coords_to_matrix(x, basis)), q)

    def objective(x):
        nonlocal evals
        evals += 1
        if np.linalg.norm(x) > SEARCH_RADIUS:
            return np.inf
        try:
            return -m_of(x)
        except (InvalidArgumentError, FloatingPointError):
            return np.inf

    best_x = np.zeros(d)
    best_m = m_of(best_x)  # identity position is always a candidate
    evals += 1
    per_restart = []
    stagnant = 0
    for r in range(restarts):
        if r == 0:
            x0 = np.zeros(d)
        else:
            # re-center at the incumbent with a seeded perturbation
            x0 = best_x + rng.uniform(-0.5, 0.5, size=d)
        res = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={"maxfev": 400 * d, "xatol": 1e-8, "fatol": 1e-12},
        )
        m_r = -res.fun if np.isfinite(res.fun) else -np.inf
        per_restart.append(m_r)
        if m_r > best_m + 1e-12:
            best_m = m_r
            best_x = res.x
            stagnant = 0
        else:
            stagnant += 1

    flags = []
    if stagnant >= restarts:
        flags.append("low-confidence")

    T_star = sl_exp(_coords_to_matrix(best_x, basis))
    vp = functionals.volume_product(K, q)
    omega = unit_ball_volume(n)
    return PositionResult(
        body=bodies.describe(K),
        dim=n,
        T_star=T_star,
        M_star=best_m,
        omega_M=omega * best_m,
        volume_product=vp,
        restarts=restarts,
        evaluations=evals,
        best_per_restart=tuple(per_restart),
        seed=seed,
        flags=tuple(flags),
    )


def degeneracy_experiment(n: int, aspects, seed: int = DEFAULT_SEED) -> list[tuple[float, float]]:
    """M at the identity for fixed-volume ellipsoids of growing aspect ratio.

    K_a has semi-axes (a, 1/a, 1, ..., 1); the sequence decreases to 0 as
    the major axis elongates.
    """
    aspects = [float(a) for a in aspects]
    if any(a < 1.0 for a in aspects):
        raise InvalidArgumentError("aspects must be >= 1")
    q = default_quadrature(n)
    rows = []
    for a in aspects:
        axes = np.ones(n)
        axes[0] = a
        axes[1] = 1.0 / a
        K = bodies.ellipsoid(axes)
        rows.append((a, functionals.M_functional(K, None, q)))
    return rows


def isotropic_probe(K: ConvexBody, T=None, quadrature=None) -> dict:
    """Direction-moment matrix integral u u^T h_{TK}(u)^2 dmu and its
    Frobenius deviation from a scalar matrix.  Exploratory output only."""
    n = K.dim
    q = quadrature if quadrature is not None else default_quadrature(n)
    body = K if T is None else bodies.linear_transform(K, np.asarray(T, dtype=float))
    h = bodies.support_values(body, q.nodes)
    moment = np.einsum("i,ij,ik->jk", q.weights * h * h, q.nodes, q.nodes)
    scalar = np.trace(moment) / n
    deviation = float(np.linalg.norm(moment - scalar * np.eye(n)))
    return {
        "body": bodies.describe(K),
        "dim": n,
        "moment": moment.tolist(),
        "scalar_part": scalar,
        "deviation": deviation,
        "relative_deviation": deviation / scalar,
    }
