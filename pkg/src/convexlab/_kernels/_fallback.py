"""Pure-numpy Khachiyan/Wolfe-Atwood weight iteration (fallback kernel).

Same algorithm as the Cython extension: barycentric coordinate ascent with
away steps, rank-one (Sherman-Morrison) updates of the inverse scatter
matrix and of the per-point Mahalanobis values, refreshed from scratch
periodically to bound floating-point drift.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

ACTIVE_FLOOR = 1e-12


def _refresh(Q: np.ndarray, u: np.ndarray):
    V = (Q * u[:, None]).T @ Q
    A = np.linalg.inv(V)
    M = np.einsum("ij,jk,ik->i", Q, A, Q)
    return A, M


def khachiyan_weights(Q: np.ndarray, eps: float, max_iter: int):
    """Iterate the Khachiyan update with away steps on design matrix Q (N x D).

    Returns (u, iterations, residual) where u are the barycentric weights
    and residual = (max_j M_j - D) / D with M_j = q_j^T V^{-1} q_j,
    V = Q^T diag(u) Q.  Convergence means residual <= eps.
    """
    Q = np.ascontiguousarray(Q, dtype=float)
    N, D = Q.shape
    u = np.full(N, 1.0 / N)
    A, M = _refresh(Q, u)
    refresh_every = 16 * D
    it = 0
    while it < max_iter:
        k_plus = int(np.argmax(M))
        kappa_plus = M[k_plus]
        residual = (kappa_plus - D) / D
        if residual <= eps:
            return u, it, float(residual)

        active = u > ACTIVE_FLOOR
        m_active = np.where(active, M, np.inf)
        k_minus = int(np.argmin(m_active))
        eps_minus = (D - M[k_minus]) / D

        if residual >= eps_minus:
            k = k_plus
            kappa = kappa_plus
            beta = (kappa - D) / (D * (kappa - 1.0))
        else:
            k = k_minus
            kappa = M[k_minus]
            beta = (kappa - D) / (D * (kappa - 1.0))  # negative: away step
            beta = max(beta, -u[k] / (1.0 - u[k]))

        u *= 1.0 - beta
        u[k] += beta
        it += 1
        if it % refresh_every == 0:
            A, M = _refresh(Q, u)
            continue
        # Sherman-Morrison update of A = V^{-1} and of M under
        # V' = (1 - beta) V + beta q_k q_k^T
        w = A @ Q[k]
        denom = 1.0 - beta + beta * kappa
        c = Q @ w
        A = (A - (beta / denom) * np.outer(w, w)) / (1.0 - beta)
        M = (M - (beta / denom) * c * c) / (1.0 - beta)

    _, M = _refresh(Q, u)
    residual = (float(np.max(M)) - D) / D
    return u, it, residual
