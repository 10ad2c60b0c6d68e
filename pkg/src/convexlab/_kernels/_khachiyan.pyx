# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled Khachiyan/Wolfe-Atwood weight iteration (hot kernel).

Mirrors convexlab._kernels._fallback.khachiyan_weights: barycentric
coordinate ascent with away steps, Sherman-Morrison updates, periodic
refresh.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"

cdef double ACTIVE_FLOOR = 1e-12


def _refresh(cnp.ndarray[double, ndim=2] Q, cnp.ndarray[double, ndim=1] u):
    V = (Q * u[:, None]).T @ Q
    A = np.linalg.inv(V)
    M = np.einsum("ij,jk,ik->i", Q, A, Q)
    return np.ascontiguousarray(A), np.ascontiguousarray(M)


def khachiyan_weights(Q_in, double eps, long max_iter):
    """Same contract as the pure-python fallback: returns (u, iterations, residual)."""
    cdef cnp.ndarray[double, ndim=2] Q = np.ascontiguousarray(np.asarray(Q_in, dtype=np.float64))
    if not Q.flags.writeable:
        Q = Q.copy()
    cdef Py_ssize_t N = Q.shape[0]
    cdef Py_ssize_t D = Q.shape[1]
    cdef cnp.ndarray[double, ndim=1] u = np.full(N, 1.0 / N)
    cdef cnp.ndarray[double, ndim=2] A
    cdef cnp.ndarray[double, ndim=1] M
    cdef cnp.ndarray[double, ndim=1] w = np.empty(D)
    cdef double[:, ::1] Qv = Q
    cdef double[::1] uv = u
    cdef double[:, ::1] Av
    cdef double[::1] Mv
    cdef double[::1] wv = w
    cdef Py_ssize_t it = 0, i, j, k, k_plus, k_minus
    cdef long refresh_every = 16 * D
    cdef double kappa, kappa_plus, kappa_minus, residual, eps_minus
    cdef double beta, beta_floor, denom, scale_a, ci, acc

    A, M = _refresh(Q, u)
    Av = A
    Mv = M

    while it < max_iter:
        k_plus = 0
        kappa_plus = Mv[0]
        k_minus = -1
        kappa_minus = 0.0
        for i in range(N):
            if Mv[i] > kappa_plus:
                kappa_plus = Mv[i]
                k_plus = i
            if uv[i] > ACTIVE_FLOOR and (k_minus < 0 or Mv[i] < kappa_minus):
                kappa_minus = Mv[i]
                k_minus = i
        residual = (kappa_plus - D) / D
        if residual <= eps:
            return u, it, residual
        eps_minus = (D - kappa_minus) / D

        if residual >= eps_minus:
            k = k_plus
            kappa = kappa_plus
            beta = (kappa - D) / (D * (kappa - 1.0))
        else:
            k = k_minus
            kappa = kappa_minus
            beta = (kappa - D) / (D * (kappa - 1.0))  # negative: away step
            beta_floor = -uv[k] / (1.0 - uv[k])
            if beta < beta_floor:
                beta = beta_floor

        for i in range(N):
            uv[i] *= 1.0 - beta
        uv[k] += beta
        it += 1
        if it % refresh_every == 0:
            A, M = _refresh(Q, u)
            Av = A
            Mv = M
            continue
        # w = A q_k
        for i in range(D):
            acc = 0.0
            for j in range(D):
                acc += Av[i, j] * Qv[k, j]
            wv[i] = acc
        denom = 1.0 - beta + beta * kappa
        scale_a = beta / denom
        for i in range(D):
            for j in range(D):
                Av[i, j] = (Av[i, j] - scale_a * wv[i] * wv[j]) / (1.0 - beta)
        for i in range(N):
            ci = 0.0
            for j in range(D):
                ci += Qv[i, j] * wv[j]
            Mv[i] = (Mv[i] - scale_a * ci * ci) / (1.0 - beta)

    _, M = _refresh(Q, u)
    residual = (float(np.max(M)) - D) / D
    return u, it, residual
