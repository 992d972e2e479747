"""Compiled kernels for the many tiny dense systems of the collision phase.

``numpy.linalg.solve`` pays a per-matrix dispatch cost that dominates for the
3x3 to 12x12 point-local systems of the solver. These kernels run a Gaussian
elimination with partial pivoting per point instead.
"""

from __future__ import annotations

import numba
import numpy as np

from .errors import NumericalError


@numba.njit(cache=True, fastmath=True, error_model="numpy")
def _gauss(A, B, X):
    """Solve ``A X = B`` in place (A and B are overwritten). Returns False if singular."""
    m = A.shape[0]
    r = B.shape[1]
    for c in range(m):
        p = c
        best = abs(A[c, c])
        for q in range(c + 1, m):
            v = abs(A[q, c])
            if v > best:
                best = v
                p = q
        if best == 0.0:
            return False
        if p != c:
            for j in range(m):
                tmp = A[c, j]
                A[c, j] = A[p, j]
                A[p, j] = tmp
            for j in range(r):
                tmp = B[c, j]
                B[c, j] = B[p, j]
                B[p, j] = tmp
        inv = 1.0 / A[c, c]
        for q in range(c + 1, m):
            f = A[q, c] * inv
            for j in range(c + 1, m):
                A[q, j] -= f * A[c, j]
            for j in range(r):
                B[q, j] -= f * B[c, j]
    for c in range(m - 1, -1, -1):
        for j in range(r):
            s = B[c, j]
            for q in range(c + 1, m):
                s -= A[c, q] * X[q, j]
            X[c, j] = s / A[c, c]
    return True


@numba.njit(cache=True, fastmath=True, error_model="numpy")
def _solve_kernel(K, R, X):
    n, m, _ = K.shape
    A = np.empty((m, m))
    B = np.empty((m, R.shape[2]))
    for i in range(n):
        A[:, :] = K[i]
        B[:, :] = R[i]
        if not _gauss(A, B, X[i]):
            return i
    return -1


def batched_solve(K, R):
    """Solve ``K[i] X[i] = R[i]`` for stacks ``K`` (n, m, m) and ``R`` (n, m, r)."""
    K = np.ascontiguousarray(K, dtype=float)
    R = np.ascontiguousarray(R, dtype=float)
    X = np.empty_like(R)
    bad = _solve_kernel(K, R, X)
    if bad >= 0:
        raise NumericalError(f"singular local system at point {bad}")
    return X


@numba.njit(cache=True, fastmath=True, error_model="numpy")
def _collision_kernel(J, D, R, M, A, dt, a2, out):
    s, n, p, _ = J.shape
    m = s * p
    X = np.empty((p, p))
    Tt = np.empty((p, p))
    Dt = np.empty((p, p))
    T = np.empty((s, p, p))
    K = np.empty((m, m))
    B = np.empty((m, 2))
    G = np.empty((m, 2))
    dtA = dt * A
    for i in range(n):
        for j in range(s):
            # X^T T^T = D^T with X = a^2 I - J^2.
            for r in range(p):
                for c in range(p):
                    acc = 0.0
                    for q in range(p):
                        acc += J[j, i, c, q] * J[j, i, q, r]
                    X[r, c] = -acc
                    Dt[r, c] = D[j, i, c, r]
                X[r, r] += a2
            if not _gauss(X, Dt, Tt):
                return i
            for r in range(p):
                for c in range(p):
                    T[j, r, c] = Tt[c, r]
        K[:, :] = 0.0
        for j in range(s):
            for k in range(s):
                for r in range(p):
                    K[j * p + r, k * p + r] = dtA[j, k]
            for r in range(p):
                for c in range(p):
                    K[j * p + r, j * p + c] += T[j, r, c]
                for w in range(2):
                    B[j * p + r, w] = R[j, w, r, i]
        if not _gauss(K, B, G):
            return i
        for j in range(s):
            for w in range(2):
                for r in range(p):
                    acc = M[j, w, r, i]
                    for c in range(p):
                        acc += T[j, r, c] * G[j * p + c, w]
                    out[j, w, r, i] = acc
    return -1


def collision_update(J, D, R, M, A, dt, a):
    """Relax sub-node populations toward their Maxwellians.

    ``J`` and ``D`` hold the flux Jacobian and diffusion matrix at each
    sub-node state, shape ``(s, n, p, p)``; ``R = B - M`` and ``M`` have shape
    ``(s, 2, p, n)``. Returns ``M + T G`` where ``G`` solves
    ``(blockdiag(T_j) + dt A (x) I) G = R`` and ``T = D (a^2 I - J^2)^{-1}``.
    """
    out = np.empty_like(M)
    bad = _collision_kernel(
        np.ascontiguousarray(J, dtype=float),
        np.ascontiguousarray(D, dtype=float),
        np.ascontiguousarray(R, dtype=float),
        np.ascontiguousarray(M, dtype=float),
        np.ascontiguousarray(A, dtype=float),
        float(dt),
        float(a) ** 2,
        out,
    )
    if bad >= 0:
        raise NumericalError(f"singular collision system at point {bad}")
    return out
