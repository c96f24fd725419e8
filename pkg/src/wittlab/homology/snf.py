"""Integer matrices and Smith normal form.

Matrices are numpy arrays of dtype=object holding Python ints, so entries
never overflow and zero-sized shapes behave.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

__all__ = ["imatrix", "identity", "zeros", "is_zero", "det", "is_unimodular", "smith_normal_form", "SNF"]


def imatrix(rows: Sequence[Sequence[int]] | np.ndarray, shape: tuple[int, int] | None = None) -> np.ndarray:
    if isinstance(rows, np.ndarray) and rows.ndim == 2:
        out = np.empty(rows.shape, dtype=object)
        for idx, v in np.ndenumerate(rows):
            out[idx] = int(v)
        return out
    rows = [list(r) for r in rows]
    if shape is None:
        shape = (len(rows), len(rows[0]) if rows else 0)
    out = np.zeros(shape, dtype=object)
    if len(rows) != shape[0] or any(len(r) != shape[1] for r in rows):
        raise ValueError(f"matrix rows do not match shape {shape}")
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            out[i, j] = int(v)
    return out


def zeros(r: int, c: int) -> np.ndarray:
    out = np.empty((r, c), dtype=object)
    out.fill(0)
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = 1
    return out


def is_zero(M: np.ndarray) -> bool:
    return all(v == 0 for v in M.flat)


def det(M: np.ndarray) -> int:
    """Fraction-free (Bareiss) determinant."""
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("det needs a square matrix")
    if n == 0:
        return 1
    A = [[int(v) for v in row] for row in M.tolist()]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def is_unimodular(M: np.ndarray) -> bool:
    return M.shape[0] == M.shape[1] and abs(det(M)) == 1


class SNF:
    """Result of `smith_normal_form`: M = U @ D @ V.

    ``Uinv`` and ``Vinv`` are the inverses (P and Q with P M Q = D).
    """

    def __init__(self, U, D, V, Uinv, Vinv):
        self.U, self.D, self.V = U, D, V
        self.Uinv, self.Vinv = Uinv, Vinv

    def __iter__(self):
        return iter((self.U, self.D, self.V))

    @property
    def diagonal(self) -> list[int]:
        k = min(self.D.shape)
        return [int(self.D[i, i]) for i in range(k)]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def invariant_factors(self) -> list[int]:
        return [d for d in self.diagonal if d != 0]


def smith_normal_form(M: np.ndarray | Sequence[Sequence[int]]) -> SNF:
    """M = U D V with U, V unimodular, D diagonal, d_1 | d_2 | ..., d_i >= 0."""
    if not isinstance(M, np.ndarray):
        M = imatrix(M)
    m, n = M.shape
    A = [[int(v) for v in row] for row in M.tolist()] if m and n else [[0] * n for _ in range(m)]
    P = [[int(i == j) for j in range(m)] for i in range(m)]
    Pinv = [row[:] for row in P]
    Q = [[int(i == j) for j in range(n)] for i in range(n)]
    Qinv = [row[:] for row in Q]

    # Invariant throughout: P @ M @ Q == A, with Pinv, Qinv the inverses.
    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            P[i], P[j] = P[j], P[i]
            for row in Pinv:
                row[i], row[j] = row[j], row[i]

    def add_row(i, j, c):  # row_i += c row_j
        if c:
            Ai, Aj = A[i], A[j]
            for k in range(n):
                Ai[k] += c * Aj[k]
            Pi, Pj = P[i], P[j]
            for k in range(m):
                Pi[k] += c * Pj[k]
            for row in Pinv:
                row[j] -= c * row[i]

    def neg_row(i):
        A[i] = [-v for v in A[i]]
        P[i] = [-v for v in P[i]]
        for row in Pinv:
            row[i] = -row[i]

    def swap_cols(i, j):
        if i != j:
            for row in A:
                row[i], row[j] = row[j], row[i]
            for row in Q:
                row[i], row[j] = row[j], row[i]
            Qinv[i], Qinv[j] = Qinv[j], Qinv[i]

    def add_col(j, i, c):  # col_j += c col_i
        if c:
            for row in A:
                row[j] += c * row[i]
            for row in Q:
                row[j] += c * row[i]
            Qi, Qj = Qinv[i], Qinv[j]
            for k in range(n):
                Qi[k] -= c * Qj[k]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            pending = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
            pending += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
            if pending:
                _, i, j = min(pending)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            neg_row(t)
        t += 1

    D = imatrix(A, (m, n))
    return SNF(imatrix(Pinv, (m, m)), D, imatrix(Qinv, (n, n)), imatrix(P, (m, m)), imatrix(Q, (n, n)))
