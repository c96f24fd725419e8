"""Independent reference computations used by the tests.

Nothing here calls the package's Smith normal form, series factoring or
Witt arithmetic. Homology comes from rational ranks plus determinantal
divisors; Witt arithmetic over Z from ghost components with exact division.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import gcd

# ---- dense integer linear algebra ---------------------------------------------


def rank_q(rows: list[list[int]]) -> int:
    A = [[Fraction(v) for v in r] for r in rows]
    if not A or not A[0]:
        return 0
    rank, ncols = 0, len(A[0])
    for c in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for i in range(len(A)):
            if i != rank and A[i][c] != 0:
                f = A[i][c] / A[rank][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[rank])]
        rank += 1
    return rank


def det_q(M: list[list[int]]) -> int:
    n = len(M)
    A = [[Fraction(v) for v in r] for r in M]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return int(det)


def invariant_factors(rows: list[list[int]]) -> list[int]:
    """d_k / d_{k-1}, with d_k the gcd of all k x k minors."""
    r = rank_q(rows)
    if r == 0:
        return []
    m, n = len(rows), len(rows[0])
    ds = [1]
    for k in range(1, r + 1):
        g = 0
        for I in itertools.combinations(range(m), k):
            for J in itertools.combinations(range(n), k):
                g = gcd(g, det_q([[rows[i][j] for j in J] for i in I]))
                if g == ds[-1]:  # d_{k-1} divides d_k, so this is the minimum
                    break
            if g == ds[-1]:
                break
        ds.append(abs(g))
    return [ds[k] // ds[k - 1] for k in range(1, r + 1)]


def brute_homology(ranks: list[int], mats: list[list[list[int]]]) -> list[tuple[int, tuple[int, ...]]]:
    """[(free rank, torsion)] for C_0 <- C_1 <- ...; mats[k] is d_{k+1}."""
    rk = [0] + [rank_q(M) if ranks[k] and ranks[k + 1] else 0 for k, M in enumerate(mats)] + [0]
    out = []
    for n, c in enumerate(ranks):
        free = c - rk[n] - rk[n + 1]
        tors: tuple[int, ...] = ()
        if n < len(mats) and ranks[n] and ranks[n + 1]:
            tors = tuple(d for d in invariant_factors(mats[n]) if d > 1)
        out.append((free, tors))
    return out


# ---- random complexes ------------------------------------------------------------


def _matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A] if A and B and B[0] else \
        [[0] * (len(B[0]) if B else 0) for _ in A]


def _unimodular(n, rng, steps):
    G = [[int(i == j) for j in range(n)] for i in range(n)]
    Ginv = [row[:] for row in G]
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        c = rng.choice((-1, 1))
        for row in G:
            row[j] += c * row[i]
        Ginv[i] = [a - c * b for a, b in zip(Ginv[i], Ginv[j])]
    return G, Ginv


def random_complex(rng: random.Random, max_rank: int = 8, max_len: int = 3, bound: int = 5):
    """A complex with entries in [-bound, bound] and its designed homology.

    Direct sum of pieces Z -k-> Z and lone Z's, in a random basis per level;
    draws with an entry outside the bound are rejected and redrawn.
    """
    while True:
        top = rng.randint(1, max_len)
        ranks = [0] * (top + 1)
        pieces = []  # (degree of source, multiplier) or (degree, None)
        for _ in range(rng.randint(1, 2 * max_rank)):
            n = rng.randint(0, top)
            if n >= 1 and rng.random() < 0.6:
                if ranks[n] < max_rank and ranks[n - 1] < max_rank:
                    k = rng.choice((1, 1, 2, 3, 4, 5, -2, 6))
                    pieces.append((n, k, ranks[n], ranks[n - 1]))
                    ranks[n] += 1
                    ranks[n - 1] += 1
            elif ranks[n] < max_rank:
                pieces.append((n, None, ranks[n], None))
                ranks[n] += 1
        if sum(ranks) == 0:
            continue
        D = [[[0] * ranks[n] for _ in range(ranks[n - 1])] for n in range(1, top + 1)]
        for n, k, col, row in pieces:
            if k is not None:
                D[n - 1][row][col] = k
        G = [_unimodular(r, rng, rng.randint(0, 2 * r)) for r in ranks]
        mats = []
        for n in range(1, top + 1):
            M = _matmul(G[n - 1][1], D[n - 1]) if ranks[n - 1] else D[n - 1]
            M = _matmul(M, G[n][0]) if ranks[n] and ranks[n - 1] else M
            mats.append(M)
        if all(abs(v) <= bound for M in mats for row in M for v in row):
            return ranks, mats


def random_matrix(rng: random.Random, max_rank: int = 8, bound: int = 5):
    m, n = rng.randint(1, max_rank), rng.randint(1, max_rank)
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)]


# ---- Witt vectors over Z through ghost components -------------------------------


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def ghost_z(coords: list[int], S: list[int] | None = None) -> list[int]:
    S = S or list(range(1, len(coords) + 1))
    a = dict(zip(S, coords))
    return [sum(d * a[d] ** (s // d) for d in divisors(s)) for s in S]


def unghost_z(g: list[int], S: list[int] | None = None) -> list[int]:
    S = S or list(range(1, len(g) + 1))
    w = dict(zip(S, g))
    a: dict[int, int] = {}
    for s in S:
        rem = w[s] - sum(d * a[d] ** (s // d) for d in divisors(s)[:-1])
        assert rem % s == 0, "not a ghost vector"
        a[s] = rem // s
    return [a[s] for s in S]


def witt_add_z(x, y, S=None):
    return unghost_z([u + v for u, v in zip(ghost_z(x, S), ghost_z(y, S))], S)


def witt_mul_z(x, y, S=None):
    return unghost_z([u * v for u, v in zip(ghost_z(x, S), ghost_z(y, S))], S)


def series_of_coords(coords: list[int], m: int) -> list[int]:
    """prod (1 - a_n t^n) mod t^(m+1), by plain polynomial multiplication."""
    f = [1] + [0] * m
    for n, a in enumerate(coords, start=1):
        g = [0] * (m + 1)
        for i, c in enumerate(f):
            g[i] += c
            if i + n <= m:
                g[i + n] -= a * c
        f = g
    return f


# ---- cube models ------------------------------------------------------------------


def nondegenerate_model_complex(levels):
    """Chain complex on the nondegenerate cubes of a cube model.

    A cube {0,1}^n -> A is degenerate when it ignores some coordinate; the
    boundary is the alternating face sum with 1 as the inf face.
    """
    def ignores(f, n, i):
        pts = list(itertools.product((0, 1), repeat=n))
        idx = {p: k for k, p in enumerate(pts)}
        return all(f[idx[p]] == f[idx[p[:i] + (1 - p[i],) + p[i + 1:]]] for p in pts)

    def face(f, n, i, e):
        pts = list(itertools.product((0, 1), repeat=n))
        idx = {p: k for k, p in enumerate(pts)}
        return tuple(f[idx[p[:i - 1] + (e,) + p[i - 1:]]] for p in itertools.product((0, 1), repeat=n - 1))

    nd = [[f for f in lv if not any(ignores(f, n, i) for i in range(n))] for n, lv in enumerate(levels)]
    mats = []
    for n in range(1, len(levels)):
        pos = {f: k for k, f in enumerate(nd[n - 1])}
        M = [[0] * len(nd[n]) for _ in nd[n - 1]]
        for j, f in enumerate(nd[n]):
            for i in range(1, n + 1):
                sign = (-1) ** i
                for e, s in ((1, sign), (0, -sign)):
                    g = face(f, n, i, e)
                    if g in pos:
                        M[pos[g]][j] += s
        mats.append(M)
    return [len(lv) for lv in nd], mats
