"""Random finite extended cubical sets, used as test inputs.

An n-cube is a function {0,1}^n -> A for a small alphabet A, stored as a
tuple of values indexed by the bit vectors in lexicographic order. Faces,
degeneracies and the extension act by precomposition, with 1 playing the
role of inf and the extension using y OR y'. A model is the closure of a few
random cubes under faces, degeneracies, swaps of adjacent coordinates and
OR of adjacent coordinates, so it is a functor on the symmetric monoidal
category these generate and every identity holds by construction. Closing
under OR in the last two coordinates only (symmetric=False) gives models
whose normalized and nondegenerate homology can differ. The free abelian
group on a model is a cubical abelian group; a random unimodular change of
basis per level hides the permutation shape.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

import numpy as np

from .cubical import EPS, CubicalGroup
from .snf import identity, zeros

__all__ = ["random_cube_model", "model_group", "random_cubical_group", "random_basis_change", "permuted"]

Cube = tuple


@lru_cache(maxsize=None)
def _points(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.product((0, 1), repeat=n))


@lru_cache(maxsize=None)
def _index(n: int) -> dict[tuple[int, ...], int]:
    return {p: k for k, p in enumerate(_points(n))}


def face(f: Cube, n: int, i: int, e: int) -> Cube:
    idx = _index(n)
    return tuple(f[idx[p[: i - 1] + (e,) + p[i - 1 :]]] for p in _points(n - 1))


def degeneracy(f: Cube, n: int, i: int) -> Cube:
    """p_i from level n-1 into level n: forget coordinate i."""
    idx = _index(n - 1)
    return tuple(f[idx[p[: i - 1] + p[i:]]] for p in _points(n))


def extension(f: Cube, n: int, i: int | None = None) -> Cube:
    """Level n into level n+1 by OR of coordinates i, i+1; i = n gives q_n."""
    i = n if i is None else i
    idx = _index(n)
    return tuple(f[idx[p[: i - 1] + (p[i - 1] | p[i],) + p[i + 1 :]]] for p in _points(n + 1))


def swap(f: Cube, n: int, i: int) -> Cube:
    idx = _index(n)
    return tuple(f[idx[p[: i - 1] + (p[i], p[i - 1]) + p[i + 1 :]]] for p in _points(n))


def random_cube_model(top: int, alphabet: int = 2, seeds: int = 2, rng: random.Random | None = None,
                      extended: bool = True, symmetric: bool = True, max_size: int = 400) -> list[list[Cube]]:
    """Levels 0..top of the closure of random seed cubes. Retries smaller if it grows past max_size."""
    rng = rng or random.Random()
    while True:
        levels: list[set[Cube]] = [set() for _ in range(top + 1)]
        for _ in range(seeds):
            n = rng.randint(1, top)
            levels[n].add(tuple(rng.randrange(alphabet) for _ in range(2**n)))
        changed = True
        while changed:
            changed = False
            for n in range(top + 1):
                for f in list(levels[n]):
                    new = []
                    if n >= 1:
                        new += [(n - 1, face(f, n, i, e)) for i in range(1, n + 1) for e in (0, 1)]
                    if symmetric:
                        new += [(n, swap(f, n, i)) for i in range(1, n)]
                    if n < top:
                        new += [(n + 1, degeneracy(f, n + 1, i)) for i in range(1, n + 2)]
                        if extended and n >= 1:
                            spots = range(1, n + 1) if symmetric else (n,)
                            new += [(n + 1, extension(f, n, i)) for i in spots]
                    for k, g in new:
                        if g not in levels[k]:
                            levels[k].add(g)
                            changed = True
        if sum(len(lv) for lv in levels) <= max_size:
            return [sorted(lv) for lv in levels]
        seeds = max(1, seeds - 1)
        top = max(1, top - 1) if seeds == 1 else top


def _operator_matrix(src: list[Cube], dst: list[Cube], op) -> np.ndarray:
    pos = {c: k for k, c in enumerate(dst)}
    M = zeros(len(dst), len(src))
    for j, c in enumerate(src):
        M[pos[op(c)], j] = 1
    return M


def model_group(levels: list[list[Cube]], extended: bool = True) -> CubicalGroup:
    top = len(levels) - 1
    faces, degs, ext = {}, {}, {}
    for n in range(1, top + 1):
        for i in range(1, n + 1):
            for e, bit in zip(EPS, (0, 1)):
                faces[(n, i, e)] = _operator_matrix(levels[n], levels[n - 1], lambda f, n=n, i=i, b=bit: face(f, n, i, b))
            degs[(n, i)] = _operator_matrix(levels[n - 1], levels[n], lambda f, n=n, i=i: degeneracy(f, n, i))
        if extended and n < top:
            ext[n] = _operator_matrix(levels[n], levels[n + 1], lambda f, n=n: extension(f, n))
    return CubicalGroup([len(lv) for lv in levels], faces, degs, ext or None)


def random_unimodular(n: int, rng: random.Random, steps: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """A random unimodular matrix and its inverse, from elementary operations."""
    G, Ginv = identity(n), identity(n)
    if n < 2:
        if n == 1 and rng.random() < 0.5:
            G[0, 0] = Ginv[0, 0] = -1
        return G, Ginv
    for _ in range(steps if steps is not None else 3 * n):
        i, j = rng.sample(range(n), 2)
        c = rng.choice((-2, -1, 1, 2))
        G[:, j] += c * G[:, i]  # G <- G E, E = I + c e_i e_j^T
        Ginv[i, :] -= c * Ginv[j, :]  # Ginv <- E^{-1} Ginv
    return G, Ginv


def random_basis_change(C: CubicalGroup, rng: random.Random) -> CubicalGroup:
    """The same cubical group written in a random new basis at each level."""
    G = [random_unimodular(r, rng) for r in C.ranks]
    faces = {(n, i, e): G[n - 1][1] @ M @ G[n][0] for (n, i, e), M in C.faces.items()}
    degs = None
    if C.degeneracies is not None:
        degs = {(n, i): G[n][1] @ M @ G[n - 1][0] for (n, i), M in C.degeneracies.items()}
    ext = None
    if C.extension is not None:
        ext = {n: G[n + 1][1] @ M @ G[n][0] for n, M in C.extension.items()}
    return CubicalGroup(C.ranks, faces, degs, ext)


def permuted(C: CubicalGroup, rng: random.Random) -> CubicalGroup:
    """A relabelling of the basis at each level by a random permutation."""
    G = []
    for r in C.ranks:
        perm = list(range(r))
        rng.shuffle(perm)
        P = zeros(r, r)
        for a, b in enumerate(perm):
            P[b, a] = 1
        G.append((P, P.T.copy()))
    faces = {(n, i, e): G[n - 1][1] @ M @ G[n][0] for (n, i, e), M in C.faces.items()}
    degs = None if C.degeneracies is None else {
        (n, i): G[n][1] @ M @ G[n - 1][0] for (n, i), M in C.degeneracies.items()}
    ext = None if C.extension is None else {n: G[n + 1][1] @ M @ G[n][0] for n, M in C.extension.items()}
    return CubicalGroup(C.ranks, faces, degs, ext)


def random_cubical_group(top: int = 3, rng: random.Random | None = None, extended: bool = True,
                         basis_change: bool = True, symmetric: bool = True, **kw) -> CubicalGroup:
    rng = rng or random.Random()
    levels = random_cube_model(top, rng=rng, extended=extended, symmetric=symmetric, **kw)
    C = model_group(levels, extended=extended)
    return random_basis_change(C, rng) if basis_change else C
