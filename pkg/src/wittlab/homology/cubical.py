"""Finitely presented cubical abelian groups.

Level n is Z^{r_n}. Faces d_i^e: C_n -> C_{n-1} (1 <= i <= n, e in
{"0", "inf"}) are pullbacks along the inclusions of the box faces,
degeneracies p_i: C_{n-1} -> C_n pullbacks along the coordinate
projections, and an optional extension q_n: C_n -> C_{n+1} is the
pullback along (y_1, ..., y_{n+1}) -> (y_1, ..., y_{n-1}, mu(y_n, y_{n+1}))
with mu(y, 0) = mu(0, y) = y and mu(y, inf) = mu(inf, y) = inf.

Every identity these maps must satisfy is checked at construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Mapping

import numpy as np

from ..errors import InvalidComplexError, InvariantError, SchemaError
from .complexes import ChainComplex, HomologyGroup, homology_all
from .snf import identity, imatrix, is_zero, smith_normal_form, zeros

__all__ = ["CubicalGroup", "NondegenerateComplex", "NormalizedComplex", "NormalizationComparison", "EPS"]

EPS = ("0", "inf")


def _eq(A: np.ndarray, B: np.ndarray) -> bool:
    return A.shape == B.shape and is_zero(A - B)


class CubicalGroup:
    def __init__(
        self,
        ranks,
        faces: Mapping[tuple[int, int, str], Any],
        degeneracies: Mapping[tuple[int, int], Any] | None = None,
        extension: Mapping[int, Any] | None = None,
    ):
        self.ranks = [int(r) for r in ranks]
        if not self.ranks or any(r < 0 for r in self.ranks):
            raise SchemaError("ranks must be a nonempty list of nonnegative integers")
        N = self.top
        self.faces: dict[tuple[int, int, str], np.ndarray] = {}
        for n in range(1, N + 1):
            for i in range(1, n + 1):
                for e in EPS:
                    mat = faces.get((n, i, e))
                    if mat is None:
                        raise SchemaError(f"missing face d_{i}^{e} at level {n}")
                    self.faces[(n, i, e)] = self._mat(mat, (self.ranks[n - 1], self.ranks[n]), f"face {(n, i, e)}")
        self.degeneracies: dict[tuple[int, int], np.ndarray] | None = None
        if degeneracies:
            self.degeneracies = {}
            for n in range(1, N + 1):
                for i in range(1, n + 1):
                    mat = degeneracies.get((n, i))
                    if mat is None:
                        raise SchemaError(f"missing degeneracy p_{i} into level {n}")
                    self.degeneracies[(n, i)] = self._mat(mat, (self.ranks[n], self.ranks[n - 1]), f"degeneracy {(n, i)}")
        self.extension: dict[int, np.ndarray] | None = None
        if extension:
            if self.degeneracies is None:
                raise SchemaError("an extended structure needs degeneracies")
            self.extension = {}
            for n in range(1, N):
                mat = extension.get(n)
                if mat is None:
                    raise SchemaError(f"missing extension map q_{n}")
                self.extension[n] = self._mat(mat, (self.ranks[n + 1], self.ranks[n]), f"extension {n}")
        self._check_identities()

    @staticmethod
    def _mat(mat, shape, what) -> np.ndarray:
        try:
            M = imatrix(mat) if isinstance(mat, np.ndarray) else imatrix(mat, shape)
        except (ValueError, TypeError) as exc:
            raise SchemaError(f"{what}: {exc}") from None
        if M.shape != shape:
            raise SchemaError(f"{what} has shape {M.shape}, expected {shape}")
        return M

    @property
    def top(self) -> int:
        return len(self.ranks) - 1

    @property
    def is_extended(self) -> bool:
        return self.extension is not None

    def face(self, n: int, i: int, e: str) -> np.ndarray:
        return self.faces[(n, i, e)]

    def degeneracy(self, n: int, i: int) -> np.ndarray:
        return self.degeneracies[(n, i)]

    # ---- identities ----------------------------------------------------------
    def _check_identities(self) -> None:
        N = self.top
        fail = InvalidComplexError
        d = self.face
        for n in range(2, N + 1):
            for i in range(1, n + 1):
                for j in range(i + 1, n + 1):
                    for e in EPS:
                        for h in EPS:
                            if not _eq(d(n - 1, i, e) @ d(n, j, h), d(n - 1, j - 1, h) @ d(n, i, e)):
                                raise fail(f"face identity fails: d_{i}^{e} d_{j}^{h} at level {n}")
        if self.degeneracies is not None:
            p = self.degeneracy
            for n in range(2, N + 1):
                for i in range(1, n + 1):
                    for j in range(i + 1, n + 1):
                        if not _eq(p(n, j) @ p(n - 1, i), p(n, i) @ p(n - 1, j - 1)):
                            raise fail(f"degeneracy identity fails: p_{j} p_{i} into level {n}")
            for n in range(1, N + 1):
                for i in range(1, n + 1):
                    for j in range(1, n + 1):
                        for e in EPS:
                            lhs = d(n, j, e) @ p(n, i)
                            if i == j:
                                rhs = identity(self.ranks[n - 1])
                            elif i < j:
                                rhs = p(n - 1, i) @ d(n - 1, j - 1, e)
                            else:
                                rhs = p(n - 1, i - 1) @ d(n - 1, j, e)
                            if not _eq(lhs, rhs):
                                raise fail(f"face/degeneracy identity fails: d_{j}^{e} p_{i} at level {n}")
        if self.extension is not None:
            q = self.extension
            p = self.degeneracy
            for n in range(1, N):
                I = identity(self.ranks[n])
                if not (_eq(d(n + 1, n + 1, "0") @ q[n], I) and _eq(d(n + 1, n, "0") @ q[n], I)):
                    raise fail(f"extension identity fails: 0-faces of q_{n}")
                absorb = p(n, n) @ d(n, n, "inf")
                if not (_eq(d(n + 1, n + 1, "inf") @ q[n], absorb) and _eq(d(n + 1, n, "inf") @ q[n], absorb)):
                    raise fail(f"extension identity fails: inf-faces of q_{n}")
                for i in range(1, n):
                    for e in EPS:
                        if not _eq(d(n + 1, i, e) @ q[n], q[n - 1] @ d(n, i, e)):
                            raise fail(f"extension identity fails: d_{i}^{e} q_{n}")
        for n in range(2, N + 1):
            if not is_zero(self.boundary(n - 1) @ self.boundary(n)):
                raise InvariantError(f"boundary squares to zero fails at level {n}")

    # ---- complexes -------------------------------------------------------------
    def boundary(self, n: int) -> np.ndarray:
        """sum_{i=1}^n (-1)^i (d_i^inf - d_i^0)."""
        if not 1 <= n <= self.top:
            raise SchemaError(f"boundary level {n} outside 1..{self.top}")
        acc = zeros(self.ranks[n - 1], self.ranks[n])
        for i in range(1, n + 1):
            term = self.face(n, i, "inf") - self.face(n, i, "0")
            acc = acc + term if i % 2 == 0 else acc - term
        return acc

    def full_complex(self) -> ChainComplex:
        return ChainComplex(self.ranks, {n: self.boundary(n) for n in range(1, self.top + 1)})

    def nondegenerate_complex(self) -> "NondegenerateComplex":
        """Levels modulo the images of all degeneracies, with the induced boundary."""
        proj, sect, ranks = {}, {}, []
        for n in range(self.top + 1):
            r = self.ranks[n]
            if n == 0 or self.degeneracies is None or r == 0:
                proj[n], sect[n] = identity(r), identity(r)
                ranks.append(r)
                continue
            gens = np.concatenate([self.degeneracy(n, i) for i in range(1, n + 1)], axis=1)
            snf = smith_normal_form(gens)
            if any(f != 1 for f in snf.invariant_factors):
                raise InvalidComplexError(
                    f"degenerate subgroup at level {n} is not a direct summand; quotient has torsion"
                )
            s = snf.rank
            proj[n] = snf.Uinv[s:, :]
            sect[n] = snf.U[:, s:]
            ranks.append(r - s)
        bounds = {}
        for n in range(1, self.top + 1):
            dn = self.boundary(n)
            bounds[n] = proj[n - 1] @ dn @ sect[n]
            if self.degeneracies is not None:
                for i in range(1, n + 1):
                    if not is_zero(proj[n - 1] @ dn @ self.degeneracy(n, i)):
                        raise InvariantError(f"boundary does not preserve degenerate elements at level {n}")
        return NondegenerateComplex(ChainComplex(ranks, bounds), proj, sect)

    def normalized_subcomplex(self) -> "NormalizedComplex":
        """Elements killed by every d_i^0 and by d_i^inf for i >= 2; differential d_1^inf."""
        basis, left = {}, {}
        for n in range(self.top + 1):
            r = self.ranks[n]
            if n == 0:
                basis[n], left[n] = identity(r), identity(r)
                continue
            rows = [self.face(n, i, "0") for i in range(1, n + 1)]
            rows += [self.face(n, i, "inf") for i in range(2, n + 1)]
            K = np.concatenate(rows, axis=0)
            snf = smith_normal_form(K)
            k = snf.rank
            basis[n] = snf.Vinv[:, k:]
            left[n] = snf.V[k:, :]
        bounds = {}
        for n in range(1, self.top + 1):
            image = self.face(n, 1, "inf") @ basis[n]
            X = left[n - 1] @ image
            if not _eq(basis[n - 1] @ X, image):
                raise InvariantError(f"d_1^inf leaves the normalized subgroup at level {n}")
            bounds[n] = X
        ranks = [basis[n].shape[1] for n in range(self.top + 1)]
        return NormalizedComplex(ChainComplex(ranks, bounds), basis)

    def compare_normalization(self) -> "NormalizationComparison":
        """Homology of the normalized subcomplex against the nondegenerate complex.

        Both are truncated at the top level, where no boundaries come in, so
        only degrees below the top are compared; the top degree is reported.
        """
        nd = self.nondegenerate_complex()
        nz = self.normalized_subcomplex()
        # the inclusion, with sign (-1)^n, followed by the projection is a chain map
        chain_map = {}
        for n in range(self.top + 1):
            sign = -1 if n % 2 else 1
            chain_map[n] = nd.projection[n] @ (sign * nz.basis[n])
        chain_map_ok = all(
            _eq(nd.complex.d[n] @ chain_map[n], chain_map[n - 1] @ nz.complex.d[n])
            for n in range(1, self.top + 1)
        )
        inclusion_ok = all(
            _eq(self.boundary(n) @ ((-1 if n % 2 else 1) * nz.basis[n]),
                ((-1 if (n - 1) % 2 else 1) * nz.basis[n - 1]) @ nz.complex.d[n])
            for n in range(1, self.top + 1)
        )
        return NormalizationComparison(
            homology_all(nd.complex), homology_all(nz.complex), chain_map_ok and inclusion_ok
        )

    # ---- serialization ------------------------------------------------------------
    def to_json(self) -> dict:
        out: dict[str, Any] = {
            "ranks": self.ranks,
            "faces": {f"{n},{i},{e}": m.tolist() for (n, i, e), m in sorted(self.faces.items())},
        }
        if self.degeneracies is not None:
            out["degeneracies"] = {f"{n},{i}": m.tolist() for (n, i), m in sorted(self.degeneracies.items())}
        if self.extension is not None:
            out["extension"] = {str(n): m.tolist() for n, m in sorted(self.extension.items())}
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> "CubicalGroup":
        try:
            ranks = obj["ranks"]
            faces = {}
            for key, m in obj["faces"].items():
                n, i, e = key.split(",")
                faces[(int(n), int(i), e)] = m
            degs = {}
            for key, m in (obj.get("degeneracies") or {}).items():
                n, i = key.split(",")
                degs[(int(n), int(i))] = m
            ext = {int(k): m for k, m in (obj.get("extension") or {}).items()}
        except (KeyError, ValueError, AttributeError, TypeError) as exc:
            raise SchemaError(f"bad cubical group record: {exc}") from None
        return cls(ranks, faces, degs or None, ext or None)

    @classmethod
    def load(cls, path) -> "CubicalGroup":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


@dataclass
class NondegenerateComplex:
    complex: ChainComplex
    projection: dict[int, np.ndarray]
    section: dict[int, np.ndarray]


@dataclass
class NormalizedComplex:
    complex: ChainComplex
    basis: dict[int, np.ndarray]  # columns: a basis of the normalized subgroup in C_n


@dataclass
class NormalizationComparison:
    nondegenerate: list[HomologyGroup]
    normalized: list[HomologyGroup]
    chain_map_ok: bool

    @property
    def compared_degrees(self) -> range:
        return range(len(self.nondegenerate) - 1)

    @property
    def agree(self) -> bool:
        return self.chain_map_ok and all(
            self.nondegenerate[n] == self.normalized[n] for n in self.compared_degrees
        )

    def to_json(self) -> dict:
        return {
            "agree": self.agree,
            "chain_map_ok": self.chain_map_ok,
            "compared_degrees": list(self.compared_degrees),
            "nondegenerate": {f"H{n}": h.labels() for n, h in enumerate(self.nondegenerate)},
            "normalized": {f"H{n}": h.labels() for n, h in enumerate(self.normalized)},
        }
