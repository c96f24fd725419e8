"""Finite free chain complexes over Z and their homology."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ..errors import InvalidComplexError, SchemaError
from .snf import imatrix, is_zero, smith_normal_form, zeros

__all__ = ["ChainComplex", "HomologyGroup", "homology", "homology_all"]


@dataclass(frozen=True)
class HomologyGroup:
    free_rank: int
    torsion: tuple[int, ...]

    def labels(self) -> list[str]:
        return ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]

    def __str__(self):
        return " + ".join(self.labels()) or "0"


class ChainComplex:
    """C_0 <- C_1 <- ... <- C_N with d_n: C_n -> C_{n-1} of shape (c_{n-1}, c_n).

    Construction rejects d_{n-1} d_n != 0.
    """

    def __init__(self, ranks: Sequence[int], boundaries: Mapping[int, np.ndarray] | Sequence):
        self.ranks = [int(r) for r in ranks]
        if any(r < 0 for r in self.ranks) or not self.ranks:
            raise SchemaError("ranks must be a nonempty list of nonnegative integers")
        if not isinstance(boundaries, Mapping):
            boundaries = {n + 1: b for n, b in enumerate(boundaries)}
        self.d: dict[int, np.ndarray] = {}
        for n in range(1, len(self.ranks)):
            shape = (self.ranks[n - 1], self.ranks[n])
            mat = boundaries.get(n)
            if mat is None:
                mat = zeros(*shape)
            elif not isinstance(mat, np.ndarray) or mat.dtype != object:
                try:
                    mat = imatrix(mat, shape) if not isinstance(mat, np.ndarray) else imatrix(mat)
                except (ValueError, TypeError) as exc:
                    raise SchemaError(f"boundary d_{n}: {exc}") from None
            if mat.shape != shape:
                raise SchemaError(f"boundary d_{n} has shape {mat.shape}, expected {shape}")
            self.d[n] = mat
        extra = set(boundaries) - set(self.d)
        if extra:
            raise SchemaError(f"boundaries given for degrees {sorted(extra)} outside the complex")
        for n in range(2, len(self.ranks)):
            if not is_zero(self.d[n - 1] @ self.d[n]):
                raise InvalidComplexError(f"d_{n - 1} d_{n} != 0")

    @property
    def top(self) -> int:
        return len(self.ranks) - 1

    def __repr__(self):
        return f"ChainComplex(ranks={self.ranks})"


def homology(C: ChainComplex, n: int) -> HomologyGroup:
    """H_n = ker d_n / im d_{n+1}, as free rank plus invariant factors > 1."""
    if not 0 <= n <= C.top:
        raise SchemaError(f"degree {n} outside 0..{C.top}")
    rank_out = smith_normal_form(C.d[n]).rank if n >= 1 else 0
    if n < C.top:
        incoming = smith_normal_form(C.d[n + 1])
        rank_in = incoming.rank
        torsion = tuple(d for d in incoming.invariant_factors if d > 1)
    else:
        rank_in, torsion = 0, ()
    return HomologyGroup(C.ranks[n] - rank_out - rank_in, torsion)


def homology_all(C: ChainComplex) -> list[HomologyGroup]:
    snfs = {n: smith_normal_form(C.d[n]) for n in C.d}
    out = []
    for n in range(C.top + 1):
        rank_out = snfs[n].rank if n >= 1 else 0
        if n < C.top:
            rank_in = snfs[n + 1].rank
            torsion = tuple(d for d in snfs[n + 1].invariant_factors if d > 1)
        else:
            rank_in, torsion = 0, ()
        out.append(HomologyGroup(C.ranks[n] - rank_out - rank_in, torsion))
    return out
