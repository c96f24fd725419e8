"""Finite truncation sets: nonempty, divisor-closed sets of positive integers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import SchemaError, TruncationError

__all__ = ["TruncationSet", "RestrictionPlan", "full", "quotient", "restrict", "divisors"]


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@dataclass(frozen=True)
class TruncationSet:
    elements: tuple[int, ...]

    def __post_init__(self):
        try:
            elems = tuple(sorted(set(int(e) for e in self.elements)))
        except (TypeError, ValueError):
            raise SchemaError(f"truncation set must be integers, got {self.elements!r}") from None
        if not elems:
            raise TruncationError("a truncation set must be nonempty")
        if elems[0] < 1:
            raise TruncationError("truncation sets contain positive integers only")
        members = set(elems)
        for s in elems:
            for d in divisors(s):
                if d not in members:
                    raise TruncationError(f"{sorted(members)} is not divisor-closed: {d} | {s}")
        object.__setattr__(self, "elements", elems)

    @classmethod
    def of(cls, elements: Iterable[int]) -> "TruncationSet":
        return cls(tuple(elements))

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, s):
        return s in self._index

    @property
    def _index(self) -> dict[int, int]:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {s: i for i, s in enumerate(self.elements)}
            object.__setattr__(self, "_idx", idx)
        return idx

    def position(self, s: int) -> int:
        return self._index[s]

    @property
    def max(self) -> int:
        return self.elements[-1]

    @property
    def is_full(self) -> bool:
        """True when the set is {1, ..., m}."""
        return self.elements[-1] == len(self.elements)

    def issubset(self, other: "TruncationSet") -> bool:
        return all(s in other for s in self.elements)

    def to_json(self) -> list[int]:
        return list(self.elements)

    def __repr__(self):
        if self.is_full:
            return f"TruncationSet(full({self.max}))"
        return f"TruncationSet({list(self.elements)})"


def full(m: int) -> TruncationSet:
    if m < 1:
        raise TruncationError(f"full(m) needs m >= 1, got {m}")
    return TruncationSet(tuple(range(1, m + 1)))


def quotient(S: TruncationSet, r: int) -> TruncationSet:
    """S/r = {s : r·s in S}. Raises TruncationError if that is empty."""
    if r < 1:
        raise TruncationError(f"quotient needs r >= 1, got {r}")
    elems = tuple(s // r for s in S.elements if s % r == 0)
    if not elems:
        raise TruncationError(f"{list(S.elements)}/{r} is empty")
    return TruncationSet(elems)


@dataclass(frozen=True)
class RestrictionPlan:
    """Index map for W_S -> W_T: keep coordinate positions ``keep`` of S."""

    source: TruncationSet
    target: TruncationSet
    keep: tuple[int, ...]
    dropped: tuple[int, ...]

    @property
    def is_identity(self) -> bool:
        return not self.dropped

    def apply(self, coords):
        return tuple(coords[i] for i in self.keep)


def restrict(S: TruncationSet, T: TruncationSet) -> RestrictionPlan:
    if not T.issubset(S):
        raise TruncationError(f"{list(T.elements)} is not a subset of {list(S.elements)}")
    keep = tuple(S.position(t) for t in T.elements)
    dropped = tuple(s for s in S.elements if s not in T)
    return RestrictionPlan(S, T, keep, dropped)
