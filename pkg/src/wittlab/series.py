"""Truncated unit power series 1 + t·R[t] mod t^(m+1).

This is the additive model of W_m(R): Witt addition is series
multiplication, and the coordinates (a_1, ..., a_m) of a Witt vector are
read off from the unique factorization f = prod_n (1 - a_n t^n).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DescriptorMismatchError, InvariantError, PreconditionError, UnitSeriesError
from .rings import Ring

__all__ = [
    "UnitSeries",
    "series_mul_truncated",
    "series_inverse",
    "series_pow",
    "series_factor",
    "series_rebuild",
    "mul_binomial",
    "div_binomial",
]


@dataclass(frozen=True)
class UnitSeries:
    ring: Ring
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs or not self.ring.eq(self.coeffs[0], self.ring.one()):
            raise UnitSeriesError("a unit series must have constant term 1")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def one(cls, ring: Ring, m: int) -> "UnitSeries":
        return cls(ring, (ring.one(),) + (ring.zero(),) * m)

    @classmethod
    def from_coeffs(cls, ring: Ring, coeffs: Sequence, m: int | None = None) -> "UnitSeries":
        """Truncate (or zero-pad) a polynomial coefficient list to order m."""
        coeffs = list(coeffs)
        if m is None:
            m = len(coeffs) - 1
        coeffs = coeffs[: m + 1] + [ring.zero()] * (m + 1 - len(coeffs))
        return cls(ring, tuple(coeffs))

    def truncate(self, m: int) -> "UnitSeries":
        if m > self.order:
            raise PreconditionError(f"cannot raise truncation order {self.order} to {m}")
        return UnitSeries(self.ring, self.coeffs[: m + 1])

    def __mul__(self, other: "UnitSeries") -> "UnitSeries":
        return series_mul_truncated(self, other, min(self.order, other.order))

    def format(self, var: str = "t") -> str:
        ring = self.ring
        parts = []
        for i, c in enumerate(self.coeffs):
            if ring.is_zero(c):
                continue
            cs = ring.format(c)
            if i == 0:
                parts.append(cs)
                continue
            mono = var if i == 1 else f"{var}^{i}"
            if cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                if " " in cs:
                    cs = f"({cs})"
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _check_same(f: UnitSeries, g: UnitSeries):
    if f.ring != g.ring:
        raise DescriptorMismatchError(f"series over {f.ring} and {g.ring}")


def series_mul_truncated(f: UnitSeries, g: UnitSeries, m: int) -> UnitSeries:
    _check_same(f, g)
    if f.order < m or g.order < m:
        raise PreconditionError(f"truncation orders {f.order}, {g.order} are below {m}")
    ring = f.ring
    a, b = f.coeffs, g.coeffs
    out = []
    for k in range(m + 1):
        acc = ring.zero()
        for i in range(k + 1):
            if ring.is_zero(a[i]) or ring.is_zero(b[k - i]):
                continue
            acc = ring.add(acc, ring.mul(a[i], b[k - i]))
        out.append(acc)
    return UnitSeries(ring, tuple(out))


def mul_binomial(ring: Ring, coeffs: list, c, k: int) -> None:
    """In place: coeffs *= (1 - c t^k), truncated to len(coeffs)."""
    if ring.is_zero(c):
        return
    for i in range(len(coeffs) - 1, k - 1, -1):
        prev = coeffs[i - k]
        if not ring.is_zero(prev):
            coeffs[i] = ring.sub(coeffs[i], ring.mul(c, prev))


def div_binomial(ring: Ring, coeffs: list, c, k: int) -> None:
    """In place: coeffs /= (1 - c t^k), truncated to len(coeffs)."""
    if ring.is_zero(c):
        return
    for i in range(k, len(coeffs)):
        prev = coeffs[i - k]
        if not ring.is_zero(prev):
            coeffs[i] = ring.add(coeffs[i], ring.mul(c, prev))


def series_inverse(f: UnitSeries) -> UnitSeries:
    """1/f mod t^(m+1); exists for every unit series."""
    ring = f.ring
    a = f.coeffs
    inv = [ring.one()]
    for k in range(1, len(a)):
        acc = ring.zero()
        for i in range(1, k + 1):
            if ring.is_zero(a[i]) or ring.is_zero(inv[k - i]):
                continue
            acc = ring.add(acc, ring.mul(a[i], inv[k - i]))
        inv.append(ring.neg(acc))
    return UnitSeries(ring, tuple(inv))


def series_pow(f: UnitSeries, n: int) -> UnitSeries:
    """f^n for any integer n (negative powers go through the inverse)."""
    if n < 0:
        f, n = series_inverse(f), -n
    result = UnitSeries.one(f.ring, f.order)
    base = f
    while n:
        if n & 1:
            result = series_mul_truncated(result, base, f.order)
        n >>= 1
        if n:
            base = series_mul_truncated(base, base, f.order)
    return result


def series_factor(f: UnitSeries, m: int | None = None) -> tuple:
    """The unique (a_1, ..., a_m) with f = prod (1 - a_n t^n) mod t^(m+1).

    Peels one factor at a time: after dividing out the first n-1 factors the
    quotient lies in 1 + t^n R[t], so its degree-n coefficient is -a_n.
    """
    if m is None:
        m = f.order
    if m > f.order:
        raise PreconditionError(f"cannot factor to order {m} a series of order {f.order}")
    ring = f.ring
    work = list(f.coeffs[: m + 1])
    out = []
    for n in range(1, m + 1):
        a = ring.neg(work[n])
        div_binomial(ring, work, a, n)
        if not ring.is_zero(work[n]):
            raise InvariantError(f"series_factor: nonzero remainder in degree {n}")
        out.append(a)
    if not all(ring.is_zero(c) for c in work[1:]):
        raise InvariantError("series_factor: quotient is not 1")
    return tuple(out)


def series_rebuild(ring: Ring, coords: Sequence, m: int | None = None) -> UnitSeries:
    """prod_{n=1}^m (1 - a_n t^n) mod t^(m+1), with a_n = coords[n-1]."""
    if m is None:
        m = len(coords)
    work = [ring.one()] + [ring.zero()] * m
    for n, a in enumerate(coords, start=1):
        if n > m:
            break
        mul_binomial(ring, work, a, n)
    return UnitSeries(ring, tuple(work))
