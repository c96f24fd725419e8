"""Big Witt vectors W_S(R).

Coordinates a = (a_s) for s in a truncation set S. Two evaluation routes:

* full sets S = {1, ..., m} use the unit-series model: a is the series
  prod (1 - a_n t^n), addition multiplies series, and multiplication
  expands both factors into one-term vectors V_u[a] and applies
  V_u[a] * V_v[b] = w * V_{uv/w}[a^(v/w) b^(u/w)], w = gcd(u, v);
* any other S specializes the cached universal polynomials.

`ghost_route` is a third, independent route used as a test oracle: lift to
a torsion-free cover, compute in ghost coordinates, invert, reduce.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd
from typing import Callable, Sequence

from .errors import DescriptorMismatchError, PreconditionError, TruncationError
from .rings import Ring
from .series import (
    UnitSeries,
    div_binomial,
    mul_binomial,
    series_factor,
    series_inverse,
    series_rebuild,
)
from .truncation import TruncationSet, divisors, full, quotient, restrict
from .universal import specialize, universal_polynomials

__all__ = [
    "WittVector",
    "GhostVector",
    "zero",
    "one",
    "teichmuller",
    "ghost",
    "from_ghost",
    "witt_add",
    "witt_neg",
    "witt_sub",
    "witt_mul",
    "witt_scale",
    "frobenius",
    "verschiebung",
    "witt_restrict",
    "witt_map",
    "to_series",
    "from_series",
    "random_witt",
    "ghost_route",
]


@dataclass(frozen=True)
class WittVector:
    truncation: TruncationSet
    ring: Ring
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        if len(self.coords) != len(self.truncation):
            raise PreconditionError(
                f"{len(self.coords)} coordinates for a truncation set of size {len(self.truncation)}"
            )

    @classmethod
    def of(cls, ring: Ring, coords: Sequence, truncation: TruncationSet | Sequence[int] | None = None):
        """Build from raw or integer coordinates; default truncation {1..len}."""
        if truncation is None:
            truncation = full(len(coords))
        elif not isinstance(truncation, TruncationSet):
            truncation = TruncationSet.of(truncation)
        vals = tuple(ring.from_int(c) if isinstance(c, int) else ring.check(c) for c in coords)
        return cls(truncation, ring, vals)

    def coord(self, s: int):
        return self.coords[self.truncation.position(s)]

    def __add__(self, other):
        return witt_add(self, other)

    def __sub__(self, other):
        return witt_sub(self, other)

    def __neg__(self):
        return witt_neg(self)

    def __mul__(self, other):
        if isinstance(other, int):
            return witt_scale(other, self)
        return witt_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return witt_scale(other, self)
        return NotImplemented

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(c) for c in self.coords)

    def __repr__(self):
        cs = ", ".join(self.ring.format(c) for c in self.coords)
        return f"WittVector[{self.ring}, {self.truncation!r}]({cs})"


@dataclass(frozen=True)
class GhostVector:
    truncation: TruncationSet
    ring: Ring
    components: tuple

    def __add__(self, other: "GhostVector") -> "GhostVector":
        _same(self, other)
        R = self.ring
        return GhostVector(self.truncation, R, tuple(map(R.add, self.components, other.components)))

    def __mul__(self, other: "GhostVector") -> "GhostVector":
        _same(self, other)
        R = self.ring
        return GhostVector(self.truncation, R, tuple(map(R.mul, self.components, other.components)))

    def __neg__(self) -> "GhostVector":
        return GhostVector(self.truncation, self.ring, tuple(map(self.ring.neg, self.components)))

    def component(self, s: int):
        return self.components[self.truncation.position(s)]


def _same(x, y) -> None:
    if x.ring != y.ring:
        raise DescriptorMismatchError(f"Witt vectors over {x.ring} and {y.ring}")
    if x.truncation != y.truncation:
        raise TruncationError(
            f"Witt vectors over {list(x.truncation)} and {list(y.truncation)}"
        )


def _as_set(S) -> TruncationSet:
    if isinstance(S, TruncationSet):
        return S
    if isinstance(S, int):
        return full(S)
    return TruncationSet.of(S)


# ---------------------------------------------------------------------------
# constructors


def zero(ring: Ring, S) -> WittVector:
    S = _as_set(S)
    return WittVector(S, ring, (ring.zero(),) * len(S))


def one(ring: Ring, S) -> WittVector:
    return teichmuller(ring.one(), S, ring)


def teichmuller(a, S, ring: Ring) -> WittVector:
    """[a] = (a, 0, 0, ...), the image of the series 1 - a t."""
    S = _as_set(S)
    if isinstance(a, int):
        a = ring.from_int(a)
    return WittVector(S, ring, (a,) + (ring.zero(),) * (len(S) - 1))


def random_witt(ring: Ring, S, rng: random.Random) -> WittVector:
    S = _as_set(S)
    return WittVector(S, ring, tuple(ring.random(rng) for _ in S))


# ---------------------------------------------------------------------------
# ghost map


def ghost(x: WittVector) -> GhostVector:
    """w(a)_s = sum_{t | s} t * a_t^(s/t)."""
    R, S = x.ring, x.truncation
    comps = []
    for s in S:
        acc = R.zero()
        for t in divisors(s):
            a = x.coords[S.position(t)]
            if R.is_zero(a):
                continue
            acc = R.add(acc, R.scale(t, R.pow(a, s // t)))
        comps.append(acc)
    return GhostVector(S, R, tuple(comps))


def from_ghost(g: GhostVector) -> WittVector:
    """Inverse of the ghost map over a torsion-free ring.

    Raises PreconditionError when the ring has torsion or ``g`` is not the
    ghost vector of an integral Witt vector.
    """
    R, S = g.ring, g.truncation
    if not R.torsion_free:
        raise PreconditionError(f"the ghost map is not injective over {R}")
    coords: dict[int, object] = {}
    for s in S:
        rem = g.component(s)
        for t in divisors(s)[:-1]:
            rem = R.sub(rem, R.scale(t, R.pow(coords[t], s // t)))
        try:
            coords[s] = R.exact_div_int(rem, s)
        except AssertionError:
            raise PreconditionError(f"ghost component {s} is not in the image") from None
    return WittVector(S, R, tuple(coords[s] for s in S))


# ---------------------------------------------------------------------------
# series model


def to_series(x: WittVector) -> UnitSeries:
    if not x.truncation.is_full:
        raise TruncationError("the series model needs a truncation set {1, ..., m}")
    return series_rebuild(x.ring, x.coords)


def from_series(f: UnitSeries) -> WittVector:
    m = f.order
    if m < 1:
        raise TruncationError("series of order 0 has no Witt coordinates")
    return WittVector(full(m), f.ring, series_factor(f))


def _series_coeffs(x: WittVector) -> list:
    return list(series_rebuild(x.ring, x.coords).coeffs)


def _factor(ring: Ring, work: list) -> tuple:
    return series_factor(UnitSeries(ring, tuple(work)))


def _route(S: TruncationSet, method: str) -> str:
    if method == "auto":
        return "series" if S.is_full else "universal"
    if method == "series" and not S.is_full:
        raise TruncationError("the series route needs a truncation set {1, ..., m}")
    if method not in ("series", "universal"):
        raise ValueError(f"unknown method {method!r}")
    return method


def _universal(op, S: TruncationSet, ring: Ring, *vectors: WittVector) -> tuple:
    P, polys = universal_polynomials(S, op)
    values = []
    for v in vectors:
        values.extend(v.coords)
    if len(values) < P.nvars:
        values.extend([ring.zero()] * (P.nvars - len(values)))
    return tuple(specialize(polys, P, ring, values))


# ---------------------------------------------------------------------------
# ring operations


def witt_add(x: WittVector, y: WittVector, method: str = "auto") -> WittVector:
    _same(x, y)
    R, S = x.ring, x.truncation
    if _route(S, method) == "universal":
        return WittVector(S, R, _universal("add", S, R, x, y))
    work = _series_coeffs(x)
    for n, b in enumerate(y.coords, start=1):
        mul_binomial(R, work, b, n)
    return WittVector(S, R, _factor(R, work))


def witt_neg(x: WittVector, method: str = "auto") -> WittVector:
    R, S = x.ring, x.truncation
    if _route(S, method) == "universal":
        return WittVector(S, R, _universal("neg", S, R, x))
    inv = series_inverse(series_rebuild(R, x.coords))
    return WittVector(S, R, series_factor(inv))


def witt_sub(x: WittVector, y: WittVector, method: str = "auto") -> WittVector:
    _same(x, y)
    R, S = x.ring, x.truncation
    if _route(S, method) == "universal":
        return witt_add(x, witt_neg(y, method), method)
    work = _series_coeffs(x)
    for n, b in enumerate(y.coords, start=1):
        div_binomial(R, work, b, n)
    return WittVector(S, R, _factor(R, work))


def witt_scale(n: int, x: WittVector, method: str = "auto") -> WittVector:
    """The n-fold Witt sum n·x (n may be negative)."""
    R, S = x.ring, x.truncation
    if n < 0:
        return witt_scale(-n, witt_neg(x, method), method)
    if _route(S, method) == "series":
        work = [R.one()] + [R.zero()] * len(S)
        for k, a in enumerate(x.coords, start=1):
            for _ in range(n):
                mul_binomial(R, work, a, k)
        return WittVector(S, R, _factor(R, work))
    acc, base = zero(R, S), x
    while n:
        if n & 1:
            acc = witt_add(acc, base, method)
        n >>= 1
        if n:
            base = witt_add(base, base, method)
    return acc


def witt_mul(x: WittVector, y: WittVector, method: str = "auto") -> WittVector:
    _same(x, y)
    R, S = x.ring, x.truncation
    if _route(S, method) == "universal":
        return WittVector(S, R, _universal("mul", S, R, x, y))
    m = len(S)
    work = [R.one()] + [R.zero()] * m
    xs = [(u, a) for u, a in enumerate(x.coords, start=1) if not R.is_zero(a)]
    ys = [(v, b) for v, b in enumerate(y.coords, start=1) if not R.is_zero(b)]
    xpow: dict[tuple[int, int], object] = {}
    ypow: dict[tuple[int, int], object] = {}
    for u, a in xs:
        for v, b in ys:
            w = gcd(u, v)
            n = u * v // w
            if n > m:
                continue
            ka, kb = v // w, u // w
            pa = xpow.get((u, ka))
            if pa is None:
                pa = xpow[(u, ka)] = R.pow(a, ka)
            pb = ypow.get((v, kb))
            if pb is None:
                pb = ypow[(v, kb)] = R.pow(b, kb)
            c = R.mul(pa, pb)
            for _ in range(w):
                mul_binomial(R, work, c, n)
    return WittVector(S, R, _factor(R, work))


# ---------------------------------------------------------------------------
# Frobenius, Verschiebung, restriction


def frobenius(r: int, x: WittVector, method: str = "auto") -> WittVector:
    """F_r: W_S -> W_{S/r}; on one-term series F_r(1 - a t^n) = (1 - a^(r/s) t^(n/s))^s."""
    if r < 1:
        raise PreconditionError(f"Frobenius index must be >= 1, got {r}")
    R, S = x.ring, x.truncation
    T = quotient(S, r)
    if r == 1:
        return x
    if _route(S, method) == "universal":
        return WittVector(T, R, _universal(("frob", r), S, R, x))
    m = len(T)
    work = [R.one()] + [R.zero()] * m
    for n, a in enumerate(x.coords, start=1):
        if R.is_zero(a):
            continue
        s = gcd(r, n)
        k = n // s
        if k > m:
            continue
        c = R.pow(a, r // s)
        for _ in range(s):
            mul_binomial(R, work, c, k)
    return WittVector(T, R, _factor(R, work))


def _versch_target(r: int, Q: TruncationSet) -> TruncationSet:
    if Q.is_full:
        return full(r * Q.max + r - 1)
    elems = set()
    for q in Q:
        elems.update(divisors(r * q))
    return TruncationSet.of(elems)


def verschiebung(r: int, x: WittVector, target: TruncationSet | Sequence[int] | int | None = None) -> WittVector:
    """V_r: W_{S/r} -> W_S, (V_r x)_s = x_{s/r} if r | s, else 0.

    Default target: {1, ..., rm + r - 1} for x over {1, ..., m}, else the
    divisor closure of r·(truncation of x).
    """
    if r < 1:
        raise PreconditionError(f"Verschiebung index must be >= 1, got {r}")
    R, Q = x.ring, x.truncation
    S = _versch_target(r, Q) if target is None else _as_set(target)
    if quotient(S, r) != Q:
        raise TruncationError(f"{list(S)}/{r} is not {list(Q)}")
    coords = tuple(x.coord(s // r) if s % r == 0 else R.zero() for s in S)
    return WittVector(S, R, coords)


def witt_restrict(x: WittVector, T: TruncationSet | Sequence[int] | int) -> WittVector:
    T = _as_set(T)
    plan = restrict(x.truncation, T)
    return WittVector(T, x.ring, plan.apply(x.coords))


def witt_map(x: WittVector, f: Callable, target: Ring) -> WittVector:
    """Apply a ring map coordinatewise (functoriality in R)."""
    return WittVector(x.truncation, target, tuple(f(c) for c in x.coords))


# ---------------------------------------------------------------------------
# independent oracle


def ghost_route(op: str, *args, r: int | None = None) -> WittVector:
    """Evaluate ``op`` by lifting to a torsion-free cover and inverting ghosts.

    ``op`` is one of add, sub, neg, mul, frob. Valid over any ring because
    the covering map is a surjective ring map and W_S is functorial.
    """
    xs: list[WittVector] = list(args)
    R = xs[0].ring
    C = R.cover()
    lifted = [witt_map(v, R.lift, C) for v in xs]
    gs = [ghost(v) for v in lifted]
    if op == "add":
        g = gs[0] + gs[1]
    elif op == "sub":
        g = gs[0] + (-gs[1])
    elif op == "neg":
        g = -gs[0]
    elif op == "mul":
        g = gs[0] * gs[1]
    elif op == "frob":
        S = xs[0].truncation
        T = quotient(S, r)
        g = GhostVector(T, C, tuple(gs[0].component(r * s) for s in T))
    else:
        raise ValueError(f"unknown op {op!r}")
    return witt_map(from_ghost(g), R.reduce, R)
