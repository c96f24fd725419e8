"""Gamma-cycle model of the additive Chow group TH^1(R, 1; m) for a UFD R.

A class is stored in normal form (a_1, ..., a_m), meaning the class of the
cycle cut out by prod_{n <= m} (1 - a_n t^n). One-term cycles
Gamma_{a,n} = Gamma_{(1 - a t^n)} carry all the structure:

    Gamma_{a,u} ^ Gamma_{b,v} = w Gamma_{a^(v/w) b^(u/w), uv/w},  w = gcd(u, v)
    F_r Gamma_{a,n} = s Gamma_{a^(r/s), n/s},                       s = gcd(r, n)
    V_r Gamma_{a,n} = Gamma_{a, rn}

and classes of Gamma_{(1 - t^n f)} with n > m vanish.

The modulus m is the TH-side index throughout: TH^q(X, n; m) is the
Chow group with modulus (m+1){t = 0}, so m = 0 corresponds to D_1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from .errors import DescriptorMismatchError, ModulusError, NonUFDError, PreconditionError, UnitSeriesError
from .rings import Poly, PolynomialRing, Ring
from .series import UnitSeries, mul_binomial, series_factor, series_inverse, series_pow, series_rebuild
from .truncation import full
from . import witt as W

__all__ = [
    "GammaCycle",
    "GammaCycleClass",
    "require_ufd",
    "gamma",
    "tau",
    "tau_witt",
    "untau",
    "cycle_class",
    "class_add",
    "class_neg",
    "wedge",
    "cycle_frobenius",
    "cycle_verschiebung",
    "cycle_restrict",
    "scalar_action",
    "embed_into",
    "TauCompatReport",
    "tau_compat_check",
]


def require_ufd(ring: Ring) -> None:
    if not ring.is_ufd:
        raise NonUFDError(f"{ring} is not a supported UFD; cycle classes need Z, F_p or a polynomial ring over them")


def t_ring(ring: Ring) -> PolynomialRing:
    return PolynomialRing(ring, ("t",))


@dataclass(frozen=True)
class GammaCycle:
    """multiplicity * Gamma_{(p(t))} with p in 1 + t R[t]."""

    ring: Ring
    generator: tuple
    multiplicity: int = 1

    def __post_init__(self):
        gen = list(self.generator)
        while len(gen) > 1 and self.ring.is_zero(gen[-1]):
            gen.pop()
        object.__setattr__(self, "generator", tuple(gen))
        if not gen or not self.ring.eq(gen[0], self.ring.one()):
            raise PreconditionError("a Gamma-cycle generator must satisfy p(0) = 1")

    @classmethod
    def from_poly(cls, ring: Ring, p: Poly, multiplicity: int = 1) -> "GammaCycle":
        return cls(ring, tuple(t_ring(ring).coeffs(p)), multiplicity)

    @property
    def is_empty(self) -> bool:
        return len(self.generator) == 1 or self.multiplicity == 0

    def poly(self) -> Poly:
        return t_ring(self.ring).from_coeffs(self.generator)

    def format(self) -> str:
        p = t_ring(self.ring).format(self.poly())
        gam = f"Gamma_({p})"
        return gam if self.multiplicity == 1 else f"{self.multiplicity}*{gam}"


def gamma(a, n: int, ring: Ring, multiplicity: int = 1) -> GammaCycle:
    """Gamma_{a,n} = Gamma_{(1 - a t^n)}."""
    if n < 1:
        raise PreconditionError(f"Gamma_(a,n) needs n >= 1, got {n}")
    if isinstance(a, int):
        a = ring.from_int(a)
    gen = [ring.one()] + [ring.zero()] * n
    gen[n] = ring.neg(a)
    return GammaCycle(ring, tuple(gen), multiplicity)


@dataclass(frozen=True)
class GammaCycleClass:
    ring: Ring
    modulus: int
    normal_form: tuple

    def __post_init__(self):
        object.__setattr__(self, "normal_form", tuple(self.normal_form))
        require_ufd(self.ring)
        if self.modulus < 1:
            raise ModulusError(f"cycle classes need modulus m >= 1, got {self.modulus}")
        if len(self.normal_form) != self.modulus:
            raise PreconditionError(
                f"normal form has {len(self.normal_form)} entries for modulus {self.modulus}"
            )

    @classmethod
    def zero(cls, ring: Ring, m: int) -> "GammaCycleClass":
        return cls(ring, m, (ring.zero(),) * m)

    @classmethod
    def of(cls, ring: Ring, normal_form: Sequence) -> "GammaCycleClass":
        vals = tuple(ring.from_int(c) if isinstance(c, int) else ring.check(c) for c in normal_form)
        return cls(ring, len(vals), vals)

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(a) for a in self.normal_form)

    def one_terms(self) -> list[tuple[object, int]]:
        """Nonzero (a_n, n): the class is the sum of the Gamma_{a_n, n}."""
        R = self.ring
        return [(a, n) for n, a in enumerate(self.normal_form, start=1) if not R.is_zero(a)]

    def cycles(self) -> list[GammaCycle]:
        return [gamma(a, n, self.ring) for a, n in self.one_terms()]

    def series(self) -> UnitSeries:
        return series_rebuild(self.ring, self.normal_form)

    def __add__(self, other):
        return class_add(self, other)

    def __neg__(self):
        return class_neg(self)

    def __sub__(self, other):
        return class_add(self, class_neg(other))

    def __xor__(self, other):
        return wedge(self, other)

    def format(self) -> str:
        terms = [f"Gamma_({self.ring.format(a)}, {n})" for a, n in self.one_terms()]
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"GammaCycleClass[{self.ring}, m={self.modulus}]({self.format()})"


def _check_pair(x: GammaCycleClass, y: GammaCycleClass) -> None:
    if x.ring != y.ring:
        raise DescriptorMismatchError(f"cycle classes over {x.ring} and {y.ring}")
    if x.modulus != y.modulus:
        raise ModulusError(f"cycle classes of modulus {x.modulus} and {y.modulus}")


# ---------------------------------------------------------------------------
# tau and normalization


def tau(p, m: int, ring: Ring | None = None) -> GammaCycleClass:
    """Class of Gamma_{(p(t))} in TH^1(R, 1; m).

    ``p`` is a coefficient sequence, a `Poly` in R[t], a `UnitSeries` or a
    Witt vector over {1..m}. Factors (1 - a t^n) with n > m are dropped.
    """
    if isinstance(p, W.WittVector):
        return tau_witt(p) if m == len(p.truncation) else cycle_restrict(tau_witt(p), m)
    if isinstance(p, UnitSeries):
        ring, coeffs = p.ring, list(p.coeffs)
    elif isinstance(p, Poly):
        if ring is None:
            raise PreconditionError("tau of a Poly needs the coefficient ring")
        coeffs = t_ring(ring).coeffs(p)
    else:
        if ring is None:
            raise PreconditionError("tau of a coefficient list needs the ring")
        coeffs = [ring.from_int(c) if isinstance(c, int) else c for c in p]
    require_ufd(ring)
    if m < 1:
        raise ModulusError(f"tau needs modulus m >= 1, got {m}")
    if not coeffs or not ring.eq(coeffs[0], ring.one()):
        raise UnitSeriesError("tau needs p(0) = 1")
    f = UnitSeries.from_coeffs(ring, coeffs, m)
    return GammaCycleClass(ring, m, series_factor(f))


def tau_witt(x: W.WittVector) -> GammaCycleClass:
    """tau_R on W_m(R): the class of prod (1 - a_n t^n)."""
    if not x.truncation.is_full:
        raise PreconditionError("tau_R is defined on W_m(R) = W_{1..m}(R)")
    return GammaCycleClass(x.ring, len(x.truncation), x.coords)


def untau(x: GammaCycleClass) -> W.WittVector:
    """Inverse of tau_R (a bijection for UFDs)."""
    return W.WittVector(full(x.modulus), x.ring, x.normal_form)


def cycle_class(cycles: Iterable[GammaCycle], m: int, ring: Ring) -> GammaCycleClass:
    """Normal form of a formal sum of Gamma-cycles."""
    require_ufd(ring)
    acc = UnitSeries.one(ring, m)
    for c in cycles:
        if c.ring != ring:
            raise DescriptorMismatchError(f"cycle over {c.ring} in a sum over {ring}")
        if c.multiplicity == 0:
            continue
        f = UnitSeries.from_coeffs(ring, c.generator, m)
        acc = acc * series_pow(f, c.multiplicity)
    return GammaCycleClass(ring, m, series_factor(acc))


def _from_terms(ring: Ring, m: int, terms: Iterable[tuple[object, int, int]]) -> GammaCycleClass:
    """Sum of mult * Gamma_{c, n}; terms past degree m vanish."""
    work = [ring.one()] + [ring.zero()] * m
    for c, n, mult in terms:
        if n > m:
            continue
        for _ in range(mult):
            mul_binomial(ring, work, c, n)
    return GammaCycleClass(ring, m, series_factor(UnitSeries(ring, tuple(work))))


def class_add(x: GammaCycleClass, y: GammaCycleClass) -> GammaCycleClass:
    _check_pair(x, y)
    prod = x.series() * y.series()
    return GammaCycleClass(x.ring, x.modulus, series_factor(prod))


def class_neg(x: GammaCycleClass) -> GammaCycleClass:
    return GammaCycleClass(x.ring, x.modulus, series_factor(series_inverse(x.series())))


def class_scale(k: int, x: GammaCycleClass) -> GammaCycleClass:
    return GammaCycleClass(x.ring, x.modulus, series_factor(series_pow(x.series(), k)))


# ---------------------------------------------------------------------------
# product and operators


def wedge(x: GammaCycleClass, y: GammaCycleClass) -> GammaCycleClass:
    """Pontryagin product, bilinear extension of the one-term gcd rule."""
    _check_pair(x, y)
    R, m = x.ring, x.modulus
    terms = []
    for a, u in x.one_terms():
        for b, v in y.one_terms():
            w = gcd(u, v)
            n = u * v // w
            if n > m:
                continue
            c = R.mul(R.pow(a, v // w), R.pow(b, u // w))
            terms.append((c, n, w))
    return _from_terms(R, m, terms)


def cycle_frobenius(r: int, x: GammaCycleClass) -> GammaCycleClass:
    """F_r: TH(.; M) -> TH(.; floor(M/r)); M = rm + r - 1 lands on m."""
    if r < 1:
        raise PreconditionError(f"Frobenius index must be >= 1, got {r}")
    target = x.modulus // r
    if target < 1:
        raise ModulusError(f"F_{r} of a modulus-{x.modulus} class has modulus 0")
    R = x.ring
    terms = []
    for a, n in x.one_terms():
        s = gcd(r, n)
        terms.append((R.pow(a, r // s), n // s, s))
    return _from_terms(R, target, terms)


def cycle_verschiebung(r: int, x: GammaCycleClass) -> GammaCycleClass:
    """V_r: TH(.; m) -> TH(.; rm + r - 1)."""
    if r < 1:
        raise PreconditionError(f"Verschiebung index must be >= 1, got {r}")
    target = r * x.modulus + r - 1
    return _from_terms(x.ring, target, [(a, r * n, 1) for a, n in x.one_terms()])


def cycle_restrict(x: GammaCycleClass, to: int | None = None) -> GammaCycleClass:
    """Restriction TH(.; m+1) -> TH(.; m), or iterated down to ``to``."""
    to = x.modulus - 1 if to is None else to
    if not 1 <= to <= x.modulus:
        raise ModulusError(f"cannot restrict modulus {x.modulus} to {to}")
    return GammaCycleClass(x.ring, to, x.normal_form[:to])


# ---------------------------------------------------------------------------
# W_m(k)-module structure


def embed_into(source: Ring, target: Ring):
    """The structure map source -> target for target = source[vars]...[vars]."""
    chain = []
    r = target
    while r != source:
        if not isinstance(r, PolynomialRing):
            raise PreconditionError(f"{source} does not embed into {target}")
        chain.append(r)
        r = r.base
    chain.reverse()

    def f(c):
        for ring in chain:
            c = ring.const(c)
        return c

    return f


def scalar_action(w: W.WittVector, x: GammaCycleClass) -> GammaCycleClass:
    """w . x for w in W_m(k), x in TH^1(R, 1; m), k the base of R."""
    if not w.truncation.is_full or len(w.truncation) < x.modulus:
        raise ModulusError(f"scalar needs W_m with m >= {x.modulus}")
    f = embed_into(w.ring, x.ring)
    coords = tuple(f(c) for c in w.coords[: x.modulus])
    return wedge(GammaCycleClass(x.ring, x.modulus, coords), x)


# ---------------------------------------------------------------------------
# cross-model check


@dataclass
class TauCompatReport:
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": dict(sorted(self.checks.items())), "failures": self.failures}


def tau_compat_check(
    x: W.WittVector,
    y: W.WittVector | None = None,
    rs: Sequence[int] = (1, 2, 3),
    witt_method: str = "universal",
) -> TauCompatReport:
    """Compare Witt-side and cycle-side evaluation of +, *, F_r, V_r, R.

    The Witt side runs through ``witt_method`` (universal polynomials by
    default) and the cycle side through the one-term Gamma rules, so the
    two computations share nothing but the coordinates.
    """
    require_ufd(x.ring)
    y = y if y is not None else W.zero(x.ring, x.truncation)
    tx, ty = tau_witt(x), tau_witt(y)
    rep = TauCompatReport()
    rep.checks["add"] = tau_witt(W.witt_add(x, y, witt_method)) == class_add(tx, ty)
    rep.checks["mul"] = tau_witt(W.witt_mul(x, y, witt_method)) == wedge(tx, ty)
    m = x.truncation.max
    for r in rs:
        if m // r >= 1:
            rep.checks[f"frobenius_{r}"] = tau_witt(W.frobenius(r, x, witt_method)) == cycle_frobenius(r, tx)
        rep.checks[f"verschiebung_{r}"] = tau_witt(W.verschiebung(r, x)) == cycle_verschiebung(r, tx)
    if m >= 2:
        rep.checks["restriction"] = tau_witt(W.witt_restrict(x, m - 1)) == cycle_restrict(tx)
    return rep
