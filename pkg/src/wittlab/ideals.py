"""Explicit cycles in Spec R[t] x box and the ideal identities behind them.

Box coordinates use the (A^1, {0, 1}) model psi = 1/(1 - y): the box
faces y = 0 and y = infinity become psi = 1 and psi = 0. Cycles here are
hypersurfaces or triangular ideals in R[t][y1], and faces are computed by
substituting psi = 1 or psi = 0.

Contents:

* `TriangularIdeal` (u(t), y1 - g(t)) with u(0) = 1, compared by mutual
  containment (membership is exact division by u in R[t]);
* `axiom_v_check`, the identity F_r d[a] = [a]^(r-1) d[a] at cycle level;
* `bounding_cycle`, the 2-cycle killing Gamma_{(1 - t^n f)} when n > m;
* `mod1_collapse_witness`, the cycle {ty = 1} bounding the unit class at
  modulus D_1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .cycles import GammaCycle, require_ufd, t_ring
from .errors import InvariantError, ModulusError, PreconditionError
from .rings import Poly, PolynomialRing, Ring

__all__ = [
    "TriangularIdeal",
    "divides",
    "ty_ring",
    "face",
    "AxiomVReport",
    "axiom_v_check",
    "axiom_iv_discrepancy",
    "BoundingCycle",
    "bounding_cycle",
    "Mod1Witness",
    "mod1_collapse_witness",
]


def ty_ring(ring: Ring) -> PolynomialRing:
    """R[t][y1]."""
    return PolynomialRing(t_ring(ring), ("y1",))


def divides(u: Poly, v: Poly, Rt: PolynomialRing) -> bool:
    """Does u divide v in R[t]? Requires u(0) = 1.

    Since u is a unit power series, v/u always exists in R[[t]]; u | v in
    R[t] exactly when that quotient, truncated at deg v - deg u, times u
    gives back v.
    """
    R = Rt.base
    uc = Rt.coeffs(u)
    if not uc or not R.eq(uc[0], R.one()):
        raise PreconditionError("divides() needs a divisor with constant term 1")
    if not v.terms:
        return True
    vc = Rt.coeffs(v)
    k = len(vc) - len(uc)
    if k < 0:
        return False
    q = []
    for i in range(k + 1):
        acc = vc[i]
        for j in range(1, min(i, len(uc) - 1) + 1):
            acc = R.sub(acc, R.mul(uc[j], q[i - j]))
        q.append(acc)
    return Rt.mul(Rt.from_coeffs(q), u) == v


@dataclass(frozen=True)
class TriangularIdeal:
    """The ideal (u(t), y1 - g(t)) in R[t, y1], u(0) = 1."""

    ring: Ring
    u: Poly
    g: Poly

    def __post_init__(self):
        Rt = t_ring(self.ring)
        if not self.ring.eq(Rt.constant_term(self.u), self.ring.one()):
            raise PreconditionError("triangular ideal needs u(0) = 1")

    @property
    def Rt(self) -> PolynomialRing:
        return t_ring(self.ring)

    def generators(self) -> tuple[Poly, Poly]:
        P = ty_ring(self.ring)
        return P.const(self.u), P.sub(P.gen("y1"), P.const(self.g))

    def contains(self, p: Poly) -> bool:
        """Membership of p in R[t][y1]: substitute y1 = g, divide by u."""
        P = ty_ring(self.ring)
        reduced = P.substitute(p, {"y1": self.g}, target=self.Rt)
        return divides(self.u, reduced, self.Rt)

    def issubset(self, other: "TriangularIdeal") -> bool:
        return all(other.contains(gen) for gen in self.generators())

    def equals(self, other: "TriangularIdeal") -> bool:
        return self.ring == other.ring and self.issubset(other) and other.issubset(self)

    def format(self) -> str:
        P = ty_ring(self.ring)
        a, b = self.generators()
        return f"({self.Rt.format(self.u)}, {P.format(b)})"

    def to_json(self) -> dict:
        Rt = self.Rt
        return {"u": Rt.encode(self.u), "g": Rt.encode(self.g), "text": self.format()}


def face(p: Poly, psi: int, ring: Ring, multiplicity: int = 1) -> GammaCycle | None:
    """Face of the hypersurface {p = 0} in Spec R[t] x box at psi = 0 or 1.

    Returns None for the empty face. The restriction must be a polynomial in
    t with unit constant term; it is normalized to p(0) = 1.
    """
    P = ty_ring(ring)
    Rt = t_ring(ring)
    q = P.substitute(p, {"y1": Rt.from_int(psi)}, target=Rt)
    if not q.terms:
        raise PreconditionError(f"cycle contains the whole face psi = {psi}")
    c0 = Rt.constant_term(q)
    if ring.eq(c0, ring.one()):
        pass
    elif ring.eq(c0, ring.neg(ring.one())):
        q = Rt.neg(q)
    else:
        raise PreconditionError(f"face at psi = {psi} is not a Gamma-cycle (constant term {ring.format(c0)})")
    if Rt.is_constant(q):
        return None
    return GammaCycle.from_poly(ring, q, multiplicity)


# ---------------------------------------------------------------------------
# axiom (v)


class _Tensor:
    """Sums of pure tensors l (x) r in R (x) R, just enough for a diagonal pullback."""

    def __init__(self, ring: Ring, pairs):
        self.ring = ring
        self.pairs = tuple(pairs)

    @classmethod
    def left(cls, ring, a):
        return cls(ring, [(a, ring.one())])

    @classmethod
    def right(cls, ring, a):
        return cls(ring, [(ring.one(), a)])

    def __mul__(self, other):
        R = self.ring
        return _Tensor(R, [(R.mul(a, c), R.mul(b, d)) for a, b in self.pairs for c, d in other.pairs])

    def diagonal(self):
        """Image under the multiplication map R (x) R -> R."""
        R = self.ring
        return R.sum(R.mul(a, b) for a, b in self.pairs)

    def format(self):
        R = self.ring
        return " + ".join(f"({R.format(a)} (x) {R.format(b)})" for a, b in self.pairs)


@dataclass
class AxiomVReport:
    a: object
    r: int
    ring: Ring
    lhs: TriangularIdeal | None = None
    rhs: TriangularIdeal | None = None
    holds: bool = False
    simplification_verified: bool = True
    note: str = ""
    steps: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "ring": self.ring.descriptor,
            "a": self.ring.encode(self.a),
            "r": self.r,
            "holds": self.holds,
            "lhs": self.lhs.to_json() if self.lhs else None,
            "rhs": self.rhs.to_json() if self.rhs else None,
            "simplification_verified": self.simplification_verified,
            "note": self.note,
            "steps": list(self.steps),
        }


def _verify_simplification(ring: Ring, a) -> bool:
    """(1 - a t, 1 - t y1) = (1 - a t, y1 - a), by explicit combinations.

    y1 - a = y1 (1 - a t) - a (1 - t y1)  and  1 - t y1 = (1 - a t) - t (y1 - a).
    """
    P = ty_ring(ring)
    Rt = t_ring(ring)
    t = P.const(Rt.gen("t"))
    y = P.gen("y1")
    A = P.const(Rt.const(a))
    one = P.one()
    u = P.sub(one, P.mul(A, t))
    old = P.sub(one, P.mul(t, y))
    new = P.sub(y, A)
    first = P.sub(P.mul(y, u), P.mul(A, old)) == new
    second = P.sub(u, P.mul(t, new)) == old
    return first and second


def axiom_v_check(a, r: int, ring: Ring) -> AxiomVReport:
    """Check F_r d tau([a]) = tau([a]^(r-1)) d tau([a]) as an ideal identity."""
    require_ufd(ring)
    if r < 1:
        raise PreconditionError(f"r must be >= 1, got {r}")
    if isinstance(a, int):
        a = ring.from_int(a)
    rep = AxiomVReport(a, r, ring)
    if ring.is_zero(a):
        rep.holds = True
        rep.note = "a = 0: tau([0]) is the empty cycle, both sides are zero"
        return rep
    if ring.eq(a, ring.one()):
        rep.holds = True
        rep.note = "a = 1: Gamma_(1-t) restricted to G_m minus {1} is empty, so d tau([1]) = 0 and both sides are zero"
        return rep

    Rt = t_ring(ring)
    tvar = Rt.gen("t")

    def one_minus(c):
        return Rt.sub(Rt.one(), Rt.mul(Rt.const(c), tvar))

    rep.simplification_verified = _verify_simplification(ring, a)
    d = TriangularIdeal(ring, one_minus(a), Rt.const(a))
    rep.steps.append(f"d tau([a]) = (1 - a t, 1 - t y1) = {d.format()}")

    # F_r = pushforward along t -> t^r; the point t = 1/a goes to t = 1/a^r
    lhs = TriangularIdeal(ring, one_minus(ring.pow(a, r)), d.g)
    rep.steps.append(f"F_r d tau([a]) = {lhs.format()}")

    # mu_* of Gamma_(1 - a^(r-1) t) x d, in (R (x) R)[t, y1]
    c = _Tensor.left(ring, ring.pow(a, r - 1)) * _Tensor.right(ring, a)
    g = _Tensor.right(ring, a)
    rep.steps.append(f"mu_*: (1 - {c.format()} t, y1 - {g.format()})")
    rhs = TriangularIdeal(ring, one_minus(c.diagonal()), Rt.const(g.diagonal()))
    rep.steps.append(f"Delta^*: {rhs.format()}")

    rep.lhs, rep.rhs = lhs, rhs
    rep.holds = rep.simplification_verified and lhs.equals(rhs)
    return rep


def axiom_iv_discrepancy(a, r: int, ring: Ring) -> dict:
    """Cycle-level ideals of F_r d V_r tau([a]) and d tau([a]).

    They differ as cycles; F_r d V_r = d only holds up to a boundary that is
    not constructed here. Returned for logging, never asserted.
    """
    if isinstance(a, int):
        a = ring.from_int(a)
    A = ring.format(a)
    return {
        "F_r d V_r tau([a])": f"(1 - {A}*u, y1^{r} - {A})",
        "d tau([a])": f"(1 - {A}*u, y1 - {A})",
        "equal_as_cycles": r == 1,
    }


# ---------------------------------------------------------------------------
# boundaries


@dataclass
class BoundingCycle:
    ring: Ring
    modulus: int
    n: int
    f: Poly
    equation: Poly  # in R[t][y1], psi-coordinates
    faces: dict[int, GammaCycle | None]
    order_along_t0: int  # order of vanishing of 1 - y along t = 0

    @property
    def modulus_ok(self) -> bool:
        return self.order_along_t0 >= self.modulus + 1

    def to_json(self) -> dict:
        P = ty_ring(self.ring)
        Rt = t_ring(self.ring)
        return {
            "ring": self.ring.descriptor,
            "modulus": self.modulus,
            "n": self.n,
            "f": Rt.encode(self.f),
            "box_equation": f"y1 = 1 - t^{self.n}*({Rt.format(self.f)})",
            "psi_equation": P.format(self.equation) + " = 0",
            "faces": {
                "psi=1 (box 0)": _face_json(self.faces[1]),
                "psi=0 (box inf)": _face_json(self.faces[0]),
            },
            "modulus_certificate": {
                "inequality": f"{self.n} * ord(t) <= ord(y1 - 1)",
                "order_along_t0": self.order_along_t0,
                "required": self.modulus + 1,
                "holds": self.modulus_ok,
            },
        }


def _face_json(c: GammaCycle | None):
    if c is None:
        return None
    Rt = t_ring(c.ring)
    return {"generator": Rt.encode(c.poly()), "multiplicity": c.multiplicity, "text": c.format()}


def _t_valuation(p: Poly) -> int:
    return min(p.terms) if p.terms else -1


def bounding_cycle(n: int, f, m: int, ring: Ring) -> BoundingCycle:
    """The cycle {y1 = 1 - t^n f(t)} with boundary Gamma_{(1 - t^n f)}.

    In psi-coordinates the equation is t^n f(t) psi - 1 = 0. Raises
    ModulusError unless n >= m + 1.
    """
    require_ufd(ring)
    if n <= m:
        raise ModulusError(f"bounding cycle needs n >= m + 1 = {m + 1}, got n = {n}")
    Rt = t_ring(ring)
    if not isinstance(f, Poly):
        f = Rt.from_coeffs([ring.from_int(c) if isinstance(c, int) else c for c in f])
    if not f.terms:
        raise PreconditionError("f = 0 gives y1 = 1, which lies in a face")
    tnf = Rt.mul(Rt.pow(Rt.gen("t"), n), f)
    P = ty_ring(ring)
    eq = P.sub(P.mul(P.const(tnf), P.gen("y1")), P.one())
    faces = {1: face(eq, 1, ring), 0: face(eq, 0, ring)}
    out = BoundingCycle(ring, m, n, f, eq, faces, _t_valuation(tnf))
    expected = GammaCycle.from_poly(ring, Rt.sub(Rt.one(), tnf))
    if faces[1] != expected or faces[0] is not None or not out.modulus_ok:
        raise InvariantError("bounding cycle faces do not match the construction")
    return out


@dataclass
class Mod1Witness:
    ring: Ring
    C: Poly
    faces_C: dict[int, GammaCycle | None]
    chain: list[tuple[Poly, int]]
    chain_boundary: list[GammaCycle]

    def to_json(self) -> dict:
        P = ty_ring(self.ring)
        return {
            "ring": self.ring.descriptor,
            "C": P.format(self.C) + " = 0",
            "faces_C": {"1": _face_json(self.faces_C[1]), "0": _face_json(self.faces_C[0])},
            "chain": [{"equation": P.format(p) + " = 0", "multiplicity": k} for p, k in self.chain],
            "chain_boundary": [_face_json(c) for c in self.chain_boundary],
        }


def _subst_ty(ring: Ring, gen: Sequence) -> Poly:
    """p(t y1) for p with coefficient list ``gen``."""
    P = ty_ring(ring)
    Rt = t_ring(ring)
    ty = P.mul(P.const(Rt.gen("t")), P.gen("y1"))
    acc = P.zero()
    for i, c in enumerate(gen):
        if not ring.is_zero(c):
            acc = P.add(acc, P.mul(P.const(Rt.const(c)), P.pow(ty, i)))
    return acc


def mod1_collapse_witness(x: Sequence[GammaCycle], ring: Ring, m: int = 0) -> Mod1Witness:
    """Bounding data for a 0-cycle at modulus D_1 (TH-modulus m = 0).

    C = {t y = 1} has faces [1] at psi = 1 and nothing at psi = 0. A
    0-cycle alpha = sum k_i Gamma_{(p_i)} is bounded by alpha x_mu C, the
    cycle sum k_i {p_i(t y) = 0}, whose faces are recomputed here.
    """
    if m != 0:
        raise ModulusError("the unit class only collapses at modulus D_1 (TH-modulus 0)")
    require_ufd(ring)
    P = ty_ring(ring)
    Rt = t_ring(ring)
    C = P.sub(P.one(), P.mul(P.const(Rt.gen("t")), P.gen("y1")))
    faces_C = {1: face(C, 1, ring), 0: face(C, 0, ring)}
    chain = []
    boundary = []
    for cyc in x:
        if cyc.ring != ring:
            raise PreconditionError(f"cycle over {cyc.ring} in a witness over {ring}")
        if cyc.is_empty:
            continue
        eq = _subst_ty(ring, cyc.generator)
        if face(eq, 0, ring) is not None:
            raise InvariantError("chain has a nonempty psi = 0 face")
        chain.append((eq, cyc.multiplicity))
        boundary.append(face(eq, 1, ring, cyc.multiplicity))
    return Mod1Witness(ring, C, faces_C, chain, boundary)
