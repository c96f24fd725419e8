"""Seeded property runner for the restricted Witt-complex axioms in degree 0.

Each identity is written once against a small operations interface and run
in two models: Witt vectors over {1..m} and Gamma-cycle classes. Every
sample draws from its own RNG seeded by (seed, identity, index), so reports
do not depend on evaluation order. A failing sample is re-evaluated through
the ghost route before it is reported.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from math import gcd
from typing import Callable

from . import cycles as Cy
from . import witt as W
from .errors import PreconditionError, SchemaError
from .ideals import axiom_iv_discrepancy, axiom_v_check
from .rings import Ring, parse_ring
from .truncation import TruncationSet, divisors, full

__all__ = ["AxiomSuiteConfig", "AxiomReport", "run_axiom_suite", "ghost_oracle_suite", "IDENTITIES"]

MODELS = ("witt", "cycles")


@dataclass(frozen=True)
class AxiomSuiteConfig:
    ring: str
    m: int = 6
    rmax: int = 4
    samples: int = 200
    seed: int = 0

    def __post_init__(self):
        if self.m < 1:
            raise SchemaError(f"max modulus must be >= 1, got {self.m}")
        if self.rmax < 1:
            raise SchemaError(f"r_max must be >= 1, got {self.rmax}")
        if self.samples < 0:
            raise SchemaError(f"sample count must be >= 0, got {self.samples}")

    @property
    def ring_obj(self) -> Ring:
        return parse_ring(self.ring)

    def to_json(self) -> dict:
        return {**asdict(self), "ring": self.ring_obj.descriptor}


@dataclass
class AxiomStats:
    status: str = "checked"  # checked | logged | skipped
    passed: int = 0
    failed: int = 0
    note: str = ""


@dataclass
class AxiomReport:
    suite: str
    config: AxiomSuiteConfig
    axioms: dict[str, AxiomStats] = field(default_factory=dict)
    counterexample: dict | None = None
    route_disagreements: int = 0
    log: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.route_disagreements == 0 and all(a.failed == 0 for a in self.axioms.values())

    def record_failure(self, cex: dict) -> None:
        key = json.dumps(cex, sort_keys=True)
        if self.counterexample is None or key < json.dumps(self.counterexample, sort_keys=True):
            self.counterexample = cex

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "config": self.config.to_json(),
            "ok": self.ok,
            "axioms": {k: asdict(v) for k, v in sorted(self.axioms.items())},
            "counterexample": self.counterexample,
            "route_disagreements": self.route_disagreements,
            "log": self.log,
        }


# ---------------------------------------------------------------------------
# models


class WittOps:
    """Degree-0 operations on W_m(R); ``method`` picks the evaluation route."""

    name = "witt"

    def __init__(self, ring: Ring, method: str = "auto"):
        self.ring, self.method = ring, method

    def sample(self, m: int, rng: random.Random):
        return W.random_witt(self.ring, full(m), rng)

    def add(self, x, y):
        return W.witt_add(x, y, self.method)

    def mul(self, x, y):
        return W.witt_mul(x, y, self.method)

    def scale(self, n, x):
        return W.witt_scale(n, x, self.method)

    def F(self, r, x):
        return W.frobenius(r, x, self.method)

    def V(self, r, x):
        return W.verschiebung(r, x)

    def R(self, x, k=1):
        return W.witt_restrict(x, len(x.truncation) - k)

    def eq(self, x, y) -> bool:
        return x == y

    def encode(self, x) -> dict:
        return {"m": len(x.truncation), "coords": [self.ring.encode(c) for c in x.coords]}

    def to_witt(self, x):
        return x


class GhostOps(WittOps):
    """Same interface, every ring operation evaluated on ghost components."""

    def __init__(self, ring: Ring):
        super().__init__(ring, "ghost")

    def add(self, x, y):
        return W.ghost_route("add", x, y)

    def mul(self, x, y):
        return W.ghost_route("mul", x, y)

    def scale(self, n, x):
        acc = W.zero(self.ring, x.truncation)
        step = x if n >= 0 else W.ghost_route("neg", x)
        for _ in range(abs(n)):
            acc = W.ghost_route("add", acc, step)
        return acc

    def F(self, r, x):
        return x if r == 1 else W.ghost_route("frob", x, r=r)


class CycleOps:
    """Gamma-cycle classes; samples are normalized sums of random Gamma-cycles."""

    name = "cycles"

    def __init__(self, ring: Ring):
        Cy.require_ufd(ring)
        self.ring = ring

    def sample(self, m: int, rng: random.Random):
        # half the time a random normal form, otherwise a normalized sum of
        # short random cycles (long generators make coefficients explode)
        R = self.ring
        if rng.random() < 0.5:
            return Cy.GammaCycleClass(R, m, tuple(R.random(rng) for _ in range(m)))
        cyc = []
        for _ in range(rng.randint(1, 3)):
            gen = [R.one()] + [R.random(rng) for _ in range(rng.randint(1, min(m, 3)))]
            cyc.append(Cy.GammaCycle(R, tuple(gen), rng.choice((-1, 1, 1, 2))))
        return Cy.cycle_class(cyc, m, R)

    def add(self, x, y):
        return Cy.class_add(x, y)

    def mul(self, x, y):
        return Cy.wedge(x, y)

    def scale(self, n, x):
        return Cy.class_scale(n, x)

    def F(self, r, x):
        return Cy.cycle_frobenius(r, x)

    def V(self, r, x):
        return Cy.cycle_verschiebung(r, x)

    def R(self, x, k=1):
        return Cy.cycle_restrict(x, x.modulus - k)

    def eq(self, x, y) -> bool:
        return x == y

    def encode(self, x) -> dict:
        return {"m": x.modulus, "normal_form": [self.ring.encode(c) for c in x.normal_form]}

    def to_witt(self, x):
        return Cy.untau(x)


# ---------------------------------------------------------------------------
# identities: each draws its inputs and returns (inputs, lhs, rhs) builders


def _rs(cfg, rng, coprime=False):
    r = rng.randint(1, cfg.rmax)
    s = rng.randint(1, cfg.rmax)
    while coprime and gcd(r, s) != 1:
        s = rng.randint(1, cfg.rmax)
    return r, s


def _id_restrict_frobenius(cfg, rng, ops):
    r, _ = _rs(cfg, rng)
    m = rng.randint(1, cfg.m)
    x = ops.sample(r * m + 2 * r - 1, rng)
    return {"r": r, "x": x}, lambda o, a: (o.R(o.F(a["r"], a["x"])), o.F(a["r"], o.R(a["x"], a["r"])))


def _id_restrict_verschiebung(cfg, rng, ops):
    r, _ = _rs(cfg, rng)
    m = rng.randint(1, cfg.m)
    y = ops.sample(m + 1, rng)
    return {"r": r, "y": y}, lambda o, a: (o.R(o.V(a["r"], a["y"]), a["r"]), o.V(a["r"], o.R(a["y"])))


def _id_unit_index(cfg, rng, ops):
    m = rng.randint(1, cfg.m)
    x = ops.sample(m, rng)

    def both(o, a):
        X = a["x"]
        ok = o.eq(o.F(1, X), X) and o.eq(o.V(1, X), X)
        return ok, True

    return {"x": x}, both


def _id_frobenius_composite(cfg, rng, ops):
    r, s = _rs(cfg, rng)
    m = rng.randint(1, cfg.m)
    x = ops.sample(r * s * m + r * s - 1, rng)
    return {"r": r, "s": s, "x": x}, lambda o, a: (o.F(a["r"], o.F(a["s"], a["x"])), o.F(a["r"] * a["s"], a["x"]))


def _id_verschiebung_composite(cfg, rng, ops):
    r, s = _rs(cfg, rng)
    m = rng.randint(1, cfg.m)
    y = ops.sample(m, rng)
    return {"r": r, "s": s, "y": y}, lambda o, a: (o.V(a["r"], o.V(a["s"], a["y"])), o.V(a["r"] * a["s"], a["y"]))


def _id_frobenius_verschiebung(cfg, rng, ops):
    r, _ = _rs(cfg, rng)
    m = rng.randint(1, cfg.m)
    y = ops.sample(m, rng)
    return {"r": r, "y": y}, lambda o, a: (o.F(a["r"], o.V(a["r"], a["y"])), o.scale(a["r"], a["y"]))


def _id_coprime_commute(cfg, rng, ops):
    r, s = _rs(cfg, rng, coprime=True)
    m = rng.randint(1, cfg.m)
    x = ops.sample(r * m + r - 1, rng)
    return {"r": r, "s": s, "x": x}, lambda o, a: (o.F(a["r"], o.V(a["s"], a["x"])), o.V(a["s"], o.F(a["r"], a["x"])))


def _id_projection_formula(cfg, rng, ops):
    r, _ = _rs(cfg, rng)
    m = rng.randint(1, cfg.m)
    x = ops.sample(r * m + r - 1, rng)
    y = ops.sample(m, rng)
    return {"r": r, "x": x, "y": y}, lambda o, a: (
        o.V(a["r"], o.mul(o.F(a["r"], a["x"]), a["y"])),
        o.mul(a["x"], o.V(a["r"], a["y"])),
    )


IDENTITIES: dict[str, Callable] = {
    "i.restrict_frobenius": _id_restrict_frobenius,
    "i.restrict_verschiebung": _id_restrict_verschiebung,
    "i.unit_index": _id_unit_index,
    "i.frobenius_composite": _id_frobenius_composite,
    "i.verschiebung_composite": _id_verschiebung_composite,
    "ii.frobenius_verschiebung": _id_frobenius_verschiebung,
    "ii.coprime_commute": _id_coprime_commute,
    "iii.projection_formula": _id_projection_formula,
}


def _sample_rng(seed: int, name: str, i: int) -> random.Random:
    return random.Random(f"{seed}:{name}:{i}")


def _encode_inputs(ops, inputs: dict) -> dict:
    return {k: (v if isinstance(v, int) else ops.encode(v)) for k, v in sorted(inputs.items())}


def _holds(ops, inputs, build) -> bool:
    lhs, rhs = build(ops, inputs)
    if isinstance(lhs, bool):
        return lhs
    return ops.eq(lhs, rhs)


def _run_identities(report: AxiomReport, ops, cfg: AxiomSuiteConfig) -> None:
    oracle = GhostOps(ops.ring)
    for name, draw in IDENTITIES.items():
        stats = report.axioms.setdefault(name, AxiomStats())
        for i in range(cfg.samples):
            inputs, build = draw(cfg, _sample_rng(cfg.seed, name, i), ops)
            if _holds(ops, inputs, build):
                stats.passed += 1
                continue
            witt_inputs = {k: (v if isinstance(v, int) else ops.to_witt(v)) for k, v in inputs.items()}
            if _holds(oracle, witt_inputs, build):
                # the independent route disagrees: not a counterexample, a route bug
                report.route_disagreements += 1
                report.log.append({"identity": name, "sample": i, "route_disagreement": True})
                stats.passed += 1
                continue
            stats.failed += 1
            report.record_failure(
                {"identity": name, "sample": i, "model": ops.name, "inputs": _encode_inputs(ops, inputs)}
            )


def _run_lambda(report: AxiomReport, cfg: AxiomSuiteConfig, ring: Ring) -> None:
    stats = report.axioms.setdefault("lambda.tau_compat", AxiomStats())
    if not ring.is_ufd:
        stats.status = "skipped"
        stats.note = f"tau_R needs a UFD; {ring.descriptor} is not one"
        return
    for i in range(cfg.samples):
        rng = _sample_rng(cfg.seed, "lambda.tau_compat", i)
        m = rng.randint(1, cfg.m)
        x = W.random_witt(ring, full(m), rng)
        y = W.random_witt(ring, full(m), rng)
        rs = tuple(range(1, cfg.rmax + 1))
        rep = Cy.tau_compat_check(x, y, rs=rs)
        if rep.ok:
            stats.passed += 1
            continue
        stats.failed += 1
        ops = WittOps(ring)
        report.record_failure({
            "identity": "lambda.tau_compat", "sample": i, "model": "witt",
            "inputs": {"x": ops.encode(x), "y": ops.encode(y)}, "failures": rep.failures,
        })


def _axiom_v_elements(ring: Ring, rng: random.Random, i: int):
    if i == 0:
        return ring.zero()
    if i == 1:
        return ring.one()
    return ring.random(rng)


def _run_axiom_v(report: AxiomReport, cfg: AxiomSuiteConfig, ring: Ring) -> None:
    stats = report.axioms.setdefault("v.ideal_identity", AxiomStats())
    for i in range(cfg.samples):
        rng = _sample_rng(cfg.seed, "v.ideal_identity", i)
        a = _axiom_v_elements(ring, rng, i)
        r = rng.randint(1, cfg.rmax)
        rep = axiom_v_check(a, r, ring)
        if rep.holds:
            stats.passed += 1
        else:
            stats.failed += 1
            report.record_failure({"identity": "v.ideal_identity", "sample": i, "model": "cycles",
                                   "inputs": {"a": ring.encode(a), "r": r}})


def _log_axiom_iv(report: AxiomReport, cfg: AxiomSuiteConfig, ring: Ring) -> None:
    stats = report.axioms.setdefault("iv.frobenius_d_verschiebung", AxiomStats(status="logged"))
    stats.note = "holds only up to a boundary at cycle level; discrepancy ideals logged, never asserted"
    rng = _sample_rng(cfg.seed, "iv", 0)
    for r in range(1, min(cfg.rmax, 3) + 1):
        a = ring.random(rng)
        report.log.append({"axiom": "iv", "a": ring.encode(a), "r": r, **axiom_iv_discrepancy(a, r, ring)})


def run_axiom_suite(cfg: AxiomSuiteConfig, model: str = "witt") -> AxiomReport:
    """Run axioms (i)-(iii), lambda compatibility and (v); log (iv)."""
    if model not in MODELS:
        raise SchemaError(f"model must be one of {MODELS}, got {model!r}")
    ring = cfg.ring_obj
    ops = WittOps(ring) if model == "witt" else CycleOps(ring)
    report = AxiomReport(f"axioms/{model}", cfg)
    _run_identities(report, ops, cfg)
    _run_lambda(report, cfg, ring)
    if model == "cycles":
        _run_axiom_v(report, cfg, ring)
        _log_axiom_iv(report, cfg, ring)
    else:
        for name in ("v.ideal_identity", "iv.frobenius_d_verschiebung"):
            report.axioms[name] = AxiomStats(status="skipped", note="needs the differential; run the cycles model")
    return report


# ---------------------------------------------------------------------------
# ghost-side formulas


def _random_truncation(m: int, rng: random.Random) -> TruncationSet:
    if rng.random() < 0.5:
        return full(rng.randint(1, m))
    picks = rng.sample(range(1, m + 1), rng.randint(1, min(3, m)))
    return TruncationSet.of({d for p in picks for d in divisors(p)})


def ghost_oracle_suite(cfg: AxiomSuiteConfig) -> AxiomReport:
    """Ghost map is a ring map; F_r dilates indices; V_r spreads and scales by r."""
    ring = cfg.ring_obj
    report = AxiomReport("ghost", cfg)
    R = ring
    ops = WittOps(ring)

    def check(name, i, ok, inputs):
        stats = report.axioms.setdefault(name, AxiomStats())
        if ok:
            stats.passed += 1
        else:
            stats.failed += 1
            report.record_failure({"identity": name, "sample": i, "model": "witt",
                                   "inputs": {k: v if isinstance(v, int) else ops.encode(v) for k, v in inputs.items()}})

    for i in range(cfg.samples):
        rng = _sample_rng(cfg.seed, "ghost", i)
        S = _random_truncation(cfg.m, rng)
        x, y = W.random_witt(R, S, rng), W.random_witt(R, S, rng)
        gx, gy = W.ghost(x), W.ghost(y)
        check("ghost.add", i, W.ghost(W.witt_add(x, y)) == gx + gy, {"x": x, "y": y})
        check("ghost.mul", i, W.ghost(W.witt_mul(x, y)) == gx * gy, {"x": x, "y": y})
        check("ghost.zero", i, all(R.is_zero(c) for c in W.ghost(W.zero(R, S)).components), {})
        r = rng.randint(1, cfg.rmax)
        try:
            fx = W.frobenius(r, x)
        except PreconditionError:
            fx = None
        if fx is not None:
            gf = W.ghost(fx)
            check("ghost.frobenius", i, all(R.eq(gf.component(s), gx.component(r * s)) for s in fx.truncation),
                  {"r": r, "x": x})
        vx = W.verschiebung(r, x)
        gv = W.ghost(vx)
        ok = all(
            R.eq(gv.component(s), R.scale(r, gx.component(s // r)) if s % r == 0 else R.zero())
            for s in vx.truncation
        )
        check("ghost.verschiebung", i, ok, {"r": r, "x": x})
    return report


def report_json(report: AxiomReport) -> str:
    return json.dumps(report.to_json(), sort_keys=True)

