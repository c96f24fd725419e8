"""wittlab command line: JSON in, JSON out.

Input comes from a file argument or stdin; ``--batch`` reads JSON lines and
writes one result line per input line, in order. Errors go to stderr as
{"error": {...}} with exit status 2 (bad input), 3 (failed precondition)
or 4 (broken invariant).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable

from . import __version__
from . import cycles as Cy
from . import serialize as J
from . import witt as W
from .axioms import AxiomSuiteConfig, ghost_oracle_suite, run_axiom_suite
from .errors import InvariantError, SchemaError, WittLabError
from .homology.cubical import CubicalGroup
from .ideals import axiom_v_check, bounding_cycle, mod1_collapse_witness
from . import fixtures

Handler = Callable[[dict, argparse.Namespace], Any]


def _ring(rec, args):
    return J.ring_from(rec, args.ring)


def _m(rec, args, default=None):
    if args.m is not None:
        return args.m
    v = rec.get("m", default) if isinstance(rec, dict) else default
    return None if v is None else J._int(v, "m")


def _witt(rec, args, key="x"):
    ring = _ring(rec, args)
    return J.witt_from(J.require(rec, key), ring, rec.get("truncation"))


# ---- witt -------------------------------------------------------------------


def witt_add(rec, args):
    x, y = _witt(rec, args), _witt(rec, args, "y")
    return J.witt_to(W.witt_add(x, y, args.method))


def witt_mul(rec, args):
    x, y = _witt(rec, args), _witt(rec, args, "y")
    return J.witt_to(W.witt_mul(x, y, args.method))


def witt_neg(rec, args):
    return J.witt_to(W.witt_neg(_witt(rec, args), args.method))


def witt_ghost(rec, args):
    g = W.ghost(_witt(rec, args))
    return {"components": [g.ring.encode(c) for c in g.components]}


def witt_teich(rec, args):
    ring = _ring(rec, args)
    S = rec.get("truncation")
    if S is None:
        S = _m(rec, args)
    if S is None:
        raise SchemaError("teich needs m or a truncation set")
    return J.witt_to(W.teichmuller(ring.decode(J.require(rec, "a")), J.truncation_from(S), ring))


def witt_frob(rec, args):
    r = J._int(J.require(rec, "r"), "r")
    return J.witt_to(W.frobenius(r, _witt(rec, args), args.method))


def witt_versch(rec, args):
    r = J._int(J.require(rec, "r"), "r")
    target = rec.get("target")
    return J.witt_to(W.verschiebung(r, _witt(rec, args), None if target is None else J.truncation_from(target)))


def witt_restrict(rec, args):
    to = rec.get("to", args.m)
    if to is None:
        raise SchemaError("restrict needs 'to' (m or a truncation set)")
    return J.witt_to(W.witt_restrict(_witt(rec, args), J.truncation_from(to)))


# ---- cycles -------------------------------------------------------------------


def _class(rec, args, key="x"):
    return J.class_from(J.require(rec, key), _ring(rec, args), _m(rec, args))


def cycles_tau(rec, args):
    ring = _ring(rec, args)
    m = _m(rec, args)
    if m is None:
        raise SchemaError("tau needs the modulus m")
    p = J.require(rec, "p")
    if isinstance(p, str):
        from .cycles import t_ring

        return J.class_to(Cy.tau(t_ring(ring).parse(p), m, ring))
    if not isinstance(p, list):
        raise SchemaError("p must be a coefficient list or a polynomial in t")
    return J.class_to(Cy.tau([ring.decode(c) for c in p], m, ring))


def cycles_wedge(rec, args):
    return J.class_to(Cy.wedge(_class(rec, args), _class(rec, args, "y")))


def cycles_frob(rec, args):
    r = J._int(J.require(rec, "r"), "r")
    return J.class_to(Cy.cycle_frobenius(r, _class(rec, args)))


def cycles_versch(rec, args):
    r = J._int(J.require(rec, "r"), "r")
    return J.class_to(Cy.cycle_verschiebung(r, _class(rec, args)))


def cycles_restrict(rec, args):
    to = rec.get("to")
    return J.class_to(Cy.cycle_restrict(_class(rec, args), None if to is None else J._int(to, "to")))


def cycles_axiom_v(rec, args):
    ring = _ring(rec, args)
    r = J._int(J.require(rec, "r"), "r")
    return axiom_v_check(ring.decode(J.require(rec, "a")), r, ring).to_json()


def cycles_mod1_witness(rec, args):
    ring = _ring(rec, args)
    cyc = J.cycles_from(J.require(rec, "cycles"), ring)
    m = _m(rec, args, 0)
    return mod1_collapse_witness(cyc, ring, m).to_json()


def cycles_bounding(rec, args):
    ring = _ring(rec, args)
    m = _m(rec, args)
    if m is None:
        raise SchemaError("bounding needs the modulus m")
    n = J._int(J.require(rec, "n"), "n")
    f = J.require(rec, "f")
    if not isinstance(f, list):
        raise SchemaError("f must be a coefficient list")
    return bounding_cycle(n, [ring.decode(c) for c in f], m, ring).to_json()


# ---- homology -------------------------------------------------------------------


def homology_compute(rec, args):
    if args.fixture:
        rec = fixtures.load(args.fixture)
    if rec.get("kind") == "cubical" or "faces" in rec:
        return CubicalGroup.from_json(rec).compare_normalization().to_json()
    return J.homology_to(J.complex_from(rec))


# ---- axioms ---------------------------------------------------------------------


def _suite_cfg(rec, args) -> AxiomSuiteConfig:
    rec = rec or {}
    pick = lambda flag, key, default: flag if flag is not None else rec.get(key, default)  # noqa: E731
    return AxiomSuiteConfig(
        ring=pick(args.ring, "ring", "fp:7"),
        m=J._int(pick(args.m, "m", 6), "m"),
        rmax=J._int(pick(args.rmax, "rmax", 4), "rmax"),
        samples=J._int(pick(args.samples, "samples", 200), "samples"),
        seed=J._int(pick(args.seed, "seed", 0), "seed"),
    )


def axioms_run(rec, args):
    model = args.model or (rec or {}).get("model", "witt")
    return run_axiom_suite(_suite_cfg(rec, args), model).to_json()


def axioms_ghost(rec, args):
    return ghost_oracle_suite(_suite_cfg(rec, args)).to_json()


# ---- convert ----------------------------------------------------------------------

FORMS = ("witt", "series", "cycle")


def convert(rec, args):
    """Rewrite a value given as witt, series or cycle in the other forms."""
    ring = _ring(rec, args)
    given = [k for k in FORMS if k in rec]
    if len(given) != 1:
        raise SchemaError(f"give exactly one of {FORMS}")
    src = given[0]
    if src == "witt":
        x = J.witt_from(rec["witt"], ring)
    elif src == "series":
        x = W.from_series(J.series_from(rec["series"], ring, _m(rec, args)))
    else:
        x = Cy.untau(J.class_from(rec["cycle"], ring, _m(rec, args)))
    targets = [args.to] if args.to else [k for k in FORMS if k != "cycle" or ring.is_ufd]
    out: dict[str, Any] = {"ring": ring.descriptor}
    for k in targets:
        if k == "witt":
            out["witt"] = [ring.encode(c) for c in x.coords]
        elif k == "series":
            out["series"] = [ring.encode(c) for c in W.to_series(x).coeffs]
        else:
            cls = Cy.tau_witt(x)
            out["cycle"] = {"normal_form": [ring.encode(c) for c in cls.normal_form], "text": cls.format()}
    return out


# ---- parser -------------------------------------------------------------------------

COMMANDS: dict[tuple[str, str | None], tuple[Handler, bool]] = {
    # (group, action): (handler, needs input)
    ("witt", "add"): (witt_add, True),
    ("witt", "mul"): (witt_mul, True),
    ("witt", "neg"): (witt_neg, True),
    ("witt", "ghost"): (witt_ghost, True),
    ("witt", "teich"): (witt_teich, True),
    ("witt", "frob"): (witt_frob, True),
    ("witt", "versch"): (witt_versch, True),
    ("witt", "restrict"): (witt_restrict, True),
    ("cycles", "tau"): (cycles_tau, True),
    ("cycles", "wedge"): (cycles_wedge, True),
    ("cycles", "frob"): (cycles_frob, True),
    ("cycles", "versch"): (cycles_versch, True),
    ("cycles", "restrict"): (cycles_restrict, True),
    ("cycles", "axiom-v"): (cycles_axiom_v, True),
    ("cycles", "mod1-witness"): (cycles_mod1_witness, True),
    ("cycles", "bounding"): (cycles_bounding, True),
    ("homology", "compute"): (homology_compute, True),
    ("axioms", "run"): (axioms_run, False),
    ("axioms", "ghost"): (axioms_ghost, False),
    ("convert", None): (convert, True),
}


def _common(p: argparse.ArgumentParser, suite: bool = False) -> None:
    p.add_argument("input", nargs="?", help="JSON input file (default: stdin)")
    p.add_argument("--ring", help="ring descriptor, e.g. z, zmod:4, fp:5, fp:5[x], z[x,y]")
    p.add_argument("--m", type=int, help="modulus / truncation length")
    p.add_argument("--pretty", action="store_true", help="indented output")
    p.add_argument("--batch", action="store_true", help="JSON lines in, JSON lines out")
    p.add_argument("-o", "--output", help="write output here instead of stdout")
    p.add_argument("--method", default="auto", choices=["auto", "series", "universal"],
                   help="Witt arithmetic route")
    if suite:
        p.add_argument("--rmax", type=int)
        p.add_argument("--samples", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--model", choices=["witt", "cycles"])


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wittlab", description="Big Witt vectors, additive cycles, cubical homology.")
    ap.add_argument("--version", action="version", version=f"wittlab {__version__}")
    groups = ap.add_subparsers(dest="group", required=True)
    actions: dict[str, argparse._SubParsersAction] = {}
    for (group, action), _ in COMMANDS.items():
        if action is None:
            p = groups.add_parser(group, help=COMMANDS[(group, None)][0].__doc__)
            p.add_argument("--to", choices=FORMS)
            _common(p)
            continue
        if group not in actions:
            gp = groups.add_parser(group)
            actions[group] = gp.add_subparsers(dest="action", required=True)
        p = actions[group].add_parser(action)
        _common(p, suite=group == "axioms")
        if group == "homology":
            p.add_argument("--fixture", help="use a bundled fixture instead of input")
    return ap


def _read_text(args) -> str:
    if args.input and args.input != "-":
        try:
            with open(args.input) as fh:
                return fh.read()
        except OSError as exc:
            raise SchemaError(f"cannot read {args.input}: {exc.strerror}") from None
    return sys.stdin.read()


def _parse_record(text: str):
    try:
        rec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}") from None
    if not isinstance(rec, dict):
        raise SchemaError("input must be a JSON object")
    return rec


def _error_record(exc: BaseException) -> tuple[int, dict]:
    if isinstance(exc, WittLabError):
        code = exc.exit_code
        kind = type(exc).__name__
    elif isinstance(exc, (KeyError, TypeError, ValueError)):
        code, kind = 2, "SchemaError"
    else:
        code, kind = InvariantError.exit_code, "InternalError"
    msg = str(exc) if not isinstance(exc, KeyError) else str(exc.args[0])
    return code, {"error": {"type": kind, "message": msg, "exit_code": code}}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    action = getattr(args, "action", None)
    handler, needs_input = COMMANDS[(args.group, action)]
    if not hasattr(args, "to"):
        args.to = None
    if not hasattr(args, "fixture"):
        args.fixture = None
    out = open(args.output, "w") if args.output else sys.stdout
    status = 0
    try:
        if args.batch:
            text = _read_text(args)
            for line in text.splitlines():
                if not line.strip():
                    continue
                try:
                    result = handler(_parse_record(line), args)
                    out.write(J.dumps(result) + "\n")
                except Exception as exc:  # one bad line does not stop the batch
                    code, err = _error_record(exc)
                    status = max(status, code)
                    out.write(J.dumps(err) + "\n")
            return status
        if needs_input and not (args.group == "homology" and args.fixture):
            rec = _parse_record(_read_text(args))
        elif args.input:
            rec = _parse_record(_read_text(args))
        else:
            rec = {}
        result = handler(rec, args)
        out.write(J.dumps(result, args.pretty) + "\n")
        return 0
    except Exception as exc:
        code, err = _error_record(exc)
        sys.stderr.write(J.dumps(err) + "\n")
        return code
    finally:
        if out is not sys.stdout:
            out.close()


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
