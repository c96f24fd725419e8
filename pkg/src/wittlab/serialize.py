"""JSON records for rings, Witt vectors, series, cycle classes and complexes.

Ring elements are written as decimal strings (polynomials as maps from
exponent vectors to such strings), so no consumer truncates them to 64
bits. Inputs also accept plain integers and polynomial text like "3*x^2-1".
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from . import cycles as Cy
from . import witt as W
from .errors import SchemaError
from .homology.complexes import ChainComplex, homology_all
from .rings import Ring, parse_ring
from .series import UnitSeries
from .truncation import TruncationSet, full

__all__ = [
    "dumps",
    "require",
    "ring_from",
    "truncation_from",
    "witt_from",
    "witt_to",
    "series_from",
    "series_to",
    "class_from",
    "class_to",
    "cycles_from",
    "complex_from",
    "homology_to",
]


def dumps(obj: Any, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(obj, sort_keys=True, indent=2)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def require(rec: Mapping, key: str):
    if not isinstance(rec, Mapping):
        raise SchemaError(f"expected a JSON object, got {type(rec).__name__}")
    if key not in rec:
        raise SchemaError(f"missing field {key!r}")
    return rec[key]


def _int(obj, what: str) -> int:
    if isinstance(obj, bool):
        raise SchemaError(f"{what} must be an integer")
    if isinstance(obj, int):
        return obj
    if isinstance(obj, str):
        try:
            return int(obj.strip())
        except ValueError:
            pass
    raise SchemaError(f"{what} must be an integer, got {obj!r}")


def ring_from(rec: Mapping, override: str | None = None) -> Ring:
    desc = override if override is not None else rec.get("ring") if isinstance(rec, Mapping) else None
    if desc is None:
        raise SchemaError("no ring given (use a 'ring' field or --ring)")
    return parse_ring(desc)


def truncation_from(obj) -> TruncationSet:
    if isinstance(obj, (int, str)) and not isinstance(obj, bool):
        return full(_int(obj, "truncation"))
    if isinstance(obj, list):
        return TruncationSet.of(_int(s, "truncation element") for s in obj)
    raise SchemaError(f"truncation must be an integer m or a list, got {obj!r}")


def _elements(ring: Ring, values, what: str) -> tuple:
    if not isinstance(values, list):
        raise SchemaError(f"{what} must be a list")
    return tuple(ring.decode(v) for v in values)


def witt_from(obj, ring: Ring, truncation=None) -> W.WittVector:
    """A list of coordinates, or {"coords": [...], "truncation": ...}."""
    if isinstance(obj, Mapping):
        truncation = obj.get("truncation", truncation)
        obj = require(obj, "coords")
    coords = _elements(ring, obj, "Witt coordinates")
    S = full(len(coords)) if truncation is None else truncation_from(truncation)
    if len(S) != len(coords):
        raise SchemaError(f"{len(coords)} coordinates for truncation set {list(S)}")
    return W.WittVector(S, ring, coords)


def witt_to(x: W.WittVector) -> dict:
    return {
        "ring": x.ring.descriptor,
        "truncation": x.truncation.to_json(),
        "coords": [x.ring.encode(c) for c in x.coords],
    }


def series_from(obj, ring: Ring, m: int | None = None) -> UnitSeries:
    """Coefficients [1, c_1, ...], truncated or padded to order m."""
    if isinstance(obj, Mapping):
        m = obj.get("m", m)
        obj = require(obj, "coeffs")
    coeffs = _elements(ring, obj, "series coefficients")
    if m is None:
        m = len(coeffs) - 1
    return UnitSeries.from_coeffs(ring, coeffs, _int(m, "m"))


def series_to(f: UnitSeries) -> dict:
    return {"ring": f.ring.descriptor, "m": f.order, "coeffs": [f.ring.encode(c) for c in f.coeffs]}


def _gamma_terms(ring: Ring, items) -> list:
    out = []
    for it in items:
        a = ring.decode(require(it, "a"))
        n = _int(require(it, "n"), "n")
        mult = _int(it.get("mult", 1), "mult")
        if n < 1:
            raise SchemaError(f"Gamma index n must be >= 1, got {n}")
        out.append(Cy.gamma(a, n, ring, mult))
    return out


def cycles_from(obj, ring: Ring) -> list:
    """Gamma-cycles from [{"a", "n", "mult"}] or [{"generator": [...], "multiplicity"}]."""
    if not isinstance(obj, list):
        raise SchemaError("cycles must be a list")
    out = []
    for it in obj:
        if isinstance(it, Mapping) and "generator" in it:
            gen = _elements(ring, it["generator"], "generator")
            out.append(Cy.GammaCycle(ring, gen, _int(it.get("multiplicity", 1), "multiplicity")))
        else:
            out.extend(_gamma_terms(ring, [it]))
    return out


def class_from(obj, ring: Ring, m: int | None = None) -> Cy.GammaCycleClass:
    """A normal form list, {"normal_form": [...]}, {"gamma": [...]} or {"cycles": [...]}."""
    if isinstance(obj, list):
        obj = {"normal_form": obj}
    if not isinstance(obj, Mapping):
        raise SchemaError(f"cannot read a cycle class from {obj!r}")
    m = obj.get("m", m)
    if "normal_form" in obj:
        nf = list(_elements(ring, obj["normal_form"], "normal form"))
        m = len(nf) if m is None else _int(m, "m")
        if len(nf) > m:
            raise SchemaError(f"normal form of length {len(nf)} for modulus {m}")
        return Cy.GammaCycleClass(ring, m, tuple(nf) + (ring.zero(),) * (m - len(nf)))
    if m is None:
        raise SchemaError("a cycle class given by cycles needs the modulus m")
    m = _int(m, "m")
    if "gamma" in obj:
        return Cy.cycle_class(_gamma_terms(ring, obj["gamma"]), m, ring)
    if "cycles" in obj:
        return Cy.cycle_class(cycles_from(obj["cycles"], ring), m, ring)
    raise SchemaError("cycle class needs one of normal_form, gamma, cycles")


def class_to(x: Cy.GammaCycleClass) -> dict:
    return {
        "ring": x.ring.descriptor,
        "m": x.modulus,
        "normal_form": [x.ring.encode(c) for c in x.normal_form],
        "text": x.format(),
    }


def complex_from(rec: Mapping) -> ChainComplex:
    """{"levels": [ranks], "boundaries": [d_1, d_2, ...]}; d_n has shape (c_{n-1}, c_n)."""
    levels = require(rec, "levels")
    bounds = rec.get("boundaries", [])
    if not isinstance(levels, list) or not isinstance(bounds, list):
        raise SchemaError("levels and boundaries must be lists")
    ranks = [_int(r, "rank") for r in levels]
    mats = []
    for k, M in enumerate(bounds, start=1):
        if not isinstance(M, list) or any(not isinstance(row, list) for row in M):
            raise SchemaError(f"boundary d_{k} must be a list of rows")
        mats.append([[_int(v, "matrix entry") for v in row] for row in M])
    return ChainComplex(ranks, mats)


def homology_to(C: ChainComplex) -> dict:
    return {f"H{n}": h.labels() for n, h in enumerate(homology_all(C))}
