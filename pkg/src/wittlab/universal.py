"""Universal Witt polynomials over Z, computed through the ghost map.

For a truncation set S the ghost map is injective over Z[x_s, y_s], so the
coordinates of x + y, x * y, -x and F_r(x) are the unique integral
polynomials whose ghost components are the expected ones. They are solved
for one coordinate at a time (ascending s) and then specialized into any
ring, torsion or not, by naturality.

Computed polynomials live in a process-wide cache. Insertions are
serialized with a lock; reads are plain dict lookups. When the environment
variable ``WITTLAB_CACHE_DIR`` is set, polynomials for sets with max(S) <= 12
are also written there as JSON and reloaded by later runs.
"""

from __future__ import annotations

import json
import logging
import os
import threading
from pathlib import Path
from typing import Sequence

from .errors import InvariantError
from .rings import ZZ, PolynomialRing, Poly, Ring, _unpack
from .truncation import TruncationSet, divisors, quotient

log = logging.getLogger(__name__)

__all__ = ["universal_polynomials", "specialize", "clear_cache", "cache_info", "DISK_LIMIT"]

DISK_LIMIT = 12

_cache: dict[tuple, tuple[PolynomialRing, list[Poly]]] = {}
_lock = threading.Lock()
_stats = {"computed": 0, "loaded": 0}


def _op_name(op) -> str:
    return op if isinstance(op, str) else f"{op[0]}{op[1]}"


def _ring_for(S: TruncationSet) -> PolynomialRing:
    names = tuple(f"x{s}" for s in S) + tuple(f"y{s}" for s in S)
    return PolynomialRing(ZZ, names)


def _ghost_poly(P: PolynomialRing, S: TruncationSet, prefix: str, s: int) -> Poly:
    """sum_{t | s} t * v_t^(s/t) with v = x or y."""
    offset = 0 if prefix == "x" else len(S)
    acc = P.zero()
    for t in divisors(s):
        v = P.gen(offset + S.position(t))
        acc = P.add(acc, P.scale(t, P.pow(v, s // t)))
    return acc


def _solve(P: PolynomialRing, target: TruncationSet, ghosts: dict[int, Poly]) -> list[Poly]:
    """Coordinates over ``target`` whose ghost components are ``ghosts``."""
    solved: dict[int, Poly] = {}
    for s in target:
        rem = ghosts[s]
        for t in divisors(s)[:-1]:
            rem = P.sub(rem, P.scale(t, P.pow(solved[t], s // t)))
        try:
            solved[s] = P.exact_div_int(rem, s)
        except InvariantError:
            raise InvariantError(f"universal polynomial for s={s} is not integral") from None
    return [solved[s] for s in target]


def _compute(S: TruncationSet, op) -> list[Poly]:
    P = _ring_for(S)
    if op == "add":
        ghosts = {s: P.add(_ghost_poly(P, S, "x", s), _ghost_poly(P, S, "y", s)) for s in S}
        return _solve(P, S, ghosts)
    if op == "mul":
        ghosts = {s: P.mul(_ghost_poly(P, S, "x", s), _ghost_poly(P, S, "y", s)) for s in S}
        return _solve(P, S, ghosts)
    if op == "neg":
        ghosts = {s: P.neg(_ghost_poly(P, S, "x", s)) for s in S}
        return _solve(P, S, ghosts)
    if isinstance(op, tuple) and op[0] == "frob":
        r = op[1]
        T = quotient(S, r)
        ghosts = {s: _ghost_poly(P, S, "x", r * s) for s in T}
        return _solve(P, T, ghosts)
    raise ValueError(f"unknown universal operation {op!r}")


def _disk_path(S: TruncationSet, op) -> Path | None:
    root = os.environ.get("WITTLAB_CACHE_DIR")
    if not root or S.max > DISK_LIMIT:
        return None
    name = f"{_op_name(op)}_{'-'.join(map(str, S))}.json"
    return Path(root) / name


def _load(path: Path, P: PolynomialRing) -> list[Poly] | None:
    try:
        data = json.loads(path.read_text())
        return [P.decode(p) for p in data["polynomials"]]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        log.warning("ignoring unreadable cache file %s: %s", path, exc)
        return None


def _store(path: Path, P: PolynomialRing, polys: list[Poly]) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(f".{os.getpid()}.tmp")
        tmp.write_text(json.dumps({"variables": list(P.variables),
                                   "polynomials": [P.encode(p) for p in polys]}, sort_keys=True))
        os.replace(tmp, path)
    except OSError as exc:
        log.warning("could not write cache file %s: %s", path, exc)


def universal_polynomials(S: TruncationSet, op) -> tuple[PolynomialRing, list[Poly]]:
    """(ring, polys) for op in {"add", "mul", "neg", ("frob", r)}."""
    key = (S.elements, op)
    hit = _cache.get(key)
    if hit is not None:
        return hit
    with _lock:
        hit = _cache.get(key)
        if hit is not None:
            return hit
        P = _ring_for(S)
        path = _disk_path(S, op)
        polys = _load(path, P) if path is not None and path.exists() else None
        if polys is not None:
            _stats["loaded"] += 1
        else:
            polys = _compute(S, op)
            _stats["computed"] += 1
            if path is not None:
                _store(path, P, polys)
        _cache[key] = (P, polys)
        return _cache[key]


def specialize(polys: Sequence[Poly], P: PolynomialRing, ring: Ring, values: Sequence) -> list:
    """Evaluate integral polynomials at ring values (one per variable of P)."""
    nv = P.nvars
    powers: list[dict[int, object]] = [{1: v} for v in values]

    def pw(i, e):
        cache = powers[i]
        got = cache.get(e)
        if got is None:
            got = ring.pow(values[i], e)
            cache[e] = got
        return got

    out = []
    for poly in polys:
        acc = ring.zero()
        for k, c in poly.terms.items():
            term = None
            for i, e in enumerate(_unpack(k, nv)):
                if e:
                    f = pw(i, e)
                    term = f if term is None else ring.mul(term, f)
            if term is None:
                term = ring.from_int(c)
            else:
                term = term if c == 1 else ring.scale(c, term)
            acc = ring.add(acc, term)
        out.append(acc)
    return out


def clear_cache() -> None:
    with _lock:
        _cache.clear()
        _stats.update(computed=0, loaded=0)


def cache_info() -> dict:
    return {"entries": len(_cache), **_stats}
