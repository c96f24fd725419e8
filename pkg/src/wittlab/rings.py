"""Exact commutative rings.

Rings are small immutable descriptor objects that know how to do arithmetic
on *raw values*: plain ``int`` for the integers and residue rings, `Poly`
for polynomial rings. Hot loops elsewhere in the package call the ring
methods on raw values directly; `RingElement` wraps a raw value together
with its ring for interactive use and operator syntax.

Descriptor strings::

    z             the integers
    zmod:6        integers modulo 6
    fp:7          the prime field F_7
    fp:5[x]       F_5[x]
    z[x,y]        Z[x, y]
    z[x][t]       (Z[x])[t]
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import cached_property, total_ordering
from typing import Any, Iterable, Mapping, Sequence

from .errors import DescriptorMismatchError, PreconditionError, SchemaError

__all__ = [
    "Ring",
    "Integers",
    "IntegersModN",
    "PrimeField",
    "PolynomialRing",
    "Poly",
    "RingElement",
    "ZZ",
    "parse_ring",
    "is_prime",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Ring:
    """Base class for the supported rings. Subclasses are frozen dataclasses."""

    kind: str = "abstract"

    # ---- structure -----------------------------------------------------
    @property
    def torsion_free(self) -> bool:
        raise NotImplementedError

    @property
    def is_ufd(self) -> bool:
        raise NotImplementedError

    @property
    def characteristic(self) -> int:
        raise NotImplementedError

    @property
    def descriptor(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.descriptor

    # ---- arithmetic on raw values ---------------------------------------
    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def eq(self, a, b) -> bool:
        return a == b

    def pow(self, a, n: int):
        if n < 0:
            raise PreconditionError("ring_pow needs a nonnegative exponent")
        result = self.one()
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def scale(self, n: int, a):
        """The integer multiple n·a."""
        return self.mul(self.from_int(n), a)

    def sum(self, values: Iterable):
        acc = self.zero()
        for v in values:
            acc = self.add(acc, v)
        return acc

    def product(self, values: Iterable):
        acc = self.one()
        for v in values:
            acc = self.mul(acc, v)
        return acc

    # ---- torsion-free cover ----------------------------------------------
    def cover(self) -> "Ring":
        """A torsion-free ring mapping onto this one (itself if torsion-free)."""
        raise NotImplementedError

    def lift(self, a):
        """A preimage of ``a`` in `cover`."""
        raise NotImplementedError

    def reduce(self, a):
        """Image of a `cover` value under the covering ring map."""
        raise NotImplementedError

    def exact_div_int(self, a, n: int):
        """a / n, where n is known to divide a. Torsion-free rings only."""
        raise NotImplementedError

    # ---- sampling & serialization ----------------------------------------
    def random(self, rng: random.Random):
        raise NotImplementedError

    def encode(self, a) -> Any:
        raise NotImplementedError

    def decode(self, obj: Any):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def check(self, a):
        """Validate a raw value, returning it in canonical form."""
        return self.decode(self.encode(a))

    def __call__(self, value) -> "RingElement":
        if isinstance(value, RingElement):
            if value.ring != self:
                raise DescriptorMismatchError(f"{value.ring} element given to {self}")
            return value
        if isinstance(value, int):
            return RingElement(self, self.from_int(value))
        return RingElement(self, self.check(value))


def _parse_int(obj: Any) -> int:
    if isinstance(obj, bool):
        raise SchemaError(f"expected an integer, got {obj!r}")
    if isinstance(obj, int):
        return obj
    if isinstance(obj, str):
        try:
            return int(obj.strip())
        except ValueError:
            pass
    raise SchemaError(f"expected an integer (decimal string), got {obj!r}")


@dataclass(frozen=True)
class Integers(Ring):
    kind = "Integers"

    @property
    def torsion_free(self) -> bool:
        return True

    @property
    def is_ufd(self) -> bool:
        return True

    @property
    def characteristic(self) -> int:
        return 0

    @property
    def descriptor(self) -> str:
        return "z"

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def pow(self, a, n):
        if n < 0:
            raise PreconditionError("ring_pow needs a nonnegative exponent")
        return a**n

    def scale(self, n, a):
        return n * a

    def is_zero(self, a):
        return a == 0

    def cover(self):
        return self

    def lift(self, a):
        return a

    def reduce(self, a):
        return a

    def exact_div_int(self, a, n):
        q, r = divmod(a, n)
        if r:
            from .errors import InvariantError

            raise InvariantError(f"{a} is not divisible by {n}")
        return q

    def random(self, rng):
        return rng.randint(-9, 9)

    def encode(self, a):
        return str(a)

    def decode(self, obj):
        return _parse_int(obj)

    def format(self, a):
        return str(a)


@dataclass(frozen=True)
class IntegersModN(Ring):
    n: int
    kind = "IntegersModN"

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise PreconditionError(f"modulus must be an integer >= 2, got {self.n!r}")

    @property
    def torsion_free(self) -> bool:
        return False

    @property
    def is_ufd(self) -> bool:
        return False

    @property
    def characteristic(self) -> int:
        return self.n

    @property
    def descriptor(self) -> str:
        return f"zmod:{self.n}"

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, k):
        return k % self.n

    def add(self, a, b):
        return (a + b) % self.n

    def sub(self, a, b):
        return (a - b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def pow(self, a, k):
        if k < 0:
            raise PreconditionError("ring_pow needs a nonnegative exponent")
        return pow(a, k, self.n)

    def scale(self, k, a):
        return (k * a) % self.n

    def is_zero(self, a):
        return a == 0

    def cover(self):
        return ZZ

    def lift(self, a):
        return a

    def reduce(self, a):
        return a % self.n

    def random(self, rng):
        return rng.randrange(self.n)

    def encode(self, a):
        return str(a)

    def decode(self, obj):
        return _parse_int(obj) % self.n

    def format(self, a):
        return str(a)


@dataclass(frozen=True)
class PrimeField(IntegersModN):
    kind = "PrimeField"

    def __post_init__(self):
        super().__post_init__()
        if not is_prime(self.n):
            raise PreconditionError(f"fp:{self.n}: {self.n} is not prime")

    @property
    def p(self) -> int:
        return self.n

    @property
    def is_ufd(self) -> bool:
        return True

    @property
    def descriptor(self) -> str:
        return f"fp:{self.n}"

    def inverse(self, a):
        if a % self.n == 0:
            raise PreconditionError("zero has no inverse")
        return pow(a, -1, self.n)


ZZ = Integers()


# ---------------------------------------------------------------------------
# polynomials

_BITS = 24
_MASK = (1 << _BITS) - 1
_MAX_DEGREE = _MASK


@total_ordering
class Poly:
    """Immutable polynomial value: a map packed-exponent -> nonzero coefficient.

    Exponent vectors are packed into one int, ``_BITS`` bits per variable,
    first variable most significant. The owning `PolynomialRing` interprets
    the packing; a `Poly` on its own is just data.
    """

    __slots__ = ("terms", "_hash", "_tdeg")

    def __init__(self, terms: dict):
        self.terms = terms
        self._hash = None
        self._tdeg = None

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __lt__(self, other):
        return sorted(self.terms.items(), key=_sort_key) < sorted(other.terms.items(), key=_sort_key)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Poly({self.terms!r})"


def _sort_key(item):
    k, c = item
    return (k, repr(c))


def _unpack(k: int, nvars: int) -> tuple[int, ...]:
    if nvars == 1:
        return (k,)
    out = []
    for _ in range(nvars):
        out.append(k & _MASK)
        k >>= _BITS
    return tuple(reversed(out))


def _pack(exps: Sequence[int]) -> int:
    k = 0
    for e in exps:
        if e < 0 or e > _MAX_DEGREE:
            raise PreconditionError(f"exponent {e} out of supported range")
        k = (k << _BITS) | e
    return k


_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class PolynomialRing(Ring):
    """base[variables], graded-lexicographic monomial order."""

    base: Ring
    variables: tuple[str, ...]
    kind = "Polynomial"

    def __post_init__(self):
        if isinstance(self.variables, str):
            object.__setattr__(self, "variables", (self.variables,))
        else:
            object.__setattr__(self, "variables", tuple(self.variables))
        if not self.variables:
            raise PreconditionError("a polynomial ring needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise PreconditionError(f"repeated variable names {self.variables}")
        for v in self.variables:
            if not _NAME.match(v):
                raise PreconditionError(f"bad variable name {v!r}")

    # ---- structure ---------------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def torsion_free(self) -> bool:
        return self.base.torsion_free

    @property
    def is_ufd(self) -> bool:
        return self.base.is_ufd

    @property
    def characteristic(self) -> int:
        return self.base.characteristic

    @property
    def descriptor(self) -> str:
        return f"{self.base.descriptor}[{','.join(self.variables)}]"

    @cached_property
    def _modulus(self):
        # None: generic coefficients; 0: plain ints; n: ints mod n
        if isinstance(self.base, IntegersModN):
            return self.base.n
        if isinstance(self.base, Integers):
            return 0
        return None

    # ---- construction --------------------------------------------------
    def zero(self):
        return Poly({})

    def one(self):
        return Poly({0: self.base.one()})

    def const(self, c):
        """Embed a base-ring value."""
        if self.base.is_zero(c):
            return Poly({})
        return Poly({0: c})

    def from_int(self, n):
        return self.const(self.base.from_int(n))

    def gen(self, name: str | int = 0):
        i = self.variables.index(name) if isinstance(name, str) else name
        exps = [0] * self.nvars
        exps[i] = 1
        return Poly({_pack(exps): self.base.one()})

    def monomial(self, coeff, exps: Sequence[int]):
        if len(exps) != self.nvars:
            raise PreconditionError("exponent vector has the wrong length")
        if self.base.is_zero(coeff):
            return Poly({})
        return Poly({_pack(exps): coeff})

    def from_terms(self, items: Iterable[tuple[Sequence[int], Any]]):
        acc: dict = {}
        base = self.base
        for exps, c in items:
            k = _pack(exps)
            acc[k] = base.add(acc[k], c) if k in acc else c
        return Poly({k: c for k, c in acc.items() if not base.is_zero(c)})

    def from_coeffs(self, coeffs: Sequence):
        """Univariate constructor: coeffs[i] is the coefficient of x^i."""
        if self.nvars != 1:
            raise PreconditionError("from_coeffs needs a univariate ring")
        base = self.base
        return Poly({i: c for i, c in enumerate(coeffs) if not base.is_zero(c)})

    def coeffs(self, p: Poly) -> list:
        """Dense coefficient list of a univariate polynomial (empty for 0)."""
        if self.nvars != 1:
            raise PreconditionError("coeffs needs a univariate ring")
        if not p.terms:
            return []
        out = [self.base.zero()] * (max(p.terms) + 1)
        for k, c in p.terms.items():
            out[k] = c
        return out

    # ---- arithmetic ------------------------------------------------------
    def add(self, a, b):
        if not a.terms:
            return b
        if not b.terms:
            return a
        base = self.base
        out = dict(a.terms)
        for k, c in b.terms.items():
            if k in out:
                s = base.add(out[k], c)
                if base.is_zero(s):
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = c
        return Poly(out)

    def neg(self, a):
        base = self.base
        return Poly({k: base.neg(c) for k, c in a.terms.items()})

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def _tdeg(self, a) -> int:
        if a._tdeg is None:
            if self.nvars == 1:
                a._tdeg = max(a.terms, default=0)
            else:
                a._tdeg = max((sum(_unpack(k, self.nvars)) for k in a.terms), default=0)
        return a._tdeg

    def mul(self, a, b):
        if not a.terms or not b.terms:
            return Poly({})
        if self._tdeg(a) + self._tdeg(b) > _MAX_DEGREE:
            raise PreconditionError("polynomial degree exceeds supported range")
        mod = self._modulus
        if mod is not None:
            acc: dict = {}
            get = acc.get
            for k1, c1 in a.terms.items():
                for k2, c2 in b.terms.items():
                    k = k1 + k2
                    acc[k] = get(k, 0) + c1 * c2
            if mod:
                return Poly({k: c % mod for k, c in acc.items() if c % mod})
            return Poly({k: c for k, c in acc.items() if c})
        base = self.base
        acc = {}
        for k1, c1 in a.terms.items():
            for k2, c2 in b.terms.items():
                k = k1 + k2
                prod = base.mul(c1, c2)
                acc[k] = base.add(acc[k], prod) if k in acc else prod
        return Poly({k: c for k, c in acc.items() if not base.is_zero(c)})

    def scale(self, n, a):
        base = self.base
        out = {}
        for k, c in a.terms.items():
            s = base.scale(n, c)
            if not base.is_zero(s):
                out[k] = s
        return Poly(out)

    def mul_const(self, c, a):
        base = self.base
        out = {}
        for k, v in a.terms.items():
            s = base.mul(c, v)
            if not base.is_zero(s):
                out[k] = s
        return Poly(out)

    def is_zero(self, a):
        return not a.terms

    # ---- inspection ------------------------------------------------------
    def degree(self, p: Poly, var: str | int | None = None) -> int:
        """Total degree, or degree in one variable; -1 for the zero polynomial."""
        if not p.terms:
            return -1
        if var is None:
            return self._tdeg(p)
        i = self.variables.index(var) if isinstance(var, str) else var
        return max(_unpack(k, self.nvars)[i] for k in p.terms)

    def constant_term(self, p: Poly):
        return p.terms.get(0, self.base.zero())

    def is_constant(self, p: Poly) -> bool:
        return all(k == 0 for k in p.terms)

    def sorted_terms(self, p: Poly) -> list[tuple[tuple[int, ...], Any]]:
        """Terms in descending graded-lex order."""
        items = [(_unpack(k, self.nvars), c) for k, c in p.terms.items()]
        items.sort(key=lambda it: (sum(it[0]), it[0]), reverse=True)
        return items

    def substitute(self, p: Poly, values: Mapping[str, Any], target: Ring | None = None):
        """Evaluate ``p`` with the named variables replaced.

        ``values`` maps variable names to values of ``target`` (default: this
        ring). Variables not named are kept, which requires ``target`` to
        contain them, so partial substitution only works with ``target=None``.
        """
        target = target or self
        idx = {self.variables.index(v): val for v, val in values.items()}
        embed = self._embedder(target)
        powers: dict[tuple[int, int], Any] = {}

        def pw(i, e):
            key = (i, e)
            if key not in powers:
                if i in idx:
                    powers[key] = target.pow(idx[i], e)
                else:
                    powers[key] = target.pow(self.gen(i), e)
            return powers[key]

        acc = target.zero()
        for k, c in p.terms.items():
            term = embed(c)
            for i, e in enumerate(_unpack(k, self.nvars)):
                if e:
                    term = target.mul(term, pw(i, e))
            acc = target.add(acc, term)
        return acc

    def _embedder(self, target: Ring):
        if target == self:
            return self.const
        if target == self.base:
            return lambda c: c
        if isinstance(target, PolynomialRing) and target.base == self.base:
            return target.const
        raise DescriptorMismatchError(f"cannot evaluate {self} into {target}")

    # ---- cover -------------------------------------------------------------
    def cover(self):
        cb = self.base.cover()
        return self if cb == self.base else PolynomialRing(cb, self.variables)

    def lift(self, a):
        base = self.base
        return Poly({k: base.lift(c) for k, c in a.terms.items()})

    def reduce(self, a):
        base = self.base
        out = {}
        for k, c in a.terms.items():
            r = base.reduce(c)
            if not base.is_zero(r):
                out[k] = r
        return Poly(out)

    def exact_div_int(self, a, n):
        base = self.base
        return Poly({k: base.exact_div_int(c, n) for k, c in a.terms.items()})

    # ---- sampling & serialization --------------------------------------------
    def random(self, rng, degree: int = 2, terms: int = 3):
        base = self.base
        if self.nvars == 1:
            d = rng.randint(0, degree)
            return self.from_coeffs([base.random(rng) for _ in range(d + 1)])
        items = []
        for _ in range(rng.randint(1, terms)):
            exps = [0] * self.nvars
            for _ in range(rng.randint(0, degree)):
                exps[rng.randrange(self.nvars)] += 1
            items.append((exps, base.random(rng)))
        return self.from_terms(items)

    def encode(self, a):
        return {",".join(map(str, e)): self.base.encode(c) for e, c in self.sorted_terms(a)}

    def decode(self, obj):
        if isinstance(obj, (int, str)) and not isinstance(obj, bool):
            try:
                return self.from_int(_parse_int(obj))
            except SchemaError:
                return self.parse(obj)
        if not isinstance(obj, dict):
            raise SchemaError(f"expected a polynomial map for {self}, got {obj!r}")
        items = []
        for key, c in obj.items():
            try:
                exps = [int(x) for x in str(key).split(",")]
            except ValueError:
                raise SchemaError(f"bad exponent vector {key!r}") from None
            if len(exps) != self.nvars or any(e < 0 for e in exps):
                raise SchemaError(f"exponent vector {key!r} does not fit {self}")
            items.append((exps, self.base.decode(c)))
        return self.from_terms(items)

    def parse(self, text: str):
        """Parse a polynomial written like ``3*x^2 - x*y + 1``.

        Coefficients are integers; this covers CLI convenience input, the
        JSON map form is the canonical one.
        """
        s = text.replace(" ", "").replace("**", "^")
        if not s:
            raise SchemaError("empty polynomial string")
        if s[0] not in "+-":
            s = "+" + s
        acc = self.zero()
        for sign, body in re.findall(r"([+-])([^+-]+)", s):
            term = self.from_int(-1 if sign == "-" else 1)
            for factor in body.split("*"):
                m = re.fullmatch(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)(?:\^(\d+))?", factor)
                if not m:
                    raise SchemaError(f"cannot parse {factor!r} in {text!r}")
                if m.group(1):
                    term = self.mul(term, self.from_int(int(m.group(1))))
                else:
                    name, e = m.group(2), int(m.group(3) or 1)
                    if name in self.variables:
                        term = self.mul(term, self.pow(self.gen(name), e))
                    elif isinstance(self.base, PolynomialRing):
                        inner = self.base.pow(self.base.parse(name), e)
                        term = self.mul(term, self.const(inner))
                    else:
                        raise SchemaError(f"unknown variable {name!r} for {self}")
            acc = self.add(acc, term)
        return acc

    def format(self, a):
        if not a.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms(a):
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, exps) if e
            )
            cs = self.base.format(c)
            if isinstance(self.base, PolynomialRing) and len(c.terms) > 1:
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")


# ---------------------------------------------------------------------------
# wrapped elements


@dataclass(frozen=True)
class RingElement:
    """A raw value tagged with its ring; supports ``+ - * **`` and ``==``."""

    ring: Ring
    value: Any

    def _other(self, other) -> Any:
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise DescriptorMismatchError(
                    f"cannot combine elements of {self.ring} and {other.ring}"
                )
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else RingElement(self.ring, self.ring.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else RingElement(self.ring, self.ring.sub(self.value, v))

    def __rsub__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else RingElement(self.ring, self.ring.sub(v, self.value))

    def __mul__(self, other):
        v = self._other(other)
        return NotImplemented if v is NotImplemented else RingElement(self.ring, self.ring.mul(self.value, v))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.value))

    def __pow__(self, n: int):
        return RingElement(self.ring, self.ring.pow(self.value, n))

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring == other.ring and self.ring.eq(self.value, other.value)
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring.eq(self.value, self.ring.from_int(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.value))

    def __str__(self):
        return self.ring.format(self.value)

    def __repr__(self):
        return f"{self.ring.descriptor}({self.ring.format(self.value)})"


# ---------------------------------------------------------------------------
# descriptor parsing

_BASE = re.compile(r"^(zmod:(\d+)|fp:(\d+)|z)")


def parse_ring(text: str) -> Ring:
    """Build a ring from a descriptor string such as ``fp:5[x]``."""
    if isinstance(text, Ring):
        return text
    if not isinstance(text, str):
        raise SchemaError(f"ring descriptor must be a string, got {text!r}")
    s = text.strip().lower().replace(" ", "")
    m = _BASE.match(s)
    if not m:
        raise SchemaError(f"unknown ring descriptor {text!r}")
    try:
        return _build(m, s[m.end():], text)
    except PreconditionError as e:
        raise SchemaError(f"bad ring descriptor {text!r}: {e}") from e


def _build(m, rest: str, text: str) -> Ring:
    if m.group(2):
        ring: Ring = IntegersModN(int(m.group(2)))
    elif m.group(3):
        ring = PrimeField(int(m.group(3)))
    else:
        ring = ZZ
    while rest:
        pm = re.match(r"^\[([^\]]+)\]", rest)
        if not pm:
            raise SchemaError(f"cannot parse ring descriptor {text!r}")
        ring = PolynomialRing(ring, tuple(pm.group(1).split(",")))
        rest = rest[pm.end():]
    return ring
