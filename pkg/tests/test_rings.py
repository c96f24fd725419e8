import random

import pytest
from hypothesis import given, strategies as st

from wittlab.errors import DescriptorMismatchError, SchemaError
from wittlab.rings import parse_ring

RINGS = ["z", "zmod:4", "fp:7", "fp:5[x]", "z[x]", "z[x,y]"]


def test_small_examples():
    F7 = parse_ring("fp:7")
    assert F7(3) + F7(5) == F7(1)
    Zx = parse_ring("z[x]")
    x = Zx(Zx.gen("x"))
    assert (1 + x) * (1 - x) == 1 - x * x


@pytest.mark.parametrize("desc", RINGS)
def test_descriptor_roundtrip(desc):
    R = parse_ring(desc)
    assert R.descriptor == desc
    assert parse_ring(R.descriptor) == R


@pytest.mark.parametrize("bad", ["", "q", "fp:6", "fp:x", "zmod:0", "z[", "z[x,x]"])
def test_bad_descriptors(bad):
    with pytest.raises(SchemaError):
        parse_ring(bad)


def test_mixed_rings_rejected():
    with pytest.raises(DescriptorMismatchError):
        parse_ring("fp:5")(1) + parse_ring("fp:7")(1)


@pytest.mark.parametrize("desc", RINGS)
def test_ring_laws(desc):
    R = parse_ring(desc)
    rng = random.Random(desc)
    for _ in range(50):
        a, b, c = (R.random(rng) for _ in range(3))
        assert R.eq(R.add(a, b), R.add(b, a))
        assert R.eq(R.mul(R.mul(a, b), c), R.mul(a, R.mul(b, c)))
        assert R.eq(R.mul(a, R.add(b, c)), R.add(R.mul(a, b), R.mul(a, c)))
        assert R.is_zero(R.mul(a, R.zero()))
        assert R.eq(R.mul(a, R.one()), a)
        assert R.is_zero(R.add(a, R.neg(a)))
        assert R.eq(R.pow(a, 3), R.mul(a, R.mul(a, a)))


@pytest.mark.parametrize("desc", RINGS)
def test_encode_decode(desc):
    R = parse_ring(desc)
    rng = random.Random(1)
    for _ in range(30):
        a = R.random(rng)
        assert R.eq(R.decode(R.encode(a)), a)


def test_polynomial_text():
    R = parse_ring("fp:7[x]")
    p = R.parse("3*x^2-1")
    assert R.eq(p, R.parse("6 + 3*x^2"))
    assert R.eq(R.decode("3*x^2 - 1"), p)


@given(st.integers(-10**30, 10**30), st.integers(-10**30, 10**30))
def test_big_integers_exact(a, b):
    Z = parse_ring("z")
    assert Z.decode(Z.encode(Z.mul(a, b))) == a * b


def test_reduction_from_cover():
    F5x = parse_ring("fp:5[x]")
    Zx = F5x.cover()
    p = Zx.parse("7*x^3 + 10*x - 3")
    assert F5x.eq(F5x.reduce(p), F5x.parse("2*x^3 + 2"))
