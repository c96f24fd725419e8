import random

import pytest
from hypothesis import given, strategies as st

from oracles import ghost_z, witt_add_z, witt_mul_z
from wittlab import witt as W
from wittlab.errors import DescriptorMismatchError, TruncationError
from wittlab.rings import parse_ring
from wittlab.truncation import TruncationSet, full

Z = parse_ring("z")
F7 = parse_ring("fp:7")
F5x = parse_ring("fp:5[x]")


def vec(coords, ring=Z, S=None):
    return W.WittVector.of(ring, coords, S)


def test_ghost_examples():
    assert W.ghost(vec([2, -1])).components == (2, 2)
    assert W.ghost(vec([1, 1])).components == (1, 3)
    for a in (-3, 2, 5):
        assert W.ghost(W.teichmuller(a, full(5), Z)).components == tuple(a ** k for k in range(1, 6))


def test_teichmuller_sum():
    one = W.teichmuller(1, full(2), Z)
    assert W.witt_add(one, one).coords == (2, -1)


def test_identities():
    rng = random.Random(0)
    for ring in (Z, F7, F5x):
        for m in (1, 3, 6):
            x = W.random_witt(ring, full(m), rng)
            assert W.witt_add(x, W.zero(ring, full(m))) == x
            assert W.witt_mul(x, W.one(ring, full(m))) == x
            assert W.teichmuller(ring.zero(), full(m), ring) == W.zero(ring, full(m))
            assert W.teichmuller(ring.one(), full(m), ring) == W.one(ring, full(m))


def test_negation_f7():
    rng = random.Random(7)
    for _ in range(100):
        x = W.random_witt(F7, full(rng.randint(1, 8)), rng)
        assert W.witt_add(x, W.witt_neg(x)).is_zero()


def test_teichmuller_multiplicative():
    rng = random.Random(3)
    for _ in range(20):
        a, b = F5x.random(rng), F5x.random(rng)
        S = full(4)
        assert W.witt_mul(W.teichmuller(a, S, F5x), W.teichmuller(b, S, F5x)) == W.teichmuller(F5x.mul(a, b), S, F5x)


def test_verschiebung_product():
    a, b = 5, 7
    x = W.verschiebung(2, W.teichmuller(a, full(3), Z), 6)
    y = W.verschiebung(3, W.teichmuller(b, full(2), Z), 6)
    assert W.witt_mul(x, y).coords == (0, 0, 0, 0, 0, a ** 3 * b ** 2)


@given(st.lists(st.integers(-30, 30), min_size=1, max_size=7), st.data())
def test_against_ghost_oracle_z(xs, data):
    ys = data.draw(st.lists(st.integers(-30, 30), min_size=len(xs), max_size=len(xs)))
    x, y = vec(xs), vec(ys)
    assert list(W.witt_add(x, y).coords) == witt_add_z(xs, ys)
    assert list(W.witt_mul(x, y).coords) == witt_mul_z(xs, ys)


def test_routes_agree_on_torsion_rings():
    rng = random.Random(11)
    for ring in (F7, parse_ring("zmod:4"), F5x):
        for _ in range(15):
            S = full(rng.randint(1, 6))
            x, y = W.random_witt(ring, S, rng), W.random_witt(ring, S, rng)
            for op, fn in (("add", W.witt_add), ("mul", W.witt_mul)):
                expect = W.ghost_route(op, x, y)
                assert fn(x, y, "series") == expect
                assert fn(x, y, "universal") == expect


def test_nonfull_sets():
    rng = random.Random(4)
    S = TruncationSet.of([1, 2, 3, 4, 6, 12])
    for _ in range(10):
        xs = [rng.randint(-5, 5) for _ in S]
        ys = [rng.randint(-5, 5) for _ in S]
        out = W.witt_mul(vec(xs, S=S), vec(ys, S=S))
        assert list(out.coords) == witt_mul_z(xs, ys, list(S))
        with pytest.raises(TruncationError):
            W.witt_add(vec(xs, S=S), vec(ys, S=S), "series")


def test_frobenius_examples():
    rng = random.Random(1)
    S = full(6)
    x = W.random_witt(Z, S, rng)
    assert W.frobenius(1, x) == x
    a = 3
    assert W.frobenius(2, W.teichmuller(a, S, Z)) == W.teichmuller(a * a, full(3), Z)
    ta = W.teichmuller(a, full(3), Z)
    assert W.frobenius(2, W.verschiebung(2, ta, 7)) == W.witt_add(ta, ta)
    for r in (2, 3, 4):
        g = ghost_z(list(x.coords))
        assert list(W.ghost(W.frobenius(r, x)).components) == [g[r * s - 1] for s in range(1, 6 // r + 1)]


def test_frobenius_empty_target():
    with pytest.raises(TruncationError):
        W.frobenius(4, W.zero(Z, full(3)))


def test_verschiebung_examples():
    assert W.verschiebung(2, W.teichmuller(9, full(2), Z), 4).coords == (0, 9, 0, 0)
    rng = random.Random(8)
    for _ in range(20):
        r, s = rng.randint(1, 4), rng.randint(1, 4)
        x = W.random_witt(F7, full(2), rng)
        assert W.verschiebung(r, W.verschiebung(s, x)) == W.verschiebung(r * s, x)
        assert W.verschiebung(1, x) == x


def test_restriction():
    x = vec([4, 5, 6])
    assert W.witt_restrict(x, 2).coords == (4, 5)
    with pytest.raises(TruncationError):
        W.witt_restrict(vec([1, 2]), TruncationSet.of([1, 3]))


def test_restriction_commutes():
    rng = random.Random(9)
    for r in (1, 2, 3):
        for m in (1, 2, 3):
            x = W.random_witt(F7, full(r * m + 2 * r - 1), rng)
            lhs = W.witt_restrict(W.frobenius(r, x), m)
            rhs = W.frobenius(r, W.witt_restrict(x, r * m + r - 1))
            assert lhs == rhs
            y = W.random_witt(F7, full(m + 1), rng)
            lhs = W.witt_restrict(W.verschiebung(r, y), r * m + r - 1)
            assert lhs == W.verschiebung(r, W.witt_restrict(y, m), r * m + r - 1)


def test_functoriality_z_to_fp():
    rng = random.Random(12)
    for _ in range(20):
        S = full(rng.randint(2, 6))
        x, y = W.random_witt(Z, S, rng), W.random_witt(Z, S, rng)
        red = lambda v: W.witt_map(v, F7.reduce, F7)  # noqa: E731
        assert red(W.witt_add(x, y)) == W.witt_add(red(x), red(y))
        assert red(W.witt_mul(x, y)) == W.witt_mul(red(x), red(y))
        assert red(W.frobenius(2, x)) == W.frobenius(2, red(x))
        assert red(W.verschiebung(2, x)) == W.verschiebung(2, red(x))


def test_ghost_injective_over_z():
    rng = random.Random(13)
    for _ in range(30):
        x = W.random_witt(Z, full(rng.randint(1, 8)), rng)
        assert W.from_ghost(W.ghost(x)) == x


def test_mismatch_errors():
    with pytest.raises(DescriptorMismatchError):
        W.witt_add(W.zero(Z, full(2)), W.zero(F7, full(2)))
    with pytest.raises(TruncationError):
        W.witt_add(W.zero(Z, full(2)), W.zero(Z, full(3)))
