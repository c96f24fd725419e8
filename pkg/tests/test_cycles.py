import random

import pytest
from hypothesis import given, strategies as st

from oracles import series_of_coords
from wittlab import cycles as C
from wittlab import witt as W
from wittlab.errors import ModulusError, NonUFDError, UnitSeriesError
from wittlab.rings import parse_ring
from wittlab.series import UnitSeries
from wittlab.truncation import full

Z = parse_ring("z")
F5 = parse_ring("fp:5")
F5x = parse_ring("fp:5[x]")
x = F5x.gen("x")


def one_term(a, n, m, ring=F5x, mult=1):
    return C.cycle_class([C.gamma(a, n, ring, mult)], m, ring)


def nf(ring, m, entries):
    out = [ring.zero()] * m
    for n, a in entries.items():
        out[n - 1] = a
    return C.GammaCycleClass(ring, m, tuple(out))


def test_tau_examples():
    for m in (1, 4, 7):
        assert C.tau([1, -5], m, Z).normal_form == (5,) + (0,) * (m - 1)
        assert C.tau([1] + [0] * m + [-1], m, Z).is_zero()
    assert C.tau([1, -2, 1], 2, Z).normal_form == (2, -1)
    with pytest.raises(UnitSeriesError):
        C.tau([3, 1], 2, Z)


def test_wedge_examples():
    a, b = x, F5x.add(x, F5x.one())
    assert C.wedge(one_term(a, 1, 4), one_term(b, 1, 4)) == one_term(F5x.mul(a, b), 1, 4)
    ab = F5x.mul(F5x.pow(a, 3), F5x.pow(b, 2))
    for m in (6, 8):
        assert C.wedge(one_term(a, 2, m), one_term(b, 3, m)) == one_term(ab, 6, m)
    assert C.wedge(one_term(a, 2, 5), one_term(b, 2, 5)) == one_term(F5x.mul(a, b), 2, 5, mult=2)
    assert C.wedge(one_term(a, 2, 5), one_term(b, 3, 5)).is_zero()


def test_wedge_over_z_scales():
    # 2 Gamma_{ab,2} over Z is a genuine multiple, not a Witt double
    w = C.wedge(one_term(3, 2, 4, Z), one_term(5, 2, 4, Z))
    assert w == C.class_scale(2, one_term(15, 2, 4, Z))


def test_frobenius_verschiebung_restriction():
    a = F5x.add(x, F5x.from_int(2))
    assert C.cycle_frobenius(2, one_term(a, 2, 5)) == one_term(a, 1, 2, mult=2)
    assert C.cycle_verschiebung(3, one_term(a, 2, 2)) == one_term(a, 6, 8)
    entries = {k: F5x.from_int(k) for k in range(1, 5)}
    assert C.cycle_restrict(nf(F5x, 4, entries)) == nf(F5x, 3, {k: v for k, v in entries.items() if k <= 3})


def test_frobenius_modulus_bookkeeping():
    cls = one_term(x, 1, 7)
    assert C.cycle_frobenius(2, cls).modulus == 3
    assert C.cycle_verschiebung(2, one_term(x, 1, 3)).modulus == 7
    with pytest.raises(ModulusError):
        C.cycle_frobenius(3, one_term(x, 1, 2))


def test_mismatched_modulus():
    with pytest.raises(ModulusError):
        C.wedge(one_term(x, 1, 3), one_term(x, 1, 4))


def test_non_ufd_refused():
    with pytest.raises(NonUFDError):
        C.tau([1, 1], 2, parse_ring("zmod:4"))


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=6), st.lists(st.integers(-9, 9), min_size=1, max_size=6))
def test_normal_form_unique(a, b):
    m = max(len(a), len(b))
    a, b = a + [0] * (m - len(a)), b + [0] * (m - len(b))
    same = series_of_coords(a, m) == series_of_coords(b, m)
    assert same == (a == b)


def test_cycle_sum_normalizes():
    # Gamma_(1-2t+t^2) = Gamma_(1-t) + Gamma_(1-t) as cycles; the class is (2, -1)
    cyc = C.GammaCycle(Z, (1, -2, 1))
    assert C.cycle_class([cyc], 2, Z).normal_form == (2, -1)
    assert C.cycle_class([C.gamma(1, 1, Z), C.gamma(1, 1, Z)], 2, Z).normal_form == (2, -1)


def test_round_trip_random():
    rng = random.Random(3)
    for ring in (Z, F5x):
        for _ in range(50):
            w = W.random_witt(ring, full(rng.randint(1, 8)), rng)
            cls = C.tau_witt(w)
            assert C.untau(cls) == w
            assert C.tau(W.to_series(w).coeffs, cls.modulus, ring) == cls


def test_tau_compat_examples():
    a, b = W.teichmuller(x, full(5), F5x), W.teichmuller(F5x.from_int(3), full(5), F5x)
    rep = C.tau_compat_check(a, b)
    assert rep.ok, rep.failures
    assert C.tau_compat_check(W.zero(F5x, full(4))).checks["add"]


def test_scalar_action():
    cls = one_term(x, 1, 3)
    assert C.scalar_action(W.one(F5, full(3)), cls) == cls
    c = F5.from_int(3)
    expect = one_term(F5x.mul(F5x.from_int(3), x), 1, 3)
    assert C.scalar_action(W.teichmuller(c, full(3), F5), cls) == expect
    rng = random.Random(4)
    for _ in range(20):
        w1, w2 = W.random_witt(F5, full(4), rng), W.random_witt(F5, full(4), rng)
        y = C.tau_witt(W.random_witt(F5x, full(4), rng))
        assert C.scalar_action(W.witt_mul(w1, w2), y) == C.scalar_action(w1, C.scalar_action(w2, y))


def test_series_view():
    cls = C.tau([1, -2, 1], 2, Z)
    assert cls.series() == UnitSeries.from_coeffs(Z, [1, -2, 1])
