import random

import pytest

from wittlab import cycles as C
from wittlab import ideals as I
from wittlab.errors import ModulusError, NonUFDError
from wittlab.rings import parse_ring

Z = parse_ring("z")
F5x = parse_ring("fp:5[x]")


def substituted_face(ring, eq, value):
    """Generator of {eq = 0} on the face y1 = value, normalized to constant term 1, or None."""
    Rt, P = I.t_ring(ring), I.ty_ring(ring)
    p = P.substitute(eq, {"y1": Rt.from_int(value)}, Rt)
    coeffs = Rt.coeffs(p)
    if Rt.is_constant(p):
        assert not Rt.is_zero(p), "equation vanishes on the whole face"
        return None  # a nonzero constant has no zeros; the face is empty
    c0 = coeffs[0]
    sign = ring.one() if ring.eq(c0, ring.one()) else ring.neg(ring.one())
    assert ring.eq(ring.mul(sign, c0), ring.one())
    return tuple(ring.mul(sign, c) for c in coeffs)


def test_axiom_v_explicit_case():
    x = F5x.gen("x")
    rep = I.axiom_v_check(x, 3, F5x)
    assert rep.holds and rep.simplification_verified
    Rt = I.t_ring(F5x)
    one_minus = Rt.sub(Rt.one(), Rt.mul(Rt.const(F5x.pow(x, 3)), Rt.gen("t")))
    expected = I.TriangularIdeal(F5x, one_minus, Rt.const(x))
    assert rep.lhs.equals(expected) and rep.rhs.equals(expected)


@pytest.mark.parametrize("ring", [Z, F5x])
def test_axiom_v_degenerate(ring):
    for a in (0, 1):
        rep = I.axiom_v_check(a, 4, ring)
        assert rep.holds and rep.lhs is None and rep.rhs is None


def test_axiom_v_random():
    rng = random.Random(6)
    for ring in (Z, F5x):
        for _ in range(20):
            a = ring.random(rng)
            for r in range(1, 7):
                assert I.axiom_v_check(a, r, ring).holds


def test_triangular_ideal_membership():
    Rt = I.t_ring(Z)
    u = Rt.sub(Rt.one(), Rt.mul(Rt.const(4), Rt.gen("t")))
    J = I.TriangularIdeal(Z, u, Rt.const(2))
    J2 = I.TriangularIdeal(Z, u, Rt.const(3))
    assert J.contains(J.generators()[0]) and not J.equals(J2)


@pytest.mark.parametrize("m", [1, 2, 5])
def test_bounding_cycle_faces(m):
    ring = F5x
    for n in (m + 1, m + 2, m + 4):
        for f in ([1], [0, 1], [2, 0, 3]):
            b = I.bounding_cycle(n, f, m, ring)
            one = substituted_face(ring, b.equation, 1)
            tnf = [0] * n + f
            expect = tuple(ring.from_int(c) for c in [1] + [0] * (len(tnf) - 1))
            expect = tuple(ring.sub(e, ring.from_int(c)) for e, c in zip(expect, tnf))
            assert one == expect == b.faces[1].generator
            assert substituted_face(ring, b.equation, 0) is None and b.faces[0] is None
            assert b.modulus_ok


def test_bounding_cycle_examples():
    m = 3
    b = I.bounding_cycle(m + 1, [1], m, Z)
    assert b.faces[1] == C.GammaCycle(Z, (1,) + (0,) * m + (-1,))
    assert C.cycle_class([b.faces[1]], m, Z).is_zero()
    b = I.bounding_cycle(m + 2, [0, 1], m, Z)
    assert b.faces[1] == C.GammaCycle(Z, (1,) + (0,) * (m + 2) + (-1,))
    with pytest.raises(ModulusError):
        I.bounding_cycle(m, [1], m, Z)


def test_mod1_witness():
    for ring in (Z, F5x):
        w = I.mod1_collapse_witness([C.gamma(ring.one(), 1, ring)], ring)
        unit_point = C.gamma(ring.one(), 1, ring)  # [1] = the point t = 1
        assert w.faces_C[1] == unit_point and w.faces_C[0] is None
        assert substituted_face(ring, w.C, 1) == unit_point.generator
        assert substituted_face(ring, w.C, 0) is None
        assert w.chain_boundary == [unit_point]
        empty = I.mod1_collapse_witness([], ring)
        assert empty.chain == [] and empty.chain_boundary == []
    with pytest.raises(ModulusError):
        I.mod1_collapse_witness([], Z, m=1)


def test_mod1_witness_bounds_general_cycles():
    rng = random.Random(2)
    for _ in range(10):
        cyc = C.GammaCycle(Z, (1,) + tuple(rng.randint(-3, 3) for _ in range(3)), rng.choice((1, -2)))
        if cyc.is_empty:
            continue
        w = I.mod1_collapse_witness([cyc], Z)
        (eq, k), = w.chain
        assert substituted_face(Z, eq, 1) == C.GammaCycle(Z, cyc.generator).generator
        assert substituted_face(Z, eq, 0) is None


def test_non_ufd():
    with pytest.raises(NonUFDError):
        I.axiom_v_check(2, 2, parse_ring("zmod:6"))
