import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import brute_homology, det_q, invariant_factors, random_complex, random_matrix
from wittlab.errors import InvalidComplexError, SchemaError
from wittlab.homology import ChainComplex, homology, homology_all, smith_normal_form


def as_list(M):
    return [[int(v) for v in row] for row in np.asarray(M)]


def check_snf(rows):
    res = smith_normal_form(rows)
    U, D, V = (as_list(A) for A in res)
    m, n = len(rows), len(rows[0])
    assert np.array_equal(np.array(res.U, dtype=object) @ res.D @ res.V, np.array(rows, dtype=object))
    assert abs(det_q(U)) == 1 and abs(det_q(V)) == 1
    assert as_list(res.U @ res.Uinv) == np.eye(m, dtype=int).tolist()
    assert as_list(res.V @ res.Vinv) == np.eye(n, dtype=int).tolist()
    assert all(D[i][j] == 0 for i in range(m) for j in range(n) if i != j)
    diag = [d for d in res.diagonal if d]
    assert all(d > 0 for d in diag)
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))
    return res


def test_snf_examples():
    assert check_snf([[2, 4], [6, 8]]).diagonal == [2, 4]
    assert check_snf([[0, 0, 0], [0, 0, 0]]).diagonal == [0, 0]
    assert check_snf([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).diagonal == [1, 1, 1]


def test_snf_random():
    rng = random.Random(21)
    for _ in range(100):
        rows = random_matrix(rng)
        res = check_snf(rows)
        assert res.invariant_factors == invariant_factors(rows)


@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_snf_property(m, n, data):
    rows = data.draw(st.lists(st.lists(st.integers(-30, 30), min_size=n, max_size=n), min_size=m, max_size=m))
    check_snf(rows)


def test_homology_examples():
    C = ChainComplex([1, 1], [[[2]]])
    assert [h.labels() for h in homology_all(C)] == [["Z/2"], []]
    C = ChainComplex([2, 3, 1], [])
    assert [homology(C, n).free_rank for n in range(3)] == [2, 3, 1]


def test_rejects_nonzero_square():
    with pytest.raises(InvalidComplexError):
        ChainComplex([1, 1, 1], [[[1]], [[1]]])


def test_rejects_bad_shapes():
    with pytest.raises(SchemaError):
        ChainComplex([1, 2], [[[1]]])


def test_random_complexes_vs_oracle():
    rng = random.Random(8)
    for _ in range(100):
        ranks, mats = random_complex(rng)
        C = ChainComplex(ranks, mats)
        got = [(h.free_rank, tuple(h.torsion)) for h in homology_all(C)]
        assert got == brute_homology(ranks, mats)


def test_oracle_sees_designed_torsion():
    # Z -6-> Z  and a lone Z in degree 1: H0 = Z/6, H1 = Z
    assert brute_homology([1, 1], [[[6]]]) == [(0, (6,)), (0, ())]
    assert brute_homology([1, 2], [[[6, 0]]]) == [(0, (6,)), (1, ())]
