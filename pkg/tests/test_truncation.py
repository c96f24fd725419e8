import pytest

from wittlab.errors import TruncationError
from wittlab.truncation import TruncationSet, full, quotient, restrict


def T(*xs):
    return TruncationSet.of(xs)


def test_full():
    assert list(full(1)) == [1]
    assert list(full(6)) == [1, 2, 3, 4, 5, 6]
    with pytest.raises(TruncationError):
        full(0)


def test_divisor_closed():
    with pytest.raises(TruncationError):
        T(1, 4)
    assert list(T(1, 2, 4)) == [1, 2, 4]


@pytest.mark.parametrize("m", range(1, 8))
def test_quotient_full(m):
    assert quotient(full(2 * m + 1), 2) == full(m)
    assert quotient(full(m), 1) == full(m)


def test_quotient_enumeration():
    assert quotient(T(1, 2, 3, 4, 6, 12), 3) == T(1, 2, 4)
    with pytest.raises(TruncationError):
        quotient(full(3), 4)


def test_restrict_plans():
    plan = restrict(full(5), full(4))
    assert plan.dropped == (5,)
    assert plan.apply("abcde") == tuple("abcd")
    assert restrict(full(3), full(3)).is_identity
    assert restrict(T(1, 2, 4), T(1, 2)).dropped == (4,)
    with pytest.raises(TruncationError):
        restrict(T(1, 2), T(1, 3))
