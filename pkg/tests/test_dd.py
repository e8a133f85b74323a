from math import comb

import pytest
from hypothesis import given, strategies as st

from starter_search.dd import (
    InterceptVector,
    UnsupportedShape,
    dd_bound,
    dd_solve,
    enumerate_masks,
    intercept_vectors,
)


def _pairs(sols):
    return [(s.x, s.y) for s in sols]


def test_dd_solve_known_cases():
    assert _pairs(dd_solve(10, 41, 11)) == [(4, 1)]
    assert _pairs(dd_solve(10, 11, 41)) == [(1, 4)]
    assert _pairs(dd_solve(8, 3, 19)) == [(1, 9)]
    assert _pairs(dd_solve(8, 19, 3)) == [(9, 1)]
    assert dd_solve(7, 3, 19) == []
    assert dd_solve(7, 19, 3) == []
    with pytest.raises(ValueError):
        dd_solve(10, 1, 451)


def test_dd_bound():
    assert dd_bound(10, 451) == (1936, True)
    assert dd_bound(10, 2000) == (1936, False)


@given(st.integers(3, 14), st.integers(2, 60), st.integers(2, 60))
def test_dd_round_trip_and_swap(k, c, d):
    sols = dd_solve(k, c, d)
    m = comb(k, 2)
    for s in sols:
        assert (m - s.x) % s.y == 0 and (m - s.x) // s.y == c
        assert (m - s.y) % s.x == 0 and (m - s.y) // s.x == d
    assert sorted(_pairs(sols)) == sorted((y, x) for x, y in _pairs(dd_solve(k, d, c)))


def test_intercept_vectors_451_grid():
    cols = intercept_vectors(10, 4, 11, 41)
    rows = intercept_vectors(10, 1, 41, 11)
    assert [v.short() for v in cols] == ["[4,5,1,1]", "[5,2,4,0]"]
    assert [v.short() for v in rows] == ["[32,8,1,0]"]


def test_intercept_vectors_no_inner_pairs():
    vs = intercept_vectors(5, 0, 9, 4)
    assert len(vs) == 1 and vs[0].entries[:2] == (4, 5) and not any(vs[0].entries[2:])


@given(st.integers(2, 11), st.integers(0, 12), st.integers(1, 15), st.integers(1, 6))
def test_intercept_identities(k, x, d, c):
    for v in intercept_vectors(k, x, d, c):
        assert v.n_classes == d and v.k == k and v.inner_pairs == x
        assert all(v[i] == 0 for i in range(c + 1, k + 1))


def test_masks_total_seven():
    rows = intercept_vectors(10, 1, 41, 11)[0]
    a, b = intercept_vectors(10, 4, 11, 41)
    assert [m.anchors for m in enumerate_masks(rows, a)] == [(1, 1), (1, 2), (1, 3), (2, 3)]
    assert [m.anchors for m in enumerate_masks(rows, b)] == [(1, 1), (1, 2), (2, 2)]


def test_masks_need_two_of_a_kind():
    rows = InterceptVector((32, 8, 1, 0), 11)
    cols = InterceptVector((4, 5, 1, 1), 41)
    assert (2, 2) not in [m.anchors for m in enumerate_masks(rows, cols)]
    with pytest.raises(UnsupportedShape):
        enumerate_masks(cols, rows)
