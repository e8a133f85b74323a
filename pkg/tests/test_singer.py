import itertools

import pytest

from starter_search.groups import GroupError, enumerate_group, partition_is_invariant
from starter_search.singer import (
    PrimeFieldPoly,
    build_plane,
    find_primitive_cubic,
    is_irreducible_cubic,
    order_of_x,
    singer_partition,
)


def test_primitive_cubics():
    f2 = find_primitive_cubic(2)
    assert f2.coefficients == (1, 1, 0, 1) and order_of_x(f2) == 7
    assert not is_irreducible_cubic(PrimeFieldPoly((1, 1, 1, 1), 2))
    f7 = find_primitive_cubic(7)
    # regression constant from the exhaustive scan
    assert f7.coefficients == (2, 3, 0, 1) and str(f7) == "X^3 + 3X + 2"
    assert order_of_x(f7) == 342 and is_irreducible_cubic(f7)


def test_poly_normalises():
    f = PrimeFieldPoly((9, 0, 7, 0), 7)
    assert f.coefficients == (2,) and f.degree == 0


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_plane_axioms(p):
    plane = build_plane(p)
    n = p * p + p + 1
    assert plane.n == n and len(plane.lines) == n
    assert all(len(L) == p + 1 for L in plane.lines)
    sets = [set(L) for L in plane.lines]
    for a, b in itertools.combinations(range(1, n + 1), 2):
        assert sum(1 for L in sets if a in L and b in L) == 1
    for A, B in itertools.combinations(sets, 2):
        assert len(A & B) == 1
    # Singer cycle: one cycle through every point, one orbit on lines
    assert plane.singer.order() == n and sorted(plane.base_orbit) == list(range(1, n + 1))
    line_set = {tuple(L) for L in plane.lines}
    L = plane.lines[0]
    orbit = set()
    for _ in range(n):
        orbit.add(tuple(sorted(L)))
        L = [plane.singer(x) for x in L]
    assert orbit == line_set
    # counting identities with v = b, k = r = p + 1
    v = b = n
    k = r = p + 1
    assert b * k * (k - 1) == v * (v - 1) and b * k == v * r and v - 1 == r * (k - 1)


def test_singer_partitions():
    plane = build_plane(7)
    g = enumerate_group([plane.singer])
    assert g.order == 57
    for a in (3, 19):
        classes = singer_partition(plane, a)
        assert len(classes) == a and all(len(c) == 57 // a for c in classes)
        assert partition_is_invariant(g, classes)
    with pytest.raises(GroupError):
        singer_partition(build_plane(2), 7)


def test_guards():
    with pytest.raises(ValueError):
        build_plane(37)
    with pytest.raises(ValueError):
        build_plane(4)
