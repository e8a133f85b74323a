"""Kernel against the literal recursion and a brute-force filter on a 5 x 3 grid."""

import itertools
import random

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from starter_search import reference
from starter_search.config import parse_spec
from starter_search.dd import InterceptVector, intercept_vectors
from starter_search.groups import GridGeometry, build_parameter_set_group, build_translation_group, orbits_on_pairs
from starter_search.orbit_condition import OrbitTargets, make_targets
from starter_search.search import (
    ConfigError,
    SearchConfig,
    candidate_points,
    census,
    census_chunks,
    search,
)

from conftest import SET2_SPEC, set_group, pg7_problem
from oracles import arrangements, completable

SMALL = GridGeometry(5, 3)
SMALL_GROUP = build_translation_group(SMALL)
SMALL_TABLE = orbits_on_pairs(SMALL_GROUP)
ROW_VECTORS = [InterceptVector((2, 2, 1, 0, 0), 3), InterceptVector((1, 4, 0, 0, 0), 3)]
COL_VECTORS = [InterceptVector((0, 2, 1, 0, 0), 5), InterceptVector((1, 1, 0, 1, 0), 5), InterceptVector((2, 0, 0, 0, 1), 5)]
RULE_SETS = [
    ("fixed_initial_block",),
    ("fixed_initial_block", "first_extension_in_row_1"),
    ("fixed_initial_block", "first_extension_in_row_1", "col0_at_least_col1"),
]


def small_config(quota, rows=0, cols=0, rules=0, initial=(1,), depth=None, orbit=False):
    targets = OrbitTargets(15, tuple(quota), SMALL_GROUP.order, 1)
    return SearchConfig(
        SMALL, SMALL_GROUP, SMALL_TABLE, targets, 4, ROW_VECTORS[rows], COL_VECTORS[cols],
        tuple(initial), RULE_SETS[rules], depth, orbit,
    )


def brute_column_ok(cfg, block, cur_col):
    g = cfg.geometry
    colinf = tuple(sum(1 for p in block if g.col_of(p) == f) for f in range(g.n_cols))
    return completable(colinf, max(cur_col, 0), arrangements(cfg.col_vector.occupancies()))


def brute_filter(cfg, q0, stop, use_orbit, full, prefix_counts=None):
    """Every ascending extension whose every prefix passes; columns checked by brute force."""
    out = []
    m = stop - len(cfg.initial_block)
    for added in itertools.combinations(sorted(q0), m):
        good = True
        for j in range(1, m + 1):
            pre = list(added[:j])
            block = list(cfg.initial_block) + pre
            if not (
                reference.rows_ok(cfg, block)
                and brute_column_ok(cfg, block, cfg.geometry.col_of(pre[-1]))
                and reference.symmetry_ok(cfg, pre)
                and (not use_orbit or reference.partial_orbit_ok(cfg, block))
            ):
                good = False
                break
        if good:
            block = tuple(sorted(cfg.initial_block + added))
            if not full or reference.final_ok(cfg, block):
                out.append(block)
    return sorted(out)


quota_st = st.lists(st.integers(0, 2), min_size=SMALL_TABLE.n_orbits, max_size=SMALL_TABLE.n_orbits)


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(
    quota=quota_st,
    rows=st.integers(0, 1),
    cols=st.integers(0, 2),
    rules=st.integers(0, 2),
    initial=st.sampled_from([(1,), (1, 6), (1, 2), (2,)]),
)
def test_search_equals_reference_and_brute_force(quota, rows, cols, rules, initial):
    try:
        cfg = small_config(quota, rows, cols, rules, initial)
        q0 = candidate_points(cfg)
    except ConfigError:
        return
    res = search(cfg)
    got = [b.points for b in res.blocks]
    assert got == reference.funct(cfg, q0)
    assert got == brute_filter(cfg, q0, 4, True, True)
    assert res.count == len(got)


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(quota=quota_st, cols=st.integers(0, 2), rules=st.integers(0, 2), orbit=st.booleans(), depth=st.integers(2, 4))
def test_census_and_node_counts_equal_brute_force(quota, cols, rules, orbit, depth):
    cfg = small_config(quota, 0, cols, rules, (1,), depth, orbit)
    q0 = candidate_points(cfg)
    res = census(cfg, capacity=10_000)
    got = [b.points for b in res.blocks]
    assert got == brute_filter(cfg, q0, depth, orbit, False)
    assert got == reference.funct(cfg, q0, depth, use_orbit=orbit, full=False)
    assert res.count == len(got)
    for d in range(2, depth + 1):
        assert res.stats.nodes_by_depth[d] == len(brute_filter(cfg, q0, d, orbit, False))


def test_quota_sum_six_finds_blocks():
    # all-ones quota on six of the seven orbits admits starter blocks on the small grid
    found = 0
    for zero in range(SMALL_TABLE.n_orbits):
        quota = [1] * SMALL_TABLE.n_orbits
        quota[zero] = 0
        for cols in range(3):
            cfg = small_config(quota, 0, cols, 1)
            res = search(cfg)
            found += res.count
            assert [b.points for b in res.blocks] == reference.funct(cfg, candidate_points(cfg))
    assert found > 0


def test_reference_columns_match_brute_force():
    rng = random.Random(1)
    _, table, t = set_group(2, 1)
    spec = parse_spec(SET2_SPEC)
    geom = spec.geometry
    row = spec.selected_row_vector()
    for vec in spec.column_vectors():
        cfg = SearchConfig(geom, set_group(2, 1)[0], table, t, 10, row, vec, (1, 42))
        arrs = arrangements(vec.occupancies())
        for _ in range(300):
            n = rng.randint(0, 6)
            added = sorted(rng.sample(range(43, 452), n))
            block = [1, 42] + added
            cur = geom.col_of(added[-1]) if added else 0
            colinf = tuple(sum(1 for p in block if geom.col_of(p) == f) for f in range(11))
            assert reference.columns_ok(cfg, block, cur) == completable(colinf, cur, arrs)


def _set2_config(vector=0, depth=None, orbit=False):
    spec = parse_spec(SET2_SPEC)
    g, table, t = set_group(2, 1)
    return SearchConfig(spec.geometry, g, table, t, 10, spec.selected_row_vector(),
                        spec.column_vectors()[vector], spec.initial(), spec.symmetry, depth, orbit)


def test_parallel_matches_serial():
    cfg = _set2_config(depth=5, orbit=True)
    a = census(cfg, capacity=5000, jobs=1)
    b = census(cfg, capacity=5000, jobs=3)
    assert a.count == b.count and a.stats == b.stats
    assert [x.points for x in a.blocks] == [x.points for x in b.blocks]
    pg = _pg_config(("fixed_initial_block", "first_extension_in_row_1"))
    s1, s4 = search(pg, jobs=1), search(pg, jobs=4)
    assert [x.points for x in s1.blocks] == [x.points for x in s4.blocks] and s1.stats == s4.stats


def test_census_chunks_cover_census():
    cfg = _set2_config(vector=1, depth=5, orbit=True)
    total = census(cfg).count
    seen = 0
    last = None
    for first, arr in census_chunks(cfg):
        added = np.where(np.isin(arr, cfg.initial_block), 10**6, arr)
        assert (added.min(axis=1) == first).all() and (last is None or first > last)
        last = first
        seen += arr.shape[0]
    assert seen == total


def _pg_config(rules, initial=(1, 20)):
    geom, g, table, t = pg7_problem()
    return SearchConfig(geom, g, table, t, 8, intercept_vectors(8, 1, 19, 3)[0],
                        intercept_vectors(8, 9, 3, 19)[0], initial, rules)


def test_pg_mirror_pair_without_column_rule():
    res = search(_pg_config(("fixed_initial_block", "first_extension_in_row_1")))
    assert [b.points for b in res.blocks] == [(1, 2, 8, 12, 20, 43, 45, 48), (1, 20, 21, 27, 31, 43, 45, 48)]
    res = search(_pg_config(("fixed_initial_block", "first_extension_in_row_1", "col0_at_least_col1")))
    assert [b.points for b in res.blocks] == [(1, 2, 8, 12, 20, 43, 45, 48)]


def test_zero_extension_and_trivial_census():
    block = (1, 2, 8, 12, 20, 43, 45, 48)
    res = search(_pg_config(("fixed_initial_block",), initial=block))
    assert [b.points for b in res.blocks] == [block]
    cfg = _set2_config(depth=2)
    assert census(cfg, capacity=1).count == 1


def test_bad_configs():
    with pytest.raises(ConfigError):
        # three points in one column already overflow [0,2,1]
        candidate_points(small_config([1] * 7, rules=0, initial=(1, 2, 3)))
    with pytest.raises(ConfigError):
        SearchConfig(SMALL, SMALL_GROUP, SMALL_TABLE, OrbitTargets(15, (1,) * 7, 15, 1), 4,
                     ROW_VECTORS[0], COL_VECTORS[0], (1,), ("no_such_rule",))


def test_second_primitive_roots_give_same_census_counts():
    spec = parse_spec(SET2_SPEC)

    def count(g):
        table = orbits_on_pairs(g)
        cfg = SearchConfig(spec.geometry, g, table, make_targets(451, 10, table, g.order), 10,
                           spec.selected_row_vector(), spec.column_vectors()[0], spec.initial(), spec.symmetry, 6, True)
        return census(cfg).count

    ours = sorted(count(set_group(2, i)[0]) for i in range(1, 5))
    theirs = sorted(count(build_parameter_set_group(2, i, a=7, b=6)) for i in range(1, 5))
    assert ours == theirs
