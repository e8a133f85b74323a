"""Property checks on the pruning predicates."""

import random

import numpy as np
from hypothesis import given, settings, strategies as st

from starter_search import _kernel, reference
from starter_search.config import parse_spec
from starter_search.search import SearchConfig

from conftest import SET2_SPEC, set_group
from oracles import arrangements, completable

SPEC = parse_spec(SET2_SPEC)
GEOM = SPEC.geometry
RULES = ("fixed_initial_block", "first_extension_in_row_1", "col0_at_least_col1")


def _config(vector: int, rules=RULES):
    g, table, t = set_group(2, 1)
    return SearchConfig(GEOM, g, table, t, 10, SPEC.selected_row_vector(), SPEC.column_vectors()[vector], (1, 42), rules)


CONFIGS = [_config(0), _config(1)]
_ARR = [arrangements(c.col_vector.occupancies()) for c in CONFIGS]


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), vector=st.integers(0, 1), use_orbit=st.booleans())
def test_rejection_is_permanent_along_ascending_chains(seed, vector, use_orbit):
    cfg = CONFIGS[vector]
    rng = random.Random(seed)
    # bias towards low ids so chains stay near the interesting region
    pool = [p for p in range(2, 452) if p != 42 and GEOM.row_of(p) != 0]
    chain = sorted(rng.sample(pool[: rng.randint(20, len(pool))], 8))
    rejected = False
    for j in range(1, len(chain) + 1):
        ok = reference.partial_ok(cfg, chain[:j], use_orbit)
        if rejected:
            assert not ok
        rejected = rejected or not ok


@settings(max_examples=300, deadline=None)
@given(cols=st.lists(st.integers(0, 10), min_size=0, max_size=8), vector=st.integers(0, 1), lag=st.integers(0, 3))
def test_kernel_column_check_is_exact_completability(cols, vector, lag):
    vec = CONFIGS[vector].col_vector
    cc = np.zeros(11, dtype=np.int64)
    cc[0] = cc[1] = 1
    for f in cols:
        cc[f] += 1
    cur = max([1] + cols)
    cur = max(cur - lag, 0) if lag else cur
    col_vec = np.array([vec[i] for i in range(12)], dtype=np.int64)
    comp = np.zeros(12, dtype=np.int64)
    rem = np.zeros(12, dtype=np.int64)
    got = _kernel.col_ok(cc, 11, cur, col_vec, 10, comp, rem)
    assert got == completable(tuple(int(c) for c in cc), cur, _ARR[vector])

