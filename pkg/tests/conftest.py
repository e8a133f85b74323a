from __future__ import annotations

import functools

import pytest

from starter_search.config import parse_spec
from starter_search.groups import GridGeometry, build_parameter_set_group, build_translation_group, orbits_on_pairs
from starter_search.orbit_condition import make_targets


@functools.lru_cache(maxsize=None)
def set_group(set_: int, i: int):
    group = build_parameter_set_group(set_, i)
    table = orbits_on_pairs(group)
    return group, table, make_targets(451, 10, table, group.order)


@functools.lru_cache(maxsize=None)
def pg7_problem():
    geom = GridGeometry(19, 3)
    group = build_translation_group(geom)
    table = orbits_on_pairs(group)
    return geom, group, table, make_targets(57, 8, table, group.order)


SET2_SPEC = """
name = set2
n_rows = 41
n_cols = 11
group = set2
k = 10
census_depth = 6
"""

PG7_SPEC = """
name = pg7
n_rows = 19
n_cols = 3
group = pg_test(7)
k = 8
symmetry = fixed_initial_block, first_extension_in_row_1, col0_at_least_col1
"""


@pytest.fixture
def set2_spec():
    return parse_spec(SET2_SPEC)


@pytest.fixture
def pg7_spec():
    return parse_spec(PG7_SPEC)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
