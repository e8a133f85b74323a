"""Lexicographic backtracking for starter blocks on a row/column grid.

Points are appended in increasing id order (column-major on the grid). A
point is kept only if the partial row, column, symmetry and orbit
conditions all hold; blocks reaching size ``k`` are emitted when they also
meet both intercept vectors exactly and the full orbit condition.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernel
from .dd import InterceptVector
from .groups import GridGeometry, PairOrbitTable, PermGroup, setwise_stabilizer_order
from .orbit_condition import OrbitTargets, full_orbit_condition

log = logging.getLogger(__name__)

SYMMETRY_RULES = ("fixed_initial_block", "first_extension_in_row_1", "col0_at_least_col1")
DEFAULT_RULES = ("fixed_initial_block", "first_extension_in_row_1")


class ConfigError(ValueError):
    pass


@dataclass
class SearchConfig:
    geometry: GridGeometry
    group: PermGroup
    table: PairOrbitTable
    targets: OrbitTargets
    k: int
    row_vector: InterceptVector
    col_vector: InterceptVector
    initial_block: tuple[int, ...]
    symmetry_rules: tuple[str, ...] = DEFAULT_RULES
    census_depth: int | None = None
    census_with_orbit_condition: bool = False
    name: str = ""

    def __post_init__(self):
        self.initial_block = tuple(sorted(self.initial_block))
        bad = set(self.symmetry_rules) - set(SYMMETRY_RULES)
        if bad:
            raise ConfigError(f"unknown symmetry rules: {sorted(bad)}")
        g = self.geometry
        if self.group.degree != g.degree or self.table.degree != g.degree:
            raise ConfigError("group, orbit table and grid disagree on the number of points")
        if self.row_vector.k != self.k or self.col_vector.k != self.k:
            raise ConfigError("intercept vectors do not describe blocks of size k")
        if self.row_vector.n_classes != g.n_rows or self.col_vector.n_classes != g.n_cols:
            raise ConfigError("intercept vectors do not match the grid shape")
        if len(self.initial_block) > self.k:
            raise ConfigError("initial block is larger than k")
        if self.census_depth is not None and not len(self.initial_block) <= self.census_depth <= self.k:
            raise ConfigError("census depth must lie between |I| and k")
        if any(not 1 <= p <= g.degree for p in self.initial_block):
            raise ConfigError("initial block has points outside the grid")

    @property
    def tag(self) -> str:
        return f"{self.name}:{self.col_vector.short()}:{'+'.join(self.symmetry_rules)}"


@dataclass(frozen=True)
class StarterBlock:
    points: tuple[int, ...]
    provenance: str = ""

    def __str__(self) -> str:
        return " ".join(map(str, self.points))


@dataclass
class SearchStats:
    tried: int = 0
    prune_row: int = 0
    prune_col: int = 0
    prune_sym: int = 0
    prune_orbit: int = 0
    reject_full: int = 0
    emitted: int = 0
    nodes_by_depth: list[int] = field(default_factory=list)

    @classmethod
    def from_arrays(cls, stats: np.ndarray, nodes: np.ndarray) -> "SearchStats":
        s = [int(x) for x in stats]
        return cls(*s, nodes_by_depth=[int(x) for x in nodes])

    @property
    def nodes(self) -> int:
        return sum(self.nodes_by_depth)

    def merge(self, other: "SearchStats") -> "SearchStats":
        n = max(len(self.nodes_by_depth), len(other.nodes_by_depth))
        a = self.nodes_by_depth + [0] * (n - len(self.nodes_by_depth))
        b = other.nodes_by_depth + [0] * (n - len(other.nodes_by_depth))
        return SearchStats(
            self.tried + other.tried,
            self.prune_row + other.prune_row,
            self.prune_col + other.prune_col,
            self.prune_sym + other.prune_sym,
            self.prune_orbit + other.prune_orbit,
            self.reject_full + other.reject_full,
            self.emitted + other.emitted,
            [x + y for x, y in zip(a, b)],
        )

    def as_items(self) -> list[tuple[str, int]]:
        items = [
            ("nodes", self.nodes),
            ("candidates_tried", self.tried),
            ("prune_row", self.prune_row),
            ("prune_column", self.prune_col),
            ("prune_symmetry", self.prune_sym),
            ("prune_orbit", self.prune_orbit),
            ("reject_full_check", self.reject_full),
            ("emitted", self.emitted),
        ]
        items += [(f"nodes_depth_{d}", n) for d, n in enumerate(self.nodes_by_depth) if n]
        return items


@dataclass
class SearchResult:
    blocks: list[StarterBlock]
    stats: SearchStats
    count: int

    @property
    def found(self) -> int:
        return self.count


class _Prepared:
    """Arrays handed to the kernel, built once per config."""

    def __init__(self, cfg: SearchConfig, stop_depth: int, full_mode: bool, use_orbit: bool):
        g = cfg.geometry
        v = g.degree
        k = cfg.k
        ids = np.arange(v)
        self.row_of = (ids % g.n_rows).astype(np.int64)
        self.col_of = (ids // g.n_rows).astype(np.int64)
        self.base = np.asarray(cfg.initial_block, dtype=np.int64) - 1
        self.k = k
        self.stop_depth = stop_depth
        self.full_mode = full_mode
        self.use_orbit = use_orbit
        self.n_rows, self.n_cols = g.n_rows, g.n_cols
        self.row_vec = np.array([cfg.row_vector[i] for i in range(k + 2)], dtype=np.int64)
        self.col_vec = np.array([cfg.col_vector[i] for i in range(k + 2)], dtype=np.int64)
        self.row_cum = np.cumsum(self.row_vec[::-1])[::-1].copy()
        tdtype = np.int8 if cfg.table.n_orbits < 128 else np.int32
        self.table = np.ascontiguousarray(cfg.table.index, dtype=tdtype)
        self.quota = cfg.targets.as_array()
        self.elements = cfg.group.elements
        self.req_stab = cfg.targets.required_stabilizer_order
        self.sym_row1 = "first_extension_in_row_1" in cfg.symmetry_rules
        self.sym_col01 = "col0_at_least_col1" in cfg.symmetry_rules

        # base block state
        self.rc = np.bincount(self.row_of[self.base], minlength=g.n_rows).astype(np.int64)
        self.cc = np.bincount(self.col_of[self.base], minlength=g.n_cols).astype(np.int64)
        self.rows_ge = np.zeros(k + 2, dtype=np.int64)
        for c in self.rc:
            self.rows_ge[1 : min(c, k + 1) + 1] += 1
        self.tally = np.zeros(self.quota.size, dtype=np.int64)
        for a, b in itertools.combinations(self.base, 2):
            self.tally[self.table[a, b]] += 1
        self._check_base(cfg)

        # Q0: every point outside the base whose row still has room
        saturated = self.rc >= int(np.flatnonzero(self.row_vec[: k + 1]).max())
        keep = ~np.isin(ids, self.base) & ~saturated[self.row_of]
        self.cand = ids[keep].astype(np.int64)
        self.col_end = np.searchsorted(self.col_of[self.cand], np.arange(g.n_cols), side="right").astype(np.int64)

    def _check_base(self, cfg):
        k = self.k
        if (self.rows_ge[1 : k + 1] > self.row_cum[1 : k + 1]).any():
            raise ConfigError("initial block violates the partial row condition")
        comp = np.zeros(k + 2, dtype=np.int64)
        rem = np.zeros(k + 2, dtype=np.int64)
        if not _kernel.col_ok(self.cc.copy(), self.n_cols, -1, self.col_vec, k, comp, rem):
            raise ConfigError("initial block violates the partial column condition")
        if self.use_orbit and (self.tally > self.quota).any():
            raise ConfigError("initial block violates the partial orbit condition")

    def run(self, root_lo: int, root_hi: int, capacity: int):
        out = np.zeros((capacity, self.stop_depth), dtype=np.int16)
        stats = np.zeros(_kernel.N_STATS, dtype=np.int64)
        nodes = np.zeros(self.stop_depth + 1, dtype=np.int64)
        found = _kernel.dfs(
            self.cand, self.base, self.k, self.stop_depth, self.full_mode, self.use_orbit,
            self.row_of, self.col_of, self.col_end, self.n_rows, self.n_cols,
            self.row_cum, self.row_vec, self.col_vec,
            self.table, self.quota, self.elements, self.req_stab,
            self.sym_row1, self.sym_col01, root_lo, root_hi,
            self.rc.copy(), self.cc.copy(), self.rows_ge.copy(), self.tally.copy(),
            out, stats, nodes,
        )
        return found, out, stats, nodes


def _split(n: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, n)) if n else 1
    edges = np.linspace(0, n, parts + 1).round().astype(int)
    return [(int(lo), int(hi)) for lo, hi in zip(edges[:-1], edges[1:])]


def _run(prep: _Prepared, capacity: int, jobs: int, grow: bool = False):
    """Run the kernel over the first-point range, split into ``jobs`` branches.

    Branch results are merged and sorted, so the output does not depend on
    ``jobs``. With ``grow`` every found block is returned; otherwise the
    lexicographically first ``capacity`` ones.
    """
    chunks = _split(prep.cand.size, jobs)

    def one(chunk):
        lo, hi = chunk
        found, out, stats, nodes = prep.run(lo, hi, capacity)
        if grow and found > capacity:
            found, out, stats, nodes = prep.run(lo, hi, found)
        return found, out[: min(found, out.shape[0])], stats, nodes

    if jobs > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(one, chunks))
    else:
        parts = [one(c) for c in chunks]
    total = sum(p[0] for p in parts)
    stats = SearchStats()
    for p in parts:
        stats = stats.merge(SearchStats.from_arrays(p[2], p[3]))
    rows = [p[1] for p in parts if p[1].size]
    blocks = np.concatenate(rows) if rows else np.zeros((0, prep.stop_depth), dtype=np.int16)
    if blocks.size:
        blocks = blocks[np.lexsort(blocks.T[::-1])]
    if not grow:
        blocks = blocks[:capacity]
    return total, blocks, stats


def _zero_extension(cfg: SearchConfig, prep: _Prepared) -> SearchResult:
    """``|I| = k``: the initial block is the only candidate."""
    I = cfg.initial_block
    rows_ok = np.array_equal(np.bincount(prep.rc, minlength=cfg.k + 1)[: cfg.k + 1], prep.row_vec[: cfg.k + 1])
    cols_ok = np.array_equal(np.bincount(prep.cc, minlength=cfg.k + 1)[: cfg.k + 1], prep.col_vec[: cfg.k + 1])
    ok = rows_ok and cols_ok and full_orbit_condition(I, cfg.table, cfg.targets, cfg.group)
    blocks = [StarterBlock(I, cfg.tag)] if ok else []
    return SearchResult(blocks, SearchStats(emitted=len(blocks), nodes_by_depth=[0] * (cfg.k + 1)), len(blocks))


def search(cfg: SearchConfig, jobs: int = 1) -> SearchResult:
    """All starter blocks ``L`` with ``I <= L`` passing every configured rule."""
    prep = _Prepared(cfg, cfg.k, full_mode=True, use_orbit=True)
    if len(cfg.initial_block) == cfg.k:
        return _zero_extension(cfg, prep)
    total, arr, stats = _run(prep, capacity=1024, jobs=jobs, grow=True)
    blocks = [StarterBlock(tuple(int(x) + 1 for x in row), cfg.tag) for row in arr]
    log.info("%s: %d starter blocks, %d nodes", cfg.tag, total, stats.nodes)
    return SearchResult(blocks, stats, total)


def census(cfg: SearchConfig, capacity: int = 0, jobs: int = 1) -> SearchResult:
    """Count partial blocks of size ``cfg.census_depth`` reachable under the partial rules.

    Up to ``capacity`` of them are returned (sorted); ``count`` is always exact.
    """
    q = cfg.census_depth if cfg.census_depth is not None else cfg.k
    prep = _Prepared(cfg, q, full_mode=False, use_orbit=cfg.census_with_orbit_condition)
    if q == len(cfg.initial_block):
        blocks = [StarterBlock(cfg.initial_block, cfg.tag)] if capacity else []
        return SearchResult(blocks, SearchStats(emitted=1, nodes_by_depth=[0] * (q + 1)), 1)
    total, arr, stats = _run(prep, capacity=capacity, jobs=jobs)
    blocks = [StarterBlock(tuple(int(x) + 1 for x in row), cfg.tag) for row in arr]
    return SearchResult(blocks, stats, total)


def census_chunks(cfg: SearchConfig):
    """Yield ``(first_point, blocks_array)`` per first added point, blocks 1-based.

    Lets callers stream or sample a census too large to hold in memory.
    """
    q = cfg.census_depth if cfg.census_depth is not None else cfg.k
    prep = _Prepared(cfg, q, full_mode=False, use_orbit=cfg.census_with_orbit_condition)
    for i in range(prep.cand.size):
        found, _, _, _ = prep.run(i, i + 1, 0)
        if not found:
            continue
        _, out, _, _ = prep.run(i, i + 1, found)
        yield int(prep.cand[i]) + 1, out.astype(np.int64) + 1


def candidate_points(cfg: SearchConfig) -> list[int]:
    """The initial candidate set Q0 as 1-based ids."""
    prep = _Prepared(cfg, cfg.k, full_mode=True, use_orbit=True)
    return [int(x) + 1 for x in prep.cand]


# -- parameter set 1 ---------------------------------------------------------


@dataclass
class Set1Result:
    blocks: list[StarterBlock]
    candidates: int
    passed_tallies: int


def set1_candidates(geom: GridGeometry) -> np.ndarray:
    """Normalised candidates for the dihedral case, one 1-based block per row.

    ``(0,0)`` and ``(0,1)`` plus four 2-columns chosen among columns 2..; the
    lowest carries rows ``{1, -1}``, the other three carry distinct ordered
    choices among the remaining pairs ``{e, -e}``.
    """
    p = geom.n_rows
    pairs = [(e, p - e) for e in range(2, (p - 1) // 2 + 1)]
    col_sets = list(itertools.combinations(range(2, geom.n_cols), 4))
    perms = list(itertools.permutations(range(len(pairs)), 3))
    pair_arr = np.array(pairs, dtype=np.int64)
    perm_arr = np.array(perms, dtype=np.int64)
    blocks = []
    for cols in col_sets:
        cols = np.array(cols, dtype=np.int64)
        n = perm_arr.shape[0]
        b = np.empty((n, 10), dtype=np.int64)
        b[:, 0] = geom.point_id(0, 0)
        b[:, 1] = geom.point_id(0, 1)
        b[:, 2] = cols[0] * p + 1 + 1
        b[:, 3] = cols[0] * p + (p - 1) + 1
        for j in range(3):
            rows = pair_arr[perm_arr[:, j]]
            b[:, 4 + 2 * j] = cols[j + 1] * p + rows[:, 0] + 1
            b[:, 5 + 2 * j] = cols[j + 1] * p + rows[:, 1] + 1
        blocks.append(b)
    out = np.concatenate(blocks)
    out.sort(axis=1)
    return out


def search_set1(
    geom: GridGeometry, group: PermGroup, table: PairOrbitTable, targets: OrbitTargets, name: str = "set1"
) -> Set1Result:
    cands = set1_candidates(geom)
    k = cands.shape[1]
    idx = cands - 1
    iu = np.triu_indices(k, 1)
    orbit_ids = table.index[idx[:, iu[0]], idx[:, iu[1]]]
    ok = np.ones(cands.shape[0], dtype=bool)
    for j, t in enumerate(targets.targets, start=1):
        ok &= (orbit_ids == j).sum(axis=1) == t
    passed = np.flatnonzero(ok)
    blocks = [
        StarterBlock(tuple(int(x) for x in cands[i]), f"{name}:normalised")
        for i in passed
        if setwise_stabilizer_order(group, cands[i]) == targets.required_stabilizer_order
    ]
    return Set1Result(blocks, int(cands.shape[0]), int(passed.size))
