"""Slow, literal versions of the search predicates and of the recursive search.

These exist to cross-check the compiled kernel: the recursion keeps its own
copy of the candidate set at every level exactly as written in the original
pseudo-code, and each predicate is recomputed from the whole block.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations

from .search import SearchConfig


def _hist(counts, n_classes: int) -> Counter:
    h = Counter(counts)
    h[0] += n_classes - len(counts)
    return h


def rows_ok(cfg: SearchConfig, block) -> bool:
    g = cfg.geometry
    occ = Counter(g.row_of(p) for p in block)
    for i in range(1, cfg.k + 1):
        bound = sum(cfg.row_vector[j] for j in range(i, cfg.k + 1))
        if sum(1 for c in occ.values() if c >= i) > bound:
            return False
    return all(c <= cfg.k for c in occ.values())


def columns_ok(cfg: SearchConfig, block, cur_col: int) -> bool:
    """Some arrangement of the target occupancies fits: completed columns exactly, the rest from below."""
    g = cfg.geometry
    occ = Counter(g.col_of(p) for p in block)
    target = sorted(cfg.col_vector.occupancies())
    done = sorted(occ.get(f, 0) for f in range(min(max(cur_col, 0), g.n_cols)))
    left = list(target)
    for c in done:
        if c not in left:
            return False
        left.remove(c)
    need = sorted((occ.get(f, 0) for f in range(max(cur_col, 0), g.n_cols)), reverse=True)
    left.sort(reverse=True)
    return all(a <= b for a, b in zip(need, left))


def symmetry_ok(cfg: SearchConfig, added) -> bool:
    g = cfg.geometry
    if "first_extension_in_row_1" in cfg.symmetry_rules and added and g.row_of(min(added)) != 1:
        return False
    if "col0_at_least_col1" in cfg.symmetry_rules and added:
        cur = g.col_of(max(added))
        block = set(cfg.initial_block) | set(added)
        if cur >= 1:
            c0 = sum(1 for p in block if g.col_of(p) == 0)
            c1 = sum(1 for p in block if g.col_of(p) == 1)
            if c0 < c1:
                return False
    return True


def orbit_counts(cfg: SearchConfig, block) -> Counter:
    return Counter(cfg.table.orbit_of(a, b) for a, b in combinations(sorted(block), 2))


def partial_orbit_ok(cfg: SearchConfig, block) -> bool:
    t = cfg.targets.targets
    return all(n <= t[o - 1] for o, n in orbit_counts(cfg, block).items())


def partial_ok(cfg: SearchConfig, added, use_orbit: bool) -> bool:
    """All partial rules for the block ``I + added`` (``added`` ascending)."""
    block = list(cfg.initial_block) + list(added)
    cur = cfg.geometry.col_of(added[-1]) if added else -1
    if not rows_ok(cfg, block) or not columns_ok(cfg, block, cur) or not symmetry_ok(cfg, added):
        return False
    return partial_orbit_ok(cfg, block) if use_orbit else True


def final_ok(cfg: SearchConfig, block) -> bool:
    from .groups import setwise_stabilizer_order

    g = cfg.geometry
    rows = _hist(list(Counter(g.row_of(p) for p in block).values()), g.n_rows)
    cols = _hist(list(Counter(g.col_of(p) for p in block).values()), g.n_cols)
    if any(rows[i] != cfg.row_vector[i] for i in range(cfg.k + 1)):
        return False
    if any(cols[i] != cfg.col_vector[i] for i in range(cfg.k + 1)):
        return False
    counts = orbit_counts(cfg, block)
    if any(counts.get(j, 0) != t for j, t in enumerate(cfg.targets.targets, start=1)):
        return False
    return setwise_stabilizer_order(cfg.group, block) == cfg.targets.required_stabilizer_order


def funct(cfg: SearchConfig, q0, depth: int | None = None, use_orbit: bool = True, full: bool = True):
    """Copy-based recursion; returns every emitted block as a sorted tuple."""
    stop = cfg.k if depth is None else depth
    out = []

    def rec(added: list[int], Q: list[int]) -> None:
        Q = list(Q)
        while Q:
            a = min(Q)
            Q.remove(a)
            B = added + [a]
            if not partial_ok(cfg, B, use_orbit):
                continue
            if len(cfg.initial_block) + len(B) == stop:
                block = tuple(sorted(cfg.initial_block + tuple(B)))
                if not full or final_ok(cfg, block):
                    out.append(block)
            else:
                rec(B, list(Q))

    rec([], list(q0))
    return sorted(out)
