"""Compiled depth-first kernel behind :mod:`starter_search.search`.

All point ids here are 0-based. The kernel walks extensions of a fixed base
block in ascending point order: branch state is the added-point stack plus a
cursor into the candidate list, since every child's candidate set is a
suffix of its parent's.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# statistics slots
TRIED = 0
PRUNE_ROW = 1
PRUNE_COL = 2
PRUNE_SYM = 3
PRUNE_ORBIT = 4
REJECT_FULL = 5
EMITTED = 6
N_STATS = 7


@njit(cache=True, nogil=True)
def col_ok(cc, n_cols, cur_col, col_vec, k, comp, rem):
    """Column occupancies can still be completed to ``col_vec``.

    Columns left of ``cur_col`` are final and must fit exactly inside the
    target multiset; the others are lower bounds checked cumulatively
    against what is left.
    """
    for i in range(k + 2):
        comp[i] = 0
        rem[i] = 0
    for f in range(n_cols):
        c = cc[f]
        if c > k:
            return False
        if f < cur_col:
            comp[c] += 1
        else:
            rem[c] += 1
    for i in range(k + 1):
        if comp[i] > col_vec[i]:
            return False
    res_cum = 0
    rem_cum = 0
    for i in range(k, 0, -1):
        res_cum += col_vec[i] - comp[i]
        rem_cum += rem[i]
        if rem_cum > res_cum:
            return False
    return True


@njit(cache=True, nogil=True)
def _exact_hist(counts, n, vec, k, hist):
    for i in range(k + 2):
        hist[i] = 0
    for j in range(n):
        c = counts[j]
        if c > k:
            return False
        hist[c] += 1
    for i in range(k + 1):
        if hist[i] != vec[i]:
            return False
    return True


@njit(cache=True, nogil=True)
def _stabilizer_order(block, size, elements, member):
    for j in range(size):
        member[block[j]] = True
    total = 0
    for g in range(elements.shape[0]):
        ok = True
        for j in range(size):
            if not member[elements[g, block[j]]]:
                ok = False
                break
        if ok:
            total += 1
    for j in range(size):
        member[block[j]] = False
    return total


@njit(cache=True, nogil=True)
def dfs(
    cand,
    base,
    k,
    stop_depth,
    full_mode,
    use_orbit,
    row_of,
    col_of,
    col_end,
    n_rows,
    n_cols,
    row_cum,
    row_vec,
    col_vec,
    table,
    quota,
    elements,
    req_stab,
    sym_row1,
    sym_col01,
    root_lo,
    root_hi,
    rc,
    cc,
    rows_ge,
    tally,
    out,
    stats,
    nodes,
):
    """Run the search below ``base``; returns the number of blocks found.

    ``rc``, ``cc``, ``rows_ge`` and ``tally`` hold the base block's state on
    entry and are restored on exit. Found blocks are written to ``out`` while
    capacity lasts. Only candidates ``cand[root_lo:root_hi]`` are tried as
    the first added point. ``col_end[f]`` is the index in ``cand`` just
    past the last candidate of column ``f``.
    """
    n_base = base.shape[0]
    n_cand = cand.shape[0]
    block = np.empty(stop_depth, dtype=np.int64)
    for j in range(n_base):
        block[j] = base[j]
    pos = np.zeros(stop_depth + 1, dtype=np.int64)
    comp = np.zeros(k + 2, dtype=np.int64)
    rem = np.zeros(k + 2, dtype=np.int64)
    hist = np.zeros(k + 2, dtype=np.int64)
    member = np.zeros(row_of.shape[0], dtype=np.bool_)
    ords = np.empty(stop_depth, dtype=np.int64)
    cap = out.shape[0]
    found = 0

    depth = n_base
    pos[depth] = root_lo
    while True:
        limit = root_hi if depth == n_base else n_cand
        if pos[depth] >= limit:
            if depth == n_base:
                break
            # pop the last added point
            depth -= 1
            a = block[depth]
            r = row_of[a]
            rows_ge[rc[r]] -= 1
            rc[r] -= 1
            cc[col_of[a]] -= 1
            if use_orbit:
                for j in range(depth):
                    tally[table[block[j], a]] -= 1
            continue

        a = cand[pos[depth]]
        f = col_of[a]
        # columns: the verdict depends only on the column, so a failure
        # discards the remaining candidates of that column at once
        cc[f] += 1
        if not col_ok(cc, n_cols, f, col_vec, k, comp, rem) or (sym_col01 and f >= 1 and cc[0] < cc[1]):
            cc[f] -= 1
            nxt = col_end[f]
            if nxt > limit:
                nxt = limit
            skipped = nxt - pos[depth]
            stats[TRIED] += skipped
            stats[PRUNE_COL] += skipped
            pos[depth] = nxt
            continue
        pos[depth] += 1
        stats[TRIED] += 1
        # rows: cumulative occupancy bound
        r = row_of[a]
        c_new = rc[r] + 1
        if c_new > k or rows_ge[c_new] + 1 > row_cum[c_new]:
            cc[f] -= 1
            stats[PRUNE_ROW] += 1
            continue
        # symmetry: the first added point sits in row 1
        if sym_row1 and depth == n_base and r != 1:
            cc[f] -= 1
            stats[PRUNE_SYM] += 1
            continue
        if use_orbit:
            bad = -1
            for j in range(depth):
                o = table[block[j], a]
                tally[o] += 1
                if tally[o] > quota[o]:
                    bad = j
                    break
            if bad >= 0:
                for j in range(bad + 1):
                    tally[table[block[j], a]] -= 1
                cc[f] -= 1
                stats[PRUNE_ORBIT] += 1
                continue

        # accept
        rc[r] = c_new
        rows_ge[c_new] += 1
        block[depth] = a
        depth += 1
        nodes[depth] += 1

        if depth == stop_depth:
            keep = True
            if full_mode:
                keep = _exact_hist(rc, n_rows, row_vec, k, hist) and _exact_hist(cc, n_cols, col_vec, k, hist)
                if keep and use_orbit:
                    for o in range(1, quota.shape[0]):
                        if tally[o] != quota[o]:
                            keep = False
                            break
                if keep:
                    keep = _stabilizer_order(block, depth, elements, member) == req_stab
                if not keep:
                    stats[REJECT_FULL] += 1
            if keep:
                if found < cap:
                    for j in range(depth):
                        ords[j] = block[j]
                    ords.sort()
                    for j in range(depth):
                        out[found, j] = ords[j]
                found += 1
                stats[EMITTED] += 1
            # undo the leaf
            depth -= 1
            rows_ge[c_new] -= 1
            rc[r] -= 1
            cc[f] -= 1
            if use_orbit:
                for j in range(depth):
                    tally[table[block[j], a]] -= 1
        else:
            pos[depth] = pos[depth - 1]
    return found
