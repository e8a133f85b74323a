"""Per-orbit pair targets for starter blocks and the checks built on them.

A block ``L`` of size ``k`` develops into a 2-(v,k,1) design under ``G``
exactly when it holds ``|O_i| / b_hat`` pairs from every pair orbit ``O_i``
and its set-wise stabilizer has order ``|G| / b_hat``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .groups import PairOrbitTable, PermGroup, setwise_stabilizer_order


@dataclass(frozen=True)
class OrbitTargets:
    b_hat: int
    targets: tuple[int, ...]  # targets[j-1] is the quota for orbit j
    group_order: int
    required_stabilizer_order: int

    @property
    def n_orbits(self) -> int:
        return len(self.targets)

    def as_array(self) -> np.ndarray:
        """Quota array indexed directly by 1-based orbit number (slot 0 unused)."""
        return np.array((0,) + self.targets, dtype=np.int32)


@dataclass(frozen=True)
class Infeasible:
    reason: str

    def __bool__(self) -> bool:
        return False


def make_targets(v: int, k: int, table: PairOrbitTable, group_order: int) -> OrbitTargets | Infeasible:
    if table.degree != v:
        raise ValueError(f"orbit table has degree {table.degree}, expected {v}")
    num, den = v * (v - 1), k * (k - 1)
    if num % den:
        return Infeasible(f"b_hat = {num}/{den} is not an integer")
    b_hat = num // den
    targets = []
    for j, size in enumerate(table.orbit_sizes, start=1):
        if size % b_hat:
            return Infeasible(f"orbit {j} has size {size}, not divisible by b_hat={b_hat}")
        targets.append(size // b_hat)
    if group_order % b_hat:
        return Infeasible(f"|G|={group_order} is not divisible by b_hat={b_hat}")
    if sum(targets) != comb(k, 2):
        return Infeasible(f"targets sum to {sum(targets)}, expected C(k,2)={comb(k, 2)}")
    return OrbitTargets(b_hat, tuple(targets), group_order, group_order // b_hat)


def block_tally(block: Iterable[int], table: PairOrbitTable) -> np.ndarray:
    """Pairs of ``block`` per orbit, computed from scratch (slot 0 unused)."""
    idx = np.asarray(sorted(block), dtype=np.int64) - 1
    counts = np.zeros(table.n_orbits + 1, dtype=np.int32)
    if idx.size > 1:
        iu = np.triu_indices(idx.size, 1)
        np.add.at(counts, table.index[idx[iu[0]], idx[iu[1]]], 1)
    return counts


def partial_orbit_check(
    counts: np.ndarray, new_point: int, block: Sequence[int], table: PairOrbitTable, targets: OrbitTargets
) -> bool:
    """Add the pairs ``{new_point, p}`` to ``counts`` in place.

    Returns False, with ``counts`` left unchanged, as soon as some orbit goes
    over quota. Use :func:`undo_orbit_check` to back out an accepted point.
    """
    quota = targets.targets
    row = table.index[new_point - 1]
    done = []
    for p in block:
        o = int(row[p - 1])
        counts[o] += 1
        done.append(o)
        if counts[o] > quota[o - 1]:
            for o2 in done:
                counts[o2] -= 1
            return False
    return True


def undo_orbit_check(counts: np.ndarray, new_point: int, block: Sequence[int], table: PairOrbitTable) -> None:
    row = table.index[new_point - 1]
    for p in block:
        counts[row[p - 1]] -= 1


def tallies_match(block: Iterable[int], table: PairOrbitTable, targets: OrbitTargets) -> bool:
    return bool(np.array_equal(block_tally(block, table)[1:], np.asarray(targets.targets)))


def full_orbit_condition(block: Iterable[int], table: PairOrbitTable, targets: OrbitTargets, group: PermGroup) -> bool:
    block = list(block)
    if not tallies_match(block, table, targets):
        return False
    return setwise_stabilizer_order(group, block) == targets.required_stabilizer_order
