"""Develop starter blocks into designs and check them from first principles.

Nothing here reuses the search's pruning code or the stored pair-orbit
table: pair coverage is tallied directly and pair orbits are recomputed from
the group elements, so these checks can catch a faulty search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .groups import PermGroup, partition_is_invariant


@dataclass
class Design:
    v: int
    blocks: list[tuple[int, ...]]

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def k(self) -> int | None:
        sizes = {len(B) for B in self.blocks}
        return sizes.pop() if len(sizes) == 1 else None


def develop(group: PermGroup, block: Iterable[int]) -> Design:
    """All distinct images of ``block`` under ``group``, sorted."""
    idx = np.asarray(sorted(set(block)), dtype=np.int64) - 1
    images = np.sort(group.elements[:, idx].astype(np.int64), axis=1)
    uniq = np.unique(images, axis=0) + 1
    return Design(group.degree, [tuple(int(x) for x in row) for row in uniq])


@dataclass
class PartitionCheck:
    name: str
    invariant: bool | None
    inner_pairs: int | str
    outer_pairs: int | str
    expected_inner: int | None = None

    @property
    def ok(self) -> bool:
        if self.invariant is False:
            return False
        return self.expected_inner is None or self.inner_pairs == self.expected_inner


@dataclass
class VerificationReport:
    v: int
    k: int | None
    b: int
    is_design: bool
    lam: int | str
    r: int | str
    identities_hold: bool
    is_projective_plane: bool
    line_transitive: bool | None
    partitions: list[PartitionCheck] = field(default_factory=list)

    @property
    def inner_pairs_per_line(self) -> int | str | None:
        return self.partitions[0].inner_pairs if self.partitions else None

    @property
    def outer_pairs_per_line(self) -> int | str | None:
        return self.partitions[0].outer_pairs if self.partitions else None

    def as_items(self) -> list[tuple[str, object]]:
        items: list[tuple[str, object]] = [
            ("v", self.v),
            ("k", self.k if self.k is not None else "non-constant"),
            ("b", self.b),
            ("r", self.r),
            ("lambda", self.lam),
            ("is_design", self.is_design),
            ("identities_hold", self.identities_hold),
            ("is_projective_plane", self.is_projective_plane),
            ("line_transitive", "not-checked" if self.line_transitive is None else self.line_transitive),
        ]
        for p in self.partitions:
            items.append((f"partition[{p.name}].invariant", "not-checked" if p.invariant is None else p.invariant))
            items.append((f"partition[{p.name}].inner_pairs_per_line", p.inner_pairs))
            items.append((f"partition[{p.name}].outer_pairs_per_line", p.outer_pairs))
            if p.expected_inner is not None:
                items.append((f"partition[{p.name}].inner_pairs_expected", p.expected_inner))
        return items


def _constant(values) -> int | str:
    vals = set(int(x) for x in values)
    return vals.pop() if len(vals) == 1 else "non-constant"


def pair_coverage(design: Design) -> np.ndarray:
    """``cover[r, s]`` = number of blocks containing points ``r+1`` and ``s+1`` (r < s)."""
    v = design.v
    cover = np.zeros((v, v), dtype=np.int64)
    for B in design.blocks:
        idx = np.asarray(B, dtype=np.int64) - 1
        iu = np.triu_indices(idx.size, 1)
        np.add.at(cover, (np.minimum(idx[iu[0]], idx[iu[1]]), np.maximum(idx[iu[0]], idx[iu[1]])), 1)
    return cover


def _line_orbit_covers(design: Design, group: PermGroup) -> bool:
    blocks = {tuple(sorted(B)) for B in design.blocks}
    if not blocks:
        return False
    for g in group.generators:
        for B in blocks:
            if tuple(sorted(g(x) for x in B)) not in blocks:
                return False
    start = next(iter(sorted(blocks)))
    seen = {start}
    stack = [start]
    while stack:
        B = stack.pop()
        for g in group.generators:
            C = tuple(sorted(g(x) for x in B))
            if C not in seen:
                seen.add(C)
                stack.append(C)
    return seen == blocks


def verify(
    design: Design,
    group: PermGroup | None = None,
    partitions: Sequence[tuple[str, Sequence[Iterable[int]], int | None]] = (),
) -> VerificationReport:
    """Check that ``design`` is a 2-(v,k,1) design and report its properties.

    ``partitions`` holds ``(name, classes, expected_inner_pairs)`` triples;
    pass ``None`` for the expectation to only report the count.
    """
    v, b, k = design.v, design.b, design.k
    distinct = len({tuple(sorted(B)) for B in design.blocks}) == b
    cover = pair_coverage(design)
    iu = np.triu_indices(v, 1)
    lam = _constant(cover[iu]) if v > 1 else "non-constant"
    degrees = np.bincount(np.concatenate([np.asarray(B) - 1 for B in design.blocks]), minlength=v) if b else np.zeros(v)
    r = _constant(degrees)

    is_design = k is not None and distinct and lam == 1
    identities = False
    if is_design and isinstance(r, int) and k > 1:
        identities = b * k * (k - 1) == v * (v - 1) and b * k == v * r and v - 1 == r * (k - 1)
        # counting every covered pair once per block
        identities = identities and b * comb(k, 2) == lam * comb(v, 2)
    plane = is_design and k is not None and k >= 3 and b == v

    transitive = None
    if group is not None:
        transitive = _line_orbit_covers(design, group)

    checks = []
    for name, classes, expected in partitions:
        label = np.zeros(v, dtype=np.int64)
        for c, cls in enumerate(classes):
            for x in cls:
                label[x - 1] = c
        inner = []
        for B in design.blocks:
            counts = np.bincount(label[np.asarray(B) - 1])
            inner.append(int(sum(comb(int(c), 2) for c in counts)))
        inner_c = _constant(inner) if inner else "non-constant"
        outer_c = _constant([comb(len(B), 2) - x for B, x in zip(design.blocks, inner)]) if inner else "non-constant"
        inv = partition_is_invariant(group, classes) if group is not None else None
        checks.append(PartitionCheck(name, inv, inner_c, outer_c, expected))

    return VerificationReport(v, k, b, is_design, lam, r, identities, plane, transitive, checks)


# -- pair orbits recomputed from the group -----------------------------------


class PairOrbitOracle:
    """Pair orbits found by applying every group element to the pair.

    Each orbit is named by its smallest member; sizes come from the number of
    distinct images. Results are memoised per pair.
    """

    def __init__(self, group: PermGroup, v: int, k: int):
        self.group = group
        self.E = group.elements.astype(np.int64)
        self.v = v
        self.b_hat = v * (v - 1) // (k * (k - 1))
        self._cache: dict[tuple[int, int], tuple[int, int]] = {}

    def orbit(self, r: int, s: int) -> tuple[int, int]:
        """``(representative code, orbit size)`` for the pair ``{r, s}`` (1-based)."""
        key = (min(r, s), max(r, s))
        hit = self._cache.get(key)
        if hit is None:
            a, b = self.E[:, key[0] - 1], self.E[:, key[1] - 1]
            codes = np.minimum(a, b) * self.v + np.maximum(a, b)
            uniq = np.unique(codes)
            hit = (int(uniq[0]), int(uniq.size))
            for c in uniq:
                lo, hi = divmod(int(c), self.v)
                self._cache[(lo + 1, hi + 1)] = hit
        return hit

    def tally(self, block: Sequence[int]) -> dict[int, tuple[int, int]]:
        """Per orbit: ``(pairs in block, quota = size / b_hat)``."""
        out: dict[int, list[int]] = {}
        pts = sorted(block)
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                rep, size = self.orbit(pts[i], pts[j])
                entry = out.setdefault(rep, [0, size // self.b_hat])
                entry[0] += 1
        return {rep: (n, q) for rep, (n, q) in out.items()}

    def partial_ok(self, block: Sequence[int]) -> bool:
        return all(n <= q for n, q in self.tally(block).values())
