"""Delandtsheer-Doyen arithmetic: inner-pair counts, intercept vectors, masks."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb


@dataclass(frozen=True)
class DDParams:
    k: int
    c: int
    d: int
    x: int
    y: int


def dd_solve(k: int, c: int, d: int) -> list[DDParams]:
    """All positive ``(x, y)`` with ``c = (C(k,2)-x)/y`` and ``d = (C(k,2)-y)/x``.

    ``c`` is the class size and ``d`` the number of classes.
    """
    if k < 2 or c < 2 or d < 2:
        raise ValueError("need k, c, d >= 2")
    m = comb(k, 2)
    out = []
    for x in range(1, m + 1):
        for y in range(1, m + 1):
            if c * y == m - x and d * x == m - y:
                out.append(DDParams(k, c, d, x, y))
    return out


def dd_bound(k: int, v: int) -> tuple[int, bool]:
    """The bound ``v <= (C(k,2) - 1)**2`` for imprimitive line-transitive spaces."""
    bound = (comb(k, 2) - 1) ** 2
    return bound, v <= bound


@dataclass(frozen=True)
class InterceptVector:
    """``entries[i]`` counts the classes meeting a line in exactly ``i`` points."""

    entries: tuple[int, ...]
    class_size: int

    def __post_init__(self):
        if any(e < 0 for e in self.entries):
            raise ValueError("negative entry in intercept vector")

    @property
    def k(self) -> int:
        return sum(i * e for i, e in enumerate(self.entries))

    @property
    def n_classes(self) -> int:
        return sum(self.entries)

    @property
    def inner_pairs(self) -> int:
        return sum(comb(i, 2) * e for i, e in enumerate(self.entries))

    def __getitem__(self, i: int) -> int:
        return self.entries[i] if i < len(self.entries) else 0

    def occupancies(self) -> list[int]:
        """The class occupancies as a multiset, largest first."""
        return [i for i in range(len(self.entries) - 1, -1, -1) for _ in range(self.entries[i])]

    def short(self) -> str:
        """Entries up to the last non-zero one (at least four), e.g. ``[32,8,1,0]``."""
        last = max((i for i, e in enumerate(self.entries) if e), default=0)
        return "[" + ",".join(str(e) for e in self.entries[: max(last + 1, 4)]) + "]"

    def __str__(self) -> str:
        return self.short()


def intercept_vectors(k: int, x: int, d: int, c: int) -> list[InterceptVector]:
    """Vectors ``[d_0..d_k]`` with ``sum d_i = d``, ``sum i d_i = k``,
    ``sum C(i,2) d_i = x`` and ``d_i = 0`` for ``i > c``, in lexicographic order."""
    out: list[InterceptVector] = []
    entries = [0] * (k + 1)

    def rec(i: int, classes: int, points: int, pairs: int) -> None:
        if i == k + 1:
            if classes == d and points == k and pairs == x:
                out.append(InterceptVector(tuple(entries), c))
            return
        if i > c:
            entries[i] = 0
            rec(i + 1, classes, points, pairs)
            return
        n = 0
        while classes + n <= d and points + i * n <= k and pairs + comb(i, 2) * n <= x:
            entries[i] = n
            rec(i + 1, classes + n, points + i * n, pairs + comb(i, 2) * n)
            n += 1
        entries[i] = 0

    rec(0, 0, 0, 0)
    return out


@dataclass(frozen=True)
class Mask:
    """Line shape fixed by the columns hosting the two points of the unique 2-row."""

    column_vector: InterceptVector
    row_vector: InterceptVector
    anchors: tuple[int, int]


class UnsupportedShape(ValueError):
    pass


def enumerate_masks(row_vector: InterceptVector, col_vector: InterceptVector) -> list[Mask]:
    if row_vector[2] != 1 or any(row_vector[i] for i in range(3, len(row_vector.entries))):
        raise UnsupportedShape("masks are only built for a single 2-class on the rows")
    avail = {i: col_vector[i] for i in range(1, len(col_vector.entries)) if col_vector[i] > 0}
    masks = []
    occ = sorted(avail)
    for a_i, m1 in enumerate(occ):
        for m2 in occ[a_i:]:
            if m1 == m2 and avail[m1] < 2:
                continue
            masks.append(Mask(col_vector, row_vector, (m1, m2)))
    return masks
