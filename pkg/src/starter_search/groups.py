"""Permutation groups on small point sets, enumerated in full.

Points are 1-based ids in every public interface. Element arrays held by
:class:`PermGroup` are 0-based image tables (row ``g`` maps ``x`` to
``elements[g, x]``), which is what the search kernels consume.

Composition applies the left factor first: ``compose(p, q)`` sends ``x`` to
``q(p(x))``, i.e. ``x^(pq) = (x^p)^q``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

DEFAULT_CAP = 1_000_000


class GroupError(ValueError):
    pass


def _index_dtype(degree: int):
    return np.int16 if degree < 2**15 else np.int32


class Permutation:
    """A bijection on ``{1..degree}`` stored by its image list."""

    __slots__ = ("_arr",)

    def __init__(self, images: Sequence[int]):
        arr = np.asarray(images, dtype=np.int64) - 1
        n = arr.size
        if n == 0:
            raise GroupError("permutation must have positive degree")
        if not np.array_equal(np.sort(arr), np.arange(n)):
            raise GroupError(f"images do not form a bijection on 1..{n}")
        self._arr = arr.astype(_index_dtype(n))
        self._arr.flags.writeable = False

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "Permutation":
        """Wrap a 0-based image array without re-validating it."""
        p = cls.__new__(cls)
        a = np.array(arr, dtype=_index_dtype(len(arr)))
        a.flags.writeable = False
        p._arr = a
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls.from_array(np.arange(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(1, degree + 1))
        for cyc in cycles:
            for i, x in enumerate(cyc):
                images[x - 1] = cyc[(i + 1) % len(cyc)]
        return cls(images)

    @property
    def degree(self) -> int:
        return self._arr.size

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(int(x) + 1 for x in self._arr)

    @property
    def array(self) -> np.ndarray:
        return self._arr

    def __call__(self, x: int) -> int:
        return int(self._arr[x - 1]) + 1

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and np.array_equal(self._arr, other._arr)

    def __hash__(self) -> int:
        return hash(self._arr.tobytes())

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self._arr)
        inv[self._arr] = np.arange(self.degree, dtype=inv.dtype)
        return Permutation.from_array(inv)

    def is_identity(self) -> bool:
        return bool(np.array_equal(self._arr, np.arange(self.degree)))

    def order(self) -> int:
        n, p = 1, self
        while not p.is_identity():
            p = compose(p, self)
            n += 1
        return n


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``pq``, the map ``x -> q(p(x))``."""
    if p.degree != q.degree:
        raise GroupError(f"degree mismatch: {p.degree} vs {q.degree}")
    return Permutation.from_array(q.array[p.array])


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


@dataclass(eq=False)
class PermGroup:
    """A permutation group together with the full list of its elements."""

    degree: int
    generators: list[Permutation]
    elements: np.ndarray = field(repr=False)
    _index: dict[bytes, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.elements.flags.writeable = False
        if not self._index:
            self._index = {row.tobytes(): i for i, row in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return self.elements.shape[0]

    def __len__(self) -> int:
        return self.order

    def __contains__(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            return False
        return p.array.astype(self.elements.dtype).tobytes() in self._index

    def __iter__(self):
        for row in self.elements:
            yield Permutation.from_array(row)

    def element(self, i: int) -> Permutation:
        return Permutation.from_array(self.elements[i])

    def same_elements(self, other: "PermGroup") -> bool:
        return self.order == other.order and self._index.keys() == other._index.keys()

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(key in other._index for key in self._index)


def enumerate_group(generators: Sequence[Permutation], cap: int = DEFAULT_CAP) -> PermGroup:
    """Closure of ``generators`` by breadth-first search from the identity.

    Element order is deterministic: identity first, then BFS layers with
    generators tried in the given order.
    """
    if not generators:
        raise GroupError("at least one generator is required")
    degree = generators[0].degree
    if any(g.degree != degree for g in generators):
        raise GroupError("generators have different degrees")
    dtype = _index_dtype(degree)
    gens = [g.array.astype(dtype) for g in generators]

    ident = np.arange(degree, dtype=dtype)
    seen: dict[bytes, int] = {ident.tobytes(): 0}
    rows = [ident]
    queue = deque([ident])
    while queue:
        e = queue.popleft()
        for g in gens:
            h = g[e]
            key = h.tobytes()
            if key not in seen:
                if len(rows) >= cap:
                    raise GroupError(f"group order exceeds cap={cap}")
                seen[key] = len(rows)
                rows.append(h)
                queue.append(h)
    return PermGroup(degree, list(generators), np.stack(rows), seen)


# -- orbits ------------------------------------------------------------------


@dataclass(eq=False)
class PairOrbitTable:
    """Orbit number (1-based) of every unordered pair of points.

    ``index`` is a symmetric ``degree x degree`` array with 0 on the
    diagonal; ``index[r-1, s-1]`` is the orbit of ``{r, s}``.
    """

    degree: int
    index: np.ndarray = field(repr=False)
    orbit_sizes: list[int]

    @property
    def n_orbits(self) -> int:
        return len(self.orbit_sizes)

    def orbit_of(self, r: int, s: int) -> int:
        if r == s:
            raise ValueError("a pair needs two distinct points")
        return int(self.index[r - 1, s - 1])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PairOrbitTable)
            and self.degree == other.degree
            and self.orbit_sizes == other.orbit_sizes
            and np.array_equal(self.index, other.index)
        )


def orbits_on_pairs(group: PermGroup) -> PairOrbitTable:
    """Scan pairs ``{r,s}`` lexicographically, labelling each new orbit in turn."""
    n = group.degree
    index = np.zeros((n, n), dtype=np.int32)
    sizes: list[int] = []
    E = group.elements.astype(np.int64)
    for r in range(n - 1):
        while True:
            free = np.flatnonzero(index[r, r + 1 :] == 0)
            if free.size == 0:
                break
            s = r + 1 + int(free[0])
            a, b = E[:, r], E[:, s]
            lo, hi = np.minimum(a, b), np.maximum(a, b)
            label = len(sizes) + 1
            index[lo, hi] = label
            index[hi, lo] = label
            sizes.append(int(np.unique(lo * n + hi).size))
    return PairOrbitTable(n, index, sizes)


def orbits_on_points(group: PermGroup) -> list[set[int]]:
    n = group.degree
    seen = np.zeros(n, dtype=bool)
    orbits = []
    gens = [g.array for g in group.generators]
    for start in range(n):
        if seen[start]:
            continue
        orb = {start}
        seen[start] = True
        stack = [start]
        while stack:
            x = stack.pop()
            for g in gens:
                y = int(g[x])
                if not seen[y]:
                    seen[y] = True
                    orb.add(y)
                    stack.append(y)
        orbits.append({x + 1 for x in orb})
    return orbits


def is_transitive(group: PermGroup) -> bool:
    return len(orbits_on_points(group)) == 1


def setwise_stabilizer_order(group: PermGroup, block: Iterable[int]) -> int:
    """Number of elements mapping ``block`` onto itself."""
    idx = np.asarray(sorted(set(block)), dtype=np.int64) - 1
    member = np.zeros(group.degree, dtype=bool)
    member[idx] = True
    return int(member[group.elements[:, idx]].all(axis=1).sum())


def _check_partition(degree: int, partition: Sequence[Iterable[int]]) -> np.ndarray:
    label = np.full(degree, -1, dtype=np.int64)
    for c, cls in enumerate(partition):
        for x in cls:
            if not 1 <= x <= degree:
                raise GroupError(f"point {x} out of range 1..{degree}")
            if label[x - 1] != -1:
                raise GroupError(f"point {x} lies in two classes")
            label[x - 1] = c
    if (label < 0).any():
        raise GroupError("partition does not cover every point")
    return label


def partition_is_invariant(group: PermGroup, partition: Sequence[Iterable[int]]) -> bool:
    """True iff every generator maps every class onto a class.

    Checking generators suffices: a partition preserved by each generator is
    preserved by every product of generators.
    """
    label = _check_partition(group.degree, partition)
    sizes = np.bincount(label)
    for g in group.generators:
        img_label = label[g.array]
        for c, cls in enumerate(partition):
            pts = np.asarray(list(cls), dtype=np.int64) - 1
            targets = np.unique(img_label[pts])
            if targets.size != 1 or sizes[targets[0]] != sizes[c]:
                return False
    return True


# -- grid constructions ------------------------------------------------------


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def multiplicative_order(a: int, p: int) -> int:
    if a % p == 0:
        raise ValueError(f"{a} is not a unit mod {p}")
    x, k = a % p, 1
    while x != 1:
        x = x * a % p
        k += 1
    return k


def primitive_roots(p: int) -> list[int]:
    if not is_prime(p):
        raise GroupError(f"{p} is not prime")
    if p == 2:
        return [1]
    return [a for a in range(2, p) if multiplicative_order(a, p) == p - 1]


def smallest_primitive_root(p: int) -> int:
    return primitive_roots(p)[0]


@dataclass(frozen=True)
class GridGeometry:
    """Points ``(e, f)`` of ``Z_rows x Z_cols``, numbered ``f*n_rows + e + 1``."""

    n_rows: int
    n_cols: int

    def __post_init__(self):
        if self.n_rows < 1 or self.n_cols < 1:
            raise ValueError("grid dimensions must be positive")

    @property
    def degree(self) -> int:
        return self.n_rows * self.n_cols

    def point_id(self, e: int, f: int) -> int:
        return (f % self.n_cols) * self.n_rows + (e % self.n_rows) + 1

    def coords(self, pid: int) -> tuple[int, int]:
        f, e = divmod(pid - 1, self.n_rows)
        return e, f

    def row_of(self, pid: int) -> int:
        return (pid - 1) % self.n_rows

    def col_of(self, pid: int) -> int:
        return (pid - 1) // self.n_rows

    def rows(self) -> list[list[int]]:
        return [[self.point_id(e, f) for f in range(self.n_cols)] for e in range(self.n_rows)]

    def columns(self) -> list[list[int]]:
        return [[self.point_id(e, f) for e in range(self.n_rows)] for f in range(self.n_cols)]

    def affine(self, row_mult: int = 1, row_shift: int = 0, col_mult: int = 1, col_shift: int = 0) -> Permutation:
        """``(e, f) -> (row_mult*e + row_shift, col_mult*f + col_shift)``."""
        e = np.tile(np.arange(self.n_rows), self.n_cols)
        f = np.repeat(np.arange(self.n_cols), self.n_rows)
        e2 = (row_mult * e + row_shift) % self.n_rows
        f2 = (col_mult * f + col_shift) % self.n_cols
        return Permutation(f2 * self.n_rows + e2 + 1)


def grid_generators(geom: GridGeometry, which: str, multiplier: int | None = None) -> Permutation:
    """One of ``row_add``, ``col_add``, ``row_mul`` or ``col_mul`` on the grid."""
    if which == "row_add":
        return geom.affine(row_shift=1)
    if which == "col_add":
        return geom.affine(col_shift=1)
    if which in ("row_mul", "col_mul"):
        modulus = geom.n_rows if which == "row_mul" else geom.n_cols
        if not is_prime(modulus):
            raise GroupError(f"{which} needs a prime modulus, got {modulus}")
        if multiplier is None or multiplier % modulus == 0:
            raise GroupError(f"{which} needs a multiplier in 1..{modulus - 1}")
        if which == "row_mul":
            return geom.affine(row_mult=multiplier)
        return geom.affine(col_mult=multiplier)
    raise GroupError(f"unknown grid generator {which!r}")


GRID_451 = GridGeometry(41, 11)


def _roots(geom: GridGeometry, a: int | None, b: int | None) -> tuple[int, int]:
    a = smallest_primitive_root(geom.n_rows) if a is None else a
    b = smallest_primitive_root(geom.n_cols) if b is None else b
    if multiplicative_order(a, geom.n_rows) != geom.n_rows - 1:
        raise GroupError(f"{a} is not a primitive root mod {geom.n_rows}")
    if multiplicative_order(b, geom.n_cols) != geom.n_cols - 1:
        raise GroupError(f"{b} is not a primitive root mod {geom.n_cols}")
    return a, b


def parameter_set_generators(
    set_: int, i: int, a: int | None = None, b: int | None = None, geom: GridGeometry = GRID_451
) -> list[Permutation]:
    if set_ not in (1, 2):
        raise GroupError(f"parameter set must be 1 or 2, got {set_}")
    if i not in (1, 2, 3, 4):
        raise GroupError(f"group index must be 1..4, got {i}")
    a, b = _roots(geom, a, b)
    p, q = geom.n_rows, geom.n_cols
    gens = [grid_generators(geom, "row_add"), grid_generators(geom, "col_add")]
    if set_ == 1:
        gens.append(grid_generators(geom, "row_mul", pow(a, (p - 1) // 2, p)))
    # order-5 element acting on rows and columns together
    gens.append(geom.affine(row_mult=pow(a, 8, p), col_mult=pow(b, 2 * i, q)))
    return gens


def build_parameter_set_group(
    set_: int, i: int, a: int | None = None, b: int | None = None, cap: int = DEFAULT_CAP
) -> PermGroup:
    return enumerate_group(parameter_set_generators(set_, i, a, b), cap)


def normalizer_generators(a: int | None = None, b: int | None = None, geom: GridGeometry = GRID_451) -> list[Permutation]:
    a, b = _roots(geom, a, b)
    return [
        grid_generators(geom, "row_add"),
        grid_generators(geom, "col_add"),
        grid_generators(geom, "row_mul", a),
        grid_generators(geom, "col_mul", b),
    ]


def build_normalizer(a: int | None = None, b: int | None = None, geom: GridGeometry = GRID_451, cap: int = DEFAULT_CAP) -> PermGroup:
    """AGL(1, n_rows) x AGL(1, n_cols) acting on the grid."""
    return enumerate_group(normalizer_generators(a, b, geom), cap)


def build_translation_group(geom: GridGeometry) -> PermGroup:
    """Row and column additions only; regular on the grid points."""
    return enumerate_group([grid_generators(geom, "row_add"), grid_generators(geom, "col_add")])


def normalizes(h_gens: Sequence[Permutation], group: PermGroup) -> bool:
    """True iff ``h^-1 g h`` lies in ``group`` for all listed ``h`` and group generators ``g``."""
    for h in h_gens:
        hinv = h.inverse()
        for g in group.generators:
            if compose(compose(hinv, g), h) not in group:
                return False
    return True
