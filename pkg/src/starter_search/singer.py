"""Desarguesian planes PG(2,p) for prime p with their Singer cycle.

GF(p^3) is realised as ``Z_p[X]/(f)`` for a primitive cubic ``f``; the
points of the plane are the 1-dimensional subspaces of that 3-dimensional
space over ``Z_p`` and the Singer cycle is multiplication by ``X``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .groups import GroupError, Permutation, is_prime

MAX_PRIME = 31


@dataclass(frozen=True)
class PrimeFieldPoly:
    coefficients: tuple[int, ...]  # constant term first
    p: int

    def __post_init__(self):
        coeffs = [c % self.p for c in self.coefficients]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1 if any(self.coefficients) else -1

    def __call__(self, x: int) -> int:
        return sum(c * pow(x, i, self.p) for i, c in enumerate(self.coefficients)) % self.p

    def __str__(self) -> str:
        terms = []
        for i in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[i]
            if not c:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            coef = str(c) if (c != 1 or i == 0) else ""
            terms.append(coef + mono)
        return " + ".join(terms) or "0"


def _mulx(vec: tuple[int, int, int], f: PrimeFieldPoly) -> tuple[int, int, int]:
    """Multiply ``c0 + c1 X + c2 X^2`` by X modulo the monic cubic ``f``."""
    c0, c1, c2 = vec
    f0, f1, f2 = f.coefficients[:3]
    p = f.p
    # X^3 = -(f0 + f1 X + f2 X^2)
    return ((-c2 * f0) % p, (c0 - c2 * f1) % p, (c1 - c2 * f2) % p)


def order_of_x(f: PrimeFieldPoly) -> int:
    """Multiplicative order of X in ``Z_p[X]/(f)``; 0 if X is never 1 again."""
    one = (1, 0, 0)
    x = _mulx(one, f)
    n = 1
    limit = f.p**3
    while x != one:
        x = _mulx(x, f)
        n += 1
        if n > limit or x == (0, 0, 0):
            return 0
    return n


def has_root(f: PrimeFieldPoly) -> bool:
    return any(f(x) == 0 for x in range(f.p))


def is_irreducible_cubic(f: PrimeFieldPoly) -> bool:
    # a reducible cubic has a linear factor
    return f.degree == 3 and not has_root(f)


def find_primitive_cubic(p: int) -> PrimeFieldPoly:
    """Smallest monic ``X^3 + c2 X^2 + c1 X + c0`` (ordered by ``(c2, c1, c0)``)
    for which X has order ``p^3 - 1``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    for c2, c1, c0 in itertools.product(range(p), repeat=3):
        if c0 == 0:
            continue
        f = PrimeFieldPoly((c0, c1, c2, 1), p)
        if order_of_x(f) == p**3 - 1:
            if not is_irreducible_cubic(f):
                raise AssertionError(f"{f} is primitive but reducible")
            return f
    raise AssertionError(f"no primitive cubic found mod {p}")


def _normalise(vec: tuple[int, ...], p: int) -> tuple[int, ...]:
    lead = next(c for c in vec if c)
    inv = pow(lead, -1, p)
    return tuple(c * inv % p for c in vec)


@dataclass
class PlaneModel:
    p: int
    poly: PrimeFieldPoly
    points: list[tuple[int, int, int]]
    lines: list[tuple[int, ...]]  # 1-based point ids, ascending
    singer: Permutation
    base_orbit: list[int]  # point ids of X^0, X^1, ... (1-based)

    @property
    def n(self) -> int:
        return len(self.points)


def build_plane(p: int) -> PlaneModel:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p > MAX_PRIME:
        raise ValueError(f"p={p} exceeds the enumeration guard p <= {MAX_PRIME}")
    f = find_primitive_cubic(p)
    points = sorted({_normalise(v, p) for v in itertools.product(range(p), repeat=3) if any(v)})
    pid = {pt: i + 1 for i, pt in enumerate(points)}
    n = len(points)

    # a line is the kernel of a non-zero linear form
    lines = []
    for u in points:
        lines.append(tuple(sorted(pid[x] for x in points if sum(a * b for a, b in zip(u, x)) % p == 0)))
    lines.sort()

    images = [0] * n
    for pt in points:
        images[pid[pt] - 1] = pid[_normalise(_mulx(pt, f), p)]
    singer = Permutation(images)

    orbit = []
    x = (1, 0, 0)
    for _ in range(n):
        orbit.append(pid[_normalise(x, p)])
        x = _mulx(x, f)
    return PlaneModel(p, f, points, lines, singer, orbit)


def singer_partition(plane: PlaneModel, a: int) -> list[list[int]]:
    """Classes ``{X^i : i = j mod a}`` for ``j = 0..a-1``, as sorted point-id lists."""
    n = plane.n
    if a <= 1 or a >= n or n % a:
        raise GroupError(f"{a} is not a proper divisor of {n}")
    if sorted(plane.base_orbit) != list(range(1, n + 1)):
        raise GroupError("Singer cycle is not regular on the points")
    classes: list[list[int]] = [[] for _ in range(a)]
    for i, x in enumerate(plane.base_orbit):
        classes[i % a].append(x)
    return [sorted(c) for c in classes]
