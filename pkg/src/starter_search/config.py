"""Parameter-set files: flat ``key = value`` lines with ``#`` comments.

Example::

    name = set2
    n_rows = 41
    n_cols = 11
    group = set2          # set1(i) | set2(i) | set1 | set2 | pg_test(p) | generators
    k = 10
    column_vector = all   # or a 1-based index into the column intercept vectors
    symmetry = fixed_initial_block, first_extension_in_row_1
    census_depth = 6
    census_mode = intercept   # or orbit
    out = out/set2
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .dd import InterceptVector, dd_solve, intercept_vectors
from .groups import (
    GridGeometry,
    PermGroup,
    Permutation,
    build_translation_group,
    enumerate_group,
    parameter_set_generators,
)
from .search import DEFAULT_RULES, SYMMETRY_RULES


class SpecError(ValueError):
    pass


_GROUP = re.compile(r"^(set1|set2|pg_test)\s*(?:\(\s*(\d+)\s*\))?$|^generators$")

_KEYS = {
    "name", "n_rows", "n_cols", "group", "k", "column_vector", "row_vector", "symmetry",
    "initial_block", "census_depth", "census_mode", "out", "generators", "row_root", "col_root",
}


@dataclass
class ParameterSetSpec:
    name: str
    n_rows: int
    n_cols: int
    group: str
    group_index: int | None
    k: int
    column_vector: int | None = None  # 1-based; None means every vector
    row_vector: int = 1
    symmetry: tuple[str, ...] = DEFAULT_RULES
    initial_block: tuple[int, ...] | None = None
    census_depth: int | None = None
    census_with_orbit_condition: bool = False
    out: str | None = None
    generators: list[list[int]] = field(default_factory=list)
    row_root: int | None = None
    col_root: int | None = None

    @property
    def geometry(self) -> GridGeometry:
        return GridGeometry(self.n_rows, self.n_cols)

    @property
    def v(self) -> int:
        return self.n_rows * self.n_cols

    def group_indices(self) -> list[int | None]:
        if self.group in ("set1", "set2"):
            return [self.group_index] if self.group_index else [1, 2, 3, 4]
        return [self.group_index]

    def group_label(self, i: int | None) -> str:
        if self.group in ("set1", "set2"):
            return f"{self.group}_G{i}"
        if self.group == "pg_test":
            return f"pg_test_{self.group_index}"
        return "inline"

    def build_group(self, i: int | None) -> PermGroup:
        g = self.geometry
        if self.group in ("set1", "set2"):
            gens = parameter_set_generators(int(self.group[-1]), i, self.row_root, self.col_root, g)
            return enumerate_group(gens)
        if self.group == "pg_test":
            return build_translation_group(g)
        return enumerate_group([Permutation(imgs) for imgs in self.generators])

    # partitions: rows are n_rows classes of n_cols points, columns the reverse
    def row_vectors(self) -> list[InterceptVector]:
        return _vectors(self.k, self.n_cols, self.n_rows)

    def column_vectors(self) -> list[InterceptVector]:
        return _vectors(self.k, self.n_rows, self.n_cols)

    def selected_column_vectors(self) -> list[tuple[int, InterceptVector]]:
        vecs = self.column_vectors()
        if self.column_vector is None:
            return list(enumerate(vecs, start=1))
        if not 1 <= self.column_vector <= len(vecs):
            raise SpecError(f"column_vector {self.column_vector} out of range 1..{len(vecs)}")
        return [(self.column_vector, vecs[self.column_vector - 1])]

    def selected_row_vector(self) -> InterceptVector:
        vecs = self.row_vectors()
        if not 1 <= self.row_vector <= len(vecs):
            raise SpecError(f"row_vector {self.row_vector} out of range 1..{len(vecs)}")
        return vecs[self.row_vector - 1]

    def initial(self) -> tuple[int, ...]:
        if self.initial_block is not None:
            return self.initial_block
        g = self.geometry
        return (g.point_id(0, 0), g.point_id(0, 1))


def _vectors(k: int, c: int, d: int) -> list[InterceptVector]:
    """Intercept vectors for a partition into ``d`` classes of size ``c``."""
    if c < 2 or d < 2:
        return []
    out = []
    for sol in dd_solve(k, c, d):
        out.extend(intercept_vectors(k, sol.x, d, c))
    return out


def _int(val: str, key: str, lineno: int) -> int:
    try:
        return int(val)
    except ValueError:
        raise SpecError(f"line {lineno}: {key} must be an integer, got {val!r}") from None


def parse_spec(text: str) -> ParameterSetSpec:
    raw: dict[str, tuple[str, int]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SpecError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        if key not in _KEYS:
            raise SpecError(f"line {lineno}: unknown key {key!r}")
        if key in raw:
            raise SpecError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = (val, lineno)

    for req in ("n_rows", "n_cols", "group", "k"):
        if req not in raw:
            raise SpecError(f"missing required key {req!r}")

    def get_int(key: str, default=None):
        if key not in raw:
            return default
        return _int(raw[key][0], key, raw[key][1])

    gval, gline = raw["group"]
    m = _GROUP.match(gval.replace(" ", ""))
    if not m:
        raise SpecError(f"line {gline}: unknown group {gval!r}")
    family = m.group(1) or "generators"
    gidx = int(m.group(2)) if m.group(2) else None
    if family in ("set1", "set2") and gidx is not None and gidx not in (1, 2, 3, 4):
        raise SpecError(f"line {gline}: group index must be 1..4")
    if family == "pg_test" and gidx is None:
        raise SpecError(f"line {gline}: pg_test needs a prime, e.g. pg_test(7)")

    spec = ParameterSetSpec(
        name=raw.get("name", ("spec", 0))[0],
        n_rows=get_int("n_rows"),
        n_cols=get_int("n_cols"),
        group=family,
        group_index=gidx,
        k=get_int("k"),
        row_vector=get_int("row_vector", 1),
        census_depth=get_int("census_depth"),
        out=raw.get("out", (None, 0))[0],
        row_root=get_int("row_root"),
        col_root=get_int("col_root"),
    )
    if "column_vector" in raw:
        val, line = raw["column_vector"]
        spec.column_vector = None if val == "all" else _int(val, "column_vector", line)
    if "symmetry" in raw:
        val, line = raw["symmetry"]
        rules = tuple(s.strip() for s in val.split(",") if s.strip())
        bad = [r for r in rules if r not in SYMMETRY_RULES]
        if bad:
            raise SpecError(f"line {line}: unknown symmetry rules {bad}")
        spec.symmetry = rules
    if "initial_block" in raw:
        val, line = raw["initial_block"]
        spec.initial_block = tuple(sorted(_int(x, "initial_block", line) for x in val.split()))
    if "census_mode" in raw:
        val, line = raw["census_mode"]
        if val not in ("intercept", "orbit"):
            raise SpecError(f"line {line}: census_mode must be 'intercept' or 'orbit'")
        spec.census_with_orbit_condition = val == "orbit"
    if family == "generators":
        if "generators" not in raw:
            raise SpecError(f"line {gline}: group = generators needs a 'generators' line")
        val, line = raw["generators"]
        try:
            spec.generators = [[int(x) for x in part.split()] for part in val.split("|") if part.strip()]
        except ValueError:
            raise SpecError(f"line {line}: generators must be '|'-separated image lists") from None

    _validate(spec, gline)
    return spec


def _validate(spec: ParameterSetSpec, gline: int) -> None:
    if spec.n_rows < 1 or spec.n_cols < 1:
        raise SpecError("n_rows and n_cols must be positive")
    if spec.k < 2 or spec.k > spec.v:
        raise SpecError(f"k={spec.k} is out of range for v={spec.v}")
    if spec.group in ("set1", "set2") and (spec.n_rows, spec.n_cols) != (41, 11):
        raise SpecError(f"line {gline}: {spec.group} groups live on the 41 x 11 grid")
    if spec.group == "pg_test":
        p = spec.group_index
        if spec.v != p * p + p + 1:
            raise SpecError(f"line {gline}: pg_test({p}) needs {p * p + p + 1} points, grid has {spec.v}")
        if spec.k != p + 1:
            raise SpecError(f"pg_test({p}) has lines of size {p + 1}, spec says k={spec.k}")
    if spec.group == "generators":
        if any(len(g) != spec.v for g in spec.generators):
            raise SpecError(f"line {gline}: every generator must have {spec.v} images")
    if spec.census_depth is not None and not 0 < spec.census_depth <= spec.k:
        raise SpecError("census_depth must lie in 1..k")


def load_spec(path: str | Path) -> ParameterSetSpec:
    try:
        return parse_spec(Path(path).read_text())
    except SpecError as exc:
        raise SpecError(f"{path}: {exc}") from None
