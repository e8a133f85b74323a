"""Plain-text file formats: orbit tables, block lists and key:value reports."""

from __future__ import annotations

import re
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .groups import PairOrbitTable

_HEADER = re.compile(r"#\s*degree=(\d+)\s+orbits=(\d+)")


def write_orbit_table(table: PairOrbitTable, path: str | Path) -> None:
    """Line ``r`` holds the orbits of ``{r, r+1}``, ..., ``{r, degree}``."""
    n = table.degree
    with open(path, "w") as fh:
        fh.write(f"# degree={n} orbits={table.n_orbits}\n")
        for r in range(n - 1):
            fh.write(" ".join(map(str, table.index[r, r + 1 :].tolist())) + "\n")


def read_orbit_table(path: str | Path) -> PairOrbitTable:
    with open(path) as fh:
        header = fh.readline()
        m = _HEADER.match(header.strip())
        if not m:
            raise ValueError(f"{path}: bad header line {header.strip()!r}")
        n, n_orbits = int(m.group(1)), int(m.group(2))
        index = np.zeros((n, n), dtype=np.int32)
        for r in range(n - 1):
            line = fh.readline()
            vals = np.array(line.split(), dtype=np.int32)
            if vals.size != n - r - 1:
                raise ValueError(f"{path}: line {r + 2} has {vals.size} entries, expected {n - r - 1}")
            index[r, r + 1 :] = vals
            index[r + 1 :, r] = vals
    iu = np.triu_indices(n, 1)
    sizes = np.bincount(index[iu], minlength=n_orbits + 1)[1:]
    if sizes.size != n_orbits or (sizes == 0).any():
        raise ValueError(f"{path}: orbit numbers do not cover 1..{n_orbits}")
    return PairOrbitTable(n, index, [int(s) for s in sizes])


def format_block(block: Iterable[int]) -> str:
    return " ".join(str(int(x)) for x in sorted(block))


def write_blocks(blocks: Iterable[Iterable[int]], path: str | Path) -> int:
    n = 0
    with open(path, "w") as fh:
        for B in blocks:
            fh.write(format_block(B) + "\n")
            n += 1
    return n


def append_block_array(arr: np.ndarray, fh) -> None:
    """Write rows of an (already sorted, 1-based) block array to an open file."""
    if arr.size:
        np.savetxt(fh, arr, fmt="%d", delimiter=" ")


def read_blocks(path: str | Path) -> list[tuple[int, ...]]:
    out = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                out.append(tuple(sorted(int(x) for x in line.split())))
            except ValueError:
                raise ValueError(f"{path}:{lineno}: not a list of point ids") from None
    return out


def format_items(items: Sequence[tuple[str, object]]) -> str:
    lines = []
    for key, val in items:
        if isinstance(val, bool):
            val = "true" if val else "false"
        lines.append(f"{key}: {val}")
    return "\n".join(lines) + "\n"


def write_items(items: Sequence[tuple[str, object]], path: str | Path) -> None:
    Path(path).write_text(format_items(items))
