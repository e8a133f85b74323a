"""Command-line front end: ``starter-search {params,orbits,search,census,verify,pg}``."""

from __future__ import annotations

import argparse
import logging
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import plotting
from .config import ParameterSetSpec, SpecError, load_spec
from .dd import UnsupportedShape, dd_bound, dd_solve, enumerate_masks
from .formats import append_block_array, format_items, read_blocks, write_blocks, write_items, write_orbit_table
from .groups import PairOrbitTable, PermGroup, enumerate_group, orbits_on_pairs
from .orbit_condition import Infeasible, OrbitTargets, make_targets
from .search import SearchConfig, census, census_chunks, search, search_set1
from .singer import build_plane, singer_partition
from .verify import Design, develop, verify

log = logging.getLogger("starter_search")


@dataclass
class Problem:
    label: str
    group: PermGroup
    table: PairOrbitTable
    targets: OrbitTargets | Infeasible


def _problem(spec: ParameterSetSpec, i: int | None) -> Problem:
    group = spec.build_group(i)
    table = orbits_on_pairs(group)
    return Problem(spec.group_label(i), group, table, make_targets(spec.v, spec.k, table, group.order))


def _apply_overrides(spec: ParameterSetSpec, args) -> ParameterSetSpec:
    if getattr(args, "group_index", None) is not None:
        spec.group_index = args.group_index
    if getattr(args, "vector", None) is not None:
        spec.column_vector = args.vector
    if getattr(args, "depth", None) is not None:
        spec.census_depth = args.depth
    if getattr(args, "with_orbit_condition", False):
        spec.census_with_orbit_condition = True
    return spec


def _outdir(spec: ParameterSetSpec | None, args) -> Path:
    out = Path(args.out or (spec.out if spec and spec.out else "out"))
    out.mkdir(parents=True, exist_ok=True)
    return out


# -- params ------------------------------------------------------------------


def cmd_params(spec: ParameterSetSpec) -> str:
    k, R, C = spec.k, spec.n_rows, spec.n_cols
    lines = [f"name: {spec.name}", f"v: {spec.v}", f"k: {k}", f"grid: {R} rows x {C} columns"]
    bound, ok = dd_bound(k, spec.v)
    lines.append(f"dd_bound: v={spec.v} <= {bound} ok" if ok else f"DD bound violated: v={spec.v} > {bound}")
    for name, c, d in (("columns", R, C), ("rows", C, R)):
        sols = dd_solve(k, c, d) if c >= 2 and d >= 2 else []
        desc = " ".join(f"x={s.x} y={s.y}" for s in sols) if sols else "no (x,y) solution"
        lines.append(f"dd[{name}] ({d} classes of {c}): {desc}")
    cols, rows = spec.column_vectors(), spec.row_vectors()
    lines.append("column_vectors: " + (" ".join(v.short() for v in cols) or "none"))
    lines.append("row_vectors: " + (" ".join(v.short() for v in rows) or "none"))
    masks = []
    for row in rows:
        for fam, col in enumerate(cols, start=1):
            try:
                for j, m in enumerate(enumerate_masks(row, col)):
                    masks.append(f"mask {fam}{chr(65 + j)}: columns {col.short()} rows {row.short()} anchors {m.anchors}")
            except UnsupportedShape as exc:
                masks.append(f"masks unavailable for rows {row.short()}: {exc}")
                break
    n_masks = sum(1 for m in masks if m.startswith("mask "))
    lines.append(f"masks: {n_masks}")
    lines.extend(masks)
    return "\n".join(lines) + "\n"


# -- orbits ------------------------------------------------------------------


def cmd_orbits(spec: ParameterSetSpec, out: Path) -> list[Path]:
    paths = []
    for i in spec.group_indices():
        group = spec.build_group(i)
        table = orbits_on_pairs(group)
        path = out / f"orbits_{spec.group_label(i)}.txt"
        write_orbit_table(table, path)
        sizes = sorted(set(table.orbit_sizes))
        print(f"{spec.group_label(i)}: |G|={group.order} orbits={table.n_orbits} sizes={sizes} -> {path}")
        paths.append(path)
    return paths


# -- search ------------------------------------------------------------------


def _configs(spec: ParameterSetSpec, prob: Problem, depth=None, with_orbit=False):
    row = spec.selected_row_vector()
    for j, col in spec.selected_column_vectors():
        yield j, SearchConfig(
            spec.geometry, prob.group, prob.table, prob.targets, spec.k, row, col, spec.initial(),
            spec.symmetry, depth, with_orbit, name=prob.label,
        )


def cmd_search(spec: ParameterSetSpec, out: Path, jobs: int = 1, plots: bool = True) -> int:
    """Run every (group, column vector) combination; returns the total found."""
    total = 0
    profiles = {}
    for i in spec.group_indices():
        prob = _problem(spec, i)
        if isinstance(prob.targets, Infeasible):
            print(f"{prob.label}: INFEASIBLE ({prob.targets.reason})")
            continue
        if spec.group == "set1":
            t0 = time.time()
            res = search_set1(spec.geometry, prob.group, prob.table, prob.targets, prob.label)
            write_blocks([b.points for b in res.blocks], out / f"blocks_{prob.label}.txt")
            items = [("group", prob.label), ("candidates", res.candidates), ("passed_tallies", res.passed_tallies),
                     ("found", len(res.blocks)), ("seconds", f"{time.time() - t0:.1f}")]
            write_items(items, out / f"stats_{prob.label}.txt")
            print(f"{prob.label}: candidates={res.candidates} FOUND {len(res.blocks)}")
            total += len(res.blocks)
            continue
        for j, cfg in _configs(spec, prob):
            t0 = time.time()
            res = search(cfg, jobs=jobs)
            tag = f"{prob.label}_v{j}"
            write_blocks([b.points for b in res.blocks], out / f"blocks_{tag}.txt")
            items = [("group", prob.label), ("column_vector", cfg.col_vector.short()),
                     ("row_vector", cfg.row_vector.short()), ("symmetry", ",".join(cfg.symmetry_rules)),
                     ("found", res.count), *res.stats.as_items(), ("seconds", f"{time.time() - t0:.1f}")]
            write_items(items, out / f"stats_{tag}.txt")
            profiles[f"{prob.label} {cfg.col_vector.short()}"] = res.stats.nodes_by_depth
            print(f"{prob.label} vector={cfg.col_vector.short()}: nodes={res.stats.nodes} FOUND {res.count}")
            total += res.count
            if plots:
                for n, b in enumerate(res.blocks[:4], start=1):
                    plotting.block_grid(spec.geometry, b.points, out / f"block_{tag}_{n}.png", title=str(b))
    if plots and profiles:
        plotting.search_profile(profiles, out / "search_profile.png", title=f"{spec.name}: nodes by depth")
    print(f"FOUND {total}")
    return total


def cmd_census(spec: ParameterSetSpec, out: Path, jobs: int = 1, stream: bool = False, plots: bool = True) -> dict[str, int]:
    depth = spec.census_depth or spec.k
    mode = "orbit" if spec.census_with_orbit_condition else "intercept"
    counts = {}
    for i in spec.group_indices():
        prob = _problem(spec, i)
        if isinstance(prob.targets, Infeasible) and spec.census_with_orbit_condition:
            print(f"{prob.label}: INFEASIBLE ({prob.targets.reason})")
            continue
        targets = prob.targets if not isinstance(prob.targets, Infeasible) else _loose_targets(prob)
        prob = Problem(prob.label, prob.group, prob.table, targets)
        for j, cfg in _configs(spec, prob, depth, spec.census_with_orbit_condition):
            tag = f"{prob.label}_v{j}_q{depth}_{mode}"
            t0 = time.time()
            if stream:
                n = 0
                with open(out / f"census_{tag}.txt", "w") as fh:
                    for _, arr in census_chunks(cfg):
                        append_block_array(arr, fh)
                        n += arr.shape[0]
                count, stats = n, None
            else:
                res = census(cfg, jobs=jobs)
                count, stats = res.count, res.stats
            items = [("group", prob.label), ("column_vector", cfg.col_vector.short()), ("depth", depth),
                     ("mode", mode), ("count", count)]
            if stats is not None:
                items += stats.as_items()
            items.append(("seconds", f"{time.time() - t0:.1f}"))
            write_items(items, out / f"census_stats_{tag}.txt")
            counts[f"{prob.label} {cfg.col_vector.short()}"] = count
            print(f"{prob.label} vector={cfg.col_vector.short()} depth={depth} mode={mode}: COUNT {count}")
    if plots and counts:
        plotting.census_bars(counts, out / f"census_q{depth}_{mode}.png", title=f"{spec.name}: q={depth}, {mode}")
    return counts


def _loose_targets(prob: Problem) -> OrbitTargets:
    # placeholder quotas; only read when the orbit condition is switched on
    return OrbitTargets(1, tuple(prob.table.orbit_sizes), prob.group.order, 1)


# -- verify ------------------------------------------------------------------


def _partitions(spec: ParameterSetSpec):
    g = spec.geometry
    parts = []
    for name, classes, c, d in (("rows", g.rows(), g.n_cols, g.n_rows), ("columns", g.columns(), g.n_rows, g.n_cols)):
        sols = dd_solve(spec.k, c, d) if c >= 2 and d >= 2 else []
        parts.append((name, classes, sols[0].x if len(sols) == 1 else None))
    return parts


def cmd_verify(spec: ParameterSetSpec, blocks_path: Path, out: Path) -> int:
    blocks = read_blocks(blocks_path)
    idx = spec.group_indices()
    if len(idx) != 1:
        raise SpecError("verify needs a single group; pass --group-index")
    group = spec.build_group(idx[0])
    good = 0
    chunks = []
    for n, block in enumerate(blocks, start=1):
        design = develop(group, block)
        rep = verify(design, group, _partitions(spec))
        ok = rep.is_design and rep.lam == 1 and all(p.ok for p in rep.partitions)
        good += ok
        chunks.append(f"# block {n}: {' '.join(map(str, block))}\n" + format_items(rep.as_items()))
    report = "\n".join(chunks)
    (out / f"verify_{spec.group_label(idx[0])}.txt").write_text(report)
    sys.stdout.write(report)
    print(f"VERIFIED {good}/{len(blocks)}")
    return good


def cmd_pg(p: int, out: Path, plots: bool = True) -> bool:
    plane = build_plane(p)
    path = out / f"pg2_{p}_lines.txt"
    write_blocks(plane.lines, path)
    group = enumerate_group([plane.singer])
    n = plane.n
    parts = []
    for a in range(2, n):
        if n % a == 0:
            classes = singer_partition(plane, a)
            c, d = n // a, a
            sols = dd_solve(p + 1, c, d) if c >= 2 else []
            parts.append((f"singer_mod_{a}", classes, sols[0].x if len(sols) == 1 else None))
    rep = verify(Design(n, plane.lines), group, parts)
    items = [("p", p), ("primitive_cubic", str(plane.poly)), ("singer_order", group.order), *rep.as_items()]
    write_items(items, out / f"pg2_{p}_report.txt")
    sys.stdout.write(format_items(items))
    print(f"lines written to {path}")
    if plots:
        plotting.incidence(plane.lines, n, out / f"pg2_{p}_incidence.png", title=f"PG(2,{p})")
    return rep.is_projective_plane


# -- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="starter-search", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, needs_spec=True):
        if needs_spec:
            p.add_argument("--spec", required=True, help="parameter-set file")
        p.add_argument("--out", help="output directory (default: spec 'out' or ./out)")
        p.add_argument("--no-plots", action="store_true", help="skip figure files")
        return p

    common(sub.add_parser("params", help="DD solutions, intercept vectors and masks"))
    p = common(sub.add_parser("orbits", help="write pair-orbit tables"))
    p.add_argument("--group-index", type=int, choices=[1, 2, 3, 4])
    for name, helptext in (("search", "search for starter blocks"), ("census", "count partial blocks")):
        p = common(sub.add_parser(name, help=helptext))
        p.add_argument("--group-index", type=int, choices=[1, 2, 3, 4])
        p.add_argument("--vector", type=int, help="1-based column intercept vector")
        p.add_argument("--jobs", type=int, default=1)
        if name == "census":
            p.add_argument("--depth", type=int)
            p.add_argument("--with-orbit-condition", action="store_true")
            p.add_argument("--stream", action="store_true", help="also write every counted block")
    p = common(sub.add_parser("verify", help="develop and verify blocks from a file"))
    p.add_argument("--blocks", required=True)
    p.add_argument("--group-index", type=int, choices=[1, 2, 3, 4])
    p = common(sub.add_parser("pg", help="build PG(2,p) with its Singer cycle"), needs_spec=False)
    p.add_argument("--p", type=int, default=7)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    plots = not args.no_plots
    try:
        if args.cmd == "pg":
            cmd_pg(args.p, _outdir(None, args), plots)
            return 0
        spec = _apply_overrides(load_spec(args.spec), args)
        out = _outdir(spec, args)
        if args.cmd == "params":
            text = cmd_params(spec)
            (out / "params.txt").write_text(text)
            sys.stdout.write(text)
        elif args.cmd == "orbits":
            cmd_orbits(spec, out)
        elif args.cmd == "search":
            cmd_search(spec, out, args.jobs, plots)
        elif args.cmd == "census":
            cmd_census(spec, out, args.jobs, args.stream, plots)
        elif args.cmd == "verify":
            cmd_verify(spec, Path(args.blocks), out)
    except (SpecError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
