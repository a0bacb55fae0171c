"""Command line: ``persaut {aut,curves,barcode,stability} ...``.

Exit status: 0 on success, 2 for bad input, 3 when a search or enumeration
cap stops the computation.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

from . import io as fio
from .autgroup import automorphism_group
from .config import FORMATS, RunConfig, from_sources, parse_formats
from .errors import FeatureError, InputError, NumericError, ResourceLimitError
from .graph import Graph, pairwise_distances, proximity_graph
from .persist import barcode, build_filtration, filtration_from_weights, persistent_image, qmodule_description, RankTable
from .stability import load_manifest, run_study
from .symcurve import degree_curve_from_steps, effective_length, evaluate_steps, order_curve_from_steps

EXIT_OK, EXIT_INPUT, EXIT_CAP = 0, 2, 3


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("run configuration (PERSAUT_* environment variables give defaults)")
    g.add_argument("--eps-max", type=float, help="largest scale in Å (default 3.0)")
    g.add_argument("--tol", type=float, help="distance tie tolerance (default 1e-9)")
    g.add_argument("--enum-cap", type=int, help="largest group enumerated element by element (default 1e6)")
    g.add_argument("--node-cap", type=int, help="search-node budget per automorphism search")
    g.add_argument("--out", help="output directory (default: current directory)")
    g.add_argument("--format", dest="formats", type=parse_formats,
                   help=f"comma-separated output files to write, from {','.join(FORMATS)} (default all)")
    g.add_argument("--workers", type=int, help="worker processes (default 1)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="persaut", description="Persistent automorphism analysis of graphs and point clouds.")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("aut", parents=[common], help="automorphism group of a graph or a proximity graph")
    a.add_argument("input", help="edge list, or XYZ file together with --eps")
    a.add_argument("--eps", type=float, help="proximity threshold for XYZ input")
    a.add_argument("--input-format", choices=("auto", "xyz", "edgelist"), default="auto")
    a.add_argument("--json", action="store_true", help="print the group record as JSON")

    c = sub.add_parser("curves", parents=[common], help="symmetry order and degree curves of an XYZ file")
    c.add_argument("input")

    b = sub.add_parser("barcode", parents=[common], help="rank table and barcode of a filtration")
    b.add_argument("input", help="XYZ file or weighted edge list")
    b.add_argument("--input-format", choices=("auto", "xyz", "edgelist"), default="auto")

    s = sub.add_parser("stability", parents=[common], help="fullerene stability study")
    s.add_argument("manifest", nargs="?", help="study manifest (default: bundled twelve molecules)")
    return ap


def _config(args) -> RunConfig:
    keys = ("eps_max", "tol", "enum_cap", "node_cap", "out", "formats", "workers")
    return from_sources({k: getattr(args, k) for k in keys})


def _is_xyz(path: str, choice: str) -> bool:
    if choice != "auto":
        return choice == "xyz"
    return Path(path).suffix.lower() == ".xyz"


def _write(cfg: RunConfig, name: str, kind: str, data: str) -> Path | None:
    if kind not in cfg.formats:
        return None
    path = Path(cfg.out) / name
    fio.atomic_write(path, data)
    return path


def cmd_aut(args, cfg: RunConfig, out) -> int:
    if _is_xyz(args.input, args.input_format):
        if args.eps is None:
            raise InputError("XYZ input needs --eps")
        g = proximity_graph(pairwise_distances(fio.read_xyz(args.input)), args.eps)
    else:
        n, edges, _ = fio.read_edgelist(args.input)
        g = Graph.from_edges(n, edges)
    grp = automorphism_group(g, cfg.node_cap)
    if args.json:
        out.write(fio.dumps(fio.group_record(grp)))
        return EXIT_OK
    out.write(f"order {grp.order}\n")
    out.write(f"log2_order {grp.log2_order():.6f}\n")
    out.write(f"generators {len(grp.generators)}\n")
    for p in grp.generators:
        out.write(f"  {p.cycle_notation()}\n")
    return EXIT_OK


def cmd_curves(args, cfg: RunConfig, out) -> int:
    cloud = fio.read_xyz(args.input)
    steps = evaluate_steps(cloud, cfg.eps_max, cfg.enum_cap, cfg.node_cap, cfg.tol,
                           workers=cfg.workers, keep_going=True)
    failed = [s for s in steps if s.error]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        order = order_curve_from_steps(steps, cfg.eps_max)
        degree = degree_curve_from_steps(steps, cfg.eps_max)
    stem = Path(args.input).stem
    head = fio.provenance_header(cfg.digest(), f"curves {Path(args.input).name}")
    _write(cfg, f"{stem}_order.tsv", "tsv", fio.format_curve(order, head + "# symmetry order curve\n"))
    _write(cfg, f"{stem}_degree.tsv", "tsv", fio.format_curve(degree, head + "# symmetry degree curve\n"))
    features = {}
    for label, c in (("order", order), ("degree", degree)):
        try:
            f = effective_length(c)
            features[label] = {"plateau": [f.plateau_start, f.plateau_end], "value": f.value,
                               "region": [f.region_start, f.region_end], "area": f.area,
                               "length": f.length, "sup": f.sup}
        except FeatureError as exc:
            features[label] = {"error": str(exc)}
    ell = None
    if "sup" in features["order"] and "sup" in features["degree"]:
        ell = (features["order"]["sup"] + features["degree"]["sup"]) / 2
    record = {
        "input": Path(args.input).name,
        "config": cfg.numeric(),
        "config_sha256": cfg.digest(),
        "steps": [{"eps": s.threshold, "log2_order": s.log2_order,
                   "symmetry_degree": None if s.symmetry_degree is None or not isinstance(s.symmetry_degree, int)
                   else str(s.symmetry_degree), "error": s.error} for s in steps],
        "features": features,
        "ell": ell,
    }
    _write(cfg, f"{stem}_curves.json", "json", fio.dumps(record))
    if "svg" in cfg.formats:
        from .plotting import plot_curves
        plot_curves(order, degree, Path(cfg.out) / f"{stem}_curves.svg", title=stem)
    out.write(f"steps {len(steps)} (failed {len(failed)})\n")
    for s in failed:
        out.write(f"  step failed: {s.error}\n")
    for w in caught:
        out.write(f"  warning: {w.message}\n")
    for label in ("order", "degree"):
        f = features[label]
        if "error" in f:
            out.write(f"{label} curve: no plateau ({f['error']})\n")
        else:
            out.write(f"{label} curve: plateau [{f['plateau'][0]:.4f}, {f['plateau'][1]:.4f}) value {f['value']:.4f} "
                      f"region [{f['region'][0]:.4f}, {f['region'][1]:.4f}) sup {f['sup']:.4f}\n")
    if ell is not None:
        out.write(f"ell {ell:.6f}\n")
    return EXIT_OK if len(failed) < len(steps) else EXIT_CAP


def _rank_table_partial(filt, cfg):
    values = {}
    error = None
    for i in range(len(filt)):
        for j in range(i, len(filt)):
            try:
                values[(i, j)] = persistent_image(filt, i, j, cfg.enum_cap, cfg.node_cap).order
            except ResourceLimitError as exc:
                error = f"rank ({i}, {j}): {exc}"
                return values, error
    return values, error


def cmd_barcode(args, cfg: RunConfig, out) -> int:
    if _is_xyz(args.input, args.input_format):
        filt = build_filtration(fio.read_xyz(args.input), cfg.eps_max, cfg.tol)
    else:
        n, edges, weights = fio.read_edgelist(args.input)
        if weights is None and edges:
            raise InputError("barcode input edge list needs a weight on every edge")
        filt = filtration_from_weights(n, edges, weights or [], cfg.tol)
    values, error = _rank_table_partial(filt, cfg)
    stem = Path(args.input).stem
    head = fio.provenance_header(cfg.digest(), f"rank table {Path(args.input).name}")
    ths = filt.thresholds
    rows = ["i\tj\teps_i\teps_j\trank"] + [f"{i}\t{j}\t{ths[i]!r}\t{ths[j]!r}\t{r}" for (i, j), r in sorted(values.items())]
    _write(cfg, f"{stem}_rank.tsv", "tsv", head + "\n".join(rows) + "\n")
    record = {"input": Path(args.input).name, "config": cfg.numeric(), "config_sha256": cfg.digest(),
              "thresholds": list(ths), "rank_table": [{"i": i, "j": j, "rank": str(r)} for (i, j), r in sorted(values.items())]}
    if error is not None:
        record["error"] = error
        _write(cfg, f"{stem}_barcode.json", "json", fio.dumps(record))
        out.write(f"steps {len(filt)}\nincomplete: {error}\n")
        return EXIT_CAP
    bc = barcode(RankTable(len(filt), values, ths))
    record["barcode"] = fio.barcode_records(bc)
    record["qmodule"] = qmodule_description(bc)
    _write(cfg, f"{stem}_barcode.json", "json", fio.dumps(record))
    if "svg" in cfg.formats:
        from .plotting import plot_barcode
        plot_barcode(bc, Path(cfg.out) / f"{stem}_barcode.svg", title=stem)
    out.write(f"steps {len(filt)}\n")
    for b in bc:
        death = "inf" if b.death is None else str(b.death)
        out.write(f"[{b.birth}, {death}) x{b.multiplicity}\n")
    out.write(f"bars {bc.total()}\n")
    return EXIT_OK


def cmd_stability(args, cfg: RunConfig, out) -> int:
    molecules = load_manifest(args.manifest)
    if len(molecules) < 2:
        raise InputError(f"manifest lists {len(molecules)} molecule(s); the study needs at least 2")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        report = run_study(molecules, cfg)
    _write(cfg, "stability_report.tsv", "tsv", report.to_text())
    _write(cfg, "stability_report.json", "json", report.to_json())
    if "svg" in cfg.formats:
        from .plotting import plot_stability
        plot_stability(report, Path(cfg.out) / "stability.svg")
    out.write(report.to_text())
    for w in caught:
        out.write(f"warning: {w.message}\n")
    return EXIT_OK


COMMANDS = {"aut": cmd_aut, "curves": cmd_curves, "barcode": cmd_barcode, "stability": cmd_stability}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg, out)
    except (InputError, NumericError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_CAP
