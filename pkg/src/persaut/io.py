"""File formats: XYZ coordinates, edge lists, delimited curve tables and JSON records.

Every writer here has a reader that returns equal values, and nothing
written carries a timestamp, so identical runs give identical bytes.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from pathlib import Path
from typing import Sequence

from .errors import InputError
from .graph import PointCloud
from .perm import Permutation, PermutationGroup
from .persist import Barcode, PInterval, RankTable
from .symcurve import StepCurve

VERSION = "0.1.0"


def atomic_write(path: str | os.PathLike, data: str | bytes):
    """Write via a temporary file in the same directory, then rename into place."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    blob = data.encode() if isinstance(data, str) else data
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(blob)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def provenance_header(config_digest: str, what: str) -> str:
    return f"# persaut {VERSION} {what}\n# config-sha256 {config_digest}\n"


# -- XYZ ------------------------------------------------------------------------


def parse_xyz(text: str, source: str = "<xyz>") -> PointCloud:
    """Atom count, comment line, then ``symbol x y z`` rows; extra columns are ignored."""
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise InputError(f"{source}: empty XYZ input")
    try:
        count = int(lines[0].split()[0])
    except (ValueError, IndexError):
        raise InputError(f"{source}: line 1 must hold the atom count") from None
    if count < 1:
        raise InputError(f"{source}: atom count must be positive")
    rows = lines[2:]
    if len(rows) != count:
        raise InputError(f"{source}: header says {count} atoms but {len(rows)} coordinate lines follow")
    labels, pts = [], []
    for k, line in enumerate(rows, start=3):
        parts = line.split()
        if len(parts) < 4:
            raise InputError(f"{source}:{k}: expected '<symbol> <x> <y> <z>'")
        try:
            xyz = [float(p) for p in parts[1:4]]
        except ValueError:
            raise InputError(f"{source}:{k}: coordinates are not numbers") from None
        if not all(math.isfinite(c) for c in xyz):
            raise InputError(f"{source}:{k}: non-finite coordinate")
        labels.append(parts[0])
        pts.append(xyz)
    return PointCloud(pts, labels)


def read_xyz(path: str | os.PathLike) -> PointCloud:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_xyz(text, str(path))


def format_xyz(cloud: PointCloud, comment: str = "") -> str:
    labels = cloud.labels or ("X",) * len(cloud)
    lines = [str(len(cloud)), comment]
    lines += [f"{s} {x!r} {y!r} {z!r}" for s, (x, y, z) in zip(labels, cloud.points.tolist())]
    return "\n".join(lines) + "\n"


# -- edge lists -------------------------------------------------------------------


def parse_edgelist(text: str, source: str = "<edges>"):
    """First line ``n``, then ``u v [weight]`` per line (0-indexed; ``#`` starts a comment).

    Returns ``(n, edges, weights)``; ``weights`` is None when no line has one
    and an error is raised when only some lines do.
    """
    rows = []
    for k, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((k, line.split()))
    if not rows:
        raise InputError(f"{source}: empty edge list")
    k0, head = rows[0]
    if len(head) != 1:
        raise InputError(f"{source}:{k0}: first line must be the vertex count")
    try:
        n = int(head[0])
    except ValueError:
        raise InputError(f"{source}:{k0}: vertex count is not an integer") from None
    if n < 0:
        raise InputError(f"{source}:{k0}: vertex count must be non-negative")
    edges, weights = [], []
    for k, parts in rows[1:]:
        if len(parts) not in (2, 3):
            raise InputError(f"{source}:{k}: expected 'u v [weight]'")
        try:
            u, v = int(parts[0]), int(parts[1])
            w = float(parts[2]) if len(parts) == 3 else None
        except ValueError:
            raise InputError(f"{source}:{k}: bad number") from None
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise InputError(f"{source}:{k}: edge ({u}, {v}) invalid for {n} vertices")
        if w is not None and not math.isfinite(w):
            raise InputError(f"{source}:{k}: weight must be finite")
        edges.append((u, v))
        weights.append(w)
    present = [w is not None for w in weights]
    if any(present) and not all(present):
        raise InputError(f"{source}: either every edge has a weight or none does")
    if len(set(map(frozenset, edges))) != len(edges):
        raise InputError(f"{source}: duplicate edge")
    return n, edges, (weights if any(present) else None)


def read_edgelist(path: str | os.PathLike):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_edgelist(text, str(path))


def format_edgelist(n: int, edges: Sequence[Sequence[int]], weights: Sequence[float] | None = None) -> str:
    lines = [str(n)]
    for k, (u, v) in enumerate(edges):
        lines.append(f"{u} {v}" if weights is None else f"{u} {v} {weights[k]!r}")
    return "\n".join(lines) + "\n"


# -- JSON records -----------------------------------------------------------------


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def group_record(grp: PermutationGroup) -> dict:
    return {
        "degree": grp.degree,
        "order": str(grp.order),
        "log2_order": grp.log2_order(),
        "base": list(grp.base),
        "generators": [{"cycles": g.cycle_notation(), "images": list(g.images)} for g in grp.generators],
    }


def group_from_record(rec: dict) -> PermutationGroup:
    gens = [Permutation(tuple(g["images"])) for g in rec["generators"]]
    grp = PermutationGroup(rec["degree"], gens, rec["base"])
    if str(grp.order) != rec["order"]:
        raise InputError("group record order does not match its generators and base")
    return grp


def barcode_records(bc: Barcode) -> list[dict]:
    ths = bc.thresholds
    out = []
    for b in bc:
        out.append({
            "birth_index": b.birth,
            "death_index": "inf" if b.death is None else b.death,
            "birth_threshold": ths[b.birth] if ths else None,
            "death_threshold": None if (b.death is None or not ths) else ths[b.death],
            "multiplicity": b.multiplicity,
        })
    return out


def barcode_from_records(recs: list[dict], thresholds: Sequence[float] = ()) -> Barcode:
    bars = tuple(PInterval(r["birth_index"], None if r["death_index"] == "inf" else r["death_index"],
                           r["multiplicity"]) for r in recs)
    return Barcode(bars, tuple(thresholds))


def rank_table_records(rt: RankTable) -> list[dict]:
    return [{"i": i, "j": j, "rank": str(rt(i, j))} for i, j in rt.pairs()]


def rank_table_from_records(recs: list[dict], thresholds: Sequence[float] = ()) -> RankTable:
    values = {(r["i"], r["j"]): int(r["rank"]) for r in recs}
    size = 1 + max((j for _, j in values), default=-1)
    return RankTable(size, values, tuple(thresholds))


# -- delimited curves -----------------------------------------------------------------

CURVE_COLUMNS = ("eps_start", "eps_end", "value", "defined")


def format_curve(c: StepCurve, header: str = "") -> str:
    lines = [header.rstrip("\n")] if header else []
    lines.append("\t".join(CURVE_COLUMNS))
    for a, b, v in c.intervals():
        lines.append(f"{a!r}\t{b!r}\t{'nan' if v is None else repr(v)}\t{int(v is not None)}")
    return "\n".join(lines) + "\n"


def parse_curve(text: str, source: str = "<curve>") -> StepCurve:
    rows = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not rows or tuple(rows[0].split("\t")) != CURVE_COLUMNS:
        raise InputError(f"{source}: missing curve header {CURVE_COLUMNS}")
    bps, vals, end = [], [], None
    for ln in rows[1:]:
        a, b, v, d = ln.split("\t")
        bps.append(float(a))
        vals.append(float(v) if d == "1" else None)
        end = float(b)
    if end is None:
        raise InputError(f"{source}: curve has no rows")
    return StepCurve(tuple(bps), tuple(vals), end)
