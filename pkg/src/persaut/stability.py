"""Fullerene stability study: the plateau length feature versus heat of formation."""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

from .config import RunConfig
from .errors import FeatureError, InputError, NumericError, ResourceLimitError
from .io import dumps, read_xyz
from .symcurve import degree_curve_from_steps, effective_length, evaluate_steps, order_curve_from_steps


@dataclass(frozen=True)
class MoleculeRecord:
    name: str
    n: int
    path: str | None = None
    energy: float | None = None   # heat of formation, eV/atom

    def __post_init__(self):
        if self.n < 1:
            raise InputError(f"{self.name}: atom count must be positive")
        if self.energy is not None and not math.isfinite(self.energy):
            raise InputError(f"{self.name}: energy must be finite")


# heats of formation (eV/atom) of the twelve small fullerenes in the study
FULLERENE_ENERGIES = tuple(MoleculeRecord(f"C{n}", n, None, e) for n, e in [
    (20, 1.180), (24, 1.050), (26, 0.989), (28, 0.912), (30, 0.850), (32, 0.781),
    (36, 0.706), (40, 0.641), (44, 0.589), (50, 0.509), (52, 0.502), (60, 0.401),
])


def data_dir() -> Path:
    return Path(str(resources.files("persaut") / "data" / "fullerenes"))


def bundled_manifest() -> Path:
    return data_dir() / "manifest.tsv"


def bundled_geometry(name: str) -> Path:
    path = data_dir() / f"{name}.xyz"
    if not path.exists():
        raise InputError(f"no bundled geometry named {name}")
    return path


def parse_manifest(text: str, base: Path | None = None, source: str = "<manifest>") -> list[MoleculeRecord]:
    """Rows of ``name  xyz-path  [energy]``; ``-`` or a missing column means no energy.

    Relative paths are taken from ``base``.
    """
    out = []
    for k, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise InputError(f"{source}:{k}: expected 'name path [energy]'")
        name, p = parts[0], parts[1]
        energy = None
        if len(parts) == 3 and parts[2] != "-":
            try:
                energy = float(parts[2])
            except ValueError:
                raise InputError(f"{source}:{k}: energy is not a number") from None
        path = Path(p)
        if base is not None and not path.is_absolute():
            path = base / path
        digits = "".join(ch for ch in name if ch.isdigit())
        out.append(MoleculeRecord(name, int(digits) if digits else 1, str(path), energy))
    return out


def load_manifest(path: str | Path | None = None) -> list[MoleculeRecord]:
    path = Path(path) if path is not None else bundled_manifest()
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read manifest {path}: {exc.strerror}") from None
    return parse_manifest(text, path.parent, str(path))


def stability_ratio(ell: float, n: int) -> float:
    if n < 1 or not ell > 0:
        raise InputError("need n >= 1 and a positive length")
    return ell / n


def _centered(xs: Sequence[float], side: str):
    if len(xs) < 2:
        raise InputError("need at least two values")
    mean = math.fsum(xs) / len(xs)
    dev = [x - mean for x in xs]
    ss = math.fsum(d * d for d in dev)
    if ss == 0:
        raise NumericError(f"{side} has zero variance", side=side)
    return mean, dev, ss


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    if len(xs) != len(ys):
        raise InputError("xs and ys differ in length")
    _, dx, sx = _centered(xs, "xs")
    _, dy, sy = _centered(ys, "ys")
    c = math.fsum(a * b for a, b in zip(dx, dy)) / math.sqrt(sx * sy)
    return max(-1.0, min(1.0, c))


def least_squares(xs: Sequence[float], ys: Sequence[float]) -> tuple[float, float]:
    """(slope, intercept) of the ordinary least-squares line through the points."""
    if len(xs) != len(ys):
        raise InputError("xs and ys differ in length")
    mx, dx, sx = _centered(xs, "xs")
    my, dy, _ = _centered(ys, "ys")
    slope = math.fsum(a * b for a, b in zip(dx, dy)) / sx
    return slope, my - slope * mx


@dataclass(frozen=True)
class MoleculeResult:
    name: str
    n: int
    energy: float | None
    ell: float
    ratio: float
    sup_order: float
    sup_degree: float
    steps: int


@dataclass(frozen=True)
class StabilityReport:
    results: tuple[MoleculeResult, ...]
    correlation: float
    slope: float
    intercept: float
    failures: tuple[tuple[str, str], ...] = ()
    notes: tuple[str, ...] = ()
    config: dict = field(default_factory=dict, hash=False)
    config_digest: str = ""

    def to_text(self) -> str:
        lines = [f"# persaut stability report  config-sha256 {self.config_digest}"]
        lines.append("name\tn\tell\tR\tE")
        for r in self.results:
            e = "-" if r.energy is None else f"{r.energy:.3f}"
            lines.append(f"{r.name}\t{r.n}\t{r.ell:.6f}\t{r.ratio:.6f}\t{e}")
        lines.append(f"molecules used: {len(self.results)}")
        lines.append(f"correlation C(R, E) = {self.correlation:.6f}")
        lines.append(f"least squares E = {self.slope:.6f} * R + {self.intercept:.6f}")
        for name, msg in self.failures:
            lines.append(f"failed {name}: {msg}")
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines) + "\n"

    def to_record(self) -> dict:
        return {
            "results": [asdict(r) for r in self.results],
            "correlation": self.correlation,
            "slope": self.slope,
            "intercept": self.intercept,
            "count": len(self.results),
            "failures": [{"name": n, "error": m} for n, m in self.failures],
            "notes": list(self.notes),
            "config": self.config,
            "config_sha256": self.config_digest,
        }

    def to_json(self) -> str:
        return dumps(self.to_record())

    @classmethod
    def from_record(cls, rec: dict) -> "StabilityReport":
        return cls(tuple(MoleculeResult(**r) for r in rec["results"]), rec["correlation"], rec["slope"],
                   rec["intercept"], tuple((f["name"], f["error"]) for f in rec["failures"]),
                   tuple(rec["notes"]), rec["config"], rec["config_sha256"])


def analyse_molecule(mol: MoleculeRecord, config: RunConfig) -> MoleculeResult:
    """Curves, plateau features and the length feature for one molecule."""
    cloud = read_xyz(mol.path)
    if len(cloud) != mol.n:
        raise InputError(f"{mol.name}: expected {mol.n} atoms, file has {len(cloud)}")
    steps = evaluate_steps(cloud, config.eps_max, config.enum_cap, config.node_cap, config.tol)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        order = order_curve_from_steps(steps, config.eps_max)
        degree = degree_curve_from_steps(steps, config.eps_max)
    try:
        so = effective_length(order).sup
        sd = effective_length(degree).sup
    except FeatureError as exc:
        raise FeatureError(f"{mol.name}: {exc}") from None
    ell = (so + sd) / 2
    return MoleculeResult(mol.name, mol.n, mol.energy, ell, stability_ratio(ell, mol.n), so, sd, len(steps))


def _safe_analyse(args):
    mol, config = args
    try:
        return analyse_molecule(mol, config), None
    except (InputError, FeatureError, ResourceLimitError, NumericError) as exc:
        return None, str(exc)


def run_study(molecules: Sequence[MoleculeRecord], config: RunConfig | None = None) -> StabilityReport:
    """Analyse every molecule, then correlate R = ell / n with the heat of formation.

    Molecules without an energy are skipped with a warning; analysis failures
    are collected in the report. Needs at least two successes.
    """
    config = config or RunConfig()
    notes = []
    usable = []
    for mol in molecules:
        if mol.energy is None:
            msg = f"{mol.name} has no heat of formation and is excluded"
            warnings.warn(msg, stacklevel=2)
            notes.append(msg)
        elif mol.path is None:
            raise InputError(f"{mol.name} has no coordinate file")
        else:
            usable.append(mol)
    jobs = [(m, config) for m in usable]
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as ex:
            outcomes = list(ex.map(_safe_analyse, jobs))
    else:
        outcomes = [_safe_analyse(j) for j in jobs]
    results, failures = [], []
    for mol, (res, err) in zip(usable, outcomes):
        if res is None:
            failures.append((mol.name, err))
            warnings.warn(f"{mol.name} failed: {err}", stacklevel=2)
        else:
            results.append(res)
    results.sort(key=lambda r: (r.n, r.name))
    failures.sort()
    if len(results) < 2:
        raise InputError(f"need at least two analysed molecules with energies, have {len(results)}"
                         + "".join(f"; {n}: {m}" for n, m in failures))
    rs = [r.ratio for r in results]
    es = [r.energy for r in results]
    c = pearson(rs, es)
    slope, intercept = least_squares(rs, es)
    return StabilityReport(tuple(results), c, slope, intercept, tuple(failures), tuple(notes),
                           config.numeric(), config.digest())
