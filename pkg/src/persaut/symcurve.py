"""Symmetry order and degree curves over the proximity-graph filtration.

Both curves are exact step functions: the proximity graph only changes at
critical distances, so each curve is evaluated once per step and held
constant until the next one. Degree-curve values are ``None`` where the
symmetry degree is zero (only isolated points) or could not be enumerated.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .autgroup import DEFAULT_ENUM_CAP, automorphism_group, symmetry_degree
from .errors import CapExceeded, FeatureError, InputError, ResourceLimitError
from .graph import DEFAULT_TOL, Graph, PointCloud
from .persist import build_filtration
from .search import DEFAULT_NODE_CAP

DEFAULT_EPS_MAX = 3.0
PLATEAU_REL_TOL = 1e-12


@dataclass(frozen=True)
class StepCurve:
    """Piecewise-constant function on ``[breakpoints[0], end)``.

    ``values[k]`` holds on ``[breakpoints[k], breakpoints[k + 1])`` (the last
    interval closes at ``end``); ``None`` marks an undefined interval.
    """

    breakpoints: tuple[float, ...]
    values: tuple[float | None, ...]
    end: float

    def __post_init__(self):
        bps = tuple(float(b) for b in self.breakpoints)
        vals = tuple(None if v is None else float(v) for v in self.values)
        if not bps or len(bps) != len(vals):
            raise InputError("a step curve needs one value per breakpoint")
        if any(not a < b for a, b in zip(bps, bps[1:])) or not bps[-1] < self.end:
            raise InputError("breakpoints must increase strictly and stay below the end")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "end", float(self.end))

    def intervals(self) -> list[tuple[float, float, float | None]]:
        ends = self.breakpoints[1:] + (self.end,)
        return list(zip(self.breakpoints, ends, self.values))

    def __call__(self, eps: float) -> float | None:
        if not self.breakpoints[0] <= eps < self.end:
            raise InputError(f"{eps} outside the curve's domain")
        k = 0
        while k + 1 < len(self.breakpoints) and self.breakpoints[k + 1] <= eps:
            k += 1
        return self.values[k]

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class PlateauFeature:
    plateau_start: float
    plateau_end: float
    value: float
    region_start: float
    region_end: float
    area: float
    length: float

    @property
    def sup(self) -> float:
        return self.region_start + self.length


@dataclass(frozen=True)
class StepValues:
    """Group data at one filtration step; both curves are built from these."""

    threshold: float
    log2_order: float | None
    symmetry_degree: int | CapExceeded | None
    error: str | None = None


def _evaluate_step(args) -> StepValues:
    t, g, cap, node_cap, need_degree, keep_going = args
    try:
        lo = automorphism_group(g, node_cap).log2_order()
        gamma = symmetry_degree(g, cap, node_cap) if need_degree else None
    except ResourceLimitError as exc:
        msg = f"{exc} (at eps = {t!r})"
        if keep_going:
            return StepValues(t, None, None, msg)
        raise ResourceLimitError(msg, cap=exc.cap, where=t) from None
    return StepValues(t, lo, gamma)


def _steps(cloud: PointCloud, eps_max: float, tol: float) -> list[tuple[float, Graph]]:
    filt = build_filtration(cloud, eps_max, tol)
    return [(t, g) for t, g in zip(filt.thresholds, filt.graphs) if t < eps_max]


def evaluate_steps(cloud: PointCloud, eps_max: float = DEFAULT_EPS_MAX, cap: int = DEFAULT_ENUM_CAP,
                   node_cap: int = DEFAULT_NODE_CAP, tol: float = DEFAULT_TOL,
                   need_degree: bool = True, workers: int | None = None,
                   keep_going: bool = False) -> list[StepValues]:
    """Group order and symmetry degree at every step below ``eps_max``.

    With ``workers > 1`` the steps are spread over processes; results are
    always returned in threshold order. With ``keep_going`` a step that hits
    a search cap is recorded with its error and no values instead of raising.
    """
    if not eps_max > 0:
        raise InputError("eps_max must be positive")
    jobs = [(t, g, cap, node_cap, need_degree, keep_going) for t, g in _steps(cloud, eps_max, tol)]
    if workers and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(_evaluate_step, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return [_evaluate_step(j) for j in jobs]


def order_curve_from_steps(steps: Sequence[StepValues], eps_max: float) -> StepCurve:
    return StepCurve(tuple(s.threshold for s in steps), tuple(s.log2_order for s in steps), eps_max)


def degree_curve_from_steps(steps: Sequence[StepValues], eps_max: float) -> StepCurve:
    vals = []
    for s in steps:
        gamma = s.symmetry_degree
        if gamma is None:
            vals.append(None)
        elif isinstance(gamma, CapExceeded):
            warnings.warn(f"symmetry degree at eps = {s.threshold!r} needs more than {gamma.cap} "
                          f"elements (group order {gamma.order}); marked undefined", stacklevel=2)
            vals.append(None)
        elif gamma == 0:
            vals.append(None)
        else:
            vals.append(math.log2(gamma))
    return StepCurve(tuple(s.threshold for s in steps), tuple(vals), eps_max)


def symmetry_order_curve(cloud: PointCloud, eps_max: float = DEFAULT_EPS_MAX,
                         node_cap: int = DEFAULT_NODE_CAP, tol: float = DEFAULT_TOL,
                         workers: int | None = None) -> StepCurve:
    """log2 |Aut| of the proximity graph as a function of the scale."""
    steps = evaluate_steps(cloud, eps_max, 1, node_cap, tol, need_degree=False, workers=workers)
    return order_curve_from_steps(steps, eps_max)


def symmetry_degree_curve(cloud: PointCloud, eps_max: float = DEFAULT_EPS_MAX,
                          cap: int = DEFAULT_ENUM_CAP, node_cap: int = DEFAULT_NODE_CAP,
                          tol: float = DEFAULT_TOL, workers: int | None = None) -> StepCurve:
    """log2 of the symmetry degree of the proximity graph; undefined where it is 0."""
    steps = evaluate_steps(cloud, eps_max, cap, node_cap, tol, workers=workers)
    return degree_curve_from_steps(steps, eps_max)


def _positive(v) -> bool:
    return v is not None and v > 0


def _runs(c: StepCurve) -> list[tuple[int, int]]:
    """Maximal index ranges [a, b) of equal, defined, positive values."""
    runs = []
    vals = c.values
    k = 0
    while k < len(vals):
        if not _positive(vals[k]):
            k += 1
            continue
        e = k + 1
        while e < len(vals) and _positive(vals[e]) and math.isclose(vals[e], vals[k], rel_tol=PLATEAU_REL_TOL):
            e += 1
        runs.append((k, e))
        k = e
    return runs


def _edge(c: StepCurve, k: int) -> float:
    return c.breakpoints[k] if k < len(c.breakpoints) else c.end


def longest_plateau(c: StepCurve) -> tuple[float, float, float]:
    """(start, end, value) of the longest constant positive run; earliest wins ties."""
    best = None
    for a, b in _runs(c):
        length = _edge(c, b) - _edge(c, a)
        if best is None or length > best[0]:
            best = (length, a, b)
    if best is None:
        raise FeatureError("curve has no defined positive interval")
    _, a, b = best
    return _edge(c, a), _edge(c, b), c.values[a]


def effective_length(c: StepCurve) -> PlateauFeature:
    """Integral of the curve over the positive region around the plateau, divided by the plateau value."""
    start, end, v = longest_plateau(c)
    a = c.breakpoints.index(start)
    b = a
    while b < len(c.values) and _edge(c, b) < end:
        b += 1
    while a > 0 and _positive(c.values[a - 1]):
        a -= 1
    while b < len(c.values) and _positive(c.values[b]):
        b += 1
    area = math.fsum(c.values[k] * (_edge(c, k + 1) - _edge(c, k)) for k in range(a, b))
    return PlateauFeature(start, end, v, _edge(c, a), _edge(c, b), area, area / v)


def ell_feature(order_curve: StepCurve, degree_curve: StepCurve, name: str | None = None) -> float:
    """Mean of the two plateau sups."""
    try:
        return (effective_length(order_curve).sup + effective_length(degree_curve).sup) / 2
    except FeatureError as exc:
        if name is None:
            raise
        raise FeatureError(f"{name}: {exc}") from None
