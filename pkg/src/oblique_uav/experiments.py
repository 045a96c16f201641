"""Sweeps over SNR, resolution requirement and BS-GT distance, plus CSV output."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import astuple, dataclass, fields
from typing import Iterable

import numpy as np

from .baselines import (
    BaselineResult,
    Scheme,
    exhaustive_search_2d,
    exhaustive_search_3d,
    segment_offset,
    vertical_baseline,
)
from .config import RunConfig
from .errors import ConfigError, Infeasible, ValidationFailed
from .geometry import (
    CameraConstants,
    GroundTarget,
    Placement,
    coverage_area_rz,
    edge_distances_rz,
    footprint_oracle,
    resolution_rz,
)
from .problem import Scenario
from .solver import SolveResult, SolverConfig, SolveStatus, bcd_solve

BCD = "proposed-bcd"
SCHEME_ORDER = (BCD, Scheme.ES2D.value, Scheme.VERTICAL.value)


@dataclass(frozen=True)
class SweepRow:
    scheme: str
    gamma0: float
    i_min: float
    d_gb: float
    eta: float
    x: float
    y: float
    z: float
    resolution: float
    rate_bps: float
    delay_s: float
    iterations: int
    status: str


CSV_HEADER = [f.name for f in fields(SweepRow)]


def _eta_of(placement: Placement, s: Scenario) -> float:
    d = s.d_gb
    if d == 0:
        return 0.0
    return math.hypot(placement.q[0] - s.gt.w_g[0], placement.q[1] - s.gt.w_g[1]) / d


def _empty_row(scheme: str, s: Scenario, status: str) -> SweepRow:
    nan = math.nan
    return SweepRow(scheme, s.link.gamma0, s.i_min, s.d_gb, nan, nan, nan, nan, nan, nan, nan, 0, status)


def row_from_solve(res: SolveResult, s: Scenario) -> SweepRow:
    if res.status is SolveStatus.INFEASIBLE:
        return _empty_row(BCD, s, "infeasible")
    p = res.placement
    status = "ok" if res.status is SolveStatus.CONVERGED else res.status.value
    return SweepRow(
        BCD, s.link.gamma0, s.i_min, s.d_gb, res.point.eta, p.q[0], p.q[1], p.z,
        res.resolution, res.rate, res.delay, res.iterations, status,
    )


def row_from_baseline(res: BaselineResult, s: Scenario) -> SweepRow:
    p = res.placement
    # iterations column carries the number of grid nodes for the searches
    iterations = 0 if res.scheme is Scheme.VERTICAL else res.evaluations
    return SweepRow(
        res.scheme.value, s.link.gamma0, s.i_min, s.d_gb, _eta_of(p, s), p.q[0], p.q[1], p.z,
        res.resolution, res.rate, res.delay, iterations, "ok",
    )


def scenario_rows(s: Scenario, solver: SolverConfig, es_step: float) -> list[SweepRow]:
    """One row per scheme for a single scenario, in ``SCHEME_ORDER``."""
    rows = [row_from_solve(bcd_solve(s, solver), s)]
    for scheme, run in ((Scheme.ES2D, lambda: exhaustive_search_2d(s, es_step)),
                        (Scheme.VERTICAL, lambda: vertical_baseline(s))):
        try:
            rows.append(row_from_baseline(run(), s))
        except Infeasible:
            rows.append(_empty_row(scheme.value, s, "infeasible"))
    return rows


def _sort_key(row: SweepRow):
    return (row.gamma0, row.i_min, row.d_gb, SCHEME_ORDER.index(row.scheme))


def sweep_resolution(cfg: RunConfig) -> list[SweepRow]:
    if not cfg.gamma0_sweep or not cfg.i_min_sweep:
        raise ConfigError("sweep", "gamma0 and i_min lists must be non-empty")
    rows = []
    for gamma0 in cfg.gamma0_sweep:
        for i_min in cfg.i_min_sweep:
            s = cfg.scenario.with_gamma0(gamma0).with_i_min(i_min)
            rows.extend(scenario_rows(s, cfg.solver, cfg.es_step))
    return sorted(rows, key=_sort_key)


def sweep_distance(cfg: RunConfig) -> list[SweepRow]:
    if not cfg.d_gb_sweep or not cfg.distance_i_min:
        raise ConfigError("sweep", "d_gb and distance_i_min lists must be non-empty")
    rows = []
    for i_min in cfg.distance_i_min:
        for d_gb in cfg.d_gb_sweep:
            s = cfg.scenario.with_i_min(i_min).with_distance(d_gb)
            rows.extend(scenario_rows(s, cfg.solver, cfg.es_step))
    return sorted(rows, key=_sort_key)


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return f"{float(value):.9g}"


def rows_to_csv(rows: Iterable[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([_fmt(v) for v in astuple(row)])
    return buf.getvalue()


def trace_to_csv(trace) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["iteration", "eta", "z", "objective"])
    for it, eta, z, obj in trace:
        writer.writerow([str(it), _fmt(eta), _fmt(z), _fmt(obj)])
    return buf.getvalue()


# -- geometry validation ---------------------------------------------------------

ORACLE_TOL = 1e-6
IDENTITY_TOL = 1e-9


def random_poses(gt: GroundTarget, consts: CameraConstants, samples: int, seed: int):
    """Strictly capturable placements around ``gt`` with random bearing."""
    rng = np.random.default_rng(seed)
    z = rng.uniform(5.0, 400.0, samples)
    rho = rng.uniform(0.0, 0.98, samples) * consts.b1 * z
    phi = rng.uniform(0.0, 2.0 * math.pi, samples)
    return [
        Placement(q=(gt.w_g[0] + r * math.cos(p), gt.w_g[1] + r * math.sin(p)), z=zz)
        for r, zz, p in zip(rho, z, phi)
    ]


def validate_geometry(
    s: Scenario,
    samples: int,
    seed: int = 0,
    es3d_step: float = 5.0,
    consts: CameraConstants | None = None,
) -> dict[str, float]:
    """Check closed forms against corner projection and the 3D optimum against the segment.

    ``consts`` overrides the camera constants used by the closed forms (the
    oracle always works from the raw intrinsics).  Raises ValidationFailed with
    the report attached when any check exceeds its threshold.
    """
    if samples < 1:
        raise ConfigError("samples", "must be at least 1")
    c = consts or s.consts
    worst = {"area": 0.0, "d1": 0.0, "d2": 0.0, "identity": 0.0}
    disc = math.pi * s.gt.r0**2
    for p in random_poses(s.gt, s.consts, samples, seed):
        fp = footprint_oracle(p, s.gt, s.cam)
        rho = math.hypot(p.q[0] - s.gt.w_g[0], p.q[1] - s.gt.w_g[1])
        area = float(coverage_area_rz(rho, p.z, s.cam))
        d1, d2 = edge_distances_rz(rho, p.z, c)
        res = float(resolution_rz(rho, p.z, c))
        worst["area"] = max(worst["area"], abs(area - fp.area) / fp.area)
        worst["d1"] = max(worst["d1"], abs(d1 - fp.d1) / fp.d1)
        worst["d2"] = max(worst["d2"], abs(d2 - fp.d2) / fp.d2)
        worst["identity"] = max(worst["identity"], abs(res * area - disc) / disc)

    es3 = exhaustive_search_3d(s, es3d_step)
    offset = segment_offset(es3.placement.q, s)
    report = dict(worst)
    report["segment_offset_m"] = offset
    report["segment_limit_m"] = es3d_step * math.sqrt(2.0)

    failed = [k for k in ("area", "d1", "d2") if worst[k] >= ORACLE_TOL]
    if worst["identity"] >= IDENTITY_TOL:
        failed.append("identity")
    if offset > report["segment_limit_m"]:
        failed.append("segment")
    if failed:
        err = ValidationFailed(f"checks failed: {', '.join(failed)}")
        err.report = report
        raise err
    return report
