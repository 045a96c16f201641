"""Acceptance gate: one test per criterion (criterion 6 split into its three claims).

Each test records a verdict that the terminal summary prints as one line per
criterion.
"""

import math
import time

import numpy as np
import pytest

from conftest import BASELINE_YAML, record
from oblique_uav.baselines import (
    exhaustive_search_2d,
    exhaustive_search_3d,
    segment_offset,
    vertical_baseline,
)
from oblique_uav.channel import LinkBudget, achievable_rate
from oblique_uav.cli import main
from oblique_uav.config import load_config
from oblique_uav.errors import Infeasible
from oblique_uav.experiments import random_poses, sweep_distance, sweep_resolution
from oblique_uav.geometry import (
    Placement,
    coverage_area,
    edge_distances,
    footprint_oracle,
    resolution,
    resolution_rz,
)
from oblique_uav.problem import (
    ReducedPoint,
    property1_derivative,
    property1_value,
    residuals,
    resolution_shape,
)
from oblique_uav.solver import (
    SolveStatus,
    bcd_solve,
    surrogate_containment_eta,
    surrogate_containment_z,
    surrogate_resolution_eta,
    surrogate_resolution_z,
)

CFG = load_config(BASELINE_YAML)
BASE = CFG.scenario
GRID = [(g, i) for g in (1e6, 1e7, 1e8) for i in (0.1, 0.2, 0.3)]


def _relerr(a, b):
    return abs(a - b) / abs(b)


def test_criterion1_identity():
    s = BASE
    t0 = time.perf_counter()
    worst = 0.0
    for p in random_poses(s.gt, s.consts, 1000, seed=1):
        prod = resolution(p, s.gt, s.consts) * coverage_area(p, s.gt, s.cam)
        worst = max(worst, _relerr(prod, math.pi * s.gt.r0**2))
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-9 and elapsed < 1.0
    record(1, "identity", ok, f"max rel err {worst:.2e}, {elapsed:.2f} s")
    assert worst < 1e-9
    assert elapsed < 1.0


def test_criterion2_oracle():
    s = BASE
    t0 = time.perf_counter()
    worst = {"area": 0.0, "d1": 0.0, "d2": 0.0}
    for p in random_poses(s.gt, s.consts, 1000, seed=2):
        fp = footprint_oracle(p, s.gt, s.cam)
        d1, d2 = edge_distances(p, s.gt, s.consts)
        worst["area"] = max(worst["area"], _relerr(coverage_area(p, s.gt, s.cam), fp.area))
        worst["d1"] = max(worst["d1"], _relerr(d1, fp.d1))
        worst["d2"] = max(worst["d2"], _relerr(d2, fp.d2))
    elapsed = time.perf_counter() - t0
    ok = max(worst.values()) < 1e-6 and elapsed < 5.0
    record(2, "oracle", ok, ", ".join(f"{k} {v:.1e}" for k, v in worst.items()) + f", {elapsed:.2f} s")
    assert max(worst.values()) < 1e-6
    assert elapsed < 5.0


def test_criterion3_monotonicity():
    c = BASE.consts
    slices_ok = 0
    for z in np.linspace(5.0, 500.0, 100):
        rho = np.linspace(0.0, c.b1 * z, 2001)[:-1]
        vals = resolution_rz(rho, z, c)
        slices_ok += bool(np.all(np.diff(vals) < 0))

    lb = LinkBudget(1e6, 1e7)
    dists = np.linspace(1.0, 2000.0, 2000)
    rates = [achievable_rate(Placement((d, 0.0), BASE.bs.z_b), BASE.bs, lb) for d in dists]
    rate_ok = bool(np.all(np.diff(rates) < 0))

    worst = 0.0
    for z in np.linspace(10.0, 400.0, 20):
        m0, m1, m2 = resolution_shape(z, c)
        x = np.linspace(0.02, 0.98, 49) * math.sqrt(m2)
        h = 1e-5 * math.sqrt(m2)
        fd = (property1_value(x + h, m0, m1, m2) - property1_value(x - h, m0, m1, m2)) / (2 * h)
        exact = property1_derivative(x, m0, m1, m2)
        worst = max(worst, float(np.max(np.abs(fd - exact) / np.abs(exact))))

    ok = slices_ok == 100 and rate_ok and worst < 1e-4
    record(3, "monotonicity", ok, f"{slices_ok}/100 slices, rate {'ok' if rate_ok else 'bad'}, "
           f"derivative rel err {worst:.1e}")
    assert slices_ok == 100
    assert rate_ok
    assert worst < 1e-4


def test_criterion4_optimum_on_segment():
    s = BASE.with_gamma0(1e7).with_i_min(0.2)
    t0 = time.perf_counter()
    es3 = exhaustive_search_3d(s, step=5.0)
    elapsed = time.perf_counter() - t0
    offset = segment_offset(es3.placement.q, s)
    ok = offset <= 7.1 and elapsed < 60.0
    record(4, "3D search", ok, f"offset {offset:.3f} m, {elapsed:.2f} s")
    assert offset <= 7.1
    assert elapsed < 60.0


def test_criterion5_solver_vs_search():
    worst, bcd_time, es_time = 0.0, 0.0, 0.0
    for g, i in GRID:
        s = BASE.with_gamma0(g).with_i_min(i)
        t0 = time.perf_counter()
        res = bcd_solve(s, CFG.solver)
        t1 = time.perf_counter()
        es = exhaustive_search_2d(s, step=1.0)
        t2 = time.perf_counter()
        bcd_time, es_time = max(bcd_time, t1 - t0), max(es_time, t2 - t1)
        worst = max(worst, _relerr(res.delay, es.delay))
    ok = worst <= 0.05 and bcd_time < 1.0 and es_time < 30.0
    record(5, "BCD vs ES", ok, f"max rel gap {worst:.2%}, slowest BCD {bcd_time:.3f} s, slowest ES {es_time:.3f} s")
    assert worst <= 0.05
    assert bcd_time < 1.0
    assert es_time < 30.0


def _delays(rows):
    out = {}
    for r in rows:
        if r.status == "ok":
            out.setdefault((r.gamma0, r.i_min, r.d_gb), {})[r.scheme] = r.delay_s
    return out


@pytest.fixture(scope="module")
def sweeps():
    return _delays(sweep_resolution(CFG)), _delays(sweep_distance(CFG))


def test_criterion6_dominance(sweeps):
    bad, cells = [], 0
    for table in sweeps:
        for key, d in table.items():
            if "proposed-bcd" in d and "conventional" in d:
                cells += 1
                if d["proposed-bcd"] > d["conventional"]:
                    bad.append(key)
    record(6, "dominance", not bad, f"{cells} cells, {len(bad)} violations")
    assert not bad


def _gap_trend(table, group_of, order_of):
    groups = {}
    for key, d in table.items():
        if "proposed-bcd" in d and "conventional" in d:
            groups.setdefault(group_of(key), []).append((order_of(key), d["conventional"] - d["proposed-bcd"]))
    drops = []
    for g, pts in sorted(groups.items()):
        pts.sort()
        for (x0, a), (x1, b) in zip(pts, pts[1:]):
            if b < a:
                drops.append((g, x0, x1, a, b))
    return drops


def test_criterion6_gap_grows_with_distance(sweeps):
    drops = _gap_trend(sweeps[1], group_of=lambda k: k[1], order_of=lambda k: k[2])
    first = drops[0] if drops else None
    detail = f"{len(drops)} decreases" + (
        f", first at i_min={first[0]}: d {first[1]:.0f}->{first[2]:.0f} m gap {first[3]:.3f}->{first[4]:.3f} s"
        if first else ""
    )
    record(6, "gap vs d_gb", not drops, detail)
    assert not drops


def test_criterion6_gap_grows_with_requirement(sweeps):
    drops = _gap_trend(sweeps[0], group_of=lambda k: k[0], order_of=lambda k: k[1])
    record(6, "gap vs i_min", not drops, f"{len(drops)} decreases")
    assert not drops


def test_criterion7_sca_properties():
    s = BASE.with_gamma0(1e7).with_i_min(0.2)
    rng = np.random.default_rng(7)

    def close(a, b):
        return abs(a - b) <= 1e-12 * max(1.0, abs(b))

    tangency = True
    for eta, z in zip(rng.uniform(0, 1, 2000), rng.uniform(5, 400, 2000)):
        ex = residuals(ReducedPoint(eta, z), s)
        tangency &= close(surrogate_containment_eta(eta, eta, z, s), ex.containment)
        tangency &= close(surrogate_containment_z(z, z, eta, s), ex.containment)
        if math.isfinite(ex.resolution_log):
            tangency &= close(surrogate_resolution_eta(eta, eta, z, s), ex.resolution_log)
            tangency &= close(surrogate_resolution_z(z, z, eta, s), ex.resolution_log)

    violations = 0
    n = 10_000
    eta, eta_hat = rng.uniform(0, 1, n), rng.uniform(0, 1, n)
    z, z_hat = rng.uniform(5, 400, n), rng.uniform(5, 400, n)
    for e, eh, zz, zh in zip(eta, eta_hat, z, z_hat):
        ex = residuals(ReducedPoint(e, zz), s)
        scale = 1e-9 * max(1.0, zz * zz)
        violations += surrogate_resolution_eta(e, eh, zz, s) > ex.resolution_log + 1e-9
        violations += surrogate_containment_eta(e, eh, zz, s) > ex.containment + scale
        violations += surrogate_resolution_z(zz, zh, e, s) > ex.resolution_log + 1e-9
        violations += surrogate_containment_z(zz, zh, e, s) > ex.containment + scale

    worst_iterate, monotone, converged, max_iters = math.inf, True, True, 0
    for g, i in GRID:
        sc = BASE.with_gamma0(g).with_i_min(i)
        res = bcd_solve(sc, CFG.solver)
        converged &= res.status is SolveStatus.CONVERGED and res.iterations <= 100
        max_iters = max(max_iters, res.iterations)
        objs = [t[3] for t in res.trace]
        monotone &= all(b <= a for a, b in zip(objs, objs[1:]))
        for _, e, zz, _ in res.trace:
            worst_iterate = min(worst_iterate, residuals(ReducedPoint(e, zz), sc).min())

    ok = tangency and violations == 0 and worst_iterate >= -1e-8 and monotone and converged
    record(7, "SCA/BCD", ok, f"tangency {'ok' if tangency else 'bad'}, {violations} bound violations, "
           f"min iterate residual {worst_iterate:.1e}, monotone {monotone}, max iterations {max_iters}")
    assert tangency
    assert violations == 0
    assert worst_iterate >= -1e-8
    assert monotone
    assert converged


def test_criterion8_determinism(tmp_path):
    same = {}
    for cmd in ("sweep-resolution", "sweep-distance"):
        a, b = tmp_path / f"{cmd}-a.csv", tmp_path / f"{cmd}-b.csv"
        assert main([cmd, "--config", str(BASELINE_YAML), "--out", str(a), "--seed", "0"]) == 0
        assert main([cmd, "--config", str(BASELINE_YAML), "--out", str(b), "--seed", "0"]) == 0
        same[cmd] = a.read_bytes() == b.read_bytes()
    record(8, "determinism", all(same.values()), ", ".join(f"{k} {'identical' if v else 'DIFFERENT'}" for k, v in same.items()))
    assert all(same.values())


def test_criterion9_vertical_baseline():
    worst = 0.0
    for i in np.linspace(0.01, 0.52, 52):
        b = vertical_baseline(BASE.with_i_min(float(i)))
        worst = max(worst, _relerr(b.resolution, float(i)))

    c, r0 = BASE.consts, BASE.gt.r0
    floor = r0 * max(c.b1, c.b2)
    boundary = c.a / floor**2
    mismatches = 0
    for i in list(np.linspace(0.3, 0.9, 121)) + [boundary, boundary * (1 - 1e-12), boundary * (1 + 1e-9)]:
        s = BASE.with_i_min(float(i))
        expect_infeasible = math.sqrt(c.a / s.i_min) < floor
        try:
            vertical_baseline(s)
            raised = False
        except Infeasible:
            raised = True
        mismatches += raised != expect_infeasible
    ok = worst < 1e-9 and mismatches == 0
    record(9, "vertical", ok, f"max rel err {worst:.1e}, {mismatches} infeasibility mismatches")
    assert worst < 1e-9
    assert mismatches == 0
