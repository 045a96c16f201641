"""Block coordinate descent over (eta, z) with successive convex approximation.

Each outer iteration first pushes ``eta`` towards the base station with ``z``
fixed, then moves ``z`` towards the base-station altitude with ``eta`` fixed.
In both blocks the two non-convex constraints are replaced by concave
under-estimators built at the current point (first-order expansions of the
convex pieces), so every subproblem is one-dimensional over an interval that
contains the current point.  The interval endpoints are located by bisection.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .channel import transmission_time
from .errors import SubproblemInfeasible
from .geometry import Placement, resolution
from .problem import (
    ReducedPoint,
    Scenario,
    containment_rhs,
    embed,
    feasible,
    reduced_objective,
)


class SolveStatus(str, enum.Enum):
    CONVERGED = "converged"
    MAX_ITERS = "max_iters"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class SolverConfig:
    precision: float = 1e-4
    max_iters: int = 100
    bisect_tol: float = 1e-9
    feasibility_tol: float = 1e-10
    # coarse reduced grid used to pick a second starting point
    seed_eta_points: int = 21
    seed_z_points: int = 40

    def __post_init__(self):
        if not self.precision > 0:
            raise ValueError("precision must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if not self.bisect_tol > 0:
            raise ValueError("bisect_tol must be positive")
        if self.feasibility_tol < 0:
            raise ValueError("feasibility_tol must be non-negative")


@dataclass
class SolveResult:
    point: ReducedPoint | None
    placement: Placement | None
    resolution: float
    rate: float
    delay: float
    status: SolveStatus
    trace: list[tuple[int, float, float, float]] = field(default_factory=list)
    delay_achieved: float = math.nan

    @property
    def iterations(self) -> int:
        return max(len(self.trace) - 1, 0)


# -- surrogate constraints ------------------------------------------------------

def surrogate_resolution_eta(eta: float, eta_hat: float, z: float, s: Scenario) -> float:
    d = s.d_gb
    u = z * z - (eta * d) ** 2 / s.consts.b1**2
    if u <= 0.0:
        return -math.inf
    base = z * z + (eta_hat * d) ** 2
    return (
        2.0 * math.log(u)
        - 1.5 * math.log(base)
        - 1.5 * d * d / base * (eta * eta - eta_hat * eta_hat)
        - 3.0 * math.log(z)
        - s.log_rhs
    )


def surrogate_containment_eta(eta: float, eta_hat: float, z: float, s: Scenario) -> float:
    d2 = s.d_gb**2
    lhs = z * z + (eta_hat * s.d_gb) ** 2 + 2.0 * eta_hat * (eta - eta_hat) * d2
    return lhs - containment_rhs(eta, z, s)


def surrogate_resolution_z(z: float, z_hat: float, eta: float, s: Scenario) -> float:
    rho2 = (eta * s.d_gb) ** 2
    u = z * z - rho2 / s.consts.b1**2
    if u <= 0.0 or z <= 0.0:
        return -math.inf
    base = z_hat * z_hat + rho2
    return (
        2.0 * math.log(u)
        - 1.5 * math.log(base)
        - 1.5 / base * (z * z - z_hat * z_hat)
        - 3.0 * math.log(z_hat)
        - 3.0 / z_hat * (z - z_hat)
        - s.log_rhs
    )


def surrogate_containment_z(z: float, z_hat: float, eta: float, s: Scenario) -> float:
    lhs = z_hat * z_hat + 2.0 * z_hat * (z - z_hat) + (eta * s.d_gb) ** 2
    return lhs - containment_rhs(eta, z, s)


# -- bisection on interval endpoints -------------------------------------------

def _upper_end(pred, lo: float, hi: float, tol: float) -> float:
    """Largest x in [lo, hi] with pred(x), given pred(lo) and an interval-shaped pred."""
    if pred(hi):
        return hi
    while hi - lo > tol * max(1.0, abs(lo), abs(hi)):
        mid = 0.5 * (lo + hi)
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return lo


def _lower_end(pred, lo: float, hi: float, tol: float) -> float:
    """Smallest x in [lo, hi] with pred(x), given pred(hi)."""
    if pred(lo):
        return lo
    while hi - lo > tol * max(1.0, abs(lo), abs(hi)):
        mid = 0.5 * (lo + hi)
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


def solve_eta_subproblem(eta_hat: float, z: float, s: Scenario, cfg: SolverConfig) -> float:
    """Largest eta on the surrogate-feasible interval through ``eta_hat``."""
    d = s.d_gb
    if d == 0.0:
        return eta_hat
    tol = cfg.feasibility_tol
    b1 = s.consts.b1

    def ok(eta: float, slack: float = 0.0) -> bool:
        return (
            0.0 <= eta <= 1.0
            and b1 * z - eta * d >= 0.0
            and surrogate_resolution_eta(eta, eta_hat, z, s) >= -slack
            and surrogate_containment_eta(eta, eta_hat, z, s) >= -slack
        )

    # the expansion point may sit within tolerance; new points must be exact
    if not ok(eta_hat, tol):
        raise SubproblemInfeasible(f"eta_hat={eta_hat!r} infeasible at z={z!r}")
    return _upper_end(ok, eta_hat, min(1.0, b1 * z / d), cfg.bisect_tol)


def z_interval(eta: float, z_hat: float, s: Scenario, cfg: SolverConfig) -> tuple[float, float]:
    """Surrogate-feasible altitude interval through ``z_hat`` for fixed ``eta``."""
    tol = cfg.feasibility_tol
    b1 = s.consts.b1
    rho = eta * s.d_gb

    def ok(z: float, slack: float = 0.0) -> bool:
        return (
            z > 0.0
            and b1 * z - rho >= 0.0
            and surrogate_resolution_z(z, z_hat, eta, s) >= -slack
            and surrogate_containment_z(z, z_hat, eta, s) >= -slack
        )

    if not ok(z_hat, tol):
        raise SubproblemInfeasible(f"z_hat={z_hat!r} infeasible at eta={eta!r}")

    top = z_hat
    for _ in range(200):
        top = 2.0 * top + 1.0
        if not ok(top):
            break
    else:
        top = math.inf
    z_hi = top if math.isinf(top) else _upper_end(ok, z_hat, top, cfg.bisect_tol)
    z_lo = _lower_end(ok, rho / b1, z_hat, cfg.bisect_tol)
    return z_lo, z_hi


def solve_z_subproblem(eta: float, z_hat: float, s: Scenario, cfg: SolverConfig) -> float:
    """Altitude closest to the base station within the surrogate-feasible interval."""
    z_lo, z_hi = z_interval(eta, z_hat, s, cfg)
    return min(max(s.bs.z_b, z_lo), z_hi)


# -- outer loop -----------------------------------------------------------------

def vertical_start(s: Scenario) -> ReducedPoint:
    return ReducedPoint(0.0, max(s.vertical_altitude(), (1.0 + 1e-6) * s.vertical_floor()))


def grid_start(s: Scenario, cfg: SolverConfig) -> ReducedPoint | None:
    """Best-objective exactly feasible node of a coarse (eta, z) grid, if any."""
    z_max = 1.5 * max(s.vertical_altitude(), s.gt.r0 * s.consts.b1)
    best, best_obj = None, math.inf
    for eta in np.linspace(0.0, 1.0, cfg.seed_eta_points):
        for z in np.linspace(z_max / cfg.seed_z_points, z_max, cfg.seed_z_points):
            r = ReducedPoint(float(eta), float(z))
            if not feasible(r, s, tol=0.0):
                continue
            obj = reduced_objective(r, s)
            if obj < best_obj:
                best, best_obj = r, obj
    return best


def _descend(start: ReducedPoint, s: Scenario, cfg: SolverConfig):
    eta, z = start.eta, start.z
    obj = reduced_objective(start, s)
    trace = [(0, eta, z, obj)]
    for it in range(1, cfg.max_iters + 1):
        eta = solve_eta_subproblem(eta, z, s, cfg)
        z = solve_z_subproblem(eta, z, s, cfg)
        new_obj = reduced_objective(ReducedPoint(eta, z), s)
        trace.append((it, eta, z, new_obj))
        if abs(obj - new_obj) < cfg.precision:
            return trace, SolveStatus.CONVERGED
        obj = new_obj
    return trace, SolveStatus.MAX_ITERS


def _degenerate(s: Scenario, start: ReducedPoint):
    # target below the base station: eta has no direction, the z-interval is exact
    z_lo, z_hi = s.vertical_floor(), s.vertical_altitude()
    z = min(max(s.bs.z_b, z_lo), z_hi)
    end = ReducedPoint(0.0, z)
    trace = [(0, 0.0, start.z, reduced_objective(start, s)), (1, 0.0, z, reduced_objective(end, s))]
    return trace, SolveStatus.CONVERGED


def finish(point: ReducedPoint, s: Scenario) -> tuple[Placement, float, float, float, float]:
    """Placement, achieved resolution, rate and both delays for a reduced point."""
    placement = embed(point, s)
    res = resolution(placement, s.gt, s.consts)
    sq = reduced_objective(point, s)
    if sq == 0.0:
        return placement, res, math.inf, 0.0, 0.0
    rate = s.link.bandwidth * math.log2(1.0 + s.link.gamma0 / sq)
    delay = transmission_time(s.i_min, rate, s.cam, s.alpha)
    delay_achieved = transmission_time(res, rate, s.cam, s.alpha)
    return placement, res, rate, delay, delay_achieved


def bcd_solve(s: Scenario, cfg: SolverConfig | None = None) -> SolveResult:
    cfg = cfg or SolverConfig()
    anchor = vertical_start(s)
    if s.d_gb == 0.0:
        if s.vertical_floor() > s.vertical_altitude():
            return _infeasible()
        trace, status = _degenerate(s, anchor)
    else:
        starts = [anchor] if feasible(anchor, s, tol=cfg.feasibility_tol) else []
        seed = grid_start(s, cfg)
        if seed is not None:
            starts.append(seed)
        if not starts:
            return _infeasible()
        runs = [_descend(p, s, cfg) for p in starts]
        # lowest final objective wins; ties keep the vertical start
        trace, status = min(runs, key=lambda run: run[0][-1][3])

    _, eta, z, _ = trace[-1]
    point = ReducedPoint(eta, z)
    placement, res, rate, delay, delay_achieved = finish(point, s)
    return SolveResult(
        point=point,
        placement=placement,
        resolution=res,
        rate=rate,
        delay=delay,
        status=status,
        trace=trace,
        delay_achieved=delay_achieved,
    )


def _infeasible() -> SolveResult:
    nan = math.nan
    return SolveResult(None, None, nan, nan, nan, SolveStatus.INFEASIBLE, [], nan)
