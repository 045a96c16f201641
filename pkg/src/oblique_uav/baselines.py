"""Reference schemes: hover over the target, or brute-force the placement grid."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import Infeasible
from .geometry import Placement, feasible_rz, resolution
from .problem import Scenario


class Scheme(str, enum.Enum):
    VERTICAL = "conventional"
    ES2D = "proposed-es"
    ES3D = "proposed-es3d"


@dataclass(frozen=True)
class BaselineResult:
    scheme: Scheme
    placement: Placement
    resolution: float
    rate: float
    delay: float
    evaluations: int
    delay_achieved: float = math.nan


def default_z_max(s: Scenario) -> float:
    return 1.5 * max(s.vertical_altitude(), s.gt.r0 * s.consts.b1)


def _delay_from_sq(sq, s: Scenario, res):
    """Delay for squared BS distances; returns (rate, delay, delay at achieved res)."""
    with np.errstate(divide="ignore"):
        rate = s.link.bandwidth * np.log2(1.0 + s.link.gamma0 / sq)
    bits = s.alpha * s.image_bits
    return rate, bits * s.i_min / rate, bits * res / rate


def _result(scheme: Scheme, s: Scenario, placement: Placement, evaluations: int) -> BaselineResult:
    res = resolution(placement, s.gt, s.consts)
    dx = placement.q[0] - s.bs.w_b[0]
    dy = placement.q[1] - s.bs.w_b[1]
    sq = dx * dx + dy * dy + (placement.z - s.bs.z_b) ** 2
    rate, delay, delay_achieved = _delay_from_sq(sq, s, res)
    return BaselineResult(scheme, placement, res, float(rate), float(delay), evaluations, float(delay_achieved))


def vertical_baseline(s: Scenario) -> BaselineResult:
    """Hover over the target at the altitude giving exactly the required resolution."""
    z = s.vertical_altitude()
    if z < s.vertical_floor():
        raise Infeasible(
            f"vertical altitude {z:.4f} m for i_min={s.i_min} is below the containment "
            f"floor {s.vertical_floor():.4f} m"
        )
    return _result(Scheme.VERTICAL, s, Placement(q=s.gt.w_g, z=z), 1)


def _axis(lo: float, hi: float, step: float) -> np.ndarray:
    pts = np.arange(lo, hi + 1e-9 * max(1.0, abs(hi)), step)
    if pts.size == 0 or pts[-1] < hi - 1e-9 * max(1.0, abs(hi)):
        pts = np.append(pts, hi)
    return pts


def exhaustive_search_2d(s: Scenario, step: float = 1.0, z_max: float | None = None) -> BaselineResult:
    """Grid search over the vertical plane through base station and target.

    Horizontal nodes are spaced ``step`` along the segment from the target
    (standoff 0) to the point below the base station; altitudes run over
    ``step, 2*step, ...`` up to ``z_max``.  Ties go to the lowest altitude, then
    the smallest standoff.
    """
    if not step > 0:
        raise ValueError("step must be positive")
    z_max = default_z_max(s) if z_max is None else z_max
    d = s.d_gb
    rho = _axis(0.0, d, step) if d > 0 else np.zeros(1)
    z = np.arange(1, math.floor(z_max / step + 1e-9) + 1) * step
    if z.size == 0:
        raise Infeasible(f"no altitude nodes below z_max={z_max}")
    Z, R = np.meshgrid(z, rho, indexing="ij")

    ok = feasible_rz(R, Z, s.consts, s.gt.r0, s.i_min)
    sq = (d - R) ** 2 + (Z - s.bs.z_b) ** 2
    _, delay, _ = _delay_from_sq(sq, s, 0.0)
    delay = np.where(ok, delay, np.inf)
    k = int(np.argmin(delay))
    if not np.isfinite(delay.flat[k]):
        raise Infeasible("no feasible node on the 2D grid")

    r_best, z_best = float(R.flat[k]), float(Z.flat[k])
    ux, uy = s.bearing
    q = (s.gt.w_g[0] - r_best * ux, s.gt.w_g[1] - r_best * uy)
    return _result(Scheme.ES2D, s, Placement(q=q, z=z_best), int(delay.size))


def exhaustive_search_3d(s: Scenario, step: float = 5.0, z_max: float | None = None) -> BaselineResult:
    """Full (x, y, z) grid search over the BS/GT bounding box padded by ``z_max``."""
    if not step > 0:
        raise ValueError("step must be positive")
    z_max = default_z_max(s) if z_max is None else z_max
    (xb, yb), (xg, yg) = s.bs.w_b, s.gt.w_g
    x = np.arange(min(xb, xg) - z_max, max(xb, xg) + z_max + 1e-9, step)
    y = np.arange(min(yb, yg) - z_max, max(yb, yg) + z_max + 1e-9, step)
    z = np.arange(1, math.floor(z_max / step + 1e-9) + 1) * step
    Z, X, Y = np.meshgrid(z, x, y, indexing="ij")

    rho = np.hypot(X - xg, Y - yg)
    ok = feasible_rz(rho, Z, s.consts, s.gt.r0, s.i_min)
    sq = (X - xb) ** 2 + (Y - yb) ** 2 + (Z - s.bs.z_b) ** 2
    _, delay, _ = _delay_from_sq(sq, s, 0.0)
    delay = np.where(ok, delay, np.inf)
    k = int(np.argmin(delay))
    if not np.isfinite(delay.flat[k]):
        raise Infeasible("no feasible node on the 3D grid")
    placement = Placement(q=(float(X.flat[k]), float(Y.flat[k])), z=float(Z.flat[k]))
    return _result(Scheme.ES3D, s, placement, int(delay.size))


def segment_offset(q: tuple[float, float], s: Scenario) -> float:
    """Horizontal distance from ``q`` to the segment joining target and base station."""
    p = np.asarray(q, dtype=float)
    a = np.asarray(s.gt.w_g)
    b = np.asarray(s.bs.w_b)
    ab = b - a
    denom = float(ab @ ab)
    t = 0.0 if denom == 0 else min(1.0, max(0.0, float((p - a) @ ab) / denom))
    return float(np.linalg.norm(p - (a + t * ab)))
