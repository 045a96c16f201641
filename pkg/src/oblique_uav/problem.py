"""Placement problem reduced to the BS-GT segment.

An optimal shooting point lies above the segment joining the target and the
base station, so a placement is described by ``eta`` (0 over the target, 1 over
the base station) and the altitude ``z``.  In those coordinates the squared
UAV-BS distance is ``(1-eta)^2 d^2 + (z-z_b)^2`` and the three constraints are
written in the forms the solver linearises:

* resolution, in logs:  2 ln(z^2 - eta^2 d^2/b1^2) - 1.5 ln(z^2 + eta^2 d^2) - 3 ln z >= ln(i_min/a)
* capture angle:         b1 z - eta d >= 0
* containment:           z^2 + eta^2 d^2 >= r0 max(b1 z + eta d, sqrt(b2^2 z^2 + (1+b2^2) eta^2 d^2))
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .channel import BaseStation, LinkBudget, image_size_bits
from .geometry import CameraConstants, CameraIntrinsics, GroundTarget, Placement


@dataclass(frozen=True)
class Scenario:
    bs: BaseStation
    gt: GroundTarget
    cam: CameraIntrinsics
    link: LinkBudget
    i_min: float
    alpha: float
    consts: CameraConstants = field(init=False, repr=False)
    log_rhs: float = field(init=False, repr=False)

    def __post_init__(self):
        if not 0.0 < self.i_min < 1.0:
            raise ValueError(f"i_min must lie in (0, 1), got {self.i_min}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        consts = CameraConstants.from_camera(self.cam, self.gt.r0)
        object.__setattr__(self, "consts", consts)
        object.__setattr__(self, "log_rhs", math.log(self.i_min / consts.a))

    @property
    def d_gb(self) -> float:
        return math.hypot(self.gt.w_g[0] - self.bs.w_b[0], self.gt.w_g[1] - self.bs.w_b[1])

    @property
    def bearing(self) -> tuple[float, float]:
        """Unit vector from base station to target (+x when they coincide)."""
        d = self.d_gb
        if d == 0:
            return (1.0, 0.0)
        return ((self.gt.w_g[0] - self.bs.w_b[0]) / d, (self.gt.w_g[1] - self.bs.w_b[1]) / d)

    @property
    def image_bits(self) -> float:
        return image_size_bits(self.cam)

    def with_i_min(self, i_min: float) -> "Scenario":
        return replace(self, i_min=i_min)

    def with_gamma0(self, gamma0: float) -> "Scenario":
        return replace(self, link=replace(self.link, gamma0=gamma0))

    def with_distance(self, d_gb: float) -> "Scenario":
        """Move the target along its bearing from the base station."""
        ux, uy = self.bearing
        w_g = (self.bs.w_b[0] + d_gb * ux, self.bs.w_b[1] + d_gb * uy)
        return replace(self, gt=replace(self.gt, w_g=w_g))

    def vertical_altitude(self) -> float:
        """Altitude over the target at which the resolution equals ``i_min``."""
        return math.sqrt(self.consts.a / self.i_min)

    def vertical_floor(self) -> float:
        """Lowest altitude over the target that still contains the whole disc."""
        return self.gt.r0 * max(self.consts.b1, self.consts.b2)


@dataclass(frozen=True)
class ReducedPoint:
    eta: float
    z: float


@dataclass(frozen=True)
class ConstraintResiduals:
    resolution_log: float
    angle: float
    containment: float

    def min(self) -> float:
        return min(self.resolution_log, self.angle, self.containment)


def embed(r: ReducedPoint, s: Scenario) -> Placement:
    if not 0.0 <= r.eta <= 1.0:
        raise ValueError(f"eta must lie in [0, 1], got {r.eta}")
    (xb, yb), (xg, yg) = s.bs.w_b, s.gt.w_g
    q = (r.eta * xb + (1.0 - r.eta) * xg, r.eta * yb + (1.0 - r.eta) * yg)
    return Placement(q=q, z=r.z)


def reduced_objective(r: ReducedPoint, s: Scenario) -> float:
    """Squared UAV-BS distance; minimising it maximises the rate."""
    return (1.0 - r.eta) ** 2 * s.d_gb**2 + (r.z - s.bs.z_b) ** 2


def reduced_rate(r: ReducedPoint, s: Scenario) -> float:
    return s.link.bandwidth * math.log2(1.0 + s.link.gamma0 / reduced_objective(r, s))


def containment_rhs(eta: float, z: float, s: Scenario) -> float:
    """``r0 * max(...)`` side of the containment constraint; convex in either variable."""
    b1, b2 = s.consts.b1, s.consts.b2
    rho = eta * s.d_gb
    return s.gt.r0 * max(b1 * z + rho, math.sqrt(b2 * b2 * z * z + (1.0 + b2 * b2) * rho * rho))


def resolution_log_residual(eta: float, z: float, s: Scenario) -> float:
    rho2 = (eta * s.d_gb) ** 2
    u = z * z - rho2 / s.consts.b1**2
    if u <= 0.0 or z <= 0.0:
        return -math.inf
    return 2.0 * math.log(u) - 1.5 * math.log(z * z + rho2) - 3.0 * math.log(z) - s.log_rhs


def residuals(r: ReducedPoint, s: Scenario) -> ConstraintResiduals:
    eta, z = r.eta, r.z
    return ConstraintResiduals(
        resolution_log=resolution_log_residual(eta, z, s),
        angle=s.consts.b1 * z - eta * s.d_gb,
        containment=z * z + (eta * s.d_gb) ** 2 - containment_rhs(eta, z, s),
    )


def feasible(r: ReducedPoint, s: Scenario, tol: float = 1e-9) -> bool:
    if not (0.0 <= r.eta <= 1.0) or not r.z > 0:
        return False
    return residuals(r, s).min() >= -tol


# -- monotonicity of the resolution along a fixed altitude ---------------------

def property1_value(x, m0: float, m1: float, m2: float):
    return m1 * (m2 - x**2) ** 2 / (x**2 + m0) ** 1.5


def property1_derivative(x, m0: float, m1: float, m2: float):
    """Closed-form derivative of ``m1 (m2 - x^2)^2 / (x^2 + m0)^1.5``."""
    h = x**2 + m0
    return -m1 * x * (m2 - x**2) * h**0.5 * (x**2 + 4.0 * m0 + 3.0 * m2) / h**3


def resolution_shape(z: float, c: CameraConstants) -> tuple[float, float, float]:
    """``(m0, m1, m2)`` such that resolution at standoff rho equals ``property1_value(rho, ...)``."""
    return z * z, c.a / (z**3 * c.b1**4), c.b1**2 * z * z
