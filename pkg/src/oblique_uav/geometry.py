"""Oblique-photography geometry: angle limit, ground footprint, resolution.

The UAV sits at ``(q, z)`` and tilts its camera so that the ground-target
centre ``w_g`` is imaged at the centre of the sensor.  Everything here depends
on the placement only through the horizontal standoff ``rho = |q - w_g|`` and
the altitude ``z``; the ``*_rz`` kernels take those two numbers directly and
broadcast over numpy arrays, which is what the grid searches use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AngleLimit

# b1*z - rho must exceed this fraction of z for a pose to count as capturable
ANGLE_EPS = 1e-9


@dataclass(frozen=True)
class CameraIntrinsics:
    """Pinhole camera: focal length, sensor size and pixel pitch, all in metres.

    ``exponential_depth`` switches the image size to the printed
    ``w0*l0*2**n/delta0**2`` form instead of pixels times bits per pixel.
    """

    f0: float
    w0: float
    l0: float
    delta0: float
    bits_per_pixel: int = 24
    exponential_depth: bool = False

    def __post_init__(self):
        for name in ("f0", "w0", "l0", "delta0"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.bits_per_pixel < 1:
            raise ValueError("bits_per_pixel must be a positive integer")


@dataclass(frozen=True)
class CameraConstants:
    b1: float
    b2: float
    a: float
    theta0: float

    @classmethod
    def from_camera(cls, cam: CameraIntrinsics, r0: float) -> "CameraConstants":
        b1 = 2.0 * cam.f0 / cam.w0
        b2 = 2.0 * cam.f0 / cam.l0
        return cls(b1=b1, b2=b2, a=b1 * b2 * math.pi * r0**2 / 4.0, theta0=math.atan(b1))


@dataclass(frozen=True)
class GroundTarget:
    w_g: tuple[float, float]
    r0: float

    def __post_init__(self):
        if not self.r0 > 0:
            raise ValueError("r0 must be positive")
        object.__setattr__(self, "w_g", (float(self.w_g[0]), float(self.w_g[1])))


@dataclass(frozen=True)
class Placement:
    q: tuple[float, float]
    z: float

    def __post_init__(self):
        if not self.z > 0:
            raise ValueError("altitude z must be positive")
        object.__setattr__(self, "q", (float(self.q[0]), float(self.q[1])))

    @property
    def xyz(self) -> tuple[float, float, float]:
        return (self.q[0], self.q[1], self.z)


@dataclass(frozen=True)
class Footprint:
    """Ground quadrilateral seen by the camera.

    Corners run A, B, C, D around the trapezoid: A and D on the parallel edge
    nearer the UAV, B and C on the far parallel edge.  ``d1`` is the distance
    from the target centre to the near edge DA, ``d2`` to the lateral edge AB
    (equal to CD by symmetry) and ``d_far`` to the far edge BC.
    """

    corners: np.ndarray
    area: float
    d1: float
    d2: float
    d_far: float = field(default=math.nan)


def horizontal_offset(p: Placement, g: GroundTarget) -> float:
    return math.hypot(p.q[0] - g.w_g[0], p.q[1] - g.w_g[1])


def slant_distance(p: Placement, g: GroundTarget) -> float:
    return math.hypot(horizontal_offset(p, g), p.z)


def oblique_angle(p: Placement, g: GroundTarget) -> float:
    return math.atan2(horizontal_offset(p, g), p.z)


def capture_feasible(p: Placement, g: GroundTarget, c: CameraConstants) -> bool:
    return c.b1 * p.z - horizontal_offset(p, g) >= ANGLE_EPS * p.z


def _check_angle(rho: float, z: float, c: CameraConstants) -> None:
    if not c.b1 * z - rho >= ANGLE_EPS * z:
        raise AngleLimit(
            f"oblique angle {math.degrees(math.atan2(rho, z)):.4f} deg is at or beyond "
            f"the limit {math.degrees(c.theta0):.4f} deg"
        )


# -- vectorised kernels in (rho, z) -------------------------------------------

def coverage_area_rz(rho, z, cam: CameraIntrinsics):
    tan_t = rho / z
    cos_t = z / np.hypot(rho, z)
    vertical = cam.w0 * cam.l0 * z**2 / cam.f0**2
    shrink = 1.0 - (cam.w0**2 / (4.0 * cam.f0**2)) * tan_t**2
    return vertical / (shrink**2 * cos_t**3)


def resolution_rz(rho, z, c: CameraConstants):
    """Share of the footprint covered by the target disc, ``pi*r0^2 / S_c``."""
    return c.a * (z**2 - rho**2 / c.b1**2) ** 2 / ((rho**2 + z**2) ** 1.5 * z**3)


def edge_distances_rz(rho, z, c: CameraConstants):
    s = z**2 + rho**2
    d1 = s / (c.b1 * z + rho)
    d2 = s / np.sqrt(c.b2**2 * z**2 + (1.0 + c.b2**2) * rho**2)
    return d1, d2


def feasible_rz(rho, z, c: CameraConstants, r0: float, i_min: float, tol: float = 0.0):
    """Boolean mask of poses meeting the capture, resolution and containment constraints."""
    rho = np.asarray(rho, dtype=float)
    z = np.asarray(z, dtype=float)
    angle_ok = c.b1 * z - rho >= ANGLE_EPS * z
    with np.errstate(divide="ignore", invalid="ignore"):
        res = resolution_rz(rho, z, c)
        d1, d2 = edge_distances_rz(rho, z, c)
    return angle_ok & (res >= i_min - tol) & (r0 <= np.minimum(d1, d2) + tol)


# -- placement-level operations ------------------------------------------------

def coverage_area(p: Placement, g: GroundTarget, cam: CameraIntrinsics) -> float:
    rho = horizontal_offset(p, g)
    _check_angle(rho, p.z, CameraConstants.from_camera(cam, g.r0))
    return float(coverage_area_rz(rho, p.z, cam))


def resolution(p: Placement, g: GroundTarget, c: CameraConstants) -> float:
    rho = horizontal_offset(p, g)
    _check_angle(rho, p.z, c)
    return float(resolution_rz(rho, p.z, c))


def edge_distances(p: Placement, g: GroundTarget, c: CameraConstants) -> tuple[float, float]:
    rho = horizontal_offset(p, g)
    _check_angle(rho, p.z, c)
    d1, d2 = edge_distances_rz(rho, p.z, c)
    return float(d1), float(d2)


def containment_ok(p: Placement, g: GroundTarget, c: CameraConstants, tol: float = 1e-9) -> bool:
    d1, d2 = edge_distances(p, g, c)
    return g.r0 <= min(d1, d2) + tol


# -- independent check by projecting the sensor corners --------------------------

def _point_line_distance(p0: np.ndarray, p1: np.ndarray, pt: np.ndarray) -> float:
    e = p1 - p0
    w = pt - p0
    return abs(e[0] * w[1] - e[1] * w[0]) / math.hypot(e[0], e[1])


def footprint_oracle(p: Placement, g: GroundTarget, cam: CameraIntrinsics) -> Footprint:
    """Project the four sensor corners through the focal point onto the ground.

    The boresight passes through the target centre and the sensor width axis
    lies in the vertical plane containing UAV and target.  When the UAV is
    directly overhead the width axis is taken along +x.
    """
    rho = horizontal_offset(p, g)
    if rho > 0:
        ex, ey = (g.w_g[0] - p.q[0]) / rho, (g.w_g[1] - p.q[1]) / rho
    else:
        ex, ey = 1.0, 0.0
    heading = np.array([ex, ey, 0.0])
    eye = np.array([p.q[0], p.q[1], p.z])
    target = np.array([g.w_g[0], g.w_g[1], 0.0])

    bore = (target - eye) / np.linalg.norm(target - eye)
    width_axis = heading - bore * (heading @ bore)
    width_axis /= np.linalg.norm(width_axis)
    length_axis = np.cross(bore, width_axis)

    # (width sign, length sign): -1 on the width axis is the UAV side
    signs = [(-1, 1), (1, 1), (1, -1), (-1, -1)]
    corners = []
    for sw, sl in signs:
        ray = cam.f0 * bore + sw * cam.w0 / 2 * width_axis + sl * cam.l0 / 2 * length_axis
        if ray[2] >= 0:
            raise AngleLimit("sensor corner ray does not reach the ground")
        t = -p.z / ray[2]
        corners.append((eye + t * ray)[:2])
    pts = np.array(corners)

    x, y = pts[:, 0], pts[:, 1]
    area = 0.5 * abs(float(x @ np.roll(y, -1) - y @ np.roll(x, -1)))
    centre = np.array(g.w_g)
    a_, b_, c_, d_ = pts
    return Footprint(
        corners=pts,
        area=area,
        d1=_point_line_distance(d_, a_, centre),
        d2=_point_line_distance(a_, b_, centre),
        d_far=_point_line_distance(b_, c_, centre),
    )
