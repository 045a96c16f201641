"""Line-of-sight UAV to base-station link and image transmission time."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ZeroDistance, ZeroRate
from .geometry import CameraIntrinsics, Placement


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def dbm_to_watts(dbm: float) -> float:
    return 10.0 ** ((dbm - 30.0) / 10.0)


@dataclass(frozen=True)
class BaseStation:
    w_b: tuple[float, float]
    z_b: float

    def __post_init__(self):
        if self.z_b < 0:
            raise ValueError("base-station altitude must be non-negative")
        object.__setattr__(self, "w_b", (float(self.w_b[0]), float(self.w_b[1])))


@dataclass(frozen=True)
class LinkBudget:
    """Bandwidth (Hz) and the received SNR at 1 m, ``gamma0``, both linear."""

    bandwidth: float
    gamma0: float

    def __post_init__(self):
        if not self.bandwidth > 0:
            raise ValueError("bandwidth must be positive")
        if not self.gamma0 > 0:
            raise ValueError("gamma0 must be positive")

    @classmethod
    def from_components(
        cls,
        bandwidth: float,
        transmit_power: float,
        noise_power: float,
        snr_gap: float,
        beta0: float,
    ) -> "LinkBudget":
        """Build from linear transmit power (W), noise power (W), SNR gap and 1 m gain."""
        return cls(bandwidth=bandwidth, gamma0=transmit_power * beta0 / (noise_power * snr_gap))


def uav_bs_distance(p: Placement, bs: BaseStation) -> float:
    dx = p.q[0] - bs.w_b[0]
    dy = p.q[1] - bs.w_b[1]
    return math.sqrt(dx * dx + dy * dy + (p.z - bs.z_b) ** 2)


def channel_gain(p: Placement, bs: BaseStation, beta0: float) -> float:
    d = uav_bs_distance(p, bs)
    if d == 0:
        raise ZeroDistance("UAV and base station coincide")
    return beta0 / d**2


def rate_from_sq_distance(sq_dist, lb: LinkBudget):
    """Achievable rate in bit/s for a squared UAV-BS distance (scalar or array)."""
    return lb.bandwidth * np.log2(1.0 + lb.gamma0 / sq_dist)


def achievable_rate(p: Placement, bs: BaseStation, lb: LinkBudget) -> float:
    d = uav_bs_distance(p, bs)
    if d == 0:
        raise ZeroDistance("UAV and base station coincide")
    return lb.bandwidth * math.log2(1.0 + lb.gamma0 / d**2)


def image_size_bits(cam: CameraIntrinsics) -> float:
    pixels = cam.w0 * cam.l0 / cam.delta0**2
    if cam.exponential_depth:
        return pixels * 2.0**cam.bits_per_pixel
    return pixels * cam.bits_per_pixel


def transmission_time(resolution: float, rate: float, cam: CameraIntrinsics, alpha: float) -> float:
    """Seconds to send the target's share of a compressed image.

    ``resolution`` is the fraction of the frame that is sent; callers pass the
    required resolution (the data volume the user asked for).
    """
    if not rate > 0:
        raise ZeroRate(f"rate must be positive, got {rate}")
    return alpha * image_size_bits(cam) * resolution / rate
