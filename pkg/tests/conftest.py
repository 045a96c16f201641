import math
from pathlib import Path

import pytest

from oblique_uav.channel import BaseStation, LinkBudget
from oblique_uav.geometry import CameraConstants, CameraIntrinsics, GroundTarget
from oblique_uav.problem import Scenario

ROOT = Path(__file__).resolve().parents[1]
BASELINE_YAML = ROOT / "configs" / "baseline.yaml"

CAMERA = CameraIntrinsics(f0=0.035, w0=0.0156, l0=0.0235, delta0=3.9e-6)
R0 = 20.0


def make_scenario(gamma0=1e7, i_min=0.2, gt=(150.0, 200.0), bs=(0.0, 0.0), z_b=25.0, r0=R0):
    return Scenario(
        bs=BaseStation(bs, z_b),
        gt=GroundTarget(gt, r0),
        cam=CAMERA,
        link=LinkBudget(bandwidth=1e6, gamma0=gamma0),
        i_min=i_min,
        alpha=0.8,
    )


@pytest.fixture
def cam():
    return CAMERA


@pytest.fixture
def consts():
    return CameraConstants.from_camera(CAMERA, R0)


@pytest.fixture
def target():
    return GroundTarget((0.0, 0.0), R0)


@pytest.fixture
def scenario():
    return make_scenario()


@pytest.fixture
def baseline_yaml():
    return BASELINE_YAML


def rel(a, b):
    return abs(a - b) / abs(b)


# independent copies of the camera constants, for oracle-style checks
B1 = 2 * 0.035 / 0.0156
B2 = 2 * 0.035 / 0.0235
A = B1 * B2 * math.pi * R0**2 / 4


# -- acceptance summary ------------------------------------------------------------

ACCEPTANCE: dict[int, list[tuple[str, bool, str]]] = {}


def record(criterion: int, part: str, ok: bool, detail: str) -> None:
    ACCEPTANCE.setdefault(criterion, []).append((part, bool(ok), detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[k]
        verdict = "PASS" if all(ok for _, ok, _ in parts) else "FAIL"
        detail = "; ".join(f"{p}: {'ok' if ok else 'FAILED'} ({d})" for p, ok, d in parts)
        terminalreporter.write_line(f"criterion {k}: {verdict}  {detail}")
