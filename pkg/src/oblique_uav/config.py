"""Run configuration: a nested YAML (or JSON) mapping resolved into dataclasses.

Example (all link quantities in dB are converted to linear once, here)::

    bs: {x: 0, y: 0, z: 25}
    gt: {x: 150, y: 200, r0: 20}
    camera: {f0: 0.035, w0: 0.0156, l0: 0.0235, delta0: 3.9e-6, bits_per_pixel: 24}
    link: {p_dbm: 10, sigma2_dbm: -109, gamma_db: 10, beta0_db: -40, bandwidth_hz: 1.0e6}
    alpha: 0.8
    i_min: 0.2
    solver: {precision: 1.0e-4, max_iters: 100}
    sweep: {gamma0: [1.0e6, 1.0e7, 1.0e8]}
    es: {step_m: 1}

``link.gamma0`` may replace the four dB components.  Giving both is accepted
only if they agree.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import yaml

from .channel import BaseStation, LinkBudget, db_to_linear, dbm_to_watts
from .errors import ConfigError
from .geometry import CameraIntrinsics, GroundTarget
from .problem import Scenario
from .solver import SolverConfig

DEFAULT_I_MIN_SWEEP = [0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40]
DEFAULT_D_GB_SWEEP = [50.0 * k for k in range(1, 11)]
DEFAULT_GAMMA0_SWEEP = [1e6, 1e7, 1e8]
DEFAULT_DISTANCE_I_MIN = [0.1, 0.2, 0.3]

_SCHEMA: dict[str, Any] = {
    "bs": {"x": None, "y": None, "z": None},
    "gt": {"x": None, "y": None, "r0": None},
    "camera": {
        "f0": None, "w0": None, "l0": None, "delta0": None,
        "bits_per_pixel": None, "exponential_depth": None,
    },
    "link": {
        "gamma0": None, "p_dbm": None, "sigma2_dbm": None,
        "gamma_db": None, "beta0_db": None, "bandwidth_hz": None,
    },
    "alpha": None,
    "i_min": None,
    "solver": {
        "precision": None, "max_iters": None, "bisect_tol": None, "feasibility_tol": None,
    },
    "sweep": {"gamma0": None, "i_min": None, "distance_i_min": None, "d_gb": None},
    "es": {"step_m": None, "step_3d_m": None},
    "output": None,
}


class _Loader(yaml.SafeLoader):
    pass


# YAML 1.1 reads "1.0e6" (no exponent sign) as a string; accept it as a float
_Loader.add_implicit_resolver(
    "tag:yaml.org,2002:float",
    re.compile(
        r"""^(?:[-+]?(?:[0-9][0-9_]*)\.[0-9_]*(?:[eE][-+]?[0-9]+)?
        |[-+]?(?:[0-9][0-9_]*)(?:[eE][-+]?[0-9]+)
        |\.[0-9_]+(?:[eE][-+]?[0-9]+)?
        |[-+]?\.(?:inf|Inf|INF)
        |\.(?:nan|NaN|NAN))$""",
        re.X,
    ),
    list("-+0123456789."),
)

_LINK_COMPONENTS = ("p_dbm", "sigma2_dbm", "gamma_db", "beta0_db")


@dataclass(frozen=True)
class RunConfig:
    scenario: Scenario
    solver: SolverConfig = field(default_factory=SolverConfig)
    gamma0_sweep: list[float] = field(default_factory=lambda: list(DEFAULT_GAMMA0_SWEEP))
    i_min_sweep: list[float] = field(default_factory=lambda: list(DEFAULT_I_MIN_SWEEP))
    distance_i_min: list[float] = field(default_factory=lambda: list(DEFAULT_DISTANCE_I_MIN))
    d_gb_sweep: list[float] = field(default_factory=lambda: list(DEFAULT_D_GB_SWEEP))
    es_step: float = 1.0
    es3d_step: float = 5.0
    output: str | None = None


def _check_keys(doc: dict, schema: dict, prefix: str = "") -> None:
    for key, value in doc.items():
        path = f"{prefix}{key}"
        if key not in schema:
            raise ConfigError(path, "unknown key")
        sub = schema[key]
        if isinstance(sub, dict):
            if not isinstance(value, dict):
                raise ConfigError(path, "expected a mapping")
            _check_keys(value, sub, prefix=f"{path}.")


def _get(doc: dict, path: str, default: Any = ..., kind: type = float) -> Any:
    node: Any = doc
    for part in path.split("."):
        if not isinstance(node, dict) or part not in node:
            if default is ...:
                raise ConfigError(path, "missing required key")
            return default
        node = node[part]
    if kind is bool:
        if not isinstance(node, bool):
            raise ConfigError(path, f"expected true/false, got {node!r}")
        return node
    if isinstance(node, bool) or not isinstance(node, (int, float)):
        raise ConfigError(path, f"expected a number, got {node!r}")
    if kind is int:
        if float(node) != int(node):
            raise ConfigError(path, f"expected an integer, got {node!r}")
        return int(node)
    value = float(node)
    if not math.isfinite(value):
        raise ConfigError(path, "must be finite")
    return value


def _get_list(doc: dict, path: str, default: list[float]) -> list[float]:
    section, key = path.split(".")
    raw = doc.get(section, {}).get(key, default)
    if not isinstance(raw, list):
        raise ConfigError(path, "expected a list")
    if not raw:
        raise ConfigError(path, "list must not be empty")
    out = []
    for i, v in enumerate(raw):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ConfigError(f"{path}[{i}]", f"expected a number, got {v!r}")
        out.append(float(v))
    return out


def _link(doc: dict) -> LinkBudget:
    link = doc.get("link", {})
    bandwidth = _get(doc, "link.bandwidth_hz", 1e6)
    present = [k for k in _LINK_COMPONENTS if k in link]
    if present and len(present) != len(_LINK_COMPONENTS):
        missing = [k for k in _LINK_COMPONENTS if k not in link]
        raise ConfigError(f"link.{missing[0]}", "partial dB link budget; give all four components")

    from_parts = None
    if present:
        from_parts = LinkBudget.from_components(
            bandwidth=bandwidth,
            transmit_power=dbm_to_watts(_get(doc, "link.p_dbm")),
            noise_power=dbm_to_watts(_get(doc, "link.sigma2_dbm")),
            snr_gap=db_to_linear(_get(doc, "link.gamma_db")),
            beta0=db_to_linear(_get(doc, "link.beta0_db")),
        ).gamma0

    if "gamma0" in link:
        gamma0 = _get(doc, "link.gamma0")
        if from_parts is not None and not math.isclose(gamma0, from_parts, rel_tol=1e-6):
            raise ConfigError(
                "link.gamma0", f"{gamma0:g} disagrees with the dB components ({from_parts:g})"
            )
    elif from_parts is not None:
        gamma0 = from_parts
    else:
        raise ConfigError("link.gamma0", "missing; give gamma0 or the four dB components")

    try:
        return LinkBudget(bandwidth=bandwidth, gamma0=gamma0)
    except ValueError as exc:
        raise ConfigError("link", str(exc)) from exc


def config_from_mapping(doc: dict) -> RunConfig:
    if not isinstance(doc, dict):
        raise ConfigError("<root>", "expected a mapping")
    _check_keys(doc, _SCHEMA)
    try:
        cam = CameraIntrinsics(
            f0=_get(doc, "camera.f0"),
            w0=_get(doc, "camera.w0"),
            l0=_get(doc, "camera.l0"),
            delta0=_get(doc, "camera.delta0"),
            bits_per_pixel=_get(doc, "camera.bits_per_pixel", 24, kind=int),
            exponential_depth=_get(doc, "camera.exponential_depth", False, kind=bool),
        )
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError("camera", str(exc)) from exc

    try:
        bs = BaseStation((_get(doc, "bs.x"), _get(doc, "bs.y")), _get(doc, "bs.z"))
        gt = GroundTarget((_get(doc, "gt.x"), _get(doc, "gt.y")), _get(doc, "gt.r0"))
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError("bs/gt", str(exc)) from exc

    link = _link(doc)
    alpha = _get(doc, "alpha")
    i_min = _get(doc, "i_min")
    if not 0.0 <= alpha <= 1.0:
        raise ConfigError("alpha", "must lie in [0, 1]")
    if not 0.0 < i_min < 1.0:
        raise ConfigError("i_min", "must lie in (0, 1)")
    scenario = Scenario(bs=bs, gt=gt, cam=cam, link=link, i_min=i_min, alpha=alpha)

    try:
        solver = SolverConfig(
            precision=_get(doc, "solver.precision", 1e-4),
            max_iters=_get(doc, "solver.max_iters", 100, kind=int),
            bisect_tol=_get(doc, "solver.bisect_tol", 1e-9),
            feasibility_tol=_get(doc, "solver.feasibility_tol", 1e-10),
        )
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError("solver", str(exc)) from exc

    i_min_sweep = _get_list(doc, "sweep.i_min", DEFAULT_I_MIN_SWEEP)
    distance_i_min = _get_list(doc, "sweep.distance_i_min", DEFAULT_DISTANCE_I_MIN)
    for path, values in (("sweep.i_min", i_min_sweep), ("sweep.distance_i_min", distance_i_min)):
        if any(not 0.0 < v < 1.0 for v in values):
            raise ConfigError(path, "values must lie in (0, 1)")
    gamma0_sweep = _get_list(doc, "sweep.gamma0", DEFAULT_GAMMA0_SWEEP)
    if any(v <= 0 for v in gamma0_sweep):
        raise ConfigError("sweep.gamma0", "values must be positive")
    d_gb_sweep = _get_list(doc, "sweep.d_gb", DEFAULT_D_GB_SWEEP)
    if any(v < 0 for v in d_gb_sweep):
        raise ConfigError("sweep.d_gb", "values must be non-negative")

    es_step = _get(doc, "es.step_m", 1.0)
    es3d_step = _get(doc, "es.step_3d_m", 5.0)
    if es_step <= 0 or es3d_step <= 0:
        raise ConfigError("es", "steps must be positive")

    output = doc.get("output")
    if output is not None and not isinstance(output, str):
        raise ConfigError("output", "expected a path string")

    return RunConfig(
        scenario=scenario,
        solver=solver,
        gamma0_sweep=gamma0_sweep,
        i_min_sweep=i_min_sweep,
        distance_i_min=distance_i_min,
        d_gb_sweep=d_gb_sweep,
        es_step=es_step,
        es3d_step=es3d_step,
        output=output,
    )


def load_config(path: str | Path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(str(path), f"cannot read: {exc.strerror}") from exc
    try:
        doc = json.loads(text) if path.suffix == ".json" else yaml.load(text, Loader=_Loader)
    except (json.JSONDecodeError, yaml.YAMLError) as exc:
        raise ConfigError(str(path), f"parse error: {exc}") from exc
    return config_from_mapping(doc if doc is not None else {})
