import math

import pytest

from conftest import make_scenario
from oblique_uav.baselines import (
    Scheme,
    default_z_max,
    exhaustive_search_2d,
    exhaustive_search_3d,
    segment_offset,
    vertical_baseline,
)
from oblique_uav.errors import Infeasible
from oblique_uav.geometry import capture_feasible, containment_ok, resolution


def test_vertical_altitude_example():
    s = make_scenario(i_min=0.3)
    b = vertical_baseline(s)
    assert b.scheme is Scheme.VERTICAL
    assert b.placement.z == pytest.approx(118.31, abs=0.01)
    assert b.placement.q == s.gt.w_g
    assert b.resolution == pytest.approx(0.3, rel=1e-9)


@pytest.mark.parametrize("i_min", [0.05, 0.1, 0.2, 0.3, 0.4, 0.5])
def test_vertical_hits_requirement(i_min):
    b = vertical_baseline(make_scenario(i_min=i_min))
    assert abs(b.resolution - i_min) / i_min < 1e-9


def test_vertical_infeasible_below_floor():
    s = make_scenario(i_min=0.55)
    assert math.sqrt(s.consts.a / 0.55) == pytest.approx(87.4, abs=0.05)
    with pytest.raises(Infeasible):
        vertical_baseline(s)


def _constraints_hold(b, s):
    p = b.placement
    return (
        capture_feasible(p, s.gt, s.consts)
        and resolution(p, s.gt, s.consts) >= s.i_min - 1e-9
        and containment_ok(p, s.gt, s.consts)
    )


@pytest.mark.parametrize("i_min", [0.1, 0.2, 0.3])
def test_es2d_feasible_and_better_than_vertical(i_min):
    s = make_scenario(i_min=i_min)
    es = exhaustive_search_2d(s, step=1.0)
    v = vertical_baseline(s)
    assert _constraints_hold(es, s) and _constraints_hold(v, s)
    assert es.delay <= v.delay
    assert segment_offset(es.placement.q, s) < 1e-9


def test_es2d_refinement_does_not_hurt():
    s = make_scenario(i_min=0.2)
    coarse = exhaustive_search_2d(s, step=4.0)
    fine = exhaustive_search_2d(s, step=2.0)
    assert fine.delay <= coarse.delay


def test_es2d_tiny_zmax_infeasible():
    s = make_scenario(i_min=0.2)
    with pytest.raises(Infeasible):
        exhaustive_search_2d(s, step=1.0, z_max=5.0)


def test_default_zmax_brackets_vertical():
    s = make_scenario(i_min=0.1)
    assert default_z_max(s) > s.vertical_altitude()


def test_es3d_close_to_segment():
    s = make_scenario(i_min=0.2)
    es3 = exhaustive_search_3d(s, step=5.0)
    assert _constraints_hold(es3, s)
    assert segment_offset(es3.placement.q, s) <= 5.0 * math.sqrt(2)


def test_es3d_mirror_symmetry():
    # z_max a multiple of the step keeps the mirrored grid aligned with the original
    s = make_scenario(i_min=0.2, gt=(150.0, 200.0))
    m = make_scenario(i_min=0.2, gt=(150.0, -200.0))
    a = exhaustive_search_3d(s, step=5.0, z_max=200.0)
    b = exhaustive_search_3d(m, step=5.0, z_max=200.0)
    assert a.delay == pytest.approx(b.delay, rel=1e-12)
    assert a.placement.z == b.placement.z


def test_segment_offset():
    s = make_scenario()
    assert segment_offset((75.0, 100.0), s) == pytest.approx(0.0)
    assert segment_offset((-80.0, 60.0), s) == pytest.approx(100.0)
    assert segment_offset((-30.0, -40.0), s) == pytest.approx(50.0)
