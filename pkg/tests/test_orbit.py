import numpy as np
import pytest

from rotamime.errors import CertificateFailed, DegenerateOrbitError, DomainError, UndefinedPointError
from rotamime.maps import Interval, MapSpec, eval_F
from rotamime.orbit import (
    Certificate,
    PeriodicOrbit,
    basin_fraction,
    detect_period,
    find_attracting_orbit,
    iterate,
    lap_of,
    lemma_certificate,
    period_at,
    refine_fixed_point,
    rotation_order_check,
)

# 40-digit mpmath Newton on F^3(x) = x for b = 1/3, a = 40, frozen
ORBIT_1_3_X0 = 0.1660143611720519115022346
ORBIT_1_3_MULT = 0.8984863108747952043836954


def test_iterate_shapes(spec_1_3):
    traj = iterate(spec_1_3, 0.1, 5)
    assert traj.shape == (6,) and traj[0] == 0.1
    assert traj[1] == pytest.approx(eval_F(spec_1_3, 0.1), abs=1e-16)
    with pytest.raises(UndefinedPointError):
        iterate(spec_1_3, 0.0, 3, which="G")


def test_detect_period():
    traj = np.tile([0.1, 0.5, -0.3], 20)
    assert detect_period(traj, 10, 1e-12) == 3
    assert detect_period(np.linspace(0, 1, 50), 10, 1e-12) == 0


def test_period_three_orbit_against_oracle(spec_1_3):
    orb = find_attracting_orbit(spec_1_3)
    assert orb.period == 3 and orb.rotation_ok
    assert orb.points[0] == pytest.approx(ORBIT_1_3_X0, abs=1e-12)
    assert orb.multiplier == pytest.approx(ORBIT_1_3_MULT, rel=1e-10)
    assert orb.lap_count(3) == 1
    # both seeds land on the same cycle
    other = find_attracting_orbit(spec_1_3, "minus")
    assert sorted(other.points) == pytest.approx(sorted(orb.points), abs=1e-12)


def test_refine_is_idempotent(spec_1_3):
    z = refine_fixed_point(spec_1_3, 0.1665, 3)
    assert z == pytest.approx(ORBIT_1_3_X0, abs=1e-12)
    assert refine_fixed_point(spec_1_3, z, 3) == pytest.approx(z, abs=1e-14)


def test_orbit_round_trip(spec_1_3):
    orb = find_attracting_orbit(spec_1_3)
    assert PeriodicOrbit.from_dict(orb.to_dict()) == orb


def test_rotation_order():
    pts = [0.0, 1 / 3 - 1, 2 / 3 - 1]
    assert rotation_order_check([0.1 + p for p in pts], 1, 3)
    assert not rotation_order_check([0.1, 0.2], 1, 3)
    with pytest.raises(DegenerateOrbitError):
        rotation_order_check([0.1, 0.1, 0.5], 1, 3)


def test_lap_of():
    assert lap_of(-0.5, -0.1, 0.1) == 1
    assert lap_of(0.0, -0.1, 0.1) == 2
    assert lap_of(0.5, -0.1, 0.1) == 3


def test_certificate_for_member(spec_1_3):
    cert = lemma_certificate(spec_1_3)
    assert cert.valid
    assert cert.sign_u > 0 > cert.sign_v
    z = find_attracting_orbit(spec_1_3).points[0]
    assert cert.u < z < cert.v
    assert Certificate.from_dict(cert.to_dict()) == cert


def test_certificate_requires_member():
    spec = MapSpec.from_kn(3, 11, 90.0)
    with pytest.raises(DomainError):
        lemma_certificate(spec)


def test_certificate_fails_with_step_in_middle_lap(spec_3_11):
    with pytest.raises(CertificateFailed) as info:
        lemma_certificate(spec_3_11, require_member=False)
    assert info.value.step is not None


def test_certificate_far_into_class():
    spec = MapSpec.from_kn(3, 11, 170.0)
    cert = lemma_certificate(spec)
    assert cert.valid and 0 < cert.u < cert.v < 1 / 11


def test_period_at_failure_is_zero():
    assert period_at(MapSpec.from_kn(3, 11, 90.0), transient=2000, max_period=50) == 0


def test_basin_small(spec_1_3):
    orb = find_attracting_orbit(spec_1_3)
    frac = basin_fraction(spec_1_3, orb, n_samples=500, sample_interval=Interval(-2, 2), max_iters=20000)
    assert frac == 1.0
