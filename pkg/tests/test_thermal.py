import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from emduality.errors import DomainError, FitError, UnsupportedError
from emduality.kinematics import CarlitzWilley, DaviesFulling, UniformAcceleration, WalkerDavies, state_at, \
    state_at_proper_time
from emduality.thermal import (
    VERDICTS,
    classify,
    fit_planck_1p1,
    reference_temperature,
    thermality_verdict,
    uniform_axis_sweep,
    uv_temperature,
)


def _planck(omega, C, T):
    return C * omega / np.expm1(omega / T)


# --- fits -----------------------------------------------------------------------------------


@given(st.floats(1e-3, 1e3), st.floats(0.05, 20.0))
@settings(max_examples=50, deadline=None)
def test_planck_round_trip(C, T):
    omega = np.geomspace(0.05 * T, 30 * T, 40)
    fit = fit_planck_1p1(omega, _planck(omega, C, T))
    assert fit.T_fit == pytest.approx(T, rel=1e-6)
    assert fit.C_fit == pytest.approx(C, rel=1e-6)
    assert fit.verdict == "thermal"


def test_uv_temperature_wien():
    omega = np.linspace(1.0, 50.0, 30)
    fit = uv_temperature(omega, 3.0 * omega ** 2 * np.exp(-omega / 2.5), power=2)
    assert fit.T == pytest.approx(2.5, rel=1e-12)
    assert fit.C == pytest.approx(3.0, rel=1e-10)


def test_uv_temperature_angle_ratio():
    traj = UniformAcceleration(1.0)
    t_small, t_big = (uv_temperature(*_uniform_samples(traj, th)).T for th in (0.1, 1.0))
    assert t_small / t_big == pytest.approx(math.sin(1.0) / math.sin(0.1), rel=0.02)


def _uniform_samples(traj, theta):
    from emduality.electron import spectral_distribution_uniform

    omega = np.geomspace(1e-3, 100.0, 48) / math.sin(theta)
    return omega, spectral_distribution_uniform(traj.kappa, omega, math.cos(theta))


def test_fit_rejects_bad_input():
    omega = np.geomspace(1.0, 100.0, 20)
    with pytest.raises(DomainError):
        fit_planck_1p1(omega[:5], _planck(omega[:5], 1.0, 1.0))
    with pytest.raises(DomainError):
        fit_planck_1p1(np.linspace(1.0, 5.0, 20), _planck(np.linspace(1.0, 5.0, 20), 1.0, 1.0))
    with pytest.raises(DomainError):
        fit_planck_1p1(omega, -_planck(omega, 1.0, 1.0))
    with pytest.raises(DomainError):
        fit_planck_1p1(omega, _planck(omega, 1.0, 1.0), omega_ir=2.0)
    with pytest.raises(FitError):
        uv_temperature(omega, omega ** 2)


def test_classify():
    assert classify(True, True, True) == "thermal"
    assert classify(False, True, True) == "wien_only"
    assert classify(False, False, True) == "not_thermal"
    assert classify(True, True, False) == "not_thermal"


# --- references ------------------------------------------------------------------------------


def test_references():
    assert reference_temperature("df_mirror", kappa=2 * math.pi).value == pytest.approx(1.0)
    assert reference_temperature("df_mirror", kappa=1.0).scale == "kelvin"
    electron = reference_temperature("df_electron", s=0.0, kappa=1.0)
    assert electron.label == "s->0 limit" and electron.scale == "stoney"
    assert reference_temperature("df_mirror", kappa=1.0).value / electron.value == pytest.approx(0.5)
    assert reference_temperature("wd_wien", A=2.0).value == pytest.approx(0.25)
    assert reference_temperature("uniform_uv", kappa=1.0, theta=math.pi / 2).value == pytest.approx(0.5)
    with pytest.raises(UnsupportedError):
        reference_temperature("unruh", kappa=1.0)
    with pytest.raises(DomainError):
        reference_temperature("df_electron", s=1.0, kappa=1.0)
    with pytest.raises(DomainError):
        reference_temperature("uniform_uv", kappa=1.0, theta=0.0)
    with pytest.raises(DomainError):
        reference_temperature("df_mirror", kappa=-1.0)


# --- verdicts --------------------------------------------------------------------------------


def test_df_near_lightspeed_is_thermal():
    fit = thermality_verdict(DaviesFulling(0.99, 1.0), theta=0.01)
    ref = reference_temperature("df_electron", s=0.99, kappa=1.0).value
    assert fit.verdict == "thermal"
    assert fit.T_fit == pytest.approx(ref, rel=0.02)


def test_df_temperature_scales_with_kappa():
    a = thermality_verdict(DaviesFulling(0.99, 1.0), theta=0.01)
    b = thermality_verdict(DaviesFulling(0.99, 2.0), theta=0.01)
    assert a.T_fit / b.T_fit == pytest.approx(0.5, rel=1e-6)


def test_uniform_sin_theta_law():
    sweep = uniform_axis_sweep(UniformAcceleration(1.0))
    assert np.all(np.abs(sweep - 0.5) < 0.025)
    fit = thermality_verdict(UniformAcceleration(1.0))
    assert fit.verdict == "not_thermal"
    assert fit.diagnostics["uv_diverges_on_axis"]


def test_wd_wien_only():
    fit = thermality_verdict(WalkerDavies(2.0, 0.02))
    assert fit.verdict == "wien_only"
    assert fit.T_fit == pytest.approx(reference_temperature("wd_wien", A=2.0).value, rel=0.05)


def test_cw_has_no_spectrum():
    with pytest.raises(UnsupportedError):
        thermality_verdict(CarlitzWilley(1.0))


def test_fit_to_dict():
    d = thermality_verdict(DaviesFulling(0.9, 1.0), theta=0.01).to_dict()
    assert d["verdict"] in VERDICTS
    assert d["trajectory"]["variant"] == "davies_fulling"
    assert len(d["fit_window"]) == 2


# --- jerk and thermality -------------------------------------------------------------------------


def test_constant_peel_zero_jerk_is_thermal_mirror():
    cw = CarlitzWilley(1.0)
    peels = {state_at_proper_time(cw, tau).peel for tau in (0.1, 1.0, 10.0)}
    assert peels == {1.0}
    for tau in (0.1, 1.0, 10.0):
        st_ = state_at_proper_time(cw, tau)
        assert abs(st_.jerk_sq) <= 1e-12 * st_.alpha ** 4
    from emduality.cli import main

    assert main(["thermal", "--traj", "cw", "--format", "json", "--out", "/dev/null"]) == 0


def test_nonzero_jerk_trajectories_are_not_planck():
    wd = WalkerDavies(2.0, 0.02)
    assert abs(state_at(wd, 0.3).jerk_sq) > 0
    assert thermality_verdict(wd).verdict != "thermal"
