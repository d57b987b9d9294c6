"""Acceptance suite: one test per criterion, each reporting a pass/fail line."""

import math
import time

import numpy as np
import pytest

from emduality.cli import main
from emduality.electron import (
    fourier_current,
    fourier_current_sq_df,
    fourier_current_sq_uniform,
    spectral_distribution,
    spectral_distribution_recipe,
    total_energy_spectral,
)
from emduality.kinematics import (
    CarlitzWilley,
    DaviesFulling,
    UniformAcceleration,
    WalkerDavies,
    energy_routes,
    peel_derivative,
    state_at,
    state_at_proper_time,
    total_energy_closed_form,
    wd_energy_right,
)
from emduality.mirror import (
    beta_sq_df_double,
    beta_sq_df_high_frequency,
    beta_sq_df_lightspeed,
    beta_sq_df_low_frequency,
    mirror_total_energy,
    particle_spectrum_wd,
)
from emduality.thermal import reference_temperature, thermality_verdict, uniform_axis_sweep


def rel(a, b):
    return abs(a - b) / abs(b)


def test_criterion_01_df_energy_five_routes(report):
    start = time.perf_counter()
    worst_time, worst_pair = 0.0, 0.0
    for s in (0.1, 0.3, 0.5, 0.7, 0.9):
        traj = DaviesFulling(s, 1.0)
        closed = total_energy_closed_form(traj)
        routes = energy_routes(traj)
        values = [closed, routes.power_route, routes.force_route, total_energy_spectral(traj),
                  mirror_total_energy(traj)]
        worst_time = max(worst_time, rel(routes.power_route, closed), rel(routes.force_route, closed))
        worst_pair = max(worst_pair, max(rel(a, b) for a in values for b in values))
    elapsed = time.perf_counter() - start
    ok = worst_time < 1e-8 and worst_pair < 1e-3 and elapsed < 60
    report(1, ok, f"time-domain {worst_time:.1e} (<1e-8), pairwise {worst_pair:.1e} (<1e-3), {elapsed:.1f} s (<60 s)")
    assert ok


def test_criterion_02_wd_energy(report):
    worst_time, worst_spec = 0.0, 0.0
    for A, B in ((2.0, 1.0), (math.pi, 0.3)):
        traj = WalkerDavies(A, B)
        closed = total_energy_closed_form(traj)
        routes = energy_routes(traj)
        worst_time = max(worst_time, rel(routes.power_route, closed), rel(routes.force_route, closed))
        worst_spec = max(worst_spec, rel(total_energy_spectral(traj), closed))
    ok = worst_time < 1e-8 and worst_spec < 1e-3
    report(2, ok, f"time-domain {worst_time:.1e} (<1e-8), spectral {worst_spec:.1e} (<1e-3)")
    assert ok


def test_criterion_03_wd_right_mirror_energy(report):
    worst = 0.0
    for A, B in ((2.0, 1.0), (math.pi, 0.3)):
        traj = WalkerDavies(A, B)
        ref = B * B / (48.0 * (A * A - B * B) ** 1.5)
        assert wd_energy_right(traj) == pytest.approx(ref, rel=1e-14)
        worst = max(worst, rel(mirror_total_energy(traj), ref))
    report(3, worst < 1e-3, f"mirror vs right-side term {worst:.1e} (<1e-3)")
    assert worst < 1e-3


def test_criterion_04_duality_identity(report):
    W, C = np.meshgrid(np.geomspace(0.05, 20.0, 30), np.cos(np.linspace(0.05, math.pi - 0.05, 30)), indexing="ij")
    worst = 0.0
    for traj in (DaviesFulling(0.5), DaviesFulling(0.9), UniformAcceleration(1.0)):
        rec = spectral_distribution_recipe(traj, W, C)
        cf = spectral_distribution(traj, W, C)
        worst = max(worst, float(np.max(np.abs(rec - cf) / cf)))
    report(4, worst < 1e-9, f"max relative deviation {worst:.1e} (<1e-9)")
    assert worst < 1e-9


def test_criterion_05_fourier_oracle(report):
    rng = np.random.default_rng(20240607)
    omegas = rng.uniform(0.2, 5.0, 10)
    thetas = rng.uniform(0.2, math.pi - 0.2, 10)
    s = 0.6
    worst_df, worst_ua = 0.0, 0.0
    for w, th in zip(omegas, thetas):
        c = math.cos(th)
        worst_df = max(worst_df, rel(fourier_current(DaviesFulling(s), w, c).abs_sq, fourier_current_sq_df(s, 1.0, w, c)))
        worst_ua = max(worst_ua, rel(fourier_current(UniformAcceleration(1.0), w, c).abs_sq,
                                     fourier_current_sq_uniform(1.0, w, c)))
    ok = worst_df < 1e-6 and worst_ua < 1e-6
    report(5, ok, f"|j_z|^2 oracle: DF {worst_df:.1e}, uniform {worst_ua:.1e} (<1e-6)")
    assert ok


def test_criterion_06_df_thermality(report):
    fit = thermality_verdict(DaviesFulling(0.99, 1.0), theta=0.01)
    ref = reference_temperature("df_electron", s=0.99, kappa=1.0).value
    dev = rel(fit.T_fit, ref)
    ok = dev < 0.02 and fit.verdict == "thermal"
    report(6, ok, f"T_fit/T_ref = {fit.T_fit / ref:.4f} (within 2%), verdict {fit.verdict}")
    assert ok


def test_criterion_07_uniform_non_thermality(report):
    sweep = uniform_axis_sweep(UniformAcceleration(1.0))
    spread = float(np.ptp(sweep) / np.mean(sweep))
    verdict = thermality_verdict(UniformAcceleration(1.0)).verdict
    ok = spread < 0.05 and verdict == "not_thermal"
    report(7, ok, f"T_UV sin(theta) spread {spread:.1e} (<5%), verdict {verdict}")
    assert ok


def test_criterion_08_wd_particle_count(report):
    lines, ok = [], True
    for vmax in (0.01, 0.03, 0.05):
        traj = WalkerDavies.from_peel(1.0, vmax)
        A, B = traj.A, traj.B
        ps = particle_spectrum_wd(A, B, np.array([0.1, 1.0, 5.0]) / A)
        n_dev = rel(ps.n_tot, vmax ** 2 / 6.0)
        p_dev = float(np.max(np.abs(ps.n_p - ps.n_p_closed_form) / ps.n_p_closed_form))
        ok = ok and n_dev < 0.01 and p_dev < 0.02
        lines.append(f"v={vmax}: N_tot {n_dev:.2%}, N_p {p_dev:.1%}")
    report(8, ok, "; ".join(lines) + " (limits 1% and 2%)")
    assert ok


def test_criterion_09_df_lightspeed_limit(report):
    grid = np.geomspace(0.05, 5.0, 20)
    P, Q = np.meshgrid(grid, grid, indexing="ij")
    sup = float(np.max(np.abs(beta_sq_df_double(1 - 1e-6, 1.0, P, Q) - beta_sq_df_lightspeed(1.0, P, Q))))
    hi = rel(beta_sq_df_lightspeed(1.0, 0.3, 100.0), beta_sq_df_high_frequency(1.0, 0.3, 100.0))
    lo = rel(beta_sq_df_lightspeed(1.0, 100.0, 0.3), beta_sq_df_low_frequency(1.0, 100.0, 0.3))
    ok = sup <= 1e-4 and hi < 0.01 and lo < 0.01
    report(9, ok, f"sup-norm {sup:.1e} (<=1e-4), Planck corners {hi:.1e} / {lo:.1e} (<1%)")
    assert ok


def test_criterion_10_zero_jerk(report):
    cw = CarlitzWilley(1.0)
    cw_worst = 0.0
    for tau in np.geomspace(0.1, 100.0, 200):
        st = state_at_proper_time(cw, float(tau))
        cw_worst = max(cw_worst, abs(st.alpha ** 2 + st.alpha_dot))
    ua = UniformAcceleration(0.7)
    ua_exact = all(state_at(ua, t).jerk_sq == 0.7 ** 4 for t in (-3.0, 0.0, 0.4, 5.0))
    peel_worst = 0.0
    for traj in (DaviesFulling(0.5), DaviesFulling(0.9, 2.0), WalkerDavies(2.0, 1.0), UniformAcceleration(1.0), cw):
        for tau in (0.2, 0.9, 2.5):
            st = state_at_proper_time(traj, tau)
            ref = 2.0 * math.exp(st.eta) * (st.alpha ** 2 + st.alpha_dot)
            scale = max(abs(ref), 2.0 * math.exp(st.eta) * st.alpha ** 2, 1e-300)
            peel_worst = max(peel_worst, abs(peel_derivative(traj, tau) - ref) / scale)
    ok = cw_worst < 1e-12 and ua_exact and peel_worst < 1e-10
    report(10, ok, f"CW |a^2+a'| {cw_worst:.1e} (<1e-12), uniform J^2 exact {ua_exact}, peel {peel_worst:.1e} (<1e-10)")
    assert ok


def test_criterion_11_non_relativistic(report):
    s = 0.02
    e_dev = rel(total_energy_closed_form(DaviesFulling(s, 1.0)), 2.0 / (9.0 * math.pi) * s * s)
    e_time = rel(energy_routes(DaviesFulling(s, 1.0)).power_route, 2.0 / (9.0 * math.pi) * s * s)
    wd = WalkerDavies(2.0, 0.02)
    fit = thermality_verdict(wd)
    t_dev = rel(fit.T_fit, wd.kappa / (2.0 * math.pi))
    ok = e_dev < 0.01 and e_time < 0.01 and t_dev < 0.05
    report(11, ok, f"DF energy {max(e_dev, e_time):.1e} (<1%), WD UV temperature {t_dev:.1e} (<5%)")
    assert ok


def test_criterion_12_determinism(report, tmp_path):
    runs = [
        ["spectrum", "--traj", "df", "--s", "0.7", "--omega-range", "0.1:10:8", "--format", "json"],
        ["beta", "--traj", "wd", "--A", "2", "--B", "1", "--pq-range", "0.1:3:5"],
        ["trajectory", "--traj", "wd", "--vmax", "0.3", "--t-range=-4:4:9", "--format", "json"],
        ["thermal", "--traj", "uniform", "--format", "json"],
    ]
    identical = True
    for i, argv in enumerate(runs):
        outs = []
        for j in range(2):
            path = tmp_path / f"{i}-{j}.out"
            assert main(argv + ["--out", str(path)]) == 0
            outs.append(path.read_bytes())
        identical = identical and outs[0] == outs[1] and len(outs[0]) > 0
    report(12, identical, f"{len(runs)} commands byte-identical across repeated runs")
    assert identical
