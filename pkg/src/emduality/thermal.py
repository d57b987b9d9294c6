"""Temperatures and thermality verdicts.

A spectrum is called *thermal* when a 1+1D Planck form
``f = C omega / (e^{omega/T} - 1)`` describes both its infrared plateau and
its ultraviolet tail with one temperature. It is *Wien only* when just the
UV tail ``omega^n e^{-omega/T}`` defines a finite temperature, and *not
thermal* otherwise. Electron temperatures are in units of ``e^2``
(``"stoney"``), mirror temperatures in units of ``hbar`` (``"kelvin"``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import least_squares

from .errors import DomainError, FitError, UnsupportedError
from .electron import frequency_spectrum, spectral_distribution_df, spectral_distribution_uniform
from .kinematics import CarlitzWilley, DaviesFulling, UniformAcceleration, WalkerDavies
from .mirror import SPECTRAL_CONFIG
from .numerics import QuadratureConfig

CONSISTENCY_TOL = 0.10
VERDICTS = ("thermal", "wien_only", "not_thermal")
# angles used to test whether the UV temperature stays finite on the axis
AXIS_SWEEP = (0.1, 0.5, 1.0, math.pi / 2)


@dataclass(frozen=True)
class UvFit:
    T: float
    C: float
    residual: float
    n_samples: int
    power: int


@dataclass(frozen=True)
class ThermalFit:
    """Fitted temperature with its IR/UV consistency verdict.

    ``T_fit`` is the Planck temperature for ``thermal`` and the Wien
    temperature for ``wien_only``. ``residual`` is the rms of the log
    residuals of the Planck fit.
    """

    trajectory: dict
    theta: float | None
    fit_window: tuple
    T_fit: float
    C_fit: float
    residual: float
    T_ir: float
    T_uv: float
    omega_ir: float | None
    verdict: str
    scale: str = "stoney"
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "trajectory": self.trajectory, "theta": self.theta,
            "fit_window": list(self.fit_window), "T_fit": self.T_fit, "C_fit": self.C_fit,
            "residual": self.residual, "T_ir": self.T_ir, "T_uv": self.T_uv,
            "omega_ir": self.omega_ir, "verdict": self.verdict, "scale": self.scale,
            "diagnostics": self.diagnostics,
        }


@dataclass(frozen=True)
class TemperatureReference:
    kind: str
    value: float
    scale: str
    label: str = ""


REFERENCE_KINDS = ("df_electron", "df_mirror", "wd_wien", "uniform_uv", "cw_mirror")


def reference_temperature(kind: str, **params) -> TemperatureReference:
    """Closed-form temperature of the given kind.

    ``df_electron``  ``kappa / (pi (1 - s))``, Stoney; ``s = 0`` is returned as
    a limit only (label ``"s->0 limit"``).
    ``df_mirror``    ``kappa / 2 pi``, Kelvin.
    ``wd_wien``      ``kappa / 2 pi = 1 / 2A``, Stoney; accepts ``kappa`` or ``A``.
    ``uniform_uv``   ``kappa / (2 sin theta)``, Stoney.
    ``cw_mirror``    ``kappa / 2 pi``, Kelvin.
    """
    if kind not in REFERENCE_KINDS:
        raise UnsupportedError(f"unknown temperature kind {kind!r}")
    if kind == "wd_wien" and "kappa" not in params and "A" in params:
        params = dict(params, kappa=math.pi / params["A"])
    kappa = params.get("kappa")
    if kappa is None or not kappa > 0:
        raise DomainError("reference temperatures need kappa > 0")
    if kind == "df_electron":
        s = params.get("s")
        if s is None or not 0 <= s < 1:
            raise DomainError("df_electron needs 0 <= s < 1")
        label = "s->0 limit" if s == 0 else ""
        return TemperatureReference(kind, kappa / (math.pi * (1.0 - s)), "stoney", label)
    if kind in ("df_mirror", "cw_mirror"):
        return TemperatureReference(kind, kappa / (2.0 * math.pi), "kelvin")
    if kind == "wd_wien":
        return TemperatureReference(kind, kappa / (2.0 * math.pi), "stoney")
    theta = params.get("theta")
    if theta is None or not 0 < theta < math.pi:
        raise DomainError("uniform_uv needs 0 < theta < pi")
    return TemperatureReference(kind, kappa / (2.0 * math.sin(theta)), "stoney")


# --- fits ----------------------------------------------------------------------


def _samples(omega, values, min_count=8):
    omega = np.asarray(omega, dtype=float)
    values = np.asarray(values, dtype=float)
    if omega.shape != values.shape or omega.ndim != 1:
        raise DomainError("omega and values must be matching 1-D arrays")
    if omega.size < min_count:
        raise DomainError(f"need at least {min_count} samples")
    if np.any(omega <= 0) or np.any(np.diff(omega) <= 0):
        raise DomainError("omega samples must be positive and strictly increasing")
    if np.any(~np.isfinite(values)) or np.any(values <= 0):
        raise DomainError("spectral samples must be finite and positive")
    return omega, values


def _log_expm1(y):
    return y + np.log(-np.expm1(-y))


def uv_temperature(omega, values, power=1, top_fraction=0.1) -> UvFit:
    """Wien temperature from the top decade: ``ln(f / omega^n) = ln C - omega/T``.

    Uses samples with ``omega >= top_fraction * max(omega)``.
    """
    omega, values = _samples(omega, values, min_count=2)
    top = omega >= top_fraction * omega[-1]
    w, f = omega[top], values[top]
    if w.size < 3:
        raise FitError("fewer than three samples in the UV window", {"n": int(w.size)})
    y = np.log(f) - power * np.log(w)
    if np.any(np.diff(y) >= 0):
        raise FitError("UV tail is not monotonically decaying", {"omega": w.tolist()})
    slope, intercept = np.polyfit(w, y, 1)
    if not slope < 0:
        raise FitError("UV log-slope is not negative", {"slope": float(slope)})
    resid = y - (slope * w + intercept)
    return UvFit(T=float(-1.0 / slope), C=float(math.exp(intercept)),
                 residual=float(np.sqrt(np.mean(resid ** 2))), n_samples=int(w.size), power=power)


def _ir_plateau(omega, values, n=3):
    """``f(omega -> 0)`` by a straight line through the lowest samples."""
    slope, intercept = np.polyfit(omega[:n], values[:n], 1)
    return float(intercept)


def fit_planck_1p1(omega, values, omega_ir=None, consistency_tol=CONSISTENCY_TOL,
                   trajectory=None, theta=None, scale="stoney") -> ThermalFit:
    """Least-squares fit of ``C omega / (e^{omega/T} - 1)`` in log space.

    ``T_ir`` is the IR plateau ``f(0) = C T`` divided by the UV amplitude,
    ``T_uv`` the Wien slope of the top decade. The verdict is ``thermal``
    when they agree within ``consistency_tol``, else ``not_thermal``
    (:func:`thermality_verdict` refines it to ``wien_only`` where earned).
    """
    omega, values = _samples(omega, values)
    if omega[-1] < 10.0 * omega[0]:
        raise DomainError("samples must span at least a decade")
    if omega_ir is not None and omega[0] < omega_ir:
        raise DomainError("fit window starts below the IR cut-off")
    logf = np.log(values)
    uv = uv_temperature(omega, values)
    T0 = uv.T
    C0 = math.exp(np.median(logf - np.log(omega) + _log_expm1(omega / T0)))

    def resid(x):
        lnC, lnT = x
        y = omega / math.exp(lnT)
        return lnC + np.log(omega) - _log_expm1(y) - logf

    def jac(x):
        y = omega / math.exp(x[1])
        return np.column_stack([np.ones_like(y), y / -np.expm1(-y)])

    sol = least_squares(resid, [math.log(C0), math.log(T0)], jac=jac, method="lm",
                        xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=2000)
    if not sol.success:
        raise FitError("Planck fit did not converge", {"message": sol.message, "x": sol.x.tolist()})
    C_fit, T_fit = math.exp(sol.x[0]), math.exp(sol.x[1])
    residual = float(np.sqrt(np.mean(sol.fun ** 2)))
    T_ir = _ir_plateau(omega, values) / uv.C
    consistent = abs(T_ir - uv.T) / uv.T < consistency_tol
    return ThermalFit(
        trajectory=trajectory or {}, theta=theta, fit_window=(float(omega[0]), float(omega[-1])),
        T_fit=T_fit, C_fit=C_fit, residual=residual, T_ir=T_ir, T_uv=uv.T, omega_ir=omega_ir,
        verdict="thermal" if consistent else "not_thermal", scale=scale,
        diagnostics={"uv_residual": uv.residual, "uv_amplitude": uv.C,
                     "ir_uv_mismatch": abs(T_ir - uv.T) / uv.T})


# --- verdicts ------------------------------------------------------------------


def _uniform_uv_fit(traj, theta, n=48):
    s = math.sin(theta)
    omega = np.geomspace(1e-3, 100.0, n) * traj.kappa / s
    values = spectral_distribution_uniform(traj.kappa, omega, math.cos(theta))
    return omega, values


def uniform_axis_sweep(traj: UniformAcceleration, thetas=AXIS_SWEEP):
    """``T_UV(theta) sin(theta)`` over a sweep of angles."""
    out = []
    for th in thetas:
        omega, values = _uniform_uv_fit(traj, th)
        out.append(uv_temperature(omega, values).T * math.sin(th))
    return np.asarray(out)


def thermality_verdict(traj, theta=None, cfg: QuadratureConfig = SPECTRAL_CONFIG,
                       n_samples=48, consistency_tol=CONSISTENCY_TOL) -> ThermalFit:
    """Sample the spectrum, fit it, and classify it.

    * Davies-Fulling: ``dI/dOmega / sin^2(theta)`` at the redshift-receding
      angle (default ``theta = 0.01``) on ``[omega_IR, 40 T]`` with
      ``omega_IR = kappa/(1+s)``.
    * Uniform acceleration: ``dI/dOmega`` at ``theta`` (default 0.01), plus a
      sweep showing ``T_UV sin(theta)`` constant, i.e. a UV temperature that
      diverges on the axis.
    * Walker-Davies: the angle-integrated spectrum ``I(omega)``, whose tail is
      the 2+1D Wien law ``omega^2 e^{-omega/T}``.
    """
    if isinstance(traj, CarlitzWilley):
        raise UnsupportedError("Carlitz-Willey spectra are not implemented; use reference_temperature('cw_mirror')")
    if isinstance(traj, DaviesFulling):
        theta = 0.01 if theta is None else theta
        s, k = traj.s, traj.kappa
        c = math.cos(theta)
        sin2 = (1.0 - c) * (1.0 + c)
        omega_ir = k / (1.0 + s)
        T_scale = k / (math.pi * (1.0 - s * c))
        omega = np.geomspace(omega_ir, 40.0 * T_scale, n_samples)
        values = spectral_distribution_df(s, k, omega, c, lightspeed=traj.lightspeed) / sin2
        fit = fit_planck_1p1(omega, values, omega_ir=omega_ir, consistency_tol=consistency_tol,
                             trajectory=traj.describe(), theta=theta)
        ref = reference_temperature("df_electron", s=min(s, 1 - 1e-15), kappa=k)
        verdict = classify(fit.verdict == "thermal", fit.diagnostics["uv_residual"] < 0.05, True)
        return _with(fit, verdict=verdict, diagnostics={**fit.diagnostics, "T_reference": ref.value})
    if isinstance(traj, UniformAcceleration):
        theta = 0.01 if theta is None else theta
        omega, values = _uniform_uv_fit(traj, theta, n_samples)
        fit = fit_planck_1p1(omega, values, consistency_tol=consistency_tol,
                             trajectory=traj.describe(), theta=theta)
        sweep = uniform_axis_sweep(traj)
        spread = float(np.ptp(sweep) / np.mean(sweep))
        # T_UV sin(theta) constant means T_UV diverges as theta -> 0
        diverges = spread < 0.05
        verdict = classify(fit.verdict == "thermal", fit.diagnostics["uv_residual"] < 0.05, not diverges)
        ref = reference_temperature("uniform_uv", kappa=traj.kappa, theta=theta)
        return _with(fit, verdict=verdict, diagnostics={
            **fit.diagnostics, "T_reference": ref.value, "axis_sweep_theta": list(AXIS_SWEEP),
            "T_uv_sin_theta": sweep.tolist(), "T_uv_sin_theta_spread": spread,
            "uv_diverges_on_axis": diverges})
    if isinstance(traj, WalkerDavies):
        A = traj.A
        omega = np.geomspace(0.02, 40.0, n_samples) / (2.0 * A)
        values = np.array([frequency_spectrum(traj, w, cfg) for w in omega])
        planck = fit_planck_1p1(omega, values, consistency_tol=consistency_tol,
                                trajectory=traj.describe(), theta=None)
        wien = uv_temperature(omega, values, power=2)
        clean = wien.residual < 0.05
        verdict = classify(planck.verdict == "thermal", clean, math.isfinite(wien.T))
        ref = reference_temperature("wd_wien", kappa=traj.kappa)
        return _with(planck, verdict=verdict,
                     T_fit=wien.T if verdict == "wien_only" else planck.T_fit,
                     T_uv=wien.T, diagnostics={
                         **planck.diagnostics, "T_reference": ref.value, "wien_power": 2,
                         "wien_residual": wien.residual, "T_planck": planck.T_fit,
                         "spectrum": "I(omega)"})
    raise UnsupportedError(f"no spectra for {type(traj).__name__}")


def classify(planck_consistent: bool, wien_clean: bool, uv_finite: bool) -> str:
    """Thermal if one Planck temperature fits IR and UV; Wien only if the UV
    alone gives a clean, finite temperature; otherwise not thermal."""
    if not uv_finite:
        return "not_thermal"
    if planck_consistent:
        return "thermal"
    return "wien_only" if wien_clean else "not_thermal"


def _with(fit: ThermalFit, **changes) -> ThermalFit:
    return replace(fit, **changes)
