"""Bogolubov spectra |beta_pq|^2 of the 1+1D moving mirror.

``p`` is the out-mode and ``q`` the in-mode frequency. All spectra are
vectorized over ``p`` and ``q`` (numpy broadcasting) and evaluated through
logarithms where hyperbolic factors would otherwise overflow. Energies are
per unit hbar.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InfiniteEnergyError, UnsupportedError
from .kinematics import DaviesFulling, UniformAcceleration, WalkerDavies, wd_energy_right
from .numerics import (
    QuadratureConfig,
    bessel_k1_sq,
    bessel_k_batch_scaled,
    incomplete_gamma_zero,
    integrate_1d_full,
    integrate_2d_iterated,
    log_abs_beta_imag_sq,
    log_abs_gamma_imag_sq,
    log_sinh,
    sinh_exp,
)

# p = q is treated as a removable point below this relative separation.
PQ_MERGE = 1e-6

SPECTRAL_CONFIG = QuadratureConfig(rel_tol=1e-6, abs_tol=1e-16, max_subdivisions=20000)


@dataclass(frozen=True)
class ModePair:
    """Out/in scalar mode frequencies. Either may vanish only on the boundary."""

    p: float
    q: float

    def __post_init__(self):
        if not (self.p >= 0 and self.q >= 0 and self.p + self.q > 0):
            raise DomainError("mode frequencies must be non-negative and not both zero")

    @property
    def is_boundary(self) -> bool:
        return self.p == 0 or self.q == 0


@dataclass(frozen=True)
class DfBetaTerms:
    g_plus: float
    g_minus: float
    a: float
    b: float

    @classmethod
    def build(cls, s, p, q):
        return cls(g_plus=s * (p - q) + (p + q), g_minus=s * (p - q) - (p + q),
                   a=p * (1 + s) + q * (1 - s), b=p * (1 - s) + q * (1 + s))


@dataclass(frozen=True)
class ParticleSpectrum:
    p_grid: np.ndarray
    n_p: np.ndarray
    n_p_closed_form: np.ndarray
    n_tot: float
    n_tot_error: float
    n_tot_closed_form: float
    meta: dict = field(default_factory=dict)


def _pq(p, q):
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if np.any(p <= 0) or np.any(q <= 0):
        raise DomainError("mirror spectra need p > 0 and q > 0")
    return np.broadcast_arrays(p, q)


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def _check_s(s, allow_one=False):
    if not (0 < s < 1 or (allow_one and s == 1)):
        raise DomainError("Davies-Fulling needs 0 < s < 1")


# --- Davies-Fulling -----------------------------------------------------------


def beta_sq_df_right(s, kappa, p, q):
    """Right-side ``|beta^R_pq|^2`` of the Davies-Fulling mirror.

    ``pq / (4 pi^2 kappa^2 (p-q)^2) |B(i g_-/2kappa, i g_+/2kappa)|^2`` with
    ``g_pm = s(p-q) +/- (p+q)``. Near ``p = q`` the ``(p-q)^2`` pole is
    cancelled analytically against ``|Gamma(i s(p-q)/kappa)|^2``.
    """
    _check_s(s, allow_one=True)
    p, q = _pq(p, q)
    gm = (s * (p - q) - (p + q)) / (2.0 * kappa)
    gp = (s * (p - q) + (p + q)) / (2.0 * kappa)
    near = np.abs(p - q) < PQ_MERGE * (p + q)
    out = np.empty(p.shape)
    far = ~near
    if far.any():
        pf, qf = p[far], q[far]
        log_pref = np.log(pf * qf) - math.log(4.0 * math.pi ** 2 * kappa ** 2) - 2.0 * np.log(np.abs(pf - qf))
        out[far] = np.exp(log_pref + log_abs_beta_imag_sq(gm[far], gp[far]))
    if near.any():
        pn, qn = p[near], q[near]
        x = math.pi * s * (pn - qn) / kappa
        log_g = log_abs_gamma_imag_sq(gm[near]) + log_abs_gamma_imag_sq(gp[near])
        out[near] = (pn * qn * s * s / (4.0 * math.pi ** 2 * kappa ** 4)
                     * (1.0 + x * x / 6.0) * np.exp(log_g))
    return _out(out)


def beta_sq_df_double(s, kappa, p, q):
    """Double-sided Davies-Fulling spectrum ``|beta^R_pq|^2 + |beta^R_qp|^2``.

    Closed form ``4 s p q sinh[pi s (p-q)/kappa] / (pi a b kappa (p-q)
    (cosh[pi(p+q)/kappa] - cosh[pi s(p-q)/kappa]))``, evaluated as
    ``2 s^2 p q sinhc(x) / (a b kappa^2 sinh(pi a/2kappa) sinh(pi b/2kappa))``
    with ``x = pi s (p-q)/kappa``. ``s = 1`` goes to the light-speed form.
    """
    _check_s(s, allow_one=True)
    if s == 1:
        return beta_sq_df_lightspeed(kappa, p, q)
    p, q = _pq(p, q)
    a = p * (1 + s) + q * (1 - s)
    b = p * (1 - s) + q * (1 + s)
    x = math.pi * s * (p - q) / kappa
    near = np.abs(p - q) < PQ_MERGE * (p + q)
    ax = np.abs(x)
    log_sinhc = np.where(near, np.log1p(x * x / 6.0),
                         log_sinh(np.where(near, 1.0, ax)) - np.log(np.where(near, 1.0, ax)))
    log_val = (math.log(2.0 * s * s) + np.log(p) + np.log(q) + log_sinhc
               - np.log(a * b) - 2.0 * math.log(kappa)
               - log_sinh(math.pi * a / (2.0 * kappa)) - log_sinh(math.pi * b / (2.0 * kappa)))
    return _out(np.exp(log_val))


def beta_sq_df_lightspeed(kappa, p, q):
    """Light-speed (s = 1) Davies-Fulling spectrum.

    ``(1 / (pi kappa (p-q))) [1/(e^{2 pi q/kappa} - 1) - 1/(e^{2 pi p/kappa} - 1)]``;
    the Planck difference is rewritten as
    ``2 sinh(pi(p-q)/kappa) e^{-pi(p+q)/kappa} / (expm1(-2 pi p/kappa) expm1(-2 pi q/kappa))``.
    """
    p, q = _pq(p, q)
    x = math.pi * (p - q) / kappa
    X = math.pi * (p + q) / kappa
    den = np.expm1(-2.0 * math.pi * p / kappa) * np.expm1(-2.0 * math.pi * q / kappa)
    near = np.abs(p - q) < PQ_MERGE * (p + q)
    safe = np.where(near, 1.0, p - q)
    ratio = np.where(near, (math.pi / kappa) * (1.0 + x * x / 6.0) * np.exp(-X),
                     sinh_exp(x, X) / safe)
    return _out(2.0 * ratio / (math.pi * kappa * den))


def beta_sq_df_high_frequency(kappa, p, q):
    """``q >> p`` limit of the light-speed spectrum: ``(1/pi kappa q) / (e^{2 pi p/kappa} - 1)``."""
    p, q = _pq(p, q)
    return _out(1.0 / (math.pi * kappa * q * np.expm1(2.0 * math.pi * p / kappa)))


def beta_sq_df_low_frequency(kappa, p, q):
    """``q << p`` limit of the light-speed spectrum: ``(1/pi kappa p) / (e^{2 pi q/kappa} - 1)``."""
    p, q = _pq(p, q)
    return _out(1.0 / (math.pi * kappa * p * np.expm1(2.0 * math.pi * q / kappa)))


# --- Walker-Davies and uniform acceleration ---------------------------------


def beta_sq_wd_right(A, B, p, q, cfg: QuadratureConfig = SPECTRAL_CONFIG):
    """``(2AB/pi^2) (q/(p+q)) sinh(pi p B) |K_{-1/2 + i p B}(A(p+q))|^2``."""
    if not A > B > 0:
        raise DomainError("Walker-Davies requires A > B > 0")
    p, q = _pq(p, q)
    x = A * (p + q)
    k_scaled = bessel_k_batch_scaled(-0.5, p * B, x, rel_tol=min(cfg.rel_tol, 1e-10))
    weight = sinh_exp(math.pi * p * B, 2.0 * x)  # sinh(pi p B) e^{-2x}
    val = (2.0 * A * B / math.pi ** 2) * (q / (p + q)) * weight * np.abs(k_scaled) ** 2
    return _out(val)


def beta_sq_wd_right_small_b(A, B, p, q):
    """Leading order in ``B/A``: ``(B/pi) q/(p+q)^2 sinh(pi p B) e^{-2A(p+q)}``."""
    p, q = _pq(p, q)
    return _out((B / math.pi) * q / (p + q) ** 2 * sinh_exp(math.pi * p * B, 2.0 * A * (p + q)))


def beta_sq_uniform_right(kappa, p, q):
    """``|K_1(2 sqrt(pq)/kappa)|^2 / (pi^2 kappa^2)``; depends on ``p q`` only."""
    if not kappa > 0:
        raise DomainError("kappa must be positive")
    p, q = _pq(p, q)
    z = 2.0 * np.sqrt(p * q) / kappa
    return _out(bessel_k1_sq(z) / (math.pi ** 2 * kappa ** 2))


def beta_sq_right(traj, p, q, cfg: QuadratureConfig = SPECTRAL_CONFIG):
    """Right-side spectrum for any trajectory with a known ``beta^R``."""
    if isinstance(traj, DaviesFulling):
        return beta_sq_df_right(traj.s, traj.kappa, p, q)
    if isinstance(traj, WalkerDavies):
        return beta_sq_wd_right(traj.A, traj.B, p, q, cfg)
    if isinstance(traj, UniformAcceleration):
        return beta_sq_uniform_right(traj.kappa, p, q)
    raise UnsupportedError(f"no Bogolubov spectrum implemented for {type(traj).__name__}")


# --- particle content and energy ---------------------------------------------


def wd_particle_density_closed_form(A, B, p):
    """``N_p ~ B^2 p [(1 + 2Ap) Gamma(0, 2Ap) - e^{-2Ap}]`` (leading order in B/A)."""
    p = np.asarray(p, dtype=float)
    y = 2.0 * A * p
    return _out(B * B * p * ((1.0 + y) * incomplete_gamma_zero(y) - np.exp(-y)))


def particle_spectrum_wd(A, B, p_grid=None, cfg: QuadratureConfig = SPECTRAL_CONFIG) -> ParticleSpectrum:
    """Right-side particle density ``N_p = int dq |beta^R_pq|^2`` and total count."""
    if not A > B > 0:
        raise DomainError("Walker-Davies requires A > B > 0")
    if p_grid is None:
        p_grid = np.geomspace(0.01, 10.0, 25) / A
    p_grid = np.asarray(p_grid, dtype=float)
    inner_cfg = cfg.tightened(10.0)
    scale = 1.0 / (2.0 * A)

    def density(p):
        res = integrate_1d_full(lambda q: beta_sq_wd_right(A, B, p, q, inner_cfg),
                                0.0, math.inf, inner_cfg, scale=scale)
        return res.value

    n_p = np.array([density(p) for p in p_grid])
    total = integrate_2d_iterated(lambda p, q: beta_sq_wd_right(A, B, p, q, inner_cfg),
                                  (0.0, math.inf), (0.0, math.inf), cfg,
                                  outer_scale=scale, inner_scale=scale, full_output=True)
    return ParticleSpectrum(
        p_grid=p_grid,
        n_p=n_p,
        n_p_closed_form=np.asarray(wd_particle_density_closed_form(A, B, p_grid)),
        n_tot=float(total.value),
        n_tot_error=float(total.error),
        n_tot_closed_form=B * B / (24.0 * A * A),
        meta={"A": A, "B": B, "side": "right"},
    )


def mirror_total_energy(traj, cfg: QuadratureConfig = SPECTRAL_CONFIG, full_output=False):
    """``int int p |beta_pq|^2 dp dq`` per unit hbar.

    Davies-Fulling uses the double-sided spectrum; Walker-Davies the right
    side only (the left side has no stated beta formula).
    """
    if isinstance(traj, UniformAcceleration):
        raise InfiniteEnergyError("uniformly accelerated mirror radiates infinite energy")
    if isinstance(traj, DaviesFulling):
        if traj.s >= 1:
            raise InfiniteEnergyError("light-speed mirror radiates infinite energy")
        s, k = traj.s, traj.kappa

        def f(p, q):
            return p * beta_sq_df_double(s, k, p, q)

        # the p = q ridge is smooth but sharp for small kappa scales; seed it.
        # Off the ridge the spectrum decays as e^{-pi (1-s) q / kappa}.
        scale = k / (math.pi * (1.0 - s))
        res = integrate_2d_iterated(
            f, (0.0, math.inf), (0.0, math.inf), cfg,
            outer_scale=scale, inner_scale=scale,
            inner_breakpoints=lambda p: (p,), full_output=True)
    elif isinstance(traj, WalkerDavies):
        A, B = traj.A, traj.B
        inner_cfg = cfg.tightened(10.0)

        def f(p, q):
            return p * beta_sq_wd_right(A, B, p, q, inner_cfg)

        scale = 1.0 / (2.0 * A)
        res = integrate_2d_iterated(f, (0.0, math.inf), (0.0, math.inf), cfg,
                                    outer_scale=scale, inner_scale=scale, full_output=True)
    else:
        raise UnsupportedError(f"mirror energy not defined for {type(traj).__name__}")
    return res if full_output else res.value


def wd_right_energy_reference(traj: WalkerDavies) -> float:
    return wd_energy_right(traj)
