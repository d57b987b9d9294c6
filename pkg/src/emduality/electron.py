"""Photon spectral distributions ``dI/dOmega`` of a rectilinearly moving charge.

Every spectrum is available two ways: through the mirror recipe
``dI/dOmega = (omega^2 / 4 pi) |beta^R_pq|^2`` with
``p, q = omega (1 +/- cos theta) / 2``, and through its own closed form.
A third, independent route evaluates the Fourier transform of the current
numerically. Values are per unit ``e^2``; ``cos_theta`` is measured from the
``+z`` axis while the charge recedes towards ``-z``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ConvergenceError,
    DomainError,
    DualityError,
    InfiniteEnergyError,
    InfiniteSpectrumError,
    UnsupportedError,
)
from .kinematics import DaviesFulling, UniformAcceleration, WalkerDavies
from .mirror import PQ_MERGE, SPECTRAL_CONFIG, ModePair, beta_sq_right
from .numerics import (
    QuadratureConfig,
    bessel_k1_sq,
    bessel_k_batch_scaled,
    integrate_1d_full,
    integrate_2d_iterated,
    log_abs_gamma_imag_sq,
    sinh_exp,
    sinhc,
)

FOUR_PI = 4.0 * math.pi
# Regulator ladder (in units of kappa) for the time-domain Fourier oracle.
EPS_LADDER = (1e-2, 5e-3, 2.5e-3, 1.25e-3, 6.25e-4)

_GL_X15, _GL_W15 = np.polynomial.legendre.leggauss(15)
_GL_X10, _GL_W10 = np.polynomial.legendre.leggauss(10)


@dataclass(frozen=True)
class PhotonMode:
    """Photon frequency and direction cosine; ``k_z = omega cos_theta``."""

    omega: float
    cos_theta: float

    def __post_init__(self):
        if not self.omega > 0:
            raise DomainError("photon frequency must be positive")
        if not -1.0 <= self.cos_theta <= 1.0:
            raise DomainError("cos_theta must lie in [-1, 1]")

    @classmethod
    def from_angle(cls, omega, theta):
        return cls(omega, math.cos(theta))

    @property
    def k_z(self) -> float:
        return self.omega * self.cos_theta

    @property
    def sin_theta(self) -> float:
        return math.sqrt((1.0 - self.cos_theta) * (1.0 + self.cos_theta))


def split_frequency(omega, cos_theta):
    """``p = omega (1 + c)/2`` and ``q = omega (1 - c)/2`` with ``p + q == omega``.

    The larger of the two is formed first; the smaller is the exact
    difference ``omega - larger`` so the sum reproduces ``omega`` bit for bit.
    """
    omega = np.asarray(omega, dtype=float)
    c = np.asarray(cos_theta, dtype=float)
    big = 0.5 * omega * (1.0 + np.abs(c))
    small = omega - big
    p = np.where(c >= 0, big, small)
    q = np.where(c >= 0, small, big)
    if p.ndim == 0:
        return float(p), float(q)
    return p, q


def mode_map(mode: PhotonMode) -> ModePair:
    """Mirror mode pair of a photon mode; see :func:`split_frequency`."""
    p, q = split_frequency(mode.omega, mode.cos_theta)
    return ModePair(p, q)


def _grid(omega, cos_theta):
    omega = np.asarray(omega, dtype=float)
    c = np.asarray(cos_theta, dtype=float)
    if np.any(omega <= 0) or not np.all(np.isfinite(omega)):
        raise DomainError("photon frequencies must be finite and positive")
    if np.any(np.abs(c) > 1):
        raise DomainError("cos_theta must lie in [-1, 1]")
    return np.broadcast_arrays(omega, c)


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


# --- closed forms ------------------------------------------------------------


def spectral_distribution_df(s, kappa, omega, cos_theta, lightspeed=False):
    """Davies-Fulling ``dI/dOmega``.

    ``s sin^2 / (8 pi^2 c (1 - s^2 c^2)) (omega/kappa) [n(y_-) - n(y_+)]``
    with Bose factors ``n(y) = 1/(e^y - 1)`` at ``y_pm = pi omega (1 +/- s c)/kappa``.
    The bracket over ``c`` is evaluated as
    ``2 sinh(x) e^{-X} / c / (expm1(-y_-) expm1(-y_+))`` with
    ``x = pi omega s c / kappa`` and ``X = pi omega / kappa``, switching to its
    series in ``x`` when ``|c| < 1e-6``.

    ``s = 1`` requires ``lightspeed=True``; the spectrum then diverges along
    ``cos_theta = +/- 1``.
    """
    if not (0 < s < 1 or (s == 1 and lightspeed)):
        raise DomainError("Davies-Fulling spectrum needs 0 < s < 1 (s = 1 with lightspeed=True)")
    if not kappa > 0:
        raise DomainError("kappa must be positive")
    omega, c = _grid(omega, cos_theta)
    sin2 = (1.0 - c) * (1.0 + c)
    X = math.pi * omega / kappa
    x = s * c * X
    one_m = 1.0 - s * c
    one_p = 1.0 + s * c
    if s == 1 and np.any(sin2 == 0):
        raise DomainError("light-speed spectrum diverges along the axis")
    den = np.expm1(-X * one_m) * np.expm1(-X * one_p)
    tiny = np.abs(c) < PQ_MERGE
    safe_c = np.where(tiny, 1.0, c)
    over_c = np.where(tiny, s * X * (1.0 + x * x / 6.0) * np.exp(-X), sinh_exp(x, X) / safe_c)
    with np.errstate(invalid="ignore", divide="ignore"):
        bracket = 2.0 * over_c / den
        val = s * sin2 / (8.0 * math.pi ** 2 * one_m * one_p) * (omega / kappa) * bracket
    val = np.where(sin2 == 0, 0.0, val)
    return _out(val)


def spectral_distribution_df_redshift(s, kappa, omega, cos_theta):
    """Small-angle, ``s -> 1`` form: ``s sin^2 / (8 pi^2 (1 - s^2)) (omega/kappa) / (e^{pi omega (1-s)/kappa} - 1)``."""
    omega, c = _grid(omega, cos_theta)
    sin2 = (1.0 - c) * (1.0 + c)
    val = (s * sin2 / (8.0 * math.pi ** 2 * (1.0 - s) * (1.0 + s)) * (omega / kappa)
           / np.expm1(math.pi * omega * (1.0 - s) / kappa))
    return _out(val)


def _wd_log_kernel(A, B, omega, c):
    """``ln[ sinh(pi nu) |K_{-1/2 + i nu}(omega A)|^2 ]`` with ``nu = omega (1+c) B / 2``."""
    nu = 0.5 * omega * (1.0 + c) * B
    x = omega * A
    ks = bessel_k_batch_scaled(-0.5, nu, x)
    y = math.pi * nu
    with np.errstate(divide="ignore"):
        # ln sinh(y) - 2x, with sinh(0) = 0 giving -inf
        log_w = y - 2.0 * x - math.log(2.0) + np.log(-np.expm1(-2.0 * y))
        return log_w + 2.0 * np.log(np.abs(ks))


def spectral_distribution_wd(A, B, omega, cos_theta, cfg: QuadratureConfig = SPECTRAL_CONFIG):
    """Walker-Davies ``dI/dOmega``.

    ``omega^2 A B (1 - c) / (4 pi^3) sinh(pi omega (1+c) B/2)
    |K_{-1/2 + i omega (1+c) B/2}(omega A)|^2``, assembled in log space.
    """
    if not A > B > 0:
        raise DomainError("Walker-Davies requires A > B > 0")
    omega, c = _grid(omega, cos_theta)
    log_k = _wd_log_kernel(A, B, omega, c)
    with np.errstate(divide="ignore"):
        log_pref = 2.0 * np.log(omega) + math.log(A * B / (4.0 * math.pi ** 3)) + np.log(1.0 - c)
        val = np.exp(log_pref + log_k)
    return _out(val)


def spectral_distribution_wd_small_b(A, B, omega, cos_theta):
    """Leading order in ``B/A``: ``omega B (1-c)/(8 pi^2) sinh(pi omega (1+c) B/2) e^{-2 A omega}``."""
    omega, c = _grid(omega, cos_theta)
    val = omega * B * (1.0 - c) / (8.0 * math.pi ** 2) * sinh_exp(0.5 * math.pi * omega * (1.0 + c) * B,
                                                                  2.0 * A * omega)
    return _out(val)


def _sin_theta(c):
    return np.sqrt((1.0 - c) * (1.0 + c))


def spectral_distribution_uniform(kappa, omega, cos_theta):
    """Uniform acceleration ``dI/dOmega = omega^2 K_1(omega sin(theta)/kappa)^2 / (4 pi^3 kappa^2)``.

    Poles along the axis raise DomainError.
    """
    if not kappa > 0:
        raise DomainError("kappa must be positive")
    omega, c = _grid(omega, cos_theta)
    sin_t = _sin_theta(c)
    if np.any(sin_t == 0):
        raise DomainError("uniform-acceleration spectrum has poles at theta = 0 and pi")
    val = omega ** 2 * bessel_k1_sq(omega * sin_t / kappa) / (4.0 * math.pi ** 3 * kappa ** 2)
    return _out(val)


def uniform_ir_limit(cos_theta):
    """``omega -> 0`` value of the uniform spectrum: ``1/(4 pi^3 sin^2 theta)``."""
    c = np.asarray(cos_theta, dtype=float)
    return _out(1.0 / (4.0 * math.pi ** 3 * (1.0 - c) * (1.0 + c)))


def uniform_uv_limit(kappa, omega, cos_theta):
    """``omega -> inf`` form ``omega e^{-2 omega sin(theta)/kappa} / (8 pi^2 kappa sin theta)``."""
    omega, c = _grid(omega, cos_theta)
    sin_t = _sin_theta(c)
    return _out(omega * np.exp(-2.0 * omega * sin_t / kappa) / (8.0 * math.pi ** 2 * kappa * sin_t))


def spectral_distribution(traj, omega, cos_theta, cfg: QuadratureConfig = SPECTRAL_CONFIG):
    """Closed-form ``dI/dOmega`` for any trajectory with a known spectrum."""
    if isinstance(traj, DaviesFulling):
        return spectral_distribution_df(traj.s, traj.kappa, omega, cos_theta, lightspeed=traj.lightspeed)
    if isinstance(traj, WalkerDavies):
        return spectral_distribution_wd(traj.A, traj.B, omega, cos_theta, cfg)
    if isinstance(traj, UniformAcceleration):
        return spectral_distribution_uniform(traj.kappa, omega, cos_theta)
    raise UnsupportedError(f"no spectral distribution for {type(traj).__name__}")


def spectral_distribution_recipe(traj, omega, cos_theta, cfg: QuadratureConfig = SPECTRAL_CONFIG):
    """``dI/dOmega`` built from the right-side mirror spectrum via the duality map.

    On the axis one of ``p, q`` vanishes. The Davies-Fulling and
    Walker-Davies spectra vanish there; uniform acceleration has a pole.
    """
    omega, c = _grid(omega, cos_theta)
    p, q = split_frequency(omega, c)
    p = np.asarray(p)
    q = np.asarray(q)
    edge = (p == 0) | (q == 0)
    if np.any(edge) and isinstance(traj, UniformAcceleration):
        raise DomainError("uniform-acceleration spectrum has poles at theta = 0 and pi")
    out = np.zeros(omega.shape)
    inner = ~edge
    if inner.any():
        beta = beta_sq_right(traj, p[inner], q[inner], cfg)
        out[inner] = omega[inner] ** 2 / FOUR_PI * beta
    return _out(out)


# --- Fourier transform of the current ----------------------------------------


@dataclass(frozen=True)
class FourierCurrent:
    """Regulated, extrapolated ``j_z(omega, k_z)`` per unit charge."""

    value: complex
    error: float
    eps: tuple
    estimates: tuple

    @property
    def abs_sq(self) -> float:
        return abs(self.value) ** 2


def _current_pieces(traj, omega, c):
    """Velocity/position callables plus asymptotic speed and acceleration scale."""
    if isinstance(traj, DaviesFulling):
        s, k = traj.s, traj.kappa

        def vz(t):
            x = k * t
            ax = np.abs(x)
            log_cosh = ax + np.log1p(np.exp(-2.0 * ax)) - math.log(2.0)
            return -s * np.tanh(x), -(s / k) * log_cosh

        return vz, s, k
    if isinstance(traj, UniformAcceleration):
        k = traj.kappa

        def vz(t):
            x = k * t
            root = np.sqrt(1.0 + x * x)
            # 1 - sqrt(1 + x^2) without cancellation
            return -x / root, -(x * x) / (k * (1.0 + root))

        return vz, 1.0, k
    raise UnsupportedError("Fourier-current oracle implemented for Davies-Fulling and uniform acceleration")


def _richardson(values):
    """Neville table for ``eps_k = eps_0 / 2^k``, linear leading error."""
    table = [list(values)]
    for m in range(1, len(values)):
        prev = table[-1]
        fac = 2.0 ** m
        table.append([(fac * prev[i + 1] - prev[i]) / (fac - 1.0) for i in range(len(prev) - 1)])
    best = table[-1][0]
    err = abs(best - table[-2][-1]) if len(table) > 1 else math.inf
    return best, err


def fourier_current(traj, omega, cos_theta, eps_ladder=EPS_LADDER, chunk=20000) -> FourierCurrent:
    """Numerical ``j_z = int v(t) exp(-i (omega t - k_z z(t))) dt`` (per unit charge).

    The integrand does not decay, so it is damped by ``exp(-eps |t|)``; the
    integral is evaluated for every ``eps`` of the ladder (scaled by
    ``kappa``) and extrapolated to ``eps -> 0``. Each ``eps`` level is a
    composite 15-point Gauss-Legendre sum over half-period panels out to
    ``exp(-eps |t|) < 1e-17``, checked against a 10-point rule.
    """
    mode = PhotonMode(omega, cos_theta)
    vz, v_inf, kappa = _current_pieces(traj, omega, cos_theta)
    k = mode.k_z
    eps = np.asarray(eps_ladder, dtype=float) * kappa
    if len(eps) < 2 or np.any(np.diff(eps) >= 0):
        raise DomainError("eps ladder must be decreasing with at least two levels")
    if not np.allclose(eps[:-1] / eps[1:], 2.0):
        raise DomainError("eps ladder must halve at every level")
    rate_max = omega * (1.0 + abs(cos_theta) * v_inf)
    T = 40.0 / eps[-1]
    h = min(math.pi / rate_max, 0.5 / kappa)
    n_panels = int(math.ceil(T / h))
    h = T / n_panels

    def panel_sums(xg, wg):
        acc = np.zeros(len(eps), dtype=complex)
        for start in range(0, n_panels, chunk):
            idx = np.arange(start, min(start + chunk, n_panels))
            t = (idx[:, None] + 0.5 * (1.0 + xg[None, :])) * h
            t = t.ravel()
            w = np.tile(wg, len(idx)) * (0.5 * h)
            for sign in (1.0, -1.0):
                v, z = vz(sign * t)
                f = v * np.exp(-1j * (omega * sign * t - k * z)) * w
                acc += np.exp(-np.outer(eps, t)) @ f
        return acc

    hi = panel_sums(_GL_X15, _GL_W15)
    lo = panel_sums(_GL_X10, _GL_W10)
    quad_err = float(np.max(np.abs(hi - lo)))
    best, rich_err = _richardson(list(hi))
    return FourierCurrent(value=complex(best), error=float(rich_err + quad_err),
                          eps=tuple(float(e) for e in eps), estimates=tuple(complex(v) for v in hi))


def fourier_current_sq_df(s, kappa, omega, cos_theta):
    """Closed-form ``|j_z|^2`` (per unit ``e^2``) for Davies-Fulling motion.

    ``omega^2 / (4 kappa^2 k^2) |B(-i(omega - s k)/2kappa, i(omega + s k)/2kappa)|^2``
    rewritten so the ``k -> 0`` point is regular:
    ``omega^2 s^2 / (4 kappa^4) |Gamma(i a)|^2 |Gamma(i b)|^2 sinhc(pi s k / kappa)``.
    """
    omega, c = _grid(omega, cos_theta)
    k = omega * c
    a = (omega - s * k) / (2.0 * kappa)
    b = (omega + s * k) / (2.0 * kappa)
    log_g = log_abs_gamma_imag_sq(a) + log_abs_gamma_imag_sq(b)
    val = omega ** 2 * s * s / (4.0 * kappa ** 4) * np.exp(log_g) * sinhc(math.pi * s * k / kappa)
    return _out(val)


def fourier_current_sq_uniform(kappa, omega, cos_theta):
    """Closed-form ``|j_z|^2 = 4 K_1(omega sin(theta)/kappa)^2 / (kappa^2 sin^2 theta)``."""
    omega, c = _grid(omega, cos_theta)
    sin_t = _sin_theta(c)
    if np.any(sin_t == 0):
        raise DomainError("uniform-acceleration current has poles at theta = 0 and pi")
    return _out(4.0 * bessel_k1_sq(omega * sin_t / kappa) / (kappa * sin_t) ** 2)


def spectral_from_current(omega, cos_theta, current_sq):
    """``dI/dOmega = omega^2 sin^2(theta) |j_z|^2 / (16 pi^3)``."""
    c = np.asarray(cos_theta, dtype=float)
    return _out(np.asarray(omega) ** 2 * (1.0 - c) * (1.0 + c) * np.asarray(current_sq) / (16.0 * math.pi ** 3))


# --- grids -------------------------------------------------------------------


METHODS = ("recipe", "closed_form", "fourier_oracle")


@dataclass(frozen=True)
class SpectralGrid:
    """``dI/dOmega`` sampled on ``omega x cos_theta``; NaN marks failed points."""

    trajectory: dict
    omega: np.ndarray
    cos_theta: np.ndarray
    values: np.ndarray
    method: str
    n_failed: int = 0
    meta: dict = field(default_factory=dict)


def _strictly_increasing(x, name):
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size < 1 or np.any(np.diff(x) <= 0):
        raise DomainError(f"{name} samples must be strictly increasing")
    return x


def _oracle_point(traj, omega, c):
    j = fourier_current(traj, omega, c)
    return spectral_from_current(omega, c, j.abs_sq)


def build_spectral_grid(traj, omega, cos_theta, method="closed_form",
                        cfg: QuadratureConfig = SPECTRAL_CONFIG) -> SpectralGrid:
    """Evaluate ``dI/dOmega`` on a rectangular grid (rows: omega, columns: cos_theta).

    Points whose evaluation raises a package error are stored as NaN and
    counted in ``n_failed``; they are never silently zeroed.
    """
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}")
    omega = _strictly_increasing(omega, "omega")
    cos_theta = _strictly_increasing(cos_theta, "cos_theta")
    W, C = np.meshgrid(omega, cos_theta, indexing="ij")
    values = None
    if method == "fourier_oracle":
        def point(w, c):
            return _oracle_point(traj, w, c)
    else:
        func = spectral_distribution_recipe if method == "recipe" else spectral_distribution

        def point(w, c):
            return func(traj, w, c, cfg)
        try:
            values = np.asarray(func(traj, W, C, cfg), dtype=float)
        except DualityError:
            values = None
    if values is None:
        values = np.empty(W.shape)
        for idx in np.ndindex(W.shape):
            try:
                values[idx] = point(float(W[idx]), float(C[idx]))
            except DualityError:
                values[idx] = math.nan
    n_failed = int(np.count_nonzero(np.isnan(values)))
    return SpectralGrid(trajectory=traj.describe(), omega=omega, cos_theta=cos_theta,
                        values=values, method=method, n_failed=n_failed,
                        meta={"units": "per e^2"})


# --- angular and frequency integrals -----------------------------------------


def _omega_scale(traj, c):
    """Decay length in omega of ``dI/dOmega`` at direction cosine ``c``."""
    if isinstance(traj, DaviesFulling):
        return traj.kappa / (math.pi * max(1.0 - traj.s * abs(c), 1e-12))
    if isinstance(traj, WalkerDavies):
        beta = min((1.0 + c) * traj.B / (2.0 * traj.A), 1.0)
        rate = 2.0 * (math.sqrt(1.0 - beta * beta) + beta * math.asin(beta)) - math.pi * beta
        return 1.0 / (traj.A * max(rate, 1e-3))
    return traj.kappa / (2.0 * math.sqrt(max((1.0 - c) * (1.0 + c), 1e-300)))


def _check_spectral(traj):
    if not isinstance(traj, (DaviesFulling, WalkerDavies, UniformAcceleration)):
        raise UnsupportedError(f"no spectral distribution for {type(traj).__name__}")


def angular_energy(traj, theta, cfg: QuadratureConfig = SPECTRAL_CONFIG) -> float:
    """``E(Omega) = int_0^inf dI/dOmega d omega`` at polar angle ``theta``."""
    _check_spectral(traj)
    c = math.cos(theta)
    if isinstance(traj, UniformAcceleration) and (1.0 - c) * (1.0 + c) == 0:
        raise DomainError("uniform-acceleration spectrum has poles at theta = 0 and pi")
    if isinstance(traj, DaviesFulling) and traj.lightspeed and traj.s == 1:
        raise InfiniteEnergyError("light-speed mirror radiates infinite energy")
    if (1.0 - c) * (1.0 + c) == 0 and not isinstance(traj, WalkerDavies):
        return 0.0
    res = integrate_1d_full(lambda w: np.asarray(spectral_distribution(traj, w, c, cfg)),
                            0.0, math.inf, cfg, scale=_omega_scale(traj, c))
    return float(res.value)


def _cos_integral(traj, omega, lo, hi, cfg):
    res = integrate_1d_full(lambda c: np.asarray(spectral_distribution(traj, omega, c, cfg)),
                            lo, hi, cfg, breakpoints=(0.0,))
    return float(res.value)


def detect_axis_divergence(traj, omega, cfg: QuadratureConfig = SPECTRAL_CONFIG,
                           cutoffs=(1e-2, 1e-4, 1e-6, 1e-8)):
    """Angle integral over ``|cos theta| <= 1 - delta`` for shrinking ``delta``.

    Returns ``(partials, diverges)``. A convergent integral has increments
    that shrink faster than the cut-off; a logarithmic axis singularity
    gives increments that stay roughly constant per decade of ``delta``.
    """
    partials = [2.0 * math.pi * _cos_integral(traj, omega, -1.0 + d, 1.0 - d, cfg) for d in cutoffs]
    incs = np.diff(partials)
    diverges = bool(np.all(incs > 0) and incs[-1] > 0.5 * incs[0])
    return partials, diverges


def frequency_spectrum(traj, omega, cfg: QuadratureConfig = SPECTRAL_CONFIG) -> float:
    """``I(omega) = 2 pi int_{-1}^{1} dI/dOmega d cos(theta)``.

    Uniform acceleration is probed with :func:`detect_axis_divergence` and
    raises InfiniteSpectrumError when the axis singularity is confirmed.
    """
    _check_spectral(traj)
    if not omega > 0:
        raise DomainError("photon frequency must be positive")
    if isinstance(traj, UniformAcceleration):
        partials, diverges = detect_axis_divergence(traj, omega, cfg)
        if diverges:
            raise InfiniteSpectrumError(
                "I(omega) diverges: dI/dOmega ~ 1/sin^2(theta) along the axis",
                diagnostics={"omega": omega, "partials": partials})
        raise ConvergenceError("axis behaviour of the uniform spectrum could not be classified",
                               estimate=partials[-1])
    return 2.0 * math.pi * _cos_integral(traj, omega, -1.0, 1.0, cfg)


def total_energy_spectral(traj, cfg: QuadratureConfig = SPECTRAL_CONFIG, full_output=False):
    """``2 pi int d cos(theta) int d omega dI/dOmega`` per unit ``e^2``."""
    _check_spectral(traj)
    if isinstance(traj, UniformAcceleration):
        raise InfiniteEnergyError("uniform proper acceleration radiates infinite total energy")
    if isinstance(traj, DaviesFulling) and traj.s >= 1:
        raise InfiniteEnergyError("light-speed Davies-Fulling radiates infinite energy")

    def f(c, w):
        return np.asarray(spectral_distribution(traj, w, c, cfg))

    res = integrate_2d_iterated(f, (-1.0, 1.0), (0.0, math.inf), cfg,
                                outer_breakpoints=(0.0,),
                                inner_scale=lambda c: _omega_scale(traj, c),
                                full_output=True)
    value = 2.0 * math.pi * float(res.value)
    if full_output:
        return value, 2.0 * math.pi * float(res.error)
    return value
