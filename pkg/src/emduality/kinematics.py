"""Worldlines and motion-derived quantities.

Four rectilinear trajectories are supported:

* ``DaviesFulling(s, kappa)``: ``z(t) = -(s/kappa) ln cosh(kappa t)``.
* ``WalkerDavies(A, B)``: ``t(z) = -z -/+ A sqrt(exp(-2z/B) - 1)``, handled
  through its lightcone form ``U(V) = V + B ln(1 + V^2/A^2)`` in which both
  ``t`` and ``z`` are explicit functions of the advanced time ``V``.
* ``UniformAcceleration(kappa)``: ``z(t) = (1 - sqrt(1 + kappa^2 t^2)) / kappa``.
* ``CarlitzWilley(kappa)``: known only through proper time, ``alpha = 1/tau``
  with constant peel ``kappa``.

All energies, powers and forces are per unit ``e^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Union

import numpy as np

from .errors import DomainError, InfiniteEnergyError, UnsupportedError
from .numerics import DEFAULT_CONFIG, QuadratureConfig, integrate_1d_full, newton_bisect

SIX_PI = 6.0 * math.pi


# --- trajectory variants ----------------------------------------------------


@dataclass(frozen=True)
class DaviesFulling:
    """Asymptotically inertial worldline approaching final speed ``s``.

    ``lightspeed=True`` admits the limiting case ``s = 1`` (light-speed
    spectra and the late-time peel analysis); it is rejected otherwise.
    """

    s: float
    kappa: float = 1.0
    lightspeed: bool = False
    tag = "df"

    def __post_init__(self):
        if not self.kappa > 0:
            raise DomainError("Davies-Fulling requires kappa > 0")
        if self.lightspeed:
            if not 0.0 < self.s <= 1.0:
                raise DomainError("Davies-Fulling requires 0 < s <= 1")
        elif not 0.0 < self.s < 1.0:
            raise DomainError("Davies-Fulling requires 0 < s < 1 (pass lightspeed=True for s = 1)")

    def describe(self):
        return {"variant": "davies_fulling", "s": self.s, "kappa": self.kappa}


@dataclass(frozen=True)
class WalkerDavies:
    """Asymptotically resting worldline with parameters ``A > B > 0``."""

    A: float
    B: float
    tag = "wd"

    def __post_init__(self):
        if not (self.A > self.B > 0):
            raise DomainError("Walker-Davies requires A > B > 0")

    @classmethod
    def from_peel(cls, kappa: float, v_max: float) -> "WalkerDavies":
        A, B = WdParametrization(kappa, v_max).to_ab()
        return cls(A, B)

    @property
    def kappa(self) -> float:
        return math.pi / self.A

    @property
    def v_max(self) -> float:
        """Largest speed reached, on the approach branch ``t < 0``."""
        return self.B / (2.0 * self.A - self.B)

    def describe(self):
        return {"variant": "walker_davies", "A": self.A, "B": self.B,
                "kappa": self.kappa, "v_max": self.v_max}


@dataclass(frozen=True)
class UniformAcceleration:
    kappa: float = 1.0
    tag = "uniform"

    def __post_init__(self):
        if not self.kappa > 0:
            raise DomainError("uniform acceleration requires kappa > 0")

    def describe(self):
        return {"variant": "uniform_acceleration", "kappa": self.kappa}


@dataclass(frozen=True)
class CarlitzWilley:
    kappa: float = 1.0
    tag = "cw"

    def __post_init__(self):
        if not self.kappa > 0:
            raise DomainError("Carlitz-Willey requires kappa > 0")

    def describe(self):
        return {"variant": "carlitz_willey", "kappa": self.kappa}


Trajectory = Union[DaviesFulling, WalkerDavies, UniformAcceleration, CarlitzWilley]


@dataclass(frozen=True)
class WdParametrization:
    """Walker-Davies parameters in terms of peel scale and maximum speed."""

    kappa: float
    v_max: float

    def __post_init__(self):
        if not self.kappa > 0 or not 0 < self.v_max < 1:
            raise DomainError("need kappa > 0 and 0 < v_max < 1")

    def to_ab(self) -> tuple[float, float]:
        A = math.pi / self.kappa
        B = 2.0 * math.pi * self.v_max / (self.kappa * (1.0 + self.v_max))
        return A, B

    @classmethod
    def from_ab(cls, A: float, B: float) -> "WdParametrization":
        ratio = B / A  # = 2 v / (1 + v)
        return cls(math.pi / A, ratio / (2.0 - ratio))


@dataclass(frozen=True)
class KinematicState:
    """Everything about the motion at one instant.

    ``alpha_dot`` is the proper-time derivative of the proper acceleration;
    ``jerk_sq`` is the invariant ``alpha^4 - alpha_dot^2``.
    """

    t: float
    tau: float
    z: float
    v: float
    eta: float
    gamma: float
    w: float
    alpha: float
    alpha_dot: float
    peel: float
    jerk_sq: float


@dataclass(frozen=True)
class LightconePoint:
    U: float
    V: float


def jerk_modulus_sq(alpha, alpha_dot):
    """Proper jerk invariant ``J^2 = alpha^4 - alpha_dot^2``."""
    return alpha ** 4 - alpha_dot ** 2


def _state(t, tau, z, eta, alpha, alpha_dot, peel):
    gamma = math.cosh(eta)
    w = math.sinh(eta)
    v = math.tanh(eta)
    if not abs(v) < 1.0 and not math.isinf(eta):
        raise AssertionError(f"superluminal state v={v}")
    return KinematicState(t=t, tau=tau, z=z, v=v, eta=eta, gamma=gamma, w=w,
                          alpha=alpha, alpha_dot=alpha_dot, peel=peel,
                          jerk_sq=jerk_modulus_sq(alpha, alpha_dot))


# --- Davies-Fulling ---------------------------------------------------------


def _df_pieces(s, x):
    """Stable ``u = tanh x``, ``1 - s u``, ``1 + s u`` and ``sech^2 x``."""
    u = math.tanh(x)
    one_minus_u = 2.0 / (1.0 + math.exp(2.0 * x)) if x < 350 else 2.0 * math.exp(-2.0 * x)
    one_plus_u = 2.0 / (1.0 + math.exp(-2.0 * x)) if x > -350 else 2.0 * math.exp(2.0 * x)
    a_minus = (1.0 - s) + s * one_minus_u
    a_plus = (1.0 - s) + s * one_plus_u
    sech2 = one_minus_u * one_plus_u
    return u, a_minus, a_plus, sech2


def _log_cosh(x):
    ax = abs(x)
    return ax + math.log1p(math.exp(-2.0 * ax)) - math.log(2.0)


def _df_tau(traj: DaviesFulling, t: float) -> float:
    s, k = traj.s, traj.kappa
    u, a_minus, a_plus, _ = _df_pieces(s, k * t)
    if s == 1.0:
        return math.asin(u) / k
    c = math.sqrt(1.0 - s * s)
    root = math.sqrt(a_minus * a_plus)
    # atanh(u c / root) with root^2 - u^2 c^2 = sech^2, safe as u -> 1
    ath = math.copysign(math.log(root + abs(u) * c) + _log_cosh(k * t), u)
    return (s * math.asin(s * u) + c * ath) / k


def _df_state(traj: DaviesFulling, t: float) -> KinematicState:
    s, k = traj.s, traj.kappa
    x = k * t
    u, a_minus, a_plus, sech2 = _df_pieces(s, x)
    one_m_s2u2 = a_minus * a_plus
    # the log of the ratio is accurate near |s u| = 1, atanh elsewhere
    eta = -math.atanh(s * u) if abs(s * u) < 0.5 else -0.5 * math.log(a_plus / a_minus)
    alpha = -s * k * sech2 * one_m_s2u2 ** -1.5
    dalpha_dt = -s * k * k * u * sech2 * one_m_s2u2 ** -2.5 * (3.0 * s * s - 2.0 - s * s * u * u)
    gamma = one_m_s2u2 ** -0.5
    alpha_dot = gamma * dalpha_dt
    peel = -2.0 * k * s * sech2 / (a_plus ** 2 * a_minus)
    z = -(s / k) * _log_cosh(x)
    return _state(t, _df_tau(traj, t), z, eta, alpha, alpha_dot, peel)


def _df_peel_rate(traj: DaviesFulling, t: float) -> float:
    """``d peel / d tau`` from differentiating the explicit peel formula."""
    s, k = traj.s, traj.kappa
    u, a_minus, a_plus, sech2 = _df_pieces(s, k * t)
    peel = -2.0 * k * s * sech2 / (a_plus ** 2 * a_minus)
    dlog = k * (-2.0 * u - 2.0 * s * sech2 / a_plus + s * sech2 / a_minus)
    gamma = (a_minus * a_plus) ** -0.5
    return gamma * peel * dlog


# --- Walker-Davies ----------------------------------------------------------


def _wd_g(traj: WalkerDavies, V: float):
    """``g = dU/dV`` and its first two V-derivatives."""
    A2 = traj.A * traj.A
    B = traj.B
    den = A2 + V * V
    g = 1.0 + 2.0 * B * V / den
    g1 = 2.0 * B * (A2 - V * V) / den ** 2
    g2 = -4.0 * B * V * (3.0 * A2 - V * V) / den ** 3
    return g, g1, g2


def wd_t_of_v(traj: WalkerDavies, V: float) -> float:
    return V + 0.5 * traj.B * math.log1p((V / traj.A) ** 2)


def wd_z_of_v(traj: WalkerDavies, V: float) -> float:
    return -0.5 * traj.B * math.log1p((V / traj.A) ** 2)


def wd_advanced_time(traj: WalkerDavies, t: float) -> float:
    """Invert ``t(V)``; strictly increasing since ``dt/dV >= 1 - B/(2A) > 0``."""
    if t == 0.0:
        return 0.0
    dt_dv = lambda V: 1.0 + traj.B * V / (traj.A ** 2 + V * V)  # noqa: E731
    return newton_bisect(lambda V: wd_t_of_v(traj, V), dt_dv, t,
                         t - traj.B * (1.0 + math.log1p((t / traj.A) ** 2)), t + traj.B)


def wd_lightcone(traj: WalkerDavies, t: float) -> LightconePoint:
    V = wd_advanced_time(traj, t)
    return LightconePoint(U=wd_t_of_v(traj, V) - wd_z_of_v(traj, V), V=V)


def wd_z_of_t_branches(traj: WalkerDavies, z: float) -> tuple[float, float]:
    """Coordinate times ``(t_-, t_+)`` at which the worldline sits at ``z <= 0``."""
    if z > 0:
        raise DomainError("Walker-Davies worldline lives at z <= 0")
    root = traj.A * math.sqrt(math.expm1(-2.0 * z / traj.B))
    return -z - root, -z + root


def _wd_tau(traj: WalkerDavies, V: float) -> float:
    if V == 0.0:
        return 0.0
    f = lambda Vs: np.sqrt(1.0 + 2.0 * traj.B * Vs / (traj.A ** 2 + Vs * Vs))  # noqa: E731
    lo, hi = (0.0, V) if V > 0 else (V, 0.0)
    res = integrate_1d_full(f, lo, hi, DEFAULT_CONFIG.tightened(100.0),
                            breakpoints=np.linspace(lo, hi, 9)[1:-1])
    return res.value if V > 0 else -res.value


def _wd_state_v(traj: WalkerDavies, V: float, tau=None) -> KinematicState:
    g, g1, g2 = _wd_g(traj, V)
    eta = -0.5 * math.log(g)
    eta1 = -g1 / (2.0 * g)
    eta2 = -g2 / (2.0 * g) + g1 * g1 / (2.0 * g * g)
    alpha = eta1 / math.sqrt(g)
    alpha_dot = (eta2 + eta1 * eta1) / g
    peel = -g1 / (g * g)
    t = wd_t_of_v(traj, V)
    if tau is None:
        tau = _wd_tau(traj, V)
    return _state(t, tau, wd_z_of_v(traj, V), eta, alpha, alpha_dot, peel)


def _wd_peel_rate(traj: WalkerDavies, V: float) -> float:
    g, g1, g2 = _wd_g(traj, V)
    dpeel_dv = -g2 / g ** 2 + 2.0 * g1 * g1 / g ** 3
    return dpeel_dv / math.sqrt(g)


# --- uniform acceleration and Carlitz-Willey --------------------------------


def _ua_state(traj: UniformAcceleration, t: float) -> KinematicState:
    k = traj.kappa
    x = k * t
    root = math.hypot(1.0, x)
    eta = -math.asinh(x)
    z = -(x * x / (1.0 + root)) / k
    peel = -2.0 * k * math.exp(eta)
    return _state(t, math.asinh(x) / k, z, eta, -k, 0.0, peel)


def _cw_state(traj: CarlitzWilley, tau: float) -> KinematicState:
    if not tau > 0:
        raise DomainError("Carlitz-Willey kinematics need proper time tau > 0")
    k = traj.kappa
    eta = math.log(0.5 * k * tau)
    t = k * tau * tau / 8.0 + eta / k
    z = k * tau * tau / 8.0 - eta / k
    return _state(t, tau, z, eta, 1.0 / tau, -1.0 / (tau * tau), k)


# --- public operations ------------------------------------------------------


def state_at(traj: Trajectory, t: float) -> KinematicState:
    """Kinematic state at coordinate time ``t``.

    For Carlitz-Willey the argument is the proper time ``tau > 0``, the only
    parametrization in which that worldline is used.
    """
    if not math.isfinite(t):
        raise DomainError("time must be finite")
    if isinstance(traj, DaviesFulling):
        return _df_state(traj, t)
    if isinstance(traj, WalkerDavies):
        return _wd_state_v(traj, wd_advanced_time(traj, t))
    if isinstance(traj, UniformAcceleration):
        return _ua_state(traj, t)
    if isinstance(traj, CarlitzWilley):
        return _cw_state(traj, t)
    raise UnsupportedError(f"unknown trajectory {traj!r}")


def proper_time(traj: Trajectory, t: float) -> float:
    """Proper time elapsed since ``t = 0`` (where ``v = 0``)."""
    return state_at(traj, t).tau


def coordinate_time(traj: Trajectory, tau: float) -> float:
    """Inverse of :func:`proper_time`."""
    if isinstance(traj, CarlitzWilley):
        return _cw_state(traj, tau).t
    if isinstance(traj, UniformAcceleration):
        return math.sinh(traj.kappa * tau) / traj.kappa
    if isinstance(traj, DaviesFulling):
        if traj.s == 1.0 and abs(tau) >= math.pi / (2.0 * traj.kappa):
            raise DomainError("light-speed Davies-Fulling proper time is bounded by pi/(2 kappa)")
        f = lambda t: _df_tau(traj, t)  # noqa: E731
        df = lambda t: 1.0 / _df_state(traj, t).gamma  # noqa: E731
        return newton_bisect(f, df, tau, -abs(tau) - 1.0, abs(tau) + 1.0)
    if isinstance(traj, WalkerDavies):
        # dtau/dV = sqrt(g) and dt/dV = (1 + g)/2, both bounded away from 0.
        f = lambda V: _wd_tau(traj, V)  # noqa: E731
        df = lambda V: math.sqrt(_wd_g(traj, V)[0])  # noqa: E731
        V = newton_bisect(f, df, tau, -abs(tau) - 1.0, abs(tau) + 1.0, xtol=1e-14)
        return wd_t_of_v(traj, V)
    raise UnsupportedError(f"unknown trajectory {traj!r}")


def state_at_proper_time(traj: Trajectory, tau: float) -> KinematicState:
    if isinstance(traj, CarlitzWilley):
        return _cw_state(traj, tau)
    return state_at(traj, coordinate_time(traj, tau))


def peel_derivative(traj: Trajectory, tau: float) -> float:
    """Proper-time derivative of the peel ``2 alpha e^eta`` at proper time ``tau``.

    Obtained by differentiating each worldline's explicit peel formula
    rather than from ``alpha`` and ``alpha_dot``, so the identity
    ``dP/dtau = 2 e^eta (alpha^2 + alpha_dot)`` is a genuine check.
    """
    if isinstance(traj, CarlitzWilley):
        _cw_state(traj, tau)
        return 0.0
    t = coordinate_time(traj, tau)
    return peel_derivative_at_time(traj, t)


def peel_derivative_at_time(traj: Trajectory, t: float) -> float:
    """Same as :func:`peel_derivative` but located by coordinate time."""
    if isinstance(traj, DaviesFulling):
        return _df_peel_rate(traj, t)
    if isinstance(traj, WalkerDavies):
        return _wd_peel_rate(traj, wd_advanced_time(traj, t))
    if isinstance(traj, UniformAcceleration):
        st = _ua_state(traj, t)
        return 2.0 * traj.kappa ** 2 * math.exp(st.eta)
    if isinstance(traj, CarlitzWilley):
        return 0.0
    raise UnsupportedError(f"unknown trajectory {traj!r}")


def larmor_power(traj: Trajectory, t: float) -> float:
    """Larmor power ``alpha^2 / 6 pi`` per unit ``e^2``."""
    return state_at(traj, t).alpha ** 2 / SIX_PI


def self_force(traj: Trajectory, tau: float) -> float:
    """Radiation-reaction force ``alpha'(tau) / 6 pi`` per unit ``e^2``."""
    return state_at_proper_time(traj, tau).alpha_dot / SIX_PI


# --- total radiated energy ---------------------------------------------------


def _df_energy_series(s, k):
    # 24 pi E / kappa = sum_{n>=1} (2 + 1/(2n+1) + 3/(2n-1)) s^{2n}
    s2 = s * s
    total, term, n = 0.0, s2, 1
    while True:
        c = 2.0 + 1.0 / (2 * n + 1) + 3.0 / (2 * n - 1)
        inc = c * term
        total += inc
        if inc < 1e-18 * total:
            break
        n += 1
        term *= s2
    return k * total / (24.0 * math.pi)


def total_energy_closed_form(traj: Trajectory) -> float:
    """Closed-form radiated energy per unit ``e^2``.

    Davies-Fulling: ``(kappa/24 pi)[2 g^2 - 3 + (4 - 3/g^2) eta_s / s]`` with
    ``g`` the final Lorentz factor (a power series is used for ``s < 0.1``).
    Walker-Davies: ``B^2/(48 D^{3/2}) + 1/(24 sqrt D) - 1/(24 A)``,
    ``D = A^2 - B^2``, rearranged to avoid cancellation.
    """
    if isinstance(traj, DaviesFulling):
        s, k = traj.s, traj.kappa
        if s >= 1.0:
            raise InfiniteEnergyError("light-speed Davies-Fulling radiates infinite energy")
        if s < 0.1:
            return _df_energy_series(s, k)
        g2 = 1.0 / (1.0 - s * s)
        eta_s = math.atanh(s)
        return k / (24.0 * math.pi) * (2.0 * g2 - 3.0 + (4.0 - 3.0 / g2) * eta_s / s)
    if isinstance(traj, WalkerDavies):
        return wd_energy_right(traj) + wd_energy_left(traj)
    if isinstance(traj, UniformAcceleration):
        raise InfiniteEnergyError("uniform proper acceleration radiates infinite total energy")
    raise UnsupportedError("closed-form energy exists for Davies-Fulling and Walker-Davies only")


def wd_energy_right(traj: WalkerDavies) -> float:
    """First term of the Walker-Davies energy, radiated to the right of the mirror."""
    D = (traj.A - traj.B) * (traj.A + traj.B)
    return traj.B ** 2 / (48.0 * D ** 1.5)


def wd_energy_left(traj: WalkerDavies) -> float:
    """``1/(24 sqrt D) - 1/(24 A)``, the left-side remainder."""
    A, B = traj.A, traj.B
    rD = math.sqrt((A - B) * (A + B))
    return B * B / (24.0 * A * rD * (A + rD))


@dataclass(frozen=True)
class TimeDomainEnergy:
    power_route: float
    force_route: float
    power_error: float
    force_error: float


def energy_routes(traj: Trajectory, cfg: QuadratureConfig = DEFAULT_CONFIG) -> TimeDomainEnergy:
    """Radiated energy as ``int P dt`` and as ``-int F v dt``."""
    if isinstance(traj, UniformAcceleration):
        raise InfiniteEnergyError("uniform proper acceleration radiates infinite total energy")
    if isinstance(traj, CarlitzWilley):
        raise UnsupportedError("Carlitz-Willey is only used through proper-time kinematics")
    if isinstance(traj, DaviesFulling):
        if traj.s >= 1.0:
            raise InfiniteEnergyError("light-speed Davies-Fulling radiates infinite energy")
        return _df_energy_routes(traj, cfg)
    return _wd_energy_routes(traj, cfg)


def _df_arrays(traj, t):
    s, k = traj.s, traj.kappa
    x = k * np.asarray(t, dtype=float)
    u = np.tanh(x)
    one_minus_u = 2.0 / (1.0 + np.exp(np.minimum(2.0 * x, 700.0)))
    one_plus_u = 2.0 / (1.0 + np.exp(np.minimum(-2.0 * x, 700.0)))
    a_minus = (1.0 - s) + s * one_minus_u
    a_plus = (1.0 - s) + s * one_plus_u
    sech2 = one_minus_u * one_plus_u
    q = a_minus * a_plus
    alpha = -s * k * sech2 * q ** -1.5
    alpha_dot = q ** -0.5 * (-s * k * k * u * sech2 * q ** -2.5 * (3 * s * s - 2 - s * s * u * u))
    v = -s * u
    return alpha, alpha_dot, v


def _df_energy_routes(traj, cfg):
    # integrands are even in t
    def power(t):
        alpha, _, _ = _df_arrays(traj, t)
        return alpha * alpha / SIX_PI

    def force(t):
        _, alpha_dot, v = _df_arrays(traj, t)
        return -alpha_dot * v / SIX_PI

    L = 1.0 / traj.kappa
    rp = integrate_1d_full(power, 0.0, math.inf, cfg, scale=L)
    rf = integrate_1d_full(force, 0.0, math.inf, cfg, scale=L)
    return TimeDomainEnergy(2 * rp.value, 2 * rf.value, 2 * rp.error, 2 * rf.error)


def _wd_arrays(traj, V):
    V = np.asarray(V, dtype=float)
    A2, B = traj.A ** 2, traj.B
    den = A2 + V * V
    g = 1.0 + 2.0 * B * V / den
    g1 = 2.0 * B * (A2 - V * V) / den ** 2
    g2 = -4.0 * B * V * (3.0 * A2 - V * V) / den ** 3
    eta1 = -g1 / (2.0 * g)
    eta2 = -g2 / (2.0 * g) + g1 * g1 / (2.0 * g * g)
    alpha = eta1 / np.sqrt(g)
    alpha_dot = (eta2 + eta1 * eta1) / g
    dt_dv = 0.5 * (1.0 + g)
    dz_dv = -B * V / den
    return alpha, alpha_dot, dt_dv, dz_dv


def _wd_energy_routes(traj, cfg):
    # dt = t'(V) dV and v dt = z'(V) dV
    def power(V):
        alpha, _, dt_dv, _ = _wd_arrays(traj, V)
        return alpha * alpha * dt_dv / SIX_PI

    def force(V):
        _, alpha_dot, _, dz_dv = _wd_arrays(traj, V)
        return -alpha_dot * dz_dv / SIX_PI

    rcfg = replace(cfg, semi_infinite_map="rational")
    bps = [-traj.A, 0.0, traj.A]
    rp = integrate_1d_full(power, -math.inf, math.inf, rcfg, breakpoints=bps, scale=traj.A)
    rf = integrate_1d_full(force, -math.inf, math.inf, rcfg, breakpoints=bps, scale=traj.A)
    return TimeDomainEnergy(rp.value, rf.value, rp.error, rf.error)


def total_energy_time_domain(traj: Trajectory, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Radiated energy by time-domain quadrature (power route).

    The force route is evaluated alongside; a disagreement beyond the
    combined error budget raises ConvergenceError.
    """
    from .errors import ConvergenceError

    routes = energy_routes(traj, cfg)
    budget = max(10.0 * (routes.power_error + routes.force_error),
                 10.0 * cfg.rel_tol * abs(routes.power_route), cfg.abs_tol)
    if abs(routes.power_route - routes.force_route) > budget:
        raise ConvergenceError("power and self-force routes disagree",
                               estimate=routes.power_route,
                               error=abs(routes.power_route - routes.force_route))
    return routes.power_route
