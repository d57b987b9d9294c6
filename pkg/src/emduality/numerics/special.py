"""Special functions needed by the spectra.

Everything here is a pure function of its arguments. Hyperbolic ratios are
evaluated through logarithms once their arguments pass ``LOG_SPACE_THRESHOLD``
so that Planck-type factors at large frequency neither overflow nor lose
digits.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special as sp

from ..errors import ConvergenceError, DomainError
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, integrate_1d_full

LOG_SPACE_THRESHOLD = 30.0
_LN_PI = math.log(math.pi)
_LN2 = math.log(2.0)


def _as_float_array(x):
    return np.asarray(x, dtype=float)


def _maybe_scalar(arr, like):
    return float(arr) if np.ndim(like) == 0 else arr


def log_sinh(x):
    """``ln sinh(x)`` for ``x > 0`` without overflow."""
    x = _as_float_array(x)
    return x - _LN2 + np.log(-np.expm1(-2.0 * x))


def sinhc(x):
    """``sinh(x)/x`` with the removable point at 0 handled by its Taylor series."""
    x = _as_float_array(x)
    small = np.abs(x) < 1e-4
    out = np.empty_like(x)
    xs = x[small]
    out[small] = 1.0 + xs * xs / 6.0 + xs ** 4 / 120.0
    xb = x[~small]
    with np.errstate(over="ignore"):
        out[~small] = np.sinh(xb) / xb
    return _maybe_scalar(out, x)


def sinh_exp(x, X):
    """``sinh(x) * exp(-X)`` for ``|x| <= X``, stable for large arguments."""
    x = _as_float_array(x)
    X = _as_float_array(X)
    ax = np.abs(x)
    val = -0.5 * np.exp(ax - X) * np.expm1(-2.0 * ax)
    return np.sign(x) * val


def planck(y):
    """Bose factor ``1/(e^y - 1)`` for ``y > 0``."""
    y = _as_float_array(y)
    return 1.0 / np.expm1(y)


def log_abs_gamma_imag_sq(x):
    """``ln |Gamma(i x)|^2 = ln(pi / (x sinh(pi x)))``; even in ``x``."""
    x = _as_float_array(x)
    if np.any(x == 0) or not np.all(np.isfinite(x)):
        raise DomainError("|Gamma(ix)|^2 has a pole at x = 0 (and needs finite x)")
    ax = np.abs(x)
    return _LN_PI - np.log(ax) - log_sinh(math.pi * ax)


def abs_gamma_imag_sq(x):
    """``|Gamma(i x)|^2 = pi / (x sinh(pi x))`` for real ``x != 0``.

    Evaluated directly for ``|x| < 30`` and through logarithms beyond, where it
    is ``~ 2 pi e^{-pi |x|} / |x|``.
    """
    x = _as_float_array(x)
    if np.any(x == 0) or not np.all(np.isfinite(x)):
        raise DomainError("|Gamma(ix)|^2 has a pole at x = 0 (and needs finite x)")
    ax = np.abs(x)
    direct = ax < LOG_SPACE_THRESHOLD
    out = np.empty_like(ax)
    out[direct] = math.pi / (ax[direct] * np.sinh(math.pi * ax[direct]))
    out[~direct] = np.exp(log_abs_gamma_imag_sq(ax[~direct]))
    return _maybe_scalar(out, x)


def log_abs_beta_imag_sq(a, b):
    a = _as_float_array(a)
    b = _as_float_array(b)
    if np.any(a == 0) or np.any(b == 0) or np.any(a + b == 0):
        raise DomainError("|B(ia, ib)|^2 has poles at a = 0, b = 0 and a + b = 0")
    return log_abs_gamma_imag_sq(a) + log_abs_gamma_imag_sq(b) - log_abs_gamma_imag_sq(a + b)


def abs_beta_imag_sq(a, b):
    """``|B(i a, i b)|^2 = |Gamma(ia)|^2 |Gamma(ib)|^2 / |Gamma(i(a+b))|^2``."""
    out = np.exp(log_abs_beta_imag_sq(a, b))
    return float(out) if out.ndim == 0 else out


def incomplete_gamma_zero(x):
    """Upper incomplete gamma ``Gamma(0, x) = E_1(x)`` for ``x > 0``."""
    xa = _as_float_array(x)
    if np.any(xa <= 0) or not np.all(np.isfinite(xa)):
        raise DomainError("Gamma(0, x) requires finite x > 0")
    return _maybe_scalar(sp.exp1(xa), x)


# --- modified Bessel function of the second kind, complex order ------------


def _bessel_t_max(x, nu_re, nu_im, abs_tol):
    """Truncation point of the cosh-kernel integral.

    Smallest (up to bisection slack) ``t`` with
    ``x (cosh t - 1) >= -ln(abs_tol) + (|Re nu| + |Im nu|) t`` for the
    ``e^{x}``-scaled integrand.
    """
    level = -math.log(abs_tol) + 5.0
    growth = abs(nu_re) + abs(nu_im)

    def gap(t):
        return x * (math.cosh(t) - 1.0) - level - growth * t

    hi = 1.0
    while gap(hi) < 0:
        hi *= 2.0
        if hi > 1e3:
            raise DomainError("Bessel truncation point diverges; order too large for argument")
    lo = 0.0
    for _ in range(40):
        mid = 0.5 * (lo + hi)
        if gap(mid) < 0:
            lo = mid
        else:
            hi = mid
    return hi


def bessel_k_complex_order_scaled(nu_re, nu_im, x, cfg: QuadratureConfig = DEFAULT_CONFIG):
    """``e^x K_nu(x)`` for complex order ``nu = nu_re + i nu_im`` and ``x > 0``."""
    if not (x > 0 and math.isfinite(x)):
        raise DomainError("K_nu(x) requires finite x > 0")
    nu = complex(nu_re, nu_im)
    t_max = _bessel_t_max(x, nu_re, nu_im, cfg.abs_tol)

    def integrand(t):
        return np.exp(-2.0 * x * np.sinh(0.5 * t) ** 2) * np.cosh(nu * t)

    n_bp = max(1, int(abs(nu_im) * t_max / math.pi))
    bps = np.linspace(0.0, t_max, n_bp + 1)[1:-1]
    try:
        res = integrate_1d_full(integrand, 0.0, t_max, cfg, breakpoints=bps)
    except ConvergenceError as exc:
        raise ConvergenceError(f"K_nu quadrature did not converge: {exc}",
                               estimate=exc.estimate, error=exc.error) from exc
    return complex(res.value)


def bessel_k_complex_order(nu_re, nu_im, x, cfg: QuadratureConfig = DEFAULT_CONFIG):
    """Modified Bessel function ``K_nu(x)`` of complex order by quadrature.

    Uses ``K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt`` truncated where the
    integrand has fallen below ``abs_tol``, integrated adaptively.

    Parameters
    ----------
    nu_re, nu_im : float
        Real and imaginary part of the order.
    x : float
        Positive real argument.
    cfg : QuadratureConfig
        Tolerances for the adaptive quadrature.

    Returns
    -------
    complex
    """
    return bessel_k_complex_order_scaled(nu_re, nu_im, x, cfg) * math.exp(-x)


def bessel_k_batch_scaled(nu_re, nu_im, x, rel_tol=1e-12, abs_tol=1e-15, chunk=256):
    """Vectorized ``e^x K_{nu_re + i nu_im}(x)`` over arrays of ``nu_im`` and ``x``.

    Trapezoidal rule on the even, double-exponentially decaying cosh kernel,
    which converges geometrically in the step; the step is halved until two
    successive levels agree to ``rel_tol``.
    """
    nu_im, x = np.broadcast_arrays(_as_float_array(nu_im), _as_float_array(x))
    shape = nu_im.shape
    nu_im = nu_im.ravel()
    x = x.ravel()
    if np.any(x <= 0) or not np.all(np.isfinite(x)):
        raise DomainError("K_nu(x) requires finite x > 0")
    out = np.empty(x.shape, dtype=complex)
    for start in range(0, x.size, chunk):
        sl = slice(start, start + chunk)
        out[sl] = _bessel_trapezoid(float(nu_re), nu_im[sl], x[sl], rel_tol, abs_tol)
    return out.reshape(shape)


def _bessel_trapezoid(nu_re, nu_im, x, rel_tol, abs_tol):
    # the cut-off grows as x falls and |nu| rises, so the worst corner covers the chunk
    t_max = _bessel_t_max(float(np.min(x)), nu_re, float(np.max(np.abs(nu_im))), abs_tol)
    nu = nu_re + 1j * nu_im
    h = min(0.25, 0.5 / max(1.0, float(np.max(np.abs(nu_im)))))
    n = int(math.ceil(t_max / h))
    h = t_max / n

    def f(t):
        return np.exp(-2.0 * x[:, None] * np.sinh(0.5 * t[None, :]) ** 2) * np.cosh(nu[:, None] * t[None, :])

    t = np.arange(1, n + 1) * h
    s = 0.5 * np.ones_like(x, dtype=complex) + f(t).sum(axis=1)
    prev = h * s
    for _ in range(14):
        h *= 0.5
        t_odd = (2 * np.arange(n) + 1) * h
        s = s + f(t_odd).sum(axis=1)
        n *= 2
        cur = h * s
        if np.all(np.abs(cur - prev) <= rel_tol * np.abs(cur) + abs_tol):
            return cur
        prev = cur
    raise ConvergenceError("trapezoidal K_nu did not converge", estimate=cur,
                           error=float(np.max(np.abs(cur - prev))))


def bessel_k1_sq(z):
    """``K_1(z)^2`` for real ``z > 0``; underflows gracefully for huge ``z``."""
    z = _as_float_array(z)
    if np.any(z <= 0):
        raise DomainError("K_1(z) requires z > 0")
    ke = sp.kve(1, z)
    return _maybe_scalar(ke * ke * np.exp(-2.0 * z), z)


def log_bessel_k1_sq(z):
    z = _as_float_array(z)
    if np.any(z <= 0):
        raise DomainError("K_1(z) requires z > 0")
    return 2.0 * np.log(sp.kve(1, z)) - 2.0 * z
