"""Adaptive Gauss-Legendre quadrature on finite and (semi-)infinite intervals.

Each panel is integrated with an n-point Gauss-Legendre rule and compared
with the same rule applied to its two halves; the difference is the panel's
error estimate and the halves' sum is the panel's value. Panels carrying
the bulk of the error are bisected until the total estimate drops below
``max(abs_tol, rel_tol * |I|)``.

Semi-infinite ranges are mapped onto ``[0, 1)`` either by ``t = -L ln(1-u)``
(``"exp"``, the default) or ``t = L u / (1-u)`` (``"rational"``).
The mapped integrand is flat but rarely analytic at ``u = 1``, so tails
start pre-split and the panel touching ``u = 1`` is bisected until its
absolute contribution is negligible.

Integrands are called with 1-D numpy arrays and must return arrays of the
same shape. Complex-valued integrands are supported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ..errors import ConvergenceError, DomainError

_GL_ORDER = 15
_GL_X, _GL_W = np.polynomial.legendre.leggauss(_GL_ORDER)
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_subdivisions: int = 4000
    semi_infinite_map: str = "exp"

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise DomainError("rel_tol and abs_tol must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be >= 1")
        if self.semi_infinite_map not in ("exp", "rational"):
            raise DomainError(f"unknown semi_infinite_map {self.semi_infinite_map!r}")

    def tightened(self, factor: float) -> "QuadratureConfig":
        """Copy with both tolerances divided by ``factor``."""
        return QuadratureConfig(self.rel_tol / factor, self.abs_tol / factor,
                                self.max_subdivisions, self.semi_infinite_map)


DEFAULT_CONFIG = QuadratureConfig()


@dataclass(frozen=True)
class QuadResult:
    value: complex | float
    error: float
    n_panels: int
    n_evals: int


class _Segment:
    """One piece of the integration range, parametrized by u in [u0, u1]."""

    def __init__(self, f, kind, origin=0.0, scale=1.0, sign=1.0, mapping="exp"):
        self.f = f
        self.kind = kind
        self.origin = origin
        self.scale = scale
        self.sign = sign
        self.mapping = mapping

    def __call__(self, u):
        if self.kind == "finite":
            return self.f(u)
        # nodes that round onto u = 1 sit at infinity, where the integrand has decayed
        u = np.asarray(u, dtype=float)
        inside = u < 1.0
        u = np.where(inside, u, 0.0)
        if self.mapping == "exp":
            s = -np.log1p(-u)
            jac = 1.0 / (1.0 - u)
        else:
            s = u / (1.0 - u)
            jac = 1.0 / (1.0 - u) ** 2
        t = self.origin + self.sign * self.scale * s
        return np.where(inside, self.f(t) * (self.scale * jac), 0.0)


# Tails start pre-split toward u = 1, where the mapped integrand's mass sits for
# ranges wider than the scale; one coarse panel there can pass the halving
# test by accident.
_TAIL_EDGES = (0.0, 0.5, 0.75, 0.875, 0.9375, 1.0)


def _tail_panels(seg_id):
    return [(seg_id, lo, hi) for lo, hi in zip(_TAIL_EDGES[:-1], _TAIL_EDGES[1:])]


def _build_segments(f, a, b, breakpoints, scale, mapping):
    """Split [a, b] into finite pieces plus at most two mapped tails."""
    if a == b:
        return [], []
    if a > b:
        raise DomainError("integrate_1d expects a <= b; swap limits and negate instead")
    inner = sorted(float(p) for p in breakpoints if a < p < b and math.isfinite(p))
    lo_inf = math.isinf(a)
    hi_inf = math.isinf(b)
    if lo_inf and hi_inf and not inner:
        inner = [0.0]
    knots = inner[:]
    if not lo_inf:
        knots.insert(0, float(a))
    if not hi_inf:
        knots.append(float(b))
    segs, panels = [], []
    if lo_inf:
        segs.append(_Segment(f, "tail", origin=knots[0], scale=scale, sign=-1.0, mapping=mapping))
        panels.extend(_tail_panels(len(segs) - 1))
    finite = _Segment(f, "finite")
    if len(knots) > 1:
        segs.append(finite)
        idx = len(segs) - 1
        for lo, hi in zip(knots[:-1], knots[1:]):
            if hi > lo:
                panels.append((idx, lo, hi))
    if hi_inf:
        segs.append(_Segment(f, "tail", origin=knots[-1], scale=scale, sign=1.0, mapping=mapping))
        panels.extend(_tail_panels(len(segs) - 1))
    return segs, panels


def _gl_panels(segs, seg_id, lo, hi):
    """Gauss-Legendre value and absolute-integrand value on every panel."""
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = mid[:, None] + half[:, None] * _GL_X[None, :]
    vals = None
    for k, seg in enumerate(segs):
        mask = seg_id == k
        if not mask.any():
            continue
        fx = np.asarray(seg(nodes[mask].ravel()))
        if vals is None:
            vals = np.zeros(nodes.shape, dtype=np.result_type(fx.dtype, float))
        elif np.iscomplexobj(fx) and not np.iscomplexobj(vals):
            vals = vals.astype(complex)
        vals[mask] = fx.reshape(-1, _GL_ORDER)
    value = half * (vals @ _GL_W)
    absval = np.abs(half) * (np.abs(vals) @ _GL_W)
    return value, absval


def integrate_1d_full(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    *,
    breakpoints: Sequence[float] = (),
    scale: float = 1.0,
) -> QuadResult:
    """Adaptive integral of a vectorized ``f`` over ``[a, b]`` with diagnostics.

    ``a`` and/or ``b`` may be infinite. ``breakpoints`` pre-split the range
    (use them at kinks, integrable singularities, or to seed many panels for
    oscillatory integrands). ``scale`` is the length scale ``L`` of the
    semi-infinite map.

    Raises ConvergenceError (carrying the best estimate) when more than
    ``cfg.max_subdivisions`` panels would be needed.
    """
    if math.isnan(a) or math.isnan(b):
        raise DomainError("NaN integration limit")
    if scale <= 0:
        raise DomainError("scale must be positive")
    segs, panels = _build_segments(f, a, b, breakpoints, scale, cfg.semi_infinite_map)
    if not panels:
        return QuadResult(0.0, 0.0, 0, 0)

    seg_id = np.array([p[0] for p in panels], dtype=int)
    lo = np.array([p[1] for p in panels], dtype=float)
    hi = np.array([p[2] for p in panels], dtype=float)
    whole, _ = _gl_panels(segs, seg_id, lo, hi)
    n_evals = len(lo) * _GL_ORDER

    # Finished panels accumulate here.
    done_val = 0.0
    done_err = 0.0
    done_abs = 0.0
    n_done = 0
    first = True
    tail_seg = np.array([seg.kind == "tail" for seg in segs])

    while True:
        mid = 0.5 * (lo + hi)
        both_id = np.concatenate([seg_id, seg_id])
        both_lo = np.concatenate([lo, mid])
        both_hi = np.concatenate([mid, hi])
        halves, habs = _gl_panels(segs, both_id, both_lo, both_hi)
        n_evals += len(both_lo) * _GL_ORDER
        m = len(lo)
        left, right = halves[:m], halves[m:]
        refined = left + right
        err = np.abs(whole - refined)
        absint = habs[:m] + habs[m:]
        if not (np.all(np.isfinite(refined)) and np.all(np.isfinite(err))):
            raise ConvergenceError("non-finite integrand values encountered",
                                   estimate=complex(done_val + np.nansum(refined)), error=math.inf)
        # Panels too narrow to split further only carry rounding noise.
        width = np.abs(hi - lo)
        floor = 50.0 * _EPS * absint
        err = np.maximum(err, floor)
        # relative to the location so panels can keep shrinking onto a singular endpoint at 0
        stuck = width <= np.maximum(64 * _EPS * np.abs(mid), 1e-300)
        at_infinity = tail_seg[seg_id] & (hi == 1.0)

        total = done_val + refined.sum()
        total_err = done_err + err.sum()
        total_abs = done_abs + absint.sum()
        tol = max(cfg.abs_tol, cfg.rel_tol * abs(total), 100.0 * _EPS * total_abs)
        if total_err <= tol:
            value = complex(total) if np.iscomplexobj(total) else float(total)
            return QuadResult(value, float(total_err), n_done + m, n_evals)

        # Retire the smallest-error panels while their summed error fits in
        # half the budget; everything else is bisected.
        budget = 0.5 * tol - done_err
        order = np.argsort(err)
        csum = np.cumsum(err[order])
        n_keep = int(np.searchsorted(csum, max(budget, 0.0), side="right"))
        keep = np.zeros(m, dtype=bool)
        # a first-pass agreement between a panel and its halves can be accidental
        if not first:
            keep[order[:n_keep]] = True
        first = False
        # mapped integrands are flat but not analytic at u = 1, so the halving
        # test is unreliable on the panel touching it; split until it is negligible
        keep &= ~(at_infinity & (absint > 0.01 * tol))
        keep |= stuck
        if keep.all():
            value = complex(total) if np.iscomplexobj(total) else float(total)
            raise ConvergenceError(
                f"quadrature stalled at rounding level (error {total_err:.3e} > tol {tol:.3e})",
                estimate=value, error=float(total_err))
        done_val = done_val + refined[keep].sum()
        done_err += float(err[keep].sum())
        done_abs += float(absint[keep].sum())
        n_done += int(keep.sum())

        split = ~keep
        if n_done + 2 * int(split.sum()) > cfg.max_subdivisions:
            value = complex(total) if np.iscomplexobj(total) else float(total)
            raise ConvergenceError(
                f"max_subdivisions={cfg.max_subdivisions} exceeded "
                f"(error {total_err:.3e} > tol {tol:.3e})",
                estimate=value, error=float(total_err))
        seg_id = np.concatenate([seg_id[split], seg_id[split]])
        new_lo = np.concatenate([lo[split], mid[split]])
        new_hi = np.concatenate([mid[split], hi[split]])
        whole = np.concatenate([left[split], right[split]])
        lo, hi = new_lo, new_hi


def integrate_1d(f, a, b, cfg: QuadratureConfig = DEFAULT_CONFIG, *, breakpoints=(), scale=1.0):
    """Adaptive integral of ``f`` over ``[a, b]``; see :func:`integrate_1d_full`.

    >>> integrate_1d(lambda t: np.exp(-t), 0.0, np.inf)
    1.0000000000000002
    """
    return integrate_1d_full(f, a, b, cfg, breakpoints=breakpoints, scale=scale).value


def integrate_2d_iterated(
    f: Callable[[float, np.ndarray], np.ndarray],
    outer: tuple[float, float],
    inner: tuple[float, float] | Callable[[float], tuple[float, float]],
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    *,
    outer_breakpoints: Sequence[float] = (),
    inner_breakpoints: Sequence[float] | Callable[[float], Sequence[float]] = (),
    outer_scale: float = 1.0,
    inner_scale: float | Callable[[float], float] = 1.0,
    full_output: bool = False,
):
    """Iterated integral ``int dx int dy f(x, y)``.

    ``f(x, ys)`` receives a scalar outer coordinate and an array of inner
    coordinates. The inner integrals run at a tolerance ten times tighter than
    ``cfg``; the returned error adds the outer estimate to the quadrature-
    weighted inner estimates.
    """
    inner_cfg = cfg.tightened(10.0)
    inner_err_acc = []

    def inner_bounds(x):
        return inner(x) if callable(inner) else inner

    def outer_integrand(xs):
        out = []
        for x in np.ravel(xs):
            c, d = inner_bounds(x)
            bps = inner_breakpoints(x) if callable(inner_breakpoints) else inner_breakpoints
            sc = inner_scale(x) if callable(inner_scale) else inner_scale
            res = integrate_1d_full(lambda ys, x=x: f(x, ys), c, d, inner_cfg,
                                    breakpoints=bps, scale=sc)
            inner_err_acc.append(res.error)
            out.append(res.value)
        return np.asarray(out)

    res = integrate_1d_full(outer_integrand, outer[0], outer[1], cfg,
                            breakpoints=outer_breakpoints, scale=outer_scale)
    if not full_output:
        return res.value
    # Inner errors enter with the outer weights; bound them by their mean times
    # the outer measure when the range is finite, else report the max.
    lo, hi = outer
    span = (hi - lo) if math.isfinite(lo) and math.isfinite(hi) else 1.0
    inner_err = float(np.mean(inner_err_acc)) * abs(span) if inner_err_acc else 0.0
    return QuadResult(res.value, res.error + inner_err, res.n_panels, res.n_evals)
