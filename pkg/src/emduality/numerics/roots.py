"""Safeguarded Newton iteration for monotone scalar equations."""

from __future__ import annotations

import math

from ..errors import ConvergenceError, DomainError


def newton_bisect(f, df, target, lo, hi, *, xtol=1e-15, max_iter=200):
    """Solve ``f(x) = target`` for increasing ``f`` on the bracket ``[lo, hi]``.

    Newton steps are taken when they stay inside the current bracket,
    bisection otherwise. The bracket is expanded geometrically when it does
    not contain the root.
    """
    for _ in range(200):
        if f(lo) <= target:
            break
        lo = lo - 2.0 * max(1.0, abs(lo))
    else:
        raise DomainError("could not bracket root from below")
    for _ in range(200):
        if f(hi) >= target:
            break
        hi = hi + 2.0 * max(1.0, abs(hi))
    else:
        raise DomainError("could not bracket root from above")

    x = 0.5 * (lo + hi)
    for _ in range(max_iter):
        g = f(x) - target
        if g == 0.0:
            return x
        if g < 0:
            lo = x
        else:
            hi = x
        d = df(x)
        step_ok = d > 0 and math.isfinite(d)
        x_new = x - g / d if step_ok else 0.5 * (lo + hi)
        if not (lo < x_new < hi):
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= xtol * max(1.0, abs(x)) or hi - lo <= xtol * max(1.0, abs(x)):
            return x_new
        x = x_new
    raise ConvergenceError("Newton-bisection did not converge", estimate=x, error=hi - lo)
