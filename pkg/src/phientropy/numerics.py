"""Shared numerical kernels.

Adaptive Simpson quadrature (with geometric grading toward an integrable
endpoint singularity), monotone bisection, central differences and
compensated summation.  Everything here is pure and deterministic: the same
inputs produce bit-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np

from .errors import BracketError, NoConvergence, ParamError

__all__ = [
    "QuadratureSpec",
    "integrate",
    "bisect_monotone",
    "central_diff",
    "richardson_diff",
    "sum_compensated",
]


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and limits for :func:`integrate`.

    ``grading_ratio`` controls the geometric mesh used near a declared
    endpoint singularity: panel widths shrink by this factor toward the
    endpoint.
    """

    abs_tol: float = 1e-11
    max_depth: int = 40
    grading_ratio: float = 0.5

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ParamError("abs_tol must be positive")
        if self.max_depth < 4:
            raise ParamError("max_depth must be at least 4")
        if not 0.0 < self.grading_ratio < 1.0:
            raise ParamError("grading_ratio must lie in (0, 1)")


def _adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, depth, max_depth):
    """Recursive Simpson with the |S_fine - S_coarse|/15 error estimate."""
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    err = left + right - whole
    if abs(err) <= 15.0 * tol or depth >= max_depth:
        if depth >= max_depth and abs(err) > 15.0 * tol:
            raise NoConvergence(
                f"adaptive Simpson hit max depth {max_depth} on [{a}, {b}]",
                estimate=left + right + err / 15.0,
                error=abs(err) / 15.0,
            )
        return left + right + err / 15.0
    half = 0.5 * tol
    return _adaptive_simpson(
        f, a, m, fa, flm, fm, left, half, depth + 1, max_depth
    ) + _adaptive_simpson(f, m, b, fm, frm, fb, right, half, depth + 1, max_depth)


def _simpson_panel(f, a, b, tol, max_depth):
    fa = f(a)
    m = 0.5 * (a + b)
    fm = f(m)
    fb = f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 0, max_depth)


# Cap on graded panels: widths shrink geometrically, so this allows the mesh
# to reach far below double-precision resolution before giving up.
_MAX_GRADED_PANELS = 4000


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    spec: Optional[QuadratureSpec] = None,
    singular_at_a: Optional[float] = None,
) -> float:
    """Integrate ``f`` over ``[a, b]``.

    If ``singular_at_a`` is given it declares that ``|f(x)| = O((x-a)^-s)``
    near ``a`` with exponent ``s = singular_at_a`` in ``[0, 1)``.  The
    integrand is then never evaluated at ``a``: a geometrically graded mesh
    approaches the endpoint and the remaining tail is extrapolated from the
    declared exponent (panel integrals of an ``(x-a)^-s`` integrand shrink by
    ``grading_ratio**(1-s)`` per level, so the tail is a geometric series).

    Raises :class:`NoConvergence` when the requested ``abs_tol`` cannot be
    certified.
    """
    spec = spec or QuadratureSpec()
    if a == b:
        return 0.0
    if b < a:
        return -integrate(f, b, a, spec, singular_at_a=None if singular_at_a is None else singular_at_a)
    if singular_at_a is None:
        return _simpson_panel(f, a, b, spec.abs_tol, spec.max_depth)

    s = float(singular_at_a)
    if not 0.0 <= s < 1.0:
        raise ParamError("singularity exponent must lie in [0, 1)")

    r = spec.grading_ratio
    graded = 0.1 * (b - a)
    smooth = 0.0
    if b > a + graded:
        smooth = _simpson_panel(f, a + graded, b, 0.25 * spec.abs_tol, spec.max_depth)

    # Geometric decay rate of panel integrals for the declared singularity;
    # the per-panel tolerance budget is split at the same rate so deep panels
    # are not asked for more relative accuracy than shallow ones.
    q = r ** (1.0 - s)
    tail_factor = q / (1.0 - q)
    stop = 0.25 * spec.abs_tol / max(tail_factor, 1.0)

    total = 0.0
    budget = 0.25 * spec.abs_tol * (1.0 - q)
    hi = a + graded
    last = math.inf
    for k in range(1, _MAX_GRADED_PANELS + 1):
        lo = a + graded * r**k
        if lo >= hi or lo <= a:
            raise NoConvergence(
                "graded mesh exhausted floating-point resolution",
                estimate=smooth + total,
                error=abs(last) * tail_factor,
            )
        last = _simpson_panel(f, lo, hi, budget * q ** (k - 1), spec.max_depth)
        total += last
        hi = lo
        if abs(last) <= stop:
            return smooth + total + last * tail_factor
    raise NoConvergence(
        f"singular integrand did not decay after {_MAX_GRADED_PANELS} graded panels",
        estimate=smooth + total,
        error=abs(last) * tail_factor,
    )


def bisect_monotone(
    f: Callable[[float], float],
    target: float,
    lo_hint: float,
    hi_hint: float,
    tol: float = 1e-12,
    x_rel_tol: Optional[float] = None,
) -> float:
    """Solve ``f(x) = target`` for a strictly increasing ``f``.

    The initial bracket ``[lo_hint, hi_hint]`` is expanded outward, doubling
    its width, up to 64 times on each side.  Returns ``x`` with
    ``|f(x) - target| <= tol * (1 + |target|)``; when ``x_rel_tol`` is given
    the bracket is additionally narrowed to that relative width.
    """
    lo, hi = float(lo_hint), float(hi_hint)
    if hi < lo:
        lo, hi = hi, lo
    flo, fhi = f(lo), f(hi)
    width = max(hi - lo, 1e-12)
    for _ in range(64):
        if flo <= target:
            break
        width *= 2.0
        lo -= width
        flo = f(lo)
    else:
        raise BracketError(f"target {target} below reachable range of f")
    for _ in range(64):
        if fhi >= target:
            break
        width *= 2.0
        hi += width
        fhi = f(hi)
    else:
        raise BracketError(f"target {target} above reachable range of f")

    f_tol = tol * (1.0 + abs(target))
    mid = 0.5 * (lo + hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if abs(fm - target) <= f_tol and (
            x_rel_tol is None or hi - lo <= x_rel_tol * max(1.0, abs(mid))
        ):
            return mid
        if fm < target:
            lo = mid
        else:
            hi = mid
    return mid


def central_diff(f: Callable[[float], float], x: float, h: float) -> float:
    """Two-point central difference ``(f(x+h) - f(x-h)) / 2h``."""
    return (f(x + h) - f(x - h)) / (2.0 * h)


def richardson_diff(f: Callable[[float], float], x: float, h: float) -> float:
    """Central difference with one Richardson extrapolation step (O(h^4))."""
    d1 = central_diff(f, x, h)
    d2 = central_diff(f, x, 0.5 * h)
    return (4.0 * d2 - d1) / 3.0


def sum_compensated(values: Iterable[float]) -> float:
    """Compensated sum of ``values``.

    Delegates to :func:`math.fsum`, which tracks all intermediate partials
    and returns the correctly rounded sum; the error is bounded by one ulp
    of the result, far inside the ``2 * eps * sum(|v|)`` contract this
    package relies on.  Accepts any iterable; ndarrays are summed over all
    elements.
    """
    if isinstance(values, np.ndarray):
        return math.fsum(values.tolist())
    return math.fsum(values)
