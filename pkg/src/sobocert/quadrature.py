"""Verified one-dimensional integration.

The workhorse is adaptive bisection with a Taylor enclosure per piece: on
``[x0, x1]`` with expansion point ``m`` the integrand is written as its degree
``K-1`` Taylor polynomial at ``m`` plus a Lagrange remainder whose coefficient
is enclosed by the order-``K`` Taylor coefficient over the whole piece.  With
``K`` even, ``(x-m)^K >= 0`` so the remainder integrates to that coefficient
times ``int (x-m)^K``.  Integrands that cannot take Taylor arguments fall back
to the zeroth-order rule ``(x1 - x0) * f([x0, x1])``.

Improper pieces are handled by a caller-supplied majorant with a closed-form
integral: either near a singular finite endpoint (:class:`SingularEnd`) or on an
infinite tail (:class:`TailBound`).
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import ContractError, DomainError, MaxRefinementError
from .interval import ZERO, Interval
from .taylor import Taylor

DEFAULT_MAX_PIECES = 1_000_000
DEFAULT_ORDER = 8


@dataclass(frozen=True)
class SingularEnd:
    """Majorant for the integrand near the right endpoint ``b``.

    ``bound_integral(eta)`` must return an enclosure of (an upper bound for)
    ``int_{b-eta}^{b} g`` where ``g >= |f|`` on ``[b - eta0, b]``.
    """

    bound_integral: Callable[[float], Interval]
    eta0: float = 0.25


@dataclass(frozen=True)
class TailBound:
    """Monotone majorant ``g >= |f|`` on ``[onset, inf)``.

    ``integral(T)`` returns an enclosure of ``int_T^inf g`` in closed form.
    """

    onset: float
    integral: Callable[[float], Interval]


@dataclass(frozen=True)
class IntegrandSpec:
    evaluator: Callable
    a: float
    b: float
    target_width: float = 1e-10
    singular_end: Optional[SingularEnd] = None
    tail: Optional[TailBound] = None
    order: int = DEFAULT_ORDER
    max_pieces: int = DEFAULT_MAX_PIECES

    def __post_init__(self):
        if not self.a < self.b:
            raise DomainError(f"empty integration domain [{self.a}, {self.b}]")
        if self.target_width <= 0:
            raise DomainError("target_width must be positive")
        if self.order and self.order % 2:
            raise DomainError("Taylor order must be even")


def _as_series(v, order: int) -> Taylor:
    if isinstance(v, Taylor):
        return v
    return Taylor.constant(v, order)


def _piece(f: Callable, x0: float, x1: float, order: int) -> Interval:
    X = Interval(x0, x1)
    if order == 0:
        v = f(X)
        if not isinstance(v, Interval):
            v = Interval(v)
        return v * (Interval(x1) - x0)  # length rounded outward
    m = 0.5 * x0 + 0.5 * x1
    right = Interval(x1) - m
    left = Interval(m) - x0  # m - x0 >= 0
    at_m = _as_series(f(Taylor.variable(Interval(m), order - 1)), order - 1).c
    over = _as_series(f(Taylor.variable(X, order)), order).c
    total = ZERO
    rp = right
    lp = left
    for k in range(order):
        # int_{x0}^{x1} (x-m)^k dx = (right^{k+1} - (-left)^{k+1}) / (k+1)
        if k % 2 == 0:
            mom = (rp + lp) / (k + 1)
        else:
            mom = (rp - lp) / (k + 1)
        total = total + at_m[k] * mom
        rp = rp * right
        lp = lp * left
    mom = (rp + lp) / (order + 1)
    return total + over[order] * mom


def _sum_ordered(pieces) -> Interval:
    total = ZERO
    for key in sorted(pieces):
        total = total + pieces[key]
    return total


def integrate_finite(
    f: Callable,
    a: float,
    b: float,
    target_width: float,
    order: int = DEFAULT_ORDER,
    max_pieces: int = DEFAULT_MAX_PIECES,
) -> Interval:
    """Enclosure of ``int_a^b f`` with width at most ``target_width``.

    Bisects the piece with the widest enclosure until the running sum is
    narrow enough.  The sum is always formed in left-to-right order so the
    result does not depend on the refinement history.
    """
    pieces = {(a, b): _piece(f, a, b, order)}
    heap = [(-pieces[(a, b)].width(), a, b)]
    total_width = pieces[(a, b)].width()
    resummed = total_width
    while True:
        if total_width <= target_width:
            result = _sum_ordered(pieces)
            if result.width() <= target_width:
                return result
            # accumulated rounding in the ordered sum; keep refining
        if not heap:
            raise MaxRefinementError(
                f"pieces cannot be split further; width {total_width:.3e} > {target_width:.3e}"
            )
        if len(pieces) >= max_pieces:
            raise MaxRefinementError(
                f"subdivision budget of {max_pieces} pieces exhausted; "
                f"width {total_width:.3e} > {target_width:.3e}"
            )
        negw, x0, x1 = heapq.heappop(heap)
        m = 0.5 * x0 + 0.5 * x1
        if not (x0 < m < x1):
            continue  # piece is one ulp wide; leave it as is
        old = pieces.pop((x0, x1))
        left = _piece(f, x0, m, order)
        right = _piece(f, m, x1, order)
        pieces[(x0, m)] = left
        pieces[(m, x1)] = right
        heapq.heappush(heap, (-left.width(), x0, m))
        heapq.heappush(heap, (-right.width(), m, x1))
        total_width = total_width - old.width() + left.width() + right.width()
        # the running sum loses everything below eps * (largest width seen), so
        # re-add exactly once it has shrunk far below the last exact value
        if total_width <= target_width or total_width < 1e-8 * resummed:
            total_width = math.fsum(p.width() for p in pieces.values())
            resummed = total_width


def integrate_tail(f: IntegrandSpec, T: float) -> Interval:
    """Symmetric enclosure ``[-G, G]`` of ``int_T^inf f`` with ``G = int_T^inf g``."""
    if f.tail is None:
        raise ContractError("integrate_tail needs a dominating tail bound")
    if T < f.tail.onset:
        raise ContractError(f"T={T} lies before the bound's validity onset {f.tail.onset}")
    g = f.tail.integral(T).hi
    return Interval(-g, g)


def _choose_split(bound: Callable[[float], Interval], start: float, budget: float, shrink: float):
    """Walk the split point until the majorant's integral is below ``budget``."""
    x = start
    for _ in range(200):
        g = bound(x).hi
        if g <= budget:
            return x, g
        x = shrink(x)
    raise MaxRefinementError("could not make the closed-form tail small enough")


def integrate(f: IntegrandSpec) -> Interval:
    """Enclosure of ``int_a^b f`` honoring ``f.target_width``.

    Infinite ``b`` needs ``f.tail``; a singular finite ``b`` needs
    ``f.singular_end``.  The closed-form part is given at most a tenth of the
    width budget.
    """
    budget = f.target_width
    b = f.b
    extra = ZERO
    if math.isinf(b):
        if f.tail is None:
            raise ContractError("unbounded domain needs a TailBound (see integrate_tail)")
        start = max(f.tail.onset, f.a + 1.0)
        T, _ = _choose_split(f.tail.integral, start, 0.05 * budget, lambda x: 2.0 * x)
        extra = integrate_tail(f, T)
        b = T
    elif f.singular_end is not None:
        eta, g = _choose_split(
            f.singular_end.bound_integral, f.singular_end.eta0, 0.05 * budget, lambda x: 0.5 * x
        )
        b = f.b - eta
        eta = (Interval(f.b) - b).hi  # cover the split actually used
        g = f.singular_end.bound_integral(eta).hi
        extra = Interval(-g, g)
    inner = integrate_finite(f.evaluator, f.a, b, budget - extra.width(), f.order, f.max_pieces)
    return inner + extra


def poly_exp_tail(coeffs: Sequence[int], rate: Interval, S: float) -> Interval:
    """``int_S^inf P(s) e^{-rate s} ds`` for ``P(s) = sum coeffs[k] s^k`` (coeffs >= 0).

    Uses ``int_S^inf s^k e^{-a s} ds = e^{-a S} sum_{j<=k} k!/j! S^j / a^{k-j+1}``.
    """
    Si = Interval(S)
    total = ZERO
    for k, ck in enumerate(coeffs):
        if not ck:
            continue
        term = ZERO
        for j in range(k + 1):
            term = term + Interval(math.factorial(k) // math.factorial(j)) * Si.ipow(j) / rate.ipow(k - j + 1)
        total = total + term * ck
    return total * (-(rate * Si)).exp()


def hardy_spot_check(p: int, r: float, x, fx, tol: float = 1e-6) -> bool:
    """Numerically test both Hardy inequalities for a sampled ``f >= 0``.

    ``x`` is an increasing grid starting at 0 that covers the support of ``f``
    (``fx`` are the samples).  Returns True iff, for both the ``int_0^x`` and
    the ``int_x^inf`` forms, the left side is at most ``p/r`` times the right
    side plus ``tol`` (relative).  A diagnostic only, not an enclosure.
    """
    x = np.asarray(x, dtype=float)
    fx = np.asarray(fx, dtype=float)
    if np.any(fx < 0):
        raise DomainError("Hardy's inequality needs f >= 0")
    if x[0] != 0.0 or np.any(np.diff(x) <= 0):
        raise DomainError("grid must start at 0 and increase")
    L = x[-1]
    dx = np.diff(x)
    cum = np.concatenate(([0.0], np.cumsum(0.5 * (fx[1:] + fx[:-1]) * dx)))
    total = cum[-1]
    xs, ws = x[1:], x[1:]  # drop x=0 where the weights may be singular

    def trap(vals, grid):
        return float(np.sum(0.5 * (vals[1:] + vals[:-1]) * np.diff(grid)))

    # form 1: (int_0^inf F(x)^p x^{-r-1})^{1/p} <= p/r (int (y f)^p y^{-r-1})^{1/p}
    lhs1 = trap(cum[1:] ** p * ws ** (-r - 1.0), xs) + total**p * L ** (-r) / r
    rhs1 = trap((xs * fx[1:]) ** p * xs ** (-r - 1.0), xs)
    # form 2: with the upper integral and weight x^{r-1}
    upper = total - cum
    lhs2 = trap(upper[1:] ** p * ws ** (r - 1.0), xs)
    rhs2 = trap((xs * fx[1:]) ** p * xs ** (r - 1.0), xs)
    ok = True
    for lhs, rhs in ((lhs1, rhs1), (lhs2, rhs2)):
        left = max(lhs, 0.0) ** (1.0 / p)
        right = (p / r) * max(rhs, 0.0) ** (1.0 / p)
        ok &= left <= right * (1.0 + tol) + tol
    return bool(ok)


__all__ = [
    "IntegrandSpec",
    "SingularEnd",
    "TailBound",
    "integrate",
    "integrate_finite",
    "integrate_tail",
    "poly_exp_tail",
    "hardy_spot_check",
]
