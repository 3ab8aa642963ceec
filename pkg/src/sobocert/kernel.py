"""The weight function psi, its sup constants and its moments.

With ``a = C/sqrt(2)`` and ``s = (t-1)^(1/4)``,

    psi(t) = e^C / (pi t) * e^(-a s) * sin(a s),

the real form of ``e^C/(pi t) * Im exp(-omega s)`` with ``omega = C(1-i)/sqrt(2)``.
In the variable ``s`` the quartic-root cusp at ``t = 1`` disappears:

    t^k psi(t) = e^C/pi * (1+s^4)^(k-1) * e^(-a s) * sin(a s),

so both the branch-and-bound search and the moment integrals run in ``s``.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .errors import DomainError, MaxRefinementError
from .interval import PI, Interval, exp, nth_root, sin
from .quadrature import IntegrandSpec, TailBound, integrate, poly_exp_tail
from .taylor import Taylor

DEFAULT_C_OMEGA = 4.83
DEFAULT_SUP_TOL = 1e-3
MAX_BOXES = 500_000


@dataclass(frozen=True)
class PsiParams:
    c_omega: float = DEFAULT_C_OMEGA

    def __post_init__(self):
        if not (isinstance(self.c_omega, (int, float)) and math.isfinite(self.c_omega) and self.c_omega > 0):
            raise DomainError(f"C_omega must be a positive real, got {self.c_omega!r}")

    @property
    def rate(self) -> Interval:
        """``a = C / sqrt(2)``."""
        return Interval(self.c_omega) / Interval(2).sqrt()

    @property
    def prefactor(self) -> Interval:
        """``e^C / pi``."""
        return Interval(self.c_omega).exp() / PI


@dataclass(frozen=True)
class KernelConstants:
    A0: Interval
    A1: Interval
    c_omega: float

    def __post_init__(self):
        if not (self.A0.lo > 0 and self.A1.lo > 0):
            raise DomainError("kernel constants must be positive")

    def to_dict(self) -> dict:
        return {"A0": self.A0.to_dict(), "A1": self.A1.to_dict(), "c_omega": self.c_omega}

    @classmethod
    def from_dict(cls, d: dict) -> "KernelConstants":
        return cls(Interval.from_dict(d["A0"]), Interval.from_dict(d["A1"]), d["c_omega"])


def psi_eval(t, params: PsiParams) -> Interval:
    """Enclosure of psi over ``t`` (``t.lo >= 1``)."""
    t = t if isinstance(t, Interval) else Interval(t)
    if t.lo < 1.0:
        raise DomainError(f"psi is defined for t >= 1, got {t}")
    s = nth_root(t - 1.0, 4)
    x = params.rate * s
    return params.prefactor / t * (-x).exp() * x.sin()


def _weighted(s, k: int, pref: Interval, a: Interval):
    """``t^k psi(t)`` as a function of ``s``; works for Interval and Taylor."""
    x = s * a
    g = exp(-x) * sin(x) * pref
    if k != 1:
        g = g * (s.ipow(4) + 1.0).ipow(k - 1)
    return g


def _envelope(s: Interval, k: int, pref: Interval, a: Interval) -> Interval:
    """``e^C/pi (1+s^4)^(k-1) e^(-a s)`` >= |t^k psi| ."""
    return pref * (s.ipow(4) + 1.0).ipow(k - 1) * (-(a * s)).exp()


def _box_upper(s0: float, s1: float, k: int, pref: Interval, a: Interval) -> float:
    X = Interval(s0, s1)
    tx = _weighted(Taylor.variable(X, 1), k, pref, a)
    naive = tx.c[0]
    m = 0.5 * s0 + 0.5 * s1
    gm = _weighted(Interval(m), k, pref, a)
    mv = gm + tx.c[1] * (X - m)
    up = min(naive.mag(), mv.mag())
    if s0 == 0.0:
        # |sin(a s)| <= a s and e^(-a s) <= 1 near the cusp
        up = min(up, (pref * (X.ipow(4) + 1.0).ipow(k - 1) * a * X).hi)
    return up


def _point_lower(s: float, k: int, pref: Interval, a: Interval) -> float:
    return _weighted(Interval(s), k, pref, a).mig()


@lru_cache(maxsize=64)
def _sup_search(k: int, c_omega: float, tol: float, max_boxes: int):
    params = PsiParams(c_omega)
    pref, a = params.prefactor, params.rate
    # running lower bound from a coarse scan
    best_s, L = 0.0, 0.0
    for i in range(1, 201):
        s = i * 0.05
        v = _point_lower(s, k, pref, a)
        if v > L:
            best_s, L = s, v
    # truncation: past S0 the envelope is decreasing; find S with envelope < L
    S = max(1.0, 4.0 * (k - 1) / a.lo)
    while _envelope(Interval(S), k, pref, a).hi >= L:
        S *= 2.0
        if S > 1e6:
            raise MaxRefinementError("could not truncate the sup search domain")
    heap = [(-_box_upper(0.0, S, k, pref, a), 0.0, S)]
    boxes = 1
    while True:
        negu, s0, s1 = heap[0]
        U = max(-negu, L)
        if U - L <= tol:
            break
        heapq.heappop(heap)
        m = 0.5 * s0 + 0.5 * s1
        if not (s0 < m < s1):
            raise MaxRefinementError("sup search box cannot be split further")
        v = _point_lower(m, k, pref, a)
        if v > L:
            best_s, L = m, v
        for lo, hi in ((s0, m), (m, s1)):
            u = _box_upper(lo, hi, k, pref, a)
            if u > L:
                heapq.heappush(heap, (-u, lo, hi))
        boxes += 2
        if boxes > max_boxes:
            raise MaxRefinementError(f"sup search exceeded {max_boxes} boxes; gap {U - L:.3e} > {tol:.3e}")
        if not heap:
            break
    U = max(-heap[0][0], L) if heap else L
    t_star = 1.0 + best_s**4
    return Interval(L, U), t_star


def sup_search(k: int, params: PsiParams, tol: float = DEFAULT_SUP_TOL, max_boxes: int = MAX_BOXES):
    """Enclosure of ``sup_{t>=1} |t^k psi(t)|`` and the sample point ``t*`` attaining its lower end."""
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"weight exponent k must be a positive integer, got {k!r}")
    if not tol > 0:
        raise DomainError("tol must be positive")
    return _sup_search(k, float(params.c_omega), float(tol), int(max_boxes))


def compute_sup_constant(k: int, params: PsiParams, tol: float = DEFAULT_SUP_TOL) -> Interval:
    """Enclosure of ``sup_{t>=1} |t^k psi(t)|`` of width at most ``tol``."""
    return sup_search(k, params, tol)[0]


def kernel_constants(params: PsiParams, tol: float = DEFAULT_SUP_TOL) -> KernelConstants:
    """``A0 = sup |t^2 psi|`` and ``A1 = sup |t^3 psi|``."""
    return KernelConstants(compute_sup_constant(2, params, tol), compute_sup_constant(3, params, tol), params.c_omega)


def _tail_coeffs(m: int) -> list:
    """Coefficients of ``s^3 (1+s^4)^max(m-1,0)`` (a majorant of ``s^3 (1+s^4)^(m-1)``)."""
    j = max(m - 1, 0)
    coeffs = [0] * (4 * j + 4)
    for i in range(j + 1):
        coeffs[4 * i + 3] = comb(j, i)
    return coeffs


def _moment_onset(m: int, a: Interval) -> float:
    # s^d e^{-a s} is decreasing for s >= d/a, d the top degree
    return (4 * max(m - 1, 0) + 3) / a.lo


def moment_tail(m: int, params: PsiParams) -> TailBound:
    """Tail majorant for ``int_T^inf t^m psi(t) dt`` in the original variable ``t``.

    ``|t^m psi(t)| <= e^C/pi t^(m-1) e^(-a (t-1)^(1/4))``; after ``t = 1+s^4``
    its integral is a polynomial times ``e^(-a s)`` in closed form.
    """
    pref, a = params.prefactor, params.rate
    coeffs = _tail_coeffs(m)
    scale = pref * 4.0

    def integral(T: float) -> Interval:
        S = nth_root(Interval(T) - 1.0, 4).lo
        return scale * poly_exp_tail(coeffs, a, S)

    return TailBound(onset=1.0 + _moment_onset(m, a) ** 4, integral=integral)


@lru_cache(maxsize=64)
def _moment(m: int, c_omega: float, tol: float) -> Interval:
    params = PsiParams(c_omega)
    pref, a = params.prefactor, params.rate
    scale = pref * 4.0
    coeffs = _tail_coeffs(m)

    def f(s):
        # 4 e^C/pi * s^3 (1+s^4)^(m-1) e^(-a s) sin(a s)
        x = s * a
        g = exp(-x) * sin(x) * s.ipow(3)
        if m == 0:
            g = g / (s.ipow(4) + 1.0)
        elif m > 1:
            g = g * (s.ipow(4) + 1.0).ipow(m - 1)
        return g * scale

    tail = TailBound(onset=_moment_onset(m, a), integral=lambda S: scale * poly_exp_tail(coeffs, a, S))
    return integrate(IntegrandSpec(f, 0.0, math.inf, target_width=tol, tail=tail))


def check_moment(m: int, params: PsiParams, tol: float = 1e-6) -> Interval:
    """Enclosure of ``int_1^inf t^m psi(t) dt`` with width at most ``tol``."""
    if not isinstance(m, int) or m < 0:
        raise DomainError(f"moment order must be a nonnegative integer, got {m!r}")
    if m > 6:
        raise DomainError("moment order above 6 is outside the supported budget")
    if not tol > 0:
        raise DomainError("tol must be positive")
    return _moment(m, float(params.c_omega), float(tol))


__all__ = [
    "PsiParams",
    "KernelConstants",
    "psi_eval",
    "sup_search",
    "compute_sup_constant",
    "kernel_constants",
    "moment_tail",
    "check_moment",
]
