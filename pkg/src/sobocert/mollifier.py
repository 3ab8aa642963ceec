"""Constants of the bump mollifier ``rho(x) = c exp(-1/(1-|x|^2))`` on the unit ball.

Every n-dimensional integral is reduced to a radial one on ``[0, 1]``.  The
profile ``e^(-1/(1-r^2))`` vanishes to all orders at ``r = 1`` but its Taylor
coefficients blow up there, so each radial integral is split at ``1 - eta``
and the piece ``[1 - eta, 1]`` is bounded in closed form.  With ``u = 1/(1-r)``
and ``v = 1/(1-r^2) >= u/2`` the majorants used are

    int r^(n-1) e^(-v) dr                     <= 2 e^(-S/2) / S^2
    int 2 r^n v^2 e^(-v) dr                   <= e^(-S/2)
    int |(n-1) - 2 r^2 v^2| e^(-v) r^(n-1) u dr <= (2(n-1)/S + S + 2) e^(-S/2)

for ``S = 1/eta >= 4`` (``v^2 e^(-v)`` is decreasing for ``v >= 2``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, MaxRefinementError
from .interval import ONE, PI, Interval, exp
from .quadrature import IntegrandSpec, SingularEnd, integrate, integrate_finite
from .special import gamma

DEFAULT_TOL = 1e-10
_ETA0 = 0.25


def _check_n(n):
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise DomainError(f"the mollifier constants need an integer dimension n >= 2, got {n!r}")


def ball_volume(n: int) -> Interval:
    """``V_n = pi^(n/2) / Gamma(n/2 + 1)``."""
    if n < 1:
        raise DomainError("ball volume needs n >= 1")
    top = PI.ipow(n // 2)
    if n % 2:
        top = top * PI.sqrt()
    return top / gamma(Interval(Fraction(n, 2) + 1))


def _profile(r):
    """``e^(-1/(1-r^2))`` and ``v = 1/(1-r^2)``."""
    v = 1.0 / (1.0 - r * r)
    return exp(-v), v


def _tail_factor(eta: float) -> tuple:
    S = 1.0 / Interval(eta)
    if S.lo < 4.0:
        raise DomainError("closed-form majorant needs eta <= 1/4")
    return S, (-(S * 0.5)).exp()


def _norm_tail(eta: float) -> Interval:
    S, e = _tail_factor(eta)
    return e * 2.0 / S.sqr()


def _grad_tail(eta: float) -> Interval:
    return _tail_factor(eta)[1]


def _fraenkel_tail_bound(n: int):
    def bound(eta: float) -> Interval:
        S, e = _tail_factor(eta)
        return (Interval(2 * (n - 1)) / S + S + 2.0) * e

    return bound


def _radial(f, tail, tol_rel: float, estimate: float) -> Interval:
    """Integrate ``f`` on ``[0, 1)`` to relative width ``tol_rel``."""
    target = tol_rel * estimate / 8.0
    for _ in range(6):
        v = integrate(IntegrandSpec(f, 0.0, 1.0, target_width=target, singular_end=SingularEnd(tail, _ETA0)))
        if v.lo > 0 and v.width() <= tol_rel * v.lo / 4.0:
            return v
        target *= 0.25
    raise MaxRefinementError("radial integral did not reach the requested relative width")


@lru_cache(maxsize=32)
def _norm_integral(n: int, tol: float) -> Interval:
    def f(r):
        g, _ = _profile(r)
        return g * r.ipow(n - 1) if n > 1 else g

    rough = integrate(IntegrandSpec(f, 0.0, 1.0, 1e-3, singular_end=SingularEnd(_norm_tail, _ETA0)))
    return _radial(f, _norm_tail, tol, rough.lo)


def compute_normalization(n: int, tol: float = DEFAULT_TOL) -> Interval:
    """Enclosure of ``c = 1 / int_{|x|<1} e^(-1/(1-|x|^2)) dx``; relative width <= ``tol``."""
    _check_n(n)
    if not tol > 0:
        raise DomainError("tol must be positive")
    J = _norm_integral(n, float(tol))
    return ONE / (J * ball_volume(n) * n)


@lru_cache(maxsize=32)
def _grad_integral(n: int, tol: float) -> Interval:
    def f(r):
        g, v = _profile(r)
        return g * v.sqr() * r.ipow(n) * 2.0

    rough = integrate(IntegrandSpec(f, 0.0, 1.0, 1e-3, singular_end=SingularEnd(_grad_tail, _ETA0)))
    return _radial(f, _grad_tail, tol, rough.lo)


def compute_I1(n: int, tol: float = DEFAULT_TOL) -> Interval:
    """Enclosure of ``int_{R^n} |d rho / d x_1| dx``.

    Radially ``|rho'(r)| = 2 c r v^2 e^(-v)``, and ``int_{S^(n-1)} |w_1| = 2 V_(n-1)``.
    """
    _check_n(n)
    if not tol > 0:
        raise DomainError("tol must be positive")
    c = compute_normalization(n, tol)
    return c * ball_volume(n - 1) * 2.0 * _grad_integral(n, float(tol))


def sign_change_radius(n: int) -> Interval:
    """Zero of ``(n-1) - 2 r^2/(1-r^2)^2`` in ``(0, 1)``.

    ``r = (-sqrt 2 + sqrt(2 + 4(n-1))) / (2 sqrt(n-1))``.
    """
    _check_n(n)
    s2 = Interval(2).sqrt()
    m = Interval(n - 1).sqrt()
    return (Interval(2 + 4 * (n - 1)).sqrt() - s2) / (m * 2.0)


@lru_cache(maxsize=32)
def _fraenkel_integral(n: int, tol: float, absolute: bool) -> Interval:
    def f(r):
        g, v = _profile(r)
        w = (n - 1) - v.sqr() * r * r * 2.0
        return w * g * r.ipow(n - 1) / (1.0 - r)

    bound = _fraenkel_tail_bound(n)
    r0 = sign_change_radius(n)
    if not absolute:
        rough = integrate(IntegrandSpec(f, 0.0, 1.0, 1e-3, singular_end=SingularEnd(bound, _ETA0)))
        return _radial(lambda r: -f(r), bound, tol, -rough.hi) * -1.0
    # w >= 0 on [0, r0] and w <= 0 on [r0, 1); the few ulps around r0 are
    # bounded by width times the magnitude there
    left_est = integrate_finite(f, 0.0, r0.lo, 1e-3)
    target = tol * left_est.lo / 16.0
    left = integrate_finite(f, 0.0, r0.lo, target)
    mid = Interval(0.0, (r0.width() * f(r0).mag()))
    right_est = integrate(IntegrandSpec(lambda r: -f(r), r0.hi, 1.0, 1e-3, singular_end=SingularEnd(bound, _ETA0)))
    right = integrate(
        IntegrandSpec(lambda r: -f(r), r0.hi, 1.0, tol * right_est.lo / 16.0, singular_end=SingularEnd(bound, _ETA0))
    )
    return left + right + mid


def compute_P(n: int, tol: float = DEFAULT_TOL, absolute: bool = True) -> Interval:
    """Enclosure of ``int_{|y|<1} |rho_1(y)| / (1 - |y|) dy``.

    ``rho_1(y) = (n-1) rho(|y|) + |y| rho'(|y|)``.  With ``absolute=False`` the
    signed integral is returned instead (diagnostic; the signed value is
    smaller, so only the absolute form is a valid constant).
    """
    _check_n(n)
    if not tol > 0:
        raise DomainError("tol must be positive")
    c = compute_normalization(n, tol)
    return c * ball_volume(n) * n * _fraenkel_integral(n, float(tol), bool(absolute))


def compute_b_eps(n: int, eps, I1: Interval) -> Interval:
    """``(4/eps) * I1``; any number above the upper endpoint is a valid ``b_eps``."""
    _check_n(n)
    e = eps if isinstance(eps, Interval) else Interval(eps)
    if not e.lo > 0:
        raise DomainError(f"eps must be positive, got {eps}")
    return I1 * 4.0 / e


@dataclass(frozen=True)
class MollifierConstants:
    n: int
    c: Interval
    I1: Interval
    P: Interval

    def __post_init__(self):
        if not (self.c.lo > 0 and self.I1.lo > 0 and self.P.lo > 0):
            raise DomainError("mollifier constants must be positive")

    def to_dict(self) -> dict:
        return {"n": self.n, "c": self.c.to_dict(), "I1": self.I1.to_dict(), "P": self.P.to_dict()}

    @classmethod
    def from_dict(cls, d: dict) -> "MollifierConstants":
        return cls(d["n"], Interval.from_dict(d["c"]), Interval.from_dict(d["I1"]), Interval.from_dict(d["P"]))


def mollifier_constants(n: int, tol: float = DEFAULT_TOL) -> MollifierConstants:
    return MollifierConstants(n, compute_normalization(n, tol), compute_I1(n, tol), compute_P(n, tol))


__all__ = [
    "MollifierConstants",
    "ball_volume",
    "compute_normalization",
    "compute_I1",
    "compute_P",
    "compute_b_eps",
    "sign_change_radius",
    "mollifier_constants",
]
