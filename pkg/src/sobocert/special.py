"""Gamma function enclosures and the sharp Sobolev constant on R^n."""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Union

from .errors import DomainError
from .interval import _MAX, ONE, PI, Interval, _lift, pow_real

_SQRT_PI = PI.sqrt()

# Gamma is decreasing on (0, x_min] and increasing on [x_min, inf) with
# x_min = 1.4616321449683623...; Gamma(x_min) = 0.8856031944108887...
_XMIN_LO = 1.4616
_XMIN_HI = 1.4617
_GAMMA_MIN_LO = 0.8856

# Point values are computed in 60-digit decimal arithmetic and only then
# rounded outward to doubles, so they come out one or two ulps wide.
_PREC = 60
_PI_DEC = "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899"
_SHIFT = 40  # recurrence target for the Stirling series
_TERMS = 20
# slack covering every rounding of the decimal evaluation (each <= 1e-59 relative)
_SLACK = Fraction(1, 10**45)


def _even_bernoulli(count: int) -> list:
    """``B_2, B_4, ..., B_{2 count}`` exactly (Akiyama-Tanigawa)."""
    out, a = [], []
    for m in range(2 * count + 1):
        a.append(Fraction(1, m + 1))
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        if m >= 2 and m % 2 == 0:
            out.append(a[0])
    return out


_BERNOULLI = _even_bernoulli(_TERMS + 1)
_STIRLING_COEF = [b / (2 * k * (2 * k - 1)) for k, b in enumerate(_BERNOULLI[:_TERMS], 1)]
# first omitted term: |B_{2K+2}| / ((2K+2)(2K+1)) bounds the error for z > 0
_STIRLING_REM = abs(_BERNOULLI[_TERMS]) / ((2 * _TERMS + 2) * (2 * _TERMS + 1))


def _gamma_decimal(x: float):
    """``(value, rho)``: Gamma(x) = value * (1 + theta rho) with |theta| <= 1, or None on overflow."""
    with decimal.localcontext() as ctx:
        ctx.prec = _PREC
        ctx.rounding = decimal.ROUND_HALF_EVEN
        z = Decimal(x)
        prod = Decimal(1)
        while z < _SHIFT:
            prod *= z
            z += 1
        s = (z - Decimal("0.5")) * z.ln() - z + (2 * Decimal(_PI_DEC)).ln() / 2
        inv = 1 / z
        inv2 = inv * inv
        p = inv
        for c in _STIRLING_COEF:
            s += Decimal(c.numerator) / Decimal(c.denominator) * p
            p *= inv2
        if s > 710:
            return None
        value = Fraction(s.exp() / prod)
        rem = _STIRLING_REM * Fraction(p) * Fraction(1001, 1000)
    # |e^d - 1| <= 2|d| for |d| <= 1
    return value, 2 * (rem + _SLACK)


def _gamma_point(x: float) -> Interval:
    """Enclosure of Gamma at a positive float."""
    if x <= 171.0 and (2.0 * x).is_integer():
        k = int(x)
        if x == k:
            return Interval(math.factorial(k - 1))
        # Gamma(k + 1/2) = (2k)! / (4^k k!) * sqrt(pi)
        return Interval(Fraction(math.factorial(2 * k), 4**k * math.factorial(k))) * _SQRT_PI
    got = _gamma_decimal(x)
    if got is None:
        return Interval._raw(_MAX, math.inf)
    value, rho = got
    lo, hi = value * (1 - rho), value * (1 + rho)
    if lo > _MAX:
        return Interval._raw(_MAX, math.inf)
    if hi > _MAX:
        return Interval._raw(Interval(lo).lo, math.inf)
    return Interval(lo, hi)


def gamma(x) -> Interval:
    """Enclosure of ``{Gamma(t) : t in x}`` for ``x.lo > 0``.

    Point arguments go through upward recurrence to ``x >= 40`` and the
    Stirling series, evaluated in 60-digit decimal arithmetic with a bound on
    every rounding; wider arguments use the monotone pieces either side of the
    minimum near 1.4616.
    """
    x = _lift(x)
    if not isinstance(x, Interval):
        raise DomainError("gamma takes an Interval argument")
    if x.is_unbounded:
        raise DomainError("gamma of an unbounded interval")
    if x.lo <= 0.0:
        raise DomainError(f"gamma needs a positive argument, got {x}")
    if x.is_point:
        return _gamma_point(x.lo)
    g_lo = _gamma_point(x.lo)
    g_hi = _gamma_point(x.hi)
    if x.hi <= _XMIN_LO:
        return Interval._raw(g_hi.lo, g_lo.hi)
    if x.lo >= _XMIN_HI:
        return Interval._raw(g_lo.lo, g_hi.hi)
    return Interval._raw(min(_GAMMA_MIN_LO, g_lo.lo, g_hi.lo), max(g_lo.hi, g_hi.hi))


Number = Union[int, float, Fraction, str]


@dataclass(frozen=True)
class SobolevExponents:
    """Dimension ``n`` and target exponent ``p``; ``q = np/(n+p)``.

    ``p`` may be given as an int, float, Fraction or decimal string.  ``q`` is
    always an Interval built from the exact value of ``p``.
    """

    n: int
    p: Number

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 2:
            raise DomainError(f"dimension n must be an integer >= 2, got {self.n!r}")
        pf = self.p_exact
        if not pf > Fraction(self.n, self.n - 1):
            raise DomainError(f"p must exceed n/(n-1) = {self.n}/{self.n - 1}, got p={self.p}")

    @property
    def p_exact(self) -> Fraction:
        try:
            return Fraction(self.p)
        except (TypeError, ValueError, OverflowError) as exc:
            raise DomainError(f"p must be a finite real number, got {self.p!r}") from exc

    @property
    def p_interval(self) -> Interval:
        return Interval(self.p_exact)

    @property
    def q(self) -> Interval:
        pf = self.p_exact
        return Interval(self.n * pf / (self.n + pf))

    def to_dict(self) -> dict:
        return {"n": self.n, "p": str(self.p), "q": self.q.to_dict()}


def talenti_constant(e: SobolevExponents, q: Interval | None = None) -> Interval:
    """Best constant of the Sobolev inequality ``||u||_p <= T ||grad u||_q`` on R^n.

    ``q`` overrides the exponent carried by ``e`` (used to check inclusion
    monotonicity with widened inputs).
    """
    n = e.n
    q = e.q if q is None else q
    if q.hi >= n or q.lo <= 1.0:
        raise DomainError(f"Talenti constant needs 1 < q < n, got q={q}")
    nn = Interval(n)
    inv_q = ONE / q
    t = ONE / PI.sqrt()
    t = t * pow_real(nn, -inv_q)
    t = t * pow_real((q - 1.0) / (nn - q), ONE - inv_q)
    n_over_q = nn / q
    num = gamma(Interval(Fraction(n, 2) + 1)) * gamma(nn)
    den = gamma(n_over_q) * gamma(nn + 1.0 - n_over_q)
    return t * pow_real(num / den, Interval(Fraction(1, n)))


__all__ = ["SobolevExponents", "gamma", "talenti_constant"]
