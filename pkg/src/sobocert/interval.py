"""Closed real intervals with outward-rounded endpoints.

No process-wide rounding mode is touched.  Every operation is evaluated in
round-to-nearest and the exact rounding error is recovered with error-free
transformations (TwoSum, Dekker's TwoProduct).  The result endpoint is then
moved one step outward only when the rounded value is on the wrong side of the
exact one, so exactly representable results stay point intervals.  Outside the
range where the error-free transformations are valid the endpoint is widened
unconditionally by one ulp.

Elementary functions reduce their argument with certified constants and sum a
Taylor (or atanh) series in interval arithmetic, adding an explicit bound for
the truncated tail.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

from .errors import DomainError

__all__ = [
    "Interval",
    "Real",
    "const_pi",
    "const_e",
    "const_ln2",
    "exp",
    "log",
    "sin",
    "cos",
    "sqrt",
    "pow_real",
    "nth_root",
    "hull",
    "interval_max",
]

Real = Union[int, float, Fraction]

_INF = math.inf
_MAX = 1.7976931348623157e308
_MIN_NORMAL = 2.2250738585072014e-308
# TwoProduct is exact when neither the operands nor the product are near the
# overflow or underflow thresholds.
_TINY = 1e-280
_HUGE = 1e280
_SPLITTER = 134217729.0  # 2**27 + 1

_nextafter = math.nextafter


def _down(x: float) -> float:
    return _nextafter(x, -_INF)


def _up(x: float) -> float:
    return _nextafter(x, _INF)


def _split(a: float):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _prod_err(a: float, b: float, p: float) -> float:
    """Exact error ``a*b - p`` (valid inside the TwoProduct safe range)."""
    ah, al = _split(a)
    bh, bl = _split(b)
    return ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _safe(a: float, b: float, p: float) -> bool:
    ap = abs(p)
    return _TINY < ap < _HUGE and abs(a) < _HUGE and abs(b) < _HUGE


def _add_down(a: float, b: float) -> float:
    s = a + b
    if s == _INF:
        return _MAX if (a != _INF and b != _INF) else s
    if s == -_INF:
        return s
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return _down(s) if err < 0 else s


def _add_up(a: float, b: float) -> float:
    s = a + b
    if s == -_INF:
        return -_MAX if (a != -_INF and b != -_INF) else s
    if s == _INF:
        return s
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return _up(s) if err > 0 else s


def _mul_down(a: float, b: float) -> float:
    p = a * b
    if _safe(a, b, p):
        return _down(p) if _prod_err(a, b, p) < 0 else p
    if a == 0.0 or b == 0.0:
        return 0.0
    if p == _INF:
        return _MAX
    if (a > 0) == (b > 0):
        # positive product: never step below zero on underflow
        return max(_down(p), 0.0)
    return _down(p)


def _mul_up(a: float, b: float) -> float:
    p = a * b
    if _safe(a, b, p):
        return _up(p) if _prod_err(a, b, p) > 0 else p
    if a == 0.0 or b == 0.0:
        return 0.0
    if p == -_INF:
        return -_MAX
    if (a > 0) != (b > 0):
        return min(_up(p), 0.0)
    return _up(p)


def _div_sign(a: float, b: float, q: float) -> int:
    """Sign of ``a/b - q`` or 2 when it cannot be decided exactly."""
    if not (_safe(q, b, q) and _TINY < abs(a) < _HUGE and _TINY < abs(b) < _HUGE):
        return 2
    p = q * b
    e = _prod_err(q, b, p)
    r = (a - p) - e
    if r == 0.0:
        return 0
    return -1 if (r < 0) != (b < 0) else 1


def _div_down(a: float, b: float) -> float:
    q = a / b
    if a == 0.0:
        return 0.0
    s = _div_sign(a, b, q)
    if s == 2:
        if q == _INF:
            return _MAX
        return max(_down(q), 0.0) if (a > 0) == (b > 0) else _down(q)
    return _down(q) if s < 0 else q


def _div_up(a: float, b: float) -> float:
    q = a / b
    if a == 0.0:
        return 0.0
    s = _div_sign(a, b, q)
    if s == 2:
        if q == -_INF:
            return -_MAX
        return min(_up(q), 0.0) if (a > 0) != (b > 0) else _up(q)
    return _up(q) if s > 0 else q


def _sqrt_bounds(x: float):
    s = math.sqrt(x)
    if x == 0.0:
        return 0.0, 0.0
    if not (_TINY < x < _HUGE):
        return max(_down(s), 0.0), _up(s)
    p = s * s
    r = (x - p) - _prod_err(s, s, p)
    if r == 0.0:
        return s, s
    return (s, _up(s)) if r > 0 else (_down(s), s)


def _pow_nonneg(a: float, n: int, rounder) -> float:
    """``a**n`` for ``a >= 0`` with every product rounded by ``rounder``."""
    result = 1.0
    base = a
    while n:
        if n & 1:
            result = rounder(result, base)
        n >>= 1
        if n:
            base = rounder(base, base)
    return result


def _fraction_bounds(f: Fraction):
    x = float(f)  # int/int true division is correctly rounded
    fx = Fraction(x)
    if fx == f:
        return x, x
    if fx < f:
        return x, _up(x)
    return _down(x), x


class Interval:
    """Closed interval ``[lo, hi]`` of reals with float endpoints.

    ``Interval(x)`` builds a point interval; integers and ``Fraction`` values
    that are not representable are enclosed outward.  Instances are immutable.
    ``hi = +inf`` is accepted only to mark unbounded integration domains and
    such intervals are rejected by the arithmetic operators.
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Real, hi: Real | None = None):
        lo_lo, lo_hi = _real_bounds(lo)
        if hi is None:
            a, b = lo_lo, lo_hi
        else:
            b = _real_bounds(hi)[1]
            a = lo_lo
        if math.isnan(a) or math.isnan(b):
            raise DomainError("interval endpoint is NaN")
        if a > b:
            raise DomainError(f"empty interval [{a!r}, {b!r}]")
        if a == _INF or b == -_INF:
            raise DomainError("interval must have a finite lower endpoint")
        object.__setattr__(self, "lo", a)
        object.__setattr__(self, "hi", b)

    @classmethod
    def _raw(cls, lo: float, hi: float) -> "Interval":
        obj = object.__new__(cls)
        object.__setattr__(obj, "lo", lo)
        object.__setattr__(obj, "hi", hi)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Interval is immutable")

    def __reduce__(self):
        return (Interval._raw, (self.lo, self.hi))

    # -- construction / serialization ---------------------------------------

    @classmethod
    def from_decimal(cls, lo: str, hi: str | None = None) -> "Interval":
        """Parse decimal strings, rounding the lower end down and the upper up."""
        a = _fraction_bounds(Fraction(lo))
        b = a if hi is None else _fraction_bounds(Fraction(hi))
        return cls._raw(a[0], b[1])

    @classmethod
    def from_hex(cls, lo: str, hi: str) -> "Interval":
        return cls(float.fromhex(lo), float.fromhex(hi))

    @classmethod
    def from_dict(cls, d: dict) -> "Interval":
        if "lo_hex" in d:
            return cls.from_hex(d["lo_hex"], d["hi_hex"])
        return cls.from_decimal(d["lo_dec"], d["hi_dec"])

    def to_dict(self) -> dict:
        # repr() is the shortest string that round-trips, so the decimal form
        # is exact as well; the hex form is kept for golden files.
        return {
            "lo_dec": repr(self.lo),
            "hi_dec": repr(self.hi),
            "lo_hex": self.lo.hex(),
            "hi_hex": self.hi.hex(),
        }

    # -- predicates and measures ------------------------------------------------

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def is_unbounded(self) -> bool:
        return self.hi == _INF

    def width(self) -> float:
        """Upper bound of ``hi - lo``."""
        return _add_up(self.hi, -self.lo)

    def rel_width(self) -> float:
        """Upper bound of ``width / mig``; infinite when the interval touches 0."""
        m = self.mig()
        return _INF if m == 0.0 else _div_up(self.width(), m)

    def mid(self) -> float:
        if self.is_unbounded:
            raise DomainError("unbounded interval has no midpoint")
        m = 0.5 * self.lo + 0.5 * self.hi
        return min(max(m, self.lo), self.hi)

    def rad(self) -> float:
        m = self.mid()
        return max(_add_up(self.hi, -m), _add_up(m, -self.lo))

    def mag(self) -> float:
        return max(abs(self.lo), abs(self.hi))

    def mig(self) -> float:
        if self.lo <= 0.0 <= self.hi:
            return 0.0
        return min(abs(self.lo), abs(self.hi))

    def contains(self, x) -> bool:
        """Exact membership test for floats, ints, Fractions or intervals."""
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        if isinstance(x, float):
            return self.lo <= x <= self.hi
        if self.is_unbounded:
            return Fraction(self.lo) <= Fraction(x)
        return Fraction(self.lo) <= Fraction(x) <= Fraction(self.hi)

    __contains__ = contains

    def subset(self, other: "Interval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: "Interval") -> "Interval":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            raise DomainError("intervals are disjoint")
        return Interval._raw(lo, hi)

    def hull(self, other: "Interval") -> "Interval":
        return Interval._raw(min(self.lo, other.lo), max(self.hi, other.hi))

    def widen(self, ulps: int) -> "Interval":
        lo, hi = self.lo, self.hi
        for _ in range(ulps):
            lo, hi = _down(lo), _up(hi)
        return Interval._raw(lo, hi)

    def __eq__(self, other):
        if isinstance(other, Interval):
            return self.lo == other.lo and self.hi == other.hi
        return NotImplemented

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self):
        return f"Interval({self.lo!r}, {self.hi!r})"

    def __str__(self):
        return f"[{self.lo!r}, {self.hi!r}]"

    # -- arithmetic -----------------------------------------------------------

    def _check_bounded(self, other: "Interval"):
        if self.hi == _INF or other.hi == _INF:
            raise DomainError("unbounded intervals are not arithmetic operands")

    def __neg__(self):
        return Interval._raw(-self.hi, -self.lo)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = _as_interval(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_bounded(other)
        return Interval._raw(_add_down(self.lo, other.lo), _add_up(self.hi, other.hi))

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_interval(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_bounded(other)
        return Interval._raw(_add_down(self.lo, -other.hi), _add_up(self.hi, -other.lo))

    def __rsub__(self, other):
        other = _as_interval(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__sub__(self)

    def __mul__(self, other):
        other = _as_interval(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_bounded(other)
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        if a >= 0.0:
            if c >= 0.0:
                return Interval._raw(_mul_down(a, c), _mul_up(b, d))
            if d <= 0.0:
                return Interval._raw(_mul_down(b, c), _mul_up(a, d))
            return Interval._raw(_mul_down(b, c), _mul_up(b, d))
        if b <= 0.0:
            if c >= 0.0:
                return Interval._raw(_mul_down(a, d), _mul_up(b, c))
            if d <= 0.0:
                return Interval._raw(_mul_down(b, d), _mul_up(a, c))
            return Interval._raw(_mul_down(a, d), _mul_up(a, c))
        if c >= 0.0:
            return Interval._raw(_mul_down(a, d), _mul_up(b, d))
        if d <= 0.0:
            return Interval._raw(_mul_down(b, c), _mul_up(a, c))
        lo = min(_mul_down(a, d), _mul_down(b, c))
        hi = max(_mul_up(a, c), _mul_up(b, d))
        return Interval._raw(lo, hi)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_interval(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_bounded(other)
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        if c <= 0.0 <= d:
            raise DomainError(f"division by an interval containing zero: {other}")
        if c > 0.0:
            if a >= 0.0:
                return Interval._raw(_div_down(a, d), _div_up(b, c))
            if b <= 0.0:
                return Interval._raw(_div_down(a, c), _div_up(b, d))
            return Interval._raw(_div_down(a, c), _div_up(b, c))
        if a >= 0.0:
            return Interval._raw(_div_down(b, d), _div_up(a, c))
        if b <= 0.0:
            return Interval._raw(_div_down(b, c), _div_up(a, d))
        return Interval._raw(_div_down(b, d), _div_up(a, d))

    def __rtruediv__(self, other):
        other = _as_interval(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__truediv__(self)

    def __pow__(self, y):
        if isinstance(y, int):
            return self.ipow(y)
        return pow_real(self, y)

    def __abs__(self):
        if self.lo >= 0.0:
            return self
        if self.hi <= 0.0:
            return -self
        return Interval._raw(0.0, max(-self.lo, self.hi))

    def sqr(self) -> "Interval":
        m, g = self.mag(), self.mig()
        return Interval._raw(_mul_down(g, g), _mul_up(m, m))

    def ipow(self, n: int) -> "Interval":
        """Integer power with the exact image range (no dependency loss)."""
        if n == 0:
            return ONE
        if n < 0:
            return ONE / self.ipow(-n)
        self._check_bounded(self)
        if n % 2 == 0:
            g, m = self.mig(), self.mag()
            return Interval._raw(_pow_nonneg(g, n, _mul_down), _pow_nonneg(m, n, _mul_up))
        lo = self.lo
        lo = _pow_nonneg(lo, n, _mul_down) if lo >= 0 else -_pow_nonneg(-lo, n, _mul_up)
        hi = self.hi
        hi = _pow_nonneg(hi, n, _mul_up) if hi >= 0 else -_pow_nonneg(-hi, n, _mul_down)
        return Interval._raw(lo, hi)

    # -- elementary functions ----------------------------------------------------

    def exp(self) -> "Interval":
        self._check_bounded(self)
        if self.is_point:
            return Interval._raw(*_exp_point(self.lo))
        return Interval._raw(_exp_point(self.lo)[0], _exp_point(self.hi)[1])

    def log(self) -> "Interval":
        self._check_bounded(self)
        if self.lo <= 0.0:
            raise DomainError(f"log of non-positive interval {self}")
        if self.is_point:
            return Interval._raw(*_log_point(self.lo))
        return Interval._raw(_log_point(self.lo)[0], _log_point(self.hi)[1])

    def sqrt(self) -> "Interval":
        self._check_bounded(self)
        if self.lo < 0.0:
            raise DomainError(f"sqrt of interval with negative part {self}")
        return Interval._raw(_sqrt_bounds(self.lo)[0], _sqrt_bounds(self.hi)[1])

    def sin(self) -> "Interval":
        return _periodic(self, _sin_point, PIO2, PIO2 + PI)

    def cos(self) -> "Interval":
        return _periodic(self, _cos_point, ZERO, PI)


def _real_bounds(x) -> tuple:
    if isinstance(x, float):
        return x, x
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, int):
        f = float(x)
        if int(f) == x:
            return f, f
        return _fraction_bounds(Fraction(x))
    if isinstance(x, Fraction):
        return _fraction_bounds(x)
    if isinstance(x, str):
        return _fraction_bounds(Fraction(x))
    try:
        f = float(x)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"cannot build an interval from {x!r}") from exc
    return f, f


def _as_interval(x):
    if isinstance(x, Interval):
        return x
    if isinstance(x, float):
        return Interval._raw(x, x)
    if isinstance(x, (int, Fraction)):
        return Interval(x)
    return NotImplemented


ZERO = Interval._raw(0.0, 0.0)
ONE = Interval._raw(1.0, 1.0)

_PI_STR = "3.14159265358979323846264338327950288419716939937510582097494459"
_E_STR = "2.71828182845904523536028747135266249775724709369995957496696763"
_LN2_STR = "0.69314718055994530941723212145817656807550013436025525412068001"

PI = Interval.from_decimal(_PI_STR)
E = Interval.from_decimal(_E_STR)
LN2 = Interval.from_decimal(_LN2_STR)
PIO2 = Interval.from_decimal(str(Fraction(_PI_STR) / 2))
TWOPI = Interval.from_decimal(str(Fraction(_PI_STR) * 2))
_LN2_F = 0.6931471805599453
_PIO2_F = 1.5707963267948966
# Cody-Waite splits: the high parts carry trailing zero bits so that k*hi is
# exact for |k| < 2**20 and the reduction error comes from the tiny low part.
_LN2_HI = 6.93147180369123816490e-01
_LN2_LO = Interval.from_decimal(str(Fraction(_LN2_STR) - Fraction(_LN2_HI)))
_PIO2_HI = 1.57079632673412561417e00
_PIO2_LO = Interval.from_decimal(str(Fraction(_PI_STR) / 2 - Fraction(_PIO2_HI)))


def const_pi() -> Interval:
    return PI


def const_e() -> Interval:
    return E


def const_ln2() -> Interval:
    return LN2


def _coeffs(fracs: Iterable[Fraction]) -> tuple:
    return tuple(Interval(f) for f in fracs)


# 1/j! for the exp series, (-1)^j/(2j+1)! for sin, (-1)^j/(2j)! for cos,
# 1/(2j+1) for the atanh series of log.
_EXP_TERMS = 20
_EXP_C = _coeffs(Fraction(1, math.factorial(j)) for j in range(_EXP_TERMS))
_TRIG_TERMS = 12
_SIN_C = _coeffs(Fraction((-1) ** j, math.factorial(2 * j + 1)) for j in range(_TRIG_TERMS))
_COS_C = _coeffs(Fraction((-1) ** j, math.factorial(2 * j)) for j in range(_TRIG_TERMS))
_LOG_TERMS = 16
_LOG_C = _coeffs(Fraction(1, 2 * j + 1) for j in range(_LOG_TERMS))


def _horner(coeffs: tuple, x: Interval) -> Interval:
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = c + x * acc
    return acc


def _pad(v: Interval, rem: float) -> Interval:
    if rem == 0.0:
        return v
    return Interval._raw(_add_down(v.lo, -rem), _add_up(v.hi, rem))


def _exp_point(x: float):
    if x == 0.0:
        return 1.0, 1.0
    if x > 709.79:
        return _MAX, _INF
    if x < -745.2:
        return 0.0, 5e-324
    k = int(round(x / _LN2_F))
    r = Interval._raw(x, x) - Interval._raw(k * _LN2_HI, k * _LN2_HI) - _LN2_LO * k
    m = r.mag()
    # Lagrange remainder m^N/N! * e^m, with e^m <= 2 for m <= 0.35.
    rem = _mul_up(_pow_nonneg(m, _EXP_TERMS, _mul_up), 2.0 / math.factorial(_EXP_TERMS) * 1.0000001)
    v = _pad(_horner(_EXP_C, r), rem)
    lo, hi = math.ldexp(v.lo, k), math.ldexp(v.hi, k)
    if lo < _MIN_NORMAL * 4:
        lo = max(_down(lo), 0.0)
        hi = _up(hi)
    if hi == _INF:
        lo = min(lo, _MAX)
    # keep the exact side of exp(0) = 1 so inclusion monotonicity survives rounding
    if x < 0.0:
        hi = min(hi, 1.0)
    else:
        lo = max(lo, 1.0)
    return lo, hi


_SQRT_HALF = 0.7071067811865476


def _log_point(x: float):
    if x == 1.0:
        return 0.0, 0.0
    m, e = math.frexp(x)
    if m < _SQRT_HALF:
        m *= 2.0
        e -= 1
    mi = Interval._raw(m, m)
    z = (mi - 1.0) / (mi + 1.0)
    z2 = z.sqr()
    zm = z.mag()
    n = _LOG_TERMS
    # tail of 2*sum_{j>=n} z^(2j+1)/(2j+1) <= 2|z|^(2n+1)/((2n+1)(1-z^2))
    rem = _div_up(_mul_up(2.0, _pow_nonneg(zm, 2 * n + 1, _mul_up)), (2 * n + 1) * 0.97)
    v = _pad(2.0 * z * _horner(_LOG_C, z2), rem)
    if e:
        v = v + LN2 * e
    if x < 1.0:
        return v.lo, min(v.hi, 0.0)
    return max(v.lo, 0.0), v.hi


def _reduce_half_pi(x: float):
    k = int(round(x / _PIO2_F))
    if not k:
        return 0, Interval._raw(x, x)
    if abs(k) < 2**20:
        r = Interval._raw(x, x) - Interval._raw(k * _PIO2_HI, k * _PIO2_HI) - _PIO2_LO * k
    else:
        r = Interval._raw(x, x) - PIO2 * k
    return k % 4, r


def _sin_series(r: Interval) -> Interval:
    m = r.mag()
    n = _TRIG_TERMS
    rem = _div_up(_pow_nonneg(m, 2 * n + 1, _mul_up), float(math.factorial(2 * n + 1)))
    return _pad(r * _horner(_SIN_C, r.sqr()), rem)


def _cos_series(r: Interval) -> Interval:
    m = r.mag()
    n = _TRIG_TERMS
    rem = _div_up(_pow_nonneg(m, 2 * n, _mul_up), float(math.factorial(2 * n)))
    return _pad(_horner(_COS_C, r.sqr()), rem)


def _clamp_unit(v: Interval):
    return max(v.lo, -1.0), min(v.hi, 1.0)


def _sin_point(x: float):
    if x == 0.0:
        return 0.0, 0.0
    q, r = _reduce_half_pi(x)
    v = (_sin_series, _cos_series, _sin_series, _cos_series)[q](r)
    if q >= 2:
        v = -v
    lo, hi = _clamp_unit(v)
    # sign and |sin x| <= |x| near the exact zero at the origin
    if 0.0 < x < 3.0:
        lo, hi = max(lo, 0.0), min(hi, x)
    elif -3.0 < x < 0.0:
        lo, hi = max(lo, x), min(hi, 0.0)
    return lo, hi


def _cos_point(x: float):
    if x == 0.0:
        return 1.0, 1.0
    q, r = _reduce_half_pi(x)
    v = (_cos_series, _sin_series, _cos_series, _sin_series)[q](r)
    if q in (1, 2):
        v = -v
    return _clamp_unit(v)


def _periodic(x: Interval, point_fn, max_at: Interval, min_at: Interval) -> Interval:
    """Range of sin/cos over ``x``; extrema sit at ``max_at + 2 pi j`` etc."""
    x._check_bounded(x)
    if x.is_point:
        return Interval._raw(*point_fn(x.lo))
    if x.hi - x.lo >= 6.28:
        return Interval._raw(-1.0, 1.0)
    a, b = point_fn(x.lo), point_fn(x.hi)
    lo, hi = min(a[0], b[0]), max(a[1], b[1])
    for crit, is_max in ((max_at, True), (min_at, False)):
        j0 = math.floor((x.lo - crit.mid()) / 6.283185307179586) - 1
        for j in range(j0, j0 + 4):
            c = crit + TWOPI * j if j else crit
            if c.hi >= x.lo and c.lo <= x.hi:
                if is_max:
                    hi = 1.0
                else:
                    lo = -1.0
    return Interval._raw(lo, hi)


# -- generic entry points: accept Interval, numbers, or objects implementing the
# same method (Taylor series) ---------------------------------------------------


def _lift(x):
    if isinstance(x, Interval):
        return x
    if isinstance(x, (int, float, Fraction)):
        return Interval(x)
    return x


def exp(x):
    return _lift(x).exp()


def log(x):
    return _lift(x).log()


def sin(x):
    return _lift(x).sin()


def cos(x):
    return _lift(x).cos()


def sqrt(x):
    return _lift(x).sqrt()


def pow_real(x, y):
    """``x**y`` for a real exponent; non-integer exponents need ``x >= 0``."""
    x = _lift(x)
    if not isinstance(x, Interval):
        return x.pow_real(y)
    if isinstance(y, int):
        return x.ipow(y)
    y = _lift(y)
    if y.is_point and y.lo.is_integer() and abs(y.lo) < 2**31:
        return x.ipow(int(y.lo))
    if x.lo < 0.0:
        raise DomainError(f"non-integer power of interval with negative part {x}")
    if x.lo == 0.0:
        if y.lo <= 0.0:
            raise DomainError("0 raised to a non-positive power")
        if x.hi == 0.0:
            return ZERO
        top = (y * Interval._raw(x.hi, x.hi).log()).exp()
        return Interval._raw(0.0, top.hi)
    return (y * x.log()).exp()


def nth_root(x, n: int):
    """Real ``n``-th root; odd roots of negative arguments are allowed."""
    if n < 1:
        raise DomainError("root order must be >= 1")
    x = _lift(x)
    if n == 1:
        return x
    if not isinstance(x, Interval):
        return x.pow_real(ONE / n)
    if n == 2:
        return x.sqrt()
    if x.lo < 0.0:
        if n % 2 == 0:
            raise DomainError(f"even root of interval with negative part {x}")
        neg = nth_root(Interval._raw(0.0, -x.lo), n)
        pos = nth_root(Interval._raw(0.0, max(x.hi, 0.0)), n)
        lo = -neg.hi
        hi = pos.hi if x.hi > 0 else -nth_root(Interval._raw(-x.hi, -x.hi), n).lo
        return Interval._raw(lo, hi)
    return pow_real(x, ONE / n)


def hull(*xs: Interval) -> Interval:
    lo = min(x.lo for x in xs)
    hi = max(x.hi for x in xs)
    return Interval._raw(lo, hi)


def interval_max(a: Interval, b: Interval) -> Interval:
    """Enclosure of ``{max(x, y)}`` for ``x`` in ``a`` and ``y`` in ``b``."""
    return Interval._raw(max(a.lo, b.lo), max(a.hi, b.hi))
