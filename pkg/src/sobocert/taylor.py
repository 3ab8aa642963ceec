"""Truncated Taylor series with interval coefficients.

``Taylor.variable(x0, order)`` represents ``x0 + h``; pushing it through an
expression built from the usual operators and the generic functions in
:mod:`sobocert.interval` yields the normalized derivatives
``f^(k)(x0) / k!`` for ``k <= order``.  When ``x0`` is a whole interval the
coefficients enclose the derivatives over that interval, which is what the
verified quadrature and the branch-and-bound search need for their remainder
terms.
"""

from __future__ import annotations

from .errors import DomainError
from .interval import ONE, ZERO, Interval, _lift


class Taylor:
    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = list(coeffs)

    @classmethod
    def variable(cls, x0, order: int) -> "Taylor":
        c = [ZERO] * (order + 1)
        c[0] = _lift(x0)
        if order >= 1:
            c[1] = ONE
        return cls(c)

    @classmethod
    def constant(cls, v, order: int) -> "Taylor":
        c = [ZERO] * (order + 1)
        c[0] = _lift(v)
        return cls(c)

    @property
    def order(self) -> int:
        return len(self.c) - 1

    def __getitem__(self, k):
        return self.c[k]

    def __repr__(self):
        return f"Taylor({self.c!r})"

    def _other(self, other):
        if isinstance(other, Taylor):
            return other
        if isinstance(other, (Interval, int, float)):
            return None
        return NotImplemented

    # -- arithmetic ------------------------------------------------------------

    def __neg__(self):
        return Taylor([-a for a in self.c])

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            c = list(self.c)
            c[0] = c[0] + other
            return Taylor(c)
        return Taylor([a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            c = list(self.c)
            c[0] = c[0] - other
            return Taylor(c)
        return Taylor([a - b for a, b in zip(self.c, o.c)])

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return Taylor([a * other for a in self.c])
        a, b = self.c, o.c
        n = len(a)
        out = []
        for k in range(n):
            acc = a[0] * b[k]
            for j in range(1, k + 1):
                acc = acc + a[j] * b[k - j]
            out.append(acc)
        return Taylor(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return Taylor([a / other for a in self.c])
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def reciprocal(self) -> "Taylor":
        v = self.c
        if v[0].lo <= 0.0 <= v[0].hi:
            raise DomainError("reciprocal of a series whose value contains zero")
        inv0 = ONE / v[0]
        out = [inv0]
        for k in range(1, len(v)):
            acc = v[1] * out[k - 1]
            for j in range(2, k + 1):
                acc = acc + v[j] * out[k - j]
            out.append(-acc * inv0)
        return Taylor(out)

    def __pow__(self, y):
        if isinstance(y, int):
            return self.ipow(y)
        return self.pow_real(y)

    def sqr(self) -> "Taylor":
        return self * self

    def ipow(self, n: int) -> "Taylor":
        if n < 0:
            return self.ipow(-n).reciprocal()
        result = Taylor.constant(ONE, self.order)
        base = self
        first = True
        while n:
            if n & 1:
                result = base if first else result * base
                first = False
            n >>= 1
            if n:
                base = base * base
        return result

    # -- elementary functions ----------------------------------------------------
    # Standard recurrences for g = F(f): g_k expressed through f_1..f_k and
    # g_0..g_{k-1}; each needs only the value of F at the constant term.

    def exp(self) -> "Taylor":
        f = self.c
        g = [f[0].exp()]
        for k in range(1, len(f)):
            acc = f[1] * g[k - 1]
            for j in range(2, k + 1):
                acc = acc + (f[j] * j) * g[k - j]
            g.append(acc / k)
        return Taylor(g)

    def log(self) -> "Taylor":
        f = self.c
        f0 = f[0]
        g = [f0.log()]
        for k in range(1, len(f)):
            acc = f[k] * k
            for j in range(1, k):
                acc = acc - (g[j] * j) * f[k - j]
            g.append(acc / (f0 * k))
        return Taylor(g)

    def _sincos(self):
        f = self.c
        s = [f[0].sin()]
        co = [f[0].cos()]
        for k in range(1, len(f)):
            sa = f[1] * co[k - 1]
            ca = f[1] * s[k - 1]
            for j in range(2, k + 1):
                fj = f[j] * j
                sa = sa + fj * co[k - j]
                ca = ca + fj * s[k - j]
            s.append(sa / k)
            co.append(-ca / k)
        return Taylor(s), Taylor(co)

    def sin(self) -> "Taylor":
        return self._sincos()[0]

    def cos(self) -> "Taylor":
        return self._sincos()[1]

    def sqrt(self) -> "Taylor":
        f = self.c
        g0 = f[0].sqrt()
        if g0.lo <= 0.0 and len(f) > 1:
            raise DomainError("sqrt series at a point where the value may vanish")
        g = [g0]
        two_g0 = g0 * 2.0
        for k in range(1, len(f)):
            acc = f[k]
            for j in range(1, k):
                acc = acc - g[j] * g[k - j]
            g.append(acc / two_g0)
        return Taylor(g)

    def pow_real(self, y) -> "Taylor":
        if isinstance(y, int):
            return self.ipow(y)
        y = _lift(y)
        f = self.c
        f0 = f[0]
        if f0.lo <= 0.0:
            raise DomainError("real power series needs a positive base")
        from .interval import pow_real

        g = [pow_real(f0, y)]
        y1 = y + 1.0
        for k in range(1, len(f)):
            acc = None
            for j in range(1, k + 1):
                term = (y1 * j - k) * f[j] * g[k - j]
                acc = term if acc is None else acc + term
            g.append(acc / (f0 * k))
        return Taylor(g)


def derivatives(fn, x0, order: int) -> list:
    """Normalized derivatives ``f^(k)(x0)/k!`` for ``k = 0..order``."""
    return fn(Taylor.variable(x0, order)).c
