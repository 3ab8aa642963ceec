import mpmath as mp
import pytest

import _oracles as orc
from sobocert.interval import Interval, exp, log, sin, sqrt, pow_real
from sobocert.taylor import Taylor, derivatives


def _mp_coeffs(fn, x0, order):
    return [mp.diff(fn, mp.mpf(x0), k) / mp.factorial(k) for k in range(order + 1)]


@pytest.mark.parametrize(
    "ours,ref",
    [
        (lambda x: exp(x) * sin(x), lambda x: mp.exp(x) * mp.sin(x)),
        (lambda x: log(x) / (x + 1.0), lambda x: mp.log(x) / (x + 1)),
        (lambda x: sqrt(x) * x.sqr(), lambda x: mp.sqrt(x) * x**2),
        (lambda x: pow_real(x, Interval(0.25)), lambda x: x**0.25),
        (lambda x: (-(x - 1.0).sqr()).exp(), lambda x: mp.exp(-((x - 1) ** 2))),
    ],
)
def test_coefficients_against_mpmath(ours, ref):
    cs = derivatives(ours, Interval(1.3), 6)
    want = _mp_coeffs(ref, 1.3, 6)
    for c, w in zip(cs, want):
        assert orc.inside(c, w), (c, w)


def test_whole_interval_encloses_pointwise_coefficients():
    X = Interval(0.5, 0.7)
    cs = derivatives(lambda x: sin(x) * exp(x), X, 4)
    for x0 in (0.5, 0.55, 0.6, 0.7):
        for c, w in zip(cs, _mp_coeffs(lambda x: mp.sin(x) * mp.exp(x), x0, 4)):
            assert orc.inside(c, w)


def test_variable_and_constant():
    v = Taylor.variable(2.0, 3)
    assert v[0] == Interval(2.0) and v[1] == Interval(1.0) and v[2] == Interval(0.0)
    c = Taylor.constant(5.0, 3)
    assert (c * v)[1] == Interval(5.0)
