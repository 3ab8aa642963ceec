import mpmath as mp
import pytest

import _oracles as orc
from sobocert.errors import DomainError
from sobocert.interval import ONE, Interval, exp
from sobocert.mollifier import (
    MollifierConstants,
    ball_volume,
    compute_b_eps,
    compute_I1,
    compute_normalization,
    compute_P,
    mollifier_constants,
    sign_change_radius,
)
from sobocert.quadrature import IntegrandSpec, SingularEnd, integrate


@pytest.mark.parametrize("n", [2, 3])
def test_derived_values(n):
    mc = mollifier_constants(n)
    assert orc.inside(mc.c, orc.MOLLIFIER_C[n])
    assert orc.inside(mc.I1, orc.MOLLIFIER_I1[n])
    assert orc.inside(mc.P, orc.MOLLIFIER_P[n])
    for v in (mc.c, mc.I1, mc.P):
        assert v.width() / v.lo <= 1e-9


def test_reported_intervals_n2():
    assert compute_I1(2).intersects(Interval.from_decimal("1.86412", "1.92770"))
    assert compute_P(2).intersects(Interval.from_decimal("7.45592", "7.50131"))


def test_normalization_formula_n2():
    c = compute_normalization(2)
    assert orc.inside(c, 1 / (2 * mp.pi * mp.mpf(orc.RADIAL_J[2])))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_mass_is_one(n):
    # recompute the radial integral independently with a different Taylor order
    c = compute_normalization(n)
    f = lambda r: exp(-1.0 / (1.0 - r.sqr())) * r.ipow(n - 1)
    se = SingularEnd(lambda eta: exp(-1.0 / Interval(2 * eta)) * Interval(eta))
    J = integrate(IntegrandSpec(f, 0.0, 1.0, target_width=1e-11, singular_end=se, order=12))
    mass = c * ball_volume(n) * n * J
    assert mass.contains(1.0)


def test_ball_volume():
    assert orc.inside(ball_volume(2), mp.pi)
    assert orc.inside(ball_volume(3), 4 * mp.pi / 3)


def test_sign_change_radius():
    for n in (2, 3, 5):
        r0 = sign_change_radius(n)
        r = mp.mpf(r0.mid())
        assert abs((n - 1) - 2 * r * r / (1 - r * r) ** 2) < 1e-12


def test_signed_P_is_smaller():
    signed = compute_P(2, absolute=False)
    assert signed.hi < compute_P(2).lo


def test_monotone_refinement():
    loose = compute_I1(2, 1e-6)
    tight = compute_I1(2, 1e-10)
    assert tight.intersects(loose)
    assert tight.width() <= loose.width()


def test_b_eps_reported_scaling():
    I1 = Interval.from_decimal("1.86412", "1.92770")
    b = compute_b_eps(2, 0.25, I1)
    assert b.contains(29.83) and b.contains(30.84)


def test_b_eps_trivial():
    assert compute_b_eps(2, 4.0, ONE).contains(1.0)


@pytest.mark.parametrize("eps", [0.0, -1.0])
def test_b_eps_bad_eps(eps):
    with pytest.raises(DomainError):
        compute_b_eps(2, eps, ONE)


@pytest.mark.parametrize("fn", [compute_normalization, compute_I1, compute_P])
def test_dimension_one_rejected(fn):
    with pytest.raises(DomainError):
        fn(1)


def test_constants_round_trip():
    mc = mollifier_constants(2)
    assert MollifierConstants.from_dict(mc.to_dict()) == mc
