from fractions import Fraction
from math import factorial

import pytest

from kappacalc.scalars import GaussScalar, I, ONE
from kappacalc.series import (BiSeries, OrderMismatch, SeriesError,
                              TruncSeries)


def frac(p, q=1):
    return GaussScalar(Fraction(p, q))


def test_constructors_and_order():
    t = TruncSeries.t(4)
    assert t.order == 4
    assert t[1] == ONE and t[0].is_zero()
    assert TruncSeries.const(7, 2).coeffs == (frac(7), frac(0), frac(0))
    assert TruncSeries.monomial(Fraction(1, 3), 2, 3)[2] == frac(1, 3)
    assert TruncSeries.monomial(5, 7, 3).is_zero()


def test_strict_order_matching():
    a = TruncSeries.one(3)
    b = TruncSeries.one(2)
    with pytest.raises(OrderMismatch):
        a + b
    with pytest.raises(OrderMismatch):
        a * b
    assert (a + a.truncate(3)).order == 3


def test_mul_against_convolution():
    a = TruncSeries([1, 2, 3, 4])
    b = TruncSeries([5, 6, 7, 8])
    prod = a * b
    # manual convolution through order 3
    want = [5, 6 + 10, 7 + 12 + 15, 8 + 14 + 18 + 20]
    assert list(prod.coeffs) == [frac(w) for w in want]


def test_exp_log_oracles():
    t = TruncSeries.t(6)
    e = t.exp()
    for k in range(7):
        assert e[k] == frac(1, factorial(k))
    # log(1+t) = t - t^2/2 + t^3/3 - ...
    lg = (TruncSeries.one(6) + t).log()
    assert lg[0].is_zero()
    for k in range(1, 7):
        assert lg[k] == frac((-1) ** (k + 1), k)
    # round trips
    assert (e.log() - t).is_zero()
    assert ((lg).exp() - (TruncSeries.one(6) + t)).is_zero()


def test_exp_requires_zero_constant():
    with pytest.raises(SeriesError):
        TruncSeries.one(3).exp()
    with pytest.raises(SeriesError):
        TruncSeries.const(2, 3).log()


def test_recip_and_sqrt():
    s = TruncSeries([1, 3, -2, 5, 1])
    assert (s * s.recip() - TruncSeries.one(4)).is_zero()
    with pytest.raises(SeriesError):
        TruncSeries.t(3).recip()
    r = (TruncSeries.one(5) + TruncSeries.t(5)).sqrt()
    assert (r * r - TruncSeries.one(5) - TruncSeries.t(5)).is_zero()
    # binomial coefficients of (1+t)^(1/2)
    assert r[1] == frac(1, 2)
    assert r[2] == frac(-1, 8)
    assert r[3] == frac(1, 16)


def test_derivative_drops_order_integrate_keeps():
    s = TruncSeries([1, 1, 1, 1])
    d = s.derivative()
    assert d.order == 2
    assert list(d.coeffs) == [frac(1), frac(2), frac(3)]
    i = d.integrate()
    assert i.order == 2
    assert (i - s.truncate(2) + TruncSeries.one(2)).is_zero()
    with pytest.raises(SeriesError):
        TruncSeries.const(1, 0).derivative()


def test_div_by_t_is_honest():
    s = TruncSeries([0, 0, 3, 4, 5])
    q = s.div_by_t(2)
    assert q.order == 2
    assert list(q.coeffs) == [frac(3), frac(4), frac(5)]
    with pytest.raises(SeriesError):
        TruncSeries([1, 2, 3]).div_by_t()
    with pytest.raises(SeriesError):
        TruncSeries([0, 1]).div_by_t(2)


def test_compose_and_inverse():
    t = TruncSeries.t(6)
    f = t.exp() - TruncSeries.one(6)  # e^t - 1
    g = f.comp_inverse()              # log(1+t)
    lg = (TruncSeries.one(6) + t).log()
    assert (g - lg).is_zero()
    assert (f.compose(g) - t).is_zero()
    assert (g.compose(f) - t).is_zero()
    with pytest.raises(SeriesError):
        TruncSeries.one(3).compose(TruncSeries.one(3))


def test_valuation_and_scale():
    s = TruncSeries([0, 0, 2, 1])
    assert s.valuation() == 2
    assert TruncSeries.zero(3).valuation() == 4
    assert (s.scale(I) * s.scale(I) - (s * s).scale(-1)).is_zero()


def test_pow_including_negative():
    s = TruncSeries([1, 1, 0, 0])
    assert (s.pow(3) - TruncSeries([1, 3, 3, 1])).is_zero()
    assert (s.pow(-1) - s.recip()).is_zero()
    assert (s.pow(0) - TruncSeries.one(3)).is_zero()


def test_render():
    s = TruncSeries([1, 0, Fraction(-1, 2)])
    out = s.render("a0")
    assert "a0^2" in out and "1/2" in out


def test_biseries_total_degree_and_mul():
    u = BiSeries.from_uni(TruncSeries.t(3), 0, 3)
    v = BiSeries.from_uni(TruncSeries.t(3), 1, 3)
    w = (u + v) * (u + v)
    assert w.terms[(2, 0)] == ONE
    assert w.terms[(1, 1)] == frac(2)
    assert w.terms[(0, 2)] == ONE
    # truncation by total degree
    cube = w * (u + v)
    assert all(j + k <= 3 for j, k in cube.terms)
    # degree-4 part is beyond the truncation order, so the quartic vanishes
    assert (cube * (u + v)).is_zero()


def test_biseries_compose_addition_law():
    # f(u+v) for f = exp - 1 must match the binomial expansion
    order = 4
    f = TruncSeries.t(order).exp()
    u = BiSeries.from_uni(TruncSeries.t(order), 0, order)
    v = BiSeries.from_uni(TruncSeries.t(order), 1, order)
    comp = BiSeries.compose_uni(f, u + v)
    for (j, k), c in comp.terms.items():
        assert c == frac(1, factorial(j) * factorial(k))
    with pytest.raises(SeriesError):
        BiSeries.compose_uni(f, u + BiSeries(order, {(0, 0): ONE}))
