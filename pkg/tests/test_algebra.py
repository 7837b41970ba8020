import random
from fractions import Fraction

import pytest

from kappacalc.algebra import (AlgebraError, AlgElement, Context,
                               ContextMismatch, ParityError, TensorElement,
                               _mul_mono, act_on, anticommutator, commutator,
                               graded_commutator, lift_in_A,
                               substitute_series, tensor_commutator)
from kappacalc.scalars import I, MINUS_I
from kappacalc.series import TruncSeries

from oracle_rewriting import mono_to_word, normalize, word_to_key

CTX = Context(2, 3, (1, 0))
CTX3 = Context(3, 2, (1, 0, 0))


def test_context_validation():
    with pytest.raises(AlgebraError):
        Context(1, 3, (1,))
    with pytest.raises(AlgebraError):
        Context(2, 0, (1, 0))
    with pytest.raises(AlgebraError):
        Context(2, 3, (1, 0, 0))
    assert CTX.is_timelike_axis()
    assert not Context(2, 3, (1, 1)).is_timelike_axis()
    assert CTX.metric(0) == -1 and CTX.metric(1) == 1


def test_defining_relations():
    x0, x1 = AlgElement.x(CTX, 0), AlgElement.x(CTX, 1)
    d0, d1 = AlgElement.d(CTX, 0), AlgElement.d(CTX, 1)
    dx0, dx1 = AlgElement.dx(CTX, 0), AlgElement.dx(CTX, 1)
    one = AlgElement.one(CTX)
    assert commutator(d0, x0) == -one
    assert commutator(d1, x1) == one
    assert commutator(d0, x1).is_zero()
    assert commutator(x0, x1).is_zero()
    assert commutator(d0, d1).is_zero()
    assert anticommutator(dx0, dx1).is_zero()
    assert (dx0 * dx0).is_zero()
    assert commutator(dx0, x0).is_zero()
    assert commutator(dx0, d0).is_zero()
    # Koszul sign
    assert dx1 * dx0 == -(dx0 * dx1)


def _random_monomial(rng, dim, max_exp=2):
    xexp = tuple(rng.randint(0, max_exp) for _ in range(dim))
    dexp = tuple(rng.randint(0, max_exp) for _ in range(dim))
    mask = rng.randint(0, (1 << dim) - 1)
    return (xexp, mask, dexp)


def test_normal_ordering_against_rewriting_oracle():
    rng = random.Random(7)
    dim = 2
    for _ in range(120):
        m1 = _random_monomial(rng, dim)
        m2 = _random_monomial(rng, dim)
        got = dict(_mul_mono(dim, m1, m2))
        word = mono_to_word(m1, dim) + mono_to_word(m2, dim)
        want = {word_to_key(w, dim): c for w, c in normalize(word).items()}
        got = {k: Fraction(c) for k, c in got.items() if c}
        assert got == want, (m1, m2)


def test_normal_ordering_oracle_dim3():
    rng = random.Random(11)
    for _ in range(40):
        m1 = _random_monomial(rng, 3, max_exp=1)
        m2 = _random_monomial(rng, 3, max_exp=1)
        got = {k: Fraction(c) for k, c in _mul_mono(3, m1, m2) if c}
        word = mono_to_word(m1, 3) + mono_to_word(m2, 3)
        want = {word_to_key(w, 3): c for w, c in normalize(word).items()}
        assert got == want


def test_element_ops_orders():
    x0 = AlgElement.x(CTX, 0)
    s = TruncSeries([1, 2, 3, 4])
    e = x0.scale(s)
    assert e.order == 3
    assert e.truncate(1).order == 1
    with pytest.raises(AlgebraError):
        e.truncate(5)
    low = e.truncate(2)
    assert (e + low).order == 2
    assert (e * low).order == 2
    with pytest.raises(ContextMismatch):
        e + AlgElement.x(CTX3, 0)


def test_parity():
    dx0, dx1 = AlgElement.dx(CTX, 0), AlgElement.dx(CTX, 1)
    x0 = AlgElement.x(CTX, 0)
    assert x0.parity() == 0
    assert dx0.parity() == 1
    assert (dx0 * dx1).parity() == 0
    with pytest.raises(ParityError):
        (x0 + dx0).parity()
    # graded bracket picks the anticommutator exactly on odd pairs
    assert graded_commutator(dx0, dx1) == anticommutator(dx0, dx1)
    assert graded_commutator(x0, dx0) == commutator(x0, dx0)


def test_vacuum_and_act():
    x0, d0 = AlgElement.x(CTX, 0), AlgElement.d(CTX, 0)
    assert (d0 * x0).vacuum_project() == -AlgElement.one(CTX)
    assert act_on(d0, x0) == -AlgElement.one(CTX)
    assert act_on(d0, AlgElement.one(CTX)).is_zero()
    assert act_on(d0, x0 * x0) == x0.scale(-2)


def test_divide_by_a0():
    x0 = AlgElement.x(CTX, 0)
    e = x0.scale(TruncSeries.monomial(1, 2, 3))
    q = e.divide_by_a0(2)
    assert q.order == 1
    assert q == x0.truncate(1)
    with pytest.raises(AlgebraError):
        x0.divide_by_a0()


def test_classical_limit_and_min_degree():
    x0 = AlgElement.x(CTX, 0)
    e = x0.scale(TruncSeries([0, 1, 0, 0])) + AlgElement.d(CTX, 1)
    assert e.min_a0_degree() == 0
    assert e.classical_limit() == AlgElement.d(CTX, 1)
    assert AlgElement.zero(CTX).min_a0_degree() == CTX.order + 1


def test_lift_in_A():
    # A = -i a0 d0, so A^2 lifts to -a0^2 d0^2
    f = TruncSeries.monomial(1, 2, 3)
    e = lift_in_A(CTX, f, 3)
    key = ((0, 0), 0, (2, 0))
    assert e.coefficient(key) == TruncSeries.monomial(-1, 2, 3)
    # exp(A) at order 2
    g = TruncSeries.t(2).exp()
    e = lift_in_A(CTX, g, 2)
    assert e.coefficient(((0, 0), 0, (1, 0))) == TruncSeries.monomial(MINUS_I, 1, 2)
    with pytest.raises(AlgebraError):
        lift_in_A(CTX, TruncSeries.t(1), 3)


def test_substitute_series():
    d1 = AlgElement.d(CTX, 1)
    arg = d1.scale(TruncSeries.monomial(1, 1, 3))  # a0 d1
    f = TruncSeries.t(3).exp()
    e = substitute_series(f, arg)
    # exp(a0 d1) = sum a0^k d1^k / k!
    assert e.coefficient(((0, 0), 0, (0, 2))) == \
        TruncSeries.monomial(Fraction(1, 2), 2, 3)
    with pytest.raises(AlgebraError):
        substitute_series(f, d1)  # does not vanish at a0 = 0
    with pytest.raises(AlgebraError):
        substitute_series(f, AlgElement.x(CTX, 0))


def test_pow_and_scale_forms():
    x1 = AlgElement.x(CTX, 1)
    assert x1.pow(3) == x1 * x1 * x1
    assert x1.pow(0) == AlgElement.one(CTX)
    with pytest.raises(AlgebraError):
        x1.pow(-1)
    assert x1.scale(I).scale(MINUS_I) == x1
    assert x1.scale(Fraction(1, 2)).scale(2) == x1


def test_render_and_to_data():
    e = AlgElement.x(CTX, 0) * AlgElement.d(CTX, 1) + \
        AlgElement.dx(CTX, 1).scale(I)
    text = e.render()
    assert "x0" in text and "d1" in text and "dx1" in text
    data = e.to_data()
    assert data["order"] == CTX.order
    assert len(data["terms"]) == 2


def test_tensor_elements():
    x0 = AlgElement.x(CTX, 0)
    d0 = AlgElement.d(CTX, 0)
    one = AlgElement.one(CTX)
    t = TensorElement.outer([d0, one]) * TensorElement.outer([x0, one])
    u = TensorElement.outer([x0, one]) * TensorElement.outer([d0, one])
    assert t - u == TensorElement.scalar(CTX, 2, -1)
    assert tensor_commutator(TensorElement.outer([d0, one]),
                             TensorElement.outer([one, x0])).is_zero()
    with pytest.raises(AlgebraError):
        TensorElement.outer([AlgElement.dx(CTX, 0), one])


def test_tensor_divide_and_limits():
    x0 = AlgElement.x(CTX, 0)
    one = AlgElement.one(CTX)
    t = TensorElement.outer([x0, one]).scale(TruncSeries.monomial(1, 1, 3))
    q = t.divide_by_a0()
    assert q.order == 2
    assert q == TensorElement.outer([x0.truncate(2), one.truncate(2)])
    with pytest.raises(AlgebraError):
        TensorElement.outer([x0, one]).divide_by_a0()
    assert t.classical_limit().is_zero()
