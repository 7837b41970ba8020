from fractions import Fraction

import pytest

from kappacalc.algebra import AlgElement, Context
from kappacalc.dsl import eval_dsl
from kappacalc.realizations import (CATALOG, GUARD, NoncovParams,
                                    RealizationError, build_basis,
                                    build_natural, build_noncov,
                                    crosscheck_frames, extract_H_G,
                                    family_params, leibniz_probe,
                                    named_basis_params, verify_box,
                                    verify_lorentz_and_mixed, verify_shift,
                                    verify_space)
from kappacalc.scalars import GaussScalar
from kappacalc.series import TruncSeries

CTX = Context(2, 3, (1, 0))


def _assert_report(rep):
    bad = [c.name for c in rep.checks if not c.passed]
    assert not bad, f"{rep.suite}: {bad}"


def test_params_build_and_validation():
    p = named_basis_params("weyl-symmetric", 6)
    assert p.phi[0] == GaussScalar(1)
    assert p.phi[1] == GaussScalar(Fraction(-1, 2))
    assert p.big_psi[1] == GaussScalar(1)  # psi = 1 so BigPsi = A
    with pytest.raises(RealizationError):
        named_basis_params("nope", 6)
    with pytest.raises(RealizationError):
        NoncovParams.build(eval_dsl("1", 4), eval_dsl("1", 5))
    with pytest.raises(RealizationError):
        NoncovParams.build(eval_dsl("2", 4), eval_dsl("1", 4))


def test_gamma_values():
    # gamma = (phi'/phi) psi + 1
    p = named_basis_params("left", 6)  # phi = exp(-A): gamma = 0
    assert p.gamma.is_zero()
    p = named_basis_params("left-covariant", 6)  # phi = psi = 1 - A
    # gamma = (-1/(1-A))(1-A) + 1 = 0
    assert p.gamma.is_zero()
    p = family_params(Fraction(1, 2), 3, 6)  # constant gamma = c
    assert (p.gamma - TruncSeries.const(3, p.gamma.order)).is_zero()
    with pytest.raises(RealizationError):
        family_params(0, 1, 6)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_bases_satisfy_all_relations(name):
    r = build_basis(CTX, name)
    _assert_report(verify_space(r))
    _assert_report(verify_lorentz_and_mixed(r))
    _assert_report(verify_shift(r))
    _assert_report(verify_box(r))
    _assert_report(crosscheck_frames(r))
    _assert_report(extract_H_G(r))


def test_family_realization():
    params = family_params(1, 2, CTX.order + GUARD)
    r = build_noncov(CTX, params)
    _assert_report(verify_space(r))
    _assert_report(verify_lorentz_and_mixed(r))
    _assert_report(extract_H_G(r))


def test_dim3_basis():
    ctx = Context(3, 2, (1, 0, 0))
    r = build_basis(ctx, "bicrossproduct")
    _assert_report(verify_space(r))
    _assert_report(verify_lorentz_and_mixed(r))
    _assert_report(verify_shift(r))


def test_natural_frame_timelike():
    ctx = Context(3, 3, (1, 0, 0))
    r = build_natural(ctx)
    _assert_report(verify_space(r))
    _assert_report(verify_lorentz_and_mixed(r))
    _assert_report(verify_shift(r))
    _assert_report(extract_H_G(r))


def test_natural_frame_lightlike():
    # the natural frame works for any rational direction, even null ones
    ctx = Context(3, 3, (1, 1, 0))
    r = build_natural(ctx)
    _assert_report(verify_space(r))
    _assert_report(verify_lorentz_and_mixed(r))
    _assert_report(verify_shift(r))
    _assert_report(extract_H_G(r))


def test_noncov_requires_timelike_axis():
    ctx = Context(2, 3, (1, 1))
    with pytest.raises(RealizationError):
        build_noncov(ctx, named_basis_params("bicrossproduct", 3 + GUARD))
    with pytest.raises(RealizationError):
        build_noncov(CTX, named_basis_params("bicrossproduct", CTX.order))


def test_frame_checks_guard_against_wrong_frame():
    r = build_natural(Context(2, 2, (1, 0)))
    with pytest.raises(RealizationError):
        verify_box(r)
    with pytest.raises(RealizationError):
        crosscheck_frames(r)


def test_bicrossproduct_closed_form():
    # phi = psi = 1: xhat_0 = x0 + i a0 sum x_k d_k, xhat_i = x_i
    r = build_basis(CTX, "bicrossproduct")
    ctx = CTX
    w = r.xhat[0].order
    x0 = AlgElement.x(ctx, 0, w)
    x1 = AlgElement.x(ctx, 1, w)
    d1 = AlgElement.d(ctx, 1, w)
    want = x0 + (x1 * d1).scale(TruncSeries.monomial(GaussScalar(0, 1), 1, w))
    assert (r.xhat[0] - want).is_zero()
    assert (r.xhat[1] - x1.truncate(w)).is_zero()


def test_classical_limits():
    r = build_basis(CTX, "left")
    for mu in range(2):
        assert (r.xhat[mu].classical_limit()
                - AlgElement.x(CTX, mu, r.xhat[mu].order).classical_limit()) \
            .is_zero()
    assert (r.Z.classical_limit()
            - AlgElement.one(CTX, r.Z.order)).is_zero()


def test_leibniz_probe_deviation():
    r = build_basis(CTX, "bicrossproduct")
    # p_1 acting on xhat_0 xhat_1 deviates from the undeformed Leibniz value
    action, deviation = leibniz_probe(r, 1, 0, 1)
    assert not deviation.is_zero()
    assert deviation.min_a0_degree() >= 1
    # but the classical part of the action is the undeformed one
    assert (deviation.classical_limit()).is_zero()


def test_failure_is_reported_not_raised():
    # perturb xhat_0 by an order-a0 term: the space relations must then fail
    # with a rendered residual rather than an exception
    import dataclasses
    r = build_basis(CTX, "bicrossproduct")
    bad0 = r.xhat[0] + AlgElement.d(CTX, 1, r.xhat[0].order) \
        .scale(TruncSeries.monomial(1, 1, r.xhat[0].order))
    broken = dataclasses.replace(r, xhat=(bad0,) + r.xhat[1:])
    rep = verify_space(broken)
    assert not rep.passed
    assert any(c.residual for c in rep.checks if not c.passed)
