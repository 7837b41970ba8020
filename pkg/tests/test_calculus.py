from fractions import Fraction

import pytest

from kappacalc.algebra import AlgElement, Context
from kappacalc.calculus import (CalcParams, CalculusError, S_VALUES,
                                abstract_coords, build_calculus,
                                check_action_table, check_adjoint_agreement,
                                check_closure_and_K, check_compatibility,
                                check_d_properties, check_module_property,
                                commutators_M_xi, compatibility_report,
                                decompose_K, expected_xi, extract_K,
                                inadmissible_one_forms, lorentz_action,
                                run_calculus_suites, xhat_monomial)
from kappacalc.realizations import (build_basis, build_natural,
                                    named_basis_params)
from kappacalc.scalars import GaussScalar
from kappacalc.series import TruncSeries

N = 3
CTX = Context(2, N, (1, 0))


def _calculus(name="bicrossproduct", s=1, ctx=CTX, **kw):
    r = build_basis(ctx, name)
    params = CalcParams.build(s, r.params, ctx.order)
    return r, build_calculus(r, params, **kw)


def _assert_report(rep):
    bad = [c.name for c in rep.checks if not c.passed]
    assert not bad, f"{rep.suite}: {bad}"


def test_calc_params_values():
    p = named_basis_params("bicrossproduct", 6)  # BigPsi = A
    c = CalcParams.build(1, p, 4)
    # K1 = (1 - e^{-A})/A = 1 - A/2 + A^2/6 - ...
    assert c.K1[0] == GaussScalar(1)
    assert c.K1[1] == GaussScalar(Fraction(-1, 2))
    assert c.K1[2] == GaussScalar(Fraction(1, 6))
    # K2 = e^{-A}
    assert c.K2[1] == GaussScalar(-1)
    c0 = CalcParams.build(0, p, 4)
    # s = 0: K1 = BigPsi/A = 1
    assert (c0.K1 - TruncSeries.one(c0.K1.order)).is_zero()
    c2 = CalcParams.build(2, p, 4)
    assert c2.K1[1] == GaussScalar(-1)
    with pytest.raises(CalculusError):
        CalcParams.build(1, p, 6)


def test_closed_forms_checked_on_build():
    r, c = _calculus("left", s=Fraction(1, 2))
    for mu, (got, want) in enumerate(zip(c.xi, expected_xi(r, c.params.s))):
        assert (got - want).is_zero(), mu


def test_build_requires_noncov():
    nat = build_natural(CTX)
    p = named_basis_params("bicrossproduct", N + 1)
    cp = CalcParams.build(1, p, N)
    with pytest.raises(CalculusError):
        build_calculus(nat, cp)


@pytest.mark.parametrize("s", S_VALUES)
def test_d_properties_and_closure(s):
    r, c = _calculus("weyl-symmetric", s=s)
    _assert_report(check_d_properties(c, max_degree=2))
    _assert_report(check_closure_and_K(c))
    _assert_report(check_compatibility(c))


def test_closure_constants():
    r, c = _calculus("left-covariant", s=2)
    K, rep = extract_K(c)
    _assert_report(rep)
    assert K[0][0][0] == -2       # K^0_00 = -s * a0
    assert K[1][0][1] == -1       # K^1_10 = -a0
    assert K[0][1][1] == 0
    assert K[1][1][0] == 0


def test_K_decomposition():
    for name, s in (("bicrossproduct", 1), ("right-covariant", Fraction(1, 2))):
        r, c = _calculus(name, s=s)
        _assert_report(decompose_K(c))


def test_M_xi_commutators():
    ctx = Context(3, 2, (1, 0, 0))
    r, c = _calculus("bicrossproduct", s=1, ctx=ctx)
    _assert_report(commutators_M_xi(c, r))


def test_action_table():
    ctx = Context(3, 2, (1, 0, 0))
    r, c = _calculus("left", s=1, ctx=ctx)
    _assert_report(check_action_table(c, r))


def test_adjoint_agreement():
    r, c = _calculus("bicrossproduct", s=1)
    monos = [(0,), (1,), (0, 1), (1, 1)]
    _assert_report(check_adjoint_agreement(c, r, monos=monos))


def test_abstract_coords_round_trip():
    r = build_basis(CTX, "left")
    elem = (xhat_monomial(r, (0, 1)).scale(2)
            + xhat_monomial(r, (1,)).scale(TruncSeries.monomial(1, 1, N))) \
        .vacuum_project()
    coords = abstract_coords(r, elem, 2)
    nonzero = {k: v for k, v in coords.items() if not v.is_zero()}
    assert set(nonzero) == {(0, 1), (1,)}
    assert nonzero[(0, 1)][0] == GaussScalar(2)
    with pytest.raises(CalculusError):
        abstract_coords(r, AlgElement.d(CTX, 0, N), 2)


def test_module_property_cross_basis():
    r, c = _calculus("bicrossproduct", s=1)
    other = build_basis(CTX, "left")
    _assert_report(check_module_property(c, r, other, max_degree=2))


def test_inadmissible_one_forms_fail_compatibility():
    r = build_basis(CTX, "bicrossproduct")
    rep = compatibility_report(r, inadmissible_one_forms(r), "inadmissible")
    assert not rep.passed


def test_fault_injection_breaks_d_squared():
    r = build_basis(CTX, "bicrossproduct")
    params = CalcParams.build(1, r.params, N)
    c = build_calculus(r, params, fault=True)
    assert not (c.dhat * c.dhat).is_zero()
    reps = run_calculus_suites(c)
    assert not all(rep.passed for rep in reps)
    # structural breakage is reported, never raised
    for rep in reps:
        assert rep.checks


def test_run_calculus_suites_green():
    r, c = _calculus("right-covariant", s=1)
    reps = run_calculus_suites(c)
    for rep in reps:
        _assert_report(rep)
