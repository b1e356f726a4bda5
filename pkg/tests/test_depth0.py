import pytest

from ltdl.depth0 import (
    blowup_chart,
    build_P,
    build_P_a,
    default_chart_module,
    deformation_ring,
    gl_linear_shadow_check,
    iterated_chart,
    projective_classes,
    scalar_compat_check,
    special_fiber_components,
    stratum_membership,
    un_special_fiber,
)
from ltdl.errors import ParameterError
from ltdl.formal_modules import lubin_tate_module, universal_module
from ltdl.linalg import invertible_matrices


def test_P_a_basis_vector_is_coordinate():
    m = lubin_tate_module(2, 2)
    ring = deformation_ring(m)
    assert build_P_a(m, (1, 0), ring) == ring.var("X1")
    assert build_P_a(m, (0, 1), ring) == ring.var("X2")


def test_P_a_linear_part():
    m = lubin_tate_module(2, 2)
    P = build_P_a(m, (1, 1))
    ring = P.ring
    assert P.homogeneous_part(1) == ring.var("X1") + ring.var("X2")
    red = P.reduce_mod_p()
    f = red.ring.domain.field
    assert red.homogeneous_part(1) == red.ring.var("X1") + red.ring.var("X2")


def test_P_lowest_degree_and_special_fiber_factorization():
    m = lubin_tate_module(2, 2)
    P = build_P(m)
    assert P.lowest_degree() == 3
    red = P.reduce_mod_p()
    low = red.homogeneous_part(3)
    # oracle: X1 X2 (X1 + X2) = X1^2 X2 + X1 X2^2 over F_2
    ring = low.ring
    one = ring.domain.one()
    assert low == ring.monomial((2, 1), one) + ring.monomial((1, 2), one)


def test_P_wilson_product_31():
    # (q, n) = (3, 1): P = [1](X) [2~](X); lowest coefficient is the
    # Teichmuller Wilson product, i.e. -1.
    m = lubin_tate_module(3, 1)
    P = build_P(m)
    assert P.lowest_degree() == 2
    assert P.coefficient((2,)) == m.F.ring.domain.from_int(-1)


def test_P_21_single_factor():
    m = lubin_tate_module(2, 1)
    P = build_P(m)
    assert P == deformation_ring(m).var("X1")


def test_scalar_compat():
    m = lubin_tate_module(3, 2)
    assert scalar_compat_check(m, (1, 0), 1)
    assert scalar_compat_check(m, (1, 0), 2)
    assert scalar_compat_check(m, (1, 2), 2)
    m2 = lubin_tate_module(2, 2)
    lhs = build_P_a(m2, (1, 1))
    rhs = build_P_a(m2, (1, 0))
    assert lhs != rhs  # distinct hyperplanes


def test_special_fiber_components_census():
    expected = {(2, 2): (3, 1), (3, 2): (4, 2), (2, 3): (7, 1)}
    for (q, n), (comps, mult) in expected.items():
        m = lubin_tate_module(q, n)
        rep = special_fiber_components(m)
        assert rep["components"] == comps == rep["expected_components"]
        assert rep["multiplicity"] == mult
        assert rep["all_scalar_checks_pass"]
        assert all(c["size"] == mult for c in rep["classes"])


def test_special_fiber_factorization_by_classes():
    # reduce_mod_p(P) equals the product over projective classes of the class
    # products, with exactly q - 1 factors per class.
    m = lubin_tate_module(3, 2)
    ring = deformation_ring(m)
    P_red = build_P(m).reduce_mod_p()
    classes = projective_classes(m.field, 2)
    assert all(len(v) == 2 for v in classes.values())  # q - 1 = 2
    prod = None
    for rep in sorted(classes):
        for a in sorted(classes[rep]):
            factor = build_P_a(m, a, ring).reduce_mod_p()
            prod = factor if prod is None else prod * factor
    assert prod == P_red


def test_stratum_membership():
    m = lubin_tate_module(2, 2)
    assert stratum_membership(m, (1, 0), 1) is True
    assert stratum_membership(m, (1, 1), 1) is False
    assert stratum_membership(m, (0, 1), 1) is False


def test_blowup_chart_22():
    m = lubin_tate_module(2, 2)
    chart = blowup_chart(m)
    assert chart.valuation == 3
    # linear parts: {V1}, {1}, {V1 + 1}
    w1 = m.F.ring.domain.one()
    assert chart.linear_parts[(1, 0)] == {"V1": w1}
    assert chart.linear_parts[(0, 1)] == {"const": w1}
    assert chart.linear_parts[(1, 1)] == {"V1": w1, "const": w1}


def test_blowup_chart_32():
    m = lubin_tate_module(3, 2)
    chart = blowup_chart(m)
    assert chart.valuation == 8
    assert len(chart.linear_parts) == 8


def test_blowup_chart_23_and_iterated():
    m = lubin_tate_module(2, 3)
    chart = blowup_chart(m)
    assert chart.valuation == 7
    assert len(chart.linear_parts) == 7
    assert iterated_chart(m, [3, 2]) == [7, 3]


def test_iterated_chart_32():
    m = lubin_tate_module(3, 2)
    assert iterated_chart(m, [2, 1]) == [8, 2]
    # a depth sequence of just (n) reproduces the chart valuation
    assert iterated_chart(m, [2]) == [8]
    with pytest.raises(ParameterError):
        iterated_chart(m, [2, 2])


def test_un_equation_matches_dl():
    for (q, n) in [(2, 2), (3, 2), (2, 3)]:
        m = lubin_tate_module(q, n)
        rep = un_special_fiber(m)
        assert rep["un_equation_matches_dl"], (q, n)


def test_chart_with_symbolic_parameters():
    # the universal lift keeps T symbolic; multiplicity is unchanged
    u = universal_module(2, 2, N=5, D=8)
    chart = blowup_chart(u)
    assert chart.valuation == 3


def test_gl_linear_shadow():
    m = lubin_tate_module(2, 2)
    mats = invertible_matrices(m.field, 2)
    assert len(mats) == 6
    assert gl_linear_shadow_check(m, mats)
    m32 = lubin_tate_module(3, 2)
    mats32 = invertible_matrices(m32.field, 2)
    assert len(mats32) == 48
    assert gl_linear_shadow_check(m32, mats32)


def test_reduction_commutes_with_formal_sum():
    # naturality: reducing mod p then formally adding over F_q agrees with
    # formally adding over W and reducing
    m = lubin_tate_module(3, 2)
    ring = deformation_ring(m)
    a = build_P_a(m, (1, 2), ring)
    b = build_P_a(m, (2, 1), ring)
    total = m.formal_sum([a, b])
    red_F = m.F.reduce_mod_p()
    direct = red_F.substitute({"X": a.reduce_mod_p(), "Y": b.reduce_mod_p()},
                              a.reduce_mod_p().ring)
    assert total.reduce_mod_p() == direct


def test_build_P_refuses_degenerate_degree():
    m = lubin_tate_module(2, 2, D=5)
    # D = 5 > q^n - 1 = 3 works; now force the refusal path
    with pytest.raises(ParameterError):
        build_P(m, n=3)  # q^n - 1 = 7 >= D


def test_default_chart_module():
    m = default_chart_module(2, 2)
    assert m.aux_vars == ()
    assert m.q == 2 and m.n == 2
