"""Tests for elliptic curve arithmetic, division polynomials, and the
coordinate formulas of scalar multiplication."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ellprod.curves import (
    RING_XAB,
    CurvePoint,
    KernelPointError,
    MultiplicationMaps,
    SingularCurveError,
    WeierstrassCurve,
    add_points,
    division_polynomial,
    evaluate_multiplication_map,
    evaluate_via_formula,
    multiplication_maps,
    negate_point,
    scalar_mul_point,
)
from ellprod.polynomials import MultiPoly, exact_divide, parse_poly

E01 = WeierstrassCurve(0, 1)
X = MultiPoly.var(RING_XAB, "x")
A = MultiPoly.var(RING_XAB, "A")
B = MultiPoly.var(RING_XAB, "B")
C3 = X ** 3 + A * X + B


# ---------------------------------------------------------------------------
# curve basics
# ---------------------------------------------------------------------------

def test_discriminant_and_j():
    assert E01.discriminant() == -432
    assert E01.j_invariant() == 0
    E = WeierstrassCurve(-1, 0)
    assert E.discriminant() == 64
    assert E.j_invariant() == 1728


def test_singular_rejected():
    with pytest.raises(SingularCurveError):
        WeierstrassCurve(0, 0)
    with pytest.raises(SingularCurveError):
        WeierstrassCurve(-3, 2)


def test_contains():
    assert E01.contains(2, 3)
    assert E01.contains(-1, 0)
    assert not E01.contains(1, 1)
    assert E01.rhs(2) == 9


def test_curve_equality_and_immutability():
    assert E01 == WeierstrassCurve(0, 1)
    assert E01 != WeierstrassCurve(0, 2)
    with pytest.raises(AttributeError):
        E01.A = 5


# ---------------------------------------------------------------------------
# points and the group law
# ---------------------------------------------------------------------------

def test_point_construction():
    o = CurvePoint.infinity()
    assert o.is_infinity()
    p = CurvePoint(2, 3)
    assert not p.is_infinity()
    assert p.x == 2 and p.y == 3
    with pytest.raises(ValueError):
        CurvePoint(2, None)
    with pytest.raises(AttributeError):
        p.x = 4


# the affine 6-torsion of y^2 = x^3 + 1: (2,3) generates Z/6
P6 = CurvePoint(2, 3)
SUBGROUP = [CurvePoint.infinity(), CurvePoint(2, 3), CurvePoint(0, 1),
            CurvePoint(-1, 0), CurvePoint(0, -1), CurvePoint(2, -3)]


def test_known_multiples():
    acc = CurvePoint.infinity()
    for k in range(6):
        assert acc == SUBGROUP[k]
        acc = add_points(E01, acc, P6)
    assert acc.is_infinity()  # order exactly 6


def test_group_law_properties():
    o = CurvePoint.infinity()
    for P in SUBGROUP:
        assert add_points(E01, P, o) == P
        assert add_points(E01, P, negate_point(P)).is_infinity()
        for Q in SUBGROUP:
            assert add_points(E01, P, Q) == add_points(E01, Q, P)
            for R in SUBGROUP:
                lhs = add_points(E01, add_points(E01, P, Q), R)
                rhs = add_points(E01, P, add_points(E01, Q, R))
                assert lhs == rhs


def test_scalar_mul_matches_repeated_addition():
    for n in range(-10, 11):
        expected = CurvePoint.infinity()
        step = P6 if n >= 0 else negate_point(P6)
        for _ in range(abs(n)):
            expected = add_points(E01, expected, step)
        assert scalar_mul_point(E01, n, P6) == expected


def test_points_stay_on_curve():
    E = WeierstrassCurve(-2, 1)
    P = CurvePoint(1, 0)  # 1 - 2 + 1 = 0
    Q = scalar_mul_point(E, 1, P)
    assert E.contains(Q.x, Q.y)
    # tangent doubling at a y=0 point is infinity
    assert scalar_mul_point(E, 2, P).is_infinity()


# ---------------------------------------------------------------------------
# division polynomials
# ---------------------------------------------------------------------------

def test_divpoly_base_cases():
    assert not division_polynomial(0)
    assert division_polynomial(1) == MultiPoly.const(RING_XAB, 1)
    assert division_polynomial(2) == MultiPoly.const(RING_XAB, 2)
    assert division_polynomial(3) == parse_poly(
        "3*x^4 + 6*A*x^2 + 12*B*x - A^2", RING_XAB)
    assert division_polynomial(4) == parse_poly(
        "4*x^6 + 20*A*x^4 + 80*B*x^3 - 20*A^2*x^2 - 16*A*B*x"
        " - 32*B^2 - 4*A^3", RING_XAB)


def test_divpoly_degrees_and_leading():
    # x-part of psi_m has degree (m^2-1)/2 (odd m) or (m^2-4)/2 (even m)
    # and leading coefficient m
    for m in range(2, 11):
        p = division_polynomial(m)
        want = (m * m - 1) // 2 if m % 2 else (m * m - 4) // 2
        assert p.degree_in("x") == want
        lead = [e for e in p.terms if e[0] == want]
        coeff = sum(p.terms[e] for e in lead if sum(e[1:]) == 0)
        assert coeff == m


def test_divpoly_rejects_negative():
    with pytest.raises(ValueError):
        division_polynomial(-1)


def test_divpoly_curve_specialization():
    p = division_polynomial(3, E01)
    assert p == parse_poly("3*x^4 + 12*x", RING_XAB)
    # roots of P_3 are x-coordinates of 3-torsion: (0, +-1) has order 3
    assert p.evaluate({"x": Fraction(0)}) == 0
    assert scalar_mul_point(E01, 3, CurvePoint(0, 1)).is_infinity()


def test_divpoly_vanishes_exactly_on_torsion_x():
    # on y^2 = x^3 + 1 the full 6-torsion is known; for each m, the x-part
    # of psi_m vanishes at x(P) iff [m]P = infinity for the affine points
    for m in range(2, 7):
        pm = division_polynomial(m, E01)
        for P in SUBGROUP[1:]:
            in_kernel = scalar_mul_point(E01, m, P).is_infinity()
            value = pm.evaluate({"x": P.x})
            if m % 2 == 1:
                assert (value == 0) == in_kernel
            else:
                # even m: psi_m = y * P_m, so the y = 0 points are always
                # in the kernel regardless of P_m
                assert (value == 0 or P.y == 0) == in_kernel


# ---------------------------------------------------------------------------
# multiplication maps: structure
# ---------------------------------------------------------------------------

def test_alpha_one_is_identity():
    maps = multiplication_maps(1)
    assert maps.r == X
    assert maps.s == MultiPoly.const(RING_XAB, 1)
    assert maps.t == MultiPoly.const(RING_XAB, 1)
    assert not maps.is_even()


def test_alpha_zero_rejected():
    with pytest.raises(ValueError):
        multiplication_maps(0)


def test_negative_alpha_flips_s_only():
    for a in (2, 3, 5):
        plus = multiplication_maps(a)
        minus = multiplication_maps(-a)
        assert minus.r == plus.r
        assert minus.t == plus.t
        assert minus.s == -plus.s


def test_even_maps_structure():
    maps = multiplication_maps(2)
    assert maps.is_even()
    assert maps.t_tilde == MultiPoly.const(RING_XAB, 2)
    assert maps.t == 2 * C3
    assert exact_divide(maps.r, C3) == maps.r_tilde
    assert maps.r_tilde == parse_poly("x^4 - 2*A*x^2 - 8*B*x + A^2", RING_XAB)


def test_odd_maps_structure():
    maps = multiplication_maps(3)
    assert not maps.is_even()
    assert maps.r_tilde is None and maps.t_tilde is None
    assert maps.t == division_polynomial(3)


def test_x_map_degrees():
    # the x-coordinate map of [alpha] has degree alpha^2: numerator degree
    # alpha^2, denominator degree alpha^2 - 1
    for a in range(2, 7):
        maps = multiplication_maps(a)
        if maps.is_even():
            num, den = maps.r_tilde, maps.t_tilde * maps.t
        else:
            num, den = maps.r, maps.t ** 2
        assert num.degree_in("x") == a * a
        assert den.degree_in("x") == a * a - 1


# ---------------------------------------------------------------------------
# multiplication maps: agreement with the group law over Q
# ---------------------------------------------------------------------------

@st.composite
def curve_and_point(draw):
    # choose the point first, then a curve through it, so that rational
    # test points exist in abundance
    x0 = draw(st.fractions(min_value=-8, max_value=8, max_denominator=4))
    y0 = draw(st.fractions(min_value=-8, max_value=8, max_denominator=4))
    a = draw(st.integers(min_value=-10, max_value=10))
    b = y0 * y0 - x0 ** 3 - a * x0
    if b.denominator != 1:
        # clear denominators by scaling (x, y) -> (u^2 x, u^3 y)
        u = b.denominator
        x0, y0 = x0 * u ** 2, y0 * u ** 3
        a = a * u ** 4
        b = y0 * y0 - x0 ** 3 - a * x0
    if -16 * (4 * a ** 3 + 27 * int(b) ** 2) == 0:
        b = int(b) + 1
        y0 = None  # point no longer on curve; skip the point checks
        return WeierstrassCurve(a, int(b)), None
    return WeierstrassCurve(a, int(b)), CurvePoint(x0, y0)


@settings(max_examples=60, deadline=None)
@given(curve_and_point(), st.integers(min_value=-5, max_value=5))
def test_formula_matches_group_law(cp, alpha):
    E, P = cp
    if P is None or alpha == 0:
        return
    assert E.contains(P.x, P.y)
    assert evaluate_multiplication_map(E, alpha, P) == \
        scalar_mul_point(E, alpha, P)


def test_formula_on_infinity():
    assert evaluate_multiplication_map(E01, 4, CurvePoint.infinity()) \
        .is_infinity()
    assert evaluate_via_formula(E01, 4, CurvePoint.infinity()).is_infinity()


def test_kernel_points_raise_and_fall_back():
    # (-1, 0) is 2-torsion on y^2 = x^3 + 1: even formula undefined (y = 0)
    with pytest.raises(KernelPointError):
        evaluate_via_formula(E01, 2, CurvePoint(-1, 0))
    assert evaluate_multiplication_map(E01, 2, CurvePoint(-1, 0)).is_infinity()
    # (0, 1) is 3-torsion: t_3(0) = 0
    with pytest.raises(KernelPointError):
        evaluate_via_formula(E01, 3, CurvePoint(0, 1))
    assert evaluate_multiplication_map(E01, 3, CurvePoint(0, 1)).is_infinity()
    # 2-torsion under [4]: t~_4(x) = 0 or y = 0
    with pytest.raises(KernelPointError):
        evaluate_via_formula(E01, 4, CurvePoint(-1, 0))


def test_kernel_of_formula_is_exactly_affine_kernel():
    # over the 6-torsion of y^2 = x^3 + 1 the formula is undefined exactly
    # on the affine kernel of [alpha]
    for alpha in (2, 3, 4, 5, 6):
        for P in SUBGROUP[1:]:
            in_kernel = scalar_mul_point(E01, alpha, P).is_infinity()
            try:
                evaluate_via_formula(E01, alpha, P)
                undefined = False
            except KernelPointError:
                undefined = True
            assert undefined == in_kernel
