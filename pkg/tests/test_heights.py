"""Tests for the explicit height-bound constants and their rounding."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import iv, mp

from ellprod import heights
from ellprod.curves import WeierstrassCurve
from ellprod.heights import (
    BoundReport,
    bezout_intersection_bounds,
    c0,
    c1_c2_curve,
    curve_c3,
    essential_minimum_image_bounds,
    galateau_lambda,
    lower_endpoint,
    upper_endpoint,
    weil_height_rational,
    zhang_special_bound,
)

E01 = WeierstrassCurve(0, 1)


def _ref(expr_fn, dps=60):
    """Evaluate a plain-mpf expression at high precision for references."""
    old = mp.dps
    mp.dps = dps
    try:
        return expr_fn()
    finally:
        mp.dps = old


# ---------------------------------------------------------------- weil height

def test_weil_height_small():
    assert weil_height_rational(0) == 0
    assert weil_height_rational(1) == 0
    assert weil_height_rational(-1) == 0
    assert weil_height_rational(Fraction(1, 2)) == weil_height_rational(2)
    # unreduced input is reduced first
    assert weil_height_rational(Fraction(4, 6)) == weil_height_rational(3)


def test_weil_height_rounds_up():
    for q in (2, 3, Fraction(-7, 5), Fraction(123456, 789)):
        h = weil_height_rational(q)
        qr = Fraction(q)
        true = _ref(lambda: mp.log(max(abs(qr.numerator), qr.denominator)))
        assert h >= true
        assert abs(h - true) < 1e-20


# ------------------------------------------------------------------------- c0

def test_c0_pinned_value():
    # c0(1,1,8) = 7/6 + 7 log 2
    v = c0(1, 1, 8)
    true = _ref(lambda: mp.mpf(7) / 6 + 7 * mp.log(2))
    assert v >= true
    assert abs(v - true) < 1e-20
    assert abs(v - 6.0186969305862838326) < 1e-15


def test_c0_degenerate():
    assert c0(0, 0, 0) == 0.5  # rational part 1/2, no log term


def test_c0_methods_agree_exactly():
    rng = random.Random(7)
    for _ in range(100):
        d1, d2, m = rng.randint(0, 10), rng.randint(0, 10), rng.randint(0, 100)
        assert heights._c0_rational(d1, d2, "double_sum") == \
            heights._c0_rational(d1, d2, "harmonic")
        assert c0(d1, d2, m, method="double_sum") == \
            c0(d1, d2, m, method="harmonic")


def test_c0_validation():
    with pytest.raises(ValueError):
        c0(-1, 0, 0)
    with pytest.raises(ValueError):
        c0(0, 0, 0, method="simpson")
    with pytest.raises(ValueError):
        c0(1, 1, 8, prec=63)


@given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 40))
@settings(max_examples=200, deadline=None)
def test_c0_nondecreasing_in_m(d1, d2, m):
    assert c0(d1, d2, m + 1) >= c0(d1, d2, m)


# -------------------------------------------------------------------- c1 / c2

def test_c1_c2_pinned():
    c1, c2 = c1_c2_curve(E01)
    # A = B-height terms vanish; Delta = -432, j = 0:
    # c1 = log(432)/4 + 3.724, c2 = log(432)/4 + 4.015
    true1 = _ref(lambda: mp.log(432) / 4 + mp.mpf("3.724"))
    true2 = _ref(lambda: mp.log(432) / 4 + mp.mpf("4.015"))
    assert c1 >= true1 and c2 >= true2
    assert abs(c1 - 5.241106397061027578) < 1e-14
    assert abs(c2 - 5.532106397061027578) < 1e-14


def test_c1_c2_better_branch_pinned():
    # for (0,1) the h(1:|A|^1/2:|B|^1/3) term vanishes and the additive
    # constants win the min
    c1, c2 = c1_c2_curve(E01, use_better=True)
    assert abs(c1 - 4.709) < 1e-15
    assert abs(c2 - 2.427) < 1e-15


def test_better_branch_never_worse():
    rng = random.Random(11)
    pairs = [(0, 1), (-1, 0), (1, 1), (-4, 4)]
    while len(pairs) < 60:
        A, B = rng.randint(-100, 100), rng.randint(-100, 100)
        if 4 * A ** 3 + 27 * B ** 2 != 0:
            pairs.append((A, B))
    for A, B in pairs:
        E = WeierstrassCurve(A, B)
        g1, g2 = c1_c2_curve(E)
        b1, b2 = c1_c2_curve(E, use_better=True)
        assert b1 <= g1 and b2 <= g2, (A, B)


def test_c3_pinned():
    assert abs(curve_c3(E01) - 10.773212794122055156) < 1e-14
    assert curve_c3(E01) >= c1_c2_curve(E01)[0]
    with pytest.raises(TypeError):
        c1_c2_curve((0, 1))


# ---------------------------------------------------------------------- zhang

def test_zhang_exact_cases():
    # dyadic inputs with integer coefficients evaluate exactly
    assert zhang_special_bound(3, 0, 1) == 27.0  # 3 * 3^2 * 1
    assert zhang_special_bound(1, 0.5, 0.25) == 0.75


def test_zhang_validation():
    with pytest.raises(ValueError):
        zhang_special_bound(0, 1, 1)
    with pytest.raises(ValueError):
        zhang_special_bound(2, -0.5, 1)


@given(st.integers(1, 6), st.integers(1, 6),
       st.fractions(0, 50, max_denominator=16),
       st.fractions(0, 50, max_denominator=16),
       st.fractions(0, 5, max_denominator=16))
@settings(max_examples=200, deadline=None)
def test_zhang_monotone(n1, n2, h2, c3v, bump):
    lo_n, hi_n = sorted((n1, n2))
    base = zhang_special_bound(lo_n, float(h2), float(c3v))
    assert zhang_special_bound(hi_n, float(h2), float(c3v)) >= base
    assert zhang_special_bound(lo_n, float(h2 + bump), float(c3v)) >= base
    assert zhang_special_bound(lo_n, float(h2), float(c3v + bump)) >= base


# --------------------------------------------------------------------- bezout

def test_bezout_pinned():
    trivial, improved = bezout_intersection_bounds(
        deg_pre=243, h2_pre=1, deg_b=3, h2_b=1, dim_b=1, n_factors=2,
        deg_phi=25)
    # 243*1 + 3*1 + c0(1,1,8)*729, then /25
    assert abs(trivial - 4633.630062397400914) < 1e-9
    assert abs(improved - 185.34520249589603656) < 1e-9
    assert abs(trivial - (246 + c0(1, 1, 8) * 729)) < 1e-12
    assert improved * 25 >= trivial  # conservative division
    assert improved <= trivial


def test_bezout_identity_division():
    trivial, improved = bezout_intersection_bounds(10, 2.5, 4, 0.5, 2, 3, 1)
    assert improved == trivial


def test_bezout_validation():
    with pytest.raises(ValueError):
        bezout_intersection_bounds(1, 1, 1, 1, 1, 2, 0)


@given(st.integers(1, 50), st.integers(1, 50), st.integers(1, 4),
       st.integers(1, 3), st.integers(1, 100))
@settings(max_examples=150, deadline=None)
def test_bezout_improved_le_trivial(deg_pre, deg_b, dim_b, n, deg_phi):
    trivial, improved = bezout_intersection_bounds(
        deg_pre, 1.25, deg_b, 0.75, dim_b, n, deg_phi)
    assert improved <= trivial


# ------------------------------------------------------------ galateau lambda

def test_galateau_lambda_values():
    assert galateau_lambda(1, 0) == 5
    assert galateau_lambda(2, 1) == 400
    assert galateau_lambda(3, 2) == 91125
    assert isinstance(galateau_lambda(2, 1), int)
    with pytest.raises(ValueError):
        galateau_lambda(0, 1)
    with pytest.raises(ValueError):
        galateau_lambda(1, -1)


# ---------------------------------------------------------- essential minimum

def test_essential_minimum_smart_pinned():
    rep = essential_minimum_image_bounds(2, 2, 1, 5, 27, mode="smart")
    strong = rep.value("smart_multiplier_strong")
    weak = rep.value("smart_multiplier_weak")
    assert abs(strong / 5.3487095143241665944e-82 - 1) < 1e-12
    assert abs(weak / 2.1394838057296666377e-83 - 1) < 1e-12
    # strong/weak = alpha^2/d_L here
    assert abs(strong / weak - 25) < 1e-15
    assert rep.value("image_degree_bound_ambient") == 648
    assert rep.value("image_degree_bound_pullback") == 648
    assert rep.value("image_degree_bound_final") == 16200
    assert rep.inputs["lambda"] == 400
    assert rep.inputs["deg_pre_bound"] == 54


def test_essential_minimum_naive_pinned():
    rep = essential_minimum_image_bounds(2, 2, 1, 5, 27, mode="naive")
    naive = rep.value("naive_multiplier")
    assert abs(naive / 8.557935222918666551e-85 - 1) < 1e-12
    assert rep.value("image_degree_bound_final") == 16200
    # smart strictly beats naive at r = 2, d_L = 1: alpha^0 vs alpha^(-2),
    # but against a log(d_L*alpha) = log(alpha) denominator, so exactly 25x
    smart = essential_minimum_image_bounds(2, 2, 1, 5, 27, mode="smart")
    assert smart.value("smart_multiplier_weak") > naive
    assert abs(smart.value("smart_multiplier_weak") / naive - 25) < 1e-15


def test_essential_minimum_r2_weak_power_vanishes():
    # 2(r-2) = 0: the weak multiplier is 1/log(d_L*|alpha|)^lambda
    rep = essential_minimum_image_bounds(3, 2, 1, 3, 4, mode="smart")
    lam = galateau_lambda(3, 2)
    true = _ref(lambda: 1 / mp.log(3) ** lam, dps=120)
    weak = rep.value("smart_multiplier_weak")
    assert weak <= true  # rounded down
    assert abs(weak / true - 1) < 1e-18


def test_essential_minimum_validation():
    with pytest.raises(ValueError):
        essential_minimum_image_bounds(1, 2, 1, 5, 27)  # N < 2
    with pytest.raises(ValueError):
        essential_minimum_image_bounds(2, 1, 1, 5, 27)  # r < 2
    with pytest.raises(ValueError):
        essential_minimum_image_bounds(2, 3, 1, 5, 27)  # r > N
    with pytest.raises(ValueError):
        essential_minimum_image_bounds(2, 2, 0, 5, 27)  # d_L < 1
    with pytest.raises(ValueError):
        essential_minimum_image_bounds(2, 2, 1, 5, 0)   # deg_C < 1
    with pytest.raises(ValueError):
        essential_minimum_image_bounds(2, 2, 2, 1, 27)  # alpha^2 < d_L
    with pytest.raises(ValueError):
        essential_minimum_image_bounds(2, 2, 1, 1, 27, mode="smart")
    with pytest.raises(ValueError):
        essential_minimum_image_bounds(2, 2, 1, 1, 27, mode="naive")
    with pytest.raises(ValueError):
        essential_minimum_image_bounds(2, 2, 1, 5, 27, mode="bogus")


# --------------------------------------------------------------- BoundReport

def test_bound_report_shape():
    rep = essential_minimum_image_bounds(2, 2, 1, 5, 27, mode="smart")
    with pytest.raises(KeyError):
        rep.value("no_such_label")
    d = rep.to_dict()
    assert d["name"] == "essential_minimum_image_smart"
    assert d["inputs"]["alpha"] == 5
    by_label = {row["label"]: row for row in d["entries"]}
    # multipliers are 20-digit strings tagged with their symbolic constant
    srow = by_label["smart_multiplier_strong"]
    assert isinstance(srow["value"], str) and srow["rounding"] == "down"
    assert srow["symbolic_constant"] == "c7"
    # integer degree bounds stay integers, no symbolic tag
    drow = by_label["image_degree_bound_final"]
    assert drow["value"] == 16200 and isinstance(drow["value"], int)
    assert drow["rounding"] == "exact"
    assert "symbolic_constant" not in drow
    nrep = essential_minimum_image_bounds(2, 2, 1, 5, 27, mode="naive")
    nrow = {r["label"]: r for r in nrep.to_dict()["entries"]}["naive_multiplier"]
    assert nrow["symbolic_constant"] == "c8"
    assert repr(BoundReport("x", {}, [])) == "BoundReport(x, 0 entries)"


# ----------------------------------------------------- precision and rounding

def test_precision_floor_and_restoration():
    before = iv.prec
    for call in (lambda: c0(1, 1, 8, prec=63),
                 lambda: weil_height_rational(2, prec=10),
                 lambda: c1_c2_curve(E01, prec=0),
                 lambda: zhang_special_bound(2, 1, 1, prec=32),
                 lambda: essential_minimum_image_bounds(2, 2, 1, 5, 27,
                                                        prec=63)):
        with pytest.raises(ValueError):
            call()
    c0(1, 1, 8, prec=64)
    c0(1, 1, 8, prec=256)
    assert iv.prec == before


def _c0_enclosure(d1, d2, m, prec):
    rational = heights._c0_rational(d1, d2, "harmonic")
    logcoeff = Fraction(m) - Fraction(d1 + d2, 2)
    with heights._prec(prec):
        enc = heights._ivq(rational) + heights._ivq(logcoeff) * iv.log(iv.mpf(2))
        return lower_endpoint(enc), upper_endpoint(enc)


def test_directed_rounding_cross_evaluation():
    # an upper-rounded output at working precision is never below the
    # lower endpoint of the doubled-precision enclosure of the same
    # quantity, and a lower-rounded output never exceeds its upper one
    rng = random.Random(13)
    for _ in range(200):
        d1, d2, m = rng.randint(0, 10), rng.randint(0, 10), rng.randint(0, 60)
        prec = rng.choice([64, 80, 96])
        lo2, hi2 = _c0_enclosure(d1, d2, m, 2 * prec)
        v = c0(d1, d2, m, prec=prec)
        assert lo2 <= v
        with mp.workprec(300):
            # tightness: the coarse upper bound overshoots the refined one
            # by at most a few ulps of the working precision
            assert v - hi2 <= (abs(hi2) + 1) * mp.mpf(2) ** (-prec + 4)
    for _ in range(60):
        n = rng.randint(2, 4)
        r = rng.randint(2, n)
        alpha = rng.randint(2, 9)
        d_l = rng.randint(1, alpha * alpha)
        deg_c = rng.randint(1, 30)
        prec = rng.choice([64, 80])
        lam = galateau_lambda(n, n - 1)
        down = essential_minimum_image_bounds(
            n, r, d_l, alpha, deg_c, mode="smart",
            prec=prec).value("smart_multiplier_strong")
        with heights._prec(2 * prec):
            logterm = iv.log(iv.mpf(d_l * alpha)) ** lam
            num = iv.exp((iv.log(iv.mpf(alpha ** (2 * (r - 1))))
                          - iv.log(iv.mpf(d_l))) / (n - 1))
            hi2 = upper_endpoint(num / logterm)
        assert down <= hi2
