"""Explicit height-inequality constants, with directed rounding.

All transcendental evaluation goes through mpmath interval arithmetic at
a caller-selectable working precision (default 80 significand bits, well
above the 64-bit floor the bounds require).  Quantities that sit on the
upper-bound side of an inequality are reported as the upper interval
endpoint ("up"); multipliers on the lower-bound side are reported as the
lower endpoint ("down"); integer degree bounds are exact.  Every report
names its rounding direction.

Rational bookkeeping (harmonic sums, the c0 rational part) is done in
exact Fractions and only converted to intervals at the very end, so the
two evaluation branches of c0 share bit-identical rational parts.

The Galateau-style constants c6, c7, c8 are effectively computable but
not numerically specified; they stay symbolic with multiplier 1 and the
reports carry the computed cofactor that multiplies them.
"""

from contextlib import contextmanager
from fractions import Fraction

from mpmath import iv, mp, nstr

from .curves import WeierstrassCurve

DEFAULT_PREC = 80


@contextmanager
def _prec(bits):
    if bits < 64:
        raise ValueError("working precision must be >= 64 bits")
    old = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = old


def upper_endpoint(x):
    """Right endpoint of an interval as an exact mpf (no re-rounding)."""
    return mp.make_mpf(x._mpi_[1])


def lower_endpoint(x):
    """Left endpoint of an interval as an exact mpf (no re-rounding)."""
    return mp.make_mpf(x._mpi_[0])


def _ivq(q):
    """Enclosing interval of a Fraction or int."""
    q = Fraction(q)
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)


def _log_max1(q):
    """Interval for log max(|q|, 1); exact zero when |q| <= 1."""
    q = abs(Fraction(q))
    if q <= 1:
        return iv.mpf(0)
    return iv.log(_ivq(q))


def weil_height_rational(q, prec=DEFAULT_PREC):
    """h(q) = log max(|num|, den) of the reduced fraction, rounded up."""
    q = Fraction(q)
    with _prec(prec):
        m = max(abs(q.numerator), q.denominator)
        if m == 1:
            return upper_endpoint(iv.mpf(0))
        return upper_endpoint(iv.log(iv.mpf(m)))


def _harmonic(k):
    return sum((Fraction(1, i) for i in range(1, k + 1)), Fraction(0))


def _c0_rational(d1, d2, method):
    if method == "double_sum":
        acc = Fraction(0)
        for i in range(d1 + 1):
            for j in range(d2 + 1):
                acc += Fraction(1, 2 * (i + j + 1))
        return acc
    if method == "harmonic":
        # Double-sum identity:
        #   sum_{i<=d1} sum_{j<=d2} 1/(i+j+1)
        #     = (d1+d2+2) H_{d1+d2+2} - (d1+1) H_{d1+1} - (d2+1) H_{d2+1}
        return Fraction(1, 2) * ((d1 + d2 + 2) * _harmonic(d1 + d2 + 2)
                                 - (d1 + 1) * _harmonic(d1 + 1)
                                 - (d2 + 1) * _harmonic(d2 + 1))
    raise ValueError("unknown c0 method %r" % (method,))


def c0(d1, d2, m, method="double_sum", prec=DEFAULT_PREC):
    """c0(d1, d2, m) = sum_{i<=d1} sum_{j<=d2} 1/(2(i+j+1))
    + (m - (d1+d2)/2) * log 2, rounded up.

    Both evaluation methods produce the identical exact Fraction for the
    rational part, so they agree bit for bit.
    """
    d1, d2, m = int(d1), int(d2), int(m)
    if d1 < 0 or d2 < 0 or m < 0:
        raise ValueError("arguments must be nonnegative")
    rational = _c0_rational(d1, d2, method)
    logcoeff = Fraction(m) - Fraction(d1 + d2, 2)
    with _prec(prec):
        return upper_endpoint(_ivq(rational) + _ivq(logcoeff) * iv.log(iv.mpf(2)))


def c1_c2_curve(E, use_better=False, prec=DEFAULT_PREC):
    """Per-curve constants (c1, c2) comparing Weil and Faltings heights,
    both rounded up.

    General branch: c1 = (h(A)+h(B))/2 + (h(Delta)+h_inf(j))/4 + h(j)/8
    + 3.724 and c2 the same without the h(j)/8 term, with 4.015.  Better
    branch: the minimum of the sharpened expression (constants 2.919 /
    3.21) and 3*h(1:|A|^(1/2):|B|^(1/3)) + 4.709 (resp. times 3/2, with
    2.427).
    """
    if not isinstance(E, WeierstrassCurve):
        raise TypeError("expected WeierstrassCurve")
    A, B = E.A, E.B
    disc = E.discriminant()
    j = E.j_invariant()
    with _prec(prec):
        hA = _log_max1(A)
        hB = _log_max1(B)
        hD = _log_max1(disc)  # Delta is a nonzero integer, so h = log|Delta|
        hj = (iv.mpf(0) if max(abs(j.numerator), j.denominator) == 1
              else iv.log(iv.mpf(max(abs(j.numerator), j.denominator))))
        hj_inf = _log_max1(j)
        if not use_better:
            base = (hA + hB) / 2 + (hD + hj_inf) / 4
            c1 = base + hj / 8 + iv.mpf("3.724")
            c2 = base + iv.mpf("4.015")
            return upper_endpoint(c1), upper_endpoint(c2)
        first = iv.log(iv.mpf(abs(A) + abs(B) + 3)) / 2 + (hD + hj_inf) / 4
        # h(1 : |A|^(1/2) : |B|^(1/3)) = max(0, log|A|/2, log|B|/3)
        h_abc = iv.mpf(0)
        if abs(A) > 1:
            h_abc = _iv_max(h_abc, iv.log(iv.mpf(abs(A))) / 2)
        if abs(B) > 1:
            h_abc = _iv_max(h_abc, iv.log(iv.mpf(abs(B))) / 3)
        c1_first = first + hj / 8 + iv.mpf("2.919")
        c1_second = 3 * h_abc + iv.mpf("4.709")
        c2_first = first + iv.mpf("3.21")
        c2_second = 3 * h_abc / 2 + iv.mpf("2.427")
        c1 = min(upper_endpoint(c1_first), upper_endpoint(c1_second))
        c2 = min(upper_endpoint(c2_first), upper_endpoint(c2_second))
        return c1, c2


def _iv_max(a, b):
    # max of two intervals as an interval enclosure
    lo = max(lower_endpoint(a), lower_endpoint(b))
    hi = max(upper_endpoint(a), upper_endpoint(b))
    return iv.mpf([lo, hi])


def curve_c3(E, use_better=False, prec=DEFAULT_PREC):
    """c3 = c1 + c2 at the working precision."""
    c1, c2 = c1_c2_curve(E, use_better, prec)
    with _prec(prec):
        return upper_endpoint(iv.mpf(c1) + iv.mpf(c2))


def zhang_special_bound(n_factors, h2_q, c3_product, prec=DEFAULT_PREC):
    """N * 3^(N-1) * (h2(Q) + c3), rounded up.  h2_q and c3_product are
    caller-supplied reals (no algorithm for them at this scale)."""
    n_factors = int(n_factors)
    if n_factors < 1:
        raise ValueError("need at least one factor")
    with _prec(prec):
        h2 = iv.mpf(h2_q)
        if h2 < 0:
            raise ValueError("h2_q must be nonnegative")
        coeff = iv.mpf(n_factors) * iv.mpf(3) ** (n_factors - 1)
        return upper_endpoint(coeff * (h2 + iv.mpf(c3_product)))


def bezout_intersection_bounds(deg_pre, h2_pre, deg_b, h2_b, dim_b, n_factors,
                               deg_phi, prec=DEFAULT_PREC):
    """(trivial, improved) intersection-height bounds, both rounded up.

    trivial = deg_pre*h2_B + deg_B*h2_pre + c0(1, dim_B, 3^N - 1)*deg_pre*deg_B;
    improved = trivial / deg_phi, computed from the *reported* trivial
    value so improved*deg_phi >= trivial always holds at the reported
    precision.
    """
    deg_pre, deg_b = int(deg_pre), int(deg_b)
    dim_b, n_factors, deg_phi = int(dim_b), int(n_factors), int(deg_phi)
    if deg_phi < 1:
        raise ValueError("deg_phi must be >= 1")
    c = c0(1, dim_b, 3 ** n_factors - 1, prec=prec)
    with _prec(prec):
        trivial = upper_endpoint(iv.mpf(deg_pre) * iv.mpf(h2_b)
                                 + iv.mpf(deg_b) * iv.mpf(h2_pre)
                                 + iv.mpf(c) * iv.mpf(deg_pre) * iv.mpf(deg_b))
        improved = upper_endpoint(iv.mpf(trivial) / iv.mpf(deg_phi))
        return trivial, improved


def galateau_lambda(n_factors, k):
    """lambda(N, k) = (5N(k+1))^(k+1), exact integer."""
    n_factors, k = int(n_factors), int(k)
    if n_factors < 1 or k < 0:
        raise ValueError("need N >= 1 and k >= 0")
    return (5 * n_factors * (k + 1)) ** (k + 1)


class BoundReport:
    """A named bound with echoed inputs and per-value rounding direction.

    entries is a list of dicts {label, value, rounding, symbolic_constant?};
    values stay numeric here and are stringified by to_dict for reports.
    """

    def __init__(self, name, inputs, entries):
        self.name = name
        self.inputs = inputs
        self.entries = entries

    def value(self, label):
        for row in self.entries:
            if row["label"] == label:
                return row["value"]
        raise KeyError(label)

    def to_dict(self):
        rows = []
        for row in self.entries:
            out = {"label": row["label"],
                   "value": row["value"] if isinstance(row["value"], int)
                   else nstr(row["value"], 20),
                   "rounding": row["rounding"]}
            if row.get("symbolic_constant"):
                out["symbolic_constant"] = row["symbolic_constant"]
            rows.append(out)
        return {"name": self.name, "inputs": self.inputs, "entries": rows}

    def __repr__(self):
        return "BoundReport(%s, %d entries)" % (self.name, len(self.entries))


def essential_minimum_image_bounds(n_factors, r, d_l, alpha, deg_c,
                                   mode="smart", prec=DEFAULT_PREC):
    """Multipliers for the essential-minimum lower bounds on isogeny
    images of curves, and the associated image-degree upper bounds.

    smart mode: multiplier of the symbolic constant c7, in the strong
    form (alpha^(2(r-1))/d_L)^(1/(N-1)) / log(d_L*|alpha|)^lambda and the
    weaker alpha^(2(r-2)/(N-1)) / log(d_L*|alpha|)^lambda, both rounded
    down.  naive mode: multiplier of c8, alpha^(-2/(N-1)) *
    log(|alpha|)^(-lambda), rounded down.  lambda = lambda(N, N-1).

    Degree bounds (exact integers): 3N^2*d_L*deg_pre with
    deg_pre = N*alpha^(2(N-r))*deg_C, then 3N^3*d_L*alpha^(2(N-r))*deg_C,
    then 3N^3*alpha^(2(N+1-r))*deg_C.
    """
    n_factors, r, d_l, alpha, deg_c = (int(n_factors), int(r), int(d_l),
                                       int(alpha), int(deg_c))
    if n_factors < 2:
        raise ValueError("need N >= 2")
    if not 2 <= r <= n_factors:
        raise ValueError("need 2 <= r <= N")
    if d_l < 1 or deg_c < 1:
        raise ValueError("d_L and deg_C must be positive")
    if alpha ** 2 < d_l:
        raise ValueError("hypothesis alpha^2 >= d_L violated")
    lam = galateau_lambda(n_factors, n_factors - 1)
    deg_pre = n_factors * alpha ** (2 * (n_factors - r)) * deg_c
    degree_entries = [
        {"label": "image_degree_bound_ambient",
         "value": 3 * n_factors ** 2 * d_l * deg_pre, "rounding": "exact"},
        {"label": "image_degree_bound_pullback",
         "value": 3 * n_factors ** 3 * d_l * alpha ** (2 * (n_factors - r)) * deg_c,
         "rounding": "exact"},
        {"label": "image_degree_bound_final",
         "value": 3 * n_factors ** 3 * alpha ** (2 * (n_factors + 1 - r)) * deg_c,
         "rounding": "exact"},
    ]
    inputs = {"N": n_factors, "r": r, "d_L": d_l, "alpha": alpha,
              "deg_C": deg_c, "mode": mode, "lambda": lam,
              "deg_pre_bound": deg_pre}
    with _prec(prec):
        if mode == "smart":
            if d_l * abs(alpha) < 2:
                raise ValueError("smart mode needs d_L * |alpha| >= 2 "
                                 "(log factor would vanish)")
            logterm = iv.log(iv.mpf(d_l * abs(alpha))) ** lam
            # (alpha^(2(r-1)) / d_L)^(1/(N-1)) via exp(log(...)/(N-1))
            num = iv.exp((iv.log(iv.mpf(alpha ** (2 * (r - 1))))
                          - iv.log(iv.mpf(d_l))) / (n_factors - 1))
            strong = lower_endpoint(num / logterm)
            weak_pow = iv.exp(iv.log(iv.mpf(alpha * alpha))
                              * _ivq(Fraction(r - 2, n_factors - 1)))
            weak = lower_endpoint(weak_pow / logterm)
            entries = [
                {"label": "smart_multiplier_strong", "value": strong,
                 "rounding": "down", "symbolic_constant": "c7"},
                {"label": "smart_multiplier_weak", "value": weak,
                 "rounding": "down", "symbolic_constant": "c7"},
            ] + degree_entries
            return BoundReport("essential_minimum_image_smart", inputs, entries)
        if mode == "naive":
            if abs(alpha) < 2:
                raise ValueError("naive mode needs |alpha| >= 2 "
                                 "(log factor would vanish)")
            mult = lower_endpoint(
                iv.exp(-iv.log(iv.mpf(alpha * alpha)) / (n_factors - 1))
                / iv.log(iv.mpf(abs(alpha))) ** lam)
            entries = [
                {"label": "naive_multiplier", "value": mult,
                 "rounding": "down", "symbolic_constant": "c8"},
            ] + degree_entries
            return BoundReport("essential_minimum_image_naive", inputs, entries)
    raise ValueError("mode must be 'smart' or 'naive'")
