"""Short Weierstrass curves y^2 = x^3 + A*x + B over Q.

Provides the exact chord-and-tangent group law, the x-parts of the
division polynomials, and the rational functions (r, s, t) — plus the
cofactor-free pair (r~, t~) for even multipliers — that express scalar
multiplication in coordinates:

    odd  alpha:  [alpha](x, y) = ( r(x)/t(x)^2 , s(x)*y / t(x)^3 )
    even alpha:  [alpha](x, y) = ( r~(x)/(t~(x)*t(x)) , s(x) / (t~(x)*t(x)^2*y) )

with t = (x^3 + A*x + B)*t~ and r = (x^3 + A*x + B)*r~ in the even case.
Division polynomials are stored with y^2 eliminated: psi_m = y^(m+1 mod 2)
* P_m(x, A, B), and this module works with the x-parts P_m throughout.

The coordinate formulas are undefined exactly on the affine kernel of
[alpha]; evaluation there raises KernelPointError, and the public
evaluator falls back to the group law, which is total.
"""

from fractions import Fraction

from .polynomials import MultiPoly, exact_divide

RING_XAB = ("x", "A", "B")


class SingularCurveError(ValueError):
    """Raised for coefficients with vanishing discriminant."""


class KernelPointError(ArithmeticError):
    """Raised when a coordinate formula is evaluated on the kernel."""


class WeierstrassCurve:
    """y^2 = x^3 + A*x + B with integer coefficients and Delta != 0."""

    __slots__ = ("A", "B")

    def __init__(self, A, B):
        A, B = int(A), int(B)
        if -16 * (4 * A ** 3 + 27 * B ** 2) == 0:
            raise SingularCurveError("singular curve: A=%d, B=%d" % (A, B))
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    def __setattr__(self, name, value):
        raise AttributeError("WeierstrassCurve is immutable")

    def discriminant(self):
        return -16 * (4 * self.A ** 3 + 27 * self.B ** 2)

    def j_invariant(self):
        return Fraction(-1728 * (4 * self.A) ** 3, self.discriminant())

    def rhs(self, x):
        x = Fraction(x)
        return x ** 3 + self.A * x + self.B

    def contains(self, x, y):
        return Fraction(y) ** 2 == self.rhs(x)

    def __eq__(self, other):
        return (isinstance(other, WeierstrassCurve)
                and (self.A, self.B) == (other.A, other.B))

    def __hash__(self):
        return hash(("WeierstrassCurve", self.A, self.B))

    def __repr__(self):
        return "WeierstrassCurve(A=%d, B=%d)" % (self.A, self.B)


class CurvePoint:
    """Affine point or the point at infinity (x = y = None)."""

    __slots__ = ("x", "y")

    def __init__(self, x=None, y=None):
        if (x is None) != (y is None):
            raise ValueError("both coordinates or neither")
        object.__setattr__(self, "x", None if x is None else Fraction(x))
        object.__setattr__(self, "y", None if y is None else Fraction(y))

    def __setattr__(self, name, value):
        raise AttributeError("CurvePoint is immutable")

    @classmethod
    def infinity(cls):
        return cls()

    def is_infinity(self):
        return self.x is None

    def __eq__(self, other):
        return (isinstance(other, CurvePoint)
                and (self.x, self.y) == (other.x, other.y))

    def __hash__(self):
        return hash(("CurvePoint", self.x, self.y))

    def __repr__(self):
        if self.is_infinity():
            return "CurvePoint(infinity)"
        return "CurvePoint(%s, %s)" % (self.x, self.y)


def negate_point(P):
    if P.is_infinity():
        return P
    return CurvePoint(P.x, -P.y)


def add_points(curve, P, Q):
    """Chord-and-tangent addition; inputs assumed on the curve."""
    if P.is_infinity():
        return Q
    if Q.is_infinity():
        return P
    if P.x == Q.x:
        if P.y == -Q.y:
            return CurvePoint.infinity()
        lam = (3 * P.x ** 2 + curve.A) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam ** 2 - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return CurvePoint(x3, y3)


def scalar_mul_point(curve, n, P):
    """[n]P by double-and-add; total, exact, any integer n."""
    n = int(n)
    if n < 0:
        return scalar_mul_point(curve, -n, negate_point(P))
    acc = CurvePoint.infinity()
    addend = P
    while n:
        if n & 1:
            acc = add_points(curve, acc, addend)
        addend = add_points(curve, addend, addend)
        n >>= 1
    return acc


# -- division polynomials (x-parts) -------------------------------------

_X = MultiPoly.var(RING_XAB, "x")
_A = MultiPoly.var(RING_XAB, "A")
_B = MultiPoly.var(RING_XAB, "B")
_C3 = _X ** 3 + _A * _X + _B  # the curve cubic, i.e. y^2

_DIVPOLY_CACHE = {
    0: MultiPoly.zero(RING_XAB),
    1: MultiPoly.const(RING_XAB, 1),
    2: MultiPoly.const(RING_XAB, 2),
    3: 3 * _X ** 4 + 6 * _A * _X ** 2 + 12 * _B * _X - _A ** 2,
    4: 4 * (_X ** 6 + 5 * _A * _X ** 4 + 20 * _B * _X ** 3
            - 5 * _A ** 2 * _X ** 2 - 4 * _A * _B * _X
            - 8 * _B ** 2 - _A ** 3),
}


def division_polynomial(m, curve=None):
    """x-part P_m of the m-th division polynomial, in Z[x, A, B].

    psi_m = y * P_m for even m and psi_m = P_m for odd m; callers track
    the parity (the implicit factor y) themselves.  With a curve given,
    A and B are specialized to its coefficients (same ring, the symbols
    simply no longer occur).
    """
    m = int(m)
    if m < 0:
        raise ValueError("m must be nonnegative")
    p = _divpoly(m)
    if curve is not None:
        p = p.specialize({"A": curve.A, "B": curve.B})
    return p


def _divpoly(m):
    if m in _DIVPOLY_CACHE:
        return _DIVPOLY_CACHE[m]
    k, odd = divmod(m, 2)
    if odd:
        # psi_{2k+1} = psi_{k+2} psi_k^3 - psi_{k-1} psi_{k+1}^3, with the
        # even-index entries each contributing a factor y; y^4 = c3^2.
        if k % 2 == 1:
            p = _divpoly(k + 2) * _divpoly(k) ** 3 \
                - _C3 ** 2 * _divpoly(k - 1) * _divpoly(k + 1) ** 3
        else:
            p = _C3 ** 2 * _divpoly(k + 2) * _divpoly(k) ** 3 \
                - _divpoly(k - 1) * _divpoly(k + 1) ** 3
    else:
        # psi_{2k} = psi_k (psi_{k+2} psi_{k-1}^2 - psi_{k-2} psi_{k+1}^2) / (2y);
        # the y factors cancel identically for either parity of k.
        p = Fraction(1, 2) * _divpoly(k) * (
            _divpoly(k + 2) * _divpoly(k - 1) ** 2
            - _divpoly(k - 2) * _divpoly(k + 1) ** 2)
    _DIVPOLY_CACHE[m] = p
    return p


# -- scalar multiplication in coordinates --------------------------------


class MultiplicationMaps:
    """Coordinate functions of [alpha] on a short Weierstrass curve.

    Fields r, s, t (and r_tilde, t_tilde when alpha is even) are
    MultiPoly in the ring (x, A, B); when built for a concrete curve the
    symbols A, B are already specialized.  x-map: r/t^2 (odd) or
    r~/(t~*t) (even); y-map: s*y/t^3 (odd) or s/(t~*t^2*y) (even).
    """

    __slots__ = ("alpha", "r", "s", "t", "r_tilde", "t_tilde")

    def __init__(self, alpha, r, s, t, r_tilde=None, t_tilde=None):
        self.alpha = alpha
        self.r = r
        self.s = s
        self.t = t
        self.r_tilde = r_tilde
        self.t_tilde = t_tilde

    def is_even(self):
        return self.alpha % 2 == 0

    def degrees(self):
        return {"r": self.r.degree(), "s": self.s.degree(), "t": self.t.degree()}


def multiplication_maps(alpha, curve=None):
    """Build the (r, s, t) data for [alpha], symbolic or curve-specific.

    alpha = 0 has no coordinate description (constant infinity) and is
    rejected.  Negative alpha flips the sign of s only.
    """
    alpha = int(alpha)
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    a = abs(alpha)
    if a == 1:
        r, s, t = _X, MultiPoly.const(RING_XAB, 1), MultiPoly.const(RING_XAB, 1)
        r_t = t_t = None
    else:
        Pa = _divpoly(a)
        Pm = _divpoly(a - 1)
        Pp = _divpoly(a + 1)
        s_core = exact_divide(_divpoly(2 * a), 2 * Pa)
        if a % 2 == 1:
            t = Pa
            r = _X * Pa ** 2 - _C3 * Pm * Pp
            s = s_core
            r_t = t_t = None
        else:
            t_t = Pa
            t = _C3 * Pa
            r_t = _X * _C3 * Pa ** 2 - Pm * Pp
            r = _C3 * r_t
            s = _C3 * s_core
    if alpha < 0:
        s = -s
    maps = MultiplicationMaps(alpha, r, s, t, r_t, t_t)
    if curve is not None:
        coeffs = {"A": curve.A, "B": curve.B}
        maps = MultiplicationMaps(
            alpha,
            maps.r.specialize(coeffs),
            maps.s.specialize(coeffs),
            maps.t.specialize(coeffs),
            None if r_t is None else r_t.specialize(coeffs),
            None if t_t is None else t_t.specialize(coeffs),
        )
    return maps


_MAPS_CACHE = {}


def _maps_for(curve, alpha):
    key = (curve.A, curve.B, alpha)
    if key not in _MAPS_CACHE:
        _MAPS_CACHE[key] = multiplication_maps(alpha, curve)
    return _MAPS_CACHE[key]


def evaluate_via_formula(curve, alpha, P):
    """Apply the coordinate formulas of [alpha] at an affine point.

    Raises KernelPointError on the affine kernel (t(x) = 0 for odd
    alpha; t~(x) = 0 or y = 0 for even alpha), where the formulas are
    undefined.
    """
    if P.is_infinity():
        return CurvePoint.infinity()
    maps = _maps_for(curve, alpha)
    at = {"x": P.x}
    if not maps.is_even():
        tv = maps.t.evaluate(at)
        if tv == 0:
            raise KernelPointError("t_%d vanishes at x = %s" % (alpha, P.x))
        rv = maps.r.evaluate(at)
        sv = maps.s.evaluate(at)
        return CurvePoint(rv / tv ** 2, sv * P.y / tv ** 3)
    ttv = maps.t_tilde.evaluate(at)
    if ttv == 0 or P.y == 0:
        raise KernelPointError("even formula undefined at (%s, %s)" % (P.x, P.y))
    tv = maps.t.evaluate(at)
    rv = maps.r_tilde.evaluate(at)
    sv = maps.s.evaluate(at)
    return CurvePoint(rv / (ttv * tv), sv / (ttv * tv ** 2 * P.y))


def evaluate_multiplication_map(curve, alpha, P):
    """[alpha]P via the coordinate formulas, falling back to the group
    law on the affine kernel.  Total on the whole curve."""
    try:
        return evaluate_via_formula(curve, alpha, P)
    except KernelPointError:
        return scalar_mul_point(curve, alpha, P)
