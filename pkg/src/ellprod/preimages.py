"""Explicit equations for preimages of subvarieties under diagonal isogenies.

Given V inside E_1 x ... x E_N cut out by polynomial equations and a
diagonal isogeny phi = [alpha_1, ..., alpha_N], the preimage phi^(-1)(V)
satisfies the equations obtained by substituting the coordinate form of
scalar multiplication,

    x_j -> r_j(x_j)/t_j(x_j)^2        (odd alpha_j)
    x_j -> r~_j(x_j)/(t~_j t_j)(x_j)  (even alpha_j)
    y_j -> s_j(x_j)*y_j / t_j(x_j)^3  (either parity)

then clearing denominators, rewriting y_j^2 via the Weierstrass
relations, and stripping content plus any stray factors supported on the
cleared denominators (powers of t_j, t~_j, or the curve cubic), ending
with primitive integer coefficients and a positive graded-lex leading
coefficient.

The equations present the preimage away from the excluded locus
{t_j(x_j) = 0 for some j} — the x-coordinates of the kernel of [alpha_j]
on the j-th factor, where the substituted rational maps degenerate.
membership_test refuses points on that locus rather than answer wrongly.
"""

from fractions import Fraction

from .curves import evaluate_multiplication_map, multiplication_maps
from .isogenies import DiagonalIsogeny
from .polynomials import (ExactDivisionError, MultiPoly, exact_divide,
                          integer_primitive, reduce_weierstrass, substitute)
from .products import (SubvarietyPresentation, preimage_multidegrees)


class PreimageDegenerateError(ValueError):
    """An input equation collapsed to 0 after substitution: the subvariety
    contains a translate of the kernel, and no equation presents its
    preimage there."""


class ExcludedLocusError(ValueError):
    """membership_test was asked about a point on the excluded locus."""


class PreimagePresentation:
    """Cleared, normalized equations for phi^(-1)(V) plus bookkeeping."""

    def __init__(self, base, isogeny, equations, excluded_locus, degrees):
        self.base = base
        self.isogeny = isogeny
        self.equations = tuple(equations)
        self.excluded_locus = list(excluded_locus)
        self.degrees = degrees

    @property
    def system(self):
        return self.base.system

    def total_degree(self):
        return self.degrees.total_degree()

    def as_subvariety(self, transverse=False):
        """Repackage as a SubvarietyPresentation; transversality of the
        preimage is NOT established here (that is the certification
        layer's job), so the flag defaults to False."""
        return SubvarietyPresentation(self.system, self.equations,
                                      self.base.dim, self.degrees, transverse)

    def __repr__(self):
        return ("PreimagePresentation(alphas=%r, %d equation(s))"
                % (list(self.isogeny.alphas), len(self.equations)))


def _embedded_maps(system, isogeny):
    """Per-factor multiplication maps specialized to the curves and
    renamed into the product coordinate ring."""
    ring = system.ring
    out = []
    for j in range(1, system.n_factors + 1):
        a = isogeny.alphas[j - 1]
        maps = multiplication_maps(a, system.curves[j - 1])
        rn = {"x": "x%d" % j}
        emb = {
            "alpha": a,
            "r": maps.r.embed(ring, rn),
            "s": maps.s.embed(ring, rn),
            "t": maps.t.embed(ring, rn),
            "r_tilde": None if maps.r_tilde is None else maps.r_tilde.embed(ring, rn),
            "t_tilde": None if maps.t_tilde is None else maps.t_tilde.embed(ring, rn),
        }
        out.append(emb)
    return out


def generate_preimage(V, isogeny):
    """Equations, excluded locus, and multidegrees of phi^(-1)(V)."""
    if not isinstance(V, SubvarietyPresentation):
        raise TypeError("V must be a SubvarietyPresentation")
    if not isinstance(isogeny, DiagonalIsogeny):
        raise TypeError("isogeny must be a DiagonalIsogeny")
    system = V.system
    if isogeny.n_factors != system.n_factors:
        raise ValueError("isogeny has %d components, product has %d factors"
                         % (isogeny.n_factors, system.n_factors))
    ring = system.ring
    emb = _embedded_maps(system, isogeny)
    one = MultiPoly.const(ring, 1)

    bindings = {}
    strip_candidates = []
    excluded = []
    for j in range(1, system.n_factors + 1):
        e = emb[j - 1]
        xj, yj = "x%d" % j, "y%d" % j
        y = MultiPoly.var(ring, yj)
        if e["t_tilde"] is None:
            bindings[xj] = (e["r"], e["t"] ** 2)
        else:
            bindings[xj] = (e["r_tilde"], e["t_tilde"] * e["t"])
        bindings[yj] = (e["s"] * y, e["t"] ** 3)
        if abs(e["alpha"]) != 1:
            t_prim = integer_primitive(e["t"])[1]
            excluded.append({"j": j, "alpha": e["alpha"], "t": t_prim})
            for cand in (e["t"], e["t_tilde"], system.coordinate_cubic(j)):
                if cand is None:
                    continue
                cand = integer_primitive(cand)[1]
                if not cand.is_constant() and cand not in strip_candidates:
                    strip_candidates.append(cand)

    relations = system.weierstrass_relations()
    equations = []
    for f in V.equations:
        num, _den = substitute(f, bindings)
        if not num:
            raise PreimageDegenerateError(
                "equation %s collapses to 0 after substitution: the "
                "subvariety contains a kernel translate" % (f,))
        num = reduce_weierstrass(num, relations)
        if not num:
            raise PreimageDegenerateError(
                "equation %s lies in the Weierstrass ideal after "
                "substitution" % (f,))
        num = integer_primitive(num)[1]
        # strip stray factors supported on the cleared denominators
        changed = True
        while changed and not num.is_constant():
            changed = False
            for cand in strip_candidates:
                try:
                    q = exact_divide(num, cand)
                except ExactDivisionError:
                    continue
                if q:
                    num = integer_primitive(q)[1]
                    changed = True
                    break
        equations.append(num)
    table = preimage_multidegrees(V.degrees, isogeny)
    return PreimagePresentation(V, isogeny, equations, excluded, table)


def apply_isogeny(system, isogeny, points):
    """Image of a tuple of points under [alpha_1, ..., alpha_N], using the
    coordinate formulas with group-law fallback on the kernel."""
    if len(points) != system.n_factors:
        raise ValueError("expected %d points, got %d"
                         % (system.n_factors, len(points)))
    return [evaluate_multiplication_map(system.curves[j], isogeny.alphas[j], P)
            for j, P in enumerate(points)]


def membership_test(pre, points):
    """Do the generated equations vanish at an affine point tuple?

    points: one affine CurvePoint per factor, each on its curve.  Raises
    ExcludedLocusError on the locus {some t_j(x_j) = 0}, where vanishing
    of the cleared equations does not decide membership.
    """
    system = pre.system
    if len(points) != system.n_factors:
        raise ValueError("expected %d points, got %d"
                         % (system.n_factors, len(points)))
    values = {}
    for j, P in enumerate(points, start=1):
        if P.is_infinity():
            raise ValueError("component %d is the point at infinity; the "
                             "presentation is affine" % j)
        E = system.curves[j - 1]
        if not E.contains(P.x, P.y):
            raise ValueError("component %d: (%s, %s) is not on %r"
                             % (j, P.x, P.y, E))
        values["x%d" % j] = P.x
        values["y%d" % j] = P.y
    for row in pre.excluded_locus:
        if row["t"].evaluate(values) == 0:
            raise ExcludedLocusError(
                "component %d lies on the kernel locus t_%d(x_%d) = 0"
                % (row["j"], row["alpha"], row["j"]))
    return all(eq.evaluate(values) == 0 for eq in pre.equations)
