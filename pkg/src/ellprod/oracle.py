"""Finite-field brute-force oracle for the symbolic constructions.

Everything here is plain modular integer arithmetic, independent of the
exact-arithmetic layers it checks: points are enumerated by scanning x
and reading square roots off a residue table, scalar multiplication is
double-and-add, and the reports compare that ground truth against the
polynomial formulas reduced mod p.

Scale policy: exhaustive product scans run only for p <= 31 and two
factors; anything larger is sampled with the fixed seed 20260815 (2000
tuples).  Good primes avoid 2, 3, the curve discriminants, and the
isogeny multipliers, so reductions stay nonsingular and separable.
"""

import random
from itertools import product as iter_product
from math import isqrt

EXHAUSTIVE_MAX_P = 31
SAMPLE_SEED = 20260815
SAMPLE_COUNT = 2000


class BadReductionError(ValueError):
    """p is not a good prime for the given data."""


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PrimeFieldCtx:
    """A good odd prime together with the reduced curve coefficients."""

    def __init__(self, p, system):
        p = int(p)
        if not _is_prime(p):
            raise BadReductionError("%d is not prime" % p)
        if p in (2, 3):
            raise BadReductionError("p must avoid 2 and 3")
        for E in system.curves:
            if E.discriminant() % p == 0:
                raise BadReductionError("p = %d divides the discriminant of %r"
                                        % (p, E))
        self.p = p
        self.system = system
        self.curves_mod = [(E.A % p, E.B % p) for E in system.curves]

    def require_separable(self, alphas):
        for a in alphas:
            if a % self.p == 0:
                raise BadReductionError("p = %d divides multiplier %d"
                                        % (self.p, a))


def enumerate_points(ctx, curve_index):
    """All F_p points of the reduced curve, None (infinity) first.

    Enumerates by x-scan against a square table and asserts the Hasse
    window |#E - (p+1)| <= 2*sqrt(p) as a cheap correctness guard.
    """
    p = ctx.p
    A, B = ctx.curves_mod[curve_index]
    roots = {}
    for y in range(p):
        roots.setdefault(y * y % p, []).append(y)
    pts = [None]
    for x in range(p):
        for y in roots.get((x * x * x + A * x + B) % p, ()):
            pts.append((x, y))
    if abs(len(pts) - (p + 1)) ** 2 > 4 * p:
        raise AssertionError("point count %d outside the Hasse window for p=%d"
                             % (len(pts), p))
    return pts


def add_points_mod(p, A, P, Q):
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2 and (y1 + y2) % p == 0:
        return None
    if P == Q:
        lam = (3 * x1 * x1 + A) * pow(2 * y1, -1, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
    x3 = (lam * lam - x1 - x2) % p
    return (x3, (lam * (x1 - x3) - y1) % p)


def scalar_mul_mod(p, A, n, P):
    if n < 0:
        n, P = -n, (None if P is None else (P[0], (-P[1]) % p))
    acc = None
    while n:
        if n & 1:
            acc = add_points_mod(p, A, acc, P)
        P = add_points_mod(p, A, P, P)
        n >>= 1
    return acc


def poly_mod(poly, p, names):
    """Reduce a MultiPoly to a list of (coeff mod p, exponents) aligned
    with the given variable names; requires denominators prime to p."""
    idx = [poly.ring.index(n) for n in names]
    out = []
    for e, c in poly.terms.items():
        if c.denominator % p == 0:
            raise BadReductionError("coefficient denominator divisible by %d" % p)
        cm = c.numerator * pow(c.denominator, -1, p) % p
        out.append((cm, tuple(e[i] for i in idx)))
    return out


def eval_mod(reduced, values, p):
    acc = 0
    for c, e in reduced:
        t = c
        for v, k in zip(values, e):
            if k:
                t = t * pow(v, k, p) % p
        acc = (acc + t) % p
    return acc


def verify_maps_vs_group_law(ctx, curve_index, alpha):
    """Exhaustively compare the coordinate formulas of [alpha] with
    double-and-add over F_p.

    The formulas are evaluated wherever they are defined; the exceptional
    (undefined) points are reported and checked to coincide exactly with
    the affine kernel of [alpha], which for the stored normalization is
    the zero locus of t_alpha (odd) resp. of t~ and y (even).
    """
    from .curves import multiplication_maps

    alpha = int(alpha)
    ctx.require_separable([alpha])
    p = ctx.p
    A, B = ctx.curves_mod[curve_index]
    maps = multiplication_maps(alpha, ctx.system.curves[curve_index])
    r = poly_mod(maps.r, p, ("x",))
    s = poly_mod(maps.s, p, ("x",))
    t = poly_mod(maps.t, p, ("x",))
    even = maps.is_even()
    if even:
        rt = poly_mod(maps.r_tilde, p, ("x",))
        tt = poly_mod(maps.t_tilde, p, ("x",))
    mismatches = []
    exceptional = []
    kernel = []
    checked = 0
    for P in enumerate_points(ctx, curve_index):
        if P is None:
            continue
        x, y = P
        expected = scalar_mul_mod(p, A, alpha, P)
        if expected is None:
            kernel.append(P)
        tv = eval_mod(t, (x,), p)
        if even:
            ttv = eval_mod(tt, (x,), p)
            defined = ttv != 0 and y != 0
        else:
            defined = tv != 0
        if not defined:
            exceptional.append(P)
            continue
        checked += 1
        if even:
            got = (eval_mod(rt, (x,), p) * pow(ttv * tv % p, -1, p) % p,
                   eval_mod(s, (x,), p) * pow(ttv * tv * tv % p * y % p, -1, p) % p)
        else:
            got = (eval_mod(r, (x,), p) * pow(tv * tv % p, -1, p) % p,
                   eval_mod(s, (x,), p) * y % p * pow(tv * tv * tv % p, -1, p) % p)
        if got != expected:
            mismatches.append({"point": P, "formula": got, "group_law": expected})
    report = {
        "p": p,
        "curve_index": curve_index,
        "alpha": alpha,
        "checked": checked,
        "exceptional": exceptional,
        "exceptional_equals_kernel": sorted(exceptional) == sorted(kernel),
        "mismatches": mismatches,
        "ok": not mismatches and sorted(exceptional) == sorted(kernel),
    }
    return report


def verify_preimage_membership(ctx, pre):
    """Over F_p, for every affine point tuple outside the excluded locus:
    the generated equations vanish iff the isogeny image satisfies the
    base equations.  Exhaustive at desk scale, sampled beyond it."""
    system = pre.system
    if system is not ctx.system and system.curves != ctx.system.curves:
        raise ValueError("context and presentation use different curve systems")
    p = ctx.p
    alphas = pre.isogeny.alphas
    ctx.require_separable(alphas)
    n = system.n_factors
    ring = system.ring
    names = ring
    eqs = [poly_mod(eq, p, names) for eq in pre.equations]
    base_eqs = [poly_mod(eq, p, names) for eq in pre.base.equations]
    excl = [(row["j"], poly_mod(row["t"], p, ("x%d" % row["j"],)))
            for row in pre.excluded_locus]
    affine = []
    for idx in range(n):
        pts = [P for P in enumerate_points(ctx, idx) if P is not None]
        affine.append(pts)
    total = 1
    for pts in affine:
        total *= len(pts)
    exhaustive = (p <= EXHAUSTIVE_MAX_P and n == 2)
    if exhaustive:
        tuples = iter_product(*affine)
        planned = total
    else:
        rng = random.Random(SAMPLE_SEED)
        planned = min(SAMPLE_COUNT, total)
        tuples = (tuple(rng.choice(pts) for pts in affine) for _ in range(planned))
    iterated = 0
    excluded = 0
    members = 0
    vanishing = 0
    mismatches = []
    for tup in tuples:
        iterated += 1
        values = []
        for (x, y) in tup:
            values.extend((x, y))
        skip = False
        for j, tred in excl:
            if eval_mod(tred, (tup[j - 1][0],), p) == 0:
                skip = True
                break
        if skip:
            excluded += 1
            continue
        lhs = all(eval_mod(eq, values, p) == 0 for eq in eqs)
        image_values = []
        degenerate = False
        for idx, P in enumerate(tup):
            A, _ = ctx.curves_mod[idx]
            Q = scalar_mul_mod(p, A, alphas[idx], P)
            if Q is None:
                degenerate = True
                break
            image_values.extend(Q)
        if degenerate:
            # outside the excluded locus the image must be affine
            mismatches.append({"tuple": tup, "problem": "image at infinity"})
            continue
        rhs = all(eval_mod(eq, image_values, p) == 0 for eq in base_eqs)
        if lhs:
            vanishing += 1
        if rhs:
            members += 1
        if lhs != rhs:
            mismatches.append({"tuple": tup, "equations_vanish": lhs,
                               "image_on_subvariety": rhs})
    if exhaustive and iterated != total:
        raise AssertionError("exhaustive scan iterated %d of %d tuples"
                             % (iterated, total))
    return {
        "p": p,
        "mode": "exhaustive" if exhaustive else "sampled",
        "affine_counts": [len(pts) for pts in affine],
        "iterated": iterated,
        "excluded": excluded,
        "equations_vanish": vanishing,
        "image_on_subvariety": members,
        "mismatches": mismatches,
        "ok": not mismatches,
    }


def degree_spot_check(ctx, pre, fiber_coordinate="x1"):
    """Informational fiber statistics for curve preimages: count solution
    tuples per value of one x-coordinate and report the maximum fiber
    size next to the cleared equations' per-variable degrees.  Never
    fails; the numbers are for eyeballing degree bookkeeping."""
    p = ctx.p
    system = pre.system
    ring = system.ring
    j_fiber = ring.index(fiber_coordinate) // 2 + 1
    eqs = [poly_mod(eq, p, ring) for eq in pre.equations]
    excl = [(row["j"], poly_mod(row["t"], p, ("x%d" % row["j"],)))
            for row in pre.excluded_locus]
    affine = []
    for idx in range(system.n_factors):
        affine.append([P for P in enumerate_points(ctx, idx) if P is not None])
    fibers = {}
    if ctx.p <= EXHAUSTIVE_MAX_P and system.n_factors == 2:
        for tup in iter_product(*affine):
            skip = False
            for j, tred in excl:
                if eval_mod(tred, (tup[j - 1][0],), p) == 0:
                    skip = True
                    break
            if skip:
                continue
            values = []
            for (x, y) in tup:
                values.extend((x, y))
            if all(eval_mod(eq, values, p) == 0 for eq in eqs):
                key = tup[j_fiber - 1][0]
                fibers[key] = fibers.get(key, 0) + 1
    degrees = [{v: eq.degree_in(v) for v in sorted(eq.variables())}
               for eq in pre.equations]
    return {
        "p": p,
        "fiber_coordinate": fiber_coordinate,
        "max_fiber_size": max(fibers.values()) if fibers else 0,
        "fiber_count": len(fibers),
        "equation_degrees": degrees,
        "informational": True,
    }
