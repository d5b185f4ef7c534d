"""Products of elliptic curves, subvarieties, and multidegree bookkeeping.

A product E_1 x ... x E_N carries affine coordinates (x1, y1, ..., xN, yN).
Subvarieties are presented by exact polynomial equations in those
coordinates together with their dimension and the table of multidegrees
deg_I indexed by 0/1 tuples I of weight dim (the choice of |I| hyperplane
classes pulled back from the factors).  The (total) degree of a
dimension-d subvariety is d! times the sum of the table.

Pulling back along a diagonal isogeny [alpha_1, ..., alpha_N] multiplies
the entry at I by prod_{k: i_k = 0} alpha_k^2, because the class of a
coordinate hyperplane pulls back to alpha_k^2 times itself on the k-th
factor and the entries with i_k = 1 cap that factor away.
"""

from itertools import combinations
from math import factorial

from .polynomials import MultiPoly, parse_poly
from .curves import WeierstrassCurve


def product_ring(n):
    """Coordinate ring variable names (x1, y1, ..., xn, yn)."""
    names = []
    for j in range(1, n + 1):
        names.append("x%d" % j)
        names.append("y%d" % j)
    return tuple(names)


class ProductSystem:
    """An ordered tuple of short Weierstrass curves."""

    def __init__(self, curves):
        curves = tuple(curves)
        if not curves:
            raise ValueError("need at least one curve")
        for E in curves:
            if not isinstance(E, WeierstrassCurve):
                raise TypeError("expected WeierstrassCurve, got %r" % (E,))
        self.curves = curves
        self.ring = product_ring(len(curves))

    @property
    def n_factors(self):
        return len(self.curves)

    def coordinate_cubic(self, j):
        """x_j^3 + A_j*x_j + B_j in the product coordinate ring (j 1-based)."""
        E = self.curves[j - 1]
        x = MultiPoly.var(self.ring, "x%d" % j)
        return x ** 3 + E.A * x + E.B

    def weierstrass_relations(self):
        """[(y_j name, cubic in x_j)] for reduce_weierstrass."""
        return [("y%d" % j, self.coordinate_cubic(j))
                for j in range(1, self.n_factors + 1)]

    def __eq__(self, other):
        return isinstance(other, ProductSystem) and self.curves == other.curves

    def __repr__(self):
        return "ProductSystem(%r)" % (list(self.curves),)


def _weight_dim_indices(n, dim):
    out = []
    for combo in combinations(range(n), dim):
        I = [0] * n
        for i in combo:
            I[i] = 1
        out.append(tuple(I))
    return out


class MultiDegreeTable:
    """Complete table {I: deg_I} over 0/1 tuples I of weight dim."""

    def __init__(self, dim, entries):
        dim = int(dim)
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        entries = {tuple(int(i) for i in I): int(d) for I, d in entries.items()}
        if not entries:
            raise ValueError("empty multidegree table")
        n = len(next(iter(entries)))
        expected = _weight_dim_indices(n, dim)
        if sorted(entries) != sorted(expected):
            raise ValueError(
                "table must have exactly the 0/1 index tuples of weight %d in "
                "%d factors" % (dim, n))
        for I, d in entries.items():
            if d < 0:
                raise ValueError("negative multidegree at %r" % (I,))
        self.dim = dim
        self.n_factors = n
        self.entries = entries

    def index_order(self):
        """Deterministic index order (position-subset lexicographic)."""
        return _weight_dim_indices(self.n_factors, self.dim)

    def get(self, I):
        return self.entries[tuple(I)]

    def total_degree(self):
        return factorial(self.dim) * sum(self.entries.values())

    def __eq__(self, other):
        return (isinstance(other, MultiDegreeTable)
                and self.dim == other.dim and self.entries == other.entries)

    def __repr__(self):
        body = ", ".join("%r: %d" % (I, self.entries[I]) for I in self.index_order())
        return "MultiDegreeTable(dim=%d, {%s})" % (self.dim, body)


class SubvarietyPresentation:
    """Equations + dimension + multidegree table + transversality flag.

    The transverse flag is an input hypothesis carried along verbatim; the
    certification layer restates it in every certificate it emits.
    """

    def __init__(self, system, equations, dim, degrees, transverse):
        if not isinstance(system, ProductSystem):
            raise TypeError("system must be a ProductSystem")
        if not isinstance(degrees, MultiDegreeTable):
            raise TypeError("degrees must be a MultiDegreeTable")
        if degrees.n_factors != system.n_factors:
            raise ValueError("multidegree table is for %d factors, system has %d"
                             % (degrees.n_factors, system.n_factors))
        if degrees.dim != int(dim):
            raise ValueError("table dimension %d != stated dimension %d"
                             % (degrees.dim, dim))
        equations = tuple(equations)
        for eq in equations:
            if eq.ring != system.ring:
                raise ValueError("equation ring %r does not match product ring %r"
                                 % (eq.ring, system.ring))
            if not eq:
                raise ValueError("zero polynomial is not a defining equation")
        self.system = system
        self.equations = equations
        self.dim = int(dim)
        self.degrees = degrees
        self.transverse = bool(transverse)

    @property
    def n_factors(self):
        return self.system.n_factors

    def total_degree(self):
        return self.degrees.total_degree()

    def __repr__(self):
        return ("SubvarietyPresentation(dim=%d, equations=[%s], transverse=%r)"
                % (self.dim, "; ".join(str(e) for e in self.equations),
                   self.transverse))


def make_cn_curve(E1, E2, n):
    """The curve y2 = x1^n inside E1 x E2, with its multidegree table
    {deg_(1,0) = 9, deg_(0,1) = 6n} and total degree 6n + 9."""
    n = int(n)
    if n < 1:
        raise ValueError("n must be >= 1")
    system = ProductSystem([E1, E2])
    ring = system.ring
    eq = MultiPoly.var(ring, "y2") - MultiPoly.var(ring, "x1") ** n
    table = MultiDegreeTable(1, {(1, 0): 9, (0, 1): 6 * n})
    return SubvarietyPresentation(system, [eq], 1, table, True)


def total_degree(V):
    """dim! times the sum of the multidegree table."""
    table = V.degrees if isinstance(V, SubvarietyPresentation) else V
    return table.total_degree()


def preimage_multidegrees(V, isogeny):
    """Multidegree table of the preimage under a diagonal isogeny."""
    table = V.degrees if isinstance(V, SubvarietyPresentation) else V
    alphas = isogeny.alphas
    if len(alphas) != table.n_factors:
        raise ValueError("isogeny has %d components, table has %d factors"
                         % (len(alphas), table.n_factors))
    out = {}
    for I, d in table.entries.items():
        mult = 1
        for k, ik in enumerate(I):
            if ik == 0:
                mult *= alphas[k] ** 2
        out[I] = d * mult
    return MultiDegreeTable(table.dim, out)


def preimage_degree(V, isogeny):
    """Total degree of the preimage: dim! * sum_I deg_I * prod_{k: i_k=0} alpha_k^2."""
    return preimage_multidegrees(V, isogeny).total_degree()


def preimage_degree_curve(d, j, alpha):
    """Curve shortcut: preimage of a curve with multidegrees (d_1, ..., d_N)
    under [1, ..., alpha, ..., 1] (alpha in slot j, 1-based) has degree
    d_j + alpha^2 * sum_{i != j} d_i."""
    d = [int(v) for v in d]
    j = int(j)
    if not 1 <= j <= len(d):
        raise ValueError("slot j=%d out of range 1..%d" % (j, len(d)))
    alpha = int(alpha)
    return d[j - 1] + alpha ** 2 * (sum(d) - d[j - 1])


# -- JSON-facing dict forms ----------------------------------------------


def subvariety_to_dict(V):
    return {
        "curves": [{"A": E.A, "B": E.B} for E in V.system.curves],
        "equations": [str(eq) for eq in V.equations],
        "dim": V.dim,
        "multidegrees": [{"I": list(I), "deg": V.degrees.get(I)}
                         for I in V.degrees.index_order()],
        "transverse": V.transverse,
    }


def subvariety_from_dict(data):
    curves = [WeierstrassCurve(c["A"], c["B"]) for c in data["curves"]]
    system = ProductSystem(curves)
    equations = [parse_poly(s, system.ring) for s in data["equations"]]
    dim = int(data["dim"])
    entries = {tuple(row["I"]): int(row["deg"]) for row in data["multidegrees"]}
    table = MultiDegreeTable(dim, entries)
    return SubvarietyPresentation(system, equations, dim, table,
                                  bool(data["transverse"]))
