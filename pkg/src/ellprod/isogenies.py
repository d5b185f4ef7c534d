"""Diagonal isogenies [alpha_1, ..., alpha_N] on products of elliptic curves.

The map acts as scalar multiplication by alpha_j on the j-th factor; its
degree is prod alpha_j^2.  Composition is componentwise multiplication of
the integer vectors.
"""


class DiagonalIsogeny:
    """Componentwise scalar multiplication with nonzero integer multipliers."""

    def __init__(self, alphas):
        alphas = tuple(int(a) for a in alphas)
        if not alphas:
            raise ValueError("need at least one component")
        if any(a == 0 for a in alphas):
            raise ValueError("zero component is not an isogeny")
        self.alphas = alphas

    @property
    def n_factors(self):
        return len(self.alphas)

    def degree(self):
        d = 1
        for a in self.alphas:
            d *= a * a
        return d

    def compose(self, other):
        """self o other (the order is immaterial: components multiply)."""
        if not isinstance(other, DiagonalIsogeny):
            raise TypeError("can only compose with another DiagonalIsogeny")
        if self.n_factors != other.n_factors:
            raise ValueError("component count mismatch")
        return DiagonalIsogeny([a * b for a, b in zip(self.alphas, other.alphas)])

    def canonical_factorization(self):
        """One single-slot factor [1, .., alpha_j, .., 1] per component with
        alpha_j != 1, in slot order; composing them recovers self."""
        out = []
        for j, a in enumerate(self.alphas):
            if a == 1:
                continue
            alphas = [1] * self.n_factors
            alphas[j] = a
            out.append(DiagonalIsogeny(alphas))
        return out

    def factor_degree_primes(self):
        """Sorted primes dividing the degree, by trial division of the |alpha_j|."""
        primes = set()
        for a in self.alphas:
            a = abs(a)
            d = 2
            while d * d <= a:
                if a % d == 0:
                    primes.add(d)
                    while a % d == 0:
                        a //= d
                d += 1
            if a > 1:
                primes.add(a)
        return sorted(primes)

    def __eq__(self, other):
        return isinstance(other, DiagonalIsogeny) and self.alphas == other.alphas

    def __hash__(self):
        return hash(("DiagonalIsogeny", self.alphas))

    def __repr__(self):
        return "DiagonalIsogeny(%r)" % (list(self.alphas),)
