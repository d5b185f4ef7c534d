"""Exact sparse multivariate polynomial arithmetic over the rationals.

Polynomials are stored as a map from exponent tuples to nonzero Fraction
coefficients, relative to a fixed ordered tuple of variable names (the
"ring").  The canonical term order everywhere is graded lexicographic:
compare total degree first, then the exponent tuple lexicographically
(both descending when printing).

The string form produced by str() is canonical and is accepted back by
parse_poly, so text round-trips exactly.  Grammar:

    expr   := ('+'|'-')? term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' nat)?
    base   := rational | variable | '(' expr ')'

with rational := int ('/' int)?.  Multiplication is always explicit,
exponents are nonnegative integers, and '/' occurs only inside rational
literals.
"""

from fractions import Fraction


class ParseError(ValueError):
    """Raised on malformed polynomial text; message carries the offset."""


class ExactDivisionError(ArithmeticError):
    """Raised when exact_divide is asked for a quotient that does not exist."""


def _gl_key(expts):
    # Graded-lex sort key: total degree first, then lex on the tuple.
    return (sum(expts), expts)


class MultiPoly:
    """Immutable sparse polynomial over Q in a fixed ordered variable ring."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms=None):
        object.__setattr__(self, "ring", tuple(ring))
        clean = {}
        if terms:
            n = len(self.ring)
            for e, c in terms.items():
                c = Fraction(c)
                if c == 0:
                    continue
                e = tuple(int(k) for k in e)
                if len(e) != n or any(k < 0 for k in e):
                    raise ValueError("bad exponent tuple %r for ring %r" % (e, self.ring))
                clean[e] = clean.get(e, Fraction(0)) + c
                if clean[e] == 0:
                    del clean[e]
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, ring):
        return cls(ring, {})

    @classmethod
    def const(cls, ring, c):
        ring = tuple(ring)
        return cls(ring, {(0,) * len(ring): Fraction(c)})

    @classmethod
    def var(cls, ring, name, power=1):
        ring = tuple(ring)
        if name not in ring:
            raise ValueError("variable %r not in ring %r" % (name, ring))
        e = [0] * len(ring)
        e[ring.index(name)] = power
        return cls(ring, {tuple(e): Fraction(1)})

    # -- basic queries ------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        if not self.terms:
            return Fraction(0)
        return next(iter(self.terms.values()))

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name):
        if not self.terms:
            return -1
        i = self.ring.index(name)
        return max(e[i] for e in self.terms)

    def variables(self):
        """Names of variables that actually occur."""
        seen = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    seen.add(self.ring[i])
        return seen

    def leading(self):
        """(exponent tuple, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_gl_key)
        return e, self.terms[e]

    def coefficient(self, expts):
        return self.terms.get(tuple(expts), Fraction(0))

    # -- ring operations ----------------------------------------------

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise ValueError("ring mismatch: %r vs %r" % (self.ring, other.ring))

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            self._check_ring(other)
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(self.ring, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MultiPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            raise ValueError("negative exponent")
        result = MultiPoly.const(self.ring, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.ring, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- evaluation and rewriting ---------------------------------------

    def evaluate(self, values):
        """Evaluate at a dict {name: Fraction}; every occurring variable
        must be bound.  Returns a Fraction."""
        vals = []
        for i, name in enumerate(self.ring):
            if name in values:
                vals.append(Fraction(values[name]))
            else:
                vals.append(None)
        acc = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    if vals[i] is None:
                        raise ValueError("unbound variable %r" % (self.ring[i],))
                    t *= vals[i] ** k
            acc += t
        return acc

    def specialize(self, values):
        """Plug in constants for a subset of variables; result stays in
        the same ring (the specialized variables simply no longer occur)."""
        idx = {self.ring.index(n): Fraction(v) for n, v in values.items()}
        out = {}
        for e, c in self.terms.items():
            for i, v in idx.items():
                if e[i]:
                    c = c * v ** e[i]
            if c == 0:
                continue
            e2 = tuple(0 if i in idx else k for i, k in enumerate(e))
            s = out.get(e2, Fraction(0)) + c
            if s:
                out[e2] = s
            else:
                del out[e2]
        return MultiPoly(self.ring, out)

    def embed(self, new_ring, rename=None):
        """Reinterpret in another ring, optionally renaming variables.
        Every occurring variable must land in new_ring."""
        rename = rename or {}
        new_ring = tuple(new_ring)
        pos = {}
        for i, name in enumerate(self.ring):
            target = rename.get(name, name)
            pos[i] = new_ring.index(target) if target in new_ring else None
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * len(new_ring)
            for i, k in enumerate(e):
                if k:
                    if pos[i] is None:
                        raise ValueError(
                            "variable %r has no image in ring %r" % (self.ring[i], new_ring))
                    e2[pos[i]] += k
            out[tuple(e2)] = out.get(tuple(e2), Fraction(0)) + c
        return MultiPoly(new_ring, out)

    # -- printing -------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for e in sorted(self.terms, key=_gl_key, reverse=True):
            c = self.terms[e]
            mono = []
            for name, k in zip(self.ring, e):
                if k == 1:
                    mono.append(name)
                elif k >= 2:
                    mono.append("%s^%d" % (name, k))
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = "*".join(mono)
            else:
                body = str(a) + "*" + "*".join(mono)
            pieces.append(("-" if c < 0 else "+", body))
        sign, body = pieces[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            text += " %s %s" % (sign, body)
        return text

    def __repr__(self):
        return "MultiPoly(%r, %s)" % (self.ring, str(self))


# -- parsing -----------------------------------------------------------


def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("INT", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("NAME", text[i:j], i))
            i = j
            continue
        if ch in "+-*^()/":
            tokens.append(("OP", ch, i))
            i += 1
            continue
        raise ParseError("unexpected character %r at offset %d" % (ch, i))
    tokens.append(("END", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens, ring):
        self.tokens = tokens
        self.pos = 0
        self.ring = tuple(ring)

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op):
        kind, val, off = self.take()
        if kind != "OP" or val != op:
            raise ParseError("expected %r at offset %d" % (op, off))

    def parse_expr(self):
        kind, val, off = self.peek()
        sign = 1
        if kind == "OP" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.parse_term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val, off = self.peek()
            if kind == "OP" and val in "+-":
                self.take()
                t = self.parse_term()
                acc = acc - t if val == "-" else acc + t
            else:
                return acc

    def parse_term(self):
        acc = self.parse_factor()
        while True:
            kind, val, off = self.peek()
            if kind == "OP" and val == "*":
                self.take()
                acc = acc * self.parse_factor()
            else:
                return acc

    def parse_factor(self):
        base = self.parse_base()
        kind, val, off = self.peek()
        if kind == "OP" and val == "^":
            self.take()
            kind, val, off = self.take()
            if kind != "INT":
                raise ParseError("expected integer exponent at offset %d" % off)
            return base ** int(val)
        return base

    def parse_base(self):
        kind, val, off = self.take()
        if kind == "INT":
            num = int(val)
            kind2, val2, off2 = self.peek()
            if kind2 == "OP" and val2 == "/":
                self.take()
                kind3, val3, off3 = self.take()
                if kind3 != "INT":
                    raise ParseError("expected integer denominator at offset %d" % off3)
                if int(val3) == 0:
                    raise ParseError("zero denominator at offset %d" % off3)
                return MultiPoly.const(self.ring, Fraction(num, int(val3)))
            return MultiPoly.const(self.ring, num)
        if kind == "NAME":
            if val not in self.ring:
                raise ParseError("unknown variable %r at offset %d" % (val, off))
            return MultiPoly.var(self.ring, val)
        if kind == "OP" and val == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        raise ParseError("unexpected token %r at offset %d" % (val or kind, off))

    def expect_end(self):
        kind, val, off = self.peek()
        if kind != "END":
            raise ParseError("trailing input %r at offset %d" % (val, off))


def parse_poly(text, ring):
    """Parse canonical (or hand-written) polynomial text into a MultiPoly."""
    parser = _Parser(_tokenize(text), ring)
    p = parser.parse_expr()
    parser.expect_end()
    return p


# -- division, gcd, substitution ----------------------------------------


def exact_divide(a, b):
    """Return q with a = q*b, or raise ExactDivisionError.

    Single-divisor multivariate division in graded-lex order: because the
    order is graded, an exact quotient is found without ever shunting a
    term to a remainder, and any failure to cancel the leading term
    certifies that no exact quotient exists.
    """
    if not isinstance(b, MultiPoly):
        b = MultiPoly.const(a.ring, b)
    a._check_ring(b)
    if not b:
        raise ExactDivisionError("division by zero polynomial")
    if not a:
        return MultiPoly.zero(a.ring)
    lb_e, lb_c = b.leading()
    q = {}
    r = a
    while r:
        lr_e, lr_c = r.leading()
        diff = tuple(i - j for i, j in zip(lr_e, lb_e))
        if any(k < 0 for k in diff):
            raise ExactDivisionError("not exactly divisible")
        coeff = lr_c / lb_c
        q[diff] = q.get(diff, Fraction(0)) + coeff
        r = r - MultiPoly(a.ring, {diff: coeff}) * b
    return MultiPoly(a.ring, q)


def _dense_coeffs(p, name):
    n = p.degree_in(name)
    i = p.ring.index(name)
    out = [Fraction(0)] * (n + 1)
    for e, c in p.terms.items():
        out[e[i]] += c
    return out


def _dense_mod(fa, fb):
    # remainder of dense Fraction coefficient lists, fb nonzero
    fa = list(fa)
    db, lb = len(fb) - 1, fb[-1]
    while len(fa) - 1 >= db and any(fa):
        while fa and fa[-1] == 0:
            fa.pop()
        if len(fa) - 1 < db:
            break
        shift = len(fa) - 1 - db
        factor = fa[-1] / lb
        for k in range(db + 1):
            fa[shift + k] -= factor * fb[k]
        fa.pop()
    while fa and fa[-1] == 0:
        fa.pop()
    return fa


def univariate_gcd(a, b):
    """Monic gcd of two polynomials that involve (at most) one common
    variable.  gcd(p, 0) is the monic normalization of p; gcd(0, 0) = 0."""
    a._check_ring(b)
    used = a.variables() | b.variables()
    if len(used) > 1:
        raise ValueError("univariate_gcd needs univariate input, got variables %s"
                         % sorted(used))
    if not used:
        if not a and not b:
            return MultiPoly.zero(a.ring)
        return MultiPoly.const(a.ring, 1)
    name = used.pop()
    fa = _dense_coeffs(a, name) if a else []
    fb = _dense_coeffs(b, name) if b else []
    while fb:
        fa, fb = fb, _dense_mod(fa, fb)
    if not fa:
        return MultiPoly.zero(a.ring)
    lead = fa[-1]
    i = a.ring.index(name)
    out = {}
    for k, c in enumerate(fa):
        if c:
            e = [0] * len(a.ring)
            e[i] = k
            out[tuple(e)] = c / lead
    return MultiPoly(a.ring, out)


def substitute(p, bindings):
    """Substitute rational expressions num/den for variables and clear
    denominators.

    bindings maps variable name -> (num, den) with num, den MultiPoly in
    p's ring.  Returns (q, d) where d = prod den_v^(deg_v p) and
    q = d * p(substituted).  No common factor is cancelled from (q, d);
    callers that want a reduced presentation do their own stripping.
    """
    ring = p.ring
    for name, (num, den) in bindings.items():
        if name not in ring:
            raise ValueError("binding for unknown variable %r" % (name,))
        p._check_ring(num)
        p._check_ring(den)
        if not den:
            raise ZeroDivisionError("zero denominator binding for %r" % (name,))
    maxdeg = {name: max(p.degree_in(name), 0) for name in bindings}
    # cache powers of each num and den up to the degree actually used
    pow_num = {}
    pow_den = {}
    for name, (num, den) in bindings.items():
        m = maxdeg[name]
        pn = [MultiPoly.const(ring, 1)]
        pd = [MultiPoly.const(ring, 1)]
        for k in range(m):
            pn.append(pn[-1] * num)
            pd.append(pd[-1] * den)
        pow_num[name] = pn
        pow_den[name] = pd
    bound_idx = {ring.index(name): name for name in bindings}
    acc = MultiPoly.zero(ring)
    for e, c in p.terms.items():
        piece = MultiPoly.const(ring, c)
        rest = [0] * len(ring)
        for i, k in enumerate(e):
            if i in bound_idx:
                name = bound_idx[i]
                piece = piece * pow_num[name][k] * pow_den[name][maxdeg[name] - k]
            else:
                rest[i] = k
        if any(rest):
            piece = piece * MultiPoly(ring, {tuple(rest): Fraction(1)})
        acc = acc + piece
    d = MultiPoly.const(ring, 1)
    for name in sorted(bindings):
        d = d * pow_den[name][maxdeg[name]]
    return acc, d


def reduce_weierstrass(p, relations):
    """Rewrite powers y^k with k >= 2 using y^2 = rhs(x) for each
    (y_name, rhs) relation; the result has degree <= 1 in every listed y.

    rhs must not involve any of the listed y variables.
    """
    ynames = [name for name, _ in relations]
    for name, rhs in relations:
        p._check_ring(rhs)
        for other in ynames:
            if rhs.degree_in(other) > 0:
                raise ValueError("relation for %r involves reduced variable %r"
                                 % (name, other))
    for name, rhs in relations:
        yi = p.ring.index(name)
        if p.degree_in(name) <= 1:
            continue
        cache = {0: MultiPoly.const(p.ring, 1)}
        out = MultiPoly.zero(p.ring)
        for e, c in p.terms.items():
            k = e[yi]
            half, parity = divmod(k, 2)
            if half not in cache:
                cache[half] = rhs ** half
            base = list(e)
            base[yi] = parity
            out = out + MultiPoly(p.ring, {tuple(base): c}) * cache[half]
        p = out
    return p


def integer_primitive(p):
    """Write p = scale * q with q having coprime integer coefficients and
    positive graded-lex leading coefficient.  Returns (scale, q)."""
    if not p:
        return Fraction(1), p
    from math import gcd, lcm
    den = 1
    for c in p.terms.values():
        den = lcm(den, c.denominator)
    g = 0
    for c in p.terms.values():
        g = gcd(g, c.numerator * (den // c.denominator))
    scale = Fraction(g, den)
    _, lead_c = p.leading()
    if lead_c < 0:
        scale = -scale
    q = MultiPoly(p.ring, {e: c / scale for e, c in p.terms.items()})
    return scale, q
