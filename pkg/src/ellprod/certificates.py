"""Transversality-preservation certificates for diagonal pullbacks.

Each checker inspects purely numerical data — the multidegree table of
the subvariety and the integer multipliers of the diagonal isogeny (or a
list of primes / a single integer for the specialized criteria) — and
returns a certificate whose verdict is either "CertifiedTransverse" or
"Inconclusive".  Inconclusive never means "not transverse"; it only
means the sufficient condition tested here does not apply.

Transversality of the *input* subvariety is always an assumption, not
something these checks establish; every certificate restates the input
flag under hypotheses.transverse_input, and a certificate whose flag is
false certifies nothing.

The criteria:

  TheoremA            dim-1 input; every |p_j| prime and >= deg(C) * N * 3^(N-1)
  TheoremMain         for every j some position set J of size dim with j in J
                      and gcd(alpha_j^2, dim! * deg_{I_J}) = 1
  TheoremWeak         every prime dividing deg(phi) exceeds dim! * deg(V)
  CorollaryIdentity   [n] on every factor; integer mode: for every j some I
                      with i_j = 1 and gcd(n, dim! * deg_I) = 1; prime mode:
                      p does not divide dim! nor, for any j, all deg_I with
                      i_j = 1
  CorollaryCurves     dim-1 input; gcd(alpha_j^2, d_j) = 1 for every j

verify_certificate re-derives every claim of a certificate from the
echoed inputs using nothing but integer arithmetic, so a certificate can
be checked at a desk without trusting this module's checkers.
"""

from itertools import combinations
from math import factorial, gcd

from .products import SubvarietyPresentation

CERTIFIED = "CertifiedTransverse"
INCONCLUSIVE = "Inconclusive"


class TransversalityCertificate:
    def __init__(self, criterion, verdict, hypotheses, inputs, witness,
                 reasons=(), strategy=None):
        self.criterion = criterion
        self.verdict = verdict
        self.hypotheses = hypotheses
        self.inputs = inputs
        self.witness = witness
        self.reasons = list(reasons)
        self.strategy = strategy

    def certified(self):
        return self.verdict == CERTIFIED

    def to_dict(self):
        out = {
            "criterion": self.criterion,
            "verdict": self.verdict,
            "hypotheses": self.hypotheses,
            "inputs": self.inputs,
            "witness": self.witness,
        }
        if self.reasons:
            out["reasons"] = self.reasons
        if self.strategy is not None:
            out["strategy"] = self.strategy
        return out

    def __repr__(self):
        return "TransversalityCertificate(%s, %s)" % (self.criterion, self.verdict)


def _table_of(V):
    return V.degrees if isinstance(V, SubvarietyPresentation) else V


def _inputs_echo(V, extra):
    table = _table_of(V)
    echo = {
        "n_factors": table.n_factors,
        "dim": table.dim,
        "multidegrees": [{"I": list(I), "deg": table.get(I)}
                         for I in table.index_order()],
    }
    echo.update(extra)
    return echo


def _hypotheses(V):
    flag = V.transverse if isinstance(V, SubvarietyPresentation) else True
    return {"transverse_input": bool(flag)}, flag


def is_prime(n):
    """Deterministic trial-division primality on |n|."""
    n = abs(int(n))
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _check_arity(table, count, what):
    if count != table.n_factors:
        raise ValueError("%s has %d components, subvariety lives in %d factors"
                         % (what, count, table.n_factors))


def check_theorem_a(C, primes):
    """Prime multipliers all of absolute value >= deg(C) * N * 3^(N-1)."""
    table = _table_of(C)
    if table.dim != 1:
        raise ValueError("TheoremA applies to curves (dim 1), got dim %d" % table.dim)
    primes = [int(p) for p in primes]
    _check_arity(table, len(primes), "prime vector")
    hypotheses, flag = _hypotheses(C)
    n = table.n_factors
    threshold = table.total_degree() * n * 3 ** (n - 1)
    witness = []
    reasons = []
    if not flag:
        reasons.append("input subvariety is not flagged transverse")
    for j, p in enumerate(primes, start=1):
        prime_ok = is_prime(p)
        size_ok = abs(p) >= threshold
        witness.append({"j": j, "p": p, "is_prime": prime_ok,
                        "threshold": threshold, "satisfied": prime_ok and size_ok})
        if not prime_ok:
            reasons.append("component %d: %d is not prime" % (j, p))
        elif not size_ok:
            reasons.append("component %d: |%d| < threshold %d" % (j, p, threshold))
    verdict = CERTIFIED if not reasons else INCONCLUSIVE
    return TransversalityCertificate(
        "TheoremA", verdict, hypotheses,
        _inputs_echo(C, {"primes": primes}), witness, reasons)


def check_theorem_main(V, phi):
    """Per component j, a size-dim position set J containing j whose
    multidegree entry is coprime to alpha_j^2 after the dim! factor."""
    table = _table_of(V)
    _check_arity(table, phi.n_factors, "isogeny")
    hypotheses, flag = _hypotheses(V)
    n = table.n_factors
    bang = factorial(table.dim)
    witness = []
    reasons = []
    if not flag:
        reasons.append("input subvariety is not flagged transverse")
    for j in range(1, n + 1):
        deg_a = phi.alphas[j - 1] ** 2
        found = None
        for J in combinations(range(1, n + 1), table.dim):
            if j not in J:
                continue
            I = tuple(1 if k + 1 in J else 0 for k in range(n))
            d = table.get(I)
            if gcd(deg_a, bang * d) == 1:
                found = {"j": j, "J": list(J), "I": list(I), "deg_I": d,
                         "dim_factorial": bang, "deg_alpha_j": deg_a, "gcd": 1}
                break
        if found is None:
            reasons.append(
                "component %d: no position set J of size %d containing it has "
                "gcd(alpha_j^2 = %d, %d * deg_I) = 1" % (j, table.dim, deg_a, bang))
        else:
            witness.append(found)
    verdict = CERTIFIED if not reasons else INCONCLUSIVE
    return TransversalityCertificate(
        "TheoremMain", verdict, hypotheses,
        _inputs_echo(V, {"alphas": list(phi.alphas)}), witness, reasons)


def check_theorem_weak(V, phi):
    """Every prime dividing deg(phi) exceeds dim! * deg(V)."""
    table = _table_of(V)
    _check_arity(table, phi.n_factors, "isogeny")
    hypotheses, flag = _hypotheses(V)
    bound = factorial(table.dim) * table.total_degree()
    primes = phi.factor_degree_primes()
    witness = {"degree_primes": primes, "bound": bound,
               "comparisons": [{"p": p, "satisfied": p > bound} for p in primes]}
    reasons = []
    if not flag:
        reasons.append("input subvariety is not flagged transverse")
    for p in primes:
        if p <= bound:
            reasons.append("prime %d dividing deg(phi) is <= bound %d" % (p, bound))
    verdict = CERTIFIED if not reasons else INCONCLUSIVE
    return TransversalityCertificate(
        "TheoremWeak", verdict, hypotheses,
        _inputs_echo(V, {"alphas": list(phi.alphas)}), witness, reasons)


def check_corollary_identity(V, n=None, p=None):
    """Multiplication by the same integer on every factor.

    Integer mode (n): per component j an index I with i_j = 1 and
    gcd(n, dim! * deg_I) = 1.  Prime mode (p): p prime, not dividing
    dim!, and for no j dividing every deg_I with i_j = 1.
    """
    if (n is None) == (p is None):
        raise ValueError("give exactly one of n (integer mode) or p (prime mode)")
    table = _table_of(V)
    hypotheses, flag = _hypotheses(V)
    nf = table.n_factors
    bang = factorial(table.dim)
    reasons = []
    if not flag:
        reasons.append("input subvariety is not flagged transverse")
    if n is not None:
        n = int(n)
        if n == 0:
            raise ValueError("multiplication by 0 is not an isogeny")
        witness = []
        for j in range(1, nf + 1):
            found = None
            for I in table.index_order():
                if I[j - 1] != 1:
                    continue
                d = table.get(I)
                if gcd(n, bang * d) == 1:
                    found = {"j": j, "I": list(I), "deg_I": d,
                             "dim_factorial": bang, "gcd": 1}
                    break
            if found is None:
                reasons.append("component %d: no index I with i_j = 1 and "
                               "gcd(%d, %d * deg_I) = 1" % (j, n, bang))
            else:
                witness.append(found)
        verdict = CERTIFIED if not reasons else INCONCLUSIVE
        return TransversalityCertificate(
            "CorollaryIdentity", verdict, hypotheses,
            _inputs_echo(V, {"mode": "integer", "n": n}), witness, reasons)
    p = int(p)
    if not is_prime(p):
        raise ValueError("prime mode needs a prime, got %d" % p)
    rows = []
    if bang % abs(p) == 0:
        reasons.append("p = %d divides dim! = %d" % (p, bang))
    for j in range(1, nf + 1):
        degs = [table.get(I) for I in table.index_order() if I[j - 1] == 1]
        g = 0
        for d in degs:
            g = gcd(g, d)
        divides = (g % abs(p) == 0)  # p | gcd, noting gcd 0 means all entries 0
        rows.append({"j": j, "gcd_of_degrees": g, "p_divides": divides})
        if divides:
            reasons.append("component %d: p = %d divides every deg_I with i_j = 1"
                           % (j, p))
    verdict = CERTIFIED if not reasons else INCONCLUSIVE
    return TransversalityCertificate(
        "CorollaryIdentity", verdict, hypotheses,
        _inputs_echo(V, {"mode": "prime", "p": p}),
        {"dim_factorial": bang, "components": rows}, reasons)


def check_corollary_curves(C, phi):
    """Curves: gcd(alpha_j^2, d_j) = 1 for every component j."""
    table = _table_of(C)
    if table.dim != 1:
        raise ValueError("CorollaryCurves applies to curves (dim 1), got dim %d"
                         % table.dim)
    _check_arity(table, phi.n_factors, "isogeny")
    hypotheses, flag = _hypotheses(C)
    n = table.n_factors
    witness = []
    reasons = []
    if not flag:
        reasons.append("input subvariety is not flagged transverse")
    for j in range(1, n + 1):
        I = tuple(1 if k == j - 1 else 0 for k in range(n))
        d_j = table.get(I)
        deg_a = phi.alphas[j - 1] ** 2
        g = gcd(deg_a, d_j)
        witness.append({"j": j, "d_j": d_j, "deg_alpha": deg_a, "gcd": g})
        if g != 1:
            reasons.append("component %d: gcd(alpha_j^2 = %d, d_j = %d) = %d != 1"
                           % (j, deg_a, d_j, g))
    verdict = CERTIFIED if not reasons else INCONCLUSIVE
    return TransversalityCertificate(
        "CorollaryCurves", verdict, hypotheses,
        _inputs_echo(C, {"alphas": list(phi.alphas)}), witness, reasons)


AUTO_ORDER = ("CorollaryCurves", "TheoremMain", "TheoremWeak", "TheoremA")


def certify_auto(V, phi):
    """Try the criteria in the fixed order CorollaryCurves (curves only),
    TheoremMain, TheoremWeak, TheoremA with the multipliers as the prime
    vector (curves only); return the first certifying certificate, or the
    last attempt with every attempt's reasons if none certifies."""
    table = _table_of(V)
    attempts = []
    cert = None
    for name in AUTO_ORDER:
        if name in ("CorollaryCurves", "TheoremA") and table.dim != 1:
            continue
        if name == "CorollaryCurves":
            cert = check_corollary_curves(V, phi)
        elif name == "TheoremMain":
            cert = check_theorem_main(V, phi)
        elif name == "TheoremWeak":
            cert = check_theorem_weak(V, phi)
        else:
            cert = check_theorem_a(V, list(phi.alphas))
        attempts.append({"criterion": name, "verdict": cert.verdict,
                         "reasons": cert.reasons})
        if cert.certified():
            break
    cert.strategy = {"order": [a["criterion"] for a in attempts],
                     "attempts": attempts}
    return cert


# -- independent verification --------------------------------------------


def _read_table(inputs):
    dim = int(inputs["dim"])
    nf = int(inputs["n_factors"])
    entries = {}
    for row in inputs["multidegrees"]:
        I = tuple(int(i) for i in row["I"])
        if len(I) != nf or any(i not in (0, 1) for i in I) or sum(I) != dim:
            raise ValueError("bad multidegree index %r" % (I,))
        if I in entries:
            raise ValueError("duplicate multidegree index %r" % (I,))
        entries[I] = int(row["deg"])
    if len(entries) != len(list(combinations(range(nf), dim))):
        raise ValueError("incomplete multidegree table")
    return nf, dim, entries


def verify_certificate(cert):
    """Re-derive a certificate's claim from its echoed inputs.

    Accepts the dict form (TransversalityCertificate.to_dict or parsed
    JSON).  Returns (ok, problems).  Uses only integer arithmetic —
    primality by trial division, gcds, factorials — independently of the
    checkers above.  An Inconclusive certificate asserts nothing and is
    accepted as long as it is well-formed.
    """
    if isinstance(cert, TransversalityCertificate):
        cert = cert.to_dict()
    problems = []
    try:
        criterion = cert["criterion"]
        verdict = cert["verdict"]
        hypotheses = cert["hypotheses"]
        inputs = cert["inputs"]
        witness = cert["witness"]
        nf, dim, entries = _read_table(inputs)
    except (KeyError, TypeError, ValueError) as exc:
        return False, ["malformed certificate: %s" % exc]
    if verdict not in (CERTIFIED, INCONCLUSIVE):
        return False, ["unknown verdict %r" % verdict]
    if verdict == INCONCLUSIVE:
        return True, []
    if hypotheses.get("transverse_input") is not True:
        return False, ["certified verdict without the transversality hypothesis"]
    bang = factorial(dim)
    total = bang * sum(entries.values())

    def fail(msg):
        problems.append(msg)

    if criterion == "TheoremA":
        if dim != 1:
            fail("TheoremA needs dim 1, certificate has dim %d" % dim)
        primes = [int(p) for p in inputs["primes"]]
        threshold = total * nf * 3 ** (nf - 1)
        if len(primes) != nf:
            fail("prime vector length %d != %d factors" % (len(primes), nf))
        seen = set()
        for row in witness:
            j = int(row["j"])
            seen.add(j)
            p = int(row["p"])
            if not 1 <= j <= nf or p != primes[j - 1]:
                fail("witness row for j=%d does not match inputs" % j)
                continue
            if not is_prime(p):
                fail("component %d: %d is not prime" % (j, p))
            if abs(p) < threshold:
                fail("component %d: |%d| < threshold %d" % (j, p, threshold))
            if int(row.get("threshold", threshold)) != threshold:
                fail("component %d: echoed threshold disagrees (%s != %d)"
                     % (j, row.get("threshold"), threshold))
        if seen != set(range(1, nf + 1)):
            fail("witness does not cover every component exactly once")
    elif criterion == "TheoremMain":
        alphas = [int(a) for a in inputs["alphas"]]
        if len(alphas) != nf:
            fail("alpha vector length %d != %d factors" % (len(alphas), nf))
        seen = set()
        for row in witness:
            j = int(row["j"])
            seen.add(j)
            J = [int(k) for k in row["J"]]
            I = tuple(int(i) for i in row["I"])
            if len(J) != dim or j not in J:
                fail("component %d: J=%r is not a size-%d set containing j"
                     % (j, J, dim))
                continue
            if I != tuple(1 if k + 1 in J else 0 for k in range(nf)):
                fail("component %d: I does not match J" % j)
                continue
            if I not in entries or int(row["deg_I"]) != entries[I]:
                fail("component %d: deg_I does not match the table" % j)
                continue
            if gcd(alphas[j - 1] ** 2, bang * entries[I]) != 1:
                fail("component %d: gcd(alpha_j^2, dim! * deg_I) != 1" % j)
        if seen != set(range(1, nf + 1)):
            fail("witness does not cover every component exactly once")
    elif criterion == "TheoremWeak":
        alphas = [int(a) for a in inputs["alphas"]]
        if len(alphas) != nf:
            fail("alpha vector length %d != %d factors" % (len(alphas), nf))
        primes = set()
        for a in alphas:
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
        for p in sorted(primes):
            if p <= bang * total:
                fail("prime %d dividing deg(phi) is <= dim! * deg(V) = %d"
                     % (p, bang * total))
        echoed = [int(p) for p in witness.get("degree_primes", [])]
        if echoed != sorted(primes):
            fail("echoed degree_primes %r != recomputed %r"
                 % (echoed, sorted(primes)))
    elif criterion == "CorollaryIdentity":
        mode = inputs["mode"]
        if mode == "integer":
            n = int(inputs["n"])
            seen = set()
            for row in witness:
                j = int(row["j"])
                seen.add(j)
                I = tuple(int(i) for i in row["I"])
                if not 1 <= j <= nf or I not in entries or I[j - 1] != 1:
                    fail("component %d: bad index %r" % (j, I))
                    continue
                if int(row["deg_I"]) != entries[I]:
                    fail("component %d: deg_I does not match the table" % j)
                    continue
                if gcd(n, bang * entries[I]) != 1:
                    fail("component %d: gcd(n, dim! * deg_I) != 1" % j)
            if seen != set(range(1, nf + 1)):
                fail("witness does not cover every component exactly once")
        elif mode == "prime":
            p = int(inputs["p"])
            if not is_prime(p):
                fail("p = %d is not prime" % p)
            if bang % abs(p) == 0:
                fail("p divides dim!")
            for j in range(1, nf + 1):
                g = 0
                for I, d in entries.items():
                    if I[j - 1] == 1:
                        g = gcd(g, d)
                if g % abs(p) == 0:
                    fail("component %d: p divides every deg_I with i_j = 1" % j)
        else:
            fail("unknown CorollaryIdentity mode %r" % mode)
    elif criterion == "CorollaryCurves":
        if dim != 1:
            fail("CorollaryCurves needs dim 1, certificate has dim %d" % dim)
        alphas = [int(a) for a in inputs["alphas"]]
        if len(alphas) != nf:
            fail("alpha vector length %d != %d factors" % (len(alphas), nf))
        seen = set()
        for row in witness:
            j = int(row["j"])
            seen.add(j)
            if not 1 <= j <= nf:
                fail("witness names component %d outside 1..%d" % (j, nf))
                continue
            I = tuple(1 if k == j - 1 else 0 for k in range(nf))
            d_j = entries[I]
            if int(row["d_j"]) != d_j:
                fail("component %d: echoed d_j %s != table %d"
                     % (j, row["d_j"], d_j))
            if int(row["deg_alpha"]) != alphas[j - 1] ** 2:
                fail("component %d: echoed deg_alpha disagrees" % j)
            if gcd(alphas[j - 1] ** 2, d_j) != 1:
                fail("component %d: gcd(alpha_j^2, d_j) != 1" % j)
        if seen != set(range(1, nf + 1)):
            fail("witness does not cover every component exactly once")
    else:
        fail("unknown criterion %r" % criterion)
    return (not problems), problems
