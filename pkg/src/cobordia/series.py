"""Truncated multivariate series over a coefficient ring: the formal group
algebra on the character lattice.

A TruncSeries is a sparse exponent-to-coefficient map together with its own
valid precision.  Binary operations take the minimum precision (improved by
the orders of the operands), division subtracts the divisor's order.  Silent
precision loss is the dominant bug class here, so the bookkeeping is explicit
and pushforwards demand headroom up front.
"""

from __future__ import annotations

from .coeffs import GradedCoefficient, n_series
from .errors import CobordiaError, NotDivisible, PrecisionExhausted

INF = 10 ** 9


def _unit_exp(rank, i, k=1):
    e = [0] * rank
    e[i] = k
    return tuple(e)


class SeriesRing:
    """Handle for truncated series: coefficient ring, formal group law,
    number of variables and working precision.  When built from a root
    datum the variables are attached to the chosen lattice basis."""

    def __init__(self, coeff_ring, fgl, rank, precision, rootdatum=None):
        if precision < 1:
            raise CobordiaError("precision must be >= 1")
        self.coeffs = coeff_ring
        self.fgl = fgl
        self.rank = rank
        self.precision = precision
        self.rootdatum = rootdatum
        self._x_cache = {}
        self._weyl_var_cache = {}
        self._div_cache = {}

    def zero(self, prec=None):
        return TruncSeries(self, {}, self.precision if prec is None else prec)

    def one(self, prec=None):
        return TruncSeries(self, {(0,) * self.rank: self.coeffs.one().poly},
                           self.precision if prec is None else prec)

    def constant(self, coef: GradedCoefficient, prec=None):
        t = {} if coef.is_zero() else {(0,) * self.rank: coef.poly}
        return TruncSeries(self, t, self.precision if prec is None else prec)

    def variable(self, i):
        return TruncSeries(self, {_unit_exp(self.rank, i): self.coeffs.one().poly},
                           self.precision)

    def from_terms(self, items, prec=None):
        terms = {}
        for e, c in items:
            if isinstance(c, GradedCoefficient):
                c = c.poly
            if c:
                terms[tuple(e)] = c
        return TruncSeries(self, terms, self.precision if prec is None else prec)

    # -- generators attached to weights ------------------------------------

    def x_of_weight(self, lam):
        """The series of the line-bundle class of a lattice weight: write
        lam over the lattice basis and fold the coordinates with the formal
        group law.  Result has zero constant term."""
        lam = tuple(lam)
        if len(lam) != self.rank:
            raise CobordiaError("weight has wrong rank")
        if lam in self._x_cache:
            return self._x_cache[lam]
        out = self.zero()
        for i, c in enumerate(lam):
            if c == 0:
                continue
            uni = n_series(self.fgl, c, self.precision)
            term = self.from_terms(
                (_unit_exp(self.rank, i, k), uni[k]) for k in range(1, len(uni)))
            out = fgl_sum(out, term) if not out.is_zero() else term
        self._x_cache[lam] = out
        return out

    # -- weyl action --------------------------------------------------------

    def _weyl_var_powers(self, weyl, e, i):
        key = (weyl.word_choice, e, i)
        cache = self._weyl_var_cache.get(key)
        if cache is None:
            img = self.x_of_weight(weyl.act_lat(e, _unit_exp(self.rank, i)))
            cache = {1: img}
            self._weyl_var_cache[key] = cache
        return cache

    def weyl_substitute(self, weyl, e, u: "TruncSeries"):
        """Ring endomorphism sending each variable to the series of its
        image weight; a left action of the Weyl group."""
        if u.ring is not self:
            raise CobordiaError("series ring mismatch")
        prec = min(u.prec, self.precision)
        out = self.zero(prec)
        for exp, c in u.terms.items():
            piece = None
            for i, k in enumerate(exp):
                if k == 0:
                    continue
                cache = self._weyl_var_powers(weyl, e, i)
                top = max(cache)
                while top < k:
                    cache[top + 1] = cache[top].mul(cache[1], cap=prec)
                    top += 1
                piece = cache[k] if piece is None else piece.mul(cache[k], cap=prec)
            if piece is None:
                out = out.add(self.constant(GradedCoefficient(self.coeffs, c), prec))
            else:
                out = out.add(piece.scale_poly(c))
        return out


class TruncSeries:
    __slots__ = ("ring", "terms", "prec")

    def __init__(self, ring, terms, prec):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c and sum(e) <= prec}
        self.prec = prec

    # -- basics ---------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def order(self):
        return min((sum(e) for e in self.terms), default=INF)

    def copy_with_prec(self, prec):
        return TruncSeries(self.ring, self.terms, min(prec, self.prec) if prec else self.prec)

    def coefficient(self, exp) -> GradedCoefficient:
        return GradedCoefficient(self.ring.coeffs, self.terms.get(tuple(exp), {}))

    def constant_term(self) -> GradedCoefficient:
        if self.prec < 0:
            raise PrecisionExhausted("no valid constant term left")
        return self.coefficient((0,) * self.ring.rank)

    def homogeneous_part(self, k):
        return TruncSeries(self.ring, {e: c for e, c in self.terms.items() if sum(e) == k},
                           self.prec)

    def truncate(self, prec):
        return TruncSeries(self.ring, self.terms, min(self.prec, prec))

    def add(self, other):
        self._check(other)
        r = self.ring.coeffs
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = r.poly_add(out.get(e, {}), c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return TruncSeries(self.ring, out, min(self.prec, other.prec))

    def neg(self):
        r = self.ring.coeffs
        return TruncSeries(self.ring, {e: r.poly_neg(c) for e, c in self.terms.items()}, self.prec)

    def sub(self, other):
        return self.add(other.neg())

    def scale_int(self, n):
        if n == 0:
            return TruncSeries(self.ring, {}, self.prec)
        r = self.ring.coeffs
        out = {}
        for e, c in self.terms.items():
            p = r.poly_scale(c, n)
            if p:
                out[e] = p
        return TruncSeries(self.ring, out, self.prec)

    def scale_poly(self, poly):
        r = self.ring.coeffs
        out = {}
        for e, c in self.terms.items():
            p = r.poly_mul(c, poly)
            if p:
                out[e] = p
        return TruncSeries(self.ring, out, self.prec)

    def scale(self, coef: GradedCoefficient):
        return self.scale_poly(coef.poly)

    def mul(self, other, cap=None):
        self._check(other)
        oa, ob = self.order(), other.order()
        # the product of something known mod I^(p+1) with something of order o
        # is known mod I^(p+o+1)
        pa = self.prec + ob if ob < INF else INF
        pb = other.prec + oa if oa < INF else INF
        prec = min(pa, pb, self.ring.precision)
        if cap is not None:
            prec = min(prec, cap)
        r = self.ring.coeffs
        out = {}
        for ea, ca in self.terms.items():
            da = sum(ea)
            if da + ob > prec:
                continue
            for eb, cb in other.terms.items():
                if da + sum(eb) > prec:
                    continue
                e = tuple(x + y for x, y in zip(ea, eb))
                p = r.poly_mul(ca, cb)
                if p:
                    s = r.poly_add(out.get(e, {}), p)
                    if s:
                        out[e] = s
                    else:
                        out.pop(e, None)
        return TruncSeries(self.ring, out, prec)

    def equal_up_to(self, other, k):
        diff = self.sub(other)
        return all(sum(e) > k for e in diff.terms)

    def _check(self, other):
        if other.ring is not self.ring:
            raise CobordiaError("series ring mismatch")

    def __repr__(self):
        r = self.ring.coeffs
        if not self.terms:
            return "0 (prec %s)" % self.prec
        bits = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e))[:8]:
            mono = "*".join("x%d%s" % (i + 1, "^%d" % k if k > 1 else "")
                            for i, k in enumerate(e) if k)
            c = r.format_poly(self.terms[e])
            bits.append("(%s)%s" % (c, "*" + mono if mono else ""))
        more = " + ..." if len(self.terms) > 8 else ""
        return " + ".join(bits) + more + " (prec %s)" % self.prec


# ---------------------------------------------------------------------------
# formal group law operations on series


def fgl_sum(u: TruncSeries, v: TruncSeries) -> TruncSeries:
    """F(u, v) for series with zero constant term."""
    ring = u.ring
    if not u.constant_term().is_zero() or not v.constant_term().is_zero():
        raise CobordiaError("formal sum needs zero constant terms")
    if u.is_zero():
        return v
    if v.is_zero():
        return u
    prec = min(u.prec, v.prec)
    out = u.add(v)
    upow = {1: u}
    vpow = {1: v}

    def power(cache, k):
        top = max(cache)
        while top < k:
            cache[top + 1] = cache[top].mul(cache[1], cap=prec)
            top += 1
        return cache[k]

    ou, ov = u.order(), v.order()
    for (i, j) in u.ring.fgl.all_positions():
        if i * ou + j * ov > prec:
            continue
        a = ring.fgl.get(i, j)
        if a.is_zero():
            continue
        term = power(upow, i).mul(power(vpow, j), cap=prec)
        out = out.add(term.scale(a))
    return out.truncate(prec)


def formal_negative(ringS: SeriesRing, u: TruncSeries) -> TruncSeries:
    """The series v with F(u, v) = 0; solved degree by degree."""
    if not u.constant_term().is_zero():
        raise CobordiaError("formal negative needs zero constant term")
    prec = u.prec
    v = u.neg()
    while True:
        err = fgl_sum(u, v)
        if err.is_zero() or err.order() > prec:
            return v
        k = err.order()
        v = v.add(err.homogeneous_part(k).neg())


def kappa_series(ringS: SeriesRing, y: TruncSeries, iota: TruncSeries, cap=None) -> TruncSeries:
    """The fiber-correction series 1/y + 1/iota = -sum a_ij y^(i-1) iota^(j-1),
    finite because y + iota = -(y * iota) * (that sum)."""
    prec = min(y.prec, iota.prec)
    if cap is not None:
        prec = min(prec, cap)
    out = ringS.zero(prec)
    ypow = {0: ringS.one(prec), 1: y}
    ipow = {0: ringS.one(prec), 1: iota}

    def power(cache, base, k):
        top = max(cache)
        while top < k:
            cache[top + 1] = cache[top].mul(base, cap=prec)
            top += 1
        return cache[k]

    oy = max(y.order(), 1)
    for (i, j) in ringS.fgl.all_positions():
        if (i - 1) * oy + (j - 1) * oy > prec:
            continue
        a = ringS.fgl.get(i, j)
        if a.is_zero():
            continue
        term = power(ypow, y, i - 1).mul(power(ipow, iota, j - 1), cap=prec)
        out = out.add(term.scale(a).neg())
    return out


# ---------------------------------------------------------------------------
# exact division


def _int_poly_mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _linear_substitute(series: TruncSeries, mat):
    """Substitute x_i -> sum_j mat[i][j] y_j (mat integer, unimodular)."""
    ring = series.ring
    rank = ring.rank
    prec = series.prec
    lin = [{_unit_exp(rank, j): mat[i][j] for j in range(rank) if mat[i][j]}
           for i in range(rank)]
    pow_cache = [{0: {(0,) * rank: 1}} for _ in range(rank)]

    def power(i, k):
        cache = pow_cache[i]
        top = max(cache)
        while top < k:
            cache[top + 1] = _int_poly_mul(cache[top], lin[i])
            top += 1
        return cache[k]

    r = ring.coeffs
    out = {}
    for exp, c in series.terms.items():
        mono = {(0,) * rank: 1}
        for i, k in enumerate(exp):
            if k:
                mono = _int_poly_mul(mono, power(i, k))
        for e, n in mono.items():
            p = r.poly_scale(c, n)
            if p:
                s = r.poly_add(out.get(e, {}), p)
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
    return TruncSeries(ring, out, prec)


def _unimodular_for(linear_coeffs):
    """Forward and backward substitution matrices turning the linear form
    c . x into g * y_1, where g = gcd(c).

    With u the unimodular HNF transform of the column c/g (so u * (c/g) is
    the first standard basis vector), the substitution x -> u^T y does it.
    """
    from math import gcd
    from .lattice import _hnf_rows

    c = list(linear_coeffs)
    g = 0
    for x in c:
        g = gcd(g, x)
    p = [x // g for x in c]
    n = len(c)
    _, u = _hnf_rows([[x] for x in p])
    fwd = [[u[j][i] for j in range(n)] for i in range(n)]
    back = _unimodular_inverse(fwd)
    return g, fwd, back


def _unimodular_inverse(rows):
    n = len(rows)
    from fractions import Fraction
    a = [[Fraction(rows[i][j]) for j in range(n)] + [Fraction(1 if j == i else 0) for j in range(n)]
         for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        a[c] = [x / a[c][c] for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    out = [[a[i][n + j] for j in range(n)] for i in range(n)]
    if any(x.denominator != 1 for row in out for x in row):
        raise CobordiaError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]


def exact_divide(u: TruncSeries, d: TruncSeries, guard=None) -> TruncSeries:
    """Exact division by a series whose lowest part is a nonzero linear form.

    Returns q with q * d == u modulo the tracked precision; raises
    NotDivisible otherwise.  The quotient's precision drops by the divisor's
    order (one).
    """
    ring = u.ring
    if d.is_zero() or d.order() != 1:
        raise CobordiaError("divisor must have a linear lowest term")
    rank = ring.rank
    low = d.homogeneous_part(1)
    coeffs = [0] * rank
    for e, c in low.terms.items():
        i = next(k for k, x in enumerate(e) if x)
        cc = dict(c)
        val = cc.pop((0,) * len(ring.coeffs.gens), 0)
        if cc or not isinstance(val, int):
            raise CobordiaError("linear term has non-integer coefficients")
        coeffs[i] = val
    prec_out = u.prec - 1
    if guard is not None:
        prec_out = min(prec_out, guard)
    if prec_out < 0:
        raise PrecisionExhausted("division would exhaust precision")

    pivot = next((i for i, c in enumerate(coeffs) if c != 0), None)
    if all(c == 0 for i, c in enumerate(coeffs) if i != pivot):
        return _divide_monomial_lowest(u, d, pivot, coeffs[pivot], prec_out)
    g, fwd, back = _divide_setup(ring, tuple(coeffs))
    tu = _linear_substitute(u, fwd)
    td = _linear_substitute(d, fwd)
    tq = _divide_monomial_lowest(tu, td, 0, g, prec_out)
    return _linear_substitute(tq, back).truncate(prec_out)


def _divide_setup(ring, coeffs):
    cached = ring._div_cache.get(coeffs)
    if cached is None:
        cached = _unimodular_for(coeffs)
        ring._div_cache[coeffs] = cached
    return cached


def _divide_monomial_lowest(u, d, pivot, lead, prec_out):
    """Divide when the divisor's linear part is lead * x_pivot."""
    ring = u.ring
    q = ring.zero(prec_out)
    rem = u.truncate(prec_out + 1)
    d = d.truncate(prec_out + 1)
    guard_exp = prec_out + 1
    while not rem.is_zero():
        k = rem.order()
        if k > prec_out + 1 or k - 1 > prec_out:
            break
        part = rem.homogeneous_part(k)
        cand_terms = {}
        r = ring.coeffs
        for e, c in part.terms.items():
            if e[pivot] == 0:
                raise NotDivisible("term %r lacks the pivot variable" % (e,))
            e2 = list(e)
            e2[pivot] -= 1
            cand_terms[tuple(e2)] = c
        cand = TruncSeries(ring, cand_terms, prec_out)
        try:
            cand = _series_div_int(cand, lead)
        except NotDivisible:
            raise NotDivisible("leading coefficient not divisible by %d" % lead)
        q = q.add(cand)
        rem = rem.sub(cand.mul(d, cap=guard_exp))
        rem = TruncSeries(ring, {e: c for e, c in rem.terms.items() if sum(e) <= guard_exp},
                          rem.prec)
    return q.truncate(prec_out)


def _series_div_int(s: TruncSeries, n: int) -> TruncSeries:
    out = {}
    for e, c in s.terms.items():
        out[e] = GradedCoefficient(s.ring.coeffs, c).exact_div_int(n).poly
    return TruncSeries(s.ring, out, s.prec)


def divide_by_product(u: TruncSeries, factors) -> TruncSeries:
    """Divide by a product of weight series, one linear-lowest factor at a
    time."""
    out = u
    for f in factors:
        out = exact_divide(out, f)
    return out


# ---------------------------------------------------------------------------
# law verification


def check_fgl(coeff_ring, fgl, precision):
    """Unit, commutativity and associativity of a law, checked by symbolic
    expansion in three variables up to the given total degree."""
    ring = SeriesRing(coeff_ring, fgl, 3, precision)
    x, y, z = (ring.variable(i) for i in range(3))
    report = {"precision": precision}
    xy = fgl_sum(x, y)
    report["unit"] = fgl_sum(x, ring.zero()).sub(x).is_zero()
    report["commutative"] = xy.sub(fgl_sum(y, x)).is_zero()
    lhs = fgl_sum(xy, z)
    rhs = fgl_sum(x, fgl_sum(y, z))
    diff = lhs.sub(rhs)
    report["associative"] = diff.is_zero()
    if not diff.is_zero():
        report["first_failure_degree"] = diff.order()
    report["ok"] = report["unit"] and report["commutative"] and report["associative"]
    return report
