"""The computational model of h(G/B).

Classes are Weyl-indexed tuples of truncated series (restrictions to the
torus fixed points).  The basis classes are built from the class of a point
by rank-one push-pull operators along simple roots; expansions in the basis
are computed by a Bruhat-triangular solve on restrictions, with the
coefficient-ring value extracted as the constant term.  The pushforward to
the point is a single exact division after summing over the common
denominator, which is why the working precision carries 2N of headroom.

Operator sign conventions are not asserted a priori: the chosen variant must
satisfy pi(point) = 1, duality of the two bases, and agreement of the
additive specialization with the independent divisor-rule oracle;
`convention_report` exercises exactly these pins.
"""

from __future__ import annotations

from .coeffs import CoeffRing, CoeffRingSpec, GradedCoefficient, fgl_table_for, specialize
from .errors import (
    CobordiaError,
    GramNotUnimodular,
    NotDivisible,
    NotInSpan,
    PrecisionExhausted,
)
from .series import SeriesRing, TruncSeries, exact_divide, kappa_series


class GKMClass:
    """A cohomology class as a map from Weyl elements to restriction series.

    Absent entries are zero.  Engine-built classes satisfy the divisibility
    compatibilities along the moment-graph edges; the expansion solve fails
    loudly on anything else.
    """

    __slots__ = ("theory", "res", "degree")

    def __init__(self, theory, res, degree=None):
        self.theory = theory
        self.res = {w: s for w, s in res.items() if not s.is_zero()}
        self.degree = degree

    def restriction(self, w) -> TruncSeries:
        s = self.res.get(w)
        return s if s is not None else self.theory.S.zero()

    def support(self):
        return sorted(self.res)

    def prec(self):
        return min((s.prec for s in self.res.values()), default=self.theory.precision)

    def add(self, other):
        self._check(other)
        out = dict(self.res)
        for w, s in other.res.items():
            out[w] = out[w].add(s) if w in out else s
        deg = self.degree if self.degree == other.degree else None
        return GKMClass(self.theory, out, deg)

    def sub(self, other):
        return self.add(other.neg())

    def neg(self):
        return GKMClass(self.theory, {w: s.neg() for w, s in self.res.items()}, self.degree)

    def scale(self, coef: GradedCoefficient):
        deg = None
        if self.degree is not None and coef.degree is not None:
            deg = self.degree + coef.degree
        return GKMClass(self.theory, {w: s.scale(coef) for w, s in self.res.items()}, deg)

    def scale_int(self, n):
        return GKMClass(self.theory, {w: s.scale_int(n) for w, s in self.res.items()}, self.degree)

    def mul(self, other, cap=None):
        self._check(other)
        out = {}
        for w, s in self.res.items():
            t = other.res.get(w)
            if t is not None:
                out[w] = s.mul(t, cap=cap)
        deg = None
        if self.degree is not None and other.degree is not None:
            deg = self.degree + other.degree
        return GKMClass(self.theory, out, deg)

    def is_zero(self):
        return not self.res

    def equal(self, other):
        return self.sub(other).is_zero()

    def _check(self, other):
        if other.theory is not self.theory:
            raise CobordiaError("theory mismatch")

    def __repr__(self):
        return "GKMClass(deg=%s, support=%s)" % (self.degree, self.support())


THEORY_KINDS = {
    "additive": dict(kind="additive"),
    "multiplicative": dict(kind="multiplicative"),
    "universal": dict(kind="universal"),
    "k0": dict(kind="multiplicative", beta_one=True),
}


class Theory:
    """h(G/B) for one root datum, coefficient ring and working precision."""

    def __init__(self, rootdatum, coeffs="universal", precision=None, trunc=None,
                 word_choice="min", variant="standard", fold="left", modulus=None):
        self.rd = rootdatum
        self.weyl = rootdatum.weyl(word_choice)
        self.word_choice = word_choice
        self.variant = variant
        if fold != "left":
            # the other chain order is the same basis for the reversed words,
            # so it is a word choice, not an operator option
            raise CobordiaError("only the left fold is supported; vary word_choice instead")
        self.fold = fold
        N = rootdatum.N
        if isinstance(coeffs, CoeffRing):
            self.coeffs = coeffs
        else:
            if isinstance(coeffs, str):
                if coeffs not in THEORY_KINDS:
                    raise CobordiaError("unknown theory %r" % (coeffs,))
                kw = dict(THEORY_KINDS[coeffs])
                spec = CoeffRingSpec(kw.pop("kind"), trunc if trunc is not None else N,
                                     modulus=modulus, **kw)
            elif isinstance(coeffs, CoeffRingSpec):
                spec = coeffs
            else:
                raise CobordiaError("bad coefficient specification")
            self.coeffs = CoeffRing(spec)
        self.name = getattr(self.coeffs.spec, "kind", "?")
        self.fgl = fgl_table_for(self.coeffs)
        self.precision = precision if precision is not None else 3 * N
        if self.precision < N + 1:
            raise CobordiaError("precision below the dimension is unusable")
        self.S = SeriesRing(self.coeffs, self.fgl, rootdatum.rank, self.precision,
                            rootdatum=rootdatum)
        self.N = N
        self._zeta = {}
        self._tops = {}
        self._cofactor = {}
        self._denominator_low = None
        self._gram = None
        self._dual = None
        self._table = {}
        self._kappa = {}
        self._root_series = {}

    # -- basic series helpers ------------------------------------------------

    def x_root(self, lam):
        lam = tuple(lam)
        s = self._root_series.get(lam)
        if s is None:
            s = self.S.x_of_weight(lam)
            self._root_series[lam] = s
        return s

    def _act_root(self, w, i):
        return self.weyl.act_lat(w, self.rd.simple_roots_lat[i])

    # -- constructors ----------------------------------------------------------

    def point_class(self) -> GKMClass:
        prod = self.S.one()
        for beta in self.rd.pos_roots_lat:
            prod = prod.mul(self.x_root(tuple(-b for b in beta)))
        return GKMClass(self, {0: prod}, degree=self.N)

    def push_pull(self, i, f: GKMClass) -> GKMClass:
        """Rank-one push-pull along the i-th simple root."""
        w = self.weyl
        out = {}
        seen = set()
        for e in list(f.res) + [w.right_mul_gen[e][i] for e in f.res]:
            if e in seen:
                continue
            seen.add(e)
            esi = w.right_mul_gen[e][i]
            fe = f.restriction(e)
            fesi = f.restriction(esi)
            num = fe.sub(fesi)
            root = self._act_root(e, i)
            if self.variant in ("standard", "num_flip"):
                div_weight = tuple(-r for r in root)
                kap_y, kap_i = root, div_weight
            else:
                div_weight = root
                kap_y, kap_i = tuple(-r for r in root), root
            if self.variant in ("num_flip", "both_flip"):
                num = num.neg()
            if num.is_zero():
                term1 = self.S.zero(num.prec)
            else:
                term1 = exact_divide(num, self.x_root(div_weight))
            val = term1
            if not fesi.is_zero():
                val = val.add(self._kappa_for(kap_y, kap_i).mul(fesi))
            if not val.is_zero():
                out[e] = val
        deg = None if f.degree is None else f.degree - 1
        return GKMClass(self, out, deg)

    def _kappa_for(self, y_weight, i_weight):
        key = (tuple(y_weight), tuple(i_weight))
        k = self._kappa.get(key)
        if k is None:
            k = kappa_series(self.S, self.x_root(key[0]), self.x_root(key[1]))
            self._kappa[key] = k
        return k

    def bott_samelson_class(self, word) -> GKMClass:
        """Fold of push-pull operators over the word, from the point class.
        Non-reduced words are allowed; they give non-basis classes."""
        f = self.point_class()
        for i in word:
            f = self.push_pull(i, f)
        return f

    def zeta(self, e) -> GKMClass:
        """Basis class for the fixed minimal word of the given element."""
        z = self._zeta.get(e)
        if z is None:
            z = self.bott_samelson_class(self.weyl.words[e])
            self._zeta[e] = z
        return z

    def zeta_basis(self):
        return {e: self.zeta(e) for e in range(self.weyl.order)}

    # -- pushforward ------------------------------------------------------------

    def _cofactor_for(self, e):
        c = self._cofactor.get(e)
        if c is None:
            c = self.S.one()
            for beta in self.rd.pos_roots_lat:
                c = c.mul(self.x_root(self.weyl.act_lat(e, beta)), cap=2 * self.N + 1)
            self._cofactor[e] = c
        return c

    def _denominator_lowest(self):
        if self._denominator_low is None:
            d = self.S.one()
            for beta in self.rd.pos_roots_lat:
                d = d.mul(self.x_root(beta), cap=2 * self.N + 1)
                d = d.mul(self.x_root(tuple(-b for b in beta)), cap=2 * self.N + 1)
            low = d.homogeneous_part(2 * self.N)
            mono = max(low.terms)
            lead = low.terms[mono]
            const = dict(lead).pop((0,) * len(self.coeffs.gens), None)
            if const is None or len(lead) != 1:
                raise CobordiaError("denominator lowest part is not integral")
            self._denominator_low = (low, mono, const)
        return self._denominator_low

    def pushforward_to_point(self, f: GKMClass) -> GradedCoefficient:
        """Sum of restrictions over the tangent Euler classes, evaluated
        fraction-free over the common denominator and read off at the point.
        """
        twoN = 2 * self.N
        if f.prec() < twoN:
            raise PrecisionExhausted(
                "pushforward needs precision >= 2N = %d, class has %d" % (twoN, f.prec()))
        num = self.S.zero(twoN)
        for e, s in f.res.items():
            num = num.add(s.mul(self._cofactor_for(e), cap=twoN))
        if num.is_zero():
            return self.coeffs.zero()
        if num.order() < twoN:
            raise NotDivisible(
                "pushforward numerator has terms below the denominator degree")
        low, mono, lead = self._denominator_lowest()
        top = num.homogeneous_part(twoN)
        if top.is_zero():
            return self.coeffs.zero()
        q0 = top.coefficient(mono).exact_div_int(lead)
        if not low.scale(q0).sub(top).is_zero():
            raise NotDivisible("pushforward numerator not a multiple of the denominator")
        return q0

    # -- expansion ----------------------------------------------------------------

    def _top_factors(self, e):
        """Restriction of the basis class at its own point as an explicit list
        of weight-series factors (one per positive root not consumed by the
        word)."""
        fac = self._tops.get(e)
        if fac is None:
            consumed = set()
            cur = 0
            for i in self.weyl.words[e]:
                gamma = self._act_root(cur, i)
                consumed.add(tuple(gamma))
                cur = self.weyl.right_mul_gen[cur][i]
            fac = [tuple(-b for b in beta) for beta in self.rd.pos_roots_lat
                   if tuple(beta) not in consumed]
            self._tops[e] = fac
        return fac

    def expand_in_basis(self, f: GKMClass, equivariant=False):
        """Coefficients of f over the basis classes.

        Solved point by point in decreasing length order; at each step the
        remaining restriction must be exactly divisible by the basis class's
        own top restriction, otherwise the class is not in the span.
        """
        w = self.weyl
        coeffs = {}
        series_coeffs = {}
        rem = dict(f.res)
        for e in sorted(range(w.order), key=lambda e: -w.lengths[e]):
            val = rem.get(e)
            if val is None or val.is_zero():
                continue
            try:
                s = val
                for lam in self._top_factors(e):
                    s = exact_divide(s, self.x_root(lam))
            except NotDivisible as exc:
                raise NotInSpan("restriction at %r not divisible: %s" % (w.words[e], exc))
            series_coeffs[e] = s
            z = self.zeta(e)
            for v, zs in z.res.items():
                if v in rem:
                    rem[v] = rem[v].sub(s.mul(zs))
                else:
                    rem[v] = s.mul(zs).neg()
        leftovers = {v for v, s in rem.items() if not s.is_zero()}
        if leftovers:
            raise NotInSpan("unresolved restrictions at %r" % (sorted(leftovers),))
        for e, s in series_coeffs.items():
            c = s.constant_term()
            if not c.is_zero():
                coeffs[e] = c
        if equivariant:
            return coeffs, series_coeffs
        return coeffs

    # -- pairing and dual basis ------------------------------------------------

    def gram_matrix(self):
        if self._gram is None:
            w = self.weyl
            n = w.order
            zs = self.zeta_basis()
            g = [[None] * n for _ in range(n)]
            for v in range(n):
                for u in range(v, n):
                    val = self.pushforward_to_point(zs[v].mul(zs[u], cap=2 * self.N))
                    g[v][u] = val
                    g[u][v] = val
            self._gram = g
        return self._gram

    def dual_basis(self):
        """Classes tau_w with pi(tau_v zeta_w) = delta; the inversion uses the
        unit anti-diagonal and the strictly length-raising tail of the Gram
        matrix."""
        if self._dual is not None:
            return self._dual
        w = self.weyl
        n = w.order
        g = self.gram_matrix()
        perm = [None] * n
        signs = [0] * n
        for v in range(n):
            for u in range(n):
                c = g[v][u]
                if w.lengths[v] + w.lengths[u] < self.N and not c.is_zero():
                    raise GramNotUnimodular("pairing below the anti-diagonal")
                if w.lengths[v] + w.lengths[u] == self.N and not c.is_zero():
                    if perm[v] is not None:
                        raise GramNotUnimodular("anti-diagonal row is not a unit vector")
                    if c == self.coeffs.one():
                        signs[v] = 1
                    elif c == -1 * self.coeffs.one():
                        signs[v] = -1
                    else:
                        raise GramNotUnimodular("anti-diagonal entry is not a unit")
                    perm[v] = u
        if any(p is None for p in perm) or len(set(perm)) != n:
            raise GramNotUnimodular("anti-diagonal part is not a permutation")
        # G = P + T with P the signed permutation, T length-raising
        zero, one = self.coeffs.zero(), self.coeffs.one()
        pinv = [[signs[u] * one if v == perm[u] else zero for u in range(n)] for v in range(n)]
        t = [[g[v][u] if w.lengths[v] + w.lengths[u] > self.N else zero
              for u in range(n)] for v in range(n)]
        m = _mat_mul(pinv, t, zero)  # P^{-1} T, strictly length-raising
        inv = pinv
        power = pinv
        for _ in range(n):
            power = _mat_neg(_mat_mul(m, power, zero))
            if _mat_is_zero(power):
                break
            inv = _mat_add(inv, power)
        # rows of inv give tau_v = sum_u inv[v][u] zeta_u
        zs = self.zeta_basis()
        taus = {}
        for v in range(n):
            acc = GKMClass(self, {}, degree=w.lengths[v])
            for u in range(n):
                if not inv[v][u].is_zero():
                    acc = acc.add(zs[u].scale(inv[v][u]))
            taus[v] = acc
        self._dual = (taus, inv)
        return self._dual

    def pairing_expand(self, f: GKMClass):
        """Expansion coefficients through the pairing with the dual basis;
        slower than the triangular solve but a direct reading of the duality.
        """
        taus, _ = self.dual_basis()
        out = {}
        for v, tau in taus.items():
            c = self.pushforward_to_point(f.mul(tau, cap=2 * self.N))
            if not c.is_zero():
                out[v] = c
        return out

    # -- products and the characteristic map -------------------------------------

    def multiply_basis(self, u, v):
        key = (min(u, v), max(u, v))
        out = self._table.get(key)
        if out is None:
            out = self.expand_in_basis(self.zeta(u).mul(self.zeta(v)))
            self._table[key] = out
        return out

    def structure_constants(self):
        w = self.weyl
        return {(u, v): self.multiply_basis(u, v)
                for u in range(w.order) for v in range(w.order)}

    def characteristic_class(self, u: TruncSeries) -> GKMClass:
        """Image of a formal-group-algebra element: restriction at w is the
        w-substitution of the element with inverted variables, pinned so that
        the additive specialization matches the divisor-rule oracle."""
        if u.ring is not self.S:
            raise CobordiaError("series from a different ring")
        neg = self._negate_vars(u)
        out = {}
        for e in range(self.weyl.order):
            s = self.S.weyl_substitute(self.weyl, e, neg)
            if not s.is_zero():
                out[e] = s
        return GKMClass(self, out, degree=None)

    def _negate_vars(self, u: TruncSeries) -> TruncSeries:
        images = [self.x_root(tuple(-1 if k == i else 0 for k in range(self.rd.rank)))
                  for i in range(self.rd.rank)]
        out = self.S.zero(u.prec)
        cache = [{1: img} for img in images]
        for exp, c in u.terms.items():
            piece = None
            for i, k in enumerate(exp):
                if k == 0:
                    continue
                top = max(cache[i])
                while top < k:
                    cache[i][top + 1] = cache[i][top].mul(cache[i][1])
                    top += 1
                piece = cache[i][k] if piece is None else piece.mul(cache[i][k])
            if piece is None:
                out = out.add(self.S.constant(GradedCoefficient(self.coeffs, c), u.prec))
            else:
                out = out.add(piece.scale_poly(c))
        return out

    def characteristic_of_weight(self, lam) -> GKMClass:
        return self.characteristic_class(self.S.x_of_weight(tuple(lam)))

    def specialize_class(self, f: GKMClass, target: "Theory") -> GKMClass:
        """Coefficient-wise specialization onto a theory over the same root
        datum; commutes with products, operators and pushforwards."""
        if target.rd is not self.rd:
            raise CobordiaError("specialization must keep the root datum")
        if self.coeffs.kind != "universal":
            raise CobordiaError("specialization starts from universal coefficients")
        out = {}
        for e, s in f.res.items():
            terms = {}
            for exp, poly in s.terms.items():
                c = specialize(GradedCoefficient(self.coeffs, poly), target.coeffs)
                if not c.is_zero():
                    terms[exp] = c.poly
            if terms:
                out[e] = TruncSeries(target.S, terms, min(s.prec, target.precision))
        return GKMClass(target, out, f.degree)

    # -- convention pinning -------------------------------------------------------

    def convention_report(self):
        """The pinning invariants for the operator variant: pi(point) = 1,
        duality, and divisor classes matching the oracle after additive
        specialization (run on the additive theory itself)."""
        from .chevalley import ChowOracle
        rep = {"variant": self.variant, "fold": self.fold}
        rep["point_normalized"] = self.pushforward_to_point(self.point_class()) == self.coeffs.one()
        taus, _ = self.dual_basis()
        ok = True
        w = self.weyl
        for v in range(w.order):
            for u in range(w.order):
                val = self.pushforward_to_point(taus[v].mul(self.zeta(u), cap=2 * self.N))
                want = self.coeffs.one() if u == v else self.coeffs.zero()
                ok = ok and val == want
        rep["duality"] = ok
        if self.coeffs.kind == "additive" and self.coeffs.modulus is None:
            oracle = ChowOracle(self.rd, self.word_choice)
            ok = True
            for i in range(self.rd.rank):
                lam = tuple(1 if k == i else 0 for k in range(self.rd.rank))
                got = {e: c.poly[()] for e, c in
                       self.expand_in_basis(self.characteristic_of_weight(lam)).items()}
                want = oracle.zeta_chevalley(lam, w.w0)
                ok = ok and got == want
            rep["chevalley"] = ok
        rep["ok"] = all(v for k, v in rep.items() if isinstance(v, bool))
        return rep


def _mat_mul(a, b, zero):
    n = len(a)
    out = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for k in range(n):
            if a[i][k].is_zero():
                continue
            for j in range(n):
                if not b[k][j].is_zero():
                    out[i][j] = out[i][j] + a[i][k] * b[k][j]
    return out


def _mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mat_neg(a):
    return [[-x for x in row] for row in a]


def _mat_is_zero(a):
    return all(x.is_zero() for row in a for x in row)
