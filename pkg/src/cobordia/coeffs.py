"""Coefficient rings and formal group laws.

Supported coefficient rings: the integers (additive law / Chow), the Laurent
ring Z[b, 1/b] with deg b = -1 (multiplicative law / K-theory), the
degree-truncated universal ring (Lazard ring), rings declared by a
coefficient file, and mod-n reductions of any of these.

Universal coefficients are represented as polynomials in the logarithm
coefficients m_1, ..., m_D over the rationals, where deg m_i = -i.
Integrality is a checkable certificate: membership in the integer lattice
spanned by monomials in the universal-law coefficients a_ij.  The lattice of
degree -d integral elements has rank p(d) (partitions of d), which is what
makes the per-degree linear algebra finite.

Everything is truncated at coefficient degree -D.  Coefficient degrees only
decrease under multiplication, so dropped terms can never influence retained
ones and all final values of degree >= -D stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CobordiaError, FGLFileError, NotDivisible
from .lattice import _hnf_rows, _member_rows


@dataclass(frozen=True)
class CoeffRingSpec:
    """Choice of coefficient ring.

    kind: 'additive' | 'multiplicative' | 'universal' | 'custom'
    trunc: maximal |degree| retained (must be >= dim of every variety used)
    modulus: optional n >= 2 for coefficient-wise reduction
    beta_one: for the multiplicative kind, set b = 1 (ungraded K_0)
    """

    kind: str
    trunc: int
    modulus: int | None = None
    beta_one: bool = False
    custom_name: str = ""
    custom_generators: tuple = ()          # ((name, degree<=-1), ...)
    custom_a: tuple = ()                   # (((i, j), poly-items), ...)

    def __post_init__(self):
        if self.kind not in ("additive", "multiplicative", "universal", "custom"):
            raise CobordiaError("unknown coefficient ring kind %r" % (self.kind,))
        if self.modulus is not None and self.modulus < 2:
            raise CobordiaError("modulus must be >= 2")
        if self.trunc < 0:
            raise CobordiaError("truncation bound must be >= 0")


def _normalize_num(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


class GradedCoefficient:
    """A homogeneous element of the coefficient ring.

    The payload is a sparse polynomial {exponent tuple: number} over the
    ring's generators.  For graded rings every stored monomial has the same
    degree; the zero element has degree None.
    """

    __slots__ = ("ring", "poly")

    def __init__(self, ring, poly):
        self.ring = ring
        self.poly = poly

    @property
    def degree(self):
        return self.ring.degree_of(self.poly)

    def is_zero(self):
        return self.ring.poly_is_zero(self.poly)

    def __add__(self, other):
        self._check(other)
        return GradedCoefficient(self.ring, self.ring.poly_add(self.poly, other.poly))

    def __sub__(self, other):
        self._check(other)
        return GradedCoefficient(self.ring, self.ring.poly_add(self.poly, self.ring.poly_neg(other.poly)))

    def __neg__(self):
        return GradedCoefficient(self.ring, self.ring.poly_neg(self.poly))

    def __mul__(self, other):
        if isinstance(other, int):
            return GradedCoefficient(self.ring, self.ring.poly_scale(self.poly, other))
        self._check(other)
        return GradedCoefficient(self.ring, self.ring.poly_mul(self.poly, other.poly))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, GradedCoefficient) or other.ring is not self.ring:
            return NotImplemented
        return self.ring.poly_is_zero(self.ring.poly_add(self.poly, self.ring.poly_neg(other.poly)))

    def __hash__(self):
        return hash((id(self.ring), tuple(sorted(self.poly.items()))))

    def exact_div_int(self, n):
        """Divide by a nonzero integer, raising when not exact.

        Over a mod-m ring the divisor must be a unit mod m; anything else is
        ambiguous and refused rather than guessed.
        """
        if n == 0:
            raise ZeroDivisionError
        out = {}
        inv = None
        if self.ring.modulus is not None and self.ring.kind != "universal":
            m = self.ring.modulus
            import math
            if math.gcd(n, m) != 1:
                raise NotDivisible("division by %d is ambiguous mod %d" % (n, m))
            inv = pow(n % m, -1, m)
        for e, c in self.poly.items():
            if inv is not None:
                out[e] = c * inv
            elif isinstance(c, int):
                if c % n != 0:
                    raise NotDivisible("coefficient %r not divisible by %d" % (c, n))
                out[e] = c // n
            else:
                out[e] = c / n
        return GradedCoefficient(self.ring, self.ring._normalize(out))

    def _check(self, other):
        if other.ring is not self.ring:
            raise CobordiaError("coefficient ring mismatch")

    def __repr__(self):
        return self.ring.format_poly(self.poly)


class CoeffRing:
    """Arithmetic for one coefficient ring specification."""

    def __init__(self, spec: CoeffRingSpec):
        self.spec = spec
        self.kind = spec.kind
        self.trunc = spec.trunc
        self.modulus = spec.modulus
        self.graded = not (spec.kind == "multiplicative" and spec.beta_one)
        if spec.kind == "additive":
            self.gens = ()
            self.gen_degrees = ()
        elif spec.kind == "multiplicative":
            self.gens = ("b",)
            self.gen_degrees = (0,) if spec.beta_one else (-1,)
        elif spec.kind == "universal":
            self.gens = tuple("m%d" % i for i in range(1, spec.trunc + 1))
            self.gen_degrees = tuple(-i for i in range(1, spec.trunc + 1))
        else:
            self.gens = tuple(name for name, _ in spec.custom_generators)
            self.gen_degrees = tuple(d for _, d in spec.custom_generators)
            if any(d > -1 for d in self.gen_degrees):
                raise CobordiaError("custom generators must have negative degree")
        self._lazard_cache = {}
        self._amono_cache = {}

    # -- payload polynomial arithmetic ------------------------------------

    def _reduce_num(self, x):
        x = _normalize_num(x)
        if self.modulus is not None and isinstance(x, int) and self.kind != "universal":
            x %= self.modulus
        return x

    def _normalize(self, poly):
        out = {}
        for e, c in poly.items():
            c = self._reduce_num(c)
            if c:
                out[e] = c
        return out

    def mono_degree(self, e):
        return sum(k * d for k, d in zip(e, self.gen_degrees))

    def degree_of(self, poly):
        degs = {self.mono_degree(e) for e in poly}
        if not degs:
            return None
        if not self.graded:
            return 0
        if len(degs) > 1:
            raise CobordiaError("inhomogeneous coefficient %r" % (poly,))
        return degs.pop()

    def poly_add(self, a, b):
        out = dict(a)
        for e, c in b.items():
            out[e] = out.get(e, 0) + c
        return self._normalize(out)

    def poly_neg(self, a):
        return self._normalize({e: -c for e, c in a.items()})

    def poly_scale(self, a, n):
        return self._normalize({e: n * c for e, c in a.items()})

    def poly_mul(self, a, b):
        if not a or not b:
            return {}
        out = {}
        deg = self.mono_degree
        keep = -self.trunc
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                if self.graded and deg(e) < keep:
                    continue
                out[e] = out.get(e, 0) + ca * cb
        return self._normalize(out)

    def poly_is_zero(self, poly):
        if self.kind == "universal" and self.modulus is not None:
            return all(self._mod_zero_degree(d, p) for d, p in self._split_degrees(poly).items())
        return not poly

    def _split_degrees(self, poly):
        out = {}
        for e, c in poly.items():
            out.setdefault(self.mono_degree(e), {})[e] = c
        return out

    # -- element constructors ----------------------------------------------

    def zero(self):
        return GradedCoefficient(self, {})

    def one(self):
        return self.from_int(1)

    def from_int(self, n):
        e = (0,) * len(self.gens)
        return GradedCoefficient(self, self._normalize({e: n}))

    def monomial(self, exps, coef=1):
        return GradedCoefficient(self, self._normalize({tuple(exps): coef}))

    def generator(self, name):
        i = self.gens.index(name)
        e = [0] * len(self.gens)
        e[i] = 1
        return self.monomial(e)

    def from_poly_items(self, items):
        poly = {}
        for e, c in items:
            poly[tuple(e)] = poly.get(tuple(e), 0) + c
        return GradedCoefficient(self, self._normalize(poly))

    def format_poly(self, poly):
        if not poly:
            return "0"
        parts = []
        for e in sorted(poly):
            c = poly[e]
            names = "*".join(
                g if k == 1 else "%s^%d" % (g, k)
                for g, k in zip(self.gens, e) if k
            )
            if names:
                parts.append("%s*%s" % (c, names) if c != 1 else names)
            else:
                parts.append(str(c))
        return " + ".join(parts).replace("+ -", "- ")

    # -- degree bases and coordinates ---------------------------------------

    def degree_basis(self, d):
        """Integer basis of the degree -d homogeneous component."""
        if d < 0 or d > self.trunc:
            return []
        if self.kind == "additive":
            return [self.one()] if d == 0 else []
        if self.kind == "multiplicative":
            if not self.graded:
                raise CobordiaError("ungraded ring has no degree decomposition")
            return [self.monomial((d,))]
        if self.kind == "custom":
            basis = []
            for e in self._exps_of_degree(d):
                basis.append(self.monomial(e))
            return basis
        return [b for b, _row in self._lazard(d)[2]]

    def _exps_of_degree(self, d):
        degs = [-x for x in self.gen_degrees]

        def rec(i, rem):
            if i == len(degs):
                if rem == 0:
                    yield ()
                return
            top = rem // degs[i]
            for k in range(top + 1):
                for tail in rec(i + 1, rem - k * degs[i]):
                    yield (k,) + tail

        return list(rec(0, d))

    def coeff_coords(self, c: GradedCoefficient, d):
        """Integer coordinates of a degree -d coefficient over degree_basis(d).

        Returns None when the element is not an integral lattice member.
        """
        if c.is_zero():
            return [0] * len(self.degree_basis(d))
        if c.degree != -d:
            raise CobordiaError("coefficient degree %r, expected %r" % (c.degree, -d))
        if self.kind == "additive":
            return [c.poly[()]]
        if self.kind == "multiplicative":
            return [c.poly[(d,)]]
        if self.kind == "custom":
            exps = self._exps_of_degree(d)
            out = []
            for e in exps:
                v = c.poly.get(e, 0)
                if not isinstance(v, int):
                    return None
                out.append(v)
            return out
        return self._lazard_coords(d, c.poly)

    def coeff_from_coords(self, d, coords):
        basis = self.degree_basis(d)
        if len(coords) != len(basis):
            raise CobordiaError("coordinate length mismatch")
        out = self.zero()
        for n, b in zip(coords, basis):
            if n:
                out = out + n * b
        return out

    # -- universal ring machinery -------------------------------------------

    def a_generator_pairs(self):
        """The (i, j) index pairs of the universal coefficients kept at this
        truncation: 1 <= i <= j, i + j <= trunc + 1."""
        out = []
        for t in range(2, self.trunc + 2):
            for i in range(1, t // 2 + 1):
                out.append((i, t - i))
        return out

    def _amonomials(self, d):
        """Multisets of a-generator pairs of total degree -d."""
        if d in self._amono_cache:
            return self._amono_cache[d]
        pairs = [p for p in self.a_generator_pairs() if p[0] + p[1] - 1 <= d]
        out = []

        def rec(idx, rem, cur):
            if rem == 0:
                out.append(tuple(cur))
                return
            if idx == len(pairs):
                return
            w = pairs[idx][0] + pairs[idx][1] - 1
            for k in range(rem // w, -1, -1):
                rec(idx + 1, rem - k * w, cur + ([(pairs[idx], k)] if k else []))

        rec(0, d, [])
        self._amono_cache[d] = out
        return out

    def a_monomial_value(self, mono):
        """Expand a monomial in the a_ij into the m-representation."""
        table = universal_fgl_table(self)
        v = self.one()
        for (i, j), k in mono:
            a = table.get(i, j)
            for _ in range(k):
                v = v * a
        return v

    def _mono_list(self, d):
        return self._exps_of_degree(d)

    def _poly_vector(self, poly, monos):
        vec = []
        known = dict(poly)
        for e in monos:
            vec.append(known.pop(e, 0))
        if known:
            raise CobordiaError("stray monomials outside degree component")
        return vec

    def _lazard(self, d):
        """Cached (m-monomials, HNF rows, [(basis element, row)]) for degree -d."""
        if d in self._lazard_cache:
            return self._lazard_cache[d]
        monos = self._mono_list(d)
        rows = []
        for mono in self._amonomials(d):
            val = self.a_monomial_value(mono)
            vec = self._poly_vector(val.poly, monos)
            if any(not isinstance(x, int) for x in vec):
                raise CobordiaError("universal coefficient with non-integer expansion")
            rows.append(vec)
        h, _ = _hnf_rows(rows) if rows else ([], None)
        basis_rows = [r for r in h if any(r)]
        basis = []
        for r in basis_rows:
            poly = {e: c for e, c in zip(monos, r) if c}
            basis.append((GradedCoefficient(self, poly), r))
        self._lazard_cache[d] = (monos, basis_rows, basis)
        return self._lazard_cache[d]

    def _lazard_coords(self, d, poly):
        monos, basis_rows, _ = self._lazard(d)
        try:
            vec = self._poly_vector(poly, monos)
        except CobordiaError:
            return None
        if any(not isinstance(x, int) for x in vec):
            return None
        coords = [0] * len(basis_rows)
        rem = list(vec)
        for i, row in enumerate(basis_rows):
            p = next(j for j, x in enumerate(row) if x)
            if rem[p] % row[p] != 0:
                return None
            f = rem[p] // row[p]
            coords[i] = f
            if f:
                rem = [x - f * y for x, y in zip(rem, row)]
        if any(rem):
            return None
        return coords

    def _mod_zero_degree(self, deg, poly):
        """Zero test for a homogeneous part of a mod-n universal element."""
        n = self.modulus
        d = -deg
        scaled = {}
        for e, c in poly.items():
            q = Fraction(c, n)
            scaled[e] = _normalize_num(q)
        return self._lazard_coords(d, scaled) is not None

    def is_integral(self, c: GradedCoefficient):
        """Certify membership in the integral lattice; True for non-universal
        rings whose representation is integral by construction."""
        if self.kind != "universal":
            return True
        if c.is_zero():
            return True
        return self._lazard_coords(-c.degree, c.poly) is not None

    def integral_coords_amono(self, c: GradedCoefficient):
        """Certificate of integrality: coordinates over the a-monomials of the
        element's degree, or None."""
        if c.is_zero():
            return []
        d = -c.degree
        monos = self._mono_list(d)
        rows = [self._poly_vector(self.a_monomial_value(m).poly, monos)
                for m in self._amonomials(d)]
        try:
            vec = self._poly_vector(c.poly, monos)
        except CobordiaError:
            return None
        if any(not isinstance(x, int) for x in vec):
            return None
        return _member_rows(vec, rows)


# ---------------------------------------------------------------------------
# formal group law tables


class FGLTable:
    """Coefficients a_ij of a formal group law x + y + sum a_ij x^i y^j,
    stored for 1 <= i <= j; symmetric access."""

    def __init__(self, ring: CoeffRing, table):
        self.ring = ring
        self.table = {}
        for (i, j), c in table.items():
            key = (min(i, j), max(i, j))
            if key in self.table and not (self.table[key] == c):
                raise FGLFileError("conflicting values for a %d %d" % key)
            self.table[key] = c
        for (i, j), c in self.table.items():
            # raw payload check; is_zero on mod-n universal rings would recurse
            if c.poly and ring.graded and ring.degree_of(c.poly) != 1 - i - j:
                raise FGLFileError("a_%d%d must be homogeneous of degree %d" % (i, j, 1 - i - j))

    def get(self, i, j):
        return self.table.get((min(i, j), max(i, j)), self.ring.zero())

    def pairs(self):
        """Nonzero coefficient positions (i, j) with i <= j."""
        return sorted(k for k, v in self.table.items() if not v.is_zero())

    def all_positions(self):
        """Positions including the symmetric mirrors, for series evaluation."""
        out = []
        for (i, j) in self.pairs():
            out.append((i, j))
            if i != j:
                out.append((j, i))
        return out


def _universal_log_exp(ring: CoeffRing, top):
    """Coefficients of log(x) = sum m_k x^(k+1) and its reversion exp, both up
    to x^top, as lists of payload polynomials indexed by power."""
    zero, one = {}, {(0,) * len(ring.gens): 1}
    log = [dict(zero) for _ in range(top + 1)]
    if top >= 1:
        log[1] = dict(one)
    for k in range(1, len(ring.gens) + 1):
        if k + 1 <= top:
            e = [0] * len(ring.gens)
            e[k - 1] = 1
            log[k + 1] = {tuple(e): 1}
    # powers of log as univariate series
    pw = [None, log]
    for k in range(2, top + 1):
        prev = pw[k - 1]
        cur = [dict(zero) for _ in range(top + 1)]
        for n1 in range(1, top + 1):
            if not prev[n1]:
                continue
            for n2 in range(1, top - n1 + 1):
                if not log[n2]:
                    continue
                cur[n1 + n2] = ring.poly_add(cur[n1 + n2], ring.poly_mul(prev[n1], log[n2]))
        pw.append(cur)
    exp = [dict(zero) for _ in range(top + 1)]
    if top >= 1:
        exp[1] = dict(one)
    for n in range(2, top + 1):
        acc = dict(zero)
        for k in range(1, n):
            if exp[k]:
                acc = ring.poly_add(acc, ring.poly_mul(exp[k], pw[k][n]))
        exp[n] = ring.poly_neg(acc)
    return log, exp, pw


def universal_fgl_table(ring: CoeffRing) -> FGLTable:
    """The universal formal group law over the truncated Lazard ring,
    computed through log/exp over the rationals."""
    if ring.kind != "universal":
        raise CobordiaError("universal law lives over the universal ring")
    if getattr(ring, "_universal_table", None) is not None:
        return ring._universal_table
    top = ring.trunc + 1
    log, exp, _ = _universal_log_exp(ring, top)
    # S = log(x) + log(y), F = exp(S); bivariate coefficients by total degree
    zero = {}
    s = {}
    for n in range(1, top + 1):
        if log[n]:
            s[(n, 0)] = dict(log[n])
            s[(0, n)] = dict(log[n])
    spow = {1: s}
    for k in range(2, top + 1):
        prev = spow[k - 1]
        cur = {}
        for (i1, j1), c1 in prev.items():
            for (i2, j2), c2 in s.items():
                if i1 + i2 + j1 + j2 > top:
                    continue
                key = (i1 + i2, j1 + j2)
                p = ring.poly_mul(c1, c2)
                if p:
                    cur[key] = ring.poly_add(cur.get(key, zero), p)
        spow[k] = cur
    f = {}
    for k in range(1, top + 1):
        ek = exp[k]
        if not ek:
            continue
        for key, c in spow[k].items():
            p = ring.poly_mul(ek, c)
            if p:
                f[key] = ring.poly_add(f.get(key, zero), p)
    table = {}
    for (i, j), poly in f.items():
        if i >= 1 and j >= 1 and i <= j and poly:
            table[(i, j)] = GradedCoefficient(ring, poly)
    out = FGLTable(ring, table)
    ring._universal_table = out
    return out


def universal_fgl(trunc: int) -> FGLTable:
    """Fresh universal law at the given truncation bound."""
    if trunc < 1:
        raise CobordiaError("truncation bound must be >= 1")
    ring = CoeffRing(CoeffRingSpec("universal", trunc))
    return universal_fgl_table(ring)


def fgl_table_for(ring: CoeffRing) -> FGLTable:
    """The formal group law attached to a coefficient ring."""
    if ring.kind == "additive":
        return FGLTable(ring, {})
    if ring.kind == "multiplicative":
        mb = -ring.from_int(1) if not ring.graded else -ring.monomial((1,))
        return FGLTable(ring, {(1, 1): mb})
    if ring.kind == "universal":
        return universal_fgl_table(ring)
    table = {}
    for (i, j), items in ring.spec.custom_a:
        table[(i, j)] = ring.from_poly_items(items)
    return FGLTable(ring, table)


def lazard_degree_basis(d, trunc=None, ring=None):
    """Integer basis of the degree -d component of the (truncated) Lazard
    ring, extracted from the a-monomial lattice by Hermite reduction."""
    if ring is None:
        ring = CoeffRing(CoeffRingSpec("universal", trunc if trunc is not None else max(d, 1)))
    return ring.degree_basis(d)


def specialize(c: GradedCoefficient, target) -> GradedCoefficient:
    """Push a universal coefficient into a target ring by substituting the
    target law's a_ij values."""
    ring = c.ring
    if ring.kind != "universal":
        raise CobordiaError("specialize expects a universal-kind coefficient")
    if isinstance(target, CoeffRingSpec):
        target = CoeffRing(target)
    if isinstance(target, CoeffRing):
        tring = target
    else:
        raise CobordiaError("target must be a CoeffRingSpec or CoeffRing")
    if c.is_zero():
        return tring.zero()
    d = -c.degree
    if d > tring.trunc and tring.graded:
        raise CobordiaError("target truncation bound %d below |degree| %d" % (tring.trunc, d))
    coords = ring.integral_coords_amono(c)
    if coords is None:
        raise CobordiaError("cannot specialize a non-integral coefficient")
    ttab = fgl_table_for(tring)
    out = tring.zero()
    for n, mono in zip(coords, ring._amonomials(d)):
        if not n:
            continue
        v = tring.from_int(n)
        for (i, j), k in mono:
            aij = ttab.get(i, j)
            for _ in range(k):
                v = v * aij
        out = out + v
    return out


# ---------------------------------------------------------------------------
# univariate series over a formal group law


def useries_mul(ring, a, b, top):
    out = [{} for _ in range(top + 1)]
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            if not cb or i + j > top:
                continue
            p = ring.poly_mul(ca, cb)
            if p:
                out[i + j] = ring.poly_add(out[i + j], p)
    return out


def useries_fgl_eval(table: FGLTable, u, v, top):
    """F(u, v) for univariate series u, v with zero constant term."""
    ring = table.ring
    out = [{} for _ in range(top + 1)]
    for n in range(top + 1):
        out[n] = ring.poly_add(u[n] if n < len(u) else {}, v[n] if n < len(v) else {})
    upow = {1: list(u) + [{}] * (top + 1 - len(u))}
    vpow = {1: list(v) + [{}] * (top + 1 - len(v))}

    def power(cache, base, k):
        if k not in cache:
            cache[k] = useries_mul(ring, power(cache, base, k - 1), cache[1], top)
        return cache[k]

    for (i, j) in table.all_positions():
        a = table.get(i, j)
        if a.is_zero():
            continue
        term = useries_mul(ring, power(upow, u, i), power(vpow, v, j), top)
        for n in range(top + 1):
            if term[n]:
                p = ring.poly_mul(a.poly, term[n])
                if p:
                    out[n] = ring.poly_add(out[n], p)
    return out


def formal_inverse(table: FGLTable, precision):
    """The series i(x) with F(x, i(x)) = 0 modulo degree > precision,
    returned as a list of GradedCoefficient by power of x."""
    ring = table.ring
    top = precision
    x = [{} for _ in range(top + 1)]
    if top >= 1:
        x[1] = ring.one().poly
    inv = [{} for _ in range(top + 1)]
    for n in range(1, top + 1):
        # evaluate F(x, inv) keeping inv exact below degree n
        val = useries_fgl_eval(table, x, inv, n)
        inv[n] = ring.poly_neg(val[n])
    return [GradedCoefficient(ring, c) for c in inv]


def n_series(table: FGLTable, n, precision):
    """The n-fold formal sum n . x as a truncated series (list by power)."""
    ring = table.ring
    top = precision
    x = [{} for _ in range(top + 1)]
    if top >= 1:
        x[1] = ring.one().poly
    if n == 0:
        return [ring.zero() for _ in range(top + 1)]
    if n < 0:
        step = [c.poly for c in formal_inverse(table, top)]
        count = -n
    else:
        step = x
        count = n
    acc = [dict(c) for c in step]
    for _ in range(count - 1):
        acc = useries_fgl_eval(table, acc, step, top)
    return [GradedCoefficient(ring, c) for c in acc]


# ---------------------------------------------------------------------------
# coefficient files


def _parse_poly(text, gens):
    """Parse an integer polynomial like '3*v^2*w - w + 4' over generators."""
    items = []
    text = text.replace("-", "+-").strip()
    if text.startswith("+-"):
        text = text[1:]
    for chunk in text.split("+"):
        chunk = chunk.strip()
        if not chunk:
            continue
        neg = chunk.startswith("-")
        if neg:
            chunk = chunk[1:].strip()
        coef = 1
        exps = [0] * len(gens)
        for factor in chunk.split("*"):
            factor = factor.strip()
            if not factor:
                raise FGLFileError("empty factor in %r" % (text,))
            if factor.lstrip("-").isdigit():
                coef *= int(factor)
                continue
            if "^" in factor:
                name, _, p = factor.partition("^")
                power = int(p)
            else:
                name, power = factor, 1
            name = name.strip()
            if name not in gens:
                raise FGLFileError("unknown generator %r" % (name,))
            exps[gens.index(name)] += power
        items.append((tuple(exps), -coef if neg else coef))
    return tuple(items)


def parse_fgl_file(text, trunc, modulus=None):
    """Parse a coefficient file into a CoeffRingSpec.

    Format:
        fgl <name> generators g1:deg1 g2:deg2 ...
        a i j = <integer polynomial in the generators>

    Omitted positions default to zero.  Conflicting symmetric entries are an
    error.
    """
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("fgl "):
        raise FGLFileError("missing 'fgl <name> generators ...' header")
    header = lines[0].split()
    name = header[1] if len(header) > 1 else ""
    gens = []
    if "generators" in header:
        for tok in header[header.index("generators") + 1:]:
            if ":" not in tok:
                raise FGLFileError("generator %r needs a degree, e.g. v:-1" % (tok,))
            g, _, d = tok.partition(":")
            gens.append((g, int(d)))
    gnames = [g for g, _ in gens]
    table = {}
    for ln in lines[1:]:
        parts = ln.split("=", 1)
        head = parts[0].split()
        if len(head) != 3 or head[0] != "a" or len(parts) != 2:
            raise FGLFileError("bad line %r" % (ln,))
        i, j = int(head[1]), int(head[2])
        if i < 1 or j < 1:
            raise FGLFileError("a i j needs i, j >= 1")
        items = _parse_poly(parts[1], gnames)
        key = (min(i, j), max(i, j))
        if key in table and table[key] != items:
            raise FGLFileError("conflicting symmetric entries for a %d %d" % (i, j))
        table[key] = items
    spec = CoeffRingSpec("custom", trunc, modulus=modulus, custom_name=name,
                         custom_generators=tuple(gens),
                         custom_a=tuple(sorted(table.items())))
    ring = CoeffRing(spec)
    fgl_table_for(ring)  # validates homogeneity
    return spec
