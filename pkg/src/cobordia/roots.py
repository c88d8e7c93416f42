"""Root systems of rank <= 3 with a selectable character lattice, Weyl group
enumeration with fixed minimal reduced words, and Bruhat order.

Coordinates: the ambient reference lattice is the weight lattice of the
simply connected group, with the fundamental weights as standard basis.  A
character lattice is any intermediate lattice between root and weight
lattice, given by an integer basis matrix whose columns are the basis in
weight coordinates.  All engine-facing data (simple roots, positive roots,
reflection matrices) is exposed in both weight and lattice coordinates;
lattice coordinates are the variables of the formal group algebra.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import CobordiaError, DimensionMismatch

CARTAN = {
    "A1": [[2]],
    "A1xA1": [[2, 0], [0, 2]],
    "A2": [[2, -1], [-1, 2]],
    "B2": [[2, -1], [-2, 2]],
    "C2": [[2, -2], [-1, 2]],
    "G2": [[2, -1], [-3, 2]],
    "A3": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
}

WEYL_DEGREES = {
    "A1": [2],
    "A1xA1": [2, 2],
    "A2": [2, 3],
    "B2": [2, 4],
    "C2": [2, 4],
    "G2": [2, 6],
    "A3": [2, 3, 4],
}

GROUPS = {
    "G2": ("G2", "sc"),
    "SO3": ("A1", "adjoint"),
    "SO4": ("A1xA1", "so4"),
    "Spin3": ("A1", "sc"),
    "Spin4": ("A1xA1", "sc"),
    "Spin5": ("B2", "sc"),
    "Spin6": ("A3", "sc"),
    "PGL2": ("A1", "adjoint"),
    "PGL3": ("A2", "adjoint"),
    "PGL4": ("A3", "adjoint"),
    "SL2": ("A1", "sc"),
    "SL3": ("A2", "sc"),
    "SL4": ("A3", "sc"),
}


def _matvec(m, v):
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m)))


def _matmul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _solve_rational(m, v):
    """Solve m x = v exactly over the rationals; m square nonsingular."""
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(v[i])] for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise CobordiaError("singular lattice basis")
        a[c], a[piv] = a[piv], a[c]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c] / a[c][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [a[i][n] / a[i][i] for i in range(n)]


def _to_int_vec(fracs, what):
    out = []
    for x in fracs:
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise CobordiaError(what)
            out.append(int(x))
        else:
            out.append(int(x))
    return tuple(out)


class WeylGroup:
    """All elements of the Weyl group with lengths, fixed minimal reduced
    words, a multiplication table and the Bruhat order."""

    def __init__(self, rootdatum, word_choice="min"):
        self.rootdatum = rootdatum
        self.word_choice = word_choice
        rank = rootdatum.rank
        gens = rootdatum.simple_reflections_w
        ident = _identity(rank)
        index = {ident: 0}
        self.matrices_w = [ident]
        self.words = [()]
        frontier = [0]
        prefer = list(range(rank)) if word_choice == "min" else list(range(rank - 1, -1, -1))
        while frontier:
            layer = sorted(frontier, key=lambda e: self.words[e])
            if word_choice == "max":
                layer = sorted(frontier, key=lambda e: self.words[e], reverse=True)
            nxt = []
            for e in layer:
                for i in prefer:
                    m = _matmul(self.matrices_w[e], gens[i])
                    if m not in index:
                        index[m] = len(self.matrices_w)
                        self.matrices_w.append(m)
                        self.words.append(self.words[e] + (i,))
                        nxt.append(index[m])
            frontier = nxt
        self.index = index
        self.order = len(self.matrices_w)
        self.lengths = [len(w) for w in self.words]
        self.w0 = max(range(self.order), key=lambda e: self.lengths[e])
        # multiplication and inverse tables
        self.mult = [[index[_matmul(self.matrices_w[a], self.matrices_w[b])]
                      for b in range(self.order)] for a in range(self.order)]
        self.inv = [next(b for b in range(self.order) if self.mult[a][b] == 0)
                    for a in range(self.order)]
        self.right_mul_gen = [[self.mult[e][index[gens[i]]] for i in range(rank)]
                              for e in range(self.order)]
        self._bruhat = {}
        self._check()

    def _check(self):
        rd = self.rootdatum
        for e in range(self.order):
            inv_count = sum(1 for beta in rd.pos_roots_w
                            if not rd.is_positive_root(_matvec(self.matrices_w[e], beta)))
            if inv_count != self.lengths[e]:
                raise CobordiaError("word length does not match inversion count")
        if self.lengths[self.w0] != rd.N:
            raise CobordiaError("longest element length != number of positive roots")
        # every fixed word multiplies out to its element
        for e in range(self.order):
            m = 0
            for i in self.words[e]:
                m = self.right_mul_gen[m][i]
            if m != e:
                raise CobordiaError("stored word does not reproduce the element")

    def gen_index(self, i):
        return self.index[self.rootdatum.simple_reflections_w[i]]

    def act_w(self, e, vec_w):
        return _matvec(self.matrices_w[e], vec_w)

    def act_lat(self, e, vec_lat):
        rd = self.rootdatum
        return rd.to_lattice(self.act_w(e, rd.to_weight(vec_lat)))

    def matrix_lat(self, e):
        rd = self.rootdatum
        cols = [self.act_lat(e, tuple(1 if k == j else 0 for k in range(rd.rank)))
                for j in range(rd.rank)]
        return tuple(tuple(cols[j][i] for j in range(rd.rank)) for i in range(rd.rank))

    def by_length(self):
        return sorted(range(self.order), key=lambda e: (self.lengths[e], self.words[e]))

    def bruhat_leq(self, v, w):
        """Subword criterion evaluated on the fixed reduced word of w."""
        if v == 0:
            return True
        if self.lengths[v] > self.lengths[w]:
            return False
        key = (v, w)
        if key in self._bruhat:
            return self._bruhat[key]
        word = self.words[w]
        i = word[-1]
        wsi = self.right_mul_gen[w][i]
        vsi = self.right_mul_gen[v][i]
        if self.lengths[vsi] < self.lengths[v]:
            out = self.bruhat_leq(vsi, wsi)
        else:
            out = self.bruhat_leq(v, wsi)
        self._bruhat[key] = out
        return out


class RootDatum:
    """A root system together with a chosen character lattice."""

    def __init__(self, type_label, lattice_label, cartan, lattice_cols):
        self.type_label = type_label
        self.lattice_label = lattice_label
        self.cartan = tuple(tuple(r) for r in cartan)
        self.rank = len(cartan)
        self.lattice_basis = tuple(tuple(r) for r in lattice_cols)  # columns in weight coords
        # simple roots in weight coordinates are the Cartan columns
        self.simple_roots_w = [tuple(cartan[i][j] for i in range(self.rank))
                               for j in range(self.rank)]
        self.simple_reflections_w = []
        for i in range(self.rank):
            a = self.simple_roots_w[i]
            m = [[(1 if k == j else 0) - (a[k] if j == i else 0)
                  for j in range(self.rank)] for k in range(self.rank)]
            self.simple_reflections_w.append(tuple(tuple(r) for r in m))
        self._weight_of_lat = {}
        self._lat_of_weight = {}
        self._enumerate_roots()
        self._validate_lattice()
        self._weyl_cache = {}

    # -- coordinates ------------------------------------------------------

    def to_weight(self, v_lat):
        v_lat = tuple(v_lat)
        out = self._weight_of_lat.get(v_lat)
        if out is None:
            cols = self.lattice_basis
            out = tuple(sum(cols[i][j] * v_lat[j] for j in range(self.rank))
                        for i in range(self.rank))
            self._weight_of_lat[v_lat] = out
        return out

    def to_lattice(self, v_w):
        v_w = tuple(v_w)
        out = self._lat_of_weight.get(v_w)
        if out is None:
            sol = _solve_rational([list(r) for r in self.lattice_basis], list(v_w))
            out = _to_int_vec(sol, "vector outside the chosen character lattice")
            self._lat_of_weight[v_w] = out
        return out

    # -- roots --------------------------------------------------------------

    def _enumerate_roots(self):
        """Closure of the simple roots under the simple reflections, with a
        coroot representative beta = w(alpha_i) carried along."""
        seen = {}
        frontier = []
        for i in range(self.rank):
            beta = self.simple_roots_w[i]
            seen[beta] = ((), i)
            frontier.append(beta)
        while frontier:
            nxt = []
            for beta in frontier:
                hist, i0 = seen[beta]
                for j in range(self.rank):
                    img = _matvec(self.simple_reflections_w[j], beta)
                    if img not in seen:
                        seen[img] = ((j,) + hist, i0)
                        nxt.append(img)
            frontier = nxt
        self._root_repr = seen
        self.pos_roots_w = sorted(b for b in seen if self.is_positive_root(b))
        self.N = len(self.pos_roots_w)
        if 2 * self.N != len(seen):
            raise CobordiaError("root enumeration is not symmetric")

    def is_positive_root(self, beta_w):
        coeffs = _solve_rational([list(r) for r in self.cartan], list(beta_w))
        if all(x >= 0 for x in coeffs):
            return True
        if all(x <= 0 for x in coeffs):
            return False
        raise CobordiaError("vector %r is not a root" % (beta_w,))

    def pairing_w(self, lam_w, beta_w):
        """<lam, beta_vee> for a root beta, both in weight coordinates."""
        word, i0 = self._root_repr[tuple(beta_w)]
        # beta = s_{j1} ... s_{jk} (alpha_{i0}); coroot pairing pulls back
        v = tuple(lam_w)
        for j in word:
            v = _matvec(self.simple_reflections_w[j], v)
        return v[i0]

    def pairing(self, lam_lat, beta_w):
        return self.pairing_w(self.to_weight(lam_lat), beta_w)

    @property
    def pos_roots_lat(self):
        return [self.to_lattice(b) for b in self.pos_roots_w]

    @property
    def simple_roots_lat(self):
        return [self.to_lattice(b) for b in self.simple_roots_w]

    # -- validation -----------------------------------------------------------

    def _validate_lattice(self):
        from .lattice import det as _det, IntMatrix
        if _det(IntMatrix.from_rows([list(r) for r in self.lattice_basis])) == 0:
            raise CobordiaError("lattice basis is singular")
        try:
            for beta in self.simple_roots_w:
                self.to_lattice(beta)
        except CobordiaError:
            raise CobordiaError("character lattice does not contain the root lattice")
        for i in range(self.rank):
            for j in range(self.rank):
                col = tuple(1 if k == j else 0 for k in range(self.rank))
                img = _matvec(self.simple_reflections_w[i], self.to_weight(col))
                try:
                    self.to_lattice(img)
                except CobordiaError:
                    raise CobordiaError("character lattice is not reflection-stable")

    # -- weyl --------------------------------------------------------------

    def weyl(self, word_choice="min"):
        if word_choice not in self._weyl_cache:
            self._weyl_cache[word_choice] = WeylGroup(self, word_choice)
        return self._weyl_cache[word_choice]

    def describe(self):
        return {
            "type": self.type_label,
            "lattice": self.lattice_label,
            "rank": self.rank,
            "positive_roots": self.N,
            "weyl_order": self.weyl().order,
        }


def build_root_datum(type_label, lattice="sc"):
    """Construct a root datum for a supported type and character lattice.

    lattice: 'sc' (weight lattice), 'adjoint' (root lattice), 'so4' (the
    index-2 intermediate lattice of A1xA1 containing w1 + w2), or an explicit
    integer column-basis matrix inside the weight lattice.
    """
    if type_label not in CARTAN:
        raise CobordiaError("unsupported type %r" % (type_label,))
    cartan = CARTAN[type_label]
    rank = len(cartan)
    if isinstance(lattice, str):
        label = lattice
        if lattice == "sc":
            cols = _identity(rank)
        elif lattice == "adjoint":
            cols = tuple(tuple(cartan[i][j] for j in range(rank)) for i in range(rank))
        elif lattice == "so4":
            if type_label != "A1xA1":
                raise CobordiaError("the so4 lattice only exists for type A1xA1")
            cols = ((1, 0), (1, 2))
        else:
            raise CobordiaError("unknown lattice label %r" % (lattice,))
    else:
        label = "custom"
        cols = tuple(tuple(r) for r in lattice)
        if len(cols) != rank or any(len(r) != rank for r in cols):
            raise DimensionMismatch("lattice basis must be %d x %d" % (rank, rank))
    return RootDatum(type_label, label, cartan, cols)


def group_datum(name):
    """Root datum of a named group: G2, SO3, SO4, Spin3..Spin6, PGL2..PGL4,
    SL2..SL4."""
    if name not in GROUPS:
        raise CobordiaError("unknown group %r" % (name,))
    t, lat = GROUPS[name]
    return build_root_datum(t, lat)


def weyl_enumerate(rd: RootDatum, word_choice="min") -> WeylGroup:
    return rd.weyl(word_choice)


def bruhat_leq(w_group: WeylGroup, v, w):
    return w_group.bruhat_leq(v, w)


def poincare_polynomial(w_group: WeylGroup):
    """Coefficient list of sum_w t^{l(w)}."""
    out = [0] * (w_group.rootdatum.N + 1)
    for e in range(w_group.order):
        out[w_group.lengths[e]] += 1
    return out


def poincare_from_degrees(type_label):
    """prod_i (1 - t^{d_i}) / (1 - t) as a coefficient list."""
    poly = [1]
    for d in WEYL_DEGREES[type_label]:
        geom = [1] * d
        poly = [sum(poly[i] * geom[k - i] for i in range(max(0, k - d + 1), min(len(poly), k + 1)))
                for k in range(len(poly) + d - 1)]
    return poly


def pgl_generating_characters(rd: RootDatum, n):
    """The characters n*chi_1, chi_2 - chi_1, ..., chi_n - chi_1 of the
    adjoint torus of type A_{n-1}, in lattice coordinates.  They generate the
    character lattice and hence the characteristic ideal."""
    if rd.type_label not in ("A1", "A2", "A3") or rd.lattice_label != "adjoint":
        raise CobordiaError("generating characters require an adjoint A-type datum")
    rank = rd.rank
    if n != rank + 1:
        raise CobordiaError("n must be rank + 1")

    def chi(i):
        # chi_i = w_i - w_{i-1} with w_0 = w_n = 0, in weight coordinates
        v = [0] * rank
        if i <= rank:
            v[i - 1] += 1
        if i - 1 >= 1:
            v[i - 2] -= 1
        return tuple(v)

    out = [rd.to_lattice(tuple(n * x for x in chi(1)))]
    for i in range(2, n + 1):
        diff = tuple(a - b for a, b in zip(chi(i), chi(1)))
        out.append(rd.to_lattice(diff))
    return out
