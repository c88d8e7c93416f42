"""Independent Chow-ring oracle for flag varieties.

Schubert classes are formal symbols indexed by Weyl elements in the
codimension convention (sigma_x has codimension l(x)).  Products are built
from two classical rules only:

* the divisor rule  c1(L_lam) . sigma_x = sum <lam, beta_vee> sigma_{x s_beta}
  over positive roots beta with l(x s_beta) = l(x) + 1;
* the Demazure rule  del_i sigma_x = sigma_{x s_i} when l(x s_i) = l(x) - 1,
  else 0;

combined through the Leibniz identity
  del_i(f g) = del_i(f) g + f del_i(g) - c1(L_{alpha_i}) del_i(f) del_i(g)
and the fact that a class of positive codimension is determined by all of its
del_i images.  No series arithmetic or push-pull operators are involved, so
this is a genuinely independent check of the engine's additive
specialization.
"""

from __future__ import annotations

from .errors import CobordiaError


class ChowOracle:
    def __init__(self, rootdatum, word_choice="min"):
        self.rd = rootdatum
        self.w = rootdatum.weyl(word_choice)
        self._reflections = self._root_reflections()
        self._covers = self._cover_table()
        self._products = {}

    def _root_reflections(self):
        """Map positive root -> Weyl index of its reflection."""
        rd, w = self.rd, self.w
        out = {}
        for beta in rd.pos_roots_w:
            cols = []
            for j in range(rd.rank):
                ej = _unit(rd.rank, j)
                p = rd.pairing_w(ej, beta)
                cols.append(tuple(ej[i] - p * beta[i] for i in range(rd.rank)))
            mat = tuple(tuple(cols[j][i] for j in range(rd.rank)) for i in range(rd.rank))
            out[beta] = w.index[mat]
        return out

    def _cover_table(self):
        """For each x: list of (pairing data, x s_beta) with l up by one."""
        w = self.w
        out = []
        for x in range(w.order):
            ups = []
            for beta, sref in self._reflections.items():
                xs = w.mult[x][sref]
                if w.lengths[xs] == w.lengths[x] + 1:
                    ups.append((beta, xs))
            out.append(ups)
        return out

    # -- the two rules -------------------------------------------------------

    def chevalley(self, lam_lat, cls):
        """Multiply a class (dict x -> int) by c1 of the weight lam."""
        rd, w = self.rd, self.w
        out = {}
        for x, c in cls.items():
            if c == 0:
                continue
            for beta, xs in self._covers[x]:
                n = rd.pairing(lam_lat, beta)
                if n:
                    out[xs] = out.get(xs, 0) + c * n
        return {x: c for x, c in out.items() if c}

    def demazure(self, i, cls):
        w = self.w
        out = {}
        for x, c in cls.items():
            xs = w.right_mul_gen[x][i]
            if w.lengths[xs] == w.lengths[x] - 1:
                out[xs] = out.get(xs, 0) + c
        return {x: c for x, c in out.items() if c}

    # -- products -----------------------------------------------------------

    def product(self, u, v):
        """Expansion of sigma_u sigma_v as dict x -> int."""
        if u > v:
            u, v = v, u
        key = (u, v)
        if key in self._products:
            return self._products[key]
        w = self.w
        lu, lv = w.lengths[u], w.lengths[v]
        if lu == 0:
            out = {v: 1}
        elif lv == 0:
            out = {u: 1}
        elif lu + lv > self.rd.N:
            out = {}
        else:
            total = lu + lv
            out = {}
            dimg = {}
            for x in range(w.order):
                if w.lengths[x] != total:
                    continue
                i = w.words[x][-1]
                if i not in dimg:
                    dimg[i] = self._descent_image(u, v, i)
                xs = w.right_mul_gen[x][i]
                c = dimg[i].get(xs, 0)
                if c:
                    out[x] = c
        self._products[key] = out
        return out

    def _descent_image(self, u, v, i):
        """del_i(sigma_u sigma_v) via the Leibniz identity."""
        w = self.w
        usi = w.right_mul_gen[u][i]
        vsi = w.right_mul_gen[v][i]
        du = w.lengths[usi] == w.lengths[u] - 1
        dv = w.lengths[vsi] == w.lengths[v] - 1
        acc = {}

        def add(cls, scale=1):
            for x, c in cls.items():
                acc[x] = acc.get(x, 0) + scale * c

        if du:
            add(self.product(usi, v))
        if dv:
            add(self.product(u, vsi))
        if du and dv:
            alpha = self.rd.simple_roots_lat[i]
            add(self.chevalley(alpha, self.product(usi, vsi)), -1)
        return {x: c for x, c in acc.items() if c}

    def mult_class(self, cls1, cls2):
        out = {}
        for u, a in cls1.items():
            for v, b in cls2.items():
                for x, c in self.product(u, v).items():
                    out[x] = out.get(x, 0) + a * b * c
        return {x: c for x, c in out.items() if c}

    def full_table(self):
        w = self.w
        return {(u, v): self.product(u, v) for u in range(w.order) for v in range(w.order)}

    # -- the zeta-side view ---------------------------------------------------

    def zeta_product(self, u, v):
        """Structure constants in the dimension convention: the class of the
        length-l Schubert cell is sigma indexed by w0 times the element."""
        w = self.w
        w0 = w.w0
        raw = self.product(w.mult[w0][u], w.mult[w0][v])
        return {w.mult[w0][x]: c for x, c in raw.items()}

    def zeta_chevalley(self, lam_lat, u):
        w = self.w
        w0 = w.w0
        raw = self.chevalley(lam_lat, {w.mult[w0][u]: 1})
        return {w.mult[w0][x]: c for x, c in raw.items()}

    # -- self checks -----------------------------------------------------------

    def self_check(self, samples=None):
        """Commutativity, unit, grading and descent-consistency."""
        w = self.w
        report = {"ok": True, "failures": []}
        pairs = samples or [(u, v) for u in range(w.order) for v in range(w.order)]
        for (u, v) in pairs:
            p = self.product(u, v)
            q = self.product(v, u)
            if p != q:
                report["ok"] = False
                report["failures"].append(("commutativity", u, v))
            for x, c in p.items():
                if w.lengths[x] != w.lengths[u] + w.lengths[v]:
                    report["ok"] = False
                    report["failures"].append(("grading", u, v, x))
            # consistency across all descents
            total = w.lengths[u] + w.lengths[v]
            if 0 < total <= self.rd.N:
                for i in range(self.rd.rank):
                    img = self._descent_image(u, v, i)
                    for x, c in p.items():
                        xs = w.right_mul_gen[x][i]
                        if w.lengths[xs] == w.lengths[x] - 1:
                            if img.get(xs, 0) != c:
                                report["ok"] = False
                                report["failures"].append(("descent", u, v, x, i))
        return report


def _unit(n, j):
    return tuple(1 if k == j else 0 for k in range(n))
