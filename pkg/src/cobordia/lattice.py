"""Exact integer matrix algebra: Hermite and Smith normal forms, lattice
membership with certificates, integer linear solving.

Every routine works with arbitrary-precision Python integers.  Matrices in
this package stay small (a few hundred rows at most), so the classical
row-reduction algorithms with intermediate entry reduction are fast enough
and keep coefficient growth under control.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch("entries length != rows*cols")

    @staticmethod
    def from_rows(rows):
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        if any(len(r) != m for r in rows):
            raise DimensionMismatch("ragged rows")
        return IntMatrix(n, m, tuple(x for r in rows for x in r))

    @staticmethod
    def identity(n):
        return IntMatrix.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(n, m):
        return IntMatrix(n, m, (0,) * (n * m))

    def row(self, i):
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self):
        return [self.row(i) for i in range(self.rows)]

    def transpose(self):
        return IntMatrix.from_rows([[self.entries[i * self.cols + j] for i in range(self.rows)]
                                    for j in range(self.cols)])

    def mul(self, other):
        if self.cols != other.rows:
            raise DimensionMismatch("matrix product shape mismatch")
        a, b = self.to_rows(), other.to_rows()
        out = [[sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
               for i in range(self.rows)]
        return IntMatrix.from_rows(out) if out else IntMatrix.zero(0, other.cols)

    def mul_vec(self, v):
        if self.cols != len(v):
            raise DimensionMismatch("matrix-vector shape mismatch")
        return [sum(self.row(i)[k] * v[k] for k in range(self.cols)) for i in range(self.rows)]

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))


# ---------------------------------------------------------------------------
# row-based workhorses (lists of lists, mutated copies)

def _hnf_rows(rows, want_transform=True):
    """Row-style Hermite form.  Returns (h, u) with u unimodular, u*rows == h,
    pivots positive, entries above each pivot reduced into [0, pivot)."""
    a = [list(r) for r in rows]
    n = len(a)
    m = len(a[0]) if a else 0
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)] if want_transform else None

    def addmul(i, j, q):
        ai, aj = a[i], a[j]
        for k in range(m):
            ai[k] += q * aj[k]
        if u is not None:
            ui, uj = u[i], u[j]
            for k in range(n):
                ui[k] += q * uj[k]

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]

    def negate(i):
        a[i] = [-x for x in a[i]]
        if u is not None:
            u[i] = [-x for x in u[i]]

    r = 0
    for c in range(m):
        # euclidean elimination below position r in column c
        while True:
            live = [i for i in range(r, n) if a[i][c] != 0]
            if not live:
                break
            piv = min(live, key=lambda i: abs(a[i][c]))
            swap(r, piv)
            done = True
            for i in range(r + 1, n):
                if a[i][c] != 0:
                    addmul(i, r, -(a[i][c] // a[r][c]))
                    if a[i][c] != 0:
                        done = False
            if done:
                break
        if r < n and a[r][c] != 0:
            if a[r][c] < 0:
                negate(r)
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    addmul(i, r, -q)
            r += 1
            if r == n:
                break
    return a, u


def _nonzero_rows(rows):
    return [r for r in rows if any(x != 0 for x in r)]


def hnf_basis(rows):
    """Canonical basis (HNF nonzero rows) of the lattice spanned by rows."""
    if not rows:
        return []
    h, _ = _hnf_rows(rows, want_transform=False)
    return _nonzero_rows(h)


def _member_rows(v, rows):
    """Express v over the given lattice rows.  Returns the coefficient vector
    over the original rows, or None."""
    if not rows:
        return [] if all(x == 0 for x in v) else None
    if any(len(r) != len(v) for r in rows):
        raise DimensionMismatch("vector length != lattice ambient dimension")
    h, u = _hnf_rows(rows)
    rem = list(v)
    q = [0] * len(h)
    for i, hr in enumerate(h):
        p = next((j for j, x in enumerate(hr) if x != 0), None)
        if p is None:
            continue
        if rem[p] % hr[p] != 0:
            return None
        f = rem[p] // hr[p]
        q[i] = f
        if f:
            rem = [x - f * y for x, y in zip(rem, hr)]
    if any(x != 0 for x in rem):
        return None
    n = len(rows)
    return [sum(q[i] * u[i][j] for i in range(len(h))) for j in range(n)]


def kernel_rows(rows):
    """Basis of the left kernel {x : x*rows == 0} as a saturated lattice."""
    if not rows:
        return []
    h, u = _hnf_rows(rows)
    return [u[i] for i in range(len(h)) if all(x == 0 for x in h[i])]


def matrix_kernel(rows):
    """Basis of the right kernel {x : rows*x == 0}."""
    if not rows:
        return []
    t = [[rows[i][j] for i in range(len(rows))] for j in range(len(rows[0]))]
    return kernel_rows(t)


def intersect_rows(arows, brows):
    """Basis of the intersection of two row lattices in the same ambient."""
    if not arows or not brows:
        return []
    m = len(arows[0])
    if any(len(r) != m for r in brows):
        raise DimensionMismatch("ambient dimension mismatch")
    # x = y*A = z*B  <=>  (y, z) in left kernel of [A; -B]
    stacked = [list(r) for r in arows] + [[-x for x in r] for r in brows]
    out = []
    for k in kernel_rows(stacked):
        y = k[:len(arows)]
        out.append([sum(y[i] * arows[i][j] for i in range(len(arows))) for j in range(m)])
    return hnf_basis(out)


def sum_rows(arows, brows):
    return hnf_basis(list(arows) + list(brows))


def rows_equal(arows, brows):
    return hnf_basis(arows) == hnf_basis(brows)


def rows_contain(arows, brows):
    """True iff span(brows) is a sublattice of span(arows)."""
    return all(_member_rows(r, arows) is not None for r in brows)


def _smith_rows(rows):
    a = [list(r) for r in rows]
    a = [r for r in a if any(r)]
    if not a:
        return []
    n, m = len(a), len(a[0])

    def min_pivot(r0, c0):
        best = None
        for i in range(r0, n):
            for j in range(c0, m):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        return best

    diag = []
    r0 = 0
    c0 = 0
    while True:
        pos = min_pivot(r0, c0)
        if pos is None:
            break
        i, j = pos
        a[r0], a[i] = a[i], a[r0]
        for row in a:
            row[c0], row[j] = row[j], row[c0]
        # clear row and column at (r0, c0); restart if a remainder shrinks the pivot
        while True:
            p = a[r0][c0]
            dirty = False
            for i in range(r0 + 1, n):
                if a[i][c0] % p != 0:
                    q = a[i][c0] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[r0])]
                    a[r0], a[i] = a[i], a[r0]
                    dirty = True
                    break
            if dirty:
                continue
            for i in range(r0 + 1, n):
                q = a[i][c0] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r0])]
            for j in range(c0 + 1, m):
                if a[r0][j] % p != 0:
                    q = a[r0][j] // p
                    for row in a:
                        row[j] -= q * row[c0]
                    for row in a:
                        row[c0], row[j] = row[j], row[c0]
                    dirty = True
                    break
            if dirty:
                continue
            for j in range(c0 + 1, m):
                q = a[r0][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[c0]
            break
        # pivot must divide every remaining entry for the divisibility chain
        p = a[r0][c0]
        bad = None
        for i in range(r0 + 1, n):
            for j in range(c0 + 1, m):
                if a[i][j] % p != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            a[r0] = [x + y for x, y in zip(a[r0], a[bad])]
            continue
        diag.append(abs(p))
        r0 += 1
        c0 += 1
        if r0 >= n or c0 >= m:
            break
    return diag


# ---------------------------------------------------------------------------
# public operations

def hermite_normal_form(m: IntMatrix):
    """Return (h, u) with u unimodular and u*m == h in row Hermite form."""
    h, u = _hnf_rows(m.to_rows())
    if not h:
        return IntMatrix.zero(0, m.cols), IntMatrix.zero(0, 0)
    return IntMatrix.from_rows(h), IntMatrix.from_rows(u)


def smith_invariant_factors(m: IntMatrix):
    """Nonzero invariant factors d1 | d2 | ... of the matrix."""
    return _smith_rows(m.to_rows())


def lattice_member(v, basis: IntMatrix):
    """Decide whether v lies in the row span of basis over the integers.

    Returns (True, certificate) with certificate*basis == v, or (False, None).
    """
    cert = _member_rows(list(v), basis.to_rows())
    return (cert is not None), cert


def solve_integer(a: IntMatrix, b):
    """Solve a*x == b over the integers; None when no integral solution."""
    if a.rows != len(b):
        raise DimensionMismatch("rhs length != matrix rows")
    return _member_rows(list(b), a.transpose().to_rows())


def det(m: IntMatrix):
    """Determinant by fraction-free Bareiss elimination."""
    if m.rows != m.cols:
        raise DimensionMismatch("det of non-square matrix")
    n = m.rows
    a = [m.row(i) for i in range(n)]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def quotient_invariants(ambient_rows, sub_rows):
    """Isomorphism type of span(ambient)/span(sub).

    Returns (corank, factors) where factors are the invariant factors > 1 and
    corank is the rank of the free part.  Raises if sub is not contained in
    ambient.
    """
    amb = hnf_basis(ambient_rows)
    rel = []
    for r in hnf_basis(sub_rows):
        c = _member_rows(r, amb)
        if c is None:
            raise DimensionMismatch("sublattice not contained in ambient lattice")
        rel.append(c)
    facs = _smith_rows(rel) if rel else []
    corank = len(amb) - len(facs)
    return corank, [d for d in facs if d != 1]
