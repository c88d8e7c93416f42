import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cobordia.lattice import (
    IntMatrix,
    det,
    hermite_normal_form,
    hnf_basis,
    intersect_rows,
    kernel_rows,
    lattice_member,
    quotient_invariants,
    rows_contain,
    rows_equal,
    smith_invariant_factors,
    solve_integer,
)

small_entries = st.integers(min_value=-9, max_value=9)


def random_matrix(draw, max_n=5):
    n = draw(st.integers(min_value=1, max_value=max_n))
    m = draw(st.integers(min_value=1, max_value=max_n))
    rows = [[draw(small_entries) for _ in range(m)] for _ in range(n)]
    return IntMatrix.from_rows(rows)


matrices = st.builds(lambda seed: None, st.integers())


@st.composite
def int_matrices(draw, max_n=5):
    return random_matrix(draw, max_n)


def is_hnf(h):
    rows = h.to_rows()
    pivots = []
    for r in rows:
        p = next((j for j, x in enumerate(r) if x != 0), None)
        pivots.append(p)
    seen = [p for p in pivots if p is not None]
    assert seen == sorted(seen), "pivots not staircase"
    assert [p for p in pivots if p is None] == pivots[len(seen):], "zero rows not at bottom"
    for i, p in enumerate(pivots[:len(seen)]):
        assert rows[i][p] > 0
        for k in range(i):
            assert 0 <= rows[k][p] < rows[i][p]


def test_hnf_identity():
    m = IntMatrix.identity(3)
    h, u = hermite_normal_form(m)
    assert h == m and u == m


def test_hnf_det_preserved():
    m = IntMatrix.from_rows([[2, 4], [6, 8]])
    h, u = hermite_normal_form(m)
    assert abs(det(h)) == abs(det(m)) == 8
    assert u.mul(m) == h
    assert abs(det(u)) == 1


def test_hnf_zero_row_sorted_to_bottom():
    m = IntMatrix.from_rows([[0, 0], [3, 1]])
    h, _ = hermite_normal_form(m)
    assert h.row(1) == [0, 0]


@given(int_matrices())
@settings(max_examples=120, deadline=None)
def test_hnf_invariants(m):
    h, u = hermite_normal_form(m)
    assert u.mul(m) == h
    assert abs(det(u)) == 1
    is_hnf(h)


def test_smith_examples():
    assert smith_invariant_factors(IntMatrix.from_rows([[2, 0], [0, 6]])) == [2, 6]
    assert smith_invariant_factors(IntMatrix.from_rows([[4, 0], [0, 6]])) == [2, 12]
    assert smith_invariant_factors(IntMatrix.zero(2, 2)) == []


def gcd_minors_invariants(m):
    """Brute-force oracle: d_k = gcd of k x k minors divided by d_{k-1}."""
    import itertools, math
    rows = m.to_rows()
    n, c = m.rows, m.cols
    out = []
    prev = 1
    for k in range(1, min(n, c) + 1):
        g = 0
        for ri in itertools.combinations(range(n), k):
            for ci in itertools.combinations(range(c), k):
                sub = IntMatrix.from_rows([[rows[i][j] for j in ci] for i in ri])
                g = math.gcd(g, det(sub))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


@given(int_matrices(max_n=4))
@settings(max_examples=60, deadline=None)
def test_smith_matches_gcd_minor_oracle(m):
    assert smith_invariant_factors(m) == gcd_minors_invariants(m)


def test_smith_invariant_under_unimodular():
    rng = random.Random(7)
    base = IntMatrix.from_rows([[2, 1, 0], [0, 4, 2], [2, 2, 2]])
    facs = smith_invariant_factors(base)
    for _ in range(20):
        rows = base.to_rows()
        for _ in range(6):
            i, j = rng.randrange(3), rng.randrange(3)
            if i != j:
                q = rng.randint(-3, 3)
                rows[i] = [x + q * y for x, y in zip(rows[i], rows[j])]
        cols = [list(c) for c in zip(*rows)]
        for _ in range(6):
            i, j = rng.randrange(3), rng.randrange(3)
            if i != j:
                q = rng.randint(-3, 3)
                cols[i] = [x + q * y for x, y in zip(cols[i], cols[j])]
        m2 = IntMatrix.from_rows([list(r) for r in zip(*cols)])
        assert smith_invariant_factors(m2) == facs


def test_lattice_member_examples():
    basis = IntMatrix.from_rows([[2, 0], [0, 1]])
    ok, cert = lattice_member([0, 0], basis)
    assert ok and cert == [0, 0]
    ok, cert = lattice_member([2, 0], basis)
    assert ok and cert == [1, 0]
    ok, cert = lattice_member([1, 0], basis)
    assert not ok and cert is None
    # exhaustive small-coefficient search oracle
    found = any(a * 2 == 1 and b * 1 == 0 for a in range(-5, 6) for b in range(-5, 6))
    assert not found


def test_solve_integer():
    a = IntMatrix.identity(3)
    assert solve_integer(a, [5, -2, 7]) == [5, -2, 7]
    assert solve_integer(IntMatrix.from_rows([[2]]), [3]) is None
    u = IntMatrix.from_rows([[1, 2, 0], [0, 1, 3], [0, 0, 1]])
    b = [7, -1, 4]
    x = solve_integer(u, b)
    assert u.mul_vec(x) == b


@given(st.lists(st.lists(small_entries, min_size=3, max_size=3), min_size=1, max_size=4),
       st.lists(small_entries, min_size=3, max_size=3))
@settings(max_examples=100, deadline=None)
def test_member_iff_solve(rows, v):
    basis = IntMatrix.from_rows(rows)
    ok, cert = lattice_member(v, basis)
    x = solve_integer(basis.transpose(), v)
    assert ok == (x is not None)
    if ok:
        assert [sum(cert[i] * rows[i][j] for i in range(len(rows))) for j in range(3)] == list(v)


def test_kernel_and_intersection():
    rows = [[1, 2, 3], [2, 4, 6]]
    ker = kernel_rows(rows)
    assert len(ker) == 1
    k = ker[0]
    assert all(sum(k[i] * rows[i][j] for i in range(2)) == 0 for j in range(3))

    a = [[2, 0], [0, 3]]
    b = [[1, 1]]
    inter = intersect_rows(a, b)
    assert rows_equal(inter, [[6, 6]])


def test_quotient_invariants():
    corank, facs = quotient_invariants([[1, 0], [0, 1]], [[2, 0]])
    assert corank == 1 and facs == [2]
    corank, facs = quotient_invariants([[1, 0], [0, 1]], [[1, 0], [0, 1]])
    assert corank == 0 and facs == []
    corank, facs = quotient_invariants([[1, 0], [0, 1]], [])
    assert corank == 2 and facs == []


def test_rows_contain():
    assert rows_contain([[1, 0], [0, 1]], [[3, 4]])
    assert not rows_contain([[2, 0], [0, 2]], [[1, 0]])
    assert hnf_basis([[2, 2], [0, 4]]) == [[2, 2], [0, 4]]
