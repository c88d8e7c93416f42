import random

import pytest

from cobordia.coeffs import (
    CoeffRing,
    CoeffRingSpec,
    fgl_table_for,
    formal_inverse,
    lazard_degree_basis,
    n_series,
    parse_fgl_file,
    specialize,
    universal_fgl,
    useries_fgl_eval,
)
from cobordia.errors import FGLFileError


def uring(D):
    return CoeffRing(CoeffRingSpec("universal", D))


def test_universal_fgl_degree_one():
    table = universal_fgl(1)
    ring = table.ring
    a11 = table.get(1, 1)
    assert a11.degree == -1
    # the unique basis element of the degree -1 component
    basis = ring.degree_basis(1)
    assert len(basis) == 1
    assert a11 == basis[0] or a11 == -1 * basis[0]
    # log/exp expansion pins a11 = -2 m1
    assert a11.poly == {(1,): -2}


def test_partition_ranks():
    ring = uring(6)
    expected = {0: 1, 1: 1, 2: 2, 3: 3, 4: 5, 5: 7, 6: 11}
    for d, p in expected.items():
        assert len(ring.degree_basis(d)) == p


def test_lazard_degree_basis_function():
    assert len(lazard_degree_basis(4, trunc=4)) == 5
    assert [b.poly for b in lazard_degree_basis(0, trunc=2)] == [{(0, 0): 1}]


def test_universal_coeffs_integral_and_homogeneous():
    table = universal_fgl(4)
    ring = table.ring
    for (i, j) in table.pairs():
        c = table.get(i, j)
        assert c.degree == 1 - i - j
        assert ring.is_integral(c)
        cert = ring.integral_coords_amono(c)
        assert cert is not None


def test_non_integral_detected():
    ring = uring(2)
    m1 = ring.generator("m1")
    m2 = ring.generator("m2")
    assert not ring.is_integral(m1)
    assert ring.is_integral(2 * m1)
    assert not ring.is_integral(m2)
    # 3 m2 = a11^2 - a12 is integral; the reduced degree -2 lattice is
    # spanned by 4 m1^2 and 3 m2
    assert ring.is_integral(3 * m2)
    rows = [b.poly for b in ring.degree_basis(2)]
    assert {(0, 1): 3} in rows and {(2, 0): 4} in rows


def test_specialize_basics():
    table = universal_fgl(3)
    ring = table.ring
    a11 = table.get(1, 1)
    add = CoeffRing(CoeffRingSpec("additive", 3))
    mult = CoeffRing(CoeffRingSpec("multiplicative", 3))
    assert specialize(a11, add).is_zero()
    img = specialize(a11, mult)
    assert img.poly == {(1,): -1}  # -b
    deep = table.get(1, 2)
    assert specialize(deep, add).is_zero()


def test_specialize_is_ring_hom_on_random_products():
    table = universal_fgl(4)
    ring = table.ring
    mult = CoeffRing(CoeffRingSpec("multiplicative", 4))
    rng = random.Random(11)
    pairs = table.pairs()
    for _ in range(25):
        a = table.get(*rng.choice(pairs))
        b = table.get(*rng.choice(pairs))
        if -(a.degree + b.degree) > ring.trunc:
            continue
        lhs = specialize(a * b, mult)
        rhs = specialize(a, mult) * specialize(b, mult)
        assert lhs == rhs


def test_formal_inverse():
    add = CoeffRing(CoeffRingSpec("additive", 4))
    inv = formal_inverse(fgl_table_for(add), 4)
    assert inv[1].poly == {(): -1} and inv[2].is_zero() and inv[3].is_zero()

    mult = CoeffRing(CoeffRingSpec("multiplicative", 4))
    minv = formal_inverse(fgl_table_for(mult), 4)
    # -x - b x^2 - b^2 x^3 - ...
    assert minv[1].poly == {(0,): -1}
    assert minv[2].poly == {(1,): -1}
    assert minv[3].poly == {(2,): -1}

    utab = universal_fgl(3)
    uinv = formal_inverse(utab, 3)
    assert uinv[1].poly == {(0, 0, 0): -1}
    assert uinv[2] == utab.get(1, 1)
    # substitute back: F(x, inv) = 0
    ring = utab.ring
    top = 3
    x = [{} for _ in range(top + 1)]
    x[1] = ring.one().poly
    val = useries_fgl_eval(utab, x, [c.poly for c in uinv], top)
    assert all(not ring._normalize(v) for v in val)


def test_n_series():
    add = CoeffRing(CoeffRingSpec("additive", 4))
    s = n_series(fgl_table_for(add), 5, 4)
    assert s[1].poly == {(): 5} and all(s[k].is_zero() for k in (2, 3, 4))

    mult = CoeffRing(CoeffRingSpec("multiplicative", 4))
    two = n_series(fgl_table_for(mult), 2, 4)
    assert two[1].poly == {(0,): 2}
    assert two[2].poly == {(1,): -1}
    assert two[3].is_zero()

    tab = fgl_table_for(mult)
    one = n_series(tab, 1, 4)
    neg = n_series(tab, -1, 4)
    inv = formal_inverse(tab, 4)
    assert one[1].poly == {(0,): 1} and all(one[k].is_zero() for k in (2, 3, 4))
    assert all(a == b for a, b in zip(neg, inv))


@pytest.mark.parametrize("p", [2, 3])
def test_p_series_mod_p_multiplicative(p):
    ring = CoeffRing(CoeffRingSpec("multiplicative", p + 1, modulus=p))
    s = n_series(fgl_table_for(ring), p, p + 1)
    for k in range(1, p + 2):
        if k == p:
            assert s[k].poly == {(p - 1,): 1}
        else:
            assert s[k].is_zero()


def test_mod_n_universal_zero_test():
    ring = CoeffRing(CoeffRingSpec("universal", 2, modulus=2))
    tab = fgl_table_for(ring)
    a11 = tab.get(1, 1)
    assert not a11.is_zero()
    assert (2 * a11).is_zero()
    assert not (3 * a11).is_zero()


def test_fgl_file_roundtrip():
    text = """
    fgl ktheory generators b:-1
    a 1 1 = -b
    """
    spec = parse_fgl_file(text, trunc=3)
    ring = CoeffRing(spec)
    tab = fgl_table_for(ring)
    assert tab.get(1, 1).poly == {(1,): -1}
    assert tab.get(2, 2).is_zero()

    inv = formal_inverse(tab, 3)
    assert inv[2].poly == {(1,): -1}


def test_fgl_file_errors():
    with pytest.raises(FGLFileError):
        parse_fgl_file("a 1 1 = 2", trunc=2)
    with pytest.raises(FGLFileError):
        parse_fgl_file("fgl t generators v:-1\na 1 1 = w", trunc=2)
    with pytest.raises(FGLFileError):
        parse_fgl_file("fgl t generators v:-1\na 1 2 = v^2\na 2 1 = 2*v^2", trunc=3)
    with pytest.raises(FGLFileError):
        # wrong homogeneous degree
        parse_fgl_file("fgl t generators v:-1\na 1 1 = v^2", trunc=3)
