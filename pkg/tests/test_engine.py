import random

import pytest

from cobordia.chevalley import ChowOracle
from cobordia.coeffs import GradedCoefficient
from cobordia.engine import Theory
from cobordia.errors import NotInSpan
from cobordia.roots import build_root_datum, group_datum


def theory(type_label="A1", lattice="sc", coeffs="additive", **kw):
    return Theory(build_root_datum(type_label, lattice), coeffs, **kw)


def as_int_dict(expansion):
    out = {}
    for e, c in expansion.items():
        assert c.poly.keys() == {tuple([0] * len(c.ring.gens))} or c.is_zero()
        if not c.is_zero():
            out[e] = c.poly[(0,) * len(c.ring.gens)]
    return out


def test_point_class_a1():
    th = theory("A1", "sc", "additive")
    pt = th.point_class()
    assert pt.support() == [0]
    # one negative root, x_{-alpha} = -2x in the weight basis
    assert pt.restriction(0).terms == {(1,): {(): -2}}
    assert th.pushforward_to_point(pt) == th.coeffs.one()


def test_point_normalization_all_types():
    for t, lat in [("A1", "sc"), ("A1", "adjoint"), ("A2", "sc"), ("B2", "sc"), ("A1xA1", "so4")]:
        for kind in ("additive", "multiplicative"):
            th = theory(t, lat, kind)
            assert th.pushforward_to_point(th.point_class()) == th.coeffs.one()


def test_push_pull_point_support():
    th = theory("A2", "sc", "additive")
    a = th.push_pull(0, th.point_class())
    assert a.support() == [0, th.weyl.gen_index(0)]


def test_fundamental_class_additive_is_one():
    th = theory("B2", "sc", "additive")
    top = th.zeta(th.weyl.w0)
    one = th.S.one()
    for e in range(th.weyl.order):
        assert top.restriction(e).sub(one).is_zero()


def test_pi_of_one_a1_multiplicative():
    th = theory("A1", "sc", "multiplicative")
    one = th.zeta(th.weyl.w0)
    val = th.pushforward_to_point(one)
    # the residue sum of 1/x + 1/(-x) for the multiplicative law is b
    assert val.poly == {(1,): 1}


def test_expand_indicator_and_zero():
    th = theory("A2", "sc", "additive")
    for e in range(th.weyl.order):
        got = as_int_dict(th.expand_in_basis(th.zeta(e)))
        assert got == {e: 1}
    assert th.expand_in_basis(th.zeta(0).sub(th.zeta(0))) == {}


def test_expansion_triangularity():
    th = theory("B2", "sc", "additive")
    w = th.weyl
    for e in range(w.order):
        z = th.zeta(e)
        for v in z.support():
            assert w.bruhat_leq(v, e)


def test_convention_report():
    for t, lat in [("A1", "sc"), ("A1", "adjoint"), ("A2", "sc")]:
        th = theory(t, lat, "additive")
        rep = th.convention_report()
        assert rep["ok"], rep


def test_duality_universal_a2():
    th = theory("A2", "sc", "universal", trunc=3)
    rep = th.convention_report()
    assert rep["point_normalized"] and rep["duality"]


def test_structure_constants_match_oracle_additive():
    for t, lat in [("A1", "sc"), ("A1", "adjoint"), ("A2", "sc"), ("A2", "adjoint"),
                   ("A1xA1", "sc"), ("A1xA1", "so4"), ("B2", "sc")]:
        th = theory(t, lat, "additive")
        oracle = ChowOracle(th.rd)
        w = th.weyl
        for u in range(w.order):
            for v in range(w.order):
                got = as_int_dict(th.multiply_basis(u, v))
                assert got == oracle.zeta_product(u, v), (t, lat, u, v)


def test_oracle_self_check_small():
    for t in ("A2", "B2"):
        rep = ChowOracle(build_root_datum(t)).self_check()
        assert rep["ok"], rep["failures"][:3]


def test_characteristic_map_is_ring_hom():
    th = theory("A2", "sc", "universal", trunc=3)
    u = th.S.x_of_weight((1, 0))
    v = th.S.x_of_weight((0, 1))
    lhs = th.characteristic_class(u.mul(v))
    rhs = th.characteristic_class(u).mul(th.characteristic_class(v))
    assert lhs.sub(rhs).is_zero()
    assert th.characteristic_class(th.S.zero()).is_zero()


def test_characteristic_chevalley_a1():
    th = theory("A1", "sc", "additive")
    c = th.characteristic_of_weight((1,))
    assert as_int_dict(th.expand_in_basis(c)) == {0: 1}


def test_expand_matches_pairing_expansion():
    th = theory("A2", "sc", "universal", trunc=3)
    w = th.weyl
    rng = random.Random(2)
    for _ in range(4):
        u = rng.randrange(w.order)
        v = rng.randrange(w.order)
        f = th.zeta(u).mul(th.zeta(v))
        solved = th.expand_in_basis(f)
        paired = th.pairing_expand(f)
        assert set(solved) == set(paired)
        for e in solved:
            assert solved[e] == paired[e]


def test_degree_bound_on_expansions():
    th = theory("B2", "sc", "universal", trunc=4)
    w = th.weyl
    for u in range(w.order):
        for v in range(w.order):
            exp = th.multiply_basis(u, v)
            lu, lv = w.lengths[u], w.lengths[v]
            for e, c in exp.items():
                # coefficient degree = deg(zeta_u zeta_v) - deg(zeta_e) <= 0
                codeg = (2 * th.N - lu - lv) - (th.N - w.lengths[e])
                assert c.degree == codeg
                assert codeg <= 0
                assert th.coeffs.is_integral(c)


def test_not_in_span_detected():
    th = theory("A1", "sc", "additive")
    from cobordia.engine import GKMClass
    bogus = GKMClass(th, {0: th.S.one()})
    with pytest.raises(NotInSpan):
        th.expand_in_basis(bogus)


def test_specialize_class_commutes():
    rd = build_root_datum("A2", "sc")
    uni = Theory(rd, "universal", trunc=3)
    add = Theory(rd, "additive", trunc=3)
    w = uni.weyl
    # specialization sends basis classes to basis classes
    for e in range(w.order):
        img = uni.specialize_class(uni.zeta(e), add)
        assert img.sub(add.zeta(e)).is_zero()
    # and commutes with products and pushforward
    f = uni.zeta(1).mul(uni.zeta(2))
    img = uni.specialize_class(f, add)
    direct = add.zeta(1).mul(add.zeta(2))
    assert img.sub(direct).is_zero()
    from cobordia.coeffs import specialize
    assert specialize(uni.pushforward_to_point(f), add.coeffs) == add.pushforward_to_point(direct)


def test_non_reduced_word_class_still_in_span():
    th = theory("A2", "sc", "universal", trunc=3)
    f = th.bott_samelson_class((0, 0))
    exp = th.expand_in_basis(f)  # must not raise
    assert exp


def test_g2_multiplication_identity():
    """Codimension-one products for the G2 universal table reproduce the
    published coefficients: with P = Z12121, Q = Z21212 and a1 the degree -1
    coefficient generator,
      P*P = 3*Z2121 + 3a1*Z121 + ...
      P*Q = Z1212 + Z2121 + a1*Z121 + a1*Z212 + ...
      Q*Q = Z1212 + ...
    modulo classes of codimension >= 4.  The identity pins the word
    conventions up to which simple root is called the first one and up to one
    unit in degree -1, so the test quantifies over those two choices.
    """
    th = theory("G2", "sc", "universal", precision=18, trunc=6)
    w = th.weyl
    idx = {w.words[e]: e for e in range(w.order)}
    a11 = th.fgl.get(1, 1)
    one = th.coeffs.one()

    def coeff(exp, e):
        return exp.get(e, th.coeffs.zero())

    matched = None
    for relabel in (lambda i: i, lambda i: 1 - i):
        def el(*letters):
            return idx[tuple(relabel(i - 1) for i in letters)]

        P = el(1, 2, 1, 2, 1)
        Q = el(2, 1, 2, 1, 2)
        z1212, z2121 = el(1, 2, 1, 2), el(2, 1, 2, 1)
        z121, z212 = el(1, 2, 1), el(2, 1, 2)
        pp = th.multiply_basis(P, P)
        pq = th.multiply_basis(P, Q)
        qq = th.multiply_basis(Q, Q)
        ints_ok = (coeff(pp, z1212).is_zero() and coeff(pp, z2121) == 3 * one
                   and coeff(pq, z1212) == one and coeff(pq, z2121) == one
                   and coeff(qq, z1212) == one and coeff(qq, z2121).is_zero())
        if not ints_ok:
            continue
        for sign in (1, -1):
            a1 = sign * a11
            if (coeff(pp, z121) == 3 * a1 and coeff(pp, z212).is_zero()
                    and coeff(pq, z121) == a1 and coeff(pq, z212) == a1
                    and coeff(qq, z121).is_zero() and coeff(qq, z212).is_zero()):
                matched = ("identity" if relabel(0) == 0 else "swapped", sign)
        if matched:
            break
    assert matched is not None
