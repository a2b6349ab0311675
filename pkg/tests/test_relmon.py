import itertools
from math import comb

import pytest
from hypothesis import given, strategies as st

from nfold import boolcore as bc
from nfold import coalg as cg
from nfold import concur as cc
from nfold import relmon as rm

import oracles


def zmod(n):
    return rm.from_monoid(range(n), lambda a, b: (a + b) % n, 0, name=f"Z/{n}")


def lengths(k):
    """0..k under addition, products above k dropped."""
    return rm.RelMonoid.make(range(k + 1), [(a, b, a + b) for a in range(k + 1)
                                            for b in range(k + 1) if a + b <= k], {0})


# -- relational monoids ---------------------------------------------------------------


def test_group_graph_passes():
    assert rm.check_rel_monoid(zmod(2)).ok


def test_truncated_shuffle_is_still_a_relational_monoid():
    # dropping every product longer than the bound drops both bracketings of
    # x y z together, so associativity survives the truncation
    m = rm.shuffle_monoid("ab", 2, graded=False)
    assert not m.fragment
    assert rm.check_rel_monoid(m).ok


def test_shuffle_relation_is_commutative():
    assert rm.is_commutative(rm.shuffle_monoid("ab", 3))
    assert not rm.is_commutative(rm.concat_relmonoid("ab", 3))


def test_broken_unit_is_reported():
    m = rm.RelMonoid.make((0, 1), [(0, 0, 0), (0, 1, 1), (1, 0, 1)], {0, 1})
    rep = rm.check_rel_monoid(m)
    assert not rep.ok


def test_non_associative_relation_is_reported():
    # e is the unit; a*a = {b}, b*a = {a}, a*b = {e}
    carrier = ("e", "a", "b")
    triples = [("e", x, x) for x in carrier] + [(x, "e", x) for x in "ab"]
    triples += [("a", "a", "b"), ("b", "a", "a"), ("a", "b", "e")]
    rep = rm.check_rel_monoid(rm.RelMonoid.make(carrier, triples, {"e"}))
    assert "associativity" in rep.failed


def test_enumeration_matches_brute_force():
    for n in range(3):
        got = set(rm.enumerate_rel_monoids(n))
        want = set(oracles.brute_rel_monoids(n))
        assert got == want


# -- homomorphisms ------------------------------------------------------------------


def test_identity_relation_is_a_hom():
    for m in (zmod(2), zmod(3), rm.shuffle_monoid("ab", 2, graded=False)):
        h = rm.RelHom(m, m, frozenset((x, x) for x in m.carrier))
        rep = rm.check_rel_hom(h)
        assert rep.ok and rep.notes["function_graph"]


def test_word_length_is_a_hom():
    m = rm.shuffle_monoid("ab", 3, graded=False)
    h = rm.RelHom(m, lengths(3), frozenset((w, len(w)) for w in m.carrier))
    assert rm.check_rel_hom(h).ok


def test_empty_relation_breaks_units():
    h = rm.RelHom(zmod(2), zmod(3), frozenset())
    assert "unit" in rm.check_rel_hom(h).failed


def test_non_hom_function():
    h = rm.RelHom(zmod(3), zmod(3), frozenset({(0, 0), (1, 1), (2, 1)}))
    rep = rm.check_rel_hom(h)
    assert "multiplication" in rep.failed
    assert "multiplication(function-form)" in rep.failed


MONOIDS = [zmod(1), zmod(2), zmod(3), lengths(2),
           rm.from_monoid((0, 1), max, 0, name="max"), rm.from_monoid((0, 1), min, 1, name="min")]


@given(st.sampled_from(MONOIDS), st.sampled_from(MONOIDS), st.data())
def test_function_graphs_reduce_to_function_form(X, Y, data):
    f = {a: data.draw(st.sampled_from(Y.carrier)) for a in X.carrier}
    rep = rm.check_rel_hom(rm.RelHom(X, Y, frozenset(f.items())))
    general = not (rep.counts["multiplication"] or rep.counts["unit"])
    reduced = not (rep.counts["multiplication(function-form)"] or rep.counts["unit(function-form)"])
    assert general == reduced


# -- interchange ---------------------------------------------------------------------


def test_concat_and_shuffle_interchange():
    rep = rm.check_nfold(rm.shuffle_relmonoid("ab", 3))
    assert rep.ok
    assert rep.verdict == "partial-fragment"


def test_concat_with_itself_fails_chi():
    P = rm.concat_relmonoid("ab", 3)
    rep = rm.check_lax_interchange(rm.NFoldRelMonoid(P.carrier, (P, P)), 0, 1)
    assert "chi" in rep.failed
    w, x, y, z, missing = rep.laws["chi"][0]
    assert missing


@pytest.mark.parametrize("m", [zmod(2), zmod(3), rm.shuffle_monoid("ab", 3)])
def test_commutative_monoid_interchanges_with_itself(m):
    assert rm.check_lax_interchange(rm.NFoldRelMonoid(m.carrier, (m, m)), 0, 1).ok


def test_interchange_index_errors():
    m = zmod(2)
    with pytest.raises(IndexError):
        rm.check_lax_interchange(rm.NFoldRelMonoid(m.carrier, (m, m)), 1, 0)


def test_chi_over_two_letters_up_to_length_six():
    rep = rm.check_lax_interchange(rm.shuffle_relmonoid("ab", 6), 0, 1)
    assert rep.ok
    assert rep.notes["proper_chi"] is not None


# -- shuffle ------------------------------------------------------------------------


def test_shuffle_examples():
    assert cc.shuffle("a", "b") == {"ab", "ba"}
    assert cc.shuffle("ab", "c") == {"abc", "acb", "cab"}
    for u in ("", "a", "abba"):
        assert cc.shuffle(u, "") == cc.shuffle("", u) == {u}


@pytest.mark.parametrize("u, v", [(u, v) for u in rm.words("ab", 3) for v in rm.words("ab", 3)])
def test_shuffle_matches_brute_force(u, v):
    assert cc.shuffle(u, v) == oracles.brute_shuffle(u, v)
    assert len(cc.shuffle(u, v)) <= comb(len(u) + len(v), len(u))


@pytest.mark.parametrize("u, v", [(u, v) for u in rm.words("ab", 3) for v in rm.words("cd", 3)])
def test_shuffle_of_disjoint_alphabets_is_binomial(u, v):
    assert len(cc.shuffle(u, v)) == comb(len(u) + len(v), len(u))


# -- lifting ------------------------------------------------------------------------


def test_lift_of_z2():
    a = rm.lift_to_algebra(zmod(2))
    assert len(a.module) == 4
    assert cg.check_algebra(a).ok
    one, two = frozenset({0}), frozenset({1})
    assert a.mult(two, two) == one
    assert a.mult(frozenset({0, 1}), two) == frozenset({0, 1})


def test_lift_of_trivial_monoid_is_boolean():
    a = rm.lift_to_algebra(zmod(1))
    assert bc.is_isomorphic(a.module, bc.boolean())
    assert a.one == frozenset({0})


@given(st.sets(st.sampled_from(rm.words("ab", 2))), st.sets(st.sampled_from(rm.words("ab", 2))))
def test_lift_of_shuffle_is_language_shuffle(X, Y):
    m = rm.shuffle_monoid("ab", 4, graded=False)
    got = m.prod_sets(X, Y)
    assert got == cc.lang_product(cc.SHUFFLE, X, Y, maxlen=4)


def _tensor_algebra(A, B):
    T = bc.tensor(A.module, B.module)

    def mult(s, t):
        return T.element([(A.mult(a, c), B.mult(b, d)) for a, b in s.antichain
                          for c, d in t.antichain])

    return T, mult


@pytest.mark.parametrize("m, n", [(zmod(2), zmod(2)), (zmod(2), zmod(1)),
                                  (rm.from_monoid((0, 1), max, 0), zmod(2)),
                                  (zmod(3), rm.from_monoid((0, 1), min, 1))])
def test_lift_of_product_is_tensor_of_lifts(m, n):
    A, B = rm.lift_to_algebra(m), rm.lift_to_algebra(n)
    P = rm.lift_to_algebra(rm.product_relmonoid(m, n))
    T, mult = _tensor_algebra(A, B)

    def phi(S):
        return T.element([(frozenset({x}), frozenset({y})) for x, y in S])

    images = {phi(S) for S in P.module}
    assert len(images) == len(P.module) == len(T)
    assert phi(P.one) == T.pure(A.one, B.one)
    for S, R in itertools.product(P.module.elements, repeat=2):
        assert phi(P.mult(S, R)) == mult(phi(S), phi(R))
