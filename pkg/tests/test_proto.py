import itertools
import random

import pytest
from hypothesis import given, strategies as st

from nfold import proto as pr
from nfold.proto import ProtocolChain

import oracles

FIX1 = pr.fixture_chains(1, count=5)
FIX2 = pr.fixture_chains(2, count=6)


def arrow(A, name):
    """A protocol p: A -> Q given as {answer: question}."""
    return pr.chain_from_arrow(A, sorted(set(A.values())), name=name)


@st.composite
def chains(draw, n=2, max_size=3):
    seed = draw(st.integers(0, 10 ** 6))
    return pr.random_chain(n, max_size, random.Random(seed), name=draw(st.sampled_from("XYZ")))


# -- construction ---------------------------------------------------------------------


def test_chain_basics():
    X = ProtocolChain.make([("q",), ("a", "b")], [{"a": "q", "b": "q"}])
    assert X.n == 2 and X.sizes() == (1, 2)
    assert X.level(0) == ("*",)
    assert X.down(1, "q") == "*"
    assert X.fiber(1, "q") == ("a", "b")
    assert pr.check_chain(X).ok


def test_bad_map_is_reported():
    X = ProtocolChain.make([("q",), ("a",)], [{"a": "zz"}])
    assert pr.check_chain(X).failed == ["maps"]
    Y = ProtocolChain.make([("q",), ("a",)], [])
    assert not pr.check_chain(Y).ok


def test_length_mismatch_and_range():
    with pytest.raises(ValueError):
        pr.tensor_r(FIX1[0], FIX2[0], 0)
    with pytest.raises(ValueError):
        pr.tensor_r(FIX2[0], FIX2[1], 3)
    with pytest.raises(ValueError):
        pr.tensor_r(FIX2[0], FIX2[1], -1)


def test_top_r_is_pointwise_product():
    for X, Y in itertools.product(FIX2, repeat=2):
        assert pr.is_pointwise_product(X, Y)


def test_zero_r_is_pointwise_disjoint_union():
    for X, Y in itertools.product(FIX2, repeat=2):
        assert pr.is_pointwise_disjoint_union(X, Y)


def test_unit_chain_shape():
    assert pr.unit_chain(3, 1).sizes() == (1, 0, 0)
    assert pr.unit_chain(3, 3).sizes() == (1, 1, 1)
    assert pr.check_chain(pr.unit_chain(3, 2)).ok


# -- isomorphism -------------------------------------------------------------------------


def test_isomorphism_matches_brute_force():
    pool = FIX2 + [pr.random_chain(2, 2, random.Random(s)) for s in range(12)]
    for X, Y in itertools.product(pool, repeat=2):
        f = pr.find_chain_isomorphism(X, Y)
        assert (f is not None) == oracles.brute_chain_iso(X, Y)
        if f is not None:
            assert pr.is_chain_morphism(X, Y, f) and pr.is_injective(f)


def test_isomorphism_of_relabelled_chain():
    X = FIX2[-1]
    ren = {x: x.upper() for l in X.levels for x in l}
    Y = ProtocolChain.make([[ren[x] for x in reversed(l)] for l in X.levels],
                           [{ren[a]: ren[b] for a, b in m} for m in X.maps])
    f = pr.find_chain_isomorphism(X, Y)
    assert f is not None and pr.is_chain_morphism(X, Y, f) and pr.is_injective(f)


def test_different_shapes_are_not_isomorphic():
    X = ProtocolChain.make([("q", "p"), ("a", "b")], [{"a": "q", "b": "q"}])
    Y = ProtocolChain.make([("q", "p"), ("a", "b")], [{"a": "q", "b": "p"}])
    assert pr.find_chain_isomorphism(X, Y) is None
    assert pr.canonical_chain(X) != pr.canonical_chain(Y)


# -- monoidal laws ---------------------------------------------------------------------------


@pytest.mark.parametrize("r", [0, 1, 2])
def test_monoidal_laws_on_two_level_fixtures(r):
    rep = pr.check_proto_monoidal(2, r, FIX2, triples=10)
    assert rep.ok, rep.failed


@pytest.mark.parametrize("r", [0, 1])
def test_monoidal_laws_on_one_level_fixtures(r):
    assert pr.check_proto_monoidal(1, r, FIX1, triples=10).ok


def test_unit_law():
    for r in range(3):
        one = pr.unit_chain(2, r)
        for X in FIX2:
            assert pr.find_chain_isomorphism(pr.tensor_r(X, one, r), X) is not None


def test_associativity_on_random_triples():
    rng = random.Random(3)
    for _ in range(10):
        X, Y, Z = (pr.random_chain(2, 3, rng, name=c) for c in "XYZ")
        lhs = pr.tensor_r(pr.tensor_r(X, Y, 1), Z, 1)
        rhs = pr.tensor_r(X, pr.tensor_r(Y, Z, 1), 1)
        assert pr.find_chain_isomorphism(lhs, rhs) is not None


def test_interchange_injection_on_one_level_fixtures():
    for W, X, Y, Z in itertools.product(FIX1[:4], repeat=4):
        rep = pr.check_chi(W, X, Y, Z, 0, 1)
        assert rep.ok


def test_interchange_needs_r_below_s():
    with pytest.raises(ValueError):
        pr.chi_map(*FIX1[:4], 1, 1)


def test_interchange_is_not_always_surjective():
    X = ProtocolChain.make([("a", "b")], [])
    rep = pr.check_chi(X, X, X, X, 0, 1)
    assert rep.ok and rep.notes["surjective"] is False


# -- server-side choice ------------------------------------------------------------------------


def test_server_side_choice_fibers():
    p1 = arrow({"yes": "q", "no": "q", "ok": "r"}, "p1")
    p2 = arrow({"x": "s", "y": "t"}, "p2")
    T = pr.tensor_r(p1, p2, 1)
    for q1, q2 in itertools.product(p1.level(1), p2.level(1)):
        fiber = set(T.fiber(1, (q1, q2)))
        want = {("L", a, q2) for a in p1.fiber(1, q1)} | {("R", q1, b) for b in p2.fiber(1, q2)}
        assert fiber == want
        assert len(fiber) == len(p1.fiber(1, q1)) + len(p2.fiber(1, q2))
    assert pr.fiber_law(p1, p2, 1).ok


def test_one_stage_disjoint_union():
    A1 = ProtocolChain.make([("a", "b")], [])
    A2 = ProtocolChain.make([("c",)], [])
    T = pr.tensor_r(A1, A2, 0)
    assert set(T.fiber(0, "*")) == {("L", "a", "*"), ("L", "b", "*"), ("R", "*", "c")}


@given(chains(), chains(), st.integers(0, 2))
def test_fiber_and_cardinality_laws(X, Y, r):
    assert pr.fiber_law(X, Y, r).ok
    assert pr.cardinality_law(X, Y, r)


@given(chains(), chains())
def test_symmetry(X, Y):
    for r in range(3):
        assert pr.find_chain_isomorphism(pr.tensor_r(X, Y, r), pr.tensor_r(Y, X, r)) is not None


@given(chains(n=2, max_size=2), chains(n=2, max_size=2), chains(n=2, max_size=2),
       chains(n=2, max_size=2))
def test_interchange_injective_for_all_r_below_s(W, X, Y, Z):
    for r, s in ((0, 1), (0, 2), (1, 2)):
        assert pr.check_chi(W, X, Y, Z, r, s).ok
