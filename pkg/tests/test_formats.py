import json

import pytest

from nfold import boolcore as bc
from nfold import catoid as ct
from nfold import coalg as cg
from nfold import concur as cc
from nfold import formats
from nfold import posetmon as pm
from nfold import proto as pr
from nfold import relmon as rm
from nfold.boolcore import FormatError


def _objects():
    C3 = bc.chain(3)
    z2 = rm.from_monoid(range(2), lambda a, b: (a + b) % 2, 0, name="Z/2")
    lift = rm.lift_to_algebra(z2)
    X = cg.GradedModule((0, 1), lambda a, b: a + b, 0, {0: bc.boolean(), 1: C3}, name="X")
    yield "semilattice", bc.diamond()
    yield "module-morphism", bc.ModuleMorphism.from_dict(C3, bc.boolean(), {0: 0, 1: 1, 2: 1})
    yield "rel-monoid", z2
    yield "rel-monoid(graded)", rm.shuffle_monoid("ab", 2)
    yield "nfold-rel-monoid", rm.shuffle_relmonoid("ab", 2)
    yield "catoid", ct.pair_catoid()
    yield "n-catoid", ct.parallel_2category()
    yield "pomset", cc.pomset_par(cc.Pomset.make("ab", [(0, 1)]), cc.singleton("c"))
    yield "language", cc.Language.make("ab", 2, ["", "ab", "ba"])
    yield "ordered-monoid", pm.fixture_library()[0]
    yield "b-algebra", lift
    yield "b-algebra(non-unital)", cg.BAlgebra(C3, lambda x, y: 0, None, name="zero product")
    yield "b-coalgebra(free)", cg.incidence_coalgebra(range(2), lambda a, b: a <= b)
    yield "b-coalgebra(module)", cg.word_coalgebra("a", 1).to_module()
    yield "b-coalgebra(no counit)", cg.coalgebra_from_monoid(range(3), lambda a, b: a + b,
                                                             ordered=True, leq=lambda a, b: a <= b)
    yield "double-b-algebra", cg.DoubleBAlgebra(lift.module, [(lift.mult, lift.one),
                                                              (frozenset.intersection, lift.module.top)])
    yield "graded-module", X
    yield "protocol-chain", pr.fixture_chains(2)[-1]


OBJECTS = list(_objects())


@pytest.mark.parametrize("label, obj", OBJECTS, ids=[o[0] for o in OBJECTS])
def test_round_trip(label, obj, tmp_path):
    doc = formats.dump(obj)
    assert doc["kind"] in formats.KINDS
    assert formats.dump(formats.load(doc)) == doc
    text = formats.dumps(obj)
    assert formats.dump(formats.loads(text)) == doc
    path = tmp_path / "x.json"
    formats.write(obj, path)
    assert formats.dump(formats.read(path)) == doc


def test_every_kind_is_covered():
    kinds = {formats.dump(o)["kind"] for _, o in OBJECTS}
    assert kinds == set(formats.KINDS)


@pytest.mark.parametrize("label, obj", OBJECTS, ids=[o[0] for o in OBJECTS])
def test_loaded_objects_check_the_same(label, obj):
    from nfold.cli import check_object

    before = check_object(obj)
    after = check_object(formats.load(formats.dump(obj)))
    assert before.ok == after.ok
    assert before.failed == after.failed


def test_ids():
    for x in (1, "a", (1, "b"), frozenset({1, 2}), ((1, 2), frozenset({"x"}))):
        assert formats.decode_id(json.loads(json.dumps(formats.encode_id(x)))) == x
    for bad in (1.5, None, {"nope": []}):
        with pytest.raises(FormatError):
            formats.decode_id(bad)
    with pytest.raises(FormatError):
        formats.encode_id(True)


def test_semilattice_document():
    doc = {"kind": "semilattice", "elements": [0, 1], "zero": 0,
           "join": [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 1]]}
    M = formats.load(doc)
    assert bc.is_isomorphic(M, bc.boolean())


@pytest.mark.parametrize("text", [
    "not json",
    "[1, 2]",
    '{"kind": "semilattice"}',
    '{"kind": "semilattice", "elements": [0, 1], "zero": 0, "join": [[0, 0, 0]]}',
    '{"kind": "rel-monoid", "carrier": [0], "triples": [[0, 0, 7]], "units": [0]}',
    '{"kind": "rel-monoid", "carrier": [0], "triples": [[0, 0]], "units": [0]}',
    '{"kind": "catoid", "carrier": [0], "mult": [], "s": [[0, 0]], "t": []}',
    '{"kind": "pomset", "labels": ["a"], "order": [[0, 3]]}',
    '{"kind": "protocol-chain", "levels": "abc", "maps": []}',
    '{"kind": "b-algebra", "module": {"kind": "semilattice"}, "mult": [], "one": 0}',
])
def test_malformed_documents(text):
    with pytest.raises(FormatError):
        formats.loads(text)


def test_unknown_kind():
    with pytest.raises(formats.UnknownKind):
        formats.load({"kind": "hopf-algebra"})


def test_unserialisable_object():
    with pytest.raises(FormatError):
        formats.dump(object())
