import itertools

import pytest
from hypothesis import given, strategies as st

from nfold import posetmon as pm

LIBRARY = pm.fixture_library()


def is_commutative(m, k):
    op = m.op(k)
    return all(op(a, b) == op(b, a) for a, b in itertools.product(m.elements, repeat=2))


COMMUTATIVE = [m for m in LIBRARY if is_commutative(m, 1)]


def chain4():
    return LIBRARY[0]


# -- interchange inequalities -------------------------------------------------------


@pytest.mark.parametrize("m", LIBRARY, ids=lambda m: m.name)
def test_library_chains_join_product_meet(m):
    rep = pm.check_nfold_poset(m)
    assert rep.ok, rep.failed


def test_join_then_product_is_subdistributive():
    m = chain4()
    rep = pm.check_po_double(m, 0, 1)
    assert rep.ok
    join, op = m.op(0), m.op(1)
    for a, b, c, d in itertools.product(m.elements, repeat=4):
        assert join(op(a, b), op(c, d)) <= op(join(a, c), join(b, d))


@pytest.mark.parametrize("m", COMMUTATIVE, ids=lambda m: m.name)
def test_commutative_product_repeated_gives_equalities(m):
    rep = pm.check_nfold_poset(pm.commutative_repeat(m, 1, 3))
    assert rep.ok
    for i, j in itertools.combinations(range(3), 2):
        assert pm.check_po_double(pm.commutative_repeat(m, 1, 3), i, j).notes["all_equalities"]


@pytest.mark.parametrize("m", COMMUTATIVE, ids=lambda m: m.name)
def test_repetition_preserves_checks(m):
    r = pm.repeat(m, 1)
    assert len(r.ops) == 4
    assert pm.check_nfold_poset(r).ok


def test_repeating_a_non_commutative_product_breaks_chi():
    m = pm.relations_lom(2)
    assert not is_commutative(m, 1)
    rep = pm.check_nfold_poset(pm.commutative_repeat(m, 1, 2))
    assert rep.failed == ["[⊙0,⊙1].chi"]


def test_natural_numbers_fail_only_nu():
    rep = pm.check_po_double(pm.natural_numbers(20), 0, 1)
    assert rep.failed == ["nu"]
    assert rep.laws["nu"] == [(2, 1)]


def test_index_errors():
    m = chain4()
    with pytest.raises(IndexError):
        pm.check_po_double(m, 1, 1)
    with pytest.raises(IndexError):
        pm.check_po_double(m, 0, 3)
    with pytest.raises(IndexError):
        pm.check_poset_monoid_object(m, 0, 4)


def test_broken_order_is_reported():
    m = pm.OrderedMonoid((0, 1), lambda a, b: True, [(max, 0)], name="collapsed")
    rep = pm.check_ordered_monoid(m)
    assert "partial-order" in rep.failed


def test_non_monotone_product_is_reported():
    m = pm.OrderedMonoid((0, 1), lambda a, b: a <= b, [(lambda a, b: (a + b) % 2, 0)])
    rep = pm.check_ordered_monoid(m)
    assert rep.failed == ["monotone[op0]"]


# -- boolean ring example -------------------------------------------------------------


def test_boolean_ring_bound_one():
    rep = pm.check_boolean_ring_example(1)
    assert rep.ok
    assert rep.notes["example(1,1,1,1)"] == (6, 8)


def test_boolean_ring_bound_twenty():
    assert pm.check_boolean_ring_example(20).ok


def test_boolean_ring_bound_check():
    with pytest.raises(ValueError):
        pm.check_boolean_ring_example(0)


# -- monoid objects ---------------------------------------------------------------------


def test_unit_is_a_lax_lax_oplax_monoid_object():
    m = chain4()
    assert pm.check_poset_monoid_object(m, m.unit(1), 2).ok


def test_bottom_with_no_lax_products():
    for m in LIBRARY:
        assert pm.check_poset_monoid_object(m, m.unit(0), 0).ok


def test_element_outside_the_units_fails():
    m = pm.fixture_library()[1]  # Łukasiewicz chain: units 0, 3, 3
    rep = pm.check_poset_monoid_object(m, 1, 1)
    assert not rep.ok
    assert "multiplication[∨]" not in rep.failed
    assert rep.laws["comultiplication[⊙]"] == [(1, 0)]


@given(st.sampled_from(LIBRARY), st.integers(0, 3), st.data())
def test_monoid_object_needs_the_unit_bounds(m, lax, data):
    x = data.draw(st.sampled_from(m.elements))
    rep = pm.check_poset_monoid_object(m, x, lax)
    if lax > 0 and not m.leq(m.unit(lax - 1), x):
        assert "lower-unit" in rep.failed
    if lax < 3 and not m.leq(x, m.unit(lax)):
        assert "upper-unit" in rep.failed
