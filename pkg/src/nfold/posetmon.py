"""Partially ordered monoids with several products.

In a poset every diagram commutes, so an n-fold monoidal structure on a
poset is just a list of monotone monoid structures whose pairs satisfy four
inequalities.  Structures are numbered from 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .report import Report


@dataclass
class OrderedMonoid:
    """A finite poset with products ``ops = [(op, unit), ...]``.

    Products may leave the carrier (the natural numbers checked on a finite
    range, say); laws are quantified over the carrier only and evaluated
    exactly.
    """

    elements: tuple
    leq: Callable
    ops: list
    name: str = "ordered-monoid"
    labels: list = field(default_factory=list)

    def __post_init__(self):
        self.elements = tuple(self.elements)
        self.ops = [tuple(o) for o in self.ops]

    def op(self, i):
        return self.ops[i][0]

    def unit(self, i):
        return self.ops[i][1]

    def label(self, i) -> str:
        return self.labels[i] if i < len(self.labels) else f"op{i}"


def check_ordered_monoid(m: OrderedMonoid, exhaustive_order: bool = True) -> Report:
    """The order is a partial order; every product is associative, unital and
    monotone in each argument."""
    rep = Report(m.name)
    E, le = m.elements, m.leq
    if exhaustive_order:
        rep.law("partial-order")
        for a in E:
            if not le(a, a):
                rep.fail("partial-order", ("reflexive", a))
            for b in E:
                if a != b and le(a, b) and le(b, a):
                    rep.fail("partial-order", ("antisymmetric", a, b))
                for c in E:
                    if le(a, b) and le(b, c) and not le(a, c):
                        rep.fail("partial-order", ("transitive", a, b, c))
    for k, (op, one) in enumerate(m.ops):
        tag = f"[{m.label(k)}]"
        for law in ("associativity", "unit", "monotone"):
            rep.law(law + tag)
        for a in E:
            if op(one, a) != a or op(a, one) != a:
                rep.fail("unit" + tag, a)
            for b in E:
                for c in E:
                    if op(op(a, b), c) != op(a, op(b, c)):
                        rep.fail("associativity" + tag, (a, b, c))
                    if le(a, b) and not (le(op(a, c), op(b, c)) and le(op(c, a), op(c, b))):
                        rep.fail("monotone" + tag, (a, b, c))
    return rep.finish()


def check_po_double(m: OrderedMonoid, i: int, j: int) -> Report:
    """The four interchange inequalities between products i < j.

    chi:  (a ⊙j b) ⊙i (c ⊙j d) <= (a ⊙i c) ⊙j (b ⊙i d)
    zeta: 1i <= 1i ⊙j 1i
    nu:   1j ⊙i 1j <= 1j
    iota: 1i <= 1j
    """
    if not 0 <= i < j < len(m.ops):
        raise IndexError(f"need 0 <= i < j < {len(m.ops)}, got {i}, {j}")
    (pi, ui), (pj, uj) = m.ops[i], m.ops[j]
    le = m.leq
    rep = Report(f"{m.name}[{m.label(i)},{m.label(j)}]")
    rep.law("chi")
    equalities = True
    for a, b, c, d in itertools.product(m.elements, repeat=4):
        lhs = pi(pj(a, b), pj(c, d))
        rhs = pj(pi(a, c), pi(b, d))
        if not le(lhs, rhs):
            rep.fail("chi", (a, b, c, d, lhs, rhs))
        elif lhs != rhs:
            equalities = False
    rep.check("zeta", le(ui, pj(ui, ui)), (ui, pj(ui, ui)))
    rep.check("nu", le(pi(uj, uj), uj), (pi(uj, uj), uj))
    rep.check("iota", le(ui, uj), (ui, uj))
    equalities = equalities and pj(ui, ui) == ui and pi(uj, uj) == uj and ui == uj
    rep.notes["all_equalities"] = equalities and rep.ok
    return rep.finish()


def check_nfold_poset(m: OrderedMonoid) -> Report:
    rep = Report(m.name)
    rep.merge(check_ordered_monoid(m))
    for i, j in itertools.combinations(range(len(m.ops)), 2):
        rep.merge(check_po_double(m, i, j), prefix=f"[{m.label(i)},{m.label(j)}].")
    return rep.finish()


def check_boolean_ring_example(bound: int) -> Report:
    """Addition together with ``a ⊙ b = a + b + ab`` (unit 0) on 0..bound.

    Everything is computed in exact integers; only the quantifiers are
    restricted to the range.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")

    def odot(a, b):
        return a + b + a * b

    R = range(bound + 1)
    rep = Report(f"boolean-ring(0..{bound})")
    for law in ("subdistributive", "associativity", "monotone", "shared-unit"):
        rep.law(law)
    for a, b, c, d in itertools.product(R, repeat=4):
        if not odot(a, b) + odot(c, d) <= odot(a + c, b + d):
            rep.fail("subdistributive", (a, b, c, d))
    for a, b, c in itertools.product(R, repeat=3):
        if odot(odot(a, b), c) != odot(a, odot(b, c)):
            rep.fail("associativity", (a, b, c))
        if a <= b and odot(a, c) > odot(b, c):
            rep.fail("monotone", (a, b, c))
    for a in R:
        if odot(a, 0) != a or odot(0, a) != a or a + 0 != a:
            rep.fail("shared-unit", a)
    rep.notes["example(1,1,1,1)"] = (odot(1, 1) + odot(1, 1), odot(2, 2))
    return rep.finish()


def check_poset_monoid_object(m: OrderedMonoid, x, lax_count: int) -> Report:
    """Is ``x`` a monoid object that is lax for the first ``lax_count``
    products and oplax for the rest?

    Checks ``unit[lax_count-1] <= x <= unit[lax_count]`` (a missing end is
    skipped), ``x ⊙i x <= x`` for the lax products and ``x <= x ⊙i x`` for
    the others.
    """
    k = len(m.ops)
    if not 0 <= lax_count <= k:
        raise IndexError(f"lax_count must be in 0..{k}, got {lax_count}")
    le = m.leq
    rep = Report(f"{m.name}: monoid object {x!r} (lax^{lax_count}, oplax^{k - lax_count})")
    if lax_count > 0:
        u = m.unit(lax_count - 1)
        rep.check("lower-unit", le(u, x), (u, x))
    if lax_count < k:
        u = m.unit(lax_count)
        rep.check("upper-unit", le(x, u), (x, u))
    for i, (op, _) in enumerate(m.ops):
        xx = op(x, x)
        if i < lax_count:
            rep.check(f"multiplication[{m.label(i)}]", le(xx, x), (xx, x))
        else:
            rep.check(f"comultiplication[{m.label(i)}]", le(x, xx), (x, xx))
    return rep.finish()


# -- constructions -------------------------------------------------------------


def repeat(m: OrderedMonoid, k: int, times: int = 2) -> OrderedMonoid:
    """Insert extra copies of product ``k`` right after it."""
    ops = list(m.ops)
    labels = [m.label(i) for i in range(len(ops))]
    for n in range(times - 1):
        ops.insert(k + 1, m.ops[k])
        labels.insert(k + 1, f"{labels[k]}'{n + 1}")
    return OrderedMonoid(m.elements, m.leq, ops, name=f"{m.name}+repeat({labels[k]})",
                         labels=labels)


def lattice_ordered(elements: Iterable, leq, join, bot, op, one, meet, top,
                    name="lattice-ordered") -> OrderedMonoid:
    """Join, the monoid product, and meet, chained in that order."""
    return OrderedMonoid(tuple(elements), leq, [(join, bot), (op, one), (meet, top)],
                         name=name, labels=["∨", "⊙", "∧"])


def natural_numbers(bound: int) -> OrderedMonoid:
    """Addition then multiplication on 0..bound (computed exactly)."""
    return OrderedMonoid(range(bound + 1), lambda a, b: a <= b,
                         [(lambda a, b: a + b, 0), (lambda a, b: a * b, 1)],
                         name=f"N(0..{bound})", labels=["+", "·"])


def commutative_repeat(m: OrderedMonoid, k: int, n: int) -> OrderedMonoid:
    """Product ``k`` repeated ``n`` times on its own."""
    return OrderedMonoid(m.elements, m.leq, [m.ops[k]] * n, name=f"{m.name}^{n}",
                         labels=[f"{m.label(k)}{i}" for i in range(n)])


def _chain_lom(n: int, op, one, name):
    E = tuple(range(n))
    return lattice_ordered(E, lambda a, b: a <= b, max, 0, op, one, min, n - 1, name=name)


def fixture_library() -> list:
    """Finite lattice-ordered monoids used as test fixtures."""
    lib = [
        _chain_lom(4, lambda a, b: min(a + b, 3), 0, "chain4(+ capped)"),
        _chain_lom(4, lambda a, b: max(0, a + b - 3), 3, "chain4(Łukasiewicz)"),
        _chain_lom(3, max, 0, "chain3(max)"),
        _chain_lom(4, min, 3, "chain4(min)"),
    ]
    square = tuple(itertools.product((0, 1), repeat=2))

    def sq_le(a, b):
        return all(x <= y for x, y in zip(a, b))

    def sq_join(a, b):
        return tuple(map(max, a, b))

    def sq_meet(a, b):
        return tuple(map(min, a, b))

    lib.append(lattice_ordered(square, sq_le, sq_join, (0, 0), sq_meet, (1, 1), sq_meet, (1, 1),
                               name="square(meet)"))
    lib.append(lattice_ordered(square, sq_le, sq_join, (0, 0),
                               lambda a, b: (min(a[0], b[0]), max(a[1], b[1])), (1, 0),
                               sq_meet, (1, 1), name="square(meet×join)"))
    lib.append(relations_lom(2))
    lib.append(parity_lom())
    return lib


def relations_lom(n: int) -> OrderedMonoid:
    """Binary relations on an n-set under inclusion with relational
    composition (a non-commutative example)."""
    pairs = tuple(itertools.product(range(n), repeat=2))
    rels = tuple(frozenset(c) for r in range(len(pairs) + 1)
                 for c in itertools.combinations(pairs, r))

    def compose(R, S):
        return frozenset((a, c) for a, b in R for b2, c in S if b == b2)

    ident = frozenset((a, a) for a in range(n))
    return lattice_ordered(rels, lambda a, b: a <= b, frozenset.union, frozenset(),
                           compose, ident, frozenset.intersection, frozenset(pairs),
                           name=f"Rel({n})")


def parity_lom() -> OrderedMonoid:
    """Subsets of Z/2 with the complex product."""
    subsets = (frozenset(), frozenset({0}), frozenset({1}), frozenset({0, 1}))

    def mult(X, Y):
        return frozenset((a + b) % 2 for a in X for b in Y)

    return lattice_ordered(subsets, lambda a, b: a <= b, frozenset.union, frozenset(), mult,
                           frozenset({0}), frozenset.intersection, frozenset({0, 1}),
                           name="P(Z/2)")
