"""Relational monoids, their homomorphisms, and lax n-fold relational monoids.

A triple ``(x, y, z)`` in a multiplication relation means that ``z`` is one
of the products of ``x`` and ``y`` (inputs first, output last).

Infinite carriers such as the free monoid on an alphabet are handled as
finite fragments: every element carries a weight (word length) and an axiom
instance is only checked when the total weight of its inputs fits in the
fragment's bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Sequence

from .concur import shuffle
from .report import Report


@dataclass(frozen=True)
class RelMonoid:
    carrier: tuple
    triples: frozenset
    units: frozenset
    weight: dict | None = field(default=None, compare=False, hash=False, repr=False)
    bound: int | None = field(default=None, compare=False, hash=False, repr=False)
    name: str | None = field(default=None, compare=False, hash=False, repr=False)

    @classmethod
    def make(cls, carrier, triples, units, **kw) -> RelMonoid:
        return cls(tuple(carrier), frozenset(tuple(t) for t in triples), frozenset(units), **kw)

    @cached_property
    def table(self) -> dict:
        out: dict = {}
        for x, y, z in self.triples:
            out.setdefault((x, y), set()).add(z)
        return {k: frozenset(v) for k, v in out.items()}

    def prod(self, x, y) -> frozenset:
        return self.table.get((x, y), frozenset())

    def prod_sets(self, X: Iterable, Y: Iterable) -> frozenset:
        Y = tuple(Y)
        out: set = set()
        for x in X:
            for y in Y:
                out |= self.prod(x, y)
        return frozenset(out)

    @property
    def fragment(self) -> bool:
        return self.bound is not None


@dataclass(frozen=True)
class NFoldRelMonoid:
    carrier: tuple
    structures: tuple
    name: str | None = field(default=None, compare=False, hash=False, repr=False)

    def __len__(self) -> int:
        return len(self.structures)

    def __getitem__(self, i) -> RelMonoid:
        return self.structures[i]


@dataclass(frozen=True)
class RelHom:
    source: RelMonoid
    target: RelMonoid
    rel: frozenset  # pairs (a, x) with a in the source, x in the target

    def is_function_graph(self) -> bool:
        images: dict = {}
        for a, x in self.rel:
            images.setdefault(a, set()).add(x)
        return all(len(images.get(a, ())) == 1 for a in self.source.carrier)


# -- tuple iteration on graded fragments ----------------------------------------


def _bounded_tuples(carrier: Sequence, k: int, weight: dict | None, bound: int | None):
    """All k-tuples over ``carrier``, restricted to total weight <= bound."""
    if bound is None or weight is None:
        yield from itertools.product(carrier, repeat=k)
        return
    by_weight: dict = {}
    for x in carrier:
        by_weight.setdefault(weight[x], []).append(x)
    weights = sorted(by_weight)

    def rec(i, budget):
        if i == k:
            yield ()
            return
        for w in weights:
            if w > budget:
                break
            for x in by_weight[w]:
                for rest in rec(i + 1, budget - w):
                    yield (x,) + rest

    yield from rec(0, bound)


# -- checks -----------------------------------------------------------------------


def check_rel_monoid(m: RelMonoid) -> Report:
    """Relational unitality on both sides and relational associativity."""
    rep = Report(m.name or "rel-monoid", fragment=m.fragment)
    carrier = set(m.carrier)
    for t in m.triples:
        if any(v not in carrier for v in t):
            rep.fail("well-formed", t)
    for u in m.units:
        if u not in carrier:
            rep.fail("well-formed", u)
    for law in ("left-unit", "right-unit", "associativity"):
        rep.law(law)
    units = m.units
    for x in m.carrier:
        for y in m.carrier:
            left = any(x in m.prod(a, y) for a in units)
            right = any(x in m.prod(y, a) for a in units)
            if left != (x == y):
                rep.fail("left-unit", (x, y))
            if right != (x == y):
                rep.fail("right-unit", (x, y))
    for x, y, z in _bounded_tuples(m.carrier, 3, m.weight, m.bound):
        lhs = m.prod_sets((x,), m.prod(y, z))
        rhs = m.prod_sets(m.prod(x, y), (z,))
        if lhs != rhs:
            rep.fail("associativity", (x, y, z))
    return rep.finish()


def is_commutative(m: RelMonoid) -> bool:
    return all((y, x, z) in m.triples for x, y, z in m.triples)


def check_rel_hom(h: RelHom) -> Report:
    """Compatibility with multiplication and units; if the relation is the
    graph of a function the reduced function form is checked as well."""
    X, Y, F = h.source, h.target, h.rel
    rep = Report("rel-hom")
    fwd: dict = {}
    for a, x in F:
        fwd.setdefault(a, set()).add(x)
    rep.law("multiplication")
    rep.law("unit")
    for a in X.carrier:
        for b in X.carrier:
            lhs = set()
            for c in X.prod(a, b):
                lhs |= fwd.get(c, set())
            rhs = set(Y.prod_sets(fwd.get(a, ()), fwd.get(b, ())))
            if lhs != rhs:
                rep.fail("multiplication", (a, b, sorted(lhs ^ rhs, key=repr)))
    image_of_units = set()
    for a in X.units:
        image_of_units |= fwd.get(a, set())
    for x in Y.carrier:
        if (x in image_of_units) != (x in Y.units):
            rep.fail("unit", x)
    function = h.is_function_graph()
    rep.notes["function_graph"] = function
    if function:
        f = {a: next(iter(fwd[a])) for a in X.carrier}
        rep.law("multiplication(function-form)")
        rep.law("unit(function-form)")
        for a in X.carrier:
            for b in X.carrier:
                for z in Y.carrier:
                    lhs = any(f[c] == z for c in X.prod(a, b))
                    if lhs != (z in Y.prod(f[a], f[b])):
                        rep.fail("multiplication(function-form)", (a, b, z))
        for x in Y.carrier:
            if any(f[a] == x for a in X.units) != (x in Y.units):
                rep.fail("unit(function-form)", x)
    return rep.finish()


def check_lax_interchange(m: NFoldRelMonoid, i: int, j: int) -> Report:
    """The four relational interchange laws between structures i < j.

    With P, U the i-th and Q, V the j-th structure:

    * chi:  (w Q x) P (y Q z)  is contained in  (w P y) Q (x P z)
    * zeta: every unit in U is a Q-product of two units in U
    * nu:   P-products of two units in V are in V
    * iota: U is contained in V

    The note ``proper_chi`` records an instance where chi is a proper inclusion.
    """
    if not 0 <= i < j < len(m.structures):
        raise IndexError(f"need 0 <= i < j < {len(m.structures)}, got {i}, {j}")
    P, Q = m.structures[i], m.structures[j]
    U, V = P.units, Q.units
    rep = Report(f"{m.name or 'nfold-rel-monoid'}[{i},{j}]", fragment=P.fragment or Q.fragment)
    for law in ("chi", "zeta", "nu", "iota"):
        rep.law(law)
    weight = P.weight if P.weight is not None else Q.weight
    bound = P.bound if P.bound is not None else Q.bound
    proper = None
    for w, x, y, z in _bounded_tuples(m.carrier, 4, weight, bound):
        lhs = P.prod_sets(Q.prod(w, x), Q.prod(y, z))
        rhs = Q.prod_sets(P.prod(w, y), P.prod(x, z))
        if not lhs <= rhs:
            rep.fail("chi", (w, x, y, z, sorted(lhs - rhs, key=repr)))
        elif proper is None and lhs != rhs:
            proper = (w, x, y, z)
    for u in sorted(U, key=repr):
        if u not in Q.prod_sets(U, U):
            rep.fail("zeta", u)
    for z in sorted(P.prod_sets(V, V) - V, key=repr):
        rep.fail("nu", z)
    for u in sorted(U - V, key=repr):
        rep.fail("iota", u)
    rep.notes["proper_chi"] = proper
    return rep.finish()


def check_nfold(m: NFoldRelMonoid) -> Report:
    """Every structure is a relational monoid and every pair interchanges."""
    rep = Report(m.name or "nfold-rel-monoid")
    for k, s in enumerate(m.structures):
        rep.merge(check_rel_monoid(s), prefix=f"[{k}].")
    for i, j in itertools.combinations(range(len(m.structures)), 2):
        rep.merge(check_lax_interchange(m, i, j), prefix=f"[{i},{j}].")
    return rep.finish()


# -- constructions ---------------------------------------------------------------


def from_monoid(elements: Iterable, op, unit, name=None) -> RelMonoid:
    """The graph of an ordinary monoid."""
    elements = tuple(elements)
    return RelMonoid.make(elements, [(x, y, op(x, y)) for x in elements for y in elements],
                          {unit}, name=name)


def words(alphabet: Iterable[str], maxlen: int) -> tuple:
    alphabet = tuple(alphabet)
    return tuple("".join(w) for n in range(maxlen + 1) for w in itertools.product(alphabet, repeat=n))


def concat_relmonoid(alphabet, maxlen: int) -> RelMonoid:
    ws = words(alphabet, maxlen)
    triples = [(u, v, u + v) for u in ws for v in ws if len(u) + len(v) <= maxlen]
    return RelMonoid.make(ws, triples, {""}, weight={w: len(w) for w in ws}, bound=maxlen,
                          name=f"concat≤{maxlen}")


def shuffle_monoid(alphabet, maxlen: int, graded: bool = True) -> RelMonoid:
    """The shuffle relation on words of length <= maxlen.

    Products longer than ``maxlen`` are dropped.  With ``graded=False`` the
    result is presented as a plain relational monoid on the truncated
    carrier, without the fragment bound.
    """
    ws = words(alphabet, maxlen)
    triples = [(u, v, w) for u in ws for v in ws if len(u) + len(v) <= maxlen
               for w in shuffle(u, v)]
    kw = {"weight": {w: len(w) for w in ws}, "bound": maxlen} if graded else {}
    return RelMonoid.make(ws, triples, {""}, name=f"shuffle≤{maxlen}", **kw)


def shuffle_relmonoid(alphabet, maxlen: int) -> NFoldRelMonoid:
    """Words with concatenation (structure 0) and shuffle (structure 1)."""
    P = concat_relmonoid(alphabet, maxlen)
    Q = shuffle_monoid(alphabet, maxlen)
    return NFoldRelMonoid(P.carrier, (P, Q), name=f"words≤{maxlen}(concat, shuffle)")


def product_relmonoid(m: RelMonoid, n: RelMonoid) -> RelMonoid:
    """Componentwise product on the cartesian product of carriers."""
    carrier = tuple(itertools.product(m.carrier, n.carrier))
    triples = [((a, x), (b, y), (c, z)) for a, b, c in m.triples for x, y, z in n.triples]
    units = {(u, v) for u in m.units for v in n.units}
    return RelMonoid.make(carrier, triples, units, name=f"{m.name}×{n.name}")


def lift_to_algebra(m: RelMonoid):
    """The B-algebra on B[carrier] with the complex product ``X·Y``."""
    from .boolcore import free_module
    from .coalg import BAlgebra

    M = free_module(m.carrier)

    def mult(X, Y):
        return m.prod_sets(X, Y)

    return BAlgebra(M, mult, frozenset(m.units), name=f"P({m.name or 'M'})")


# -- enumeration --------------------------------------------------------------


def enumerate_rel_monoids(n: int):
    """Every relational monoid on ``range(n)``, by direct generate-and-test.

    Rows and columns indexed by a unit ``a`` can only contain ``a·y = {y}`` or
    the empty set (unit laws), so those entries range over two options; the
    remaining entries range over all subsets.  Results come in a fixed order.
    """
    carrier = tuple(range(n))
    subsets = [frozenset(c) for r in range(n + 1) for c in itertools.combinations(carrier, r)]
    # an empty unit set only works on the empty carrier
    for r in range(0 if n == 0 else 1, n + 1):
        for U in itertools.combinations(carrier, r):
            U = frozenset(U)
            cells = [(x, y) for x in carrier for y in carrier]
            options = []
            for x, y in cells:
                if x in U and y in U:
                    opts = [frozenset()] + ([frozenset({x})] if x == y else [])
                elif x in U:
                    opts = [frozenset(), frozenset({y})]
                elif y in U:
                    opts = [frozenset(), frozenset({x})]
                else:
                    opts = subsets
                options.append(opts)
            for choice in itertools.product(*options):
                triples = frozenset((x, y, z) for (x, y), zs in zip(cells, choice) for z in zs)
                m = RelMonoid(carrier, triples, U)
                if _quick_rel_monoid(m):
                    yield m


def _quick_rel_monoid(m: RelMonoid) -> bool:
    units = m.units
    for x in m.carrier:
        for y in m.carrier:
            if any(x in m.prod(a, y) for a in units) != (x == y):
                return False
            if any(x in m.prod(y, a) for a in units) != (x == y):
                return False
    for x in m.carrier:
        for y in m.carrier:
            xy = m.prod(x, y)
            for z in m.carrier:
                if m.prod_sets((x,), m.prod(y, z)) != m.prod_sets(xy, (z,)):
                    return False
    return True
