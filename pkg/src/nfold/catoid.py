"""Catoids and n-catoids.

A catoid is a set with a multioperation ``x ⊙ y`` (a subset of the carrier)
and source/target maps.  Composition is written in the order of functions:
``x ⊙ y`` can only be non-empty when ``s(x) == t(y)``, so that
``x ⊙ s(x) == {x}`` and ``t(x) ⊙ x == {x}``.
"""

from __future__ import annotations

import itertools
import os
from functools import lru_cache
from typing import Iterable

from .relmon import NFoldRelMonoid, RelMonoid
from .report import Report


class NotRepresentable(ValueError):
    """A relational monoid element without a unique source or target unit."""

    def __init__(self, element, side):
        super().__init__(f"not catoid-representable: element {element!r} has no unique {side} unit")
        self.element = element
        self.side = side


class Catoid:
    def __init__(self, carrier: Iterable, mult: dict, s: dict, t: dict, name: str | None = None):
        self.carrier = tuple(carrier)
        self.mult = {k: frozenset(v) for k, v in mult.items() if v}
        self.s = dict(s)
        self.t = dict(t)
        self.name = name

    def prod(self, x, y) -> frozenset:
        return self.mult.get((x, y), frozenset())

    def prod_sets(self, X: Iterable, Y: Iterable) -> frozenset:
        Y = tuple(Y)
        out: set = set()
        for x in X:
            for y in Y:
                out |= self.prod(x, y)
        return frozenset(out)

    @property
    def triples(self) -> frozenset:
        return frozenset((x, y, z) for (x, y), zs in self.mult.items() for z in zs)

    def key(self) -> tuple:
        """Ordering key: the multiplication table row by row, then s and t."""
        table = tuple(tuple(sorted(self.prod(x, y), key=repr)) for x in self.carrier
                      for y in self.carrier)
        return (table, tuple(self.s[x] for x in self.carrier),
                tuple(self.t[x] for x in self.carrier))

    def __eq__(self, other):
        if not isinstance(other, Catoid):
            return NotImplemented
        return (set(self.carrier) == set(other.carrier) and self.mult == other.mult
                and self.s == other.s and self.t == other.t)

    def __hash__(self):
        return hash((frozenset(self.carrier), self.triples))

    def __repr__(self):
        return f"Catoid({self.name or ''}|{len(self.carrier)} elements, {len(self.triples)} products)"


class NCatoid:
    def __init__(self, carrier: Iterable, dims: Iterable[Catoid], name: str | None = None):
        self.carrier = tuple(carrier)
        self.dims = tuple(dims)
        self.name = name

    @property
    def n(self) -> int:
        return len(self.dims)

    def __getitem__(self, i) -> Catoid:
        return self.dims[i]

    def key(self) -> tuple:
        return tuple(c.key() for c in self.dims)

    def __eq__(self, other):
        if not isinstance(other, NCatoid):
            return NotImplemented
        return set(self.carrier) == set(other.carrier) and self.dims == other.dims

    def __hash__(self):
        return hash(self.dims)

    def __repr__(self):
        return f"NCatoid({self.name or ''}|n={self.n}, {len(self.carrier)} elements)"


# -- checks ------------------------------------------------------------------------


def check_catoid(c: Catoid) -> Report:
    """The four catoid axiom families, each with witnesses."""
    rep = Report(c.name or "catoid")
    carrier = set(c.carrier)
    rep.law("well-formed")
    for (x, y), zs in c.mult.items():
        if x not in carrier or y not in carrier or not zs <= carrier:
            rep.fail("well-formed", (x, y))
    for x in c.carrier:
        if c.s.get(x) not in carrier or c.t.get(x) not in carrier:
            rep.fail("well-formed", x)
    if not rep.ok:
        return rep.finish()
    for law in ("associativity", "defined-implies-match", "right-unit", "left-unit"):
        rep.law(law)
    for x in c.carrier:
        if c.prod(x, c.s[x]) != {x}:
            rep.fail("right-unit", x)
        if c.prod(c.t[x], x) != {x}:
            rep.fail("left-unit", x)
        for y in c.carrier:
            if c.prod(x, y) and c.s[x] != c.t[y]:
                rep.fail("defined-implies-match", (x, y))
            xy = c.prod(x, y)
            for z in c.carrier:
                if c.prod_sets((x,), c.prod(y, z)) != c.prod_sets(xy, (z,)):
                    rep.fail("associativity", (x, y, z))
    return rep.finish()


def is_catoid(c: Catoid) -> bool:
    return check_catoid(c).ok


def check_ncatoid(c: NCatoid) -> Report:
    """All n-catoid axioms.  The closure condition is reported under its own
    law names (``closure[i,j]``) so that it can be told apart from the rest."""
    rep = Report(c.name or f"{c.n}-catoid")
    for k, d in enumerate(c.dims):
        rep.merge(check_catoid(d), prefix=f"[{k}].")
    if not rep.ok:
        return rep.finish()
    for i, j in itertools.permutations(range(c.n), 2):
        Ci, Cj = c.dims[i], c.dims[j]
        tag = f"[{i},{j}]"
        for law in ("commute", "source-lax", "target-lax"):
            rep.law(law + tag)
        for x in c.carrier:
            for f, g in ((Ci.s, Cj.s), (Ci.s, Cj.t), (Ci.t, Cj.s), (Ci.t, Cj.t)):
                if f[g[x]] != g[f[x]]:
                    rep.fail("commute" + tag, x)
                    break
            for y in c.carrier:
                xy = Cj.prod(x, y)
                if not xy:
                    continue
                if not {Ci.s[z] for z in xy} <= Cj.prod(Ci.s[x], Ci.s[y]):
                    rep.fail("source-lax" + tag, (x, y))
                if not {Ci.t[z] for z in xy} <= Cj.prod(Ci.t[x], Ci.t[y]):
                    rep.fail("target-lax" + tag, (x, y))
    for i, j in itertools.combinations(range(c.n), 2):
        rep.merge(_check_pair(c, i, j), prefix="")
    return rep.finish()


def _check_pair(c: NCatoid, i: int, j: int) -> Report:
    Ci, Cj = c.dims[i], c.dims[j]
    tag = f"[{i},{j}]"
    rep = Report("pair")
    for law in ("interchange", "globular", "closure"):
        rep.law(law + tag)
    proper = None
    for x in c.carrier:
        if (Cj.s[Ci.s[x]] != Ci.s[x] or Cj.s[Ci.t[x]] != Ci.t[x]
                or Cj.t[Ci.s[x]] != Ci.s[x] or Cj.t[Ci.t[x]] != Ci.t[x]):
            rep.fail("globular" + tag, x)
    for w, x, y, z in itertools.product(c.carrier, repeat=4):
        lhs = Ci.prod_sets(Cj.prod(w, x), Cj.prod(y, z))
        rhs = Cj.prod_sets(Ci.prod(w, y), Ci.prod(x, z))
        if not lhs <= rhs:
            rep.fail("interchange" + tag, (w, x, y, z))
        elif proper is None and lhs != rhs:
            proper = (w, x, y, z)
    for x in c.carrier:
        for y in c.carrier:
            p = Ci.prod(Cj.s[x], Cj.s[y])
            if {Cj.s[z] for z in p} != p:
                rep.fail("closure" + tag, (x, y))
    rep.notes["proper_interchange" + tag] = proper
    return rep


def is_ncatoid(c: NCatoid) -> bool:
    return check_ncatoid(c).ok


def closure_only_failure(rep: Report) -> bool:
    """True when a report fails the closure condition and nothing else."""
    return bool(rep.failed) and all(name.startswith("closure") for name in rep.failed)


def is_functional(c: Catoid) -> bool:
    return all(len(v) <= 1 for v in c.mult.values())


def is_local(c: Catoid) -> bool:
    """Matching source and target force a non-empty product."""
    return all(c.prod(x, y) for x in c.carrier for y in c.carrier if c.s[x] == c.t[y])


def classify(c: Catoid | NCatoid) -> dict:
    dims = c.dims if isinstance(c, NCatoid) else (c,)
    return {"functional": all(is_functional(d) for d in dims),
            "local": all(is_local(d) for d in dims)}


def check_strict_2category(c: NCatoid) -> Report:
    """Functional, local, and the strict middle-four law.

    Middle four: whenever ``(a ⊙1 b) ⊙0 (c ⊙1 d)`` is defined, the composite
    ``(a ⊙0 c) ⊙1 (b ⊙0 d)`` is defined and equal to it.  The converse
    direction is not required (the right-hand side is defined under weaker
    conditions); such instances are counted in the note ``rhs_only``.
    """
    if c.n != 2:
        raise ValueError("check_strict_2category needs a 2-catoid")
    rep = Report(c.name or "2-category")
    C0, C1 = c.dims
    for k, d in enumerate(c.dims):
        rep.check("functional", is_functional(d), k)
        rep.check("local", is_local(d), k)
        if not is_local(d):
            for x in c.carrier:
                for y in c.carrier:
                    if d.s[x] == d.t[y] and not d.prod(x, y):
                        rep.fail("local", (k, x, y))
    rep.law("middle-four")
    rhs_only = 0
    for a, b, cc, dd in itertools.product(c.carrier, repeat=4):
        lhs = C0.prod_sets(C1.prod(a, b), C1.prod(cc, dd))
        rhs = C1.prod_sets(C0.prod(a, cc), C0.prod(b, dd))
        if lhs and lhs != rhs:
            rep.fail("middle-four", (a, b, cc, dd))
        elif rhs and not lhs:
            rhs_only += 1
    rep.notes["rhs_only"] = rhs_only
    return rep.finish()


# -- conversions ---------------------------------------------------------------------


def catoid_to_relmonoid(c: Catoid) -> RelMonoid:
    """Triples ``(x, y, z)`` with ``z`` in ``x ⊙ y``; units are the fixed points of s."""
    fix_s = frozenset(x for x in c.carrier if c.s[x] == x)
    fix_t = frozenset(x for x in c.carrier if c.t[x] == x)
    if fix_s != fix_t:
        raise ValueError(f"fixed points of s and t differ: {sorted(fix_s ^ fix_t, key=repr)}")
    return RelMonoid(c.carrier, c.triples, fix_s, name=c.name)


def relmonoid_to_catoid(m: RelMonoid) -> Catoid:
    """Sources and targets are read off the units: ``x ∈ x·s(x)`` and
    ``x ∈ t(x)·x``.  Raises :class:`NotRepresentable` if a unit is missing
    or not unique."""
    s, t = {}, {}
    units = sorted(m.units, key=repr)
    for x in m.carrier:
        right = [u for u in units if x in m.prod(x, u)]
        left = [u for u in units if x in m.prod(u, x)]
        if len(right) != 1:
            raise NotRepresentable(x, "source")
        if len(left) != 1:
            raise NotRepresentable(x, "target")
        s[x], t[x] = right[0], left[0]
    return Catoid(m.carrier, dict(m.table), s, t, name=m.name)


def ncatoid_to_nfold(c: NCatoid) -> NFoldRelMonoid:
    return NFoldRelMonoid(c.carrier, tuple(catoid_to_relmonoid(d) for d in c.dims), name=c.name)


def nfold_to_ncatoid(m: NFoldRelMonoid) -> NCatoid:
    return NCatoid(m.carrier, tuple(relmonoid_to_catoid(s) for s in m.structures), name=m.name)


# -- enumeration ---------------------------------------------------------------------


def _subsets(items):
    items = list(items)
    for r in range(len(items) + 1):
        for c in itertools.combinations(items, r):
            yield frozenset(c)


def enumerate_catoids(n: int) -> list:
    """Every catoid on ``range(n)``, sorted by :meth:`Catoid.key`.

    Source and target maps are chosen first.  Only cells with ``s(x) == t(y)``
    may be non-empty, the unit cells are forced, and a product ``z ∈ x ⊙ y``
    must have ``s(z) == s(y)`` and ``t(z) == t(x)`` (a consequence of the
    axioms), which bounds the remaining choices.  Every candidate is then
    checked in full.  ``n == 0`` gives the empty catoid.
    """
    carrier = tuple(range(n))
    found = []
    for s in itertools.product(carrier, repeat=n):
        if any(s[s[x]] != s[x] for x in carrier):
            continue
        for t in itertools.product(carrier, repeat=n):
            if any(t[s[x]] != s[x] or s[t[x]] != t[x] for x in carrier):
                continue
            forced: dict = {}
            clash = False
            for x in carrier:
                for cell in ((x, s[x]), (t[x], x)):
                    if forced.setdefault(cell, frozenset({x})) != {x}:
                        clash = True
            if clash:
                continue
            free = [(x, y) for x in carrier for y in carrier
                    if s[x] == t[y] and (x, y) not in forced]
            options = [list(_subsets(z for z in carrier if s[z] == s[y] and t[z] == t[x]))
                       for x, y in free]
            sd, td = dict(enumerate(s)), dict(enumerate(t))
            for choice in itertools.product(*options):
                mult = dict(forced)
                mult.update(zip(free, choice))
                c = Catoid(carrier, mult, sd, td)
                if _associative(c):
                    found.append(c)
    found.sort(key=Catoid.key)
    return found


def _associative(c: Catoid) -> bool:
    for x in c.carrier:
        for y in c.carrier:
            xy = c.prod(x, y)
            for z in c.carrier:
                if c.prod_sets((x,), c.prod(y, z)) != c.prod_sets(xy, (z,)):
                    return False
    return True


def _cross_ok(c0: Catoid, c1: Catoid) -> bool:
    """All 2-catoid axioms other than closure."""
    c = NCatoid(c0.carrier, (c0, c1))
    rep = check_ncatoid(c)
    return all(name.startswith("closure") for name in rep.failed)


def _globular(c0: Catoid, c1: Catoid) -> bool:
    for x in c0.carrier:
        a, b = c0.s[x], c0.t[x]
        if c1.s[a] != a or c1.t[a] != a or c1.s[b] != b or c1.t[b] != b:
            return False
        if c1.s[c0.s[x]] != c0.s[c1.s[x]] or c1.t[c0.t[x]] != c0.t[c1.t[x]]:
            return False
        if c1.s[c0.t[x]] != c0.t[c1.s[x]] or c1.t[c0.s[x]] != c0.s[c1.t[x]]:
            return False
    return True


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("NFOLD_THREADS", "1")))
    except ValueError:
        return 1


def enumerate_2catoid_candidates(n: int):
    """Pairs of catoids on ``range(n)`` meeting every 2-catoid axiom except
    possibly closure, in canonical order (dimension 0 key, then dimension 1)."""
    cats = enumerate_catoids(n)
    for c0 in cats:
        for c1 in cats:
            if _globular(c0, c1) and _cross_ok(c0, c1):
                yield NCatoid(c0.carrier, (c0, c1))


def _passes(c: NCatoid) -> bool:
    return check_ncatoid(c).ok


def enumerate_2catoids(n: int):
    """All 2-catoids on ``range(n)`` including the closure condition.

    With ``NFOLD_THREADS`` above 1 the checks run in worker processes; the
    output order is the same either way.
    """
    threads = _threads()
    if threads == 1:
        yield from (c for c in enumerate_2catoid_candidates(n) if _passes(c))
        return
    from multiprocessing import Pool

    cands = list(enumerate_2catoid_candidates(n))
    with Pool(threads) as pool:
        for c, ok in zip(cands, pool.imap(_passes, cands, chunksize=64)):
            if ok:
                yield c


@lru_cache(maxsize=None)
def two_catoids(n: int) -> tuple:
    """``enumerate_2catoids(n)`` as a cached tuple (n = 3 takes most of a minute)."""
    return tuple(enumerate_2catoids(n))


def search_closure_counterexample(size: int) -> NCatoid | None:
    """First structure (in canonical order) on ``size`` elements that meets
    every 2-catoid axiom except closure and fails closure."""
    if size > 4:
        raise ValueError("search budget is capped at 4 elements")
    for c in enumerate_2catoid_candidates(size):
        if closure_only_failure(check_ncatoid(c)):
            c.name = f"closure-counterexample({size})"
            return c
    return None


# -- fixtures --------------------------------------------------------------------------


def category_catoid(objects: Iterable, arrows: dict, comp: dict, name=None) -> Catoid:
    """The catoid of a finite category.

    ``arrows`` maps each non-identity arrow to ``(source, target)``; objects
    double as their identity arrows.  ``comp[(g, f)]`` is ``g ∘ f`` for
    composable non-identity ``g, f``; pairs missing from ``comp`` have an
    empty product.
    """
    objects = tuple(objects)
    src = {o: o for o in objects}
    tgt = {o: o for o in objects}
    for a, (x, y) in arrows.items():
        src[a], tgt[a] = x, y
    carrier = objects + tuple(arrows)
    mult = {}
    for x in carrier:
        mult[(x, src[x])] = {x}
        mult[(tgt[x], x)] = {x}
    for (g, f), h in comp.items():
        mult[(g, f)] = {h}
    return Catoid(carrier, mult, src, tgt, name=name)


def discrete_catoid(carrier: Iterable) -> Catoid:
    """Only identities: ``x ⊙ x = {x}`` and ``s = t = id``."""
    carrier = tuple(carrier)
    return Catoid(carrier, {(x, x): {x} for x in carrier}, {x: x for x in carrier},
                  {x: x for x in carrier})


def identity_2catoid(c: Catoid, name=None) -> NCatoid:
    """A catoid as a 2-catoid whose only 2-cells are identities."""
    return NCatoid(c.carrier, (c, discrete_catoid(c.carrier)), name=name or c.name)


def one_element_catoid() -> Catoid:
    return Catoid(("e",), {("e", "e"): {"e"}}, {"e": "e"}, {"e": "e"}, name="one")


def pair_catoid(objects: Iterable = (1, 2)) -> Catoid:
    """The pair groupoid: ``(i, j) ⊙ (j, k) = {(i, k)}``."""
    objects = tuple(objects)
    carrier = tuple((i, j) for i in objects for j in objects)
    mult = {((i, j), (j, k)): {(i, k)} for i in objects for j in objects for k in objects}
    s = {(i, j): (j, j) for i, j in carrier}
    t = {(i, j): (i, i) for i, j in carrier}
    return Catoid(carrier, mult, s, t, name="pairs")


def cyclic_2category() -> NCatoid:
    """One object, arrows 1 and f with f ∘ f = 1, identity 2-cells only."""
    c = category_catoid(("*",), {"f": ("*", "*")}, {("f", "f"): "*"}, name="Z/2")
    return identity_2catoid(c, name="Z/2 with identity 2-cells")


def parallel_2category() -> NCatoid:
    """Objects X, Y, 1-cells f, g: X -> Y, and one 2-cell α: f => g.

    Identity 2-cells are identified with the cells they are identities on.
    """
    carrier = ("X", "Y", "f", "g", "α")
    s0 = {"X": "X", "Y": "Y", "f": "X", "g": "X", "α": "X"}
    t0 = {"X": "X", "Y": "Y", "f": "Y", "g": "Y", "α": "Y"}
    m0 = {}
    for x in carrier:
        m0[(x, s0[x])] = {x}
        m0[(t0[x], x)] = {x}
    s1 = {x: x for x in carrier}
    t1 = {x: x for x in carrier}
    s1["α"], t1["α"] = "f", "g"
    m1 = {}
    for x in carrier:
        m1[(x, s1[x])] = {x}
        m1[(t1[x], x)] = {x}
    return NCatoid(carrier, (Catoid(carrier, m0, s0, t0, name="horizontal"),
                             Catoid(carrier, m1, s1, t1, name="vertical")),
                   name="f => g")


def path_category(with_composite: bool = True) -> Catoid:
    """Objects 1 < 2 < 3 with a: 1->2, b: 2->3, c: 1->3; ``b ∘ a = c`` unless
    the composite is deleted, which leaves a functional non-local catoid."""
    comp = {("b", "a"): "c"} if with_composite else {}
    return category_catoid((1, 2, 3), {"a": (1, 2), "b": (2, 3), "c": (1, 3)}, comp,
                           name="path" if with_composite else "path-without-composite")
