"""Algebras, coalgebras, double algebras and graded modules over the booleans.

Two representations of coalgebras are used:

* :class:`BCoalgebra` works on any finite module; the comultiplication maps
  each element to a normal form in the tensor square.
* :class:`FreeCoalgebra` works on a free module given by generators; the
  comultiplication of a generator is a set of generator pairs and the counit
  is a set of generators.  :meth:`FreeCoalgebra.to_module` converts small
  instances to the first form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable

from .boolcore import (
    FinSemilattice,
    HomModule,
    ModuleMorphism,
    TensorElement,
    boolean,
    check_morphism,
    direct_sum,
    free_module,
    ideal_closure,
    iter_morphisms,
    tensor,
    trivial,
)
from .report import Report

MAX_ENUM_SIZE = 6


class BudgetError(ValueError):
    """An enumeration was asked for beyond its size budget."""


class IncompleteDecomposition(ValueError):
    """Decomposition data refers to elements outside the given fragment."""


# -- algebras ---------------------------------------------------------------


class BAlgebra:
    """A module with a product and a unit element.

    ``mult`` is a callable or a dict on pairs.  Call :func:`check_algebra`
    to validate.
    """

    def __init__(self, module: FinSemilattice, mult, one, name: str | None = None):
        self.module = module
        self.one = one
        self.name = name or f"algebra on {module.name}"
        self._fn = mult if callable(mult) else None
        self._table = None if callable(mult) else dict(mult)
        self._memo: dict = {}

    def mult(self, x, y):
        if self._table is not None:
            return self._table[x, y]
        key = (x, y)
        if key not in self._memo:
            self._memo[key] = self._fn(x, y)
        return self._memo[key]

    @property
    def table(self) -> dict:
        if self._table is None:
            E = self.module.elements
            self._table = {(x, y): self.mult(x, y) for x in E for y in E}
        return self._table

    def is_commutative(self) -> bool:
        J = self.module.join_irreducibles
        return all(self.mult(a, b) == self.mult(b, a) for a in J for b in J)

    def __repr__(self):
        return f"BAlgebra({self.name})"


def _bilinear(rep: Report, M: FinSemilattice, op, name: str, exhaustive: bool):
    rep.law(name)
    for x in M:
        if op(M.zero, x) != M.zero or op(x, M.zero) != M.zero:
            rep.fail(name, ("zero", x))
    firsts = M.elements if exhaustive else M.join_irreducibles
    for x in M:
        for j in firsts:
            xj = M.join(x, j)
            for y in M:
                if op(xj, y) != M.join(op(x, y), op(j, y)):
                    rep.fail(name, (x, j, y))
                if op(y, xj) != M.join(op(y, x), op(y, j)):
                    rep.fail(name, (y, x, j))


def check_algebra(a: BAlgebra, exhaustive: bool = False) -> Report:
    """Bilinearity, associativity and unitality.

    Bilinearity is checked against every join with a join-irreducible, which
    implies it in general.  Once the product is bilinear, associativity and
    the unit law only need checking on join-irreducibles, since both sides
    are multilinear.  ``exhaustive=True`` checks every tuple instead.
    """
    M = a.module
    rep = Report(a.name)
    for x in M:
        for y in M:
            if a.mult(x, y) not in M:
                rep.fail("closed", (x, y))
                return rep.finish()
    _bilinear(rep, M, a.mult, "bilinear", exhaustive)
    gens = M.elements if exhaustive or not rep.ok else M.join_irreducibles
    rep.law("associativity")
    for x, y, z in itertools.product(gens, repeat=3):
        if a.mult(a.mult(x, y), z) != a.mult(x, a.mult(y, z)):
            rep.fail("associativity", (x, y, z))
    rep.check("unit-element", a.one in M, a.one)
    rep.law("unit")
    if a.one in M:
        for x in gens:
            if a.mult(a.one, x) != x or a.mult(x, a.one) != x:
                rep.fail("unit", x)
    rep.notes["commutative"] = a.is_commutative()
    return rep.finish()


def meet_algebra(M: FinSemilattice) -> BAlgebra:
    """Meet as multiplication, with the top as unit."""
    from .boolcore import meet

    return BAlgebra(M, lambda x, y: meet(M, x, y), M.top, name=f"meet on {M.name}")


# -- coalgebras ----------------------------------------------------------------


def _telem(factors, gens) -> TensorElement:
    return TensorElement(ideal_closure(factors, gens), tuple(factors))


class BCoalgebra:
    """Comultiplication ``delta[x]`` (a :class:`TensorElement` of M ⊗ M) and
    counit ``counit[x]`` in {0, 1}; the counit may be None."""

    def __init__(self, module: FinSemilattice, delta: dict, counit: dict | None,
                 name: str | None = None):
        self.module = module
        self.delta = dict(delta)
        self.counit = None if counit is None else dict(counit)
        self.name = name or f"coalgebra on {module.name}"

    @property
    def pair(self) -> tuple:
        return (self.module, self.module)

    def swap(self, t: TensorElement) -> TensorElement:
        return TensorElement(frozenset((b, a) for a, b in t.ideal), t.factors)

    def is_cocommutative(self) -> bool:
        return all(self.swap(self.delta[x]) == self.delta[x] for x in self.module)

    def __repr__(self):
        return f"BCoalgebra({self.name})"


def _apply_left(M, eps, t: TensorElement):
    return M.join_all(b for a, b in t.ideal if eps[a])


def _apply_right(M, eps, t: TensorElement):
    return M.join_all(a for a, b in t.ideal if eps[b])


def _coassoc_sides(c: BCoalgebra, x):
    M = c.module
    t = c.delta[x]
    left = [(a1, a2, b) for a, b in t.antichain for a1, a2 in c.delta[a].antichain]
    right = [(a, b1, b2) for a, b in t.antichain for b1, b2 in c.delta[b].antichain]
    return ideal_closure((M, M, M), left), ideal_closure((M, M, M), right)


def check_coalgebra(c: BCoalgebra) -> Report:
    """Comultiplication and counit are module maps; coassociativity and the
    two counit laws hold as equalities of tensor normal forms."""
    M = c.module
    rep = Report(c.name)
    rep.law("delta-linear")
    zero = _telem(c.pair, ())
    if c.delta[M.zero] != zero:
        rep.fail("delta-linear", M.zero)
    for x in M:
        for y in M:
            joined = _telem(c.pair, c.delta[x].ideal | c.delta[y].ideal)
            if c.delta[M.join(x, y)] != joined:
                rep.fail("delta-linear", (x, y))
    rep.law("coassociativity")
    for x in M:
        lhs, rhs = _coassoc_sides(c, x)
        if lhs != rhs:
            rep.fail("coassociativity", x)
    if c.counit is not None:
        eps = c.counit
        rep.law("counit-linear")
        if eps[M.zero]:
            rep.fail("counit-linear", M.zero)
        for x in M:
            for y in M:
                if eps[M.join(x, y)] != max(eps[x], eps[y]):
                    rep.fail("counit-linear", (x, y))
        rep.law("counit")
        for x in M:
            if _apply_left(M, eps, c.delta[x]) != x or _apply_right(M, eps, c.delta[x]) != x:
                rep.fail("counit", x)
    else:
        rep.notes["counit"] = None
    rep.notes["cocommutative"] = c.is_cocommutative()
    return rep.finish()


@dataclass
class FreeCoalgebra:
    """A coalgebra on the free module over ``generators``.

    ``delta[g]`` is the set of pairs ``(a, b)`` with ``a ⊗ b`` in the
    comultiplication of ``g``; ``counit`` is the set of generators sent to 1,
    or None when there is no counit.
    """

    generators: tuple
    delta: dict
    counit: frozenset | None
    name: str = "free-coalgebra"

    def __post_init__(self):
        self.generators = tuple(self.generators)
        self.delta = {g: frozenset(self.delta.get(g, ())) for g in self.generators}
        if self.counit is not None:
            self.counit = frozenset(self.counit)

    def is_cocommutative(self) -> bool:
        return all({(b, a) for a, b in d} == d for d in self.delta.values())

    def to_module(self) -> BCoalgebra:
        """The same coalgebra on ``free_module(generators)`` (small cases only)."""
        F = free_module(self.generators)
        delta = {}
        for X in F:
            gens = [(frozenset({a}), frozenset({b})) for g in X for a, b in self.delta[g]]
            delta[X] = _telem((F, F), gens)
        counit = None
        if self.counit is not None:
            counit = {X: int(bool(X & self.counit)) for X in F}
        return BCoalgebra(F, delta, counit, name=self.name)


def check_free_coalgebra(c: FreeCoalgebra) -> Report:
    """Coassociativity and counit laws on generators.

    The tensor powers of a free module are free on tuples of generators, so
    both laws are equalities of finite sets of tuples.
    """
    rep = Report(c.name)
    gens = set(c.generators)
    rep.law("well-formed")
    for g, d in c.delta.items():
        for a, b in d:
            if a not in gens or b not in gens:
                rep.fail("well-formed", (g, a, b))
    if not rep.ok:
        return rep.finish()
    rep.law("coassociativity")
    for g in c.generators:
        left = {(a1, a2, b) for a, b in c.delta[g] for a1, a2 in c.delta[a]}
        right = {(a, b1, b2) for a, b in c.delta[g] for b1, b2 in c.delta[b]}
        if left != right:
            rep.fail("coassociativity", (g, sorted(left ^ right, key=repr)[:4]))
    if c.counit is not None:
        rep.law("counit")
        for g in c.generators:
            lhs = {b for a, b in c.delta[g] if a in c.counit}
            rhs = {a for a, b in c.delta[g] if b in c.counit}
            if lhs != {g} or rhs != {g}:
                rep.fail("counit", g)
    else:
        rep.notes["counit"] = None
    rep.notes["cocommutative"] = c.is_cocommutative()
    return rep.finish()


# -- coalgebra constructions ----------------------------------------------------


def coalgebra_from_monoid(elements: Iterable, op: Callable, unit=None, *, ordered: bool = False,
                          leq: Callable | None = None, decompose: Callable | None = None,
                          name: str | None = None) -> FreeCoalgebra:
    """Comultiplication ``x ↦ Σ y1 ⊗ y2`` over ``y1 y2 = x`` (or over
    ``y1 y2 <= x`` when ``ordered``) on a finite monoid fragment.

    ``decompose(x)``, if given, supplies the pairs directly and must stay in
    the fragment.  The ordered variant has no counit on the free module.
    """
    elements = tuple(elements)
    if ordered and leq is None:
        raise ValueError("the ordered variant needs an order")
    members = set(elements)
    delta = {}
    for x in elements:
        if decompose is not None:
            pairs = set(decompose(x))
            bad = [p for p in pairs if p[0] not in members or p[1] not in members]
            if bad:
                raise IncompleteDecomposition(f"decomposition of {x!r} leaves the fragment: {bad[0]!r}")
        elif ordered:
            pairs = {(a, b) for a in elements for b in elements if leq(op(a, b), x)}
        else:
            pairs = {(a, b) for a in elements for b in elements if op(a, b) == x}
        delta[x] = pairs
    counit = None if ordered or unit is None else frozenset({unit})
    label = name or ("ordered monoid coalgebra" if ordered else "monoid coalgebra")
    return FreeCoalgebra(elements, delta, counit, name=label)


def word_coalgebra(alphabet, maxlen: int) -> FreeCoalgebra:
    """Deconcatenation ``w ↦ Σ u ⊗ v`` over ``uv = w`` on words of length <= maxlen."""
    from .relmon import words

    ws = words(alphabet, maxlen)
    return coalgebra_from_monoid(
        ws, lambda u, v: u + v, "",
        decompose=lambda w: {(w[:k], w[k:]) for k in range(len(w) + 1)},
        name=f"words({''.join(alphabet)})≤{maxlen}")


def _poset_pairs(elements, leq):
    return [(x, y) for x in elements for y in elements if leq(x, y)]


def incidence_coalgebra(elements: Iterable, leq: Callable) -> FreeCoalgebra:
    """Generators are intervals ``(x, y)`` with ``x <= y``;
    ``Δ[x, y] = Σ [x, z] ⊗ [z, y]`` and ``ε[x, y] = 1`` iff ``x = y``."""
    elements = tuple(elements)
    ivs = _poset_pairs(elements, leq)
    delta = {(x, y): {((x, z), (z, y)) for z in elements if leq(x, z) and leq(z, y)}
             for x, y in ivs}
    return FreeCoalgebra(ivs, delta, frozenset((x, x) for x in elements), name="incidence")


def convex_subsets(elements: Iterable, leq: Callable) -> list:
    elements = tuple(elements)
    out = []
    for r in range(len(elements) + 1):
        for c in itertools.combinations(elements, r):
            A = frozenset(c)
            if all(z in A for x in A for y in A for z in elements if leq(x, z) and leq(z, y)):
                out.append(A)
    return out


def convex_coalgebra(elements: Iterable, leq: Callable, mode: str = "strict") -> FreeCoalgebra:
    """Splits of a convex set ``A`` into disjoint ``B ⊔ C``.

    ``strict``: every b in B is <= every c in C.
    ``weak``: no b in B is strictly above any c in C.
    The counit sends the empty set to 1 and everything else to 0.
    The coalgebra lives on the free module generated by the convex subsets.
    """
    elements = tuple(elements)
    if mode not in ("strict", "weak"):
        raise ValueError(f"mode must be 'strict' or 'weak', not {mode!r}")
    gens = convex_subsets(elements, leq)
    convex = set(gens)

    def allowed(B, C):
        if mode == "strict":
            return all(leq(b, c) for b in B for c in C)
        return not any(leq(c, b) and b != c for b in B for c in C)

    delta = {}
    for A in gens:
        items = sorted(A, key=repr)
        pairs = set()
        for r in range(len(items) + 1):
            for c in itertools.combinations(items, r):
                B = frozenset(c)
                C = A - B
                if B in convex and C in convex and allowed(B, C):
                    pairs.add((B, C))
        delta[A] = pairs
    return FreeCoalgebra(gens, delta, frozenset({frozenset()}), name=f"convex-{mode}")


# -- enumeration ------------------------------------------------------------------


def _restrictions(M: FinSemilattice, N: FinSemilattice) -> list:
    """Values on join-irreducibles of every morphism M -> N."""
    J = M.join_irreducibles
    return [tuple(f(j) for j in J) for f in iter_morphisms(M, N)]


def _bilinear_tables(M: FinSemilattice, commutative: bool):
    """Every bilinear product on M, as a table on pairs of join-irreducibles.

    A map is bilinear iff it is linear in each argument; on tables this means
    every row and every column is the restriction of a morphism M -> M.
    """
    J = M.join_irreducibles
    k = len(J)
    rows = _restrictions(M, M)
    row_set = set(rows)
    prefixes = {r[:i] for r in rows for i in range(k + 1)}
    table: list = []

    def rec(i):
        if i == k:
            cols = [tuple(table[r][c] for r in range(k)) for c in range(k)]
            if all(col in row_set for col in cols):
                yield {(J[r], J[c]): table[r][c] for r in range(k) for c in range(k)}
            return
        for row in rows:
            if commutative and any(row[c] != table[c][i] for c in range(i)):
                continue
            table.append(row)
            if all(tuple(table[r][c] for r in range(i + 1)) in prefixes for c in range(k)):
                yield from rec(i + 1)
            table.pop()

    yield from rec(0)


def _extend_table(M: FinSemilattice, t: dict) -> dict:
    ji = M.ji_below
    return {(x, y): M.join_all(t[a, b] for a in ji[x] for b in ji[y])
            for x in M.elements for y in M.elements}


def _find_unit(M: FinSemilattice, m: dict):
    J = M.join_irreducibles
    for e in M.elements:
        if all(m[e, j] == j and m[j, e] == j for j in J):
            return e
    return None


def enumerate_algebras(M: FinSemilattice, commutative: bool = False, unital: bool = True):
    """Associative bilinear products on M (with a unit when ``unital``), in a
    deterministic order.  Yields :class:`BAlgebra` objects; non-unital ones
    have ``one = None``."""
    if len(M) > MAX_ENUM_SIZE:
        raise BudgetError(f"module has {len(M)} elements; the budget is {MAX_ENUM_SIZE}")
    J = M.join_irreducibles
    for t in _bilinear_tables(M, commutative):
        m = _extend_table(M, t)
        if any(m[m[x, y], z] != m[x, m[y, z]] for x in J for y in J for z in J):
            continue
        e = _find_unit(M, m)
        if unital and e is None:
            continue
        yield BAlgebra(M, m, e)


def enumerate_coalgebras(M: FinSemilattice, cocommutative: bool = False, counital: bool = True):
    """Coassociative comultiplications on M (with a counit when ``counital``)."""
    if len(M) > MAX_ENUM_SIZE:
        raise BudgetError(f"module has {len(M)} elements; the budget is {MAX_ENUM_SIZE}")
    T = tensor(M, M)
    counits = [f.as_dict() for f in iter_morphisms(M, boolean())]
    for f in iter_morphisms(M, T):
        delta = f.as_dict()
        c = BCoalgebra(M, delta, None)
        if cocommutative and not c.is_cocommutative():
            continue
        if any(l != r for l, r in (_coassoc_sides(c, x) for x in M.join_irreducibles)):
            continue
        found = [eps for eps in counits
                 if all(_apply_left(M, eps, delta[x]) == x and _apply_right(M, eps, delta[x]) == x
                        for x in M.join_irreducibles)]
        if counital and not found:
            continue
        yield BCoalgebra(M, delta, found[0] if found else None)


def count_structures(M: FinSemilattice, kind: str) -> dict:
    """Counts of structures on M.

    ``comm-algebra``: ``bilinear`` (commutative bilinear products),
    ``non-unital`` (of those, the associative ones) and ``unital``.
    ``cocomm-coalgebra``: ``non-counital`` and ``counital`` cocommutative
    coassociative comultiplications.  ``algebra`` and ``coalgebra`` drop the
    commutativity requirement.
    """
    if len(M) > MAX_ENUM_SIZE:
        raise BudgetError(f"module has {len(M)} elements; the budget is {MAX_ENUM_SIZE}")
    if kind in ("comm-algebra", "algebra"):
        comm = kind == "comm-algebra"
        J = M.join_irreducibles
        total = assoc = unital = 0
        for t in _bilinear_tables(M, comm):
            total += 1
            m = _extend_table(M, t)
            if any(m[m[x, y], z] != m[x, m[y, z]] for x in J for y in J for z in J):
                continue
            assoc += 1
            if _find_unit(M, m) is not None:
                unital += 1
        return {"bilinear": total, "non-unital": assoc, "unital": unital}
    if kind in ("cocomm-coalgebra", "coalgebra"):
        cocomm = kind == "cocomm-coalgebra"
        all_ = list(enumerate_coalgebras(M, cocommutative=cocomm, counital=False))
        return {"non-counital": len(all_),
                "counital": sum(1 for c in all_ if c.counit is not None)}
    raise ValueError(f"unknown structure kind {kind!r}")


# -- double algebras ---------------------------------------------------------------


class DoubleBAlgebra:
    """A module with two products ``ops = [(mult1, one1), (mult2, one2)]``."""

    def __init__(self, module: FinSemilattice, ops, name: str | None = None, fragment=False):
        self.module = module
        self.algebras = [BAlgebra(module, m, one, name=f"·{k + 1}") for k, (m, one) in enumerate(ops)]
        self.name = name or f"double algebra on {module.name}"
        self.fragment = fragment


def check_double_algebra(d: DoubleBAlgebra, exhaustive: bool = False) -> Report:
    """Both products are algebras, and

    chi:  (w ·2 x) ·1 (y ·2 z) <= (w ·1 y) ·2 (x ·1 z)
    nu:   1_2 ·1 1_2 <= 1_2
    zeta: 1_1 <= 1_1 ·2 1_1
    iota: 1_1 <= 1_2

    chi is checked on join-irreducibles (both sides are multilinear) unless
    ``exhaustive``.
    """
    M = d.module
    A1, A2 = d.algebras
    rep = Report(d.name, fragment=d.fragment)
    rep.merge(check_algebra(A1, exhaustive), prefix="[1].")
    rep.merge(check_algebra(A2, exhaustive), prefix="[2].")
    if not rep.ok:
        return rep.finish()
    m1, m2 = A1.mult, A2.mult
    gens = M.elements if exhaustive else M.join_irreducibles
    rep.law("chi")
    proper = None
    for w, x, y, z in itertools.product(gens, repeat=4):
        lhs = m1(m2(w, x), m2(y, z))
        rhs = m2(m1(w, y), m1(x, z))
        if not M.leq(lhs, rhs):
            rep.fail("chi", (w, x, y, z))
        elif proper is None and lhs != rhs:
            proper = (w, x, y, z)
    u1, u2 = A1.one, A2.one
    rep.check("nu", M.leq(m1(u2, u2), u2), (u2,))
    rep.check("zeta", M.leq(u1, m2(u1, u1)), (u1,))
    rep.check("iota", M.leq(u1, u2), (u1, u2))
    rep.notes["proper_chi"] = proper
    return rep.finish()


def language_double_algebra(alphabet, maxlen: int) -> DoubleBAlgebra:
    """Languages of words of length <= maxlen with concatenation (first) and
    shuffle (second); products longer than the bound are dropped."""
    from .relmon import lift_to_algebra, shuffle_relmonoid

    nf = shuffle_relmonoid(alphabet, maxlen)
    P, Q = (lift_to_algebra(s) for s in nf.structures)
    return DoubleBAlgebra(P.module, [(P.mult, P.one), (Q.mult, Q.one)],
                          name=f"languages({''.join(alphabet)})≤{maxlen}", fragment=True)


# -- convolution ---------------------------------------------------------------------


def convolution(C: BCoalgebra, A: BAlgebra, budget: int = 4096) -> BAlgebra:
    """The convolution algebra on Hom(C.module, A.module).

    ``(f * g)(x) = Σ f(a) · g(b)`` over the pure tensors ``a ⊗ b`` below
    ``Δx``; the unit sends x to the algebra unit when ``ε(x) = 1``.
    """
    if C.counit is None:
        raise ValueError("convolution needs a counit")
    M, N = C.module, A.module
    H = HomModule(M, N)
    if len(H) > budget:
        raise BudgetError(f"Hom has {len(H)} elements; the budget is {budget}")

    def conv(f, g):
        vals = {x: N.join_all(A.mult(f(a), g(b)) for a, b in C.delta[x].ideal) for x in M}
        h = H.find(vals)
        if h is None:
            raise ValueError("convolution left Hom; the inputs are not a coalgebra/algebra pair")
        return h

    unit = H.find({x: A.one if C.counit[x] else N.zero for x in M})
    if unit is None:
        raise ValueError("u ∘ ε is not a module map")
    table = {(f, g): conv(f, g) for f in H for g in H}
    return BAlgebra(H, table, unit, name=f"Hom({C.name}, {A.name})")


def convolve_free(C: FreeCoalgebra, A: BAlgebra, f: dict, g: dict) -> dict:
    """Convolution of maps given on generators: ``(f * g)(x) = Σ f(a)·g(b)``
    over ``(a, b)`` in ``Δx``."""
    N = A.module
    return {x: N.join_all(A.mult(f[a], g[b]) for a, b in C.delta[x]) for x in C.generators}


def convolve_languages(C: FreeCoalgebra, K: Iterable, L: Iterable) -> frozenset:
    """Convolution into the booleans, with maps written as the sets of
    generators they send to 1."""
    K, L = frozenset(K), frozenset(L)
    return frozenset(x for x in C.generators if any(a in K and b in L for a, b in C.delta[x]))


def convolution_unit_languages(C: FreeCoalgebra) -> frozenset:
    return frozenset(C.counit)


def reverse_relation(m) -> FreeCoalgebra:
    """The coalgebra of a relational monoid read backwards:
    ``Δz = {(x, y) : z ∈ x·y}`` and ``ε = units``."""
    delta = {z: set() for z in m.carrier}
    for x, y, z in m.triples:
        delta[z].add((x, y))
    return FreeCoalgebra(m.carrier, delta, frozenset(m.units), name=f"reverse({m.name})")


def check_bialgebra(m, c: FreeCoalgebra) -> Report:
    """Bimonoid laws on a free module, with the product given by a relational
    monoid ``m`` on the generators and the coproduct by ``c``:

    Δ(xy) = Δ(x)Δ(y),  ε(xy) = ε(x)ε(y),  Δ(1) = 1 ⊗ 1,  ε(1) = 1.
    """
    from .relmon import check_rel_monoid

    rep = Report(f"bialgebra({m.name}, {c.name})")
    rep.merge(check_rel_monoid(m), prefix="algebra.")
    rep.merge(check_free_coalgebra(c), prefix="coalgebra.")
    if c.counit is None:
        rep.fail("counit", "missing")
        return rep.finish()
    eps = c.counit
    rep.law("delta-multiplicative")
    rep.law("counit-multiplicative")
    for x in m.carrier:
        for y in m.carrier:
            lhs = {p for z in m.prod(x, y) for p in c.delta[z]}
            rhs = {(u, v) for a, b in c.delta[x] for cc, d in c.delta[y]
                   for u in m.prod(a, cc) for v in m.prod(b, d)}
            if lhs != rhs:
                rep.fail("delta-multiplicative", (x, y))
            if bool(m.prod(x, y) & eps) != (x in eps and y in eps):
                rep.fail("counit-multiplicative", (x, y))
    units = m.units
    rep.check("delta-unit", {p for u in units for p in c.delta[u]} == {(u, v) for u in units for v in units})
    rep.check("counit-unit", bool(units & eps))
    return rep.finish()


def group_bialgebra(m) -> FreeCoalgebra:
    """The diagonal coalgebra ``Δg = g ⊗ g``, ``ε = everything``."""
    return FreeCoalgebra(m.carrier, {g: {(g, g)} for g in m.carrier}, frozenset(m.carrier),
                         name="diagonal")


# -- graded modules ----------------------------------------------------------------------


@dataclass
class GradedModule:
    """Components indexed by a finite fragment of a monoid.

    ``decompositions[m]`` lists the pairs ``(n1, n2)`` with ``n1 n2 = m``;
    by default it is computed from ``op`` over the fragment.  Grades
    missing from ``components`` hold the zero module.
    """

    grades: tuple
    op: Callable
    unit: object
    components: dict
    decompositions: dict | None = None
    name: str = "X"

    def __post_init__(self):
        self.grades = tuple(self.grades)
        if self.decompositions is None:
            self.decompositions = {m: [(a, b) for a in self.grades for b in self.grades
                                       if self.op(a, b) == m] for m in self.grades}
        members = set(self.grades)
        for m, pairs in self.decompositions.items():
            for a, b in pairs:
                if a not in members or b not in members:
                    raise IncompleteDecomposition(f"grade {m!r} decomposes through {(a, b)!r}")
        for m in self.components:
            if m not in members:
                raise IncompleteDecomposition(f"component at unknown grade {m!r}")

    def __getitem__(self, m) -> FinSemilattice:
        return self.components.get(m) or trivial()

    def like(self, components: dict, name: str) -> GradedModule:
        return GradedModule(self.grades, self.op, self.unit, components, self.decompositions, name)


def graded_unit(X: GradedModule) -> GradedModule:
    return X.like({X.unit: boolean()}, "𝟙")


def pointwise_unit(X: GradedModule) -> GradedModule:
    return X.like({m: boolean() for m in X.grades}, "𝟏")


def graded_product(X: GradedModule, Y: GradedModule) -> GradedModule:
    """``(X ⊗ Y)_m`` is the direct sum over ``n1 n2 = m`` of ``X_n1 ⊗ Y_n2``."""
    comps = {}
    for m in X.grades:
        pairs = X.decompositions[m]
        S = direct_sum(*(tensor(X[a], Y[b]) for a, b in pairs))
        S.index_pairs = tuple(pairs)
        comps[m] = S
    return X.like(comps, f"({X.name}⊗{Y.name})")


def pointwise_product(X: GradedModule, Y: GradedModule) -> GradedModule:
    return X.like({m: tensor(X[m], Y[m]) for m in X.grades}, f"({X.name}⊙{Y.name})")


def _ji_map(S: FinSemilattice, T: FinSemilattice, on_ji: Callable) -> ModuleMorphism:
    vals = {x: T.join_all(on_ji(j) for j in S.ji_below[x]) for x in S}
    return ModuleMorphism.from_dict(S, T, vals)


def chi_component(W, X, Y, Z, m) -> tuple:
    """The m-th component of ``(W⊙X)⊗(Y⊙Z) -> (W⊗Y)⊙(X⊗Z)``, which sends
    the summand for ``(n1, n2)`` to the diagonal summand pair.  Returns
    ``(map, injective)``."""
    left = graded_product(pointwise_product(W, X), pointwise_product(Y, Z))[m]
    WY = graded_product(W, Y)[m]
    XZ = graded_product(X, Z)[m]
    target = tensor(WY, XZ)
    pairs = W.decompositions[m]

    def on_ji(j):
        k = next(i for i, v in enumerate(j) if v != left.summands[i].zero)
        (p, q), = j[k].antichain          # pure tensor of join-irreducibles
        (w, x), = p.antichain
        (y, z), = q.antichain
        wy = tuple(WY.summands[i].pure(w, y) if i == k else WY.summands[i].zero
                   for i in range(len(pairs)))
        xz = tuple(XZ.summands[i].pure(x, z) if i == k else XZ.summands[i].zero
                   for i in range(len(pairs)))
        return target.pure(wy, xz)

    f = _ji_map(left, target, on_ji)
    injective = len(set(f.values)) == len(f.values)
    return f, injective


def graded_ops(X: GradedModule, Y: GradedModule) -> dict:
    """Both products, both units, and a report on the interchange maps.

    chi is built componentwise and checked to be an injective module map;
    zeta is checked to be an isomorphism 𝟙 -> 𝟙⊙𝟙; nu is the fold
    ``(𝟏⊗𝟏)_m -> B``; iota is the identity at the unit grade.
    """
    from .boolcore import find_isomorphism

    rep = Report(f"graded({X.name}, {Y.name})")
    one, bold = graded_unit(X), pointwise_unit(X)
    for m in X.grades:
        f, inj = chi_component(X, Y, X, Y, m)
        rep.check("chi-morphism", check_morphism(f).ok, m)
        rep.check("chi-injective", inj, m)
        rep.check("zeta-iso", find_isomorphism(one[m], pointwise_product(one, one)[m]) is not None, m)
        src = graded_product(bold, bold)[m]
        B = boolean()
        fold = ModuleMorphism.from_dict(src, B, {x: int(any(e.ideal for e in x)) for x in src})
        rep.check("nu-morphism", check_morphism(fold).ok, m)
        iota_ok = (len(one[m]) == 2 and len(bold[m]) == 2) if m == X.unit else len(one[m]) == 1
        rep.check("iota", iota_ok, m)
    return {
        "graded_product": graded_product(X, Y),
        "pointwise_product": pointwise_product(X, Y),
        "graded_unit": one,
        "pointwise_unit": bold,
        "interchange_report": rep.finish(),
    }
