"""Finite semilattices regarded as modules over the boolean semiring.

A finite B-module is a finite join-semilattice with a least element.  This
module provides the basic constructions on them: direct sums, tensor
products, Hom modules, duals, free modules, meets and isomorphism search.

Elements are arbitrary hashable ids.  Tensor products represent their
elements as *bi-ideals*: down-closed sets of pairs of nonzero elements which
are closed under joins in each coordinate separately (the zero-coordinate
pairs are implicit).  Every bi-ideal is the closure of its antichain of
maximal pairs, which is how elements are displayed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Hashable, Iterable, Sequence

from .report import Report

Element = Hashable


class FormatError(ValueError):
    """A structure table refers to ids outside its carrier or is not total."""


class FinSemilattice:
    """A finite join-semilattice with zero.

    ``join`` is either a table ``{(x, y): z}`` or a function; the table form
    is materialised lazily through :attr:`table` when a full check needs it.
    ``leq`` may be supplied when the order is cheaper to decide directly than
    through ``join(x, y) == y``.
    """

    def __init__(
        self,
        elements: Iterable[Element],
        join: dict | Callable[[Element, Element], Element],
        zero: Element,
        *,
        leq: Callable[[Element, Element], bool] | None = None,
        name: str | None = None,
    ):
        self.elements = tuple(elements)
        self.zero = zero
        self.name = name
        if callable(join):
            self._join_fn = join
            self._table = None
        else:
            self._join_fn = None
            self._table = dict(join)
        self._leq_fn = leq
        self._memo: dict = {}

    # -- basic operations -------------------------------------------------

    def join(self, x: Element, y: Element) -> Element:
        if self._table is not None:
            return self._table[x, y]
        key = (x, y)
        try:
            return self._memo[key]
        except KeyError:
            z = self._memo[key] = self._join_fn(x, y)
            return z

    def join_all(self, xs: Iterable[Element]) -> Element:
        acc = self.zero
        for x in xs:
            acc = self.join(acc, x)
        return acc

    def leq(self, x: Element, y: Element) -> bool:
        if self._leq_fn is not None:
            return self._leq_fn(x, y)
        return self.join(x, y) == y

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.index

    def __repr__(self) -> str:
        label = self.name or "FinSemilattice"
        return f"<{label} with {len(self)} elements>"

    @property
    def table(self) -> dict:
        if self._table is None:
            self._table = {(x, y): self.join(x, y) for x in self.elements for y in self.elements}
        return self._table

    @cached_property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.elements)}

    # -- derived order data ----------------------------------------------

    @cached_property
    def below(self) -> dict:
        return {y: frozenset(x for x in self.elements if self.leq(x, y)) for y in self.elements}

    @cached_property
    def above(self) -> dict:
        return {x: frozenset(y for y in self.elements if self.leq(x, y)) for x in self.elements}

    @cached_property
    def top(self) -> Element:
        return self.join_all(self.elements)

    @cached_property
    def join_irreducibles(self) -> tuple:
        """Nonzero elements that are not the join of the elements strictly below them."""
        out = []
        for x in self.elements:
            if x == self.zero:
                continue
            strictly = [y for y in self.below[x] if y != x]
            if self.join_all(strictly) != x:
                out.append(x)
        return tuple(sorted(out, key=lambda j: (len(self.below[j]), self.index[j])))

    @cached_property
    def ji_below(self) -> dict:
        jis = self.join_irreducibles
        return {x: frozenset(j for j in jis if self.leq(j, x)) for x in self.elements}

    def nonzero_below(self, x: Element) -> frozenset:
        return self.below[x] - {self.zero}


# -- constructors -----------------------------------------------------------


def semilattice_from_table(elements, rows: Iterable[Sequence], zero, name=None) -> FinSemilattice:
    """Build from ``(x, y, z)`` rows meaning ``x + y = z``; validates membership."""
    elements = tuple(elements)
    carrier = set(elements)
    table = {}
    for row in rows:
        if len(row) != 3:
            raise FormatError(f"join row {row!r} must have three entries")
        x, y, z = row
        for v in (x, y, z):
            if v not in carrier:
                raise FormatError(f"join entry {v!r} is not in the carrier")
        table[x, y] = z
    if zero not in carrier:
        raise FormatError(f"zero {zero!r} is not in the carrier")
    missing = [(x, y) for x in elements for y in elements if (x, y) not in table]
    if missing:
        raise FormatError(f"join table is not total, e.g. missing {missing[0]!r}")
    return FinSemilattice(elements, table, zero, name=name)


def from_order(elements, leq: Callable[[Any, Any], bool], name=None) -> FinSemilattice:
    """The semilattice whose order is ``leq``; raises if joins or zero are missing."""
    elements = tuple(elements)
    table = {}
    for x in elements:
        for y in elements:
            ubs = [z for z in elements if leq(x, z) and leq(y, z)]
            least = [z for z in ubs if all(leq(z, w) for w in ubs)]
            if len(least) != 1:
                raise ValueError(f"{x!r} and {y!r} have no least upper bound")
            table[x, y] = least[0]
    bottoms = [z for z in elements if all(leq(z, w) for w in elements)]
    if len(bottoms) != 1:
        raise ValueError("order has no least element")
    return FinSemilattice(elements, table, bottoms[0], leq=None, name=name)


def boolean() -> FinSemilattice:
    """The boolean semiring B = {0 < 1}."""
    return chain(2, name="B")


def trivial() -> FinSemilattice:
    return FinSemilattice((0,), {(0, 0): 0}, 0, name="1")


def chain(n: int, name: str | None = None) -> FinSemilattice:
    elements = tuple(range(n))
    return FinSemilattice(elements, {(x, y): max(x, y) for x in elements for y in elements}, 0,
                          name=name or f"chain{n}")


def diamond() -> FinSemilattice:
    """Five elements 0 < 1, 2, 3 < T: the subsets of {1,2,3} containing all
    three as soon as they contain any two."""
    atoms = (1, 2, 3)

    def join(x, y):
        if x == 0:
            return y
        if y == 0 or x == y:
            return x
        return "T"

    return FinSemilattice((0, *atoms, "T"), join, 0, name="M3")


def pentagon() -> FinSemilattice:
    """The non-modular lattice 0 < a < b < T, 0 < c < T."""
    order = {("0", "a"), ("a", "b"), ("0", "b"), ("0", "c")}
    elements = ("0", "a", "b", "c", "T")

    def leq(x, y):
        return x == y or x == "0" or y == "T" or (x, y) in order

    return from_order(elements, leq, name="N5")


def free_module(X: Iterable) -> FinSemilattice:
    """B[X]: all subsets of the finite set ``X`` under union."""
    X = tuple(X)
    subsets = [frozenset(c) for r in range(len(X) + 1) for c in itertools.combinations(X, r)]
    M = FinSemilattice(subsets, lambda a, b: a | b, frozenset(), leq=lambda a, b: a <= b,
                       name=f"B[{','.join(map(str, X))}]")
    M.generators = X
    return M


def direct_sum(*modules: FinSemilattice) -> FinSemilattice:
    """Cartesian product with componentwise join; elements are tuples."""
    elements = tuple(itertools.product(*(M.elements for M in modules)))

    def join(x, y):
        return tuple(M.join(a, b) for M, a, b in zip(modules, x, y))

    def leq(x, y):
        return all(M.leq(a, b) for M, a, b in zip(modules, x, y))

    S = FinSemilattice(elements, join, tuple(M.zero for M in modules), leq=leq,
                       name=" ⊕ ".join(M.name or "?" for M in modules) or "0")
    S.summands = modules
    return S


def injection(S: FinSemilattice, i: int, x: Element) -> tuple:
    """Include ``x`` from the ``i``-th summand of a direct sum."""
    return tuple(x if k == i else M.zero for k, M in enumerate(S.summands))


def opposite(M: FinSemilattice) -> FinSemilattice:
    """The order dual of a finite lattice: join becomes meet, zero becomes top."""
    return FinSemilattice(M.elements, lambda x, y: meet(M, x, y), M.top,
                          leq=lambda x, y: M.leq(y, x), name=f"{M.name}^op")


def meet(M: FinSemilattice, a: Element, b: Element) -> Element:
    """Join of all common lower bounds; the lattice meet in a finite module."""
    return M.join_all(M.below[a] & M.below[b])


# -- tensor products ----------------------------------------------------------


def ideal_closure(factors: Sequence[FinSemilattice], gens: Iterable[tuple]) -> frozenset:
    """Normal form in the tensor product of ``factors`` of the sum of ``gens``.

    The result is the least set of nonzero tuples containing ``gens`` that is
    down-closed and closed under joining two tuples differing in one
    coordinate.
    """
    k = len(factors)
    ideal: set = set()

    def add_down(t):
        if any(x == M.zero for M, x in zip(factors, t)):
            return
        if t in ideal:
            return
        for d in itertools.product(*(M.nonzero_below(x) for M, x in zip(factors, t))):
            ideal.add(d)

    for t in gens:
        add_down(tuple(t))
    changed = True
    while changed:
        changed = False
        for i in range(k):
            M = factors[i]
            groups: dict = {}
            for t in ideal:
                groups.setdefault(t[:i] + t[i + 1:], []).append(t[i])
            for rest, values in groups.items():
                j = M.join_all(values)
                t = rest[:i] + (j,) + rest[i:]
                if t not in ideal:
                    add_down(t)
                    changed = True
    return frozenset(ideal)


@dataclass(frozen=True)
class TensorElement:
    """An element of a tensor product, stored as its bi-ideal."""

    ideal: frozenset
    factors: tuple = field(default=(), compare=False, repr=False, hash=False)

    @cached_property
    def antichain(self) -> tuple:
        """Maximal tuples of the ideal; the element is their sum."""
        fs = self.factors
        maximal = []
        for t in self.ideal:
            if not any(
                u != t and all(M.leq(a, b) for M, a, b in zip(fs, t, u)) for u in self.ideal
            ):
                maximal.append(t)
        return tuple(sorted(maximal, key=repr))

    def __repr__(self) -> str:
        if not self.ideal:
            return "0"
        return "+".join("".join(map(str, t)) for t in self.antichain)

    def __le__(self, other: TensorElement) -> bool:
        return self.ideal <= other.ideal


class TensorProduct(FinSemilattice):
    """``left ⊗ right``; elements are :class:`TensorElement` values."""

    def __init__(self, left: FinSemilattice, right: FinSemilattice):
        self.left, self.right = left, right
        self.factors = (left, right)
        zero = self.element(())
        elements = self._generate(zero)
        super().__init__(
            elements,
            lambda a, b: self.element(a.ideal | b.ideal),
            zero,
            leq=lambda a, b: a.ideal <= b.ideal,
            name=f"{left.name}⊗{right.name}",
        )

    def element(self, gens: Iterable[tuple]) -> TensorElement:
        return TensorElement(ideal_closure(self.factors, gens), self.factors)

    def pure(self, m: Element, n: Element) -> TensorElement:
        return self.element([(m, n)])

    def _generate(self, zero: TensorElement) -> tuple:
        # every element is a finite sum of pure tensors of join-irreducibles
        gens = [
            self.pure(m, n)
            for m in self.left.join_irreducibles
            for n in self.right.join_irreducibles
        ]
        seen = {zero.ideal: zero}
        frontier = [zero]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    if g.ideal <= x.ideal:
                        continue
                    y = self.element(x.ideal | g.ideal)
                    if y.ideal not in seen:
                        seen[y.ideal] = y
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(seen.values(), key=lambda e: (len(e.ideal), repr(e))))


def tensor(M: FinSemilattice, N: FinSemilattice) -> TensorProduct:
    return TensorProduct(M, N)


# -- morphisms and Hom ------------------------------------------------------


@dataclass(frozen=True)
class ModuleMorphism:
    """A join- and zero-preserving map, stored as images in source order."""

    source: FinSemilattice = field(compare=False, repr=False, hash=False)
    target: FinSemilattice = field(compare=False, repr=False, hash=False)
    values: tuple = ()

    @classmethod
    def from_dict(cls, source, target, mapping: dict) -> ModuleMorphism:
        return cls(source, target, tuple(mapping[x] for x in source.elements))

    def __call__(self, x: Element) -> Element:
        return self.values[self.source.index[x]]

    def as_dict(self) -> dict:
        return dict(zip(self.source.elements, self.values))

    def __repr__(self) -> str:
        return "{" + ", ".join(f"{x!r}↦{y!r}" for x, y in self.as_dict().items()) + "}"


def check_morphism(f: ModuleMorphism) -> Report:
    rep = Report("module-morphism")
    S, T = f.source, f.target
    for y in f.values:
        if y not in T:
            raise FormatError(f"image {y!r} is not in the target")
    rep.check("zero", f(S.zero) == T.zero, S.zero)
    rep.law("join")
    for x in S:
        for y in S:
            if f(S.join(x, y)) != T.join(f(x), f(y)):
                rep.fail("join", (x, y))
    return rep.finish()


def _join_constraints(M: FinSemilattice) -> list:
    """Conditions under which a monotone map on join-irreducibles extends to
    a module morphism.

    The extension ``f(x) = sum of f(j) for j <= x`` preserves joins iff every
    join-irreducible ``j`` below ``x + y`` maps below ``f(x) + f(y)``.  Only
    ``j`` outside the join-irreducibles below x or y give real conditions;
    they are returned as ``(stage, j, frozenset of join-irreducibles)``,
    where ``stage`` is the last position (in ``M.join_irreducibles``) the
    condition depends on.
    """
    jis = M.join_irreducibles
    pos = {j: i for i, j in enumerate(jis)}
    seen = set()
    out = []
    for x in M.elements:
        for y in M.elements:
            base = M.ji_below[x] | M.ji_below[y]
            for j in M.ji_below[M.join(x, y)] - base:
                key = (j, base)
                if key in seen:
                    continue
                seen.add(key)
                stage = max([pos[j]] + [pos[k] for k in base])
                out.append((stage, j, base))
    return out


def iter_morphisms(M: FinSemilattice, N: FinSemilattice):
    """All module morphisms M -> N, in a deterministic order.

    A morphism is fixed by its values on join-irreducibles.  Values are
    assigned by backtracking; monotonicity among join-irreducibles and the
    join conditions of :func:`_join_constraints` are checked as soon as the
    values they mention are known.
    """
    jis = M.join_irreducibles
    pos = {j: i for i, j in enumerate(jis)}
    lower = [[k for k in range(i) if M.leq(jis[k], jis[i])] for i in range(len(jis))]
    upper = [[k for k in range(i) if M.leq(jis[i], jis[k])] for i in range(len(jis))]
    at_stage: list = [[] for _ in jis]
    for stage, j, base in _join_constraints(M):
        at_stage[stage].append((pos[j], [pos[k] for k in base]))
    assign: list = [None] * len(jis)

    def extend():
        vals = [N.join_all(assign[pos[j]] for j in M.ji_below[x]) for x in M.elements]
        return ModuleMorphism(M, N, tuple(vals))

    def rec(i):
        if i == len(jis):
            yield extend()
            return
        for y in N.elements:
            if not all(N.leq(assign[k], y) for k in lower[i]):
                continue
            if not all(N.leq(y, assign[k]) for k in upper[i]):
                continue
            assign[i] = y
            if all(N.leq(assign[j], N.join_all(assign[k] for k in base))
                   for j, base in at_stage[i]):
                yield from rec(i + 1)
        assign[i] = None

    yield from rec(0)


class HomModule(FinSemilattice):
    """Hom(M, N) with the pointwise join."""

    def __init__(self, source: FinSemilattice, target: FinSemilattice):
        self.source, self.target = source, target
        maps = tuple(iter_morphisms(source, target))
        zero = ModuleMorphism(source, target, tuple(target.zero for _ in source.elements))
        lookup = {f.values: f for f in maps}

        def join(f, g):
            return lookup[tuple(target.join(a, b) for a, b in zip(f.values, g.values))]

        def leq(f, g):
            return all(target.leq(a, b) for a, b in zip(f.values, g.values))

        super().__init__(maps, join, lookup[zero.values], leq=leq,
                         name=f"Hom({source.name},{target.name})")
        self.lookup = lookup

    def find(self, mapping: dict) -> ModuleMorphism | None:
        return self.lookup.get(tuple(mapping[x] for x in self.source.elements))


def hom_module(M: FinSemilattice, N: FinSemilattice) -> HomModule:
    return HomModule(M, N)


def dual_iso(M: FinSemilattice) -> dict:
    """The bijection ``x -> f_x`` from M onto Hom(M, B), with
    ``f_x(y) = 0`` iff ``y <= x``.

    Raises ``ValueError`` if the bijection is not an order-reversing module
    isomorphism onto Hom(M, B) (which would contradict the duality).
    """
    B = boolean()
    H = hom_module(M, B)
    iso = {}
    for x in M:
        f = H.find({y: 0 if M.leq(y, x) else 1 for y in M})
        if f is None:
            raise ValueError(f"f_{x!r} is not a homomorphism")
        iso[x] = f
    if len(set(iso.values())) != len(M) or len(H) != len(M):
        raise ValueError("x -> f_x is not a bijection onto Hom(M, B)")
    for x in M:
        for y in M:
            if H.leq(iso[x], iso[y]) != M.leq(y, x):
                raise ValueError(f"order not reversed at {x!r}, {y!r}")
            if H.join(iso[x], iso[y]) != iso[meet(M, x, y)]:
                raise ValueError(f"f_{x!r} + f_{y!r} != f of the meet")
    return iso


# -- isomorphism search -------------------------------------------------------


def _signature(M: FinSemilattice, x) -> tuple:
    return (len(M.below[x]), len(M.above[x]), len(M.ji_below[x]))


def find_isomorphism(M: FinSemilattice, N: FinSemilattice) -> dict | None:
    """A module isomorphism M -> N as a dict, or None.

    Finite semilattices are lattices, so an isomorphism is the same thing as
    a bijection of join-irreducibles carrying the family of sets
    ``{JI below x}`` of M onto that of N.  Bijections are searched with
    signature and order pruning, and every element whose join-irreducibles
    are all assigned is checked as soon as possible.
    """
    if len(M) != len(N):
        return None
    jm, jn = M.join_irreducibles, N.join_irreducibles
    if len(jm) != len(jn):
        return None
    if sorted(_signature(M, x) for x in M) != sorted(_signature(N, y) for y in N):
        return None
    family_n = {N.ji_below[y]: y for y in N}
    if len(family_n) != len(N):
        return None
    order = sorted(range(len(jm)), key=lambda i: (-len(M.above[jm[i]]), i))
    jm = [jm[i] for i in order]
    pos = {j: i for i, j in enumerate(jm)}
    # elements of M grouped by the last JI (in search order) they depend on
    ready: dict = {i: [] for i in range(len(jm))}
    for x in M:
        s = M.ji_below[x]
        if s:
            ready[max(pos[j] for j in s)].append(x)
    sigma: dict = {}
    used: set = set()

    def rec(i):
        if i == len(jm):
            return True
        a = jm[i]
        for b in jn:
            if b in used or _signature(M, a) != _signature(N, b):
                continue
            if any(M.leq(a, c) != N.leq(b, sigma[c]) or M.leq(c, a) != N.leq(sigma[c], b)
                   for c in sigma):
                continue
            sigma[a] = b
            used.add(b)
            if all(frozenset(sigma[j] for j in M.ji_below[x]) in family_n for x in ready[i]):
                if rec(i + 1):
                    return True
            del sigma[a]
            used.discard(b)
        return False

    if not rec(0):
        return None
    iso = {x: family_n[frozenset(sigma[j] for j in M.ji_below[x])] for x in M}
    if len(set(iso.values())) != len(N):
        return None
    return iso


def is_isomorphic(M: FinSemilattice, N: FinSemilattice) -> bool:
    return find_isomorphism(M, N) is not None


# -- checks ---------------------------------------------------------------------


def check_semilattice(M: FinSemilattice) -> Report:
    """Commutativity, associativity, idempotence and the zero law on the full table."""
    carrier = set(M.elements)
    if M.zero not in carrier:
        raise FormatError(f"zero {M.zero!r} is not in the carrier")
    table = M.table
    for x in M.elements:
        for y in M.elements:
            if (x, y) not in table:
                raise FormatError(f"join table is not total at {(x, y)!r}")
            if table[x, y] not in carrier:
                raise FormatError(f"join of {(x, y)!r} is {table[x, y]!r}, outside the carrier")
    rep = Report(M.name or "semilattice")
    for law in ("commutativity", "associativity", "idempotence", "unit"):
        rep.law(law)
    for x in M.elements:
        if table[x, x] != x:
            rep.fail("idempotence", (x,))
        if table[x, M.zero] != x or table[M.zero, x] != x:
            rep.fail("unit", (x,))
        for y in M.elements:
            if table[x, y] != table[y, x]:
                rep.fail("commutativity", (x, y))
            xy = table[x, y]
            for z in M.elements:
                if table[xy, z] != table[x, table[y, z]]:
                    rep.fail("associativity", (x, y, z))
    return rep.finish()


def all_lattices(n: int) -> list[FinSemilattice]:
    """One representative of every isomorphism class of n-element finite
    semilattices with zero (equivalently, n-element lattices)."""
    if n <= 0:
        return []
    if n == 1:
        return [trivial()]
    middle = list(range(1, n - 1))
    pairs = [(a, b) for a in middle for b in middle if a != b]
    found: list[FinSemilattice] = []
    for bits in itertools.product((False, True), repeat=len(pairs)):
        less = {p for p, on in zip(pairs, bits) if on}
        if any((b, a) in less for a, b in less):
            continue
        if any((a, c) not in less for a, b in less for b2, c in less if b == b2 and a != c):
            continue

        def leq(x, y, less=less):
            return x == y or x == 0 or y == n - 1 or (x, y) in less

        try:
            L = from_order(range(n), leq)
        except ValueError:
            continue
        if not any(is_isomorphic(L, K) for K in found):
            L.name = f"L{n}.{len(found)}"
            found.append(L)
    return found
