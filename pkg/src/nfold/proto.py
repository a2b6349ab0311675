"""Multi-stage protocols as chains of maps ``X_n -> ... -> X_1 -> X_0``.

``X_0`` is always the one-element set ``("*",)``.  The product ``⊗_r``
pairs the two protocols up to stage r and then lets one side continue:

* level ``i <= r``: pairs ``(a, b)``;
* level ``i > r``: ``("L", a, b_r)`` with ``a`` in ``X_i`` and ``b_r`` in
  ``Y_r``, or ``("R", a_r, b)`` with ``a_r`` in ``X_r`` and ``b`` in ``Y_i``.

The maps act componentwise, and an ``L``/``R`` element at level ``r + 1``
lands on the pair it came from.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable

from .report import Report

STAR = "*"


@dataclass(frozen=True)
class ProtocolChain:
    """``levels[i-1]`` is ``X_i``; ``maps[i-1]`` sends ``X_{i+1}`` to ``X_i``."""

    levels: tuple
    maps: tuple
    name: str = "X"

    @classmethod
    def make(cls, levels: Iterable, maps: Iterable[dict], name="X") -> ProtocolChain:
        levels = tuple(tuple(l) for l in levels)
        maps = tuple(tuple(sorted(dict(m).items(), key=repr)) for m in maps)
        return cls(levels, maps, name)

    @property
    def n(self) -> int:
        return len(self.levels)

    def level(self, i: int) -> tuple:
        if i == 0:
            return (STAR,)
        return self.levels[i - 1]

    def down(self, i: int, x):
        """The image of ``x`` (at level i >= 1) at level i - 1."""
        if i == 1:
            return STAR
        return dict(self.maps[i - 2])[x]

    def fiber(self, i: int, x) -> tuple:
        """Elements of level i + 1 over ``x`` at level i."""
        return tuple(y for y in self.level(i + 1) if self.down(i + 1, y) == x)

    def sizes(self) -> tuple:
        return tuple(len(l) for l in self.levels)

    def __repr__(self):
        return f"ProtocolChain({self.name}: sizes {self.sizes()})"


def chain_from_arrow(A: dict, Q: Iterable, name="p") -> ProtocolChain:
    """A client/server protocol ``p: A -> Q`` as a two-stage chain."""
    return ProtocolChain.make([tuple(Q), tuple(A)], [A], name=name)


def check_chain(X: ProtocolChain) -> Report:
    rep = Report(f"chain {X.name}")
    rep.law("maps")
    if len(X.maps) != max(X.n - 1, 0):
        rep.fail("maps", f"{len(X.maps)} maps for {X.n} levels")
        return rep.finish()
    for i in range(2, X.n + 1):
        m = dict(X.maps[i - 2])
        targets = set(X.level(i - 1))
        for x in X.level(i):
            if x not in m or m[x] not in targets:
                rep.fail("maps", (i, x))
    return rep.finish()


def _pair(v):
    return (STAR, STAR) if v == STAR else v


def tensor_r(X: ProtocolChain, Y: ProtocolChain, r: int) -> ProtocolChain:
    """The product ``X ⊗_r Y``."""
    if X.n != Y.n:
        raise ValueError(f"chains have different lengths {X.n} and {Y.n}")
    n = X.n
    if not 0 <= r <= n:
        raise ValueError(f"r must be in 0..{n}, got {r}")
    levels = []
    for i in range(1, n + 1):
        if i <= r:
            levels.append(tuple(itertools.product(X.level(i), Y.level(i))))
        else:
            levels.append(tuple(("L", a, b) for a in X.level(i) for b in Y.level(r))
                          + tuple(("R", a, b) for a in X.level(r) for b in Y.level(i)))
    maps = []
    for i in range(2, n + 1):
        m = {}
        for e in levels[i - 1]:
            if i <= r:
                a, b = e
                m[e] = (X.down(i, a), Y.down(i, b))
            else:
                tag, a, b = e
                if tag == "L":
                    a = X.down(i, a)
                else:
                    b = Y.down(i, b)
                m[e] = (a, b) if i - 1 == r else (tag, a, b)
        maps.append(m)
    return ProtocolChain.make(levels, maps, name=f"({X.name}⊗{r}{Y.name})")


def unit_chain(n: int, r: int) -> ProtocolChain:
    """One point at each level up to r, nothing above."""
    levels = [("u",) if i <= r else () for i in range(1, n + 1)]
    maps = [{"u": "u"} if i + 1 <= r else {} for i in range(1, n)]
    return ProtocolChain.make(levels, maps, name=f"1_{r}")


# -- isomorphism -------------------------------------------------------------------


def _children(X: ProtocolChain) -> dict:
    kids: dict = {(0, STAR): []}
    for i in range(1, X.n + 1):
        for x in X.level(i):
            kids[(i, x)] = []
    for i in range(1, X.n + 1):
        for x in X.level(i):
            kids[(i - 1, X.down(i, x))].append((i, x))
    return kids


def _canon(kids: dict, node, memo: dict) -> str:
    if node not in memo:
        memo[node] = "(" + "".join(sorted(_canon(kids, c, memo) for c in kids[node])) + ")"
    return memo[node]


def canonical_chain(X: ProtocolChain) -> str:
    """Canonical encoding of the chain as a rooted tree (the root is X_0)."""
    return _canon(_children(X), (0, STAR), {})


def find_chain_isomorphism(X: ProtocolChain, Y: ProtocolChain) -> dict | None:
    """Levelwise bijections commuting with the maps, as ``{(i, x): y}``, or None.

    A chain is a rooted tree whose depth-i nodes are the elements of X_i, so
    chain isomorphisms are tree isomorphisms; children are matched by their
    canonical encodings.
    """
    if X.n != Y.n:
        return None
    kx, ky = _children(X), _children(Y)
    mx, my = {}, {}
    if _canon(kx, (0, STAR), mx) != _canon(ky, (0, STAR), my):
        return None
    iso = {}

    def match(a, b):
        if a[0] > 0:
            iso[a] = b[1]
        pool = sorted(ky[b], key=lambda c: my[c])
        for c in sorted(kx[a], key=lambda c: mx[c]):
            d = next(d for d in pool if my[d] == mx[c])
            pool.remove(d)
            match(c, d)

    match((0, STAR), (0, STAR))
    return iso


def is_chain_morphism(X: ProtocolChain, Y: ProtocolChain, f: dict) -> bool:
    """``f[(i, x)]`` lands in Y_i and commutes with the maps."""
    for i in range(1, X.n + 1):
        for x in X.level(i):
            y = f.get((i, x))
            if y not in Y.level(i):
                return False
            if i > 1 and f[(i - 1, X.down(i, x))] != Y.down(i, y):
                return False
    return True


def is_injective(f: dict) -> bool:
    return len(set(f.items())) == len({(i, y) for (i, _), y in f.items()})


# -- interchange -----------------------------------------------------------------


def chi_map(W, X, Y, Z, r: int, s: int) -> dict:
    """The comparison ``(W ⊗s X) ⊗r (Y ⊗s Z) -> (W ⊗r Y) ⊗s (X ⊗r Z)`` for r < s."""
    if not r < s:
        raise ValueError("need r < s")
    src = tensor_r(tensor_r(W, X, s), tensor_r(Y, Z, s), r)
    f = {}
    for i in range(1, src.n + 1):
        for e in src.level(i):
            f[(i, e)] = _chi_element(e, i, r, s)
    return f


def _chi_element(e, i, r, s):
    if i <= r:
        (w, x), (y, z) = e
        return ((w, y), (x, z))
    tag, a, b = e
    if i <= s:
        if tag == "L":
            (w, x), (yr, zr) = a, _pair(b)
            return (("L", w, yr), ("L", x, zr))
        (wr, xr), (y, z) = _pair(a), b
        return (("R", wr, y), ("R", xr, z))
    if tag == "L":
        yr, zr = _pair(b)
        inner, u, v = a
        if inner == "L":          # w at level i, x at level s
            return ("L", ("L", u, yr), ("L", v, zr))
        return ("R", ("L", u, yr), ("L", v, zr))   # w at level s, x at level i
    wr, xr = _pair(a)
    inner, u, v = b
    if inner == "L":              # y at level i, z at level s
        return ("L", ("R", wr, u), ("R", xr, v))
    return ("R", ("R", wr, u), ("R", xr, v))       # y at level s, z at level i


def check_chi(W, X, Y, Z, r: int, s: int) -> Report:
    src = tensor_r(tensor_r(W, X, s), tensor_r(Y, Z, s), r)
    tgt = tensor_r(tensor_r(W, Y, r), tensor_r(X, Z, r), s)
    f = chi_map(W, X, Y, Z, r, s)
    rep = Report(f"chi[{r},{s}]")
    rep.check("morphism", is_chain_morphism(src, tgt, f))
    rep.check("injective", is_injective(f))
    rep.notes["surjective"] = sum(len(l) for l in src.levels) == sum(len(l) for l in tgt.levels)
    return rep.finish()


# -- checks ------------------------------------------------------------------------


def fiber_law(X: ProtocolChain, Y: ProtocolChain, r: int) -> Report:
    """Over a level-r point ``(a, b)`` of ``X ⊗r Y`` the next level is
    ``X_{r+1}`` over a (paired with b) plus ``Y_{r+1}`` over b (paired with a)."""
    rep = Report(f"fiber law r={r}")
    rep.law("fiber")
    T = tensor_r(X, Y, r)
    if r >= T.n:
        return rep.finish()
    for point in T.level(r):
        a, b = _pair(point)
        got = set(T.fiber(r, point))
        want = {("L", x, b) for x in X.fiber(r, a)} | {("R", a, y) for y in Y.fiber(r, b)}
        if got != want:
            rep.fail("fiber", point)
    return rep.finish()


def cardinality_law(X: ProtocolChain, Y: ProtocolChain, r: int) -> bool:
    T = tensor_r(X, Y, r)
    for i in range(1, X.n + 1):
        if i <= r:
            want = len(X.level(i)) * len(Y.level(i))
        else:
            want = len(X.level(i)) * len(Y.level(r)) + len(X.level(r)) * len(Y.level(i))
        if len(T.level(i)) != want:
            return False
    return True


def is_pointwise_product(X, Y) -> bool:
    T = tensor_r(X, Y, X.n)
    return all(set(T.level(i)) == set(itertools.product(X.level(i), Y.level(i)))
               for i in range(1, X.n + 1)) and all(
        T.down(i, (a, b)) == (X.down(i, a), Y.down(i, b))
        for i in range(2, X.n + 1) for a, b in T.level(i))


def is_pointwise_disjoint_union(X, Y) -> bool:
    T = tensor_r(X, Y, 0)
    for i in range(1, X.n + 1):
        want = {("L", a, STAR) for a in X.level(i)} | {("R", STAR, b) for b in Y.level(i)}
        if set(T.level(i)) != want:
            return False
    for i in range(2, X.n + 1):
        for tag, a, b in T.level(i):
            img = T.down(i, (tag, a, b))
            if tag == "L" and img != ("L", X.down(i, a), STAR):
                return False
            if tag == "R" and img != ("R", STAR, Y.down(i, b)):
                return False
    return True


def check_proto_monoidal(n: int, r: int, fixtures: list, triples: int = 20, seed: int = 0) -> Report:
    """Unit, associativity (on sampled triples), symmetry, the fiber law and,
    for every s > r, an injective interchange map."""
    rep = Report(f"⊗_{r} on chains of length {n}")
    one = unit_chain(n, r)
    for law in ("unit-left", "unit-right", "symmetry", "associativity", "fiber", "cardinality",
                "interchange"):
        rep.law(law)
    for k, X in enumerate(fixtures):
        if find_chain_isomorphism(tensor_r(X, one, r), X) is None:
            rep.fail("unit-right", k)
        if find_chain_isomorphism(tensor_r(one, X, r), X) is None:
            rep.fail("unit-left", k)
    for (a, X), (b, Y) in itertools.product(enumerate(fixtures), repeat=2):
        if find_chain_isomorphism(tensor_r(X, Y, r), tensor_r(Y, X, r)) is None:
            rep.fail("symmetry", (a, b))
        if not fiber_law(X, Y, r).ok:
            rep.fail("fiber", (a, b))
        if not cardinality_law(X, Y, r):
            rep.fail("cardinality", (a, b))
    rng = random.Random(seed)
    idx = range(len(fixtures))
    picks = [tuple(rng.choice(idx) for _ in range(3)) for _ in range(triples)]
    for a, b, c in picks:
        X, Y, Z = fixtures[a], fixtures[b], fixtures[c]
        lhs = tensor_r(tensor_r(X, Y, r), Z, r)
        rhs = tensor_r(X, tensor_r(Y, Z, r), r)
        if find_chain_isomorphism(lhs, rhs) is None:
            rep.fail("associativity", (a, b, c))
    for s in range(r + 1, n + 1):
        for _ in range(triples):
            q = [fixtures[rng.choice(idx)] for _ in range(4)]
            if not check_chi(*q, r, s).ok:
                rep.fail("interchange", s)
    return rep.finish()


# -- fixtures ---------------------------------------------------------------------


def random_chain(n: int, max_size: int = 3, rng: random.Random | None = None, name="X",
                 allow_empty: bool = True) -> ProtocolChain:
    rng = rng or random.Random(0)
    lo = 0 if allow_empty else 1
    levels = []
    for i in range(1, n + 1):
        k = rng.randint(lo, max_size)
        if i > 1 and not levels[-1]:
            k = 0
        levels.append(tuple(f"{name.lower()}{i}{c}" for c in "abc"[:k]))
    maps = [{x: rng.choice(levels[i - 1]) for x in levels[i]} for i in range(1, n)]
    return ProtocolChain.make(levels, maps, name=name)


def fixture_chains(n: int, count: int = 6, max_size: int = 3, seed: int = 0) -> list:
    rng = random.Random(seed)
    out = [unit_chain(n, k) for k in range(n + 1)]
    for k in range(count):
        out.append(random_chain(n, max_size, rng, name="XYZWVU"[k % 6]))
    return out
