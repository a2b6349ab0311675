"""Word and pomset models of concurrency.

Words are Python strings; a language is a finite set of words.  Pomsets are
finite labelled posets with events ``0..n-1`` and a transitively closed
strict order, compared up to isomorphism through :func:`canonical_form`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Hashable, Iterable

from .report import Report


class BoundError(ValueError):
    """A language product would leave the declared length bound."""


# -- words and languages -------------------------------------------------------


@lru_cache(maxsize=None)
def _shuffle(u, v) -> frozenset:
    if not u:
        return frozenset({v})
    if not v:
        return frozenset({u})
    x, rest_u = u[:1], u[1:]
    y, rest_v = v[:1], v[1:]
    return frozenset({x + w for w in _shuffle(rest_u, v)} | {y + w for w in _shuffle(u, rest_v)})


def shuffle(u, v) -> frozenset:
    """All interleavings of ``u`` and ``v`` that keep each word's letter order.

    Works on strings and on tuples.
    """
    return _shuffle(u, v)


CONCAT = "concat"
SHUFFLE = "shuffle"


def lang_product(op: str, X: Iterable, Y: Iterable, maxlen: int | None = None) -> frozenset:
    """Complex product of two languages under concatenation or shuffle."""
    Y = tuple(Y)
    out: set = set()
    for a in X:
        for b in Y:
            if maxlen is not None and len(a) + len(b) > maxlen:
                raise BoundError(f"{a!r} {op} {b!r} exceeds the length bound {maxlen}")
            if op == CONCAT:
                out.add(a + b)
            elif op == SHUFFLE:
                out |= shuffle(a, b)
            else:
                raise ValueError(f"unknown language product {op!r}")
    return frozenset(out)


def check_concurrent_dioid(alphabet: Iterable[str], maxlen: int) -> Report:
    """Lax interchange and unit laws of (concat, shuffle) on singleton languages.

    Checked orientation: ``(W ⧢ X)·(Y ⧢ Z) ⊆ (W·Y) ⧢ (X·Z)`` for all words of
    total length <= maxlen.  The transposed orientation
    ``(W·X) ⧢ (Y·Z) ⊆ (W ⧢ Y)·(X ⧢ Z)`` fails in general; its first
    counterexample is recorded in the note ``transposed_counterexample``.
    """
    from .relmon import _bounded_tuples, words

    ws = words(alphabet, maxlen)
    weight = {w: len(w) for w in ws}
    rep = Report(f"concurrent-dioid({''.join(alphabet)}, ≤{maxlen})", fragment=True)
    rep.law("interchange")
    proper = transposed = None
    for w, x, y, z in _bounded_tuples(ws, 4, weight, maxlen):
        lhs = lang_product(CONCAT, shuffle(w, x), shuffle(y, z))
        rhs = lang_product(SHUFFLE, {w + y}, {x + z})
        if not lhs <= rhs:
            rep.fail("interchange", (w, x, y, z))
        elif proper is None and lhs != rhs:
            proper = (w, x, y, z, sorted(rhs - lhs))
        if transposed is None:
            t_lhs = lang_product(SHUFFLE, {w + x}, {y + z})
            t_rhs = lang_product(CONCAT, shuffle(w, y), shuffle(x, z))
            if not t_lhs <= t_rhs:
                transposed = (w, x, y, z, sorted(t_lhs - t_rhs))
    one = frozenset({""})
    rep.check("unit-shuffle", lang_product(SHUFFLE, one, one) == one, "1⧢1")
    rep.check("unit-concat", lang_product(CONCAT, one, one) == one, "1·1")
    rep.law("unit-neutral")
    for w in ws:
        for op in (CONCAT, SHUFFLE):
            if lang_product(op, {w}, one) != {w} or lang_product(op, one, {w}) != {w}:
                rep.fail("unit-neutral", (op, w))
    rep.notes["proper_witness"] = proper
    rep.notes["transposed_counterexample"] = transposed
    return rep.finish()


# -- pomsets ---------------------------------------------------------------------


def _transitive_closure(n: int, pairs: Iterable[tuple]) -> frozenset:
    succ = [set() for _ in range(n)]
    for a, b in pairs:
        succ[a].add(b)
    for k in range(n):
        for i in range(n):
            if k in succ[i]:
                succ[i] |= succ[k]
    return frozenset((i, j) for i in range(n) for j in succ[i])


@dataclass(frozen=True)
class Pomset:
    """Labelled strict partial order on events ``range(len(labels))``."""

    labels: tuple
    less: frozenset

    @classmethod
    def make(cls, labels: Iterable, pairs: Iterable[tuple] = ()) -> Pomset:
        labels = tuple(labels)
        n = len(labels)
        pairs = list(pairs)
        for a, b in pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"order pair {(a, b)!r} refers to a missing event")
        less = _transitive_closure(n, pairs)
        for i in range(n):
            if (i, i) in less:
                raise ValueError("order has a cycle")
        return cls(labels, less)

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def lt(self, a: int, b: int) -> bool:
        return (a, b) in self.less

    def le(self, a: int, b: int) -> bool:
        return a == b or (a, b) in self.less

    @cached_property
    def preds(self) -> tuple:
        return tuple(frozenset(a for a, b in self.less if b == i) for i in range(self.size))

    @cached_property
    def succs(self) -> tuple:
        return tuple(frozenset(b for a, b in self.less if a == i) for i in range(self.size))

    def shifted(self, k: int) -> frozenset:
        return frozenset((a + k, b + k) for a, b in self.less)

    def __repr__(self) -> str:
        rel = ", ".join(f"{a}<{b}" for a, b in sorted(self.less))
        return f"Pomset({list(self.labels)!r}; {rel})"


def empty() -> Pomset:
    return Pomset((), frozenset())


def singleton(label: Hashable) -> Pomset:
    return Pomset((label,), frozenset())


def chain(labels: Iterable) -> Pomset:
    labels = tuple(labels)
    return Pomset.make(labels, [(i, i + 1) for i in range(len(labels) - 1)])


def antichain(labels: Iterable) -> Pomset:
    return Pomset(tuple(labels), frozenset())


def pomset_par(A: Pomset, B: Pomset) -> Pomset:
    """Disjoint union: no order between the two parts."""
    return Pomset(A.labels + B.labels, A.less | B.shifted(A.size))


def pomset_seq(A: Pomset, B: Pomset) -> Pomset:
    """Serial composition: every event of A precedes every event of B."""
    n = A.size
    cross = {(a, n + b) for a in range(n) for b in range(B.size)}
    return Pomset(A.labels + B.labels, A.less | B.shifted(n) | frozenset(cross))


def pomset_prod(A: Pomset, B: Pomset) -> Pomset:
    """Cartesian product of the underlying posets with paired labels.

    Event ``(i, j)`` is numbered ``i * |B| + j``.
    """
    m = B.size
    events = [(i, j) for i in range(A.size) for j in range(m)]
    labels = tuple((A.labels[i], B.labels[j]) for i, j in events)
    less = frozenset(
        (i * m + j, k * m + l)
        for i, j in events
        for k, l in events
        if (i, j) != (k, l) and A.le(i, k) and B.le(j, l)
    )
    return Pomset(labels, less)


def opposite(P: Pomset) -> Pomset:
    return Pomset(P.labels, frozenset((b, a) for a, b in P.less))


def subsumption(P: Pomset, Q: Pomset) -> dict | None:
    """A label-preserving bijection P -> Q mapping every ``a < b`` of P to
    ``f(a) < f(b)`` in Q, or None.  Events of P are assigned in a
    topological order with label and degree pruning."""
    if P.size != Q.size or sorted(map(repr, P.labels)) != sorted(map(repr, Q.labels)):
        return None
    order = sorted(range(P.size), key=lambda e: (len(P.preds[e]), e))
    f: dict = {}
    used: set = set()

    def fits(a, b):
        if P.labels[a] != Q.labels[b]:
            return False
        if len(P.preds[a]) > len(Q.preds[b]) or len(P.succs[a]) > len(Q.succs[b]):
            return False
        for c, d in f.items():
            if P.lt(c, a) and not Q.lt(d, b):
                return False
            if P.lt(a, c) and not Q.lt(b, d):
                return False
        return True

    def rec(k):
        if k == len(order):
            return True
        a = order[k]
        for b in range(Q.size):
            if b not in used and fits(a, b):
                f[a] = b
                used.add(b)
                if rec(k + 1):
                    return True
                del f[a]
                used.discard(b)
        return False

    return dict(f) if rec(0) else None


def _refined_colors(P: Pomset) -> list:
    colors = [(repr(P.labels[i]), len(P.preds[i]), len(P.succs[i])) for i in range(P.size)]
    while True:
        new = [
            (colors[i], tuple(sorted(colors[a] for a in P.preds[i])),
             tuple(sorted(colors[b] for b in P.succs[i])))
            for i in range(P.size)
        ]
        ranks = {c: r for r, c in enumerate(sorted(set(new)))}
        new = [ranks[c] for c in new]
        old_classes = len(set(colors))
        if len(set(new)) == old_classes:
            ranks = {c: r for r, c in enumerate(sorted(set(colors)))}
            return [ranks[c] for c in colors]
        colors = new


def canonical_form(P: Pomset) -> Pomset:
    """A representative such that isomorphic pomsets get identical forms.

    Events are first partitioned by iterated colour refinement (label,
    in/out degree, neighbour colours), then the lexicographically least
    order encoding over all orderings within colour classes is chosen.
    """
    colors = _refined_colors(P)
    label_of = {c: P.labels[i] for i, c in enumerate(colors)}
    classes = [[i for i in range(P.size) if colors[i] == c] for c in sorted(set(colors))]
    best = None
    for perms in itertools.product(*(itertools.permutations(cls) for cls in classes)):
        seq = [e for block in perms for e in block]
        pos = {e: k for k, e in enumerate(seq)}
        code = tuple(sorted((pos[a], pos[b]) for a, b in P.less))
        if best is None or code < best[0]:
            best = (code, seq)
    if best is None:
        return P
    code, seq = best
    return Pomset(tuple(P.labels[e] for e in seq), frozenset(code))


def isomorphic(P: Pomset, Q: Pomset) -> bool:
    return canonical_form(P) == canonical_form(Q)


def linear_orders(P: Pomset):
    """All topological orders of P as tuples of events."""
    n = P.size
    placed: list = []
    done = [False] * n

    def rec():
        if len(placed) == n:
            yield tuple(placed)
            return
        for e in range(n):
            if not done[e] and all(done[a] for a in P.preds[e]):
                done[e] = True
                placed.append(e)
                yield from rec()
                placed.pop()
                done[e] = False

    yield from rec()


def _word(labels: tuple):
    if all(isinstance(x, str) for x in labels):
        return "".join(labels)
    return labels


def linearizations(P: Pomset) -> frozenset:
    """Label words of all linearisations (strings when all labels are strings)."""
    return frozenset(_word(tuple(P.labels[e] for e in order)) for order in linear_orders(P))


def lin_restriction(P: Pomset, Q: Pomset) -> dict:
    """Restriction Lin(P ⊔ Q) -> Lin(P) × Lin(Q) on event orders."""
    n = P.size
    out = {}
    for order in linear_orders(pomset_par(P, Q)):
        left = tuple(e for e in order if e < n)
        right = tuple(e - n for e in order if e >= n)
        out[order] = (left, right)
    return out


def downsets(P: Pomset):
    """The lattice of down-closed event sets under union."""
    from .boolcore import FinSemilattice

    sets = []
    for r in range(P.size + 1):
        for c in itertools.combinations(range(P.size), r):
            s = frozenset(c)
            if all(P.preds[e] <= s for e in s):
                sets.append(s)
    return FinSemilattice(sets, lambda a, b: a | b, frozenset(), leq=lambda a, b: a <= b,
                          name="D")


def intervals(P: Pomset, strict: bool = False) -> frozenset:
    if strict:
        return frozenset(P.less)
    return frozenset(P.less | {(e, e) for e in range(P.size)})


def interval_poset(P: Pomset, strict: bool = False) -> tuple:
    """Intervals of P (as a sorted tuple) with the pointwise order."""
    ivs = tuple(sorted(intervals(P, strict)))
    less = frozenset(
        (i, j) for i, (a, b) in enumerate(ivs) for j, (c, d) in enumerate(ivs)
        if i != j and P.le(a, c) and P.le(b, d)
    )
    return ivs, Pomset(ivs, less)


def check_interval_monoidality(P: Pomset, Q: Pomset, strict: bool = False) -> Report:
    """Strong monoidality for ⊔ and the lax comparison map for ⊙.

    ``par-strong``: intervals(P ⊔ Q) is exactly intervals(P) ⊔ intervals(Q).
    ``seq-lax``: the inclusion Int(P) ⊙ Int(Q) -> Int(P ⊙ Q) is an injective
    order-preserving map.  The note ``seq-surjective`` says whether it is
    onto (it is not as soon as both arguments have an event).
    """
    n = P.size
    rep = Report(f"intervals(strict={strict})")
    par = intervals(pomset_par(P, Q), strict)
    expected = intervals(P, strict) | {(a + n, b + n) for a, b in intervals(Q, strict)}
    rep.check("par-strong", par == expected, sorted(par ^ expected))
    S = pomset_seq(P, Q)
    ivP, IP = interval_poset(P, strict)
    ivQ, IQ = interval_poset(Q, strict)
    source = pomset_seq(IP, IQ)
    images = [iv for iv in ivP] + [(a + n, b + n) for a, b in ivQ]
    target = intervals(S, strict)
    rep.law("seq-lax")
    if len(set(images)) != len(images) or not set(images) <= target:
        rep.fail("seq-lax", "not an injection into Int(P ⊙ Q)")
    for i, j in source.less:
        (a, b), (c, d) = images[i], images[j]
        if not (S.le(a, c) and S.le(b, d)):
            rep.fail("seq-lax", (images[i], images[j]))
    rep.notes["seq-surjective"] = set(images) == set(target)
    return rep.finish()


def induced_map(P: Pomset, Q: Pomset) -> dict:
    """The identity-on-events map P ⊔ Q -> P ⊙ Q.

    Returns the event map; raises ``AssertionError`` if it is not order
    preserving (it always is).
    """
    par, seq = pomset_par(P, Q), pomset_seq(P, Q)
    f = {e: e for e in range(par.size)}
    assert all(seq.lt(f[a], f[b]) for a, b in par.less)
    assert par.labels == seq.labels
    return f


def added_relations(P: Pomset, Q: Pomset) -> int:
    """Number of order pairs the induced map adds."""
    return len(pomset_seq(P, Q).less) - len(pomset_par(P, Q).less)


def all_pomsets(n: int, alphabet: Iterable) -> list:
    """Every pomset with n events over ``alphabet``, one per isomorphism class."""
    alphabet = tuple(alphabet)
    pairs = [(a, b) for a in range(n) for b in range(n) if a < b]
    seen: dict = {}
    for bits in itertools.product((False, True), repeat=len(pairs)):
        rel = [p for p, on in zip(pairs, bits) if on]
        if _transitive_closure(n, rel) != frozenset(rel):
            continue
        for labels in itertools.product(alphabet, repeat=n):
            P = Pomset(tuple(labels), frozenset(rel))
            key = canonical_form(P)
            seen.setdefault(key, key)
    return sorted(seen.values(), key=repr)


@dataclass(frozen=True)
class Language:
    """A finite set of words over ``alphabet``, all of length <= maxlen."""

    alphabet: str
    maxlen: int
    words: frozenset

    @classmethod
    def make(cls, alphabet, maxlen, words) -> Language:
        return cls("".join(alphabet), int(maxlen), frozenset(words))


def check_language(L: Language) -> Report:
    rep = Report(f"language over {L.alphabet!r} (length <= {L.maxlen})", fragment=True)
    rep.law("alphabet")
    rep.law("bound")
    for w in sorted(L.words):
        if any(c not in L.alphabet for c in w):
            rep.fail("alphabet", w)
        if len(w) > L.maxlen:
            rep.fail("bound", w)
    return rep.finish()
