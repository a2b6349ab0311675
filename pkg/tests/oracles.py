"""Brute-force reference implementations used to cross-check the library.

Everything here is deliberately naive: enumerate all candidates, filter by
the definition.
"""

import itertools

from nfold import boolcore as bc


def all_maps(xs, ys):
    xs, ys = tuple(xs), tuple(ys)
    for values in itertools.product(ys, repeat=len(xs)):
        yield dict(zip(xs, values))


def brute_homs(M, N):
    """Every zero- and join-preserving map, by testing all maps."""
    out = []
    for f in all_maps(M.elements, N.elements):
        if f[M.zero] != N.zero:
            continue
        if all(f[M.join(x, y)] == N.join(f[x], f[y]) for x in M for y in M):
            out.append(f)
    return out


def brute_shuffle(u, v):
    """Interleavings via the set of positions taken by ``u``."""
    n = len(u) + len(v)
    out = set()
    for pos in itertools.combinations(range(n), len(u)):
        it_u, it_v = iter(u), iter(v)
        out.add("".join(next(it_u) if i in pos else next(it_v) for i in range(n)))
    return out


def brute_linear_extensions(P):
    return [p for p in itertools.permutations(range(P.size))
            if all(p.index(a) < p.index(b) for a, b in P.less)]


def brute_subsumes(P, Q):
    """Some label-preserving bijection carries every order pair of P into Q."""
    if P.size != Q.size:
        return False
    for p in itertools.permutations(range(Q.size)):
        if all(P.labels[i] == Q.labels[p[i]] for i in range(P.size)) and all(
                (p[a], p[b]) in Q.less for a, b in P.less):
            return True
    return False


def brute_isomorphic_pomsets(P, Q):
    if P.size != Q.size:
        return False
    for p in itertools.permutations(range(Q.size)):
        if all(P.labels[i] == Q.labels[p[i]] for i in range(P.size)) and \
                {(p[a], p[b]) for a, b in P.less} == set(Q.less):
            return True
    return False


def brute_semilattice_iso(M, N):
    if len(M) != len(N):
        return False
    for perm in itertools.permutations(N.elements):
        f = dict(zip(M.elements, perm))
        if all(f[M.join(x, y)] == N.join(f[x], f[y]) for x in M for y in M):
            return True
    return False


def dual_tensor(M, N):
    """M ⊗ N computed as Hom(M, N^op)^op; valid for finite lattices."""
    H = bc.hom_module(M, bc.opposite(N))
    return bc.opposite(H)


def brute_algebra_count(M, commutative):
    """Unital associative bilinear products on M, by trying every table."""
    E = M.elements
    cells = [(x, y) for x in E for y in E]
    count = 0
    for values in itertools.product(E, repeat=len(cells)):
        m = dict(zip(cells, values))
        if commutative and any(m[x, y] != m[y, x] for x, y in cells):
            continue
        if any(m[M.zero, x] != M.zero or m[x, M.zero] != M.zero for x in E):
            continue
        if any(m[M.join(x, y), z] != M.join(m[x, z], m[y, z]) or
               m[z, M.join(x, y)] != M.join(m[z, x], m[z, y]) for x in E for y in E for z in E):
            continue
        if any(m[m[x, y], z] != m[x, m[y, z]] for x in E for y in E for z in E):
            continue
        if any(all(m[e, x] == x and m[x, e] == x for x in E) for e in E):
            count += 1
    return count


def brute_chain_iso(X, Y):
    """Levelwise bijections commuting with the maps, by exhaustive search."""
    if X.sizes() != Y.sizes():
        return False
    per_level = [list(itertools.permutations(Y.level(i))) for i in range(1, X.n + 1)]
    for choice in itertools.product(*per_level):
        f = {}
        for i, perm in enumerate(choice, start=1):
            for x, y in zip(X.level(i), perm):
                f[(i, x)] = y
        if all(f[(i - 1, X.down(i, x))] == Y.down(i, f[(i, x)])
               for i in range(2, X.n + 1) for x in X.level(i)):
            return True
    return False


def brute_catoids(n):
    """Every catoid on range(n) by testing all tables (n <= 2)."""
    from nfold.catoid import Catoid, is_catoid

    carrier = tuple(range(n))
    subsets = [frozenset(c) for r in range(n + 1) for c in itertools.combinations(carrier, r)]
    cells = [(x, y) for x in carrier for y in carrier]
    out = []
    for s in itertools.product(carrier, repeat=n):
        for t in itertools.product(carrier, repeat=n):
            for values in itertools.product(subsets, repeat=len(cells)):
                c = Catoid(carrier, dict(zip(cells, values)), dict(enumerate(s)),
                           dict(enumerate(t)))
                if is_catoid(c):
                    out.append(c)
    return out


def brute_rel_monoids(n):
    from nfold.relmon import RelMonoid, check_rel_monoid

    carrier = tuple(range(n))
    all_triples = list(itertools.product(carrier, repeat=3))
    out = []
    for r in range(n + 1):
        for U in itertools.combinations(carrier, r):
            for bits in itertools.product((0, 1), repeat=len(all_triples)):
                m = RelMonoid(carrier, frozenset(t for t, b in zip(all_triples, bits) if b),
                              frozenset(U))
                if check_rel_monoid(m).ok:
                    out.append(m)
    return out
