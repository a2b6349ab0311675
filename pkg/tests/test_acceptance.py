"""Acceptance criteria, one test each.

Every test prints a single line ``criterion N: PASS|FAIL <detail>`` and adds
it to the summary printed at the end of the pytest run.  The file also runs
on its own: ``python3 tests/test_acceptance.py``.
"""

import itertools
import os
import random
import re
import subprocess
import sys
import time
from contextlib import contextmanager

from nfold import boolcore as bc
from nfold import catoid as ct
from nfold import coalg as cg
from nfold import concur as cc
from nfold import posetmon as pm
from nfold import proto as pr
from nfold import relmon as rm
from nfold.cli import _representable

import conftest

HERE = os.path.dirname(os.path.abspath(__file__))


class Outcome:
    def __init__(self):
        self.ok = True
        self.details = []

    def check(self, ok, detail):
        self.ok &= bool(ok)
        self.details.append(detail if ok else f"[{detail}]")


@contextmanager
def criterion(n, limit):
    out = Outcome()
    start = time.perf_counter()
    try:
        yield out
    except Exception as exc:
        out.check(False, f"raised {exc!r}")
    elapsed = time.perf_counter() - start
    if limit is not None:
        out.check(elapsed < limit, f"{elapsed:.1f}s < {limit}s")
    else:
        out.details.append(f"{elapsed:.1f}s")
    line = f"criterion {n}: {'PASS' if out.ok else 'FAIL'} " + "; ".join(out.details)
    print(line)
    conftest.ACCEPTANCE_LINES.append(line)
    assert out.ok, line


def test_criterion_01_tensor_of_three_chains():
    with criterion(1, 1) as c:
        C = bc.chain(3)
        T = bc.tensor(C, C)
        c.check(len(T) == 6, f"|3 ⊗ 3| = {len(T)}")
        shape = bc.from_order(
            ["0", "11", "12", "21", "12+21", "22"],
            lambda a, b: a == b or a == "0" or b == "22" or (a, b) in {
                ("11", "12"), ("11", "21"), ("11", "12+21"), ("12", "12+21"), ("21", "12+21")})
        c.check(bc.find_isomorphism(T, shape) is not None, "Hasse shape 0<11<12,21<12+21<22")


def test_criterion_02_the_diamond():
    with criterion(2, 60) as c:
        M = bc.diamond()
        size = len(bc.tensor(M, M))
        c.check(size == 50, f"|M ⊗ M| = {size}")
        alg = cg.count_structures(M, "comm-algebra")
        matching = [k for k in ("unital", "non-unital") if alg[k] == 50]
        c.check(matching, f"commutative algebras: {alg['unital']} unital, {alg['non-unital']}"
                          f" non-unital, {alg['bilinear']} bilinear; expected 50 under"
                          f" {' or '.join(matching) or 'some'} convention")
        co = cg.count_structures(M, "cocomm-coalgebra")
        c.check(co["counital"] == 0, f"cocommutative coalgebras = {co['counital']}")


def test_criterion_03_dual_lattice():
    with criterion(3, 10) as c:
        lattices = [L for n in range(1, 6) for L in bc.all_lattices(n)]
        bad = 0
        for M in lattices:
            bc.dual_iso(M)
            bad += not bc.is_isomorphic(bc.hom_module(M, bc.boolean()), bc.opposite(M))
        c.check(not bad, f"Hom(M,𝔹) ≅ M^op on {len(lattices)} semilattices")


def test_criterion_04_free_modules():
    with criterion(4, 10) as c:
        bad = 0
        for p, q in itertools.product(range(4), repeat=2):
            X, Y = "abc"[:p], "xyz"[:q]
            bad += not bc.is_isomorphic(bc.free_module(X + Y),
                                        bc.direct_sum(bc.free_module(X), bc.free_module(Y)))
            bad += not bc.is_isomorphic(bc.free_module([a + b for a in X for b in Y]),
                                        bc.tensor(bc.free_module(X), bc.free_module(Y)))
        c.check(not bad, f"sum and product isomorphisms for |X|,|Y| <= 3, {bad} failures")


def test_criterion_05_shuffle_interchange():
    with criterion(5, 30) as c:
        rep = cc.check_concurrent_dioid("ab", 6)
        c.check(rep.ok, "(W⧢X)·(Y⧢Z) ⊆ (W·Y)⧢(X·Z) to length 6")
        c.check(rep.notes.get("proper_witness") is not None, "proper inclusion witness")
        lhs = cc.shuffle("ab", "cd")
        rhs = cc.lang_product(cc.CONCAT, cc.shuffle("a", "c"), cc.shuffle("b", "d"))
        c.check(not lhs <= rhs, "transposed orientation fails on abcd")


def test_criterion_06_catoid_equivalence():
    with criterion(6, 300) as c:
        total = bad = 0
        for n in range(4):
            for cat in ct.enumerate_catoids(n):
                total += 1
                bad += ct.relmonoid_to_catoid(ct.catoid_to_relmonoid(cat)) != cat
            for m in rm.enumerate_rel_monoids(n):
                if _representable(m):
                    total += 1
                    bad += ct.catoid_to_relmonoid(ct.relmonoid_to_catoid(m)) != m
        c.check(not bad, f"{total} round trips, {bad} failures")


def test_criterion_07_closure_counterexample():
    with criterion(7, 300) as c:
        found = ct.search_closure_counterexample(3)
        c.check(found is not None, "size-3 structure failing only closure found")
        if found is not None:
            rep = ct.check_ncatoid(found)
            c.check(ct.closure_only_failure(rep), "fails " + ", ".join(rep.failed))


def test_criterion_08_local_functional_2catoids():
    with criterion(8, 300) as c:
        seen = bad = 0
        for n in range(4):
            for cat in ct.two_catoids(n):
                if all(ct.classify(cat).values()):
                    seen += 1
                    closure = not any(k.startswith("closure") for k in ct.check_ncatoid(cat).failed)
                    bad += not (closure and ct.check_strict_2category(cat).ok)
        c.check(seen and not bad, f"{seen} local functional 2-catoids, {bad} failures")


def test_criterion_09_pomsets():
    with criterion(9, 30) as c:
        small = [P for n in range(3) for P in cc.all_pomsets(n, "ab")]
        lin_bad = 0
        for P, Q in itertools.product(small, repeat=2):
            lhs = sum(1 for _ in cc.linear_orders(cc.pomset_seq(P, Q)))
            rhs = sum(1 for _ in cc.linear_orders(P)) * sum(1 for _ in cc.linear_orders(Q))
            lin_bad += lhs != rhs
        c.check(not lin_bad, f"|Lin(P⊙Q)| = |Lin P|·|Lin Q| on {len(small) ** 2} pairs")
        chi_bad = 0
        for A, B, C, D in itertools.product(small, repeat=4):
            left = cc.pomset_par(cc.pomset_seq(A, B), cc.pomset_seq(C, D))
            right = cc.pomset_seq(cc.pomset_par(A, C), cc.pomset_par(B, D))
            chi_bad += cc.subsumption(left, right) is None
        c.check(not chi_bad, f"interchange subsumption on {len(small) ** 4} tuples")


def _posets(n):
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    for r in range(len(pairs) + 1):
        for less in itertools.combinations(pairs, r):
            less = set(less)
            if any((b, a) in less for a, b in less):
                continue
            if all((a, c) in less for a, b in less for b2, c in less if b == b2 and a != c):
                yield less


def test_criterion_10_incidence_and_convex():
    with criterion(10, 60) as c:
        count = bad = 0
        for n in range(5):
            for less in _posets(n):
                le = (lambda s: lambda a, b: a == b or (a, b) in s)(less)
                count += 1
                coalgebras = [cg.incidence_coalgebra(range(n), le),
                              cg.convex_coalgebra(range(n), le, "strict"),
                              cg.convex_coalgebra(range(n), le, "weak")]
                bad += sum(not cg.check_free_coalgebra(C).ok for C in coalgebras)
        c.check(not bad, f"{count} posets x (incidence, Δ⁺, Δ⁻), {bad} failures")


def test_criterion_11_word_convolution():
    with criterion(11, 10) as c:
        B = cg.BAlgebra(bc.boolean(), lambda x, y: x & y, 1)
        checked = bad = 0
        for alphabet, sample in (("a", None), ("ab", 400)):
            C = cg.word_coalgebra(alphabet, 3)
            gens = sorted(C.generators, key=lambda w: (len(w), w))
            if sample is None:
                langs = [set(s) for r in range(len(gens) + 1)
                         for s in itertools.combinations(gens, r)]
                pairs = list(itertools.product(langs, repeat=2))
            else:
                rng = random.Random(11)
                singles = [set()] + [{w} for w in gens]
                pairs = list(itertools.product(singles, repeat=2))
                pairs += [({w for w in gens if rng.random() < 0.4},
                           {w for w in gens if rng.random() < 0.4}) for _ in range(sample)]
            for K, L in pairs:
                f = {w: int(w in K) for w in gens}
                g = {w: int(w in L) for w in gens}
                h = cg.convolve_free(C, B, f, g)
                got = {w for w, v in h.items() if v}
                bad += got != {u + v for u in K for v in L if len(u + v) <= 3}
                checked += 1
        c.check(not bad, f"f * g = concatenation on {checked} language pairs")


def test_criterion_12_boolean_ring():
    with criterion(12, 5) as c:
        rep = pm.check_boolean_ring_example(20)
        c.check(rep.ok, "(a⊙b)+(c⊙d) <= (a+c)⊙(b+d) for 0 <= a,b,c,d <= 20")


def test_criterion_13_protocols():
    with criterion(13, 30) as c:
        for n in (1, 2, 3):
            fx = pr.fixture_chains(n)
            c.check(all(pr.is_pointwise_product(X, Y) for X in fx for Y in fx),
                    f"n={n}: r=n is pointwise product")
            c.check(all(pr.is_pointwise_disjoint_union(X, Y) for X in fx for Y in fx),
                    f"n={n}: r=0 is pointwise disjoint union")
            for r in range(n + 1):
                c.check(all(pr.fiber_law(X, Y, r).ok for X in fx for Y in fx),
                        f"n={n} r={r}: fiber law")
                rep = pr.check_proto_monoidal(n, r, fx)
                c.check(rep.ok, f"n={n} r={r}: unit/associativity")
        c.details = [d for d in c.details if d.startswith("[")] or ["all fixtures, n <= 3"]


def _outcomes(text):
    return sorted(re.findall(r"^(PASSED|FAILED|ERROR) (\S+)", text, re.M), key=lambda t: t[1])


def test_criterion_14_property_suite_is_stable():
    with criterion(14, None) as c:
        runs = []
        for _ in range(3):
            proc = subprocess.run(
                [sys.executable, "-m", "pytest", os.path.join(HERE, "test_properties.py"),
                 "-q", "-rA", "-p", "no:cacheprovider"],
                capture_output=True, text=True, cwd=os.path.dirname(HERE))
            runs.append((proc.returncode, _outcomes(proc.stdout)))
        first = runs[0][1]
        c.check(first and all(r == runs[0] for r in runs), f"3 identical runs of {len(first)} tests")
        c.check(runs[0][0] == 0 and all(o == "PASSED" for o, _ in first), "all green")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
