"""Command line front end.

    nfold check <file> [--json]
    nfold enumerate <kind> --size N [--filter F] [--module M]
    nfold demo <id>
    nfold convert <file> --to <kind>

Exit codes: 0 pass, 1 a law failed, 2 usage or format error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys

from . import boolcore as bc
from . import catoid as ct
from . import coalg as cg
from . import concur as cc
from . import formats
from . import posetmon as pm
from . import proto as pr
from . import relmon as rm
from .boolcore import FormatError
from .report import Report

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


# -- check ---------------------------------------------------------------------------


def _check_pomset(P: cc.Pomset) -> Report:
    rep = Report("pomset")
    rep.law("irreflexive")
    rep.law("transitive")
    for a, b in P.less:
        if a == b:
            rep.fail("irreflexive", a)
        for c in range(P.size):
            if (b, c) in P.less and (a, c) not in P.less:
                rep.fail("transitive", (a, b, c))
    return rep.finish()


def _check_graded(X: cg.GradedModule) -> Report:
    rep = Report(f"graded module {X.name}")
    for g in X.grades:
        rep.merge(bc.check_semilattice(X[g]), prefix=f"[{g}].")
    rep.merge(cg.graded_ops(X, X)["interchange_report"], prefix="interchange.")
    return rep.finish()


def _check_chain(X: pr.ProtocolChain) -> Report:
    rep = Report(f"protocol chain {X.name}")
    rep.merge(pr.check_chain(X))
    if rep.ok:
        for r in range(X.n + 1):
            rep.check("unit", pr.find_chain_isomorphism(pr.tensor_r(X, pr.unit_chain(X.n, r), r), X)
                      is not None, r)
    return rep.finish()


def check_object(obj) -> Report:
    """Run the full axiom suite for a loaded structure."""
    if isinstance(obj, bc.ModuleMorphism):
        return bc.check_morphism(obj)
    if isinstance(obj, bc.FinSemilattice):
        return bc.check_semilattice(obj)
    if isinstance(obj, rm.RelMonoid):
        return rm.check_rel_monoid(obj)
    if isinstance(obj, rm.NFoldRelMonoid):
        return rm.check_nfold(obj)
    if isinstance(obj, ct.Catoid):
        return ct.check_catoid(obj)
    if isinstance(obj, ct.NCatoid):
        return ct.check_ncatoid(obj)
    if isinstance(obj, cc.Pomset):
        return _check_pomset(obj)
    if isinstance(obj, cc.Language):
        return cc.check_language(obj)
    if isinstance(obj, pm.OrderedMonoid):
        return pm.check_nfold_poset(obj)
    if isinstance(obj, cg.DoubleBAlgebra):
        return cg.check_double_algebra(obj)
    if isinstance(obj, cg.BAlgebra):
        return cg.check_algebra(obj)
    if isinstance(obj, cg.FreeCoalgebra):
        return cg.check_free_coalgebra(obj)
    if isinstance(obj, cg.BCoalgebra):
        return cg.check_coalgebra(obj)
    if isinstance(obj, cg.GradedModule):
        return _check_graded(obj)
    if isinstance(obj, pr.ProtocolChain):
        return _check_chain(obj)
    raise FormatError(f"no checker for {type(obj).__name__}")


def cmd_check(args, out) -> int:
    try:
        obj = formats.read(args.file)
        rep = check_object(obj)
    except (FormatError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    print(rep.to_json() if args.json else rep.to_text(), file=out)
    return EXIT_PASS if rep.ok else EXIT_FAIL


# -- enumerate -----------------------------------------------------------------------


def parse_module(arg: str) -> bc.FinSemilattice:
    """``B``, ``M3``, ``N5``, ``chainK``, ``free:xyz`` or a semilattice file."""
    if arg == "B":
        return bc.boolean()
    if arg == "M3":
        return bc.diamond()
    if arg == "N5":
        return bc.pentagon()
    if arg.startswith("chain") and arg[5:].isdigit():
        return bc.chain(int(arg[5:]))
    if arg.startswith("free:"):
        return bc.free_module(arg[5:])
    M = formats.read(arg)
    if not isinstance(M, bc.FinSemilattice):
        raise FormatError(f"{arg} does not hold a semilattice")
    return M


def _catoid_filter(name):
    tests = {
        None: lambda c: True,
        "functional": lambda c: ct.classify(c)["functional"],
        "local": lambda c: ct.classify(c)["local"],
        "local-functional": lambda c: all(ct.classify(c).values()),
    }
    if name not in tests:
        raise FormatError(f"unknown filter {name!r}; use one of functional, local, local-functional")
    return tests[name]


def _stream(args):
    kind, n, filt = args.kind, args.size, args.filter
    if kind == "catoid":
        keep = _catoid_filter(filt)
        return (c for c in ct.enumerate_catoids(n) if keep(c))
    if kind == "2-catoid":
        keep = _catoid_filter(filt)
        return (c for c in ct.enumerate_2catoids(n) if keep(c))
    if kind == "closure-counterexample":
        found = ct.search_closure_counterexample(n)
        return iter([found] if found else [])
    if kind == "rel-monoid":
        if filt not in (None, "representable"):
            raise FormatError("rel-monoid filters: representable")
        ms = rm.enumerate_rel_monoids(n)
        if filt == "representable":
            ms = (m for m in ms if _representable(m))
        return ms
    if kind == "lattice":
        return iter(bc.all_lattices(n))
    if kind == "pomset":
        return iter(cc.all_pomsets(n, filt or "a"))
    if kind in ("comm-algebra", "algebra", "cocomm-coalgebra", "coalgebra"):
        M = parse_module(args.module or "M3")
        if kind.endswith("coalgebra"):
            if filt not in (None, "counital", "non-counital"):
                raise FormatError("coalgebra filters: counital, non-counital")
            return cg.enumerate_coalgebras(M, cocommutative=kind.startswith("cocomm"),
                                           counital=filt != "non-counital")
        if filt not in (None, "unital", "non-unital"):
            raise FormatError("algebra filters: unital, non-unital")
        return cg.enumerate_algebras(M, commutative=kind == "comm-algebra",
                                     unital=filt != "non-unital")
    raise FormatError(f"unknown enumeration kind {kind!r}")


def _representable(m) -> bool:
    try:
        c = ct.relmonoid_to_catoid(m)
    except ct.NotRepresentable:
        return False
    return ct.check_catoid(c).ok


ENUM_KINDS = ("catoid", "2-catoid", "closure-counterexample", "rel-monoid", "lattice", "pomset",
              "comm-algebra", "algebra", "cocomm-coalgebra", "coalgebra")


def cmd_enumerate(args, out) -> int:
    try:
        stream = _stream(args)
        count = 0
        for obj in stream:
            print(json.dumps(formats.dump(obj), ensure_ascii=False, separators=(",", ":")),
                  file=out)
            count += 1
    except (FormatError, ValueError, cg.BudgetError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    print(f"count: {count}", file=out)
    return EXIT_PASS


# -- demos -------------------------------------------------------------------------


def _line(out, what, got, want) -> bool:
    ok = got == want
    print(f"{what}: {got}, expected {want}: {'PASS' if ok else 'FAIL'}", file=out)
    return ok


def demo_tensor_3chain(out) -> bool:
    C = bc.chain(3)
    T = bc.tensor(C, C)
    print(f"{len(T)} elements, expected 6: {'PASS' if len(T) == 6 else 'FAIL'}", file=out)
    shape = bc.from_order(
        ["0", "11", "12", "21", "12+21", "22"],
        lambda a, b: a == b or a == "0" or b == "22" or (a, b) in {
            ("11", "12"), ("11", "21"), ("11", "12+21"), ("12", "12+21"), ("21", "12+21")})
    iso = bc.find_isomorphism(T, shape)
    print("Hasse diagram 0 < 11 < 12, 21 < 12+21 < 22: " + ("PASS" if iso else "FAIL"), file=out)
    print("elements: " + ", ".join(map(repr, T.elements)), file=out)
    return len(T) == 6 and iso is not None


def demo_m_fifty(out) -> bool:
    M = bc.diamond()
    size = len(bc.tensor(M, M))
    alg = cg.count_structures(M, "comm-algebra")
    co = cg.count_structures(M, "cocomm-coalgebra")
    got = f"{size}/{alg['unital']}/{co['counital']}"
    ok = got == "50/50/0"
    print(f"{got}, expected 50/50/0: {'PASS' if ok else 'FAIL'}", file=out)
    print(f"  |M ⊗ M| = {size}", file=out)
    print(f"  commutative bilinear products: {alg['bilinear']}; associative: {alg['non-unital']};"
          f" associative and unital: {alg['unital']}", file=out)
    print(f"  cocommutative coassociative comultiplications: {co['non-counital']};"
          f" with counit: {co['counital']}", file=out)
    return ok


def demo_shuffle(out) -> bool:
    rep = cc.check_concurrent_dioid("ab", 6)
    print(rep.to_text(), file=out)
    w = ("ab", "cd")
    lhs = cc.shuffle(*w)
    rhs = cc.lang_product(cc.CONCAT, cc.shuffle("a", "c"), cc.shuffle("b", "d"))
    transposed_fails = not lhs <= rhs
    print(f"(ab)⧢(cd) ⊆ (a⧢c)·(b⧢d): {not transposed_fails} (missing {sorted(lhs - rhs)}),"
          f" expected False: {'PASS' if transposed_fails else 'FAIL'}", file=out)
    return rep.ok and rep.notes.get("proper_witness") is not None and transposed_fails


def demo_catoid_equivalence(out) -> bool:
    ok = True
    for n in range(4):
        cats = ct.enumerate_catoids(n)
        trips = sum(ct.relmonoid_to_catoid(ct.catoid_to_relmonoid(c)) == c for c in cats)
        ok &= _line(out, f"catoids on {n} elements surviving the round trip", trips, len(cats))
        reps = [m for m in rm.enumerate_rel_monoids(n) if _representable(m)]
        back = sum(ct.catoid_to_relmonoid(ct.relmonoid_to_catoid(m)) == m for m in reps)
        ok &= _line(out, f"representable relational monoids on {n} elements surviving", back,
                    len(reps))
    return ok


def demo_closure(out) -> bool:
    c = ct.search_closure_counterexample(3)
    if c is None:
        print("no closure counterexample on 3 elements: FAIL", file=out)
        return False
    rep = ct.check_ncatoid(c)
    print(formats.dumps(c), end="", file=out)
    print(rep.to_text(), file=out)
    conv = rm.check_nfold(ct.ncatoid_to_nfold(c))
    print(f"as a lax 2-fold relational monoid it fails: {', '.join(conv.failed)}", file=out)
    ok = ct.closure_only_failure(rep)
    print(f"fails only closure: {'PASS' if ok else 'FAIL'}", file=out)
    return ok


def demo_lin_product(out) -> bool:
    small = [P for n in range(3) for P in cc.all_pomsets(n, "ab")]
    checked = bad = 0
    for P, Q in itertools.product(small, repeat=2):
        lhs = sum(1 for _ in cc.linear_orders(cc.pomset_seq(P, Q)))
        rhs = sum(1 for _ in cc.linear_orders(P)) * sum(1 for _ in cc.linear_orders(Q))
        checked += 1
        bad += lhs != rhs
    print(f"|Lin(P⊙Q)| = |Lin P|·|Lin Q| on {checked} pairs, {bad} failures:"
          f" {'PASS' if not bad else 'FAIL'}", file=out)
    return not bad


def demo_proto(out) -> bool:
    ok = True
    for n in (1, 2, 3):
        fx = pr.fixture_chains(n)
        for r in range(n + 1):
            rep = pr.check_proto_monoidal(n, r, fx)
            print(f"⊗_{r} on chains of length {n}: {rep.verdict.upper()}", file=out)
            ok &= rep.ok
        prod = all(pr.is_pointwise_product(X, Y) for X in fx for Y in fx)
        union = all(pr.is_pointwise_disjoint_union(X, Y) for X in fx for Y in fx)
        print(f"  r = {n} is the pointwise product: {'PASS' if prod else 'FAIL'}", file=out)
        print(f"  r = 0 is the pointwise disjoint union: {'PASS' if union else 'FAIL'}", file=out)
        ok &= prod and union
    return ok


DEMOS = {
    "tensor-3chain": demo_tensor_3chain,
    "m-fifty": demo_m_fifty,
    "shuffle-interchange": demo_shuffle,
    "catoid-equivalence": demo_catoid_equivalence,
    "closure-counterexample": demo_closure,
    "lin-product": demo_lin_product,
    "proto-r": demo_proto,
}


def cmd_demo(args, out) -> int:
    if args.id not in DEMOS:
        print(f"error: unknown demo {args.id!r}; choose from {', '.join(DEMOS)}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_PASS if DEMOS[args.id](out) else EXIT_FAIL


# -- convert -------------------------------------------------------------------------


def convert(obj, kind: str):
    if kind == "rel-monoid" and isinstance(obj, ct.Catoid):
        return ct.catoid_to_relmonoid(obj)
    if kind == "catoid" and isinstance(obj, rm.RelMonoid):
        return ct.relmonoid_to_catoid(obj)
    if kind == "nfold-rel-monoid" and isinstance(obj, ct.NCatoid):
        return ct.ncatoid_to_nfold(obj)
    if kind == "n-catoid" and isinstance(obj, rm.NFoldRelMonoid):
        return ct.nfold_to_ncatoid(obj)
    raise FormatError(f"cannot convert {type(obj).__name__} to {kind}")


def cmd_convert(args, out) -> int:
    try:
        obj = convert(formats.read(args.file), args.to)
    except ct.NotRepresentable as e:
        print(f"error: not representable: {e}", file=sys.stderr)
        return EXIT_FAIL
    except (FormatError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    print(formats.dumps(obj), end="", file=out)
    return EXIT_PASS


# -- entry point ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nfold", description="Check and enumerate n-fold structures.")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", help="run the axiom suite on a structure file")
    c.add_argument("file")
    c.add_argument("--json", action="store_true", help="print the report as JSON")
    e = sub.add_parser("enumerate", help="stream structures as JSON lines, then the count")
    e.add_argument("kind", choices=ENUM_KINDS)
    e.add_argument("--size", type=int, default=0)
    e.add_argument("--filter", default=None)
    e.add_argument("--module", default=None, help="B, M3, N5, chainK, free:xyz or a file")
    d = sub.add_parser("demo", help="reproduce one pinned fact")
    d.add_argument("id", help=", ".join(DEMOS))
    v = sub.add_parser("convert", help="convert between catoids and relational monoids")
    v.add_argument("file")
    v.add_argument("--to", required=True,
                   choices=("catoid", "rel-monoid", "n-catoid", "nfold-rel-monoid"))
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS
    handler = {"check": cmd_check, "enumerate": cmd_enumerate, "demo": cmd_demo,
               "convert": cmd_convert}[args.command]
    return handler(args, out)


if __name__ == "__main__":
    sys.exit(main())
