"""JSON structure files.

Every file is a UTF-8 JSON object with a top-level ``"kind"``.  Element ids
are JSON scalars or arrays (read back as tuples); a set-valued id is written
``{"set": [...]}``.  Relations are arrays of id arrays, so a multiplication
``z in x*y`` is the row ``[x, y, z]``.

:func:`load` turns a document into library objects and :func:`dump` turns
them back into a canonical document; ``dump(load(d)) == d`` for canonical
``d``.
"""

from __future__ import annotations

import json
from pathlib import Path

from .boolcore import FinSemilattice, FormatError, ModuleMorphism, semilattice_from_table
from .catoid import Catoid, NCatoid
from .coalg import BAlgebra, BCoalgebra, DoubleBAlgebra, FreeCoalgebra, GradedModule, _telem
from .concur import Language, Pomset
from .posetmon import OrderedMonoid
from .proto import ProtocolChain
from .relmon import NFoldRelMonoid, RelMonoid

KINDS = (
    "semilattice", "module-morphism", "rel-monoid", "nfold-rel-monoid", "catoid", "n-catoid",
    "pomset", "language", "ordered-monoid", "b-algebra", "b-coalgebra", "double-b-algebra",
    "graded-module", "protocol-chain",
)


class UnknownKind(FormatError):
    pass


# -- ids ------------------------------------------------------------------------


def decode_id(v):
    if isinstance(v, list):
        return tuple(decode_id(x) for x in v)
    if isinstance(v, dict):
        if set(v) != {"set"} or not isinstance(v["set"], list):
            raise FormatError(f"bad id {v!r}")
        return frozenset(decode_id(x) for x in v["set"])
    if isinstance(v, float) or v is None:
        raise FormatError(f"bad id {v!r}")
    return v


def encode_id(x):
    if isinstance(x, bool) or not isinstance(x, (int, str, tuple, frozenset)):
        raise FormatError(f"cannot serialise element {x!r}")
    if isinstance(x, tuple):
        return [encode_id(v) for v in x]
    if isinstance(x, frozenset):
        return {"set": sorted((encode_id(v) for v in x), key=_order)}
    return x


def _order(v):
    return json.dumps(v, sort_keys=True, ensure_ascii=False)


def _rows(xs) -> list:
    return sorted(([encode_id(v) for v in row] for row in xs), key=_order)


def _ids(xs, sort=False) -> list:
    out = [encode_id(x) for x in xs]
    return sorted(out, key=_order) if sort else out


def _field(doc: dict, key: str, typ=list):
    if key not in doc:
        raise FormatError(f"missing field {key!r}")
    v = doc[key]
    if typ is not None and not isinstance(v, typ):
        raise FormatError(f"field {key!r} must be a {typ.__name__}")
    return v


def _carrier(doc, key="carrier") -> tuple:
    carrier = tuple(decode_id(x) for x in _field(doc, key))
    if len(set(carrier)) != len(carrier):
        raise FormatError(f"duplicate ids in {key!r}")
    return carrier


def _relation(doc, key, arity, carrier) -> list:
    out = []
    members = set(carrier or ())
    for row in _field(doc, key):
        if not isinstance(row, list) or len(row) != arity:
            raise FormatError(f"{key!r} rows must have {arity} entries, got {row!r}")
        row = tuple(decode_id(v) for v in row)
        for v in row:
            if carrier is not None and v not in members:
                raise FormatError(f"{key!r} entry {v!r} is outside the carrier")
        out.append(row)
    return out


def _function(doc, key, carrier, into_carrier=True) -> dict:
    """A total function on the carrier, with values in the carrier unless
    ``into_carrier`` is false."""
    rows = _relation(doc, key, 2, carrier if into_carrier else None)
    if not into_carrier and any(r[0] not in set(carrier) for r in rows):
        raise FormatError(f"{key!r} is defined outside the carrier")
    f = dict(rows)
    if len(f) != len(rows) or set(f) != set(carrier):
        raise FormatError(f"{key!r} must assign exactly one value to every element")
    return f


def _subset(doc, key, carrier) -> frozenset:
    members = set(carrier)
    out = frozenset(decode_id(v) for v in _field(doc, key))
    if not out <= members:
        raise FormatError(f"{key!r} has ids outside the carrier")
    return out


# -- loaders ------------------------------------------------------------------------


def _load_semilattice(doc) -> FinSemilattice:
    elements = _carrier(doc, "elements")
    if "zero" not in doc:
        raise FormatError("missing field 'zero'")
    rows = _relation(doc, "join", 3, elements)
    return semilattice_from_table(elements, rows, decode_id(doc["zero"]), name=doc.get("name"))


def _load_morphism(doc) -> ModuleMorphism:
    S = _load_semilattice(_field(doc, "source", dict))
    T = _load_semilattice(_field(doc, "target", dict))
    rows = [tuple(decode_id(v) for v in r) for r in _field(doc, "map")]
    f = dict(rows)
    if set(f) != set(S.elements) or any(y not in T for y in f.values()):
        raise FormatError("map must send every source element into the target")
    return ModuleMorphism.from_dict(S, T, f)


def _load_relmonoid_body(doc, carrier, name=None) -> RelMonoid:
    triples = _relation(doc, "triples", 3, carrier)
    units = _subset(doc, "units", carrier)
    weight = bound = None
    if "weight" in doc:
        weight = _function(doc, "weight", carrier, into_carrier=False)
        if any(not isinstance(w, int) or w < 0 for w in weight.values()):
            raise FormatError("weights must be natural numbers")
        bound = doc.get("bound")
        if not isinstance(bound, int):
            raise FormatError("a weighted fragment needs an integer 'bound'")
    return RelMonoid.make(carrier, triples, units, weight=weight, bound=bound, name=name)


def _load_relmonoid(doc) -> RelMonoid:
    return _load_relmonoid_body(doc, _carrier(doc), doc.get("name"))


def _load_nfold(doc) -> NFoldRelMonoid:
    carrier = _carrier(doc)
    structures = tuple(_load_relmonoid_body(s, carrier) for s in _field(doc, "structures"))
    return NFoldRelMonoid(carrier, structures, name=doc.get("name"))


def _load_catoid_body(doc, carrier, name=None) -> Catoid:
    mult: dict = {}
    for x, y, z in _relation(doc, "mult", 3, carrier):
        mult.setdefault((x, y), set()).add(z)
    return Catoid(carrier, mult, _function(doc, "s", carrier), _function(doc, "t", carrier),
                  name=name)


def _load_catoid(doc) -> Catoid:
    return _load_catoid_body(doc, _carrier(doc), doc.get("name"))


def _load_ncatoid(doc) -> NCatoid:
    carrier = _carrier(doc)
    return NCatoid(carrier, [_load_catoid_body(d, carrier) for d in _field(doc, "dims")],
                   name=doc.get("name"))


def _load_pomset(doc) -> Pomset:
    labels = [decode_id(v) for v in _field(doc, "labels")]
    pairs = []
    for row in _field(doc, "order"):
        if not (isinstance(row, list) and len(row) == 2 and all(isinstance(v, int) for v in row)):
            raise FormatError(f"order rows are pairs of event numbers, got {row!r}")
        pairs.append(tuple(row))
    try:
        return Pomset.make(labels, pairs)
    except ValueError as e:
        raise FormatError(str(e)) from None


def _load_language(doc) -> Language:
    alphabet = _field(doc, "alphabet", str)
    maxlen = _field(doc, "maxlen", int)
    words = _field(doc, "words")
    if not all(isinstance(w, str) for w in words):
        raise FormatError("words must be strings")
    return Language.make(alphabet, maxlen, words)


def _load_ordered(doc) -> OrderedMonoid:
    elements = _carrier(doc, "elements")
    order = set(_relation(doc, "leq", 2, elements))
    ops, labels = [], []
    for k, entry in enumerate(_field(doc, "ops")):
        table = {(x, y): z for x, y, z in _relation(entry, "table", 3, elements)}
        if len(table) != len(elements) ** 2:
            raise FormatError(f"product {k} is not total")
        if "unit" not in entry or decode_id(entry["unit"]) not in elements:
            raise FormatError(f"product {k} needs a unit in the carrier")
        ops.append((lambda x, y, table=table: table[x, y], decode_id(entry["unit"])))
        labels.append(entry.get("label", f"op{k}"))
    m = OrderedMonoid(elements, lambda a, b: a == b or (a, b) in order, ops,
                      name=doc.get("name") or "ordered-monoid", labels=labels)
    m.order_pairs = frozenset(order)
    return m


def _load_mult(doc, M) -> tuple:
    table = {(x, y): z for x, y, z in _relation(doc, "mult", 3, M.elements)}
    if len(table) != len(M) ** 2:
        raise FormatError("multiplication table is not total")
    if "one" not in doc:
        raise FormatError("missing field 'one' (null for a product without unit)")
    if doc["one"] is None:
        return table, None
    if decode_id(doc["one"]) not in M:
        raise FormatError("the unit 'one' must be in the module")
    return table, decode_id(doc["one"])


def _load_algebra(doc) -> BAlgebra:
    M = _load_semilattice(_field(doc, "module", dict))
    table, one = _load_mult(doc, M)
    return BAlgebra(M, table, one, name=doc.get("name"))


def _load_coalgebra(doc):
    counit = doc.get("counit")
    if "generators" in doc:
        gens = _carrier(doc, "generators")
        delta = {}
        for row in _field(doc, "delta"):
            g, pairs = decode_id(row[0]), [tuple(decode_id(v) for v in p) for p in row[1]]
            if g not in gens or any(a not in gens or b not in gens for a, b in pairs):
                raise FormatError(f"delta row for {g!r} leaves the generators")
            delta[g] = pairs
        cu = None if counit is None else _subset(doc, "counit", gens)
        return FreeCoalgebra(gens, delta, cu, name=doc.get("name") or "free-coalgebra")
    M = _load_semilattice(_field(doc, "module", dict))
    delta = {}
    for row in _field(doc, "delta"):
        x = decode_id(row[0])
        pairs = [tuple(decode_id(v) for v in p) for p in row[1]]
        if x not in M or any(a not in M or b not in M for a, b in pairs):
            raise FormatError(f"delta row for {x!r} leaves the module")
        delta[x] = _telem((M, M), pairs)
    if set(delta) != set(M.elements):
        raise FormatError("delta must be given on every element")
    cu = None
    if counit is not None:
        ones = _subset(doc, "counit", M.elements)
        cu = {x: int(x in ones) for x in M}
    return BCoalgebra(M, delta, cu, name=doc.get("name"))


def _load_double(doc) -> DoubleBAlgebra:
    M = _load_semilattice(_field(doc, "module", dict))
    ops = [_load_mult(entry, M) for entry in _field(doc, "ops")]
    if len(ops) != 2:
        raise FormatError("a double algebra has exactly two products")
    return DoubleBAlgebra(M, ops, name=doc.get("name"))


def _load_graded(doc) -> GradedModule:
    grades = _carrier(doc, "grades")
    table = {(a, b): c for a, b, c in _relation(doc, "op", 3, grades)}
    if "unit" not in doc or decode_id(doc["unit"]) not in grades:
        raise FormatError("the unit grade must be one of the grades")
    components = {}
    for row in _field(doc, "components"):
        g = decode_id(row[0])
        if g not in grades:
            raise FormatError(f"component at unknown grade {g!r}")
        components[g] = _load_semilattice(row[1])
    X = GradedModule(grades, lambda a, b: table.get((a, b)), decode_id(doc["unit"]), components,
                     name=doc.get("name") or "X")
    X.op_table = table
    return X


def _load_chain(doc) -> ProtocolChain:
    levels = [tuple(decode_id(v) for v in l) for l in _field(doc, "levels")]
    maps = []
    for i, rows in enumerate(_field(doc, "maps")):
        if i + 1 >= len(levels):
            raise FormatError("more maps than levels")
        m = {decode_id(a): decode_id(b) for a, b in rows}
        if set(m) != set(levels[i + 1]) or not set(m.values()) <= set(levels[i]):
            raise FormatError(f"map {i + 1} must send level {i + 2} into level {i + 1}")
        maps.append(m)
    if len(maps) != max(len(levels) - 1, 0):
        raise FormatError("a chain with n levels needs n - 1 maps")
    return ProtocolChain.make(levels, maps, name=doc.get("name") or "X")


_LOADERS = {
    "semilattice": _load_semilattice,
    "module-morphism": _load_morphism,
    "rel-monoid": _load_relmonoid,
    "nfold-rel-monoid": _load_nfold,
    "catoid": _load_catoid,
    "n-catoid": _load_ncatoid,
    "pomset": _load_pomset,
    "language": _load_language,
    "ordered-monoid": _load_ordered,
    "b-algebra": _load_algebra,
    "b-coalgebra": _load_coalgebra,
    "double-b-algebra": _load_double,
    "graded-module": _load_graded,
    "protocol-chain": _load_chain,
}


def load(doc: dict):
    """Build the structure described by a parsed document."""
    if not isinstance(doc, dict):
        raise FormatError("a structure file holds a JSON object")
    kind = doc.get("kind")
    if kind not in _LOADERS:
        raise UnknownKind(f"unknown kind {kind!r}")
    try:
        return _LOADERS[kind](doc)
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise FormatError(f"malformed {kind} document: {e}") from None


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"not JSON: {e}") from None
    return load(doc)


def read(path) -> object:
    return loads(Path(path).read_text(encoding="utf-8"))


# -- dumpers --------------------------------------------------------------------


def _named(doc, name):
    if name:
        doc["name"] = name
    return doc


def _dump_semilattice(M: FinSemilattice) -> dict:
    rows = [(x, y, M.join(x, y)) for x in M for y in M]
    return _named({"kind": "semilattice", "elements": _ids(M.elements), "zero": encode_id(M.zero),
                   "join": _rows(rows)}, M.name)


def _dump_relmonoid_body(m: RelMonoid) -> dict:
    doc = {"triples": _rows(m.triples), "units": _ids(m.units, sort=True)}
    if m.weight is not None:
        doc["weight"] = _rows(m.weight.items())
        doc["bound"] = m.bound
    return doc


def _dump_catoid_body(c: Catoid) -> dict:
    return {"mult": _rows(c.triples), "s": _rows((x, c.s[x]) for x in c.carrier),
            "t": _rows((x, c.t[x]) for x in c.carrier)}


def _dump_mult(a: BAlgebra) -> dict:
    M = a.module
    return {"mult": _rows((x, y, a.mult(x, y)) for x in M for y in M), "one": None if a.one is None else encode_id(a.one)}


def dump(obj) -> dict:
    """Canonical document for a library object."""
    if isinstance(obj, ModuleMorphism):
        return {"kind": "module-morphism", "source": _dump_semilattice(obj.source),
                "target": _dump_semilattice(obj.target), "map": _rows(obj.as_dict().items())}
    if isinstance(obj, FinSemilattice):
        return _dump_semilattice(obj)
    if isinstance(obj, RelMonoid):
        doc = {"kind": "rel-monoid", "carrier": _ids(obj.carrier)}
        doc.update(_dump_relmonoid_body(obj))
        return _named(doc, obj.name)
    if isinstance(obj, NFoldRelMonoid):
        return _named({"kind": "nfold-rel-monoid", "carrier": _ids(obj.carrier),
                       "structures": [_dump_relmonoid_body(s) for s in obj.structures]}, obj.name)
    if isinstance(obj, Catoid):
        doc = {"kind": "catoid", "carrier": _ids(obj.carrier)}
        doc.update(_dump_catoid_body(obj))
        return _named(doc, obj.name)
    if isinstance(obj, NCatoid):
        return _named({"kind": "n-catoid", "carrier": _ids(obj.carrier),
                       "dims": [_dump_catoid_body(c) for c in obj.dims]}, obj.name)
    if isinstance(obj, Pomset):
        return {"kind": "pomset", "labels": _ids(obj.labels),
                "order": sorted([a, b] for a, b in obj.less)}
    if isinstance(obj, Language):
        return {"kind": "language", "alphabet": obj.alphabet, "maxlen": obj.maxlen,
                "words": sorted(obj.words, key=lambda w: (len(w), w))}
    if isinstance(obj, OrderedMonoid):
        return _dump_ordered(obj)
    if isinstance(obj, DoubleBAlgebra):
        return _named({"kind": "double-b-algebra", "module": _dump_semilattice(obj.module),
                       "ops": [_dump_mult(a) for a in obj.algebras]}, obj.name)
    if isinstance(obj, BAlgebra):
        doc = {"kind": "b-algebra", "module": _dump_semilattice(obj.module)}
        doc.update(_dump_mult(obj))
        return _named(doc, obj.name)
    if isinstance(obj, FreeCoalgebra):
        doc = {"kind": "b-coalgebra", "generators": _ids(obj.generators),
               "delta": [[encode_id(g), _rows(obj.delta[g])] for g in obj.generators],
               "counit": None if obj.counit is None else _ids(obj.counit, sort=True)}
        return _named(doc, obj.name)
    if isinstance(obj, BCoalgebra):
        M = obj.module
        doc = {"kind": "b-coalgebra", "module": _dump_semilattice(M),
               "delta": [[encode_id(x), _rows(obj.delta[x].antichain)] for x in M],
               "counit": None if obj.counit is None
               else _ids([x for x in M if obj.counit[x]], sort=True)}
        return _named(doc, obj.name)
    if isinstance(obj, GradedModule):
        table = getattr(obj, "op_table", None)
        if table is None:
            table = {(a, b): obj.op(a, b) for a in obj.grades for b in obj.grades
                     if obj.op(a, b) in obj.grades}
        return _named({"kind": "graded-module", "grades": _ids(obj.grades),
                       "op": _rows((a, b, c) for (a, b), c in table.items() if c is not None),
                       "unit": encode_id(obj.unit),
                       "components": [[encode_id(g), _dump_semilattice(obj.components[g])]
                                      for g in obj.grades if g in obj.components]}, obj.name)
    if isinstance(obj, ProtocolChain):
        return _named({"kind": "protocol-chain", "levels": [_ids(l) for l in obj.levels],
                       "maps": [_rows(m) for m in obj.maps]}, obj.name)
    raise FormatError(f"no file format for {type(obj).__name__}")


def _dump_ordered(m: OrderedMonoid) -> dict:
    E = m.elements
    order = [(a, b) for a in E for b in E if a != b and m.leq(a, b)]
    ops = []
    for k, (op, one) in enumerate(m.ops):
        rows = []
        for x in E:
            for y in E:
                z = op(x, y)
                if z not in E:
                    raise FormatError(f"product {k} leaves the carrier at {(x, y)!r}")
                rows.append((x, y, z))
        ops.append({"label": m.label(k), "table": _rows(rows), "unit": encode_id(one)})
    return _named({"kind": "ordered-monoid", "elements": _ids(E), "leq": _rows(order),
                   "ops": ops}, m.name)


def dumps(obj) -> str:
    return json.dumps(dump(obj), ensure_ascii=False, indent=1) + "\n"


def write(obj, path) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")
