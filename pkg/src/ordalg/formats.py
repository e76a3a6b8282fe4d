"""Text, JSON and DOT formats for relations, maps and algebra elements.

Text blocks look like

    n=3
    0 1
    1 2

with one "i j" line per generating pair i <= j; reflexive pairs are
optional and the transitive closure is applied on load.  The JSON form is
{"n": int, "rel": [[i, j], ...]}.  Several relations may share a file,
separated by blank lines.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import Monomial, TensorElem
from .canonical import IsoClass
from .errors import MalformedInput, NotAPoset
from .orders import OrderMap, Relation, covers, strict_covers, transitive_closure


def _close(n: int, pairs: list[tuple[int, int]]) -> Relation:
    return transitive_closure(Relation.from_pairs(n, pairs))


def parse_relation_block(block: str) -> Relation:
    lines = [ln.strip() for ln in block.splitlines() if ln.strip()]
    if not lines:
        raise MalformedInput("empty relation block")
    head = lines[0].replace(" ", "")
    if not head.startswith("n="):
        raise MalformedInput(f"first line must be n=<count>, got {lines[0]!r}")
    try:
        n = int(head[2:])
    except ValueError as exc:
        raise MalformedInput(f"bad element count in {lines[0]!r}") from exc
    pairs = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise MalformedInput(f"expected 'i j', got {ln!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise MalformedInput(f"non-integer pair {ln!r}") from exc
        pairs.append((i, j))
    return _close(n, pairs)


def relation_from_json(obj: dict) -> Relation:
    try:
        n = obj["n"]
        pairs = [(int(i), int(j)) for i, j in obj["rel"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"bad relation JSON: {obj!r}") from exc
    return _close(n, pairs)


def relation_to_json(rel: Relation) -> dict:
    return {"n": rel.n, "rel": [list(p) for p in rel.pairs()]}


def loads_relations(text: str) -> list[Relation]:
    """Parse a file's worth of relations; format sniffed by the first byte."""
    text = text.strip()
    if not text:
        raise MalformedInput("no relations in input")
    if text[0] in "[{":
        data = json.loads(text)
        if isinstance(data, dict):
            data = [data]
        return [relation_from_json(obj) for obj in data]
    blocks = [b for b in text.split("\n\n") if b.strip()]
    return [parse_relation_block(b) for b in blocks]


def load_relations(path: str) -> list[Relation]:
    with open(path, encoding="utf-8") as fh:
        return loads_relations(fh.read())


def require_poset(rel: Relation) -> Relation:
    if not rel.is_poset():
        raise NotAPoset("input relation is not antisymmetric")
    return rel


def map_to_json(f: OrderMap) -> dict:
    return {
        "src": relation_to_json(f.source),
        "tgt": relation_to_json(f.target),
        "f": list(f.assignment),
    }


def map_from_json(obj: dict) -> OrderMap:
    try:
        return OrderMap(
            relation_from_json(obj["src"]),
            relation_from_json(obj["tgt"]),
            tuple(int(v) for v in obj["f"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"bad map JSON: {obj!r}") from exc


def admissible_to_json(amb: Relation, sub: Relation) -> dict:
    return {"amb": relation_to_json(amb), "sub_pairs": [list(p) for p in sub.pairs()]}


def dot_hasse(rel: Relation, name: str = "hasse") -> str:
    """Graphviz DOT of the cover relation, edges drawn lower to upper."""
    edges = covers(rel)
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i in range(rel.n):
        lines.append(f"  {i};")
    for c in edges:
        lines.append(f"  {c.lower} -> {c.upper};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- human-readable forms ------------------------------------------------------


def pretty_relation(rel: Relation) -> str:
    """Cover-list form: sym pairs as i~j, strict covers as i<j."""
    if rel.n == 1:
        return "*"
    sym = sorted(
        (i, j) for i, j in rel.pairs() if i < j and rel.le(j, i)
    )
    cov = sorted((c.lower, c.upper) for c in strict_covers(rel))
    parts = [f"{i}~{j}" for i, j in sym] + [f"{i}<{j}" for i, j in cov]
    return f"({rel.n}:{','.join(parts)})"


def pretty_iso(iso: IsoClass) -> str:
    return pretty_relation(iso.relation())


def pretty_monomial(m: Monomial) -> str:
    if m.is_unit():
        return "1"
    return ".".join(pretty_iso(f) for f in m.factors)


def coeff_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def tensor_to_json(t: TensorElem) -> list[dict]:
    out = []
    for (left, right), c in t.terms:
        out.append(
            {
                "left": [f.hex() for f in left.factors],
                "right": [f.hex() for f in right.factors],
                "coeff": coeff_str(c),
            }
        )
    return out


def pretty_tensor(t: TensorElem) -> str:
    lines = []
    for (left, right), c in t.terms:
        coeff = str(c) if c.denominator != 1 else str(c.numerator)
        lines.append(f"{coeff} * {pretty_monomial(left)} (x) {pretty_monomial(right)}")
    return "\n".join(lines) if lines else "0"
