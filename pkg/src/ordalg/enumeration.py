"""Exhaustive, deterministic generators for map classes and catalogs.

Everything here is explicit brute force over partitions, subsets and
sub-relations with early pruning.  That is deliberate: at the supported
sizes it is exact, auditable, and serves as the oracle for the algebra
layer.  All generators are pure and return identically ordered output on
every run.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .canonical import canonical_form
from .errors import MalformedInput, SizeBoundExceeded
from .maps import is_admissible, is_preorder_contraction
from .orders import (
    DEFAULT_MAX_SIZE,
    OrderMap,
    Partition,
    Relation,
    _bits,
    induced_subrelation,
    is_connected_subset,
    is_convex_subset,
    normalize_partition,
    strict_covers,
    transitive_closure,
)


@dataclass(frozen=True)
class ContractionDatum:
    """A contraction out of a fixed labeled poset, given by its kernel.

    The kernel partition plus the induced quotient order is a complete
    invariant of the contraction, so nothing else is stored.
    """

    source: Relation
    kernel: Partition
    quotient: Relation
    fibres: tuple[Relation, ...]
    map: OrderMap


@dataclass(frozen=True)
class CutDatum:
    source: Relation
    downset: tuple[int, ...]


def set_partitions(n: int) -> Iterator[Partition]:
    """All partitions of {0..n-1}, blocks by minimum element, lexicographic."""
    if n == 0:
        yield ()
        return

    def extend(k: int, blocks: list[list[int]]) -> Iterator[Partition]:
        if k == n:
            yield tuple(tuple(b) for b in blocks)
            return
        for b in blocks:
            b.append(k)
            yield from extend(k + 1, blocks)
            b.pop()
        blocks.append([k])
        yield from extend(k + 1, blocks)
        blocks.pop()

    yield from extend(1, [[0]])


def _induced_quotient(p: Relation, blocks: Partition) -> tuple[Relation, OrderMap] | None:
    """Quotient order generated by cross-block relations; None if not antisymmetric."""
    k = len(blocks)
    label = [0] * p.n
    for idx, b in enumerate(blocks):
        for e in b:
            label[e] = idx
    rows = [1 << i for i in range(k)]
    for x in range(p.n):
        for y in _bits(p.rows[x]):
            if label[x] != label[y]:
                rows[label[x]] |= 1 << label[y]
    q = transitive_closure(Relation(k, tuple(rows)))
    if not q.is_antisymmetric():
        return None
    return q, OrderMap(p, q, tuple(label))


def _check_empty(p: Relation, allow_empty: bool, what: str) -> None:
    if p.n == 0 and not allow_empty:
        raise MalformedInput(f"{what} of the empty poset (pass allow_empty to permit)")


def enumerate_contractions(p: Relation, allow_empty: bool = False) -> list[ContractionDatum]:
    """All contraction kernels of a poset, sorted by kernel partition.

    Blocks must be connected and convex, the induced quotient must be
    antisymmetric, and the induced map must lift covers.  Includes the
    identity (all singletons) and, for connected p, the total collapse.
    """
    _check_empty(p, allow_empty, "contractions")
    out = []
    src_covers = strict_covers(p)
    for blocks in set_partitions(p.n):
        if not all(
            is_connected_subset(p, b) and is_convex_subset(p, b) for b in blocks
        ):
            continue
        iq = _induced_quotient(p, blocks)
        if iq is None:
            continue
        q, f = iq
        lifted = all(
            any(f(a) == c.lower and f(b) == c.upper for a, b in src_covers)
            for c in strict_covers(q)
        )
        if not lifted:
            continue
        out.append(
            ContractionDatum(
                source=p,
                kernel=blocks,
                quotient=q,
                fibres=tuple(induced_subrelation(p, b) for b in blocks),
                map=f,
            )
        )
    out.sort(key=lambda d: d.kernel)
    return out


def enumerate_collapses(p: Relation, allow_empty: bool = False) -> list[ContractionDatum]:
    """All collapse kernels of a poset: quotient exists and is partially reflected."""
    _check_empty(p, allow_empty, "collapses")
    out = []
    for blocks in set_partitions(p.n):
        iq = _induced_quotient(p, blocks)
        if iq is None:
            continue
        q, f = iq
        ok = True
        for bi in range(q.n):
            for bj in range(q.n):
                if bi == bj or not q.le(bi, bj):
                    continue
                if not all(p.strict(x, y) for x in blocks[bi] for y in blocks[bj]):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        out.append(
            ContractionDatum(
                source=p,
                kernel=blocks,
                quotient=q,
                fibres=tuple(induced_subrelation(p, b) for b in blocks),
                map=f,
            )
        )
    out.sort(key=lambda d: d.kernel)
    return out


def enumerate_admissible(t: Relation) -> list[Relation]:
    """All admissible sub-relations of a preorder, sorted by row encoding."""
    if not t.is_preorder():
        raise MalformedInput("admissible sub-relations are defined for preorders")
    strict_pairs = t.pairs()
    out = []
    for picked in itertools.product((False, True), repeat=len(strict_pairs)):
        rows = [1 << i for i in range(t.n)]
        for keep, (i, j) in zip(picked, strict_pairs):
            if keep:
                rows[i] |= 1 << j
        sub = Relation(t.n, tuple(rows))
        if sub.is_transitive() and is_admissible(sub, t):
            out.append(sub)
    out.sort(key=lambda r: r.rows)
    return out


def enumerate_preorder_contractions(t: Relation) -> list[OrderMap]:
    """All identity-on-objects contractions out of a preorder, by target relation."""
    if not t.is_preorder():
        raise MalformedInput("preorder contractions need a preorder source")
    missing = [
        (i, j) for i in range(t.n) for j in range(t.n) if i != j and not t.le(i, j)
    ]
    out = []
    for picked in itertools.product((False, True), repeat=len(missing)):
        rows = list(t.rows)
        for keep, (i, j) in zip(picked, missing):
            if keep:
                rows[i] |= 1 << j
        v = Relation(t.n, tuple(rows))
        if not v.is_transitive():
            continue
        f = OrderMap(t, v, tuple(range(t.n)))
        if is_preorder_contraction(f):
            out.append(f)
    out.sort(key=lambda f: f.target.rows)
    return out


def enumerate_downsets(p: Relation) -> list[CutDatum]:
    """All down-closed subsets, empty and full included, by size then elements."""
    down = [p.column(j) for j in range(p.n)]
    out = []
    for mask in range(1 << p.n):
        if all(not (down[x] & ~mask) for x in _bits(mask)):
            out.append(CutDatum(p, tuple(_bits(mask))))
    out.sort(key=lambda c: (len(c.downset), c.downset))
    return out


def enumerate_convex_subsets(p: Relation) -> list[tuple[int, ...]]:
    """All convex subsets (the empty set included), by size then elements."""
    out = [
        tuple(_bits(mask))
        for mask in range(1 << p.n)
        if is_convex_subset(p, _bits(mask))
    ]
    out.sort(key=lambda s: (len(s), s))
    return out


# -- catalogs ----------------------------------------------------------------


def _dedup(rels: Iterator[Relation]) -> list[Relation]:
    seen = {}
    for rel in rels:
        iso = canonical_form(rel)
        if iso.key not in seen:
            seen[iso.key] = iso.relation()
    return [seen[k] for k in sorted(seen)]


def _posets_brute(n: int) -> Iterator[Relation]:
    # Every poset admits a linear extension, so matrices with support above
    # the diagonal reach every isomorphism class.
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for picked in itertools.product((False, True), repeat=len(slots)):
        rows = [1 << i for i in range(n)]
        for keep, (i, j) in zip(picked, slots):
            if keep:
                rows[i] |= 1 << j
        rel = Relation(n, tuple(rows))
        if rel.is_transitive():
            yield rel


def _preorders_brute(n: int) -> Iterator[Relation]:
    slots = [(i, j) for i in range(n) for j in range(n) if i != j]
    for picked in itertools.product((False, True), repeat=len(slots)):
        rows = [1 << i for i in range(n)]
        for keep, (i, j) in zip(picked, slots):
            if keep:
                rows[i] |= 1 << j
        rel = Relation(n, tuple(rows))
        if rel.is_transitive():
            yield rel


@lru_cache(maxsize=None)
def catalog(kind: str, n: int, max_n: int = DEFAULT_MAX_SIZE) -> tuple[Relation, ...]:
    """One canonical representative per isomorphism class, sorted by key.

    kind is one of "poset", "preorder", "connected-poset".  Generation is
    filtered brute force over relation matrices with canonical-form dedup.
    """
    if n > max_n:
        raise SizeBoundExceeded(f"catalog size {n} exceeds bound {max_n}")
    if n < 0:
        raise MalformedInput("catalog size must be nonnegative")
    if kind == "poset":
        return tuple(_dedup(_posets_brute(n)))
    if kind == "preorder":
        return tuple(_dedup(_preorders_brute(n)))
    if kind == "connected-poset":
        return tuple(r for r in catalog("poset", n, max_n) if r.is_connected())
    raise MalformedInput(f"unknown catalog kind {kind!r}")
