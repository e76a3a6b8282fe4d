"""Canonical forms and automorphism counts for finite relations.

The canonical form of a relation is the lexicographically least encoding of
its matrix over all relabelings that respect an iteratively refined
degree/neighborhood invariant.  Two relations are isomorphic iff their
canonical encodings are equal; the number of relabelings attaining the
minimum is the order of the automorphism group.  Plain permutation search
with invariant pruning is deliberate: at the supported sizes it is exact,
fast enough, and doubles as its own oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import SizeBoundExceeded
from .orders import DEFAULT_MAX_SIZE, Relation, _bits


@dataclass(frozen=True)
class IsoClass:
    """Isomorphism-class key of a relation.

    key is the canonical matrix encoding (size prefix plus row bitmasks),
    size the element count, aut the order of the automorphism group.
    """

    key: bytes
    size: int
    aut: int

    def relation(self) -> Relation:
        """The canonical representative encoded by this key."""
        n = self.key[0]
        rows = tuple(
            int.from_bytes(self.key[1 + 2 * i : 3 + 2 * i], "big") for i in range(n)
        )
        return Relation(n, rows)

    def hex(self) -> str:
        return self.key.hex()

    def __lt__(self, other: "IsoClass") -> bool:
        return self.key < other.key


def relabel(rel: Relation, perm: tuple[int, ...]) -> Relation:
    """Relation with element i renamed to perm[i]."""
    rows = [0] * rel.n
    for i in range(rel.n):
        row = 0
        for j in _bits(rel.rows[i]):
            row |= 1 << perm[j]
        rows[perm[i]] = row
    return Relation(rel.n, tuple(rows))


def _refined_classes(rel: Relation) -> list[list[int]]:
    """Vertex classes of a 1-dimensional refinement invariant, in canonical order.

    Any isomorphism maps the k-th class of one relation onto the k-th class
    of the other, so restricting the canonical search to class-respecting
    relabelings loses nothing.
    """
    n = rel.n
    cols = [rel.column(j) for j in range(n)]
    ids = [
        ((rel.rows[v]).bit_count(), cols[v].bit_count(), (rel.rows[v] & cols[v]).bit_count())
        for v in range(n)
    ]
    ids = [sorted(set(ids)).index(x) for x in ids]
    while True:
        sigs = []
        for v in range(n):
            neigh = sorted(
                (ids[w], (rel.rows[v] >> w) & 1, (rel.rows[w] >> v) & 1)
                for w in range(n)
                if w != v
            )
            sigs.append((ids[v], tuple(neigh)))
        order = sorted(set(sigs))
        new_ids = [order.index(s) for s in sigs]
        if new_ids == ids:
            break
        ids = new_ids
    classes: dict[int, list[int]] = {}
    for v in range(n):
        classes.setdefault(ids[v], []).append(v)
    return [classes[c] for c in sorted(classes)]


def _encode(rel: Relation, order: tuple[int, ...]) -> tuple[int, ...]:
    """Row bitmasks of the relation relabeled so position k holds order[k]."""
    n = rel.n
    pos = [0] * n
    for k, v in enumerate(order):
        pos[v] = k
    out = []
    for v in order:
        row = 0
        for w in _bits(rel.rows[v]):
            row |= 1 << pos[w]
        out.append(row)
    return tuple(out)


_CACHE: dict[tuple[int, tuple[int, ...]], IsoClass] = {}


def canonical_form(rel: Relation, max_n: int = DEFAULT_MAX_SIZE) -> IsoClass:
    """Canonical IsoClass of a relation; cached (write-once, safe for readers)."""
    if rel.n > max_n:
        raise SizeBoundExceeded(f"canonical form of size {rel.n} exceeds bound {max_n}")
    cached = _CACHE.get((rel.n, rel.rows))
    if cached is not None:
        return cached
    classes = _refined_classes(rel)
    best: tuple[int, ...] | None = None
    aut = 0
    for parts in itertools.product(*(itertools.permutations(c) for c in classes)):
        order = tuple(itertools.chain.from_iterable(parts))
        key = _encode(rel, order)
        if best is None or key < best:
            best, aut = key, 1
        elif key == best:
            aut += 1
    rows = best if best is not None else ()
    key_bytes = bytes([rel.n]) + b"".join(row.to_bytes(2, "big") for row in rows)
    iso = IsoClass(key_bytes, rel.n, aut if rel.n else 1)
    _CACHE[(rel.n, rel.rows)] = iso
    return iso


def are_isomorphic(a: Relation, b: Relation) -> bool:
    return canonical_form(a).key == canonical_form(b).key
