"""Finite posets and preorders on ordinals, with the basic relation calculus.

Every relation lives on the ordinal {0..n-1} and is reflexive by
construction.  Transitivity and antisymmetry are checked properties:
a Relation passing is_preorder is a preorder, one passing is_poset a
poset.  All values are immutable and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .errors import MalformedInput, NotAPoset

#: Default ceiling for exhaustive operations (catalogs, canonical forms).
DEFAULT_MAX_SIZE = 10


def _bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _mask(elems: Iterable[int]) -> int:
    m = 0
    for e in elems:
        m |= 1 << e
    return m


@dataclass(frozen=True)
class Relation:
    """A reflexive binary relation on {0..n-1}.

    The relation matrix is stored as one bitmask row per element: bit j of
    rows[i] means i <= j.  The diagonal is always present.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or len(self.rows) != self.n:
            raise MalformedInput(f"expected {self.n} rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.rows):
            if row & ~full:
                raise MalformedInput(f"row {i} relates elements outside 0..{self.n - 1}")
            if not (row >> i) & 1:
                raise MalformedInput(f"missing reflexive pair ({i}, {i})")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Relation":
        """Relation generated by the given i <= j pairs plus reflexivity."""
        rows = [1 << i for i in range(n)]
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise MalformedInput(f"pair ({i}, {j}) outside 0..{n - 1}")
            rows[i] |= 1 << j
        return cls(n, tuple(rows))

    @classmethod
    def discrete(cls, n: int) -> "Relation":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def chain(cls, n: int) -> "Relation":
        """The linear order 0 < 1 < ... < n-1."""
        full = (1 << n) - 1
        return cls(n, tuple((full >> i) << i for i in range(n)))

    @classmethod
    def indiscrete(cls, n: int) -> "Relation":
        """All elements mutually related (one equivalence class)."""
        full = (1 << n) - 1
        return cls(n, tuple(full for _ in range(n)))

    # -- queries -----------------------------------------------------------

    def le(self, i: int, j: int) -> bool:
        return bool((self.rows[i] >> j) & 1)

    def strict(self, i: int, j: int) -> bool:
        """i <= j but not j <= i (the strict order, correct for preorders too)."""
        return self.le(i, j) and not self.le(j, i)

    def equiv(self, i: int, j: int) -> bool:
        """Mutual relatedness i <= j <= i."""
        return self.le(i, j) and self.le(j, i)

    def column(self, j: int) -> int:
        """Bitmask of all i with i <= j."""
        m = 0
        for i in range(self.n):
            if (self.rows[i] >> j) & 1:
                m |= 1 << i
        return m

    def pairs(self) -> list[tuple[int, int]]:
        """All related pairs (i, j) with i != j, sorted."""
        return [(i, j) for i in range(self.n) for j in _bits(self.rows[i]) if i != j]

    def is_transitive(self) -> bool:
        for i in range(self.n):
            row = self.rows[i]
            for j in _bits(row):
                if self.rows[j] & ~row:
                    return False
        return True

    def is_antisymmetric(self) -> bool:
        for i in range(self.n):
            for j in _bits(self.rows[i]):
                if j != i and (self.rows[j] >> i) & 1:
                    return False
        return True

    def is_preorder(self) -> bool:
        return self.is_transitive()

    def is_poset(self) -> bool:
        return self.is_transitive() and self.is_antisymmetric()

    def is_discrete(self) -> bool:
        return all(self.rows[i] == 1 << i for i in range(self.n))

    def is_connected(self) -> bool:
        """Connectivity of the comparability graph (zig-zags allowed)."""
        if self.n == 0:
            return False
        return len(connected_components(self)) == 1

    def contains(self, other: "Relation") -> bool:
        """True if other's relation is a subset of this one (same n)."""
        return self.n == other.n and all(
            not (other.rows[i] & ~self.rows[i]) for i in range(self.n)
        )


class CoverPair(NamedTuple):
    lower: int
    upper: int


#: A partition of {0..n-1}: disjoint nonempty blocks, each sorted, ordered by
#: minimum element.
Partition = tuple[tuple[int, ...], ...]


def normalize_partition(blocks: Iterable[Iterable[int]]) -> Partition:
    return tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))


def transitive_closure(rel: Relation) -> Relation:
    """Smallest transitive relation containing rel (reflexivity preserved)."""
    rows = list(rel.rows)
    for k in range(rel.n):
        bit = 1 << k
        for i in range(rel.n):
            if rows[i] & bit:
                rows[i] |= rows[k]
    return Relation(rel.n, tuple(rows))


def strict_covers(rel: Relation) -> list[CoverPair]:
    """Cover pairs of the strict order: i < j with nothing strictly between.

    For preorders "strictly" means non-invertibly; covers of a preorder
    correspond to covers of its posetification.
    """
    out = []
    for i in range(rel.n):
        for j in range(rel.n):
            if not rel.strict(i, j):
                continue
            if any(rel.strict(i, k) and rel.strict(k, j) for k in range(rel.n)):
                continue
            out.append(CoverPair(i, j))
    return out


def covers(p: Relation) -> list[CoverPair]:
    """The transitive reduction of a poset as a sorted list of cover pairs."""
    if not p.is_poset():
        raise NotAPoset("not a poset")
    return strict_covers(p)


def connected_components(rel: Relation) -> Partition:
    """Blocks of the zig-zag connectivity classes of the comparability graph."""
    adj = [rel.rows[i] | rel.column(i) for i in range(rel.n)]
    seen = 0
    blocks = []
    for start in range(rel.n):
        if (seen >> start) & 1:
            continue
        comp = 1 << start
        frontier = comp
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= adj[v]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        blocks.append(tuple(_bits(comp)))
    return tuple(blocks)


def is_connected_subset(rel: Relation, elems: Iterable[int]) -> bool:
    """True if the induced subrelation on elems is nonempty and connected."""
    smask = _mask(elems)
    if smask == 0:
        return False
    start = (smask & -smask).bit_length() - 1
    adj = [(rel.rows[i] | rel.column(i)) & smask for i in range(rel.n)]
    comp = 1 << start
    frontier = comp
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= adj[v]
        frontier = nxt & ~comp
        comp |= nxt
    return comp == smask


def is_convex_subset(p: Relation, elems: Iterable[int]) -> bool:
    """True iff x <= w <= y with x, y in the subset forces w in the subset."""
    smask = _mask(elems)
    for w in range(p.n):
        if (smask >> w) & 1:
            continue
        if (p.column(w) & smask) and (p.rows[w] & smask):
            return False
    return True


def induced_subrelation(rel: Relation, elems: Iterable[int]) -> Relation:
    """Restriction to elems, relabeled along the increasing bijection."""
    sub = sorted(set(elems))
    pos = {e: k for k, e in enumerate(sub)}
    rows = []
    for e in sub:
        row = 0
        for f in _bits(rel.rows[e]):
            if f in pos:
                row |= 1 << pos[f]
        rows.append(row)
    return Relation(len(sub), tuple(rows))


#: Spec name for the poset case; defined for any subset of any relation.
induced_subposet = induced_subrelation


@dataclass(frozen=True)
class OrderMap:
    """A function between the element sets of two relations.

    Monotonicity is not assumed; it and the other map classes are checked
    properties (see ordalg.maps.classify).
    """

    source: Relation
    target: Relation
    assignment: tuple[int, ...]

    def __post_init__(self):
        if len(self.assignment) != self.source.n:
            raise MalformedInput(
                f"assignment has {len(self.assignment)} entries for {self.source.n} elements"
            )
        for i, v in enumerate(self.assignment):
            if not (0 <= v < self.target.n):
                raise MalformedInput(f"image of {i} is {v}, outside 0..{self.target.n - 1}")

    def __call__(self, i: int) -> int:
        return self.assignment[i]

    def fibre(self, q: int) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.assignment) if v == q)

    def is_surjective(self) -> bool:
        return set(self.assignment) == set(range(self.target.n))

    def is_injective(self) -> bool:
        return len(set(self.assignment)) == len(self.assignment)

    def is_identity(self) -> bool:
        return self.source.n == self.target.n and all(
            v == i for i, v in enumerate(self.assignment)
        )


def identity_map(rel: Relation) -> OrderMap:
    return OrderMap(rel, rel, tuple(range(rel.n)))


def compose(outer: OrderMap, inner: OrderMap) -> OrderMap:
    """The composite outer . inner (inner applied first)."""
    if inner.target != outer.source:
        raise MalformedInput("composite of maps with mismatched middle relation")
    return OrderMap(
        inner.source, outer.target, tuple(outer.assignment[v] for v in inner.assignment)
    )


def equiv_classes(t: Relation) -> Partition:
    """Classes of mutual relatedness x <= y <= x (for preorders, the isomorphism classes)."""
    seen = 0
    blocks = []
    for i in range(t.n):
        if (seen >> i) & 1:
            continue
        cls = t.rows[i] & t.column(i)
        seen |= cls
        blocks.append(tuple(_bits(cls)))
    return tuple(blocks)


def posetify(t: Relation) -> tuple[Relation, OrderMap]:
    """Quotient a preorder by mutual relatedness, with the class projection.

    Classes are labeled 0..k-1 by ascending minimum element.  The result is
    antisymmetric and the projection is a monotone surjection.
    """
    if not t.is_preorder():
        raise MalformedInput("posetify requires a transitive relation")
    classes = equiv_classes(t)
    labels = [0] * t.n
    for k, block in enumerate(classes):
        for e in block:
            labels[e] = k
    k = len(classes)
    rows = []
    for a in range(k):
        rep_a = classes[a][0]
        row = 0
        for b in range(k):
            if t.le(rep_a, classes[b][0]):
                row |= 1 << b
        rows.append(row)
    quotient = Relation(k, tuple(rows))
    return quotient, OrderMap(t, quotient, tuple(labels))


def disjoint_union(p: Relation, q: Relation) -> Relation:
    """Block-diagonal relation on n_p + n_q elements (q shifted up by n_p)."""
    rows = list(p.rows) + [row << p.n for row in q.rows]
    return Relation(p.n + q.n, tuple(rows))
