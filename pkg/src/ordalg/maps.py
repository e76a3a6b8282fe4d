"""Map classes between finite relations and the constructions built on them.

Implements the decidable predicates for monotone, convex, contraction,
collapse and preorder-contraction maps, admissibility of identity-on-objects
inclusions, quotients of preorders and quotient grids, gluing of fibrewise
maps, and the two mutually inverse constructions relating admissible
inclusions and contractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .canonical import canonical_form
from .errors import MalformedInput, NotAContraction, NotAdmissible, OrdalgError
from .orders import (
    CoverPair,
    OrderMap,
    Relation,
    _bits,
    _mask,
    compose,
    connected_components,
    equiv_classes,
    identity_map,
    induced_subrelation,
    is_connected_subset,
    is_convex_subset,
    posetify,
    strict_covers,
    transitive_closure,
)


@dataclass(frozen=True)
class MapFlags:
    monotone: bool
    convex: bool
    contraction: bool
    collapse: bool
    preorder_contraction: bool


def is_monotone(f: OrderMap) -> bool:
    src, tgt, a = f.source, f.target, f.assignment
    for i in range(src.n):
        for j in _bits(src.rows[i]):
            if not tgt.le(a[i], a[j]):
                return False
    return True


def is_convex_map(f: OrderMap) -> bool:
    """Monotone, and every f(x) <= w <= f(y) has a unique interpolant over w.

    The unique-interpolant condition forces injectivity and order
    reflection, so convex maps are exactly the inclusions of convex
    subrelations up to isomorphism.
    """
    if not is_monotone(f):
        return False
    src, tgt, a = f.source, f.target, f.assignment
    for x in range(src.n):
        for y in range(src.n):
            for w in range(tgt.n):
                if not (tgt.le(a[x], w) and tgt.le(w, a[y])):
                    continue
                hits = sum(
                    1
                    for p in range(src.n)
                    if src.le(x, p) and src.le(p, y) and a[p] == w
                )
                if hits != 1:
                    return False
    return True


def _lifts_covers(f: OrderMap, target_covers: Sequence[CoverPair], up_to_equiv: bool) -> bool:
    src, tgt, a = f.source, f.target, f.assignment
    src_covers = strict_covers(src)
    for q, q2 in target_covers:
        found = False
        for p, p2 in src_covers:
            if up_to_equiv:
                if tgt.equiv(a[p], q) and tgt.equiv(a[p2], q2):
                    found = True
                    break
            else:
                if a[p] == q and a[p2] == q2:
                    found = True
                    break
        if not found:
            return False
    return True


def is_contraction(f: OrderMap) -> bool:
    """Monotone poset surjection with connected convex fibres that lifts covers.

    Cover lifting is endpoint-to-endpoint: each cover q < q' of the target
    must be the image of some cover p < p' of the source.  A one-element
    target has no covers, so the condition holds vacuously.
    """
    src, tgt = f.source, f.target
    if not (src.is_poset() and tgt.is_poset()):
        return False
    if not (is_monotone(f) and f.is_surjective()):
        return False
    for q in range(tgt.n):
        fib = f.fibre(q)
        if not (is_connected_subset(src, fib) and is_convex_subset(src, fib)):
            return False
    return _lifts_covers(f, strict_covers(tgt), up_to_equiv=False)


def is_collapse(f: OrderMap) -> bool:
    """Monotone poset surjection that partially reflects: f(x) < f(y) => x < y."""
    src, tgt, a = f.source, f.target, f.assignment
    if not (src.is_poset() and tgt.is_poset()):
        return False
    if not (is_monotone(f) and f.is_surjective()):
        return False
    for x in range(src.n):
        for y in range(src.n):
            if tgt.strict(a[x], a[y]) and not src.strict(x, y):
                return False
    return True


def is_preorder_contraction(f: OrderMap) -> bool:
    """The identity-on-objects contraction notion for preorders.

    Requires: identity on objects; the fibre over each target equivalence
    class connected in the source; covers of the target lifted to covers of
    the source up to target equivalence (covers of a preorder are covers of
    the strict order, equivalently of the posetification).
    """
    src, tgt = f.source, f.target
    if not (src.is_preorder() and tgt.is_preorder()):
        return False
    if not f.is_identity():
        return False
    if not is_monotone(f):
        return False
    for cls in equiv_classes(tgt):
        if not is_connected_subset(src, cls):
            return False
    return _lifts_covers(f, strict_covers(tgt), up_to_equiv=True)


def classify(f: OrderMap) -> MapFlags:
    """All map-class flags of f, each computed from first principles."""
    return MapFlags(
        monotone=is_monotone(f),
        convex=is_convex_map(f),
        contraction=is_contraction(f),
        collapse=is_collapse(f),
        preorder_contraction=is_preorder_contraction(f),
    )


# -- admissible inclusions and quotients ------------------------------------


def quotient(amb: Relation, sub: Relation) -> Relation:
    """The preorder amb/sub: invert the arrows of sub inside amb, close transitively."""
    if amb.n != sub.n:
        raise MalformedInput("quotient requires relations on the same elements")
    if not amb.contains(sub):
        raise MalformedInput("quotient requires sub to be contained in amb")
    rows = list(amb.rows)
    for i in range(sub.n):
        for j in _bits(sub.rows[i]):
            rows[j] |= 1 << i
    return transitive_closure(Relation(amb.n, tuple(rows)))


def admissibility_failure(sub: Relation, amb: Relation) -> str | None:
    """None if sub -> amb is admissible, else a one-line diagnostic.

    Conditions: identity-on-objects containment; fullness of amb on each
    connected component of sub; equal equivalence classes of amb/sub and
    sub/sub.  Fullness on components suffices for fullness on all connected
    sub-preorders.
    """
    if sub.n != amb.n:
        raise MalformedInput("admissibility requires the same element count")
    if not (sub.is_preorder() and amb.is_preorder()):
        raise MalformedInput("admissibility is defined for preorders")
    if not amb.contains(sub):
        return "sub-relation is not contained in the ambient relation"
    for block in connected_components(sub):
        if induced_subrelation(amb, block) != induced_subrelation(sub, block):
            return f"ambient relation is not full on component {block}"
    if equiv_classes(quotient(amb, sub)) != equiv_classes(quotient(sub, sub)):
        return "equivalence classes of amb/sub and sub/sub differ"
    return None


def is_admissible(sub: Relation, amb: Relation) -> bool:
    return admissibility_failure(sub, amb) is None


@dataclass(frozen=True)
class QuotientGrid:
    """Iterated quotients of an admissible chain T_0 -> ... -> T_m.

    cells[(0, j)] is T_j and cells[(i, j)] = T_j / T_{i-1} for
    1 <= i <= j + 1, so each column ends in the all-invertible quotient
    T_j / T_j.  Rows are admissible inclusions and columns are preorder
    contractions.
    """

    chain: tuple[Relation, ...]
    cells: Mapping[tuple[int, int], Relation]


def quotient_grid(chain: Sequence[Relation]) -> QuotientGrid:
    chain = tuple(chain)
    if not chain:
        raise MalformedInput("quotient grid needs at least one preorder")
    for k in range(len(chain) - 1):
        reason = admissibility_failure(chain[k], chain[k + 1])
        if reason is not None:
            raise NotAdmissible(f"chain link {k} -> {k + 1}: {reason}")
    cells: dict[tuple[int, int], Relation] = {}
    for j, t in enumerate(chain):
        cells[(0, j)] = t
        for i in range(1, j + 2):
            cells[(i, j)] = quotient(t, chain[i - 1])
    return QuotientGrid(chain, cells)


def grid_coherence_failures(grid: QuotientGrid) -> list[str]:
    """Canonical-form mismatches of (T_j/T_i)/(T_k/T_i) against T_j/T_k."""
    failures = []
    m = len(grid.chain)
    for i in range(m):
        for k in range(i, m):
            for j in range(k, m):
                lhs = quotient(
                    quotient(grid.chain[j], grid.chain[i]),
                    quotient(grid.chain[k], grid.chain[i]),
                )
                rhs = quotient(grid.chain[j], grid.chain[k])
                if canonical_form(lhs).key != canonical_form(rhs).key:
                    failures.append(f"(T{j}/T{i})/(T{k}/T{i}) != T{j}/T{k}")
    return failures


# -- gluing ------------------------------------------------------------------


def _glued_skeleton(f: OrderMap, fibre_maps: Mapping[int, OrderMap]):
    """Shared layout for gluing: block offsets and the forced h, g assignments.

    fibre_maps[q] must be given on the induced subrelation of the fibre over
    q, relabeled along the increasing bijection.
    """
    src, tgt = f.source, f.target
    offsets = []
    total = 0
    for q in range(tgt.n):
        if q not in fibre_maps:
            raise MalformedInput(f"missing fibre map over target element {q}")
        fib = f.fibre(q)
        fm = fibre_maps[q]
        if fm.source != induced_subrelation(src, fib):
            raise MalformedInput(f"fibre map over {q} is not given on the induced fibre")
        offsets.append(total)
        total += fm.target.n
    h_assign = []
    for p in range(src.n):
        q = f(p)
        local = f.fibre(q).index(p)
        h_assign.append(offsets[q] + fibre_maps[q](local))
    g_assign = []
    for q in range(tgt.n):
        g_assign.extend([q] * fibre_maps[q].target.n)
    return offsets, total, tuple(h_assign), tuple(g_assign)


def glue_contractions(
    f: OrderMap, fibre_maps: Mapping[int, OrderMap]
) -> tuple[Relation, OrderMap, OrderMap]:
    """The unique poset W with contractions h: P ->> W and g: W ->> Q gluing the fibre maps.

    The order on W is the transitive closure of the in-block orders together
    with the images of the strict source order.  g . h = f and h over each
    q restricts to the given fibre map.
    """
    if not (f.source.is_connected() and f.target.is_connected()):
        raise NotAContraction("gluing contractions requires connected posets")
    if not is_contraction(f):
        raise NotAContraction("base map is not a contraction")
    for q, fm in fibre_maps.items():
        if not is_contraction(fm):
            raise NotAContraction(f"fibre map over {q} is not a contraction")
    offsets, total, h_assign, g_assign = _glued_skeleton(f, fibre_maps)
    rows = [1 << w for w in range(total)]
    for q in range(f.target.n):
        w_rel = fibre_maps[q].target
        for i in range(w_rel.n):
            rows[offsets[q] + i] |= w_rel.rows[i] << offsets[q]
    for p in range(f.source.n):
        for p2 in _bits(f.source.rows[p]):
            if h_assign[p] != h_assign[p2]:
                rows[h_assign[p]] |= 1 << h_assign[p2]
    w_order = transitive_closure(Relation(total, tuple(rows)))
    if not w_order.is_poset():
        raise OrdalgError("glued order is not antisymmetric")
    for q in range(f.target.n):
        w_rel = fibre_maps[q].target
        block = range(offsets[q], offsets[q] + w_rel.n)
        if induced_subrelation(w_order, block) != w_rel:
            raise OrdalgError(f"glued order does not restrict to the fibre target over {q}")
    h = OrderMap(f.source, w_order, h_assign)
    g = OrderMap(w_order, f.target, g_assign)
    if not (is_contraction(h) and is_contraction(g)):
        raise OrdalgError("glued maps failed the contraction check")
    return w_order, h, g


def glue_collapses(
    f: OrderMap, fibre_maps: Mapping[int, OrderMap]
) -> tuple[Relation, OrderMap, OrderMap]:
    """As glue_contractions but for collapse maps.

    The order rule differs: w < w' iff they share a block and are ordered
    there, or their blocks are strictly ordered in the target.  No closure
    over cross-block images is taken.
    """
    if not is_collapse(f):
        raise NotAContraction("base map is not a collapse")
    for q, fm in fibre_maps.items():
        if not is_collapse(fm):
            raise NotAContraction(f"fibre map over {q} is not a collapse")
    offsets, total, h_assign, g_assign = _glued_skeleton(f, fibre_maps)
    rows = [1 << w for w in range(total)]
    for q in range(f.target.n):
        w_rel = fibre_maps[q].target
        for i in range(w_rel.n):
            rows[offsets[q] + i] |= w_rel.rows[i] << offsets[q]
    for w in range(total):
        for w2 in range(total):
            if g_assign[w] != g_assign[w2] and f.target.strict(g_assign[w], g_assign[w2]):
                rows[w] |= 1 << w2
    w_order = Relation(total, tuple(rows))
    if not w_order.is_poset():
        raise OrdalgError("glued order is not a poset")
    for q in range(f.target.n):
        w_rel = fibre_maps[q].target
        block = range(offsets[q], offsets[q] + w_rel.n)
        if induced_subrelation(w_order, block) != w_rel:
            raise OrdalgError(f"glued order does not restrict to the fibre target over {q}")
    h = OrderMap(f.source, w_order, h_assign)
    g = OrderMap(w_order, f.target, g_assign)
    if not (is_collapse(h) and is_collapse(g)):
        raise OrdalgError("glued maps failed the collapse check")
    return w_order, h, g


# -- admissible <-> contraction ----------------------------------------------


def admissible_to_preorder_contraction(sub: Relation, amb: Relation) -> OrderMap:
    """The identity-on-objects contraction amb ->> amb/sub of an admissible sub."""
    reason = admissibility_failure(sub, amb)
    if reason is not None:
        raise NotAdmissible(reason)
    f = OrderMap(amb, quotient(amb, sub), tuple(range(amb.n)))
    if not is_preorder_contraction(f):
        raise OrdalgError("quotient map failed the preorder-contraction check")
    return f


def admissible_to_contraction(sub: Relation, amb: Relation) -> OrderMap:
    """The poset contraction posetify(amb) ->> posetify(amb/sub)."""
    reason = admissibility_failure(sub, amb)
    if reason is not None:
        raise NotAdmissible(reason)
    p_amb, proj_amb = posetify(amb)
    p_quot, proj_quot = posetify(quotient(amb, sub))
    assign = [0] * p_amb.n
    for x in range(amb.n):
        assign[proj_amb(x)] = proj_quot(x)
    f = OrderMap(p_amb, p_quot, tuple(assign))
    if not is_contraction(f):
        raise OrdalgError("posetified quotient map failed the contraction check")
    return f


def contraction_to_admissible(f: OrderMap) -> Relation:
    """The admissible sub-relation of the source corresponding to a contraction.

    Realizes the pullback of the invertible part of the target: x <= y is
    kept iff it holds in the source and f(x), f(y) are equivalent in the
    target.  Accepts identity-on-objects preorder contractions and poset
    contractions alike.
    """
    if not (is_preorder_contraction(f) or is_contraction(f)):
        raise NotAContraction("not a contraction")
    src, tgt, a = f.source, f.target, f.assignment
    rows = []
    for x in range(src.n):
        row = 0
        for y in _bits(src.rows[x]):
            if tgt.equiv(a[x], a[y]):
                row |= 1 << y
        rows.append(row)
    sub = Relation(src.n, tuple(rows))
    reason = admissibility_failure(sub, src)
    if reason is not None:
        raise OrdalgError(f"pulled-back sub-relation is not admissible: {reason}")
    return sub


# -- pullbacks and partially defined maps -------------------------------------


def pullback(f: OrderMap, g: OrderMap) -> tuple[Relation, OrderMap, OrderMap]:
    """Strict pullback of the cospan f: A -> C <- B :g, with its projections.

    Elements are the pairs (a, b) with f(a) = g(b), ordered componentwise
    and listed lexicographically.
    """
    if f.target != g.target:
        raise MalformedInput("pullback requires a common target")
    elems = [
        (a, b)
        for a in range(f.source.n)
        for b in range(g.source.n)
        if f(a) == g(b)
    ]
    k = len(elems)
    rows = []
    for a, b in elems:
        row = 0
        for idx, (a2, b2) in enumerate(elems):
            if f.source.le(a, a2) and g.source.le(b, b2):
                row |= 1 << idx
        rows.append(row)
    apex = Relation(k, tuple(rows))
    pi_f = OrderMap(apex, f.source, tuple(a for a, _ in elems))
    pi_g = OrderMap(apex, g.source, tuple(b for _, b in elems))
    return apex, pi_f, pi_g


@dataclass(frozen=True)
class PartialMap:
    """A partially defined contraction or collapse P -> Q.

    Stored as the span of a convex inclusion into P and a cover map onto Q
    of the declared kind ("contraction" or "collapse").
    """

    inclusion: OrderMap
    cover: OrderMap
    kind: str

    def __post_init__(self):
        if self.inclusion.source != self.cover.source:
            raise MalformedInput("span legs must share their source")
        if not (is_convex_map(self.inclusion) and self.inclusion.is_injective()):
            raise MalformedInput("domain leg must be a convex inclusion")
        check = is_contraction if self.kind == "contraction" else is_collapse
        if self.kind not in ("contraction", "collapse"):
            raise MalformedInput(f"unknown partial-map kind {self.kind!r}")
        if not check(self.cover):
            raise MalformedInput(f"cover leg is not a {self.kind}")


def compose_partial(first: PartialMap, second: PartialMap) -> PartialMap:
    """Single-step span composition by strict pullback (first, then second)."""
    if first.kind != second.kind:
        raise MalformedInput("cannot compose partial maps of different kinds")
    if first.cover.target != second.inclusion.target:
        raise MalformedInput("middle relations do not match")
    _, pi_first, pi_second = pullback(first.cover, second.inclusion)
    return PartialMap(
        inclusion=compose(first.inclusion, pi_first),
        cover=compose(second.cover, pi_second),
        kind=first.kind,
    )


# -- the simplicial comparison map --------------------------------------------


@dataclass(frozen=True)
class ContractionChain:
    """A chain of contractions between connected posets."""

    posets: tuple[Relation, ...]
    maps: tuple[OrderMap, ...]


def r_map(chain: Sequence[Relation]) -> list[ContractionChain]:
    """Connected contraction chains carried by an admissible chain of preorders.

    Builds the final column of the quotient grid, posetifies it, and
    restricts over each connected component of the final discrete quotient.
    For a single preorder this returns its posetification's connected
    components.
    """
    chain = tuple(chain)
    if not chain:
        raise MalformedInput("r_map needs at least one preorder")
    for k in range(len(chain) - 1):
        reason = admissibility_failure(chain[k], chain[k + 1])
        if reason is not None:
            raise NotAdmissible(f"chain link {k} -> {k + 1}: {reason}")
    top = chain[-1]
    column = [top] + [quotient(top, t) for t in chain]
    posetified = [posetify(t) for t in column]
    steps = []
    for k in range(len(column) - 1):
        p_from, proj_from = posetified[k]
        _, proj_to = posetified[k + 1]
        assign = [0] * p_from.n
        for x in range(top.n):
            assign[proj_from(x)] = proj_to(x)
        steps.append(tuple(assign))
    final_proj = posetified[-1][1]
    n_components = posetified[-1][0].n
    out = []
    for comp in range(n_components):
        posets = []
        maps = []
        prev_elems: list[int] | None = None
        prev_rel: Relation | None = None
        for k in range(len(chain)):
            p_k, proj_k = posetified[k]
            elems = sorted(
                {proj_k(x) for x in range(top.n) if final_proj(x) == comp}
            )
            rel_k = induced_subrelation(p_k, elems)
            posets.append(rel_k)
            if prev_elems is not None:
                assign = tuple(
                    elems.index(steps[k - 1][e]) for e in prev_elems
                )
                maps.append(OrderMap(prev_rel, rel_k, assign))
            prev_elems, prev_rel = elems, rel_k
        out.append(ContractionChain(tuple(posets), tuple(maps)))
    return out
