"""Exhaustive verification suites for the algebra and map-class laws.

Each checker walks a finite universe, tests an exact identity, and returns
a report listing every failing object by its canonical key.  Nothing here
is approximate: coefficients are exact rationals and equality is equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .algebra import (
    Monomial,
    TensorElem,
    UNIT,
    coaction,
    coproduct_admissible,
    coproduct_collapses,
    coproduct_contractions,
    coproduct_cuts,
    counit,
)
from .enumeration import (
    ContractionDatum,
    catalog,
    enumerate_admissible,
    enumerate_collapses,
    enumerate_contractions,
    enumerate_preorder_contractions,
)
from .maps import (
    _glued_skeleton,
    admissible_to_preorder_contraction,
    contraction_to_admissible,
    glue_collapses,
    glue_contractions,
    grid_coherence_failures,
    is_collapse,
    is_contraction,
    quotient_grid,
)
from .orders import (
    OrderMap,
    Relation,
    _bits,
    induced_subrelation,
    posetify,
    transitive_closure,
)
from .species import (
    ALL_CONNECTED_POSETS,
    ALL_POSETS,
    LINEAR_TREES,
    SpeciesSpec,
    TREES,
    verify_closure,
)


@dataclass
class CheckReport:
    suite: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = "" if self.ok else f" ({len(self.failures)} failures)"
        return f"{status} {self.suite}: {self.checked} items{extra}"


Delta = Callable[[Monomial], TensorElem]
Counit = Callable[[Monomial], Fraction]

Rank3 = dict[tuple[Monomial, Monomial, Monomial], Fraction]


def _left_expand(delta: Delta, t: TensorElem) -> Rank3:
    out: Rank3 = {}
    for (left, right), c in t.terms:
        for (a, b), d in delta(left).terms:
            k = (a, b, right)
            out[k] = out.get(k, Fraction(0)) + c * d
    return {k: v for k, v in out.items() if v}


def _right_expand(delta: Delta, t: TensorElem) -> Rank3:
    out: Rank3 = {}
    for (left, right), c in t.terms:
        for (a, b), d in delta(right).terms:
            k = (left, a, b)
            out[k] = out.get(k, Fraction(0)) + c * d
    return {k: v for k, v in out.items() if v}


def check_coassociativity(
    delta: Delta, eps: Counit, universe: Iterable[Monomial], suite: str = "coassoc"
) -> CheckReport:
    """(delta x id) delta = (id x delta) delta and both counit laws, exactly."""
    report = CheckReport(suite)
    for m in universe:
        report.checked += 1
        t = delta(m)
        if _left_expand(delta, t) != _right_expand(delta, t):
            report.failures.append(f"coassociativity fails on {_label(m)}")
        left_counit: dict[Monomial, Fraction] = {}
        right_counit: dict[Monomial, Fraction] = {}
        for (left, right), c in t.terms:
            left_counit[right] = left_counit.get(right, Fraction(0)) + c * eps(left)
            right_counit[left] = right_counit.get(left, Fraction(0)) + c * eps(right)
        ident = {m: Fraction(1)}
        if {k: v for k, v in left_counit.items() if v} != ident:
            report.failures.append(f"left counit law fails on {_label(m)}")
        if {k: v for k, v in right_counit.items() if v} != ident:
            report.failures.append(f"right counit law fails on {_label(m)}")
    return report


def check_bialgebra(
    delta: Delta,
    eps: Counit,
    universe: Sequence[Monomial],
    suite: str = "bialgebra",
) -> CheckReport:
    """delta(ab) = delta(a) delta(b) and eps(ab) = eps(a) eps(b) over all pairs."""
    report = CheckReport(suite)
    unit_t = TensorElem.pure(UNIT, UNIT)
    if delta(UNIT) != unit_t:
        report.failures.append("delta(1) != 1 x 1")
    for a in universe:
        for b in universe:
            report.checked += 1
            if delta(a * b) != delta(a) * delta(b):
                report.failures.append(f"delta not multiplicative on {_label(a)}, {_label(b)}")
            if eps(a * b) != eps(a) * eps(b):
                report.failures.append(f"counit not multiplicative on {_label(a)}, {_label(b)}")
    return report


def _label(m: Monomial) -> str:
    if m.is_unit():
        return "1"
    return ".".join(f.hex()[:10] for f in m.factors)


def connected_monomials(n_max: int) -> list[Monomial]:
    out = []
    for n in range(1, n_max + 1):
        for p in catalog("connected-poset", n):
            out.append(Monomial.of(p))
    return out


def species_monomials(spec: SpeciesSpec, n_max: int) -> list[Monomial]:
    kind = "connected-poset" if spec.variant == "connected" else "poset"
    out = []
    for n in range(1, n_max + 1):
        for p in catalog(kind, n):
            if spec.member(p):
                out.append(Monomial.of(p))
    return out


def run_coassoc(max_poset: int = 5, max_preorder: int = 4) -> list[CheckReport]:
    """Coassociativity and counit laws for all four coproducts.

    Contractions and cuts over connected posets up to max_poset, collapses
    over all posets up to max_preorder, admissible quotients over all
    preorders up to max_preorder.
    """
    reports = []
    connected = connected_monomials(max_poset)
    reports.append(
        check_coassociativity(
            lambda m: coproduct_contractions(m, ALL_CONNECTED_POSETS),
            lambda m: counit(m, "contractions"),
            connected,
            suite="coassoc contractions",
        )
    )
    reports.append(
        check_coassociativity(
            lambda m: coproduct_cuts(m, ALL_CONNECTED_POSETS),
            lambda m: counit(m, "cuts"),
            connected,
            suite="coassoc cuts",
        )
    )
    all_posets = [
        Monomial.of(p)
        for n in range(1, max_preorder + 1)
        for p in catalog("poset", n)
    ]
    reports.append(
        check_coassociativity(
            lambda m: coproduct_collapses(m, ALL_POSETS),
            lambda m: counit(m, "collapses"),
            all_posets,
            suite="coassoc collapses",
        )
    )
    preorders = [
        Monomial.of(t)
        for n in range(1, max_preorder + 1)
        for t in catalog("preorder", n)
    ]
    reports.append(
        check_coassociativity(
            coproduct_admissible,
            lambda m: counit(m, "admissible"),
            preorders,
            suite="coassoc admissible",
        )
    )
    return reports


def run_bialgebra(max_size: int = 4) -> list[CheckReport]:
    universe = connected_monomials(max_size)
    return [
        check_bialgebra(
            lambda m: coproduct_contractions(m, ALL_CONNECTED_POSETS),
            lambda m: counit(m, "contractions"),
            universe,
            suite="bialgebra contractions",
        ),
        check_bialgebra(
            lambda m: coproduct_collapses(m, ALL_POSETS),
            lambda m: counit(m, "collapses"),
            universe,
            suite="bialgebra collapses",
        ),
        check_bialgebra(
            lambda m: coproduct_cuts(m, ALL_CONNECTED_POSETS),
            lambda m: counit(m, "cuts"),
            universe,
            suite="bialgebra cuts",
        ),
    ]


# -- comodule bialgebra --------------------------------------------------------


def check_comodule_bialgebra(spec: SpeciesSpec, n_max: int) -> CheckReport:
    """Compatibility of the cut coproduct and counit with the coaction.

    For every member P up to n_max, (id x delta_cut) gamma(P) must equal
    the rank-3 tensor obtained from delta_cut(P) by coacting on both legs,
    swapping the middle factors and multiplying the two coaction legs; and
    (id x eps_cut) gamma(P) must equal the unit times eps_cut(P).
    """
    report = CheckReport(f"comodule {spec.name}")
    gamma = lambda m: coaction(m, spec)
    delta_r = lambda m: coproduct_cuts(m, spec)
    for m in [UNIT] + species_monomials(spec, n_max):
        report.checked += 1
        lhs: Rank3 = {}
        for (b_leg, a_leg), c in gamma(m).terms:
            for (a1, a2), d in delta_r(a_leg).terms:
                k = (b_leg, a1, a2)
                lhs[k] = lhs.get(k, Fraction(0)) + c * d
        rhs: Rank3 = {}
        for (a1, a2), c in delta_r(m).terms:
            for (b1, x1), d1 in gamma(a1).terms:
                for (b2, x2), d2 in gamma(a2).terms:
                    k = (b1 * b2, x1, x2)
                    rhs[k] = rhs.get(k, Fraction(0)) + c * d1 * d2
        if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
            report.failures.append(f"comultiplication diagram fails on {_label(m)}")
        eps_side: dict[Monomial, Fraction] = {}
        for (b_leg, a_leg), c in gamma(m).terms:
            eps_side[b_leg] = eps_side.get(b_leg, Fraction(0)) + c * counit(a_leg, "cuts")
        expected = {UNIT: counit(m, "cuts")} if counit(m, "cuts") else {}
        if {k: v for k, v in eps_side.items() if v} != expected:
            report.failures.append(f"counit diagram fails on {_label(m)}")
    return report


def run_comodule(trees_max: int = 5, linear_max: int = 6) -> list[CheckReport]:
    return [
        check_comodule_bialgebra(TREES, trees_max),
        check_comodule_bialgebra(LINEAR_TREES, linear_max),
    ]


# -- culf comparison -----------------------------------------------------------


def components_of_posetification(t: Relation) -> Monomial:
    """The first comparison functor: a preorder to its posetification's components."""
    p, _ = posetify(t)
    return Monomial.of_components(p)


def check_culf(n_max: int = 4) -> CheckReport:
    """The cardinality shadow of culfness of the comparison map.

    For every preorder T up to n_max, the contraction coproduct of the
    component monomial of the posetification equals the admissible
    coproduct of T with both legs pushed through the same comparison.
    """
    report = CheckReport("culf comparison")

    def push(m: Monomial) -> Monomial:
        out = UNIT
        for f in m.factors:
            out = out * components_of_posetification(f.relation())
        return out

    for n in range(1, n_max + 1):
        for t in catalog("preorder", n):
            report.checked += 1
            lhs = coproduct_contractions(push(Monomial.of(t)), ALL_CONNECTED_POSETS)
            rhs = coproduct_admissible(Monomial.of(t)).map_legs(push)
            if lhs != rhs:
                report.failures.append(f"culf shadow fails on preorder {t.rows}")
    return report


# -- admissible <-> contraction bijection ---------------------------------------


def check_bijection(n_max: int = 4) -> CheckReport:
    """Counts agree and the two constructions are mutually inverse.

    For every preorder T up to n_max: the admissible sub-relations of T and
    the identity-on-objects contractions out of T are in bijection via
    sub -> T/sub and f -> pullback of the invertible part of the target.
    """
    report = CheckReport("admissible/contraction bijection")
    for n in range(1, n_max + 1):
        for t in catalog("preorder", n):
            report.checked += 1
            subs = enumerate_admissible(t)
            contractions = enumerate_preorder_contractions(t)
            if len(subs) != len(contractions):
                report.failures.append(
                    f"count mismatch on {t.rows}: {len(subs)} subs vs "
                    f"{len(contractions)} contractions"
                )
                continue
            targets = {f.target.rows for f in contractions}
            for sub in subs:
                f = admissible_to_preorder_contraction(sub, t)
                if f.target.rows not in targets:
                    report.failures.append(
                        f"quotient of sub {sub.rows} is not an enumerated contraction"
                    )
                if contraction_to_admissible(f) != sub:
                    report.failures.append(f"round trip fails on sub {sub.rows} of {t.rows}")
            for f in contractions:
                sub = contraction_to_admissible(f)
                back = admissible_to_preorder_contraction(sub, t)
                if back.target != f.target:
                    report.failures.append(
                        f"round trip fails on contraction target {f.target.rows}"
                    )
    return report


# -- gluing uniqueness ----------------------------------------------------------


def search_glued_orders(
    f: OrderMap,
    fibre_maps: dict[int, OrderMap],
    kind: str,
    exhaustive: bool = False,
) -> list[Relation]:
    """All poset orders on the glued element set making the diagram valid.

    The element set, h and g are forced by the commutation constraints, so
    the search runs over orders only.  The pruned search enumerates orders
    between the relations forced below by monotonicity of h (and partial
    reflection of g, in the collapse case) and bounded above by
    monotonicity of g; every valid order lies in that window.  With
    exhaustive=True all reflexive relations on the set are tried instead.
    """
    offsets, total, h_assign, g_assign = _glued_skeleton(f, fibre_maps)
    tgt = f.target

    within = [1 << w for w in range(total)]
    for q in range(tgt.n):
        w_rel = fibre_maps[q].target
        for i in range(w_rel.n):
            within[offsets[q] + i] |= w_rel.rows[i] << offsets[q]

    def valid(rel: Relation) -> bool:
        if not rel.is_poset():
            return False
        for q in range(tgt.n):
            w_rel = fibre_maps[q].target
            block = list(range(offsets[q], offsets[q] + w_rel.n))
            if induced_subrelation(rel, block) != w_rel:
                return False
        h = OrderMap(f.source, rel, h_assign)
        g = OrderMap(rel, tgt, g_assign)
        check = is_contraction if kind == "contraction" else is_collapse
        return check(h) and check(g)

    found: dict[tuple[int, ...], Relation] = {}
    if exhaustive:
        slots = [(i, j) for i in range(total) for j in range(total) if i != j]
        for picked in itertools.product((False, True), repeat=len(slots)):
            rows = [1 << i for i in range(total)]
            for keep, (i, j) in zip(picked, slots):
                if keep:
                    rows[i] |= 1 << j
            rel = Relation(total, tuple(rows))
            if valid(rel):
                found[rel.rows] = rel
        return [found[k] for k in sorted(found)]

    base = list(within)
    if kind == "contraction":
        for p in range(f.source.n):
            for p2 in _bits(f.source.rows[p]):
                if h_assign[p] != h_assign[p2]:
                    base[h_assign[p]] |= 1 << h_assign[p2]
    else:
        for w in range(total):
            for w2 in range(total):
                if g_assign[w] != g_assign[w2] and tgt.strict(g_assign[w], g_assign[w2]):
                    base[w] |= 1 << w2
    allowed = list(within)
    for w in range(total):
        for w2 in range(total):
            if g_assign[w] != g_assign[w2] and tgt.strict(g_assign[w], g_assign[w2]):
                allowed[w] |= 1 << w2
    base_rel = transitive_closure(Relation(total, tuple(base)))
    free = [
        (w, w2)
        for w in range(total)
        for w2 in _bits(allowed[w] & ~base_rel.rows[w])
    ]
    for picked in itertools.product((False, True), repeat=len(free)):
        rows = list(base_rel.rows)
        for keep, (i, j) in zip(picked, free):
            if keep:
                rows[i] |= 1 << j
        rel = transitive_closure(Relation(total, tuple(rows)))
        if any(rel.rows[w] & ~allowed[w] for w in range(total)):
            continue
        if rel.rows in found:
            continue
        if valid(rel):
            found[rel.rows] = rel
    return [found[k] for k in sorted(found)]


def _fibre_map_choices(d: ContractionDatum, kind: str) -> list[dict[int, OrderMap]]:
    enum = enumerate_contractions if kind == "contraction" else enumerate_collapses
    per_fibre = [
        [dd.map for dd in enum(fib)] for fib in d.fibres
    ]
    out = []
    for combo in itertools.product(*per_fibre):
        out.append({q: fm for q, fm in enumerate(combo)})
    return out


def check_glue_uniqueness(
    n_max: int = 5, exhaustive_limit: int = 4, kinds: tuple[str, ...] = ("contraction", "collapse")
) -> CheckReport:
    """Gluing produces the one and only valid order, for every fibre-map choice.

    For each base map out of a poset of size <= n_max and each choice of
    fibre maps, the search over candidate orders on the glued set must find
    exactly the constructed poset.  Up to exhaustive_limit glued elements
    the naive search over all reflexive relations cross-checks the pruned
    one.
    """
    report = CheckReport("gluing uniqueness")
    for kind in kinds:
        cat = "connected-poset" if kind == "contraction" else "poset"
        glue = glue_contractions if kind == "contraction" else glue_collapses
        for n in range(1, n_max + 1):
            for p in catalog(cat, n):
                data = (
                    enumerate_contractions(p)
                    if kind == "contraction"
                    else enumerate_collapses(p)
                )
                for d in data:
                    for fibre_maps in _fibre_map_choices(d, kind):
                        report.checked += 1
                        w_rel, _, _ = glue(d.map, fibre_maps)
                        results = search_glued_orders(d.map, fibre_maps, kind)
                        if len(results) != 1 or results[0] != w_rel:
                            report.failures.append(
                                f"{kind} gluing on {p.rows}, kernel {d.kernel}: "
                                f"{len(results)} valid orders"
                            )
                        if w_rel.n <= exhaustive_limit:
                            naive = search_glued_orders(
                                d.map, fibre_maps, kind, exhaustive=True
                            )
                            if naive != results:
                                report.failures.append(
                                    f"{kind} gluing on {p.rows}, kernel {d.kernel}: "
                                    "pruned and naive searches disagree"
                                )
    return report


# -- species closure + grid coherence -------------------------------------------


def check_grid_coherence(n_max: int = 3) -> CheckReport:
    """Iterated-quotient coherence over all admissible 2-chains of preorders."""
    report = CheckReport("quotient-grid coherence")
    for n in range(1, n_max + 1):
        for t2 in catalog("preorder", n):
            for t1 in enumerate_admissible(t2):
                for t0 in enumerate_admissible(t1):
                    report.checked += 1
                    grid = quotient_grid([t0, t1, t2])
                    for failure in grid_coherence_failures(grid):
                        report.failures.append(f"{t2.rows}: {failure}")
    return report


def run_closure(species_max: int = 5, grid_max: int = 3) -> list[CheckReport]:
    reports = []
    for spec in (TREES, LINEAR_TREES):
        cr = verify_closure(spec, species_max)
        rep = CheckReport(f"species closure {spec.name}", cr.members_checked, cr.counterexamples)
        reports.append(rep)
    reports.append(check_grid_coherence(grid_max))
    return reports
