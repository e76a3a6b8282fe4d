"""Predicate species of posets and preorders, with closure verification.

A species here assigns at most one structure to each object, so it is a
decidable membership predicate together with a carrier and a variant.  The
connected variant must be closed under convex restriction and contraction
pushforward; the general variant under convex restriction and collapse
pushforward.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .enumeration import (
    catalog,
    enumerate_collapses,
    enumerate_contractions,
    enumerate_convex_subsets,
)
from .orders import Relation, connected_components, induced_subrelation, strict_covers


@dataclass(frozen=True)
class SpeciesSpec:
    name: str
    carrier: str  # "poset" | "preorder"
    variant: str  # "connected" | "general"
    member: Callable[[Relation], bool] = field(compare=False)

    def __call__(self, rel: Relation) -> bool:
        return self.member(rel)


def is_member(spec: SpeciesSpec, rel: Relation) -> bool:
    return spec.member(rel)


def _has_greatest(p: Relation) -> bool:
    full = (1 << p.n) - 1
    return any(p.column(r) == full for r in range(p.n))


def _intervals_linear(p: Relation) -> bool:
    for a in range(p.n):
        for b in range(p.n):
            if not p.le(a, b):
                continue
            interval = [z for z in range(p.n) if p.le(a, z) and p.le(z, b)]
            for x in interval:
                for y in interval:
                    if not (p.le(x, y) or p.le(y, x)):
                        return False
    return True


def _is_tree(p: Relation) -> bool:
    """A poset with a terminal object in which every interval is linear."""
    return p.n >= 1 and p.is_poset() and _has_greatest(p) and _intervals_linear(p)


def _is_linear_tree(p: Relation) -> bool:
    """A tree in which every element has at most one cover predecessor: a chain."""
    if not _is_tree(p):
        return False
    preds = [0] * p.n
    for c in strict_covers(p):
        preds[c.upper] += 1
        if preds[c.upper] > 1:
            return False
    return True


ALL_CONNECTED_POSETS = SpeciesSpec(
    "all", "poset", "connected", lambda r: r.is_poset() and r.n >= 1
)
ALL_POSETS = SpeciesSpec("all", "poset", "general", lambda r: r.is_poset() and r.n >= 1)
TREES = SpeciesSpec("trees", "poset", "connected", _is_tree)
LINEAR_TREES = SpeciesSpec("linear", "poset", "connected", _is_linear_tree)
ALL_PREORDERS = SpeciesSpec(
    "preorders", "preorder", "connected", lambda r: r.is_preorder() and r.n >= 1
)
DISCRETE_SETS = SpeciesSpec(
    "discrete", "poset", "general", lambda r: r.n >= 1 and r.is_discrete()
)


def builtin_species(name: str, flavor: str | None = None) -> SpeciesSpec:
    """Resolve a CLI species name; "all" picks the variant matching the flavor."""
    if name == "all":
        return ALL_POSETS if flavor in ("D", "collapses") else ALL_CONNECTED_POSETS
    table = {
        "trees": TREES,
        "linear": LINEAR_TREES,
        "preorders": ALL_PREORDERS,
        "discrete": DISCRETE_SETS,
    }
    if name not in table:
        raise KeyError(name)
    return table[name]


@dataclass
class ClosureReport:
    species: str
    n_max: int
    members_checked: int = 0
    counterexamples: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def verify_closure(spec: SpeciesSpec, n_max: int) -> ClosureReport:
    """Exhaustively check closure of a species up to size n_max.

    Connected variant: every connected convex subset of a member is a
    member, and every contraction pushes a member to a member with member
    fibres.  General variant: the same with arbitrary convex subsets and
    collapse maps.
    """
    report = ClosureReport(spec.name, n_max)
    if spec.carrier == "preorder":
        # The species of all preorders is closed by construction; there is
        # no convex-restriction calculus to verify on this carrier.
        return report
    connected = spec.variant == "connected"
    kind = "connected-poset" if connected else "poset"
    for n in range(1, n_max + 1):
        for p in catalog(kind, n):
            if not spec.member(p):
                continue
            report.members_checked += 1
            for subset in enumerate_convex_subsets(p):
                if not subset:
                    continue
                sub = induced_subrelation(p, subset)
                if connected:
                    if not sub.is_connected():
                        continue
                    if not spec.member(sub):
                        report.counterexamples.append(
                            f"{p.rows}: convex subset {subset} leaves the species"
                        )
                else:
                    if not spec.member(sub):
                        report.counterexamples.append(
                            f"{p.rows}: convex subset {subset} leaves the species"
                        )
            data = enumerate_contractions(p) if connected else enumerate_collapses(p)
            for d in data:
                if not spec.member(d.quotient):
                    report.counterexamples.append(
                        f"{p.rows}: quotient by kernel {d.kernel} leaves the species"
                    )
                for fib in d.fibres:
                    if connected:
                        for comp in connected_components(fib):
                            if not spec.member(induced_subrelation(fib, comp)):
                                report.counterexamples.append(
                                    f"{p.rows}: fibre component of kernel {d.kernel} "
                                    "leaves the species"
                                )
                    elif not spec.member(fib):
                        report.counterexamples.append(
                            f"{p.rows}: fibre of kernel {d.kernel} leaves the species"
                        )
    return report
