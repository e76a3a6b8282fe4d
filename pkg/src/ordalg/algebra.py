"""The free commutative algebra on iso classes and its four coproducts.

Basis monomials are multisets of isomorphism classes; coefficients are
exact rationals.  Coefficients of every coproduct count concrete data on a
fixed labeled source (kernel partitions, admissible sub-relations,
down-sets): comparison isomorphisms between such data are unique, so no
automorphism weights appear.  Automorphism counts are available on each
IsoClass for callers wanting other conventions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .canonical import IsoClass, canonical_form
from .enumeration import (
    enumerate_admissible,
    enumerate_collapses,
    enumerate_contractions,
    enumerate_downsets,
)
from .errors import CarrierMismatch, MalformedInput, SpeciesMembershipError
from .maps import quotient
from .orders import Relation, connected_components, induced_subrelation
from .species import SpeciesSpec, is_member

#: Flavor codes as exposed on the CLI, mapped to the map class they sum over.
FLAVORS = {
    "K": "contractions",
    "D": "collapses",
    "A": "admissible",
    "R": "cuts",
}


def _flavor(name: str) -> str:
    return FLAVORS.get(name, name)


@dataclass(frozen=True)
class Monomial:
    """A finite multiset of iso classes, kept sorted by canonical key."""

    factors: tuple[IsoClass, ...]

    @staticmethod
    def unit() -> "Monomial":
        return Monomial(())

    @staticmethod
    def of(*rels: Relation) -> "Monomial":
        return Monomial(tuple(sorted((canonical_form(r) for r in rels))))

    @staticmethod
    def of_components(rel: Relation) -> "Monomial":
        """Split a relation into its connected components, one factor each."""
        comps = [induced_subrelation(rel, b) for b in connected_components(rel)]
        return Monomial.of(*comps)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(sorted(self.factors + other.factors)))

    def __lt__(self, other: "Monomial") -> bool:
        return [f.key for f in self.factors] < [f.key for f in other.factors]

    @property
    def size(self) -> int:
        return sum(f.size for f in self.factors)

    def is_unit(self) -> bool:
        return not self.factors


UNIT = Monomial(())


def _clean(terms: dict) -> dict:
    return {k: v for k, v in terms.items() if v != 0}


@dataclass(frozen=True)
class AlgElem:
    """A finite rational linear combination of monomials."""

    terms: tuple[tuple[Monomial, Fraction], ...]

    @staticmethod
    def of(terms: dict[Monomial, Fraction]) -> "AlgElem":
        cleaned = _clean(terms)
        return AlgElem(tuple(sorted(cleaned.items(), key=lambda kv: kv[0])))

    @staticmethod
    def zero() -> "AlgElem":
        return AlgElem(())

    @staticmethod
    def monomial(m: Monomial, coeff: Fraction | int = 1) -> "AlgElem":
        return AlgElem.of({m: Fraction(coeff)})

    def as_dict(self) -> dict[Monomial, Fraction]:
        return dict(self.terms)

    def __add__(self, other: "AlgElem") -> "AlgElem":
        out = self.as_dict()
        for m, c in other.terms:
            out[m] = out.get(m, Fraction(0)) + c
        return AlgElem.of(out)

    def scale(self, c: Fraction | int) -> "AlgElem":
        c = Fraction(c)
        return AlgElem.of({m: v * c for m, v in self.terms})

    def __mul__(self, other: "AlgElem") -> "AlgElem":
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = m1 * m2
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return AlgElem.of(out)


@dataclass(frozen=True)
class TensorElem:
    """A finite rational linear combination of pairs of monomials."""

    terms: tuple[tuple[tuple[Monomial, Monomial], Fraction], ...]

    @staticmethod
    def of(terms: dict[tuple[Monomial, Monomial], Fraction]) -> "TensorElem":
        cleaned = _clean(terms)
        return TensorElem(tuple(sorted(cleaned.items(), key=lambda kv: kv[0])))

    @staticmethod
    def zero() -> "TensorElem":
        return TensorElem(())

    @staticmethod
    def pure(left: Monomial, right: Monomial, coeff: Fraction | int = 1) -> "TensorElem":
        return TensorElem.of({(left, right): Fraction(coeff)})

    def as_dict(self) -> dict[tuple[Monomial, Monomial], Fraction]:
        return dict(self.terms)

    def __add__(self, other: "TensorElem") -> "TensorElem":
        out = self.as_dict()
        for k, c in other.terms:
            out[k] = out.get(k, Fraction(0)) + c
        return TensorElem.of(out)

    def __mul__(self, other: "TensorElem") -> "TensorElem":
        """Componentwise product (a x b)(c x d) = ac x bd, bilinearly."""
        out: dict[tuple[Monomial, Monomial], Fraction] = {}
        for (l1, r1), c1 in self.terms:
            for (l2, r2), c2 in other.terms:
                k = (l1 * l2, r1 * r2)
                out[k] = out.get(k, Fraction(0)) + c1 * c2
        return TensorElem.of(out)

    def map_legs(self, fn) -> "TensorElem":
        """Apply a Monomial -> Monomial function to both legs of every term."""
        out: dict[tuple[Monomial, Monomial], Fraction] = {}
        for (l, r), c in self.terms:
            k = (fn(l), fn(r))
            out[k] = out.get(k, Fraction(0)) + c
        return TensorElem.of(out)


def product(a: AlgElem, b: AlgElem, carrier: str | None = None) -> AlgElem:
    """Bilinear extension of multiset union; the free commutative product."""
    del carrier  # same-carrier inputs are the caller's responsibility
    return a * b


# -- coproducts ---------------------------------------------------------------

_FACTOR_CACHE: dict[tuple[str, bytes, str | None], TensorElem] = {}


def _require_member(species: SpeciesSpec, rel: Relation, role: str) -> None:
    if not is_member(species, rel):
        raise SpeciesMembershipError(
            f"{role} of size {rel.n} is not a member of species {species.name!r}"
        )


def _factor_contractions(iso: IsoClass, species: SpeciesSpec) -> TensorElem:
    rel = iso.relation()
    terms: dict[tuple[Monomial, Monomial], Fraction] = {}
    for d in enumerate_contractions(rel):
        for fib in d.fibres:
            _require_member(species, fib, "contraction fibre")
        _require_member(species, d.quotient, "contraction quotient")
        key = (Monomial.of(*d.fibres), Monomial.of(d.quotient))
        terms[key] = terms.get(key, Fraction(0)) + 1
    return TensorElem.of(terms)


def _factor_collapses(iso: IsoClass, species: SpeciesSpec) -> TensorElem:
    rel = iso.relation()
    terms: dict[tuple[Monomial, Monomial], Fraction] = {}
    for d in enumerate_collapses(rel):
        for fib in d.fibres:
            _require_member(species, fib, "collapse fibre")
        _require_member(species, d.quotient, "collapse quotient")
        key = (Monomial.of(*d.fibres), Monomial.of(d.quotient))
        terms[key] = terms.get(key, Fraction(0)) + 1
    return TensorElem.of(terms)


def _factor_cuts(iso: IsoClass, species: SpeciesSpec) -> TensorElem:
    rel = iso.relation()
    full = set(range(rel.n))
    terms: dict[tuple[Monomial, Monomial], Fraction] = {}
    for cut in enumerate_downsets(rel):
        lower = induced_subrelation(rel, cut.downset)
        upper = induced_subrelation(rel, sorted(full - set(cut.downset)))
        left = Monomial.of_components(lower)
        right = Monomial.of_components(upper)
        for part in (*left.factors, *right.factors):
            _require_member(species, part.relation(), "cut layer component")
        key = (left, right)
        terms[key] = terms.get(key, Fraction(0)) + 1
    return TensorElem.of(terms)


def _factor_admissible(iso: IsoClass) -> TensorElem:
    rel = iso.relation()
    terms: dict[tuple[Monomial, Monomial], Fraction] = {}
    for sub in enumerate_admissible(rel):
        key = (Monomial.of(sub), Monomial.of(quotient(rel, sub)))
        terms[key] = terms.get(key, Fraction(0)) + 1
    return TensorElem.of(terms)


def _extend(m: Monomial, factor_fn) -> TensorElem:
    """Multiplicative extension of a per-factor coproduct to monomials."""
    result = TensorElem.pure(UNIT, UNIT)
    for iso in m.factors:
        result = result * factor_fn(iso)
    return result


def coproduct_contractions(m: Monomial, species: SpeciesSpec) -> TensorElem:
    """Sum over contraction kernels: fibres on the left, quotient on the right.

    Factors must be connected members of a connected-variant species; the
    species closure lemmas guarantee all fibres and quotients stay members,
    and this is asserted term by term.
    """

    def factor(iso: IsoClass) -> TensorElem:
        cached = _FACTOR_CACHE.get(("contractions", iso.key, species.name))
        if cached is None:
            rel = iso.relation()
            if not rel.is_connected():
                raise SpeciesMembershipError("contraction coproduct factors must be connected")
            _require_member(species, rel, "factor")
            cached = _factor_contractions(iso, species)
            _FACTOR_CACHE[("contractions", iso.key, species.name)] = cached
        return cached

    return _extend(m, factor)


def coproduct_collapses(m: Monomial, species: SpeciesSpec) -> TensorElem:
    """Sum over collapse kernels; fibres and quotients may be disconnected."""
    if species.variant != "general":
        raise SpeciesMembershipError(
            f"collapse coproduct needs a general-variant species, got {species.name!r}"
        )

    def factor(iso: IsoClass) -> TensorElem:
        cached = _FACTOR_CACHE.get(("collapses", iso.key, species.name))
        if cached is None:
            _require_member(species, iso.relation(), "factor")
            cached = _factor_collapses(iso, species)
            _FACTOR_CACHE[("collapses", iso.key, species.name)] = cached
        return cached

    return _extend(m, factor)


def coproduct_cuts(m: Monomial, species: SpeciesSpec) -> TensorElem:
    """Sum over down-set layerings: components of the down-set tensor the rest."""

    def factor(iso: IsoClass) -> TensorElem:
        cached = _FACTOR_CACHE.get(("cuts", iso.key, species.name))
        if cached is None:
            rel = iso.relation()
            if not rel.is_connected():
                raise SpeciesMembershipError("cut coproduct factors must be connected")
            _require_member(species, rel, "factor")
            cached = _factor_cuts(iso, species)
            _FACTOR_CACHE[("cuts", iso.key, species.name)] = cached
        return cached

    return _extend(m, factor)


def coproduct_admissible(m: Monomial) -> TensorElem:
    """Sum over admissible sub-relations T' of each preorder factor: T' tensor T/T'.

    The left leg keeps T' whole as a single (possibly disconnected) preorder
    factor; splitting into components happens only on the contraction side,
    mediated by the culf comparison map.
    """

    def factor(iso: IsoClass) -> TensorElem:
        cached = _FACTOR_CACHE.get(("admissible", iso.key, None))
        if cached is None:
            if not iso.relation().is_preorder():
                raise MalformedInput("admissible coproduct factors must be preorders")
            cached = _factor_admissible(iso)
            _FACTOR_CACHE[("admissible", iso.key, None)] = cached
        return cached

    return _extend(m, factor)


def coproduct(m: Monomial, flavor: str, species: SpeciesSpec | None = None) -> TensorElem:
    """Dispatch on a flavor code (K, D, A, R or the long map-class names)."""
    flavor = _flavor(flavor)
    if flavor == "admissible":
        return coproduct_admissible(m)
    if species is None:
        raise CarrierMismatch(f"flavor {flavor!r} needs a species")
    if flavor == "contractions":
        return coproduct_contractions(m, species)
    if flavor == "collapses":
        return coproduct_collapses(m, species)
    if flavor == "cuts":
        return coproduct_cuts(m, species)
    raise MalformedInput(f"unknown coproduct flavor {flavor!r}")


def coaction(m: Monomial, species: SpeciesSpec) -> TensorElem:
    """The comodule coaction: numerically the contraction coproduct.

    The left leg lives in the contraction bialgebra, the right leg in the
    restriction coalgebra over the same species; the distinction is one of
    typing only, the sums coincide.
    """
    return coproduct_contractions(m, species)


def counit(m: Monomial, flavor: str) -> Fraction:
    """The counit of the chosen flavor, as an exact rational.

    Contractions/collapses: 1 iff every factor is a single point.  Cuts:
    1 iff the monomial is the algebra unit.  Admissible: 1 iff every factor
    is a groupoid preorder (all relations invertible); whether a classical
    normalization to 1 on all of these is wanted is left to callers.
    """
    flavor = _flavor(flavor)
    if flavor in ("contractions", "collapses"):
        ok = all(f.size == 1 for f in m.factors)
    elif flavor == "cuts":
        ok = m.is_unit()
    elif flavor == "admissible":
        def groupoid(rel: Relation) -> bool:
            return all(rel.le(j, i) for i, j in rel.pairs())

        ok = all(groupoid(f.relation()) for f in m.factors)
    else:
        raise MalformedInput(f"unknown counit flavor {flavor!r}")
    return Fraction(1 if ok else 0)
