"""Command-line interface: enumerate, coproduct, check, catalog, grid, export.

Output is byte-stable for fixed inputs and flags.  Exit codes: 0 success,
1 failed check, 2 malformed input.  ORDALG_MAX_SIZE overrides the size
bound used by catalogs and check suites.
"""

from __future__ import annotations

import json
import os
import sys

import click

from . import algebra, checks, enumeration, formats, maps
from .errors import OrdalgError
from .orders import DEFAULT_MAX_SIZE
from .species import builtin_species


def _env_max_size() -> int | None:
    value = os.environ.get("ORDALG_MAX_SIZE")
    if value is None:
        return None
    try:
        return int(value)
    except ValueError:
        raise click.UsageError(f"ORDALG_MAX_SIZE={value!r} is not an integer")


def _load_one(path: str):
    rels = formats.load_relations(path)
    if len(rels) != 1:
        raise OrdalgError(f"expected one relation in {path}, found {len(rels)}")
    return rels[0]


@click.group()
def main():
    """Finite posets, preorders, their map classes and incidence coproducts."""


@main.command("enumerate")
@click.option("--kind", required=True,
              type=click.Choice(["contractions", "collapses", "admissible", "downsets", "convex"]))
@click.option("--input", "path", required=True, type=click.Path(exists=True))
def enumerate_cmd(kind, path):
    """List map-class data for a relation, one JSON object per line."""
    try:
        rel = _load_one(path)
        if kind == "contractions":
            for d in enumeration.enumerate_contractions(formats.require_poset(rel)):
                click.echo(json.dumps({
                    "kernel": [list(b) for b in d.kernel],
                    "quotient": formats.relation_to_json(d.quotient),
                }, sort_keys=True))
        elif kind == "collapses":
            for d in enumeration.enumerate_collapses(formats.require_poset(rel)):
                click.echo(json.dumps({
                    "kernel": [list(b) for b in d.kernel],
                    "quotient": formats.relation_to_json(d.quotient),
                }, sort_keys=True))
        elif kind == "admissible":
            for sub in enumeration.enumerate_admissible(rel):
                click.echo(json.dumps(formats.admissible_to_json(rel, sub), sort_keys=True))
        elif kind == "downsets":
            for c in enumeration.enumerate_downsets(formats.require_poset(rel)):
                click.echo(json.dumps({"downset": list(c.downset)}, sort_keys=True))
        else:
            for s in enumeration.enumerate_convex_subsets(formats.require_poset(rel)):
                click.echo(json.dumps({"subset": list(s)}, sort_keys=True))
    except OrdalgError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


@main.command("coproduct")
@click.option("--flavor", required=True, type=click.Choice(["K", "D", "A", "R"]))
@click.option("--species", "species_name", default="all",
              type=click.Choice(["all", "trees", "linear", "preorders", "discrete"]))
@click.option("--input", "path", required=True, type=click.Path(exists=True))
@click.option("--format", "fmt", default="pretty", type=click.Choice(["json", "pretty"]))
def coproduct_cmd(flavor, species_name, path, fmt):
    """The chosen coproduct of the input relation's monomial."""
    try:
        rel = _load_one(path)
        if flavor == "A":
            m = algebra.Monomial.of(rel)
            t = algebra.coproduct_admissible(m)
        else:
            spec = builtin_species(species_name, flavor)
            m = algebra.Monomial.of(formats.require_poset(rel))
            t = algebra.coproduct(m, flavor, spec)
    except (OrdalgError, KeyError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    if fmt == "json":
        click.echo(json.dumps(formats.tensor_to_json(t)))
    else:
        click.echo(formats.pretty_tensor(t))


_SUITES = ["coassoc", "bialgebra", "comodule", "bijection", "culf", "closure", "glue-unique"]


@main.command("check")
@click.option("--suite", required=True, type=click.Choice(_SUITES))
@click.option("--max-size", "max_size", default=None, type=int,
              help="Override every size bound of the suite (defaults: 5 for "
                   "poset suites, 4 for preorder suites).")
def check_cmd(suite, max_size):
    """Run a verification suite; exit 0 iff every item passes."""
    if max_size is None:
        max_size = _env_max_size()
    try:
        if suite == "coassoc":
            reports = checks.run_coassoc(
                max_poset=max_size or 5, max_preorder=max_size or 4
            )
        elif suite == "bialgebra":
            reports = checks.run_bialgebra(max_size or 4)
        elif suite == "comodule":
            reports = checks.run_comodule(max_size or 5, max_size or 6)
        elif suite == "bijection":
            reports = [checks.check_bijection(max_size or 4)]
        elif suite == "culf":
            reports = [checks.check_culf(max_size or 4)]
        elif suite == "closure":
            reports = checks.run_closure(max_size or 5, max_size or 3)
        else:
            reports = [checks.check_glue_uniqueness(max_size or 5)]
    except OrdalgError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    failed = False
    for rep in reports:
        click.echo(rep.line())
        for failure in rep.failures:
            failed = True
            click.echo(json.dumps({"suite": rep.suite, "failure": failure}))
    sys.exit(1 if failed else 0)


@main.command("catalog")
@click.option("--kind", required=True, type=click.Choice(["poset", "preorder", "connected-poset"]))
@click.option("--n", required=True, type=int)
def catalog_cmd(kind, n):
    """Canonical representatives of all isomorphism classes of the given size."""
    try:
        reps = enumeration.catalog(kind, n, _env_max_size() or DEFAULT_MAX_SIZE)
    except OrdalgError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    for rel in reps:
        click.echo(json.dumps(formats.relation_to_json(rel), sort_keys=True))


@main.command("grid")
@click.option("--chain", "path", required=True, type=click.Path(exists=True))
def grid_cmd(path):
    """Quotient grid of an admissible chain, as JSON plus a coherence verdict."""
    try:
        chain = formats.load_relations(path)
        grid = maps.quotient_grid(chain)
    except OrdalgError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    failures = maps.grid_coherence_failures(grid)
    cells = {
        f"{i},{j}": formats.relation_to_json(rel) for (i, j), rel in sorted(grid.cells.items())
    }
    click.echo(json.dumps({"cells": cells, "coherent": not failures, "failures": failures},
                          sort_keys=True))
    sys.exit(1 if failures else 0)


@main.command("export")
@click.option("--input", "path", required=True, type=click.Path(exists=True))
@click.option("--dot", "dot_path", default="-", type=click.Path())
def export_cmd(path, dot_path):
    """Write the Hasse diagram of a poset in DOT format."""
    try:
        rel = formats.require_poset(_load_one(path))
        text = formats.dot_hasse(rel)
    except OrdalgError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    if dot_path == "-":
        click.echo(text, nl=False)
    else:
        with open(dot_path, "w", encoding="utf-8") as fh:
            fh.write(text)


if __name__ == "__main__":
    main()
