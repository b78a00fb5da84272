"""Command-line interface.

Exit status: 0 on success, 1 when a certificate is not granted, 2 on
input errors.
"""

from __future__ import annotations

import json
import sys
from functools import wraps
from pathlib import Path

import click

from .certify import (
    DEFAULT_CHOICE_CAP,
    SLICE_MODES,
    FreeQuotientWitness,
    certify_slice,
    certify_solvable,
    refined_bounds_choices,
)
from .classical import alexander_poly, seifert_matrix, signature
from .diagram import DiagramError
from .families import FAMILY_KINDS, gen_family
from .groups import FreeWord
from .infection import multi_infect
from .milnor import milnor_table
from .schemas import (
    SchemaError,
    eta_words_from_json,
    ledger_from_json,
    ledger_to_json,
    load_json,
    pattern_from_json,
)
from .textio import (
    canonical_text,
    read_diagram,
    read_string_link,
    string_link_text,
    to_braid,
    to_dt,
)

EXIT_NOT_CERTIFIED = 1
EXIT_INPUT_ERROR = 2

_INPUT_ERRORS = (DiagramError, SchemaError, ValueError, OSError, KeyError)


def _guard(fn):
    @wraps(fn)
    def run(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except _INPUT_ERRORS as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INPUT_ERROR)

    return run


def _write(obj, output: str | None) -> None:
    text = obj if isinstance(obj, str) else json.dumps(obj, indent=2)
    if output:
        Path(output).write_text(text + "\n")
    else:
        click.echo(text)


def _load_pattern(path: str):
    obj = load_json(path)
    return pattern_from_json(obj, base=Path(path).parent), obj


_output = click.option("--output", "-o", type=click.Path(dir_okay=False), help="Write to a file instead of stdout.")
_link = click.option("--link", "link_path", required=True, type=click.Path(exists=True, dir_okay=False), help="Diagram file (PD, DT or BR text).")


@click.group()
@click.version_option(package_name="linkcert")
def main() -> None:
    """Link diagrams, Milnor invariants and infection certificates."""


@main.command("parse")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["summary", "pd", "canonical", "dt", "braid"]), default="summary")
@_output
@_guard
def parse_cmd(path, fmt, output):
    """Read a diagram and print it or a summary."""
    D = read_diagram(path)
    if fmt == "pd":
        _write(D.pd_text(), output)
    elif fmt == "canonical":
        _write(canonical_text(D), output)
    elif fmt == "dt":
        _write(to_dt(D), output)
    elif fmt == "braid":
        _write(to_braid(D), output)
    else:
        _write(
            {
                "name": D.name,
                "components": D.num_components,
                "crossings": D.num_crossings,
                "writhe": [D.writhe(k) for k in range(D.num_components)],
                "linkingMatrix": D.linking_matrix(),
                "canonical": canonical_text(D),
            },
            output,
        )


@main.command("infect")
@click.option("--pattern", "pattern_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--string-link", "sl_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Print a JSON summary instead of the PD code.")
@_output
@_guard
def infect_cmd(pattern_path, sl_path, as_json, output):
    """Multi-infect a pattern by a string link and print the result."""
    P, _ = _load_pattern(pattern_path)
    J = read_string_link(sl_path)
    R = multi_infect(P, J)
    if as_json:
        _write(
            {
                "pd": R.pd_text(),
                "components": R.num_components,
                "crossings": R.num_crossings,
                "linkingMatrix": R.linking_matrix(),
                "patternLinkingMatrix": P.pattern.linking_matrix(),
            },
            output,
        )
    else:
        _write(canonical_text(R), output)


def _parse_index(text: str) -> tuple[int, ...]:
    parts = text.replace(",", " ").split()
    if not parts:
        raise click.BadParameter("empty multi-index")
    return tuple(int(p) for p in parts)


@main.command("mu")
@_link
@click.option("--max-length", type=int, required=True)
@click.option("--index", "indices", multiple=True, help="Multi-index such as 1,1,2,2 (repeatable).")
@click.option("--cap", type=int, default=None, help="Magnus degree cap.")
@click.option("--nonzero", is_flag=True, help="Only list non-zero invariants.")
@_output
@_guard
def mu_cmd(link_path, max_length, indices, cap, nonzero, output):
    """Milnor invariants up to a length, as a MilnorTable JSON document."""
    D = read_diagram(link_path)
    idx = [_parse_index(t) for t in indices] or None
    table = milnor_table(D, max_length, idx, cap)
    if nonzero:
        table.entries = table.nonzero()
    _write(table.to_json(), output)


@main.command("lk")
@_link
@_output
@_guard
def lk_cmd(link_path, output):
    """Linking matrix (writhes on the diagonal are omitted)."""
    D = read_diagram(link_path)
    _write({"link": D.name, "linkingMatrix": D.linking_matrix()}, output)


@main.command("alex")
@_link
@_output
@_guard
def alex_cmd(link_path, output):
    """One-variable Alexander polynomial."""
    D = read_diagram(link_path)
    _write({"link": D.name, "alexander": alexander_poly(D).to_json()}, output)


@main.command("sig")
@_link
@_output
@_guard
def sig_cmd(link_path, output):
    """Signature from a Seifert matrix."""
    D = read_diagram(link_path)
    S = seifert_matrix(D)
    _write({"link": D.name, "signature": signature(D), "seifertMatrix": [list(r) for r in S.matrix]}, output)


def _finish(cert, output):
    _write(cert.to_json(), output)
    if not cert.certified:
        sys.exit(EXIT_NOT_CERTIFIED)


@main.command("certify-slice")
@click.option("--pattern", "pattern_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--ledger", "ledger_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--string-link", "sl_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--mode", type=click.Choice(SLICE_MODES), default="thm14", show_default=True)
@click.option("--cap", type=int, default=None, help="Magnus degree cap.")
@click.option("--choice-cap", type=int, default=DEFAULT_CHOICE_CAP, show_default=True)
@_output
@_guard
def certify_slice_cmd(pattern_path, ledger_path, sl_path, mode, cap, choice_cap, output):
    """Check the Milnor-invariant hypothesis for a sliceness certificate."""
    P, _ = _load_pattern(pattern_path)
    ledger = ledger_from_json(load_json(ledger_path))
    J = read_string_link(sl_path)
    _finish(certify_slice(P, ledger, J, mode, cap, choice_cap), output)


@main.command("certify-solvable")
@click.option("--pattern", "pattern_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--string-link", "sl_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--n", "level", type=int, required=True, help="Derived-series level of the infection curves.")
@click.option("--eta", "etas", multiple=True, help="Infection-curve word, e.g. 'x1 x2 x1^-1 x2^-1' (repeatable).")
@click.option("--witness-rank", type=int, default=None, help="Rank of a declared free quotient the words live in.")
@click.option("--witness-note", default="", help="Description of the declared free quotient.")
@click.option("--cap", type=int, default=None, help="Derived depth cap.")
@_output
@_guard
def certify_solvable_cmd(pattern_path, sl_path, level, etas, witness_rank, witness_note, cap, output):
    """Check derived-series membership and vanishing linking numbers."""
    P, obj = _load_pattern(pattern_path)
    J = read_string_link(sl_path)
    words = [FreeWord.parse(e) for e in etas] or eta_words_from_json(obj)
    witness = FreeQuotientWitness(witness_rank, witness_note) if witness_rank is not None else None
    _finish(certify_solvable(P, words, level, J, witness, cap), output)


@main.command("ledger-choices")
@click.option("--ledger", "ledger_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--choice-cap", type=int, default=DEFAULT_CHOICE_CAP, show_default=True)
@_output
@_guard
def ledger_choices_cmd(ledger_path, choice_cap, output):
    """Occurrence-bound vectors allowed by a ledger."""
    ledger = ledger_from_json(load_json(ledger_path))
    choices = sorted(refined_bounds_choices(ledger, choice_cap))
    _write({"ledger": ledger_to_json(ledger), "choices": [list(v) for v in choices]}, output)


@main.command("gen-family")
@click.option("--kind", type=click.Choice(FAMILY_KINDS), required=True)
@click.option("--level", type=int, required=True)
@click.option("--cap", type=int, default=None, help="Magnus degree cap for the vanishing check.")
@click.option("--string-link-out", type=click.Path(dir_okay=False), default=None, help="Also write the string link text here.")
@_output
@_guard
def gen_family_cmd(kind, level, cap, string_link_out, output):
    """Generate a family member and report its measured vanishing length."""
    member = gen_family(kind, level, cap)
    text = string_link_text(member.string_link)
    if string_link_out:
        Path(string_link_out).write_text(text + "\n")
    _write({**member.metadata(), "stringLink": text}, output)


if __name__ == "__main__":  # pragma: no cover
    main()
