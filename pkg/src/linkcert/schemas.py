"""JSON forms of patterns, ledgers, Milnor tables and certificates.

Every document carries a ``schema`` tag ``linkcert/<kind>@<version>``.
Component, disk and multi-index numbers are 1-based in JSON.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .certify import CERTIFICATE_SCHEMA, IntersectionLedger, SliceCertificate
from .groups import FreeWord
from .infection import MultiDiskPattern, SiteStrand
from .milnor import MilnorTable
from .textio import parse_diagram

PATTERN_SCHEMA = "linkcert/multi-disk@1"
LEDGER_SCHEMA = "linkcert/intersection-ledger@1"
TABLE_SCHEMA = "linkcert/milnor-table@1"


class SchemaError(ValueError):
    pass


def _check_tag(obj: dict, expected: str) -> None:
    if not isinstance(obj, dict):
        raise SchemaError("expected a JSON object")
    tag = obj.get("schema")
    if tag is not None and tag != expected:
        raise SchemaError(f"schema tag {tag!r} does not match {expected!r}")


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{where} must be an integer")
    return value


def load_json(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc


# -- multi-disk patterns ------------------------------------------------


def _diagram_field(obj: dict, key: str, base: Path | None, name: str | None):
    text = obj.get(key)
    file = obj.get(key + "File")
    if text is None and file is None:
        return None
    if text is None:
        p = Path(file)
        if base is not None and not p.is_absolute():
            p = base / p
        text = p.read_text()
        name = name or p.stem
    return parse_diagram(text, name=name)


def pattern_from_json(obj: dict, base: str | Path | None = None) -> MultiDiskPattern:
    """Read a multi-disk pattern; ``*File`` entries are resolved against ``base``."""
    _check_tag(obj, PATTERN_SCHEMA)
    base = Path(base) if base is not None else None
    name = obj.get("name")
    L = _diagram_field(obj, "pattern", base, name)
    if L is None:
        raise SchemaError("pattern document needs 'pattern' or 'patternFile'")
    sites_raw = obj.get("sites")
    if not isinstance(sites_raw, list) or not sites_raw:
        raise SchemaError("'sites' must be a non-empty list of lists")
    sites = []
    for i, site in enumerate(sites_raw, start=1):
        if not isinstance(site, list):
            raise SchemaError(f"site {i} must be a list")
        strands = []
        for s in site:
            where = f"site {i}"
            comp = _int(s.get("component"), f"{where}: component") - 1
            arc = _int(s.get("arc", s.get("edge")), f"{where}: arc")
            d = s.get("direction")
            if d is not None:
                d = _int(d, f"{where}: direction")
            strands.append(SiteStrand(comp, arc, d))
        sites.append(strands)
    eta_diagram, eta_components = None, ()
    eta = obj.get("eta")
    if eta is not None:
        eta_diagram = _diagram_field(eta, "diagram", base, None)
        if eta_diagram is None:
            raise SchemaError("'eta' needs 'diagram' or 'diagramFile'")
        eta_components = tuple(_int(k, "eta component") - 1 for k in eta.get("components", []))
    return MultiDiskPattern(L, sites, eta_diagram, eta_components, name=name)


def eta_words_from_json(obj: dict) -> list[FreeWord] | None:
    words = obj.get("etaWords")
    if words is None:
        return None
    out = []
    for w in words:
        if isinstance(w, str):
            out.append(FreeWord.parse(w))
        elif isinstance(w, list):
            out.append(FreeWord(tuple(_int(a, "eta word letter") for a in w)))
        else:
            raise SchemaError("eta words are strings like 'x1 x2 x1^-1 x2^-1' or lists of signed integers")
    return out


def pattern_to_json(P: MultiDiskPattern, eta_words: list[FreeWord] | None = None) -> dict:
    out: dict = {"schema": PATTERN_SCHEMA}
    if P.name:
        out["name"] = P.name
    out["pattern"] = P.pattern.pd_text()
    out["sites"] = [
        [
            {"component": s.component + 1, "arc": s.edge, **({"direction": s.direction} if s.direction else {})}
            for s in site
        ]
        for site in P.sites
    ]
    if P.eta_diagram is not None:
        out["eta"] = {
            "diagram": P.eta_diagram.pd_text(),
            "components": [k + 1 for k in P.eta_components],
        }
    if eta_words is not None:
        out["etaWords"] = [str(w) for w in eta_words]
    return out


# -- ledgers ----------------------------------------------------------------


def ledger_from_json(obj: dict) -> IntersectionLedger:
    """Full form ``{r, self, mixed}`` or the shorthand ``{r, c}`` (all self-intersections of disk 1)."""
    _check_tag(obj, LEDGER_SCHEMA)
    r = _int(obj.get("r"), "r")
    try:
        if "self" not in obj and "mixed" not in obj:
            c = _int(obj.get("c"), "c")
            if c < 0:
                raise SchemaError("c must be non-negative")
            return IntersectionLedger.uniform(r, c)
        self_counts = [_int(v, "self count") for v in obj.get("self", [0] * r)]
        mixed = {}
        for entry in obj.get("mixed", []):
            i, j = (_int(v, "mixed pair") for v in entry["pair"])
            mixed[(i, j)] = mixed.get((i, j), 0) + _int(entry["count"], "mixed count")
        ledger = IntersectionLedger(r, tuple(self_counts), mixed)
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed ledger: {exc}") from exc
    except SchemaError:
        raise
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    if "c" in obj and _int(obj["c"], "c") != ledger.c:
        raise SchemaError(f"ledger total c={obj['c']} disagrees with its entries (sum {ledger.c})")
    return ledger


def ledger_to_json(ledger: IntersectionLedger) -> dict:
    return {
        "schema": LEDGER_SCHEMA,
        "r": ledger.r,
        "self": list(ledger.self_counts),
        "mixed": [{"pair": list(k), "count": n} for k, n in ledger.mixed.items()],
        "c": ledger.c,
    }


# -- Milnor tables and certificates ------------------------------------------


def milnor_table_from_json(obj: dict) -> MilnorTable:
    _check_tag(obj, TABLE_SCHEMA)
    table = MilnorTable(obj.get("link", "link"), _int(obj.get("maxLength"), "maxLength"))
    for e in obj.get("entries", []):
        table.entries[tuple(e["index"])] = (_int(e["value"], "value"), _int(e["delta"], "delta"))
    return table


def certificate_from_json(obj: dict) -> SliceCertificate:
    _check_tag(obj, CERTIFICATE_SCHEMA)
    try:
        return SliceCertificate(
            obj["theorem"],
            obj["inputs"],
            obj["requirement"],
            obj["evidence"],
            obj["verdict"],
            list(obj.get("assumptions", [])),
            list(obj.get("notes", [])),
        )
    except KeyError as exc:
        raise SchemaError(f"certificate is missing {exc}") from exc
