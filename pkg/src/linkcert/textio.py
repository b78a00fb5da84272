"""Reading and writing diagrams as text.

Accepted link grammars::

    PD[X[1,3,2,4], X[3,1,4,2]]        optionally with Loop[k] entries
    BR[n, [i1, i2, ...]]              closure of a braid word
    DT[4, 6, 2]  or  DT[(6,8),(2,10,4)]

String links additionally accept the ``TANGLE[...]`` block written by
:func:`string_link_text` and ``SL[r, [tokens]]`` where a token is a
signed generator or ``cup<p>`` / ``cap<p>``; ``BR[...]`` is read as a pure
braid.  Lines starting with ``#`` are ignored, and a trailing
``COMPONENTS[...]`` block produced by :func:`canonical_text` is accepted
(and checked) on input.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .diagram import DiagramError, DiagramSyntaxError, LinkDiagram
from .tangle import (
    StringLinkDiagram,
    braid_closure,
    cut_open,
    from_braid,
    from_morse_word,
)

_TOKEN = re.compile(r"\s*(?:(-?\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


@dataclass
class _Tok:
    kind: str  # "int", "name", "sym", "end"
    value: object
    pos: int


def _tokens(text: str) -> list[_Tok]:
    out = []
    for m in _TOKEN.finditer(text):
        num, name, sym = m.groups()
        if num is not None:
            out.append(_Tok("int", int(num), m.start(1)))
        elif name is not None:
            out.append(_Tok("name", name, m.start(2)))
        elif sym is not None:
            out.append(_Tok("sym", sym, m.start(3)))
    out.append(_Tok("end", None, len(text)))
    return out


class _Reader:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, sym: str) -> _Tok:
        t = self.take()
        if t.kind != "sym" or t.value != sym:
            raise DiagramSyntaxError(f"expected {sym!r}, found {_show(t)}", t.pos)
        return t

    def maybe(self, sym: str) -> bool:
        t = self.peek()
        if t.kind == "sym" and t.value == sym:
            self.i += 1
            return True
        return False

    def integer(self) -> int:
        t = self.take()
        if t.kind != "int":
            raise DiagramSyntaxError(f"expected an integer, found {_show(t)}", t.pos)
        return t.value

    def name(self) -> str:
        t = self.take()
        if t.kind != "name":
            raise DiagramSyntaxError(f"expected a keyword, found {_show(t)}", t.pos)
        return t.value

    def int_list(self, close: str) -> list[int]:
        vals: list[int] = []
        if self.maybe(close):
            return vals
        while True:
            vals.append(self.integer())
            if self.maybe(close):
                return vals
            self.expect(",")

    def end(self) -> None:
        t = self.peek()
        if t.kind != "end":
            raise DiagramSyntaxError(f"unexpected trailing input {_show(t)}", t.pos)


def _show(t: _Tok) -> str:
    return "end of input" if t.kind == "end" else repr(t.value)


def _strip_comments(text: str) -> str:
    # keep offsets stable by blanking comment lines instead of deleting them
    return "\n".join(" " * len(line) if line.lstrip().startswith("#") else line for line in text.split("\n"))


_OPEN_CLOSE = {"[": "]", "(": ")", "{": "}"}


def _pd_body(rd: _Reader) -> tuple[list[tuple[int, ...]], list[int]]:
    codes, loops = [], []
    if rd.maybe("]"):
        return codes, loops
    while True:
        t = rd.peek()
        if t.kind == "name":
            kw = rd.name()
            rd.expect("[")
            vals = rd.int_list("]")
            if kw == "X":
                if len(vals) != 4:
                    raise DiagramSyntaxError("a crossing X[...] needs four labels", t.pos)
                codes.append(tuple(vals))
            elif kw == "Loop":
                if len(vals) != 1:
                    raise DiagramSyntaxError("Loop[...] takes one label", t.pos)
                loops.append(vals[0])
            else:
                raise DiagramSyntaxError(f"unknown PD entry {kw!r}", t.pos)
        elif t.kind == "sym" and t.value in _OPEN_CLOSE:
            rd.take()
            vals = rd.int_list(_OPEN_CLOSE[t.value])
            if len(vals) != 4:
                raise DiagramSyntaxError("a crossing needs four labels", t.pos)
            codes.append(tuple(vals))
        else:
            raise DiagramSyntaxError(f"expected a crossing, found {_show(t)}", t.pos)
        if rd.maybe("]"):
            return codes, loops
        rd.expect(",")


def _components_block(rd: _Reader) -> list[list[int]] | None:
    t = rd.peek()
    if t.kind != "name" or t.value != "COMPONENTS":
        return None
    rd.name()
    rd.expect("[")
    comps = []
    if rd.maybe("]"):
        return comps
    while True:
        rd.expect("[")
        comps.append(rd.int_list("]"))
        if rd.maybe("]"):
            return comps
        rd.expect(",")


def _braid_header(rd: _Reader) -> tuple[int, list[int]]:
    rd.expect("[")
    n = rd.integer()
    rd.expect(",")
    rd.expect("[")
    word = rd.int_list("]")
    rd.expect("]")
    return n, word


def _dt_body(rd: _Reader) -> list[tuple[int, ...]]:
    if rd.peek().kind == "int":
        return [tuple(rd.int_list("]"))]
    groups = []
    while True:
        t = rd.take()
        if t.kind != "sym" or t.value not in _OPEN_CLOSE:
            raise DiagramSyntaxError(f"expected a DT group, found {_show(t)}", t.pos)
        groups.append(tuple(rd.int_list(_OPEN_CLOSE[t.value])))
        if rd.maybe("]"):
            return groups
        rd.expect(",")


def dt_to_pd(groups: list[tuple[int, ...]]) -> list[tuple[int, int, int, int]]:
    try:
        import spherogram
    except ImportError as exc:  # pragma: no cover - depends on the environment
        raise DiagramError("DT input needs the optional 'spherogram' package (pip install linkcert[dt])") from exc
    flat = [abs(v) for g in groups for v in g]
    if sorted(flat) != list(range(2, 2 * len(flat) + 1, 2)):
        raise DiagramError("DT code must use the even numbers 2..2n exactly once")
    try:
        code = spherogram.Link("DT: " + repr([tuple(g) for g in groups])).PD_code()
    except Exception as exc:
        raise DiagramError(f"DT code is not realizable: {exc}") from exc
    return [tuple(int(v) for v in c) for c in code]


def parse_diagram(text: str, name: str | None = None) -> LinkDiagram:
    """Parse PD, braid-closure or DT text into a validated diagram."""
    rd = _Reader(_strip_comments(text))
    head = rd.peek()
    kw = rd.name()
    if kw == "PD":
        rd.expect("[")
        codes, loops = _pd_body(rd)
        comps = _components_block(rd)
        rd.end()
        D = LinkDiagram.from_pd(codes, loops, name=name)
        if comps is not None:
            D = _apply_components(D, comps)
        return D
    if kw == "BR":
        n, word = _braid_header(rd)
        rd.end()
        if n < 1:
            raise DiagramSyntaxError("braid needs at least one strand", head.pos)
        return braid_closure(n, word, name=name)
    if kw == "DT":
        rd.expect("[")
        groups = _dt_body(rd)
        rd.end()
        if not groups or not all(groups):
            raise DiagramSyntaxError("empty DT code", head.pos)
        return LinkDiagram.from_pd(dt_to_pd(groups), name=name)
    raise DiagramSyntaxError(f"unknown diagram format {kw!r} (expected PD, BR or DT)", head.pos)


def _apply_components(D: LinkDiagram, comps: list[list[int]]) -> LinkDiagram:
    """Re-impose an explicit traversal order read from a COMPONENTS block."""
    given = {lab for c in comps for lab in c}
    mine = {lab for c in D.components for lab in c}
    if given != mine or sum(len(c) for c in comps) != len(mine):
        raise DiagramError("COMPONENTS block does not match the PD labels")
    succ = D.successor
    flips = []
    for k, comp in enumerate(D.components):
        other = next(c for c in comps if comp[0] in c)
        if len(other) > 1 and len(comp) > 1:
            i = other.index(comp[0])
            if other[(i + 1) % len(other)] != succ[comp[0]]:
                flips.append(k)
    if flips:
        D = D.reversed(flips)
    return LinkDiagram.from_oriented(
        D.crossings, D.signs, D.loops, first_edges=[c[0] for c in comps], name=D.name
    )


def parse_string_link(text: str, name: str | None = None) -> StringLinkDiagram:
    """Parse ``SL[r, [...]]``, ``TANGLE[...]`` or a braid ``BR[n, [...]]``.

    A closed diagram (PD, DT, or a braid that is not pure) with one or two
    components is cut open into a string link with that closure.
    """
    rd = _Reader(_strip_comments(text))
    head = rd.peek()
    kw = rd.name()
    if kw == "BR":
        n, word = _braid_header(rd)
        rd.end()
        try:
            return from_braid(n, word, name=name)
        except DiagramError:
            return cut_open(braid_closure(n, word, name=name))
    if kw in ("PD", "DT"):
        return cut_open(parse_diagram(text, name=name))
    if kw == "TANGLE":
        return _tangle_body(rd, name)
    if kw != "SL":
        raise DiagramSyntaxError(f"unknown string link format {kw!r} (expected SL, TANGLE, BR, PD or DT)", head.pos)
    rd.expect("[")
    r = rd.integer()
    rd.expect(",")
    rd.expect("[")
    word: list = []
    if not rd.maybe("]"):
        while True:
            t = rd.take()
            if t.kind == "int":
                word.append(t.value)
            elif t.kind == "name" and re.fullmatch(r"(cup|cap)\d+", t.value):
                word.append((t.value[:3], int(t.value[3:])))
            else:
                raise DiagramSyntaxError(f"bad string link token {_show(t)}", t.pos)
            if rd.maybe("]"):
                break
            rd.expect(",")
    orient = None
    if rd.maybe(","):
        rd.expect("[")
        orient = rd.int_list("]")
    rd.expect("]")
    rd.end()
    J = from_morse_word(r, word, name=name)
    if orient is not None:
        J = J.with_orientation(orient)
    return J


def _tangle_body(rd: _Reader, name: str | None) -> StringLinkDiagram:
    rd.expect("[")
    r = rd.integer()
    fields: dict[str, list] = {}
    while rd.maybe(","):
        t = rd.peek()
        kw = rd.name()
        rd.expect("[")
        if kw == "PD":
            codes, loops = _pd_body(rd)
            if loops:
                raise DiagramSyntaxError("a string link cannot contain closed loops", t.pos)
            fields[kw] = codes
        elif kw in ("SIGNS", "BOTTOM", "TOP", "ORIENT"):
            fields[kw] = rd.int_list("]")
        else:
            raise DiagramSyntaxError(f"unknown TANGLE field {kw!r}", t.pos)
    rd.expect("]")
    rd.end()
    for kw in ("PD", "SIGNS", "BOTTOM", "TOP"):
        if kw not in fields:
            raise DiagramError(f"TANGLE block is missing {kw}")
    return StringLinkDiagram(
        r,
        tuple(fields["PD"]),
        tuple(fields["SIGNS"]),
        tuple(fields["BOTTOM"]),
        tuple(fields["TOP"]),
        tuple(fields["ORIENT"]) if "ORIENT" in fields else None,
        name=name,
    )


def read_diagram(path: str | Path) -> LinkDiagram:
    p = Path(path)
    return parse_diagram(p.read_text(), name=p.stem)


def read_string_link(path: str | Path) -> StringLinkDiagram:
    p = Path(path)
    return parse_string_link(p.read_text(), name=p.stem)


# -- export --------------------------------------------------------------


def to_pd(D: LinkDiagram) -> str:
    return D.pd_text()


def canonical_text(D: LinkDiagram) -> str:
    return D.canonical_text()


def _spherogram_link(D: LinkDiagram):
    try:
        import spherogram
    except ImportError as exc:  # pragma: no cover
        raise DiagramError("DT/BR export needs the optional 'spherogram' package") from exc
    if D.loops:
        raise DiagramError("DT/BR export does not support crossingless components")
    R = D.relabeled()
    return spherogram.Link([tuple(v - 1 for v in c) for c in R.crossings])


def to_dt(D: LinkDiagram) -> str:
    groups = _spherogram_link(D).DT_code()
    return "DT[" + ",".join("(" + ",".join(str(v) for v in g) + ")" for g in groups) + "]"


def to_braid(D: LinkDiagram) -> str:
    L = _spherogram_link(D)
    word = L.braid_word()
    n = max((abs(g) for g in word), default=0) + 1
    return f"BR[{n},[{','.join(str(g) for g in word)}]]"


def string_link_text(J: StringLinkDiagram) -> str:
    """Export a string link as a PD-style tangle block."""
    body = ",".join(f"X[{a},{b},{c},{d}]" for a, b, c, d in J.crossings)
    return (
        f"TANGLE[{J.strands},PD[{body}],SIGNS[{','.join(map(str, J.signs))}],BOTTOM[{','.join(map(str, J.bottom))}],"
        f"TOP[{','.join(map(str, J.top))}],ORIENT[{','.join(map(str, J.orientation))}]]"
    )
