"""Low-level helpers for assembling PD crossings from local pictures.

Crossings are first described geometrically by the edge labels on their
south, east, north and west sides, with the under-strand running
north-south.  ``emit`` turns such a picture plus strand directions into an
oriented PD tuple and a sign.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable, Sequence
from itertools import count

from .diagram import Code, DiagramError


class Labels:
    """Fresh integer edge labels."""

    def __init__(self, start: int = 1):
        self._it = count(start)

    def __call__(self) -> int:
        return next(self._it)


class Glue:
    """Union-find over edge labels, used when splicing pieces together."""

    def __init__(self) -> None:
        self.parent: dict[int, int] = {}

    def find(self, x: int) -> int:
        p = self.parent.setdefault(x, x)
        while p != x:
            gp = self.parent.setdefault(p, p)
            self.parent[x] = gp
            x, p = p, gp
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra

    def apply(self, codes: Iterable[Sequence[int]]) -> list[Code]:
        return [tuple(self.find(v) for v in c) for c in codes]


def emit(s: int, e: int, n: int, w: int, under_up: bool, over_we: bool) -> tuple[Code, int]:
    """Oriented PD tuple and sign of a crossing drawn with the under-strand vertical."""
    code = (s, e, n, w) if under_up else (n, w, s, e)
    sign = 1 if under_up == over_we else -1
    return code, sign


def trace_geometric(
    geo: Sequence[tuple[int, int, int, int]],
    seeds: Sequence[tuple[int, int, int]],
    boundary: dict[int, int] | None = None,
) -> tuple[list[bool], list[bool], list[list[int]]]:
    """Orient strands of geometric crossings by walking along them.

    ``geo[i]`` is ``(S, E, N, W)``.  A seed ``(label, crossing, slot)``
    says that ``label`` enters ``crossing`` through ``slot``; the seed
    ``(label, -1, -1)`` starts at a free boundary end of ``label``.
    ``boundary`` counts how many free boundary ends each label has.
    Returns per-crossing flags (under goes S->N, over goes W->E) and the
    label sequence of every strand walked.
    """
    occ: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for i, c in enumerate(geo):
        for p, lab in enumerate(c):
            occ[lab].append((i, p))
    boundary = boundary or {}
    for lab, where in occ.items():
        if len(where) + boundary.get(lab, 0) != 2:
            raise DiagramError(f"label {lab} has {len(where)} crossing ends")
    under_up: list[bool | None] = [None] * len(geo)
    over_we: list[bool | None] = [None] * len(geo)
    walks: list[list[int]] = []

    def walk(lab: int, entry: tuple[int, int] | None) -> None:
        seq = []
        start = (lab, entry)
        while True:
            seq.append(lab)
            if entry is None:
                # leaving a free boundary end: the label's crossing end is the entry
                ends = occ.get(lab, [])
                if not ends:
                    break
                entry = ends[0]
            i, p = entry
            flag = p in (0, 3)
            if p in (0, 2):
                if under_up[i] is not None:
                    if under_up[i] != flag:
                        raise DiagramError("inconsistent strand orientation")
                    break
                under_up[i] = flag
            else:
                if over_we[i] is not None:
                    if over_we[i] != flag:
                        raise DiagramError("inconsistent strand orientation")
                    break
                over_we[i] = flag
            out = geo[i][(p + 2) % 4]
            others = [o for o in occ.get(out, []) if o != (i, (p + 2) % 4)]
            lab = out
            if not others:
                seq.append(lab)
                break
            entry = others[0]
            if (lab, entry) == start:
                break
        walks.append(seq)

    for lab, i, p in seeds:
        walk(lab, None if i < 0 else (i, p))
    for i in range(len(geo)):
        for p, flags in ((0, under_up), (3, over_we)):
            if flags[i] is None:
                walk(geo[i][p], (i, p))
    return [bool(v) for v in under_up], [bool(v) for v in over_we], walks


def braid_box(
    labels_in: Sequence[int],
    ups: Sequence[bool],
    word: Sequence[int],
    new: Labels,
) -> tuple[list[Code], list[int], list[int], list[bool]]:
    """Stack braid generators on parallel strands.

    ``labels_in`` are the bottom edges left to right, ``ups`` the strand
    directions.  Generator ``+p`` crosses positions ``p, p+1`` (1-based)
    with the left strand over; ``-p`` puts the right strand over.
    Returns crossings, signs, top labels and top directions.
    """
    pos = [(lab, up) for lab, up in zip(labels_in, ups)]
    codes: list[Code] = []
    signs: list[int] = []
    for g in word:
        p = abs(g) - 1
        if not 0 <= p < len(pos) - 1:
            raise DiagramError(f"generator {g} out of range for {len(pos)} strands")
        (lab_l, up_l), (lab_r, up_r) = pos[p], pos[p + 1]
        tl, tr = new(), new()
        if g > 0:
            code, sign = emit(lab_r, tr, tl, lab_l, up_r, up_l)
        else:
            code, sign = emit(lab_l, lab_r, tr, tl, up_l, not up_r)
        codes.append(code)
        signs.append(sign)
        pos[p], pos[p + 1] = (tl, up_r), (tr, up_l)
    return codes, signs, [lab for lab, _ in pos], [up for _, up in pos]


def full_twists(width: int, times: int) -> list[int]:
    """Braid word of ``times`` full twists on ``width`` strands (negative allowed)."""
    if width < 2 or times == 0:
        return []
    gen = list(range(1, width))
    if times < 0:
        gen = [-g for g in gen]
    return gen * (width * abs(times))
