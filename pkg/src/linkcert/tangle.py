"""String links as oriented PD tangles, their closures and cables.

Every strand is oriented internally from its bottom endpoint to its top
endpoint; the user-facing ``orientation`` flags only matter when the
string link is closed up.  Bottom and top endpoints are numbered left to
right.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Sequence
from dataclasses import dataclass

from ._planar import Glue, Labels, braid_box, emit, full_twists, trace_geometric
from .diagram import Code, DiagramError, LinkDiagram, head_slots, tail_slots


@dataclass(frozen=True)
class StringLinkDiagram:
    strands: int
    crossings: tuple[Code, ...]
    signs: tuple[int, ...]
    bottom: tuple[int, ...]
    top: tuple[int, ...]
    orientation: tuple[int, ...] | None = None
    name: str | None = None

    def __post_init__(self) -> None:
        if self.strands < 1:
            raise DiagramError("a string link needs at least one strand")
        if len(self.bottom) != self.strands or len(self.top) != self.strands:
            raise DiagramError("one bottom and one top endpoint per strand")
        if self.orientation is None:
            object.__setattr__(self, "orientation", (1,) * self.strands)
        if len(self.orientation) != self.strands or any(o not in (1, -1) for o in self.orientation):
            raise DiagramError("orientation flags must be +1/-1, one per strand")
        _ = self.strand_edges  # validates the pure-tangle condition

    @property
    def strand_edges(self) -> tuple[tuple[int, ...], ...]:
        """Edge labels of each strand, bottom to top."""
        nxt = {}
        for c, s in zip(self.crossings, self.signs):
            hu, ho = head_slots(s)
            tu, to = tail_slots(s)
            nxt[c[hu]] = c[tu]
            nxt[c[ho]] = c[to]
        counts: dict[int, int] = defaultdict(int)
        for c in self.crossings:
            for lab in c:
                counts[lab] += 1
        for lab in self.bottom + self.top:
            counts[lab] += 1
        for lab, n in counts.items():
            if n != 2:
                raise DiagramError(f"tangle label {lab} has {n} ends")
        seen = set()
        out = []
        for i, start in enumerate(self.bottom):
            seq = [start]
            cur = start
            while cur not in self.top or (cur in nxt):
                if cur in self.top and cur not in nxt:
                    break
                cur = nxt.get(cur)
                if cur is None or cur in seq:
                    raise DiagramError("strand does not run from bottom to top")
                seq.append(cur)
                if cur in self.top and cur not in nxt:
                    break
            if cur != self.top[i]:
                raise DiagramError(
                    f"strand starting at bottom {i + 1} ends at the wrong top endpoint"
                )
            seen.update(seq)
            out.append(tuple(seq))
        if len(seen) != len(counts):
            raise DiagramError("string link has closed components")
        return tuple(out)

    @property
    def strand_of(self) -> dict[int, int]:
        return {lab: i for i, edges in enumerate(self.strand_edges) for lab in edges}

    def strand_writhe(self, i: int) -> int:
        """Signed self-crossings of strand ``i`` (independent of orientation)."""
        of = self.strand_of
        return sum(
            s for c, s in zip(self.crossings, self.signs) if of[c[0]] == of[c[1]] == i
        )

    def with_orientation(self, flags: Sequence[int]) -> StringLinkDiagram:
        return StringLinkDiagram(
            self.strands, self.crossings, self.signs, self.bottom, self.top, tuple(flags), self.name
        )

    def is_trivial(self) -> bool:
        return not self.crossings


def closure(J: StringLinkDiagram) -> LinkDiagram:
    """Join top endpoint i to bottom endpoint i by parallel arcs (no new crossings)."""
    glue = Glue()
    for b, t in zip(J.bottom, J.top):
        glue.union(b, t)
    codes = glue.apply(J.crossings)
    used = {v for c in codes for v in c}
    loops = [glue.find(b) for b in J.bottom if glue.find(b) not in used]
    D = LinkDiagram.from_oriented(
        codes, J.signs, loops, first_edges=[glue.find(b) for b in J.bottom], name=J.name
    )
    flips = [i for i, o in enumerate(J.orientation) if o < 0]
    if flips:
        D = D.reversed(flips)
    return D.relabeled()


def trivial_string_link(r: int) -> StringLinkDiagram:
    labels = tuple(range(1, r + 1))
    return StringLinkDiagram(r, (), (), labels, labels, name=f"trivial{r}")


# -- construction from words ------------------------------------------


def morse_geometry(pos: list[int], word: Sequence, new: Labels, glue: Glue) -> list[tuple[int, int, int, int]]:
    """Stack elementary pieces on the endpoint labels ``pos`` (updated in place).

    Word items: ``+p`` / ``-p`` cross positions ``p, p+1`` (1-based) with
    the left / right strand over; ``("cup", p)`` opens a new arc occupying
    positions ``p, p+1``; ``("cap", p)`` closes positions ``p, p+1``.
    Returns unoriented crossings as ``(S, E, N, W)`` labels; caps are
    recorded in ``glue``.
    """
    geo: list[tuple[int, int, int, int]] = []
    for item in word:
        if isinstance(item, tuple):
            kind, p = item
            p = int(p) - 1
            if kind == "cup":
                if not 0 <= p <= len(pos):
                    raise DiagramError(f"cup position {p + 1} out of range")
                e = new()
                pos[p:p] = [e, e]
            elif kind == "cap":
                if not 0 <= p < len(pos) - 1:
                    raise DiagramError(f"cap position {p + 1} out of range")
                glue.union(pos[p], pos[p + 1])
                del pos[p : p + 2]
            else:
                raise DiagramError(f"unknown tangle piece {kind!r}")
            continue
        g = int(item)
        p = abs(g) - 1
        if g == 0 or not 0 <= p < len(pos) - 1:
            raise DiagramError(f"generator {g} out of range for {len(pos)} positions")
        left, right = pos[p], pos[p + 1]
        tl, tr = new(), new()
        if g > 0:
            geo.append((right, tr, tl, left))
        else:
            geo.append((left, right, tr, tl))
        pos[p], pos[p + 1] = tl, tr
    return geo


def from_morse_word(r: int, word: Sequence, name: str | None = None) -> StringLinkDiagram:
    """Build a string link from a stack of elementary pieces read bottom to top.

    See :func:`morse_geometry` for the word items.
    """
    new = Labels()
    bottom = [new() for _ in range(r)]
    pos = list(bottom)
    glue = Glue()
    geo = morse_geometry(pos, word, new, glue)
    if len(pos) != r:
        raise DiagramError(f"word ends with {len(pos)} endpoints, expected {r}")
    top = pos
    # a cup immediately capped creates a label appearing twice in one slot list
    geo = glue.apply(geo)
    bottom = [glue.find(b) for b in bottom]
    top = [glue.find(t) for t in top]
    bcount: dict[int, int] = defaultdict(int)
    for lab in bottom + top:
        bcount[lab] += 1
    seeds = [(b, -1, -1) for b in bottom]
    under_up, over_we, walks = trace_geometric(geo, seeds, dict(bcount))
    if len(walks) > r:
        raise DiagramError("tangle word produces closed components")
    for i, seq in enumerate(walks):
        if seq[-1] != top[i]:
            raise DiagramError(f"strand {i + 1} does not end at top endpoint {i + 1}")
    codes, signs = [], []
    for (s, e, n, w), uu, ow in zip(geo, under_up, over_we):
        code, sign = emit(s, e, n, w, uu, ow)
        codes.append(code)
        signs.append(sign)
    return StringLinkDiagram(r, tuple(codes), tuple(signs), tuple(bottom), tuple(top), name=name)


def from_braid(n: int, word: Sequence[int], name: str | None = None) -> StringLinkDiagram:
    """A pure braid read as a string link (generator ``+i`` = left strand over)."""
    perm = list(range(n))
    for g in word:
        p = abs(int(g)) - 1
        if not 0 <= p < n - 1:
            raise DiagramError(f"generator {g} out of range for {n} strands")
        perm[p], perm[p + 1] = perm[p + 1], perm[p]
    if perm != list(range(n)):
        raise DiagramError("braid is not pure, so it is not a string link; use braid_closure")
    return from_morse_word(n, [int(g) for g in word], name=name)


def braid_closure(n: int, word: Sequence[int], name: str | None = None) -> LinkDiagram:
    """Closure of an arbitrary braid on ``n`` strands."""
    new = Labels()
    bottom = [new() for _ in range(n)]
    codes, signs, top, _ = braid_box(bottom, [True] * n, [int(g) for g in word], new)
    glue = Glue()
    for b, t in zip(bottom, top):
        glue.union(t, b)
    codes = glue.apply(codes)
    used = {v for c in codes for v in c}
    roots = []
    for b in bottom:
        rb = glue.find(b)
        if rb not in roots:
            roots.append(rb)
    loops = [rb for rb in roots if rb not in used]
    D = LinkDiagram.from_oriented(codes, signs, loops, name=name)
    return D.relabeled()


# -- cabling -----------------------------------------------------------


def cable_crossing(
    code: Code,
    sign: int,
    copy,
    under_flips: Sequence[int],
    over_flips: Sequence[int],
) -> tuple[list[Code], list[int]]:
    """Replace one crossing by the grid of crossings between parallel copies.

    ``copy(label, k)`` names copy ``k`` of an edge; copy ``k`` runs ``k``
    steps to the left of its strand.  ``*_flips[k]`` is +1 when copy ``k``
    keeps the strand's direction.
    """
    a, b, c, d = code
    wu, wo = len(under_flips), len(over_flips)
    if wu == 0 or wo == 0:
        return [], []
    s_o = 1 if sign > 0 else -1
    ys = sorted(range(wo), key=lambda j: s_o * j)
    xs = sorted(range(wu), key=lambda k: -k)
    vert: dict[tuple[int, int], tuple[int, int]] = {}
    for k in range(wu):
        segs = [copy(a, k)] + [copy((code, "u", k), m) for m in range(1, wo)] + [copy(c, k)]
        for m, j in enumerate(ys):
            vert[(k, j)] = (segs[m], segs[m + 1])
    horiz: dict[tuple[int, int], tuple[int, int]] = {}
    for j in range(wo):
        segs = [copy(d, j)] + [copy((code, "o", j), m) for m in range(1, wu)] + [copy(b, j)]
        for m, k in enumerate(xs):
            horiz[(k, j)] = (segs[m], segs[m + 1])
    codes, signs = [], []
    for k in range(wu):
        for j in range(wo):
            s_lab, n_lab = vert[(k, j)]
            w_lab, e_lab = horiz[(k, j)]
            over_we = (sign > 0) == (over_flips[j] > 0)
            cd, sg = emit(s_lab, e_lab, n_lab, w_lab, under_flips[k] > 0, over_we)
            codes.append(cd)
            signs.append(sg)
    return codes, signs


class _Copies:
    def __init__(self, new: Labels):
        self.new = new
        self.table: dict = {}

    def __call__(self, lab, k: int) -> int:
        key = (lab, k)
        if key not in self.table:
            self.table[key] = self.new()
        return self.table[key]


@dataclass(frozen=True)
class CableTangle:
    """Crossings and endpoints of a cabled string link whose copies may run downwards."""

    crossings: tuple[Code, ...]
    signs: tuple[int, ...]
    bottom: tuple[int, ...]
    top: tuple[int, ...]


def cable_string_link(
    J: StringLinkDiagram, widths: Sequence[int], zero_framed: bool = True
) -> StringLinkDiagram:
    """0-framed cable with every copy oriented like its strand."""
    T = cable_tangle(J, widths, None, zero_framed)
    if not T.bottom:
        raise DiagramError("cable of every strand is empty")
    return StringLinkDiagram(len(T.bottom), T.crossings, T.signs, T.bottom, T.top, name=J.name)


def cable_tangle(
    J: StringLinkDiagram,
    widths: Sequence[int],
    flips: Sequence[Sequence[int]] | None = None,
    zero_framed: bool = True,
) -> CableTangle:
    """Replace strand i by ``widths[i]`` parallel copies.

    Copies of strand i appear left to right as copy ``w-1, ..., 0`` at
    both ends.  ``flips[i][k] = -1`` reverses copy k.  With ``zero_framed``
    the blackboard framing is corrected by ``-writhe`` full twists at the
    bottom of each bundle, so that copies of one strand have linking
    number zero in the closure.
    """
    if len(widths) != J.strands:
        raise DiagramError(f"need {J.strands} widths, got {len(widths)}")
    if any(w < 0 for w in widths):
        raise DiagramError("cable widths must be non-negative")
    if flips is None:
        flips = [[1] * w for w in widths]
    flips = [list(f) for f in flips]
    for f, w in zip(flips, widths):
        if len(f) != w:
            raise DiagramError("one flip per copy is required")
    new = Labels()
    copy = _Copies(new)
    of = J.strand_of
    codes: list[Code] = []
    signs: list[int] = []
    # a crossing with an empty strand disappears; the other strand runs straight through
    through = Glue()
    for code, sign in zip(J.crossings, J.signs):
        cu, co = of[code[0]], of[code[1]]
        cs, ss = cable_crossing(code, sign, copy, flips[cu], flips[co])
        codes += cs
        signs += ss
        if not cs:
            a, b, c, d = code
            for k in range(widths[cu]):
                through.union(copy(a, k), copy(c, k))
            for j in range(widths[co]):
                through.union(copy(d, j), copy(b, j))
    codes = through.apply(codes)
    bottom: list[int] = []
    top: list[int] = []
    for i in range(J.strands):
        w = widths[i]
        order = list(range(w - 1, -1, -1))
        tops = [through.find(copy(J.top[i], k)) for k in order]
        bots = [through.find(copy(J.bottom[i], k)) for k in order]
        twist = -J.strand_writhe(i) if zero_framed else 0
        word = full_twists(w, twist)
        if word:
            ups = [flips[i][k] > 0 for k in order]
            inputs = [new() for _ in order]
            bc, bs, outs, _ = braid_box(inputs, ups, word, new)
            glue = Glue()
            for out, b in zip(outs, bots):
                glue.union(b, out)
            codes = glue.apply(codes)
            bc = glue.apply(bc)
            tops = [glue.find(t) for t in tops]
            codes += bc
            signs += bs
            bots = inputs
        bottom += bots
        top += tops
    return CableTangle(tuple(codes), tuple(signs), tuple(bottom), tuple(top))


def cable(D: LinkDiagram, component: int, copies: int) -> LinkDiagram:
    """0-framed ``copies``-cable of one component; ``copies == 0`` deletes it."""
    D._check_component(component)
    if copies < 0:
        raise DiagramError("number of copies must be non-negative")
    if copies == 0:
        keep = [k for k in range(D.num_components) if k != component]
        if not keep:
            raise DiagramError("cannot delete the only component")
        return D.sublink(keep).relabeled()
    new = Labels()
    copy = _Copies(new)
    of = D.component_of
    widths = [copies if k == component else 1 for k in range(D.num_components)]
    codes: list[Code] = []
    signs: list[int] = []
    for code, sign in zip(D.crossings, D.signs):
        cu, co = of[code[0]], of[code[1]]
        cs, ss = cable_crossing(code, sign, copy, [1] * widths[cu], [1] * widths[co])
        codes += cs
        signs += ss
    loops = []
    for lab in D.loops:
        for k in range(widths[of[lab]]):
            loops.append(copy(lab, k))
    first = D.components[component][0]
    twist = -D.writhe(component)
    word = full_twists(copies, twist)
    if word and first not in D.loops:
        order = list(range(copies - 1, -1, -1))
        inputs = [copy(first, k) for k in order]
        bc, bs, outs, _ = braid_box(inputs, [True] * copies, word, new)
        # the head ends of the first edge's copies now attach to the box
        heads = {copy(first, k): out for k, out in zip(order, outs)}
        fixed = []
        for cd, sg in zip(codes, signs):
            hu, ho = head_slots(sg)
            cd = list(cd)
            for p in (hu, ho):
                if cd[p] in heads:
                    cd[p] = heads[cd[p]]
            fixed.append(tuple(cd))
        codes = fixed + bc
        signs = signs + bs
    starts = []
    for k, comp in enumerate(D.components):
        for j in range(widths[k]):
            starts.append(copy(comp[0], j))
    out = LinkDiagram.from_oriented(codes, signs, loops, first_edges=starts, name=D.name)
    return out.relabeled()


def _cut_knot(D: LinkDiagram, name: str | None) -> StringLinkDiagram:
    if D.loops:
        return StringLinkDiagram(1, (), (), (1,), (1,), name=name or D.name)
    e = D.components[0][0]
    top_label = max(D.components[0])
    codes = [list(c) for c in D.crossings]
    ti, tp = D.tail_slot(e)
    hi, hp = D.head_slot(e)
    codes[ti][tp] = top_label + 2
    codes[hi][hp] = top_label + 1
    return StringLinkDiagram(
        1,
        tuple(tuple(c) for c in codes),
        D.signs,
        (top_label + 1,),
        (top_label + 2,),
        name=name if name is not None else D.name,
    )


def cut_open(D: LinkDiagram, name: str | None = None) -> StringLinkDiagram:
    """A string link whose closure is the one- or two-component diagram ``D``.

    A knot is cut on its first edge.  Two components are cut on edges
    bordering one common face, and the closing arcs run through that face.
    """
    if D.num_components == 1:
        return _cut_knot(D, name)
    if D.num_components != 2:
        raise DiagramError("cut_open handles diagrams with one or two components")
    if D.loops:
        raise DiagramError("cut_open needs every component to have crossings")
    of = D.component_of
    choice = None
    for bound in D.faces.boundary:
        first = {}
        for lab, along in bound:
            first.setdefault(of[lab], (lab, along))
        if len(first) == 2:
            choice = (first[0], first[1])
            break
    if choice is None:
        raise DiagramError("no face touches both components; the diagram is split")
    (e1, along1), (e2, along2) = choice
    # strand 1 runs with the face on its right, strand 2 with it on its left
    flags = (1 if along1 else -1, -1 if along2 else 1)
    E = D.reversed([k for k in range(2) if flags[k] < 0])
    top_label = max(lab for comp in E.components for lab in comp)
    codes = [list(c) for c in E.crossings]
    bottom, top = [], []
    for n, e in enumerate((e1, e2)):
        b, t = top_label + 2 * n + 1, top_label + 2 * n + 2
        ti, tp = E.tail_slot(e)
        hi, hp = E.head_slot(e)
        codes[ti][tp] = t
        codes[hi][hp] = b
        bottom.append(b)
        top.append(t)
    return StringLinkDiagram(
        2,
        tuple(tuple(c) for c in codes),
        E.signs,
        tuple(bottom),
        tuple(top),
        flags,
        name=name if name is not None else D.name,
    )
