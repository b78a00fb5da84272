"""Generated 2-strand string links whose Milnor invariants vanish to a known length.

Both families band strands 2 and 3 of a pure 3-braid together (a cup
below the braid, a cap above it), which leaves a 2-strand string link.
``A_ij`` is the pure braid generator in which strand ``j`` circles
strand ``i``.

``whitehead-iterate``, level ``k``: the braid ``[A12, [A12, ... [A12,
A23]]]`` with ``2k - 1`` brackets.  Level 1 closes to the Whitehead link;
level 0 is the Hopf string link ``A12``.

``bing-style``, level ``k``: ``d_1 = [A12, A23]`` (the Borromean braid)
and ``d_{k+1} = [d_k, A13 d_k A13^-1]``.

The vanishing length of each member is measured by the Milnor engine,
never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._planar import Glue, Labels, braid_box, emit, full_twists, trace_geometric
from .diagram import Code, DiagramError, LinkDiagram
from .magnus import DEFAULT_DEGREE_CAP
from .milnor import first_nonvanishing_length
from .tangle import (
    StringLinkDiagram,
    _Copies,
    cable_crossing,
    closure,
    from_braid,
    from_morse_word,
    morse_geometry,
)

FAMILY_KINDS = ("whitehead-iterate", "bing-style")


def _clasp(bottom_left: int, bottom_right: int, clasp: int, new: Labels):
    """Clasp box: the two bottom ends are joined by an arc hooked through the arc joining the tops.

    The strand enters at the bottom right and at the top left.  Returns
    crossings, signs and the two top labels.
    """
    pos = [bottom_left, bottom_right]
    glue = Glue()
    geo = morse_geometry(pos, [("cup", 2), clasp, 3 * clasp, ("cap", 2)], new, glue)
    geo = glue.apply(geo)
    top = [glue.find(p) for p in pos]
    ends = {bottom_left: 1, bottom_right: 1, top[0]: 1, top[1]: 1}
    up, we, _ = trace_geometric(geo, [(bottom_right, -1, -1), (top[0], -1, -1)], ends)
    codes, signs = [], []
    for g, u, o in zip(geo, up, we):
        cd, sg = emit(*g, u, o)
        codes.append(cd)
        signs.append(sg)
    return codes, signs, top


def whitehead_double(D: LinkDiagram, component: int, clasp: int = 1) -> LinkDiagram:
    """Untwisted Whitehead double of one component (``clasp`` = +1 or -1 picks the clasp)."""
    D._check_component(component)
    if clasp not in (1, -1):
        raise DiagramError("clasp must be +1 or -1")
    if D.components[component][0] in D.loops:
        raise DiagramError("the doubled component needs at least one crossing")
    new = Labels()
    copy = _Copies(new)
    of = D.component_of
    flips = {k: [1] for k in range(D.num_components)}
    flips[component] = [1, -1]

    candidates = [
        lab for lab in D.components[component] if D.head_slot(lab)[0] != D.tail_slot(lab)[0]
    ]
    if not candidates:
        raise DiagramError("the doubled component has no edge between distinct crossings")
    e0 = candidates[0]
    head_crossing = D.head_slot(e0)[0]

    codes: list[Code] = []
    signs: list[int] = []
    head_grid: list[int] = []
    for n, (code, sign) in enumerate(zip(D.crossings, D.signs)):
        cs, ss = cable_crossing(code, sign, copy, flips[of[code[0]]], flips[of[code[1]]])
        if n == head_crossing:
            head_grid = list(range(len(codes), len(codes) + len(cs)))
        codes += cs
        signs += ss

    # copy 1 runs on the left of copy 0 and against the component
    bundle = [copy(e0, 1), copy(e0, 0)]
    ups = [False, True]
    mid = [new(), new()]
    word = full_twists(2, -D.writhe(component))
    if word:
        bc, bs, outs, _ = braid_box(mid, ups, word, new)
        codes += bc
        signs += bs
    else:
        outs = list(mid)
    cc, cs, tops = _clasp(outs[0], outs[1], clasp, new)
    codes += cc
    signs += cs

    # the cable's copies of e0 now end at the crossings near the head of e0 ...
    heads = {bundle[0]: tops[0], bundle[1]: tops[1]}
    for n in head_grid:
        codes[n] = tuple(heads.get(v, v) for v in codes[n])
    # ... while the twist box and clasp start from the old tail side
    glue = Glue()
    glue.union(bundle[0], mid[0])
    glue.union(bundle[1], mid[1])
    codes = glue.apply(codes)

    loops = [copy(lab, 0) for lab in D.loops]
    first = [glue.find(copy(comp[0], 0)) for comp in D.components]
    out = LinkDiagram.from_oriented(codes, signs, loops, first_edges=first, name=D.name)
    return out.relabeled()


# -- families ------------------------------------------------------------

A12 = (1, 1)
A23 = (2, 2)
A13 = (2, 1, 1, -2)


def _inverse(w: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-g for g in reversed(w))


def braid_commutator(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return a + b + _inverse(a) + _inverse(b)


def banded_string_link(word: tuple[int, ...], name: str | None = None) -> StringLinkDiagram:
    """Band strands 2 and 3 of a pure 3-braid into one strand of a 2-strand string link."""
    return from_morse_word(2, [("cup", 3), *word, ("cap", 2)], name=name)


def family_braid(kind: str, level: int) -> tuple[int, ...]:
    if kind == "whitehead-iterate":
        w = A23
        for _ in range(2 * level - 1):
            w = braid_commutator(A12, w)
        return w
    if kind == "bing-style":
        w = braid_commutator(A12, A23)
        for _ in range(level - 1):
            w = braid_commutator(w, A13 + w + _inverse(A13))
        return w
    raise ValueError(f"unknown family {kind!r}; choose from {', '.join(FAMILY_KINDS)}")


@dataclass(frozen=True)
class FamilyMember:
    kind: str
    level: int
    string_link: StringLinkDiagram
    first_nonvanishing: int | None
    degree_cap: int
    crossings: int

    @property
    def vanishing_through(self) -> int:
        """Largest length through which every invariant was checked to vanish."""
        if self.first_nonvanishing is None:
            return self.degree_cap + 1
        return self.first_nonvanishing - 1

    def metadata(self) -> dict:
        meta = {
            "kind": self.kind,
            "level": self.level,
            "crossings": self.crossings,
            "vanishingThrough": self.vanishing_through,
            "firstNonvanishingLength": self.first_nonvanishing,
            "degreeCap": self.degree_cap,
        }
        if self.first_nonvanishing is None:
            meta["status"] = "vanishing through cap, first non-vanishing unknown"
        else:
            meta["status"] = "first non-vanishing length found"
        return meta


def gen_family(kind: str, level: int, cap: int | None = None) -> FamilyMember:
    """Build a family member and measure its first non-vanishing length with the Milnor engine."""
    cap = DEFAULT_DEGREE_CAP if cap is None else cap
    if kind not in FAMILY_KINDS:
        raise ValueError(f"unknown family {kind!r}; choose from {', '.join(FAMILY_KINDS)}")
    if level < 0 or (kind == "bing-style" and level < 1):
        raise ValueError(f"level {level} is not available for {kind}")
    name = f"{kind}-{level}"
    if level == 0:
        J = from_braid(2, A12, name=name)
    else:
        J = banded_string_link(family_braid(kind, level), name=name)
    L = closure(J)
    first = first_nonvanishing_length(L, cap)
    return FamilyMember(kind, level, J, first, cap, L.num_crossings)
