"""Multi-infection of a link diagram by a string link.

The multi-disk is drawn as a thin band along a path that starts in some
face, crosses the listed edges one after another and ends in a face.  The
band is split into consecutive sub-bands, one per site, and the strands of
the site cross that sub-band.  Infection cuts every listed edge where it
crosses the band and splices in the cable of the string link: strand ``i``
of the string link is cabled once per edge of site ``i``.

Tangle coordinates: the bottom of the tangle lies on the right of the
path, the top on its left, and positions run along the path.  An edge
crossing the path from right to left (direction +1) enters the tangle from
the bottom.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

from ._planar import Glue
from .diagram import DiagramError, LinkDiagram
from .tangle import StringLinkDiagram, cable_tangle


@dataclass(frozen=True)
class SiteStrand:
    component: int  # 0-based component of the pattern
    edge: int  # PD edge label of the pattern diagram
    direction: int | None = None  # +1: crosses the band right to left


@dataclass(frozen=True)
class MultiDiskPattern:
    pattern: LinkDiagram
    sites: tuple[tuple[SiteStrand, ...], ...]
    eta_diagram: LinkDiagram | None = None
    eta_components: tuple[int, ...] = ()
    name: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "sites", tuple(tuple(s) for s in self.sites))
        if not self.sites:
            raise DiagramError("a multi-disk needs at least one sub-disk")
        seen = set()
        comp_of = self.pattern.component_of
        for site in self.sites:
            for s in site:
                if s.edge not in comp_of:
                    raise DiagramError(f"edge {s.edge} is not an edge of the pattern")
                if comp_of[s.edge] != s.component:
                    raise DiagramError(
                        f"edge {s.edge} belongs to component {comp_of[s.edge] + 1}, "
                        f"not {s.component + 1}"
                    )
                if s.direction not in (None, 1, -1):
                    raise DiagramError("site directions must be +1 or -1")
                if s.edge in seen:
                    raise DiagramError(f"edge {s.edge} appears twice in the sites")
                seen.add(s.edge)
        if self.eta_diagram is not None:
            for k in self.eta_components:
                self.eta_diagram._check_component(k)

    @property
    def r(self) -> int:
        return len(self.sites)

    @property
    def widths(self) -> list[int]:
        return [len(s) for s in self.sites]

    @property
    def strands(self) -> list[SiteStrand]:
        return [s for site in self.sites for s in site]

    def resolved_directions(self) -> list[int]:
        return band_directions(self.pattern, self.strands)


class _FaceClasses:
    """Identifications of faces of different pieces (which face holds which piece)."""

    def __init__(self, piece_of_face: Sequence[int]):
        self.piece_of_face = piece_of_face
        self.parent: dict[int, int] = {}
        self.members: dict[int, dict[int, int]] = {}

    def find(self, f: int) -> int:
        self.parent.setdefault(f, f)
        self.members.setdefault(f, {self.piece_of_face[f]: f})
        while self.parent[f] != f:
            self.parent[f] = self.parent[self.parent[f]]
            f = self.parent[f]
        return f

    def copy(self) -> _FaceClasses:
        other = _FaceClasses(self.piece_of_face)
        other.parent = dict(self.parent)
        other.members = {k: dict(v) for k, v in self.members.items()}
        return other

    def same(self, f: int, g: int) -> bool:
        return self.find(f) == self.find(g)

    def join(self, f: int, g: int) -> None:
        a, b = self.find(f), self.find(g)
        if a == b:
            return
        ma, mb = self.members[a], self.members[b]
        for piece, face in mb.items():
            if piece in ma and ma[piece] != face:
                raise DiagramError(
                    "the band path places a diagram piece in two different faces"
                )
        self.parent[b] = a
        ma.update(mb)


def band_directions(D: LinkDiagram, strands: Sequence[SiteStrand]) -> list[int]:
    """Directions of the listed edges along one band path, checking the path exists.

    Undeclared directions are chosen by a depth-first search over the two
    sides of each edge.
    """
    if not strands:
        return []
    F = D.faces
    failure: list[str] = []

    slot = {}
    for f, bound in enumerate(F.boundary):
        for idx, occ in enumerate(bound):
            slot[occ] = idx

    def crosses(face: int, a: int, b: int, chords: tuple) -> bool:
        lo, hi = min(a, b), max(a, b)
        for g, c, d in chords:
            if g == face and (lo < c < hi) != (lo < d < hi):
                return True
        return False

    def search(
        p: int, current: int | None, classes: _FaceClasses, entry: int | None, chords: tuple
    ) -> list[int] | None:
        if p == len(strands):
            return []
        s = strands[p]
        e = s.edge
        left, right = F.left[e], F.right[e]
        if current is None:
            options = [1, -1]
        else:
            options = []
            if classes.same(current, left):
                options.append(1)
            if classes.same(current, right):
                options.append(-1)
            if not options:
                if F.piece_of_face[current] == F.piece_of_face[left]:
                    failure.append(
                        f"edge {e} (site strand {p + 1}) does not border the face reached "
                        "after the previous strand"
                    )
                    return None
                # entering another piece: it sits inside the current face
                options = [s.direction] if s.direction is not None else [1, -1]
        if s.direction is not None:
            if s.direction not in options:
                failure.append(f"declared direction {s.direction:+d} of edge {e} does not fit the band path")
                return None
            options = [s.direction]
        for d in options:
            trial = classes.copy()
            exit_face = left if d > 0 else right
            more = chords
            if current is not None and not (trial.same(current, left) or trial.same(current, right)):
                try:
                    trial.join(current, exit_face)
                except DiagramError as exc:
                    failure.append(str(exc))
                    continue
            elif entry is not None and current == exit_face:
                # the band's segment across this face must miss its earlier segments
                a, b = entry, slot[(e, d < 0)]
                if crosses(exit_face, a, b, chords):
                    failure.append(f"the band path crosses itself before edge {e} (site strand {p + 1})")
                    continue
                more = chords + ((exit_face, a, b),)
            rest = search(p + 1, right if d > 0 else left, trial, slot[(e, d > 0)], more)
            if rest is not None:
                return [d] + rest
        return None

    found = search(0, None, _FaceClasses(F.piece_of_face), None, ())
    if found is None:
        raise DiagramError(failure[0] if failure else "no band path crosses the listed edges")
    return found


def multi_infect(P: MultiDiskPattern, J: StringLinkDiagram) -> LinkDiagram:
    """Tie the 0-framed cable of ``J`` into the pattern along the multi-disk."""
    if J.strands != P.r:
        raise DiagramError(f"string link has {J.strands} strands but the multi-disk has {P.r} sub-disks")
    L = P.pattern
    strands = P.strands
    if not strands:
        return L
    dirs = band_directions(L, strands)

    top_label = max(lab for comp in L.components for lab in comp)
    fresh = iter(range(top_label + 1, 10**9))
    codes = [list(c) for c in L.crossings]
    halves = []
    for s in strands:
        e = s.edge
        if e in L.loops:
            lab = next(fresh)
            halves.append((lab, lab))
            continue
        t_lab, h_lab = next(fresh), next(fresh)
        ti, tp = L.tail_slot(e)
        hi, hp = L.head_slot(e)
        codes[ti][tp] = t_lab
        codes[hi][hp] = h_lab
        halves.append((t_lab, h_lab))

    # copy k of strand i sits at position (w - 1 - k) of its group
    flips = []
    at = 0
    for w in P.widths:
        group = dirs[at : at + w]
        flips.append([group[w - 1 - k] for k in range(w)])
        at += w
    C = cable_tangle(J, P.widths, flips)
    shift = next(fresh)
    c_codes = [[v + shift for v in c] for c in C.crossings]
    bottom = [v + shift for v in C.bottom]
    top = [v + shift for v in C.top]

    glue = Glue()
    for p, ((t_lab, h_lab), d) in enumerate(zip(halves, dirs)):
        if d > 0:
            glue.union(t_lab, bottom[p])
            glue.union(h_lab, top[p])
        else:
            glue.union(t_lab, top[p])
            glue.union(h_lab, bottom[p])
    all_codes = glue.apply(codes + c_codes)
    signs = list(L.signs) + list(C.signs)

    cut_tail = {s.edge: halves[p][0] for p, s in enumerate(strands)}
    first = [glue.find(cut_tail.get(comp[0], comp[0])) for comp in L.components]
    used = {v for c in all_codes for v in c}
    loops = []
    for f in first:
        if f not in used:
            loops.append(f)
    out = LinkDiagram.from_oriented(all_codes, signs, loops, first_edges=first, name=L.name)
    return out.relabeled()

