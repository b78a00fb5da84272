"""Oriented link diagrams stored as planar-diagram (PD) crossing lists.

A crossing is a 4-tuple ``(a, b, c, d)`` of edge labels in the usual
KnotTheory convention: ``a`` is the incoming under-edge and the remaining
labels follow counterclockwise, so the under-strand runs ``a -> c``.  A
positive (right-handed) crossing has its over-strand running ``d -> b``.

Components without any crossing are kept separately as *loops*.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

Code = tuple[int, int, int, int]


class DiagramError(ValueError):
    """Raised for inconsistent or unrealizable diagram data."""


class DiagramSyntaxError(DiagramError):
    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


def head_slots(sign: int) -> tuple[int, int]:
    """Slots (of a PD tuple) where the under- and over-strand enter."""
    return (0, 3) if sign > 0 else (0, 1)


def tail_slots(sign: int) -> tuple[int, int]:
    return (2, 1) if sign > 0 else (2, 3)


def crossing_sign(code: Code, over_in: int) -> int:
    """Sign of an oriented PD crossing given the label where the over-strand enters."""
    if over_in == code[3]:
        return 1
    if over_in == code[1]:
        return -1
    raise DiagramError(f"label {over_in} is not on the over-strand of {code}")


@dataclass(frozen=True)
class LinkDiagram:
    """An oriented link diagram.

    ``components`` lists the edge labels of each component in traversal
    order; ``loops`` are the labels of crossingless components, which are
    also listed (as one-edge components) in ``components``.
    """

    crossings: tuple[Code, ...]
    signs: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    loops: tuple[int, ...] = ()
    name: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if len(self.signs) != len(self.crossings):
            raise DiagramError("one sign per crossing is required")
        self._validate()

    # -- construction -------------------------------------------------

    @classmethod
    def from_pd(
        cls,
        codes: Iterable[Sequence[int]],
        loops: Iterable[int] = (),
        *,
        name: str | None = None,
    ) -> LinkDiagram:
        """Build a diagram from PD tuples, inferring strand orientations.

        Under-strands are oriented by the PD convention.  Over-strands get
        their direction by propagation along components; components that
        never pass under anything fall back on the label numbering
        (labels increase along the orientation).
        """
        codes = [tuple(int(v) for v in c) for c in codes]
        for c in codes:
            if len(c) != 4:
                raise DiagramError(f"crossing {c} does not have 4 entries")
        loops = tuple(int(v) for v in loops)
        occ: dict[int, list[tuple[int, int]]] = defaultdict(list)
        for i, c in enumerate(codes):
            for p, lab in enumerate(c):
                occ[lab].append((i, p))
        for lab, where in occ.items():
            if len(where) != 2:
                raise DiagramError(
                    f"inconsistent PD code: label {lab} appears {len(where)} time(s)"
                )
        for lab in loops:
            if lab in occ:
                raise DiagramError(f"loop label {lab} also used by a crossing")
        if len(set(loops)) != len(loops):
            raise DiagramError("repeated loop label")

        # enters[(i, p)] = True if the strand enters crossing i through slot p
        enters: dict[tuple[int, int], bool] = {}

        def assign(slot: tuple[int, int], value: bool, queue: list) -> None:
            old = enters.get(slot)
            if old is None:
                enters[slot] = value
                queue.append(slot)
            elif old != value:
                raise DiagramError("PD code has no consistent orientation")

        def propagate(queue: list) -> None:
            while queue:
                i, p = queue.pop()
                value = enters[(i, p)]
                # the opposite slot of the same strand has the opposite role
                assign((i, (p + 2) % 4), not value, queue)
                # the other end of the same edge has the opposite role
                lab = codes[i][p]
                for other in occ[lab]:
                    if other != (i, p):
                        assign(other, not value, queue)

        queue: list = []
        for i in range(len(codes)):
            assign((i, 0), True, queue)
        propagate(queue)
        for i, c in enumerate(codes):
            if (i, 1) in enters:
                continue
            b, d = c[1], c[3]
            if d == b + 1:
                b_in = True
            elif b == d + 1:
                b_in = False
            else:
                # wrap-around edge: the larger label closes the cycle
                b_in = b > d
            assign((i, 1), b_in, queue)
            propagate(queue)

        signs = tuple(1 if enters[(i, 3)] else -1 for i in range(len(codes)))
        components = _trace_components(codes, signs)
        components += [(lab,) for lab in loops]
        components.sort(key=min)
        return cls(tuple(codes), signs, tuple(components), loops, name=name)

    @classmethod
    def from_oriented(
        cls,
        codes: Iterable[Sequence[int]],
        signs: Iterable[int],
        loops: Iterable[int] = (),
        *,
        first_edges: Sequence[int] | None = None,
        name: str | None = None,
    ) -> LinkDiagram:
        """Build from crossings already in oriented PD form, with known signs.

        ``first_edges`` (one label per component) fixes both the component
        order and the traversal start of each component; otherwise the
        smallest-label rule applies.
        """
        codes = [tuple(int(v) for v in c) for c in codes]
        signs = tuple(int(s) for s in signs)
        loops = tuple(int(v) for v in loops)
        comps = _trace_components(codes, signs) + [(lab,) for lab in loops]
        if first_edges is None:
            comps.sort(key=min)
        else:
            by_edge = {}
            for comp in comps:
                for lab in comp:
                    by_edge[lab] = comp
            ordered = []
            for lab in first_edges:
                comp = by_edge.get(lab)
                if comp is None:
                    raise DiagramError(f"unknown start edge {lab}")
                k = comp.index(lab)
                ordered.append(comp[k:] + comp[:k])
            if sorted(map(min, ordered)) != sorted(map(min, comps)):
                raise DiagramError("start edges must pick each component exactly once")
            comps = ordered
        return cls(tuple(codes), signs, tuple(comps), loops, name=name)

    def _validate(self) -> None:
        seen: dict[int, int] = defaultdict(int)
        for c in self.crossings:
            for lab in c:
                seen[lab] += 1
        for lab, n in seen.items():
            if n != 2:
                raise DiagramError(f"label {lab} appears {n} time(s)")
        for s, c in zip(self.signs, self.crossings):
            if s not in (1, -1):
                raise DiagramError(f"bad sign {s}")
        labels = [lab for comp in self.components for lab in comp]
        if len(labels) != len(set(labels)):
            raise DiagramError("an edge is listed in two components")
        if set(labels) != set(seen) | set(self.loops):
            raise DiagramError("components do not partition the edges")
        # traversal order must follow the orientation
        nxt = self.successor
        for comp in self.components:
            if len(comp) == 1 and comp[0] in self.loops:
                continue
            for k, lab in enumerate(comp):
                if nxt[lab] != comp[(k + 1) % len(comp)]:
                    raise DiagramError("component traversal disagrees with orientation")

    # -- basic structure ----------------------------------------------

    @property
    def num_components(self) -> int:
        return len(self.components)

    @property
    def num_crossings(self) -> int:
        return len(self.crossings)

    @cached_property
    def component_of(self) -> dict[int, int]:
        """Edge label -> component index."""
        return {lab: k for k, comp in enumerate(self.components) for lab in comp}

    @cached_property
    def successor(self) -> dict[int, int]:
        """Edge label -> the edge that follows it along the orientation."""
        nxt = {}
        for c, s in zip(self.crossings, self.signs):
            hu, ho = head_slots(s)
            tu, to = tail_slots(s)
            nxt[c[hu]] = c[tu]
            nxt[c[ho]] = c[to]
        for lab in self.loops:
            nxt[lab] = lab
        return nxt

    @cached_property
    def occurrences(self) -> dict[int, tuple[tuple[int, int], ...]]:
        occ: dict[int, list[tuple[int, int]]] = defaultdict(list)
        for i, c in enumerate(self.crossings):
            for p, lab in enumerate(c):
                occ[lab].append((i, p))
        return {k: tuple(v) for k, v in occ.items()}

    def head_slot(self, lab: int) -> tuple[int, int] | None:
        """(crossing, slot) where edge ``lab`` ends, or None for a loop."""
        for i, p in self.occurrences.get(lab, ()):
            if p in head_slots(self.signs[i]):
                return i, p
        return None

    def tail_slot(self, lab: int) -> tuple[int, int] | None:
        for i, p in self.occurrences.get(lab, ()):
            if p in tail_slots(self.signs[i]):
                return i, p
        return None

    def strand_components(self, i: int) -> tuple[int, int]:
        """(under component, over component) of crossing ``i``."""
        c = self.crossings[i]
        return self.component_of[c[0]], self.component_of[c[1]]

    # -- numerical invariants -----------------------------------------

    def linking_number(self, i: int, j: int) -> int:
        if i == j:
            raise DiagramError("linking number needs two distinct components; use writhe")
        self._check_component(i)
        self._check_component(j)
        total = 0
        for k, s in enumerate(self.signs):
            under, over = self.strand_components(k)
            if under == i and over == j:
                total += s
        return total

    def writhe(self, component: int | None = None) -> int:
        """Signed self-crossing count of one component (all crossings if None)."""
        if component is None:
            return sum(self.signs)
        self._check_component(component)
        total = 0
        for k, s in enumerate(self.signs):
            under, over = self.strand_components(k)
            if under == over == component:
                total += s
        return total

    def linking_matrix(self) -> list[list[int]]:
        m = self.num_components
        mat = [[0] * m for _ in range(m)]
        for k, s in enumerate(self.signs):
            under, over = self.strand_components(k)
            if under != over:
                mat[under][over] += s
        return mat

    def _check_component(self, i: int) -> None:
        if not 0 <= i < self.num_components:
            raise DiagramError(f"component {i} out of range 0..{self.num_components - 1}")

    # -- planar structure ---------------------------------------------

    @cached_property
    def faces(self) -> FaceData:
        return _compute_faces(self)

    @cached_property
    def pieces(self) -> list[set[int]]:
        """Connected pieces of the diagram, as sets of component indices."""
        parent = list(range(self.num_components))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for k in range(self.num_crossings):
            a, b = self.strand_components(k)
            parent[find(a)] = find(b)
        groups: dict[int, set[int]] = defaultdict(set)
        for k in range(self.num_components):
            groups[find(k)].add(k)
        return sorted(groups.values(), key=min)

    # -- transformations ----------------------------------------------

    def relabeled(self) -> LinkDiagram:
        """Renumber edges 1..N consecutively along the components, in order."""
        new = {}
        for comp in self.components:
            for lab in comp:
                new[lab] = len(new) + 1
        codes = [tuple(new[v] for v in c) for c in self.crossings]
        loops = tuple(new[v] for v in self.loops)
        return LinkDiagram(
            tuple(codes),
            self.signs,
            tuple(tuple(new[v] for v in comp) for comp in self.components),
            loops,
            name=self.name,
        )

    def reversed(self, which: Iterable[int]) -> LinkDiagram:
        """Reverse the orientation of the given components."""
        which = set(which)
        for k in which:
            self._check_component(k)
        rev_edges = {lab for k in which for lab in self.components[k]}
        codes, signs = [], []
        for c, s in zip(self.crossings, self.signs):
            under_rev = c[0] in rev_edges
            over_rev = c[1] in rev_edges
            if under_rev:
                c = (c[2], c[3], c[0], c[1])
            if under_rev != over_rev:
                s = -s
            codes.append(c)
            signs.append(s)
        comps = []
        for k, comp in enumerate(self.components):
            if k in which and len(comp) > 1:
                comp = (comp[0],) + tuple(reversed(comp[1:]))
            comps.append(comp)
        return LinkDiagram(tuple(codes), tuple(signs), tuple(comps), self.loops, name=self.name)

    def mirror(self) -> LinkDiagram:
        """Mirror image: every crossing switched."""
        codes, signs = [], []
        for c, s in zip(self.crossings, self.signs):
            # the old over-strand becomes the under-strand, entering at its head
            if s > 0:
                codes.append((c[3], c[0], c[1], c[2]))
            else:
                codes.append((c[1], c[2], c[3], c[0]))
            signs.append(-s)
        return LinkDiagram(tuple(codes), tuple(signs), self.components, self.loops, name=self.name)

    def sublink(self, keep: Sequence[int]) -> LinkDiagram:
        """Delete every component not in ``keep`` (order of ``keep`` is kept)."""
        for k in keep:
            self._check_component(k)
        keep_edges = {lab for k in keep for lab in self.components[k]}
        # union-find merges the edges that meet at a deleted crossing
        parent: dict[int, int] = {lab: lab for lab in keep_edges}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        codes, signs = [], []
        for c, s in zip(self.crossings, self.signs):
            u_keep = c[0] in keep_edges
            o_keep = c[1] in keep_edges
            if u_keep and o_keep:
                codes.append(c)
                signs.append(s)
            elif u_keep:
                parent[find(c[2])] = find(c[0])
            elif o_keep:
                parent[find(c[3])] = find(c[1])
        codes = [tuple(find(v) for v in c) for c in codes]
        used = {v for c in codes for v in c}
        loops = []
        starts = []
        for k in keep:
            reps = [find(lab) for lab in self.components[k]]
            if not any(r in used for r in reps):
                loops.append(reps[0])
                starts.append(reps[0])
            else:
                starts.append(next(r for r in reps if r in used))
        d = LinkDiagram.from_oriented(codes, signs, loops, first_edges=starts, name=self.name)
        return d

    # -- text ---------------------------------------------------------

    def pd_text(self) -> str:
        parts = [f"X[{a},{b},{c},{d}]" for a, b, c, d in self.crossings]
        parts += [f"Loop[{lab}]" for lab in self.loops]
        return "PD[" + ",".join(parts) + "]"

    def canonical_text(self) -> str:
        """PD text plus component labels, e.g. ``PD[...] COMPONENTS[[1,2],[3,4]]``."""
        comps = ",".join("[" + ",".join(map(str, comp)) + "]" for comp in self.components)
        return f"{self.pd_text()} COMPONENTS[{comps}]"

    def __str__(self) -> str:
        return self.pd_text()


def _trace_components(codes: Sequence[Code], signs: Sequence[int]) -> list[tuple[int, ...]]:
    nxt = {}
    for c, s in zip(codes, signs):
        hu, ho = head_slots(s)
        tu, to = tail_slots(s)
        if c[hu] in nxt or c[ho] in nxt:
            raise DiagramError("an edge enters two crossings")
        nxt[c[hu]] = c[tu]
        nxt[c[ho]] = c[to]
    if sorted(nxt.values()) != sorted(nxt):
        raise DiagramError("PD code has no consistent orientation")
    seen: set[int] = set()
    comps = []
    for start in sorted(nxt):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        cur = nxt[start]
        while cur != start:
            if cur in seen:
                raise DiagramError("edge reached twice while tracing a component")
            comp.append(cur)
            seen.add(cur)
            cur = nxt[cur]
        comps.append(tuple(comp))
    return comps


@dataclass
class FaceData:
    """Faces of each connected piece, traced with the face on the right.

    ``left[e]`` / ``right[e]`` give the face on either side of edge ``e``
    with respect to its orientation.  ``boundary[f]`` lists, for face
    ``f``, the edges around it as ``(label, along)`` where ``along`` is
    True when the edge's orientation agrees with the traversal.
    """

    left: dict[int, int]
    right: dict[int, int]
    boundary: list[list[tuple[int, bool]]]
    piece_of_face: list[int]


def _compute_faces(D: LinkDiagram) -> FaceData:
    occ = D.occurrences
    tails = {}
    for i, s in enumerate(D.signs):
        for p in tail_slots(s):
            tails[(i, p)] = True
    face_of_dart: dict[tuple[int, int], int] = {}
    boundary: list[list[tuple[int, bool]]] = []
    left: dict[int, int] = {}
    right: dict[int, int] = {}
    piece_index = {}
    for n, piece in enumerate(D.pieces):
        for k in piece:
            piece_index[k] = n
    piece_of_face: list[int] = []
    for i in range(D.num_crossings):
        for p in range(4):
            if (i, p) in face_of_dart:
                continue
            f = len(boundary)
            boundary.append([])
            piece_of_face.append(piece_index[D.component_of[D.crossings[i][0]]])
            dart = (i, p)
            while dart not in face_of_dart:
                face_of_dart[dart] = f
                x, q = dart
                lab = D.crossings[x][q]
                along = (x, q) in tails
                boundary[f].append((lab, along))
                # the face is on the right of the traversal
                if along:
                    right[lab] = f
                else:
                    left[lab] = f
                a, b = occ[lab]
                y, r = b if a == (x, q) else a
                dart = (y, (r + 1) % 4)
    for piece in D.pieces:
        comps = sorted(piece)
        if len(comps) == 1 and D.components[comps[0]][0] in D.loops:
            lab = D.components[comps[0]][0]
            for side in (left, right):
                side[lab] = len(boundary)
                boundary.append([(lab, side is right)])
                piece_of_face.append(piece_index[comps[0]])
    # Euler characteristic check per piece: V - E + F = 2
    for n, piece in enumerate(D.pieces):
        comp_edges = {lab for k in piece for lab in D.components[k]}
        if any(lab in D.loops for lab in comp_edges):
            continue
        v = sum(1 for i in range(D.num_crossings) if D.component_of[D.crossings[i][0]] in piece)
        f = sum(1 for m in piece_of_face if m == n)
        if v - 2 * v + f != 2:
            raise DiagramError("non-planar PD code (Euler characteristic check failed)")
    return FaceData(left, right, boundary, piece_of_face)
