"""Turning a diagram into a closed braid by Vogel's Reidemeister II moves.

A face bordered by two edges from different Seifert circles that both
have the face on the same side admits a move: push one edge over the
other across the face.  When no such face remains, the Seifert circles
are concentric and coherently oriented, and the braid word is read off
by walking the circles in a common angular order.
"""

from __future__ import annotations

from collections import defaultdict
from heapq import heappop, heappush

from .diagram import DiagramError, LinkDiagram, head_slots


def seifert_circles(D: LinkDiagram) -> list[list[int]]:
    """Edge cycles of the oriented smoothing (loops are their own circles)."""
    nxt = {}
    for c, s in zip(D.crossings, D.signs):
        a, b, cc, d = c
        if s > 0:
            nxt[a], nxt[d] = b, cc
        else:
            nxt[a], nxt[b] = d, cc
    for lab in D.loops:
        nxt[lab] = lab
    seen = set()
    circles = []
    for comp in D.components:
        for lab in comp:
            if lab in seen:
                continue
            cyc = []
            cur = lab
            while cur not in seen:
                seen.add(cur)
                cyc.append(cur)
                cur = nxt[cur]
            circles.append(cyc)
    return circles


def _admissible_move(D: LinkDiagram):
    circle_of = {lab: n for n, cyc in enumerate(seifert_circles(D)) for lab in cyc}
    F = D.faces
    for f, bound in enumerate(F.boundary):
        # ``along`` means the face lies on the edge's right
        for x in range(len(bound)):
            for y in range(x + 1, len(bound)):
                (e1, s1), (e2, s2) = bound[x], bound[y]
                if e1 != e2 and s1 == s2 and circle_of[e1] != circle_of[e2]:
                    return e1, e2, ("right" if s1 else "left")
    return None


def _apply_move(D: LinkDiagram, e1: int, e2: int, side: str) -> LinkDiagram:
    top = max(lab for comp in D.components for lab in comp)
    e1a, e1b, e1c, e2a, e2b, e2c = range(top + 1, top + 7)
    codes = [list(c) for c in D.crossings]
    for e, pa, pc in ((e1, e1a, e1c), (e2, e2a, e2c)):
        t = D.tail_slot(e)
        h = D.head_slot(e)
        codes[t[0]][t[1]] = pa
        codes[h[0]][h[1]] = pc
    signs = list(D.signs)
    if side == "left":
        codes += [[e2a, e1b, e2b, e1c], [e2b, e1b, e2c, e1a]]
        signs += [-1, 1]
    else:
        codes += [[e2a, e1c, e2b, e1b], [e2b, e1a, e2c, e1b]]
        signs += [1, -1]
    first = []
    for comp in D.components:
        lab = comp[0]
        first.append(e1a if lab == e1 else e2a if lab == e2 else lab)
    return LinkDiagram.from_oriented(
        [tuple(c) for c in codes], signs, D.loops, first_edges=first, name=D.name
    )


def braided_form(D: LinkDiagram, max_moves: int | None = None) -> LinkDiagram:
    """Apply Vogel moves until the diagram is a closed braid (one piece at a time)."""
    if len(D.pieces) > 1:
        raise DiagramError("braided_form expects a connected diagram; split it first")
    limit = max_moves if max_moves is not None else 4 * D.num_crossings ** 2 + 50
    for _ in range(limit):
        move = _admissible_move(D)
        if move is None:
            return D
        D = _apply_move(D, *move)
    raise DiagramError("Vogel moves did not terminate within the move limit")


def braid_word(D: LinkDiagram) -> tuple[int, list[int]]:
    """``(strands, word)`` with the closure of the word isotopic to the connected diagram ``D``."""
    if not D.crossings:
        return 1, []
    B = braided_form(D)
    circles = seifert_circles(B)
    circle_of = {lab: n for n, cyc in enumerate(circles) for lab in cyc}
    touches: dict[int, list[int]] = defaultdict(list)
    links = []
    for i, (c, s) in enumerate(zip(B.crossings, B.signs)):
        inc = (c[0], c[3]) if s > 0 else (c[0], c[1])
        pair = (circle_of[inc[0]], circle_of[inc[1]])
        if pair[0] == pair[1]:
            raise DiagramError("crossing joins a Seifert circle to itself")
        links.append(pair)
        touches[pair[0]].append(pair[1])
        touches[pair[1]].append(pair[0])
    n = len(circles)
    ends = [k for k in range(n) if len(set(touches[k])) <= 1]
    if any(len(set(touches[k])) > 2 for k in range(n)) or not ends:
        raise DiagramError("Seifert circles are not nested in a chain")
    order = [ends[0]]
    while len(order) < n:
        nxt = [k for k in set(touches[order[-1]]) if k not in order]
        if len(nxt) != 1:
            raise DiagramError("Seifert circles are not nested in a chain")
        order.append(nxt[0])
    level = {k: j for j, k in enumerate(order)}
    column = [min(level[a], level[b]) for a, b in links]

    # crossings met along each circle, in traversal order
    head_crossing = {}
    for i, (c, s) in enumerate(zip(B.crossings, B.signs)):
        for p in head_slots(s):
            head_crossing[c[p]] = i
    seq = []
    for k in order:
        seq.append([head_crossing[lab] for lab in circles[k]])

    # rotate every circle so that all cuts lie on one ray
    for j in range(1, n):
        shared = [i for i in seq[j - 1] if column[i] == j - 1]
        last = shared[-1]
        pos = seq[j].index(last)
        seq[j] = seq[j][pos + 1 :] + seq[j][: pos + 1]
        mine = [i for i in seq[j] if column[i] == j - 1]
        if mine != shared:
            raise DiagramError("Seifert circles are not coherently oriented")

    # merge the per-circle orders into one word
    succ: dict[int, set[int]] = defaultdict(set)
    indeg = [0] * len(B.crossings)
    for s_ in seq:
        for u, v in zip(s_, s_[1:]):
            if v not in succ[u]:
                succ[u].add(v)
                indeg[v] += 1
    heap = [i for i in range(len(B.crossings)) if indeg[i] == 0]
    heap.sort()
    word = []
    while heap:
        u = heappop(heap)
        word.append((column[u] + 1) * B.signs[u])
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                heappush(heap, v)
    if len(word) != len(B.crossings):
        raise DiagramError("crossing orders along the Seifert circles are inconsistent")
    return n, word
