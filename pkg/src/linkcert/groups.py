"""Free words, Wirtinger presentations and 0-framed longitudes.

A letter is a non-zero integer: ``+i`` is generator ``i`` (1-based) and
``-i`` its inverse.  Words compose left to right, so ``x y`` means
"first x, then y" as loops.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .diagram import LinkDiagram


def free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for a in letters:
        if a == 0:
            raise ValueError("0 is not a letter")
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


@dataclass(frozen=True)
class FreeWord:
    """An element of a free group, stored as its freely reduced letter tuple."""

    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", free_reduce(self.letters))

    @classmethod
    def of(cls, *letters: int) -> FreeWord:
        return cls(tuple(letters))

    @classmethod
    def parse(cls, text: str) -> FreeWord:
        """Read words like ``"x1 x2 x1^-1"``, ``"1 2 -1"`` or ``"a b A B"``.

        Lower-case letters a..z stand for generators 1..26 and upper-case
        letters for their inverses.
        """
        letters: list[int] = []
        for tok in re.findall(r"[A-Za-z]\d+(?:\^-?\d+)?|-?\d+|[A-Za-z](?:\^-?\d+)?|\S", text):
            m = re.fullmatch(r"[A-Za-z](\d+)(?:\^(-?\d+))?", tok)
            if m:
                gen, exp = int(m.group(1)), int(m.group(2) or 1)
            elif re.fullmatch(r"-?\d+", tok):
                gen, exp = abs(int(tok)), (1 if int(tok) > 0 else -1)
            elif (m := re.fullmatch(r"([A-Za-z])(?:\^(-?\d+))?", tok)):
                ch = m.group(1)
                gen = ord(ch.lower()) - ord("a") + 1
                exp = int(m.group(2) or 1) * (-1 if ch.isupper() else 1)
            else:
                raise ValueError(f"cannot read {tok!r} as a letter")
            if gen == 0:
                raise ValueError("generators are numbered from 1")
            letters += [gen if exp > 0 else -gen] * abs(exp)
        return cls(tuple(letters))

    def __mul__(self, other: FreeWord) -> FreeWord:
        return FreeWord(self.letters + other.letters)

    def __pow__(self, n: int) -> FreeWord:
        base = self if n >= 0 else self.inverse()
        return FreeWord(base.letters * abs(n))

    def inverse(self) -> FreeWord:
        return FreeWord(tuple(-a for a in reversed(self.letters)))

    def conjugate(self, g: FreeWord) -> FreeWord:
        """``g^-1 w g``."""
        return g.inverse() * self * g

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    @property
    def rank(self) -> int:
        return max((abs(a) for a in self.letters), default=0)

    def exponent_sums(self, r: int | None = None) -> list[int]:
        r = self.rank if r is None else r
        sums = [0] * r
        for a in self.letters:
            sums[abs(a) - 1] += 1 if a > 0 else -1
        return sums

    def substitute(self, images: Sequence[FreeWord]) -> FreeWord:
        """Apply the homomorphism sending generator i to ``images[i-1]``."""
        out: list[int] = []
        for a in self.letters:
            img = images[abs(a) - 1]
            out.extend(img.letters if a > 0 else img.inverse().letters)
        return FreeWord(tuple(out))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"x{a}" if a > 0 else f"x{-a}^-1" for a in self.letters)


def commutator(a: FreeWord, b: FreeWord) -> FreeWord:
    """``[a, b] = a b a^-1 b^-1``."""
    return a * b * a.inverse() * b.inverse()


def gen(i: int) -> FreeWord:
    return FreeWord((i,))


# -- Wirtinger presentation ------------------------------------------------


@dataclass(frozen=True)
class GroupPresentation:
    generators: int
    relators: tuple[FreeWord, ...]
    meridians: tuple[int, ...]
    basepoint: str = "above-diagram, left-to-right path composition"
    arc_component: tuple[int, ...] = field(default=(), compare=False)

    def abelianized(self) -> list[list[int]]:
        """Relator rows of the abelianization matrix (one column per generator)."""
        return [w.exponent_sums(self.generators) for w in self.relators]

    def abelianization_rank(self) -> int:
        import sympy

        if not self.relators:
            return self.generators
        M = sympy.Matrix(self.abelianized())
        return self.generators - M.rank()

    def text(self) -> str:
        lines = [f"generators: {' '.join(f'x{i}' for i in range(1, self.generators + 1))}"]
        lines.append("meridians: " + " ".join(f"x{m}" for m in self.meridians))
        lines.append("relators:")
        lines += [f"  {w}" for w in self.relators]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ArcData:
    """How the edges of a diagram group into Wirtinger arcs."""

    arc_of_edge: dict[int, int]
    arc_component: tuple[int, ...]
    # per crossing: (incoming under arc, outgoing under arc, over arc, sign)
    relations: tuple[tuple[int, int, int, int], ...]
    # per component: list of (over arc, sign) met at under-crossings, in order
    under_passes: tuple[tuple[tuple[int, int], ...], ...]


def arc_data(D: LinkDiagram) -> ArcData:
    """Group edges into arcs (1-based), numbered by component then traversal."""
    ends_under = {}
    for i, (c, s) in enumerate(zip(D.crossings, D.signs)):
        ends_under[c[0]] = i  # slot 0 is always the incoming under-edge
    arc_of: dict[int, int] = {}
    arc_comp: list[int] = []
    for k, comp in enumerate(D.components):
        # rotate so that the walk starts on the first edge's arc
        n = len(comp)
        start = 0
        # step backwards from the first edge to the start of its arc
        for back in range(n):
            prev = comp[(-back - 1) % n]
            if prev in ends_under or back == n - 1:
                start = (-back) % n
                break
        if not any(lab in ends_under for lab in comp):
            start = 0
        order = comp[start:] + comp[:start]
        cur = len(arc_comp) + 1
        arc_comp.append(k)
        for idx, lab in enumerate(order):
            arc_of[lab] = cur
            if lab in ends_under and idx < n - 1:
                cur = len(arc_comp) + 1
                arc_comp.append(k)
    relations = []
    for i, (c, s) in enumerate(zip(D.crossings, D.signs)):
        relations.append((arc_of[c[0]], arc_of[c[2]], arc_of[c[1]], s))
    passes = []
    for comp in D.components:
        seq = []
        for lab in comp:
            if lab in ends_under:
                i = ends_under[lab]
                seq.append((arc_of[D.crossings[i][1]], D.signs[i]))
        passes.append(tuple(seq))
    return ArcData(arc_of, tuple(arc_comp), tuple(relations), tuple(passes))


def wirtinger(D: LinkDiagram) -> GroupPresentation:
    """One generator per arc, one relator per crossing.

    At a crossing with over-arc k, incoming under-arc a, outgoing under-arc
    b and sign e, the relation is ``x_b = x_k^-e x_a x_k^e``; the relator
    stored is ``x_k^-e x_a x_k^e x_b^-1``.
    """
    A = arc_data(D)
    rels = []
    for a, b, k, s in A.relations:
        kk = k if s > 0 else -k
        rels.append(FreeWord((-kk, a, kk, -b)))
    meridians = tuple(A.arc_of_edge[comp[0]] for comp in D.components)
    return GroupPresentation(len(A.arc_component), tuple(rels), meridians, arc_component=A.arc_component)


def longitude(D: LinkDiagram, component: int) -> FreeWord:
    """0-framed longitude of a component in the Wirtinger generators.

    Read from the start of the component's first edge: at each
    under-crossing record the over-arc to the power of the crossing sign,
    then append ``meridian^-writhe``.
    """
    D._check_component(component)
    A = arc_data(D)
    letters = [k if s > 0 else -k for k, s in A.under_passes[component]]
    m = A.arc_of_edge[D.components[component][0]]
    w = D.writhe(component)
    letters += [-m if w > 0 else m] * abs(w)
    return FreeWord(tuple(letters))


def meridian_class(D: LinkDiagram) -> list[int]:
    """Component index (0-based) of every arc generator, indexed by arc - 1."""
    return list(arc_data(D).arc_component)


def to_meridian_word(D: LinkDiagram, w: FreeWord) -> list[int]:
    """Abelianize an arc word onto the component lattice."""
    cls = meridian_class(D)
    sums = [0] * D.num_components
    for a in w.letters:
        sums[cls[abs(a) - 1]] += 1 if a > 0 else -1
    return sums
