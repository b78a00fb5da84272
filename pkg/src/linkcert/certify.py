"""Checking the computable hypotheses of the multi-infection theorems.

Sliceness: the infection curves bound immersed disks whose
(self-)intersections are counted in a user-attested ledger.  The closure
of the string link must have vanishing Milnor invariants up to ``c + r``
(additive threshold), up to ``2c`` (doubled threshold), or with
occurrence bounds built from the ledger (refined mode).

Solvability: every infection curve must lie in the ``n``-th derived
subgroup of the free group of the unlink complement, and the closure of
the string link must have vanishing pairwise linking numbers; the
conclusion is solvability at level ``n - 0.5``.

The topological hypotheses (the pattern is slice, the ledger is correct,
the pattern is the unlink with standard disks) cannot be verified here;
they are listed in every certificate under ``assumptions``.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from itertools import product

from .derived import DEFAULT_DEPTH_CAP, in_derived
from .diagram import DiagramError, LinkDiagram
from .groups import FreeWord, arc_data, longitude
from .infection import MultiDiskPattern
from .magnus import DEFAULT_DEGREE_CAP, DegreeCapError
from .milnor import leading_invariants, mu_vanish_up_to, refined_vanish
from .tangle import StringLinkDiagram, closure

SLICE_MODES = ("thm14", "thm15", "refined")
DEFAULT_CHOICE_CAP = 4096
CERTIFICATE_SCHEMA = "linkcert/slice-certificate@1"

CERTIFIED = "certified"
NOT_CERTIFIED = "not-certified"
CONDITIONAL = "conditional"


class ChoiceCapError(ValueError):
    pass


@dataclass(frozen=True)
class IntersectionLedger:
    """Attested intersection counts of the immersed disks bounded by the infection curves.

    ``mixed`` maps pairs ``(i, j)`` of 1-based disk numbers, ``i < j``, to
    the number of intersections between disks ``i`` and ``j``.
    """

    r: int
    self_counts: tuple[int, ...]
    mixed: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.r < 1:
            raise ValueError("a ledger needs at least one disk")
        counts = tuple(int(v) for v in self.self_counts)
        if len(counts) != self.r:
            raise ValueError(f"need {self.r} self-intersection counts, got {len(counts)}")
        if any(v < 0 for v in counts):
            raise ValueError("intersection counts must be non-negative")
        mixed: dict[tuple[int, int], int] = {}
        for (i, j), n in dict(self.mixed).items():
            i, j, n = int(i), int(j), int(n)
            if i == j or not (1 <= i <= self.r and 1 <= j <= self.r):
                raise ValueError(f"mixed pair ({i}, {j}) must name two different disks in 1..{self.r}")
            if n < 0:
                raise ValueError("intersection counts must be non-negative")
            key = (min(i, j), max(i, j))
            mixed[key] = mixed.get(key, 0) + n
        object.__setattr__(self, "self_counts", counts)
        object.__setattr__(self, "mixed", {k: v for k, v in sorted(mixed.items()) if v})

    @property
    def mixed_total(self) -> int:
        return sum(self.mixed.values())

    @property
    def c(self) -> int:
        return sum(self.self_counts) + self.mixed_total

    @classmethod
    def uniform(cls, r: int, c: int) -> IntersectionLedger:
        """A ledger with all ``c`` intersections as self-intersections of disk 1."""
        return cls(r, (c,) + (0,) * (r - 1))


def required_length_thm14(ledger: IntersectionLedger) -> int:
    return ledger.c + ledger.r


def required_length_thm15(ledger: IntersectionLedger) -> int:
    return 2 * ledger.c


def refined_bounds_choices(
    ledger: IntersectionLedger, cap: int | None = DEFAULT_CHOICE_CAP
) -> set[tuple[int, ...]]:
    """Every occurrence-bound vector the ledger allows.

    Start from all ones, add each disk's self-intersections to its own
    entry, and hand every mixed intersection to one of its two disks.
    Each pair contributes ``n + 1`` distributions; ``cap`` bounds their
    product.
    """
    base = [1 + s for s in ledger.self_counts]
    pairs = list(ledger.mixed.items())
    total = 1
    for _, n in pairs:
        total *= n + 1
    if cap is not None and total > cap:
        raise ChoiceCapError(f"{total} distributions of mixed intersections exceed the cap {cap}")
    out = set()
    for split in product(*[range(n + 1) for _, n in pairs]):
        v = list(base)
        for ((i, j), n), a in zip(pairs, split):
            v[i - 1] += a
            v[j - 1] += n - a
        out.add(tuple(v))
    return out


@dataclass
class SliceCertificate:
    theorem: str
    inputs: dict
    requirement: dict
    evidence: dict
    verdict: str
    assumptions: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.verdict in (CERTIFIED, CONDITIONAL)

    def to_json(self) -> dict:
        return {
            "schema": CERTIFICATE_SCHEMA,
            "theorem": self.theorem,
            "inputs": self.inputs,
            "requirement": self.requirement,
            "evidence": self.evidence,
            "verdict": self.verdict,
            "assumptions": list(self.assumptions),
            "notes": list(self.notes),
        }


def _index_list(found: Mapping[tuple[int, ...], int], limit: int = 24) -> list[dict]:
    return [{"index": list(I), "value": v, "delta": 0} for I, v in list(found.items())[:limit]]


def _linking_pairs(L: LinkDiagram) -> list[dict]:
    m = L.num_components
    return [
        {"components": [i + 1, j + 1], "lk": L.linking_number(i, j)}
        for i in range(m)
        for j in range(i + 1, m)
    ]


def _check_sizes(P: MultiDiskPattern, J: StringLinkDiagram, r: int | None = None) -> None:
    if J.strands != P.r:
        raise DiagramError(f"string link has {J.strands} strands but the multi-disk has {P.r} sub-disks")
    if r is not None and r != P.r:
        raise DiagramError(f"ledger is for {r} disks but the multi-disk has {P.r} sub-disks")


def certify_slice(
    P: MultiDiskPattern,
    ledger: IntersectionLedger,
    J: StringLinkDiagram,
    mode: str = "thm14",
    cap: int | None = None,
    choice_cap: int | None = DEFAULT_CHOICE_CAP,
) -> SliceCertificate:
    """Check the Milnor-invariant hypothesis for sliceness of the multi-infection."""
    if mode not in SLICE_MODES:
        raise ValueError(f"unknown mode {mode!r}; choose from {', '.join(SLICE_MODES)}")
    _check_sizes(P, J, ledger.r)
    cap = DEFAULT_DEGREE_CAP if cap is None else cap
    Jhat = closure(J)
    inputs = {
        "pattern": P.name or P.pattern.name or "pattern",
        "stringLink": J.name or "string-link",
        "ledger": {
            "r": ledger.r,
            "self": list(ledger.self_counts),
            "mixed": [{"pair": list(k), "count": n} for k, n in ledger.mixed.items()],
            "c": ledger.c,
        },
    }
    assumptions = [
        "the pattern link bounds disjoint slice disks",
        "the infection curves bound immersed disks with the attested intersection counts",
    ]
    evidence: dict = {"linking": _linking_pairs(Jhat), "degreeCap": cap}

    if mode in ("thm14", "thm15"):
        length = required_length_thm14(ledger) if mode == "thm14" else required_length_thm15(ledger)
        requirement = {"kind": "mu-vanishing", "requiredLength": length}
        try:
            ok = mu_vanish_up_to(Jhat, length, cap)
        except DegreeCapError as exc:
            raise DegreeCapError(
                f"required length {length} needs Magnus degree {length - 1}, above the cap {cap}"
            ) from exc
        evidence["vanishesUpToRequiredLength"] = ok
        if not ok:
            first, found = leading_invariants(Jhat, length, cap)
            evidence["firstNonvanishingLength"] = first
            evidence["nonvanishing"] = _index_list(found)
        verdict = CERTIFIED if ok else NOT_CERTIFIED
        return SliceCertificate(mode, inputs, requirement, evidence, verdict, assumptions)

    choices = sorted(refined_bounds_choices(ledger, choice_cap))
    requirement = {
        "kind": "mu-vanishing-refined",
        "boundSum": ledger.r + ledger.c,
        "choices": [list(v) for v in choices],
    }
    longest = ledger.r + ledger.c
    checked = []
    satisfied = None
    for v in choices:
        try:
            ok = refined_vanish(Jhat, v, cap)
        except DegreeCapError as exc:
            raise DegreeCapError(
                f"bound vectors of sum {longest} need Magnus degree {longest - 1}, above the cap {cap}"
            ) from exc
        checked.append({"bounds": list(v), "vanishes": ok})
        if ok:
            satisfied = list(v)
            break
    evidence["checked"] = checked
    evidence["satisfyingChoice"] = satisfied
    verdict = CERTIFIED if satisfied is not None else NOT_CERTIFIED
    return SliceCertificate(mode, inputs, requirement, evidence, verdict, assumptions)


# -- solvability ------------------------------------------------------


@dataclass(frozen=True)
class FreeQuotientWitness:
    """A declared homomorphism onto a free group; infection curves are given by their images."""

    rank: int
    description: str = ""


def eta_words_from_diagram(D: LinkDiagram, pattern_components: Sequence[int], eta_components: Sequence[int]) -> list[FreeWord]:
    """Words of the infection curves in the meridians of the pattern components.

    Valid when the pattern components never cross each other or themselves,
    so that every arc of pattern component ``k`` is its meridian and the
    complement of the pattern has free fundamental group.  Generator ``k+1``
    is the meridian of ``pattern_components[k]``.
    """
    of = D.component_of
    pattern = list(pattern_components)
    for c in D.crossings:
        if of[c[0]] in pattern and of[c[1]] in pattern:
            raise DiagramError(
                "pattern components cross each other, so their meridians do not give a free basis"
            )
    A = arc_data(D)
    image: dict[int, int] = {}
    for arc, comp in enumerate(A.arc_component, start=1):
        image[arc] = pattern.index(comp) + 1 if comp in pattern else 0
    words = []
    for k in eta_components:
        letters = []
        for a in longitude(D, k).letters:
            g = image[abs(a)]
            if g:
                letters.append(g if a > 0 else -g)
        words.append(FreeWord(tuple(letters)))
    return words


def certify_solvable(
    P: MultiDiskPattern,
    eta_words: Sequence[FreeWord] | None,
    n: int,
    J: StringLinkDiagram,
    witness: FreeQuotientWitness | None = None,
    cap: int | None = None,
) -> SliceCertificate:
    """Check derived-series membership of the infection curves and vanishing linking of the closure."""
    if n < 0:
        raise ValueError("derived level must be non-negative")
    _check_sizes(P, J)
    cap = DEFAULT_DEPTH_CAP if cap is None else cap
    if eta_words is None:
        if P.eta_diagram is None:
            raise ValueError("give the infection curves as words or draw them in the pattern")
        pattern_comps = [
            k for k in range(P.eta_diagram.num_components) if k not in P.eta_components
        ]
        eta_words = eta_words_from_diagram(P.eta_diagram, pattern_comps, P.eta_components)
    eta_words = [w if isinstance(w, FreeWord) else FreeWord(tuple(w)) for w in eta_words]
    if len(eta_words) != P.r:
        raise DiagramError(f"need {P.r} infection-curve words, got {len(eta_words)}")
    rank = witness.rank if witness is not None else P.pattern.num_components
    for w in eta_words:
        if w.rank > rank:
            raise ValueError(f"word {w} uses a generator beyond the rank {rank}")

    Jhat = closure(J)
    links = _linking_pairs(Jhat)
    lk_ok = all(p["lk"] == 0 for p in links)
    memberships = []
    for i, w in enumerate(eta_words, start=1):
        member = in_derived(w, n, rank, cap)
        memberships.append({"curve": i, "word": str(w), "inDerived": member})
    derived_ok = all(m["inDerived"] for m in memberships)

    inputs = {
        "pattern": P.name or P.pattern.name or "pattern",
        "stringLink": J.name or "string-link",
        "etaWords": [str(w) for w in eta_words],
        "rank": rank,
    }
    requirement = {"kind": "derived-and-linking", "n": n, "level": n - 0.5}
    evidence = {"linking": links, "linkingVanishes": lk_ok, "derived": memberships}
    if n == 0:
        evidence["note"] = "level 0 places no condition on the infection curves"
    assumptions = []
    notes = []
    if witness is None:
        assumptions.append("the pattern is an unlink with standard slice disks, so the group is free on the meridians")
    else:
        assumptions.append("the infection curves map to the given words under the declared free quotient")
        if witness.description:
            notes.append(witness.description)
    if lk_ok and derived_ok:
        verdict = CONDITIONAL if witness is not None else CERTIFIED
    else:
        verdict = NOT_CERTIFIED
    evidence["concludedLevel"] = n - 0.5 if verdict != NOT_CERTIFIED else None
    return SliceCertificate("thm16", inputs, requirement, evidence, verdict, assumptions, notes)
