"""Milnor invariants from nilpotent approximations of longitudes.

Walking along a component, the arc after the j-th under-crossing equals
``u^-1 m u`` where ``m`` is the component's meridian and ``u`` is the
product of the over-arc letters read so far.  Substituting arcs by these
conjugates repeatedly expresses every longitude in the meridians modulo
deeper and deeper terms of the lower central series.  The main route runs
the substitution directly on truncated Magnus series; the word route
(:func:`chen_milnor_longitudes`) is kept as an independent check.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import gcd

from .diagram import DiagramError, LinkDiagram
from .groups import FreeWord, arc_data, longitude
from .magnus import DEFAULT_DEGREE_CAP, DegreeCapError, TruncatedSeries

WORD_LENGTH_CAP = 200_000


def _check_degree(degree: int, cap: int | None) -> int:
    cap = DEFAULT_DEGREE_CAP if cap is None else cap
    if degree > cap:
        raise DegreeCapError(
            f"length needs Magnus degree {degree}, above the configured cap {cap}"
        )
    return degree


@lru_cache(maxsize=64)
def _longitude_series(D: LinkDiagram, degree: int) -> tuple[TruncatedSeries, ...]:
    A = arc_data(D)
    n_arcs = len(A.arc_component)
    first_arc = {}
    for idx, k in enumerate(A.arc_component):
        first_arc.setdefault(k, idx + 1)
    meridian = [TruncatedSeries.letter(k + 1, degree) for k in range(D.num_components)]
    meridian_inv = [TruncatedSeries.letter(-(k + 1), degree) for k in range(D.num_components)]

    arcs = [meridian[A.arc_component[a]] for a in range(n_arcs)]
    arcs_inv = [meridian_inv[A.arc_component[a]] for a in range(n_arcs)]

    def walk(k: int, record_arcs: bool):
        p = TruncatedSeries.one(degree)
        p_inv = TruncatedSeries.one(degree)
        out = []
        passes = A.under_passes[k]
        for step, (over, sign) in enumerate(passes):
            o = over - 1
            if sign > 0:
                p, p_inv = p * arcs[o], arcs_inv[o] * p_inv
            else:
                p, p_inv = p * arcs_inv[o], arcs[o] * p_inv
            if record_arcs and step < len(passes) - 1:
                out.append((p_inv * meridian[k] * p, p_inv * meridian_inv[k] * p))
        return p, out

    for _ in range(degree):
        new_arcs = list(arcs)
        new_inv = list(arcs_inv)
        for k in range(D.num_components):
            _, values = walk(k, True)
            base = first_arc[k]
            for j, (val, inv) in enumerate(values):
                new_arcs[base + j] = val
                new_inv[base + j] = inv
        arcs, arcs_inv = new_arcs, new_inv

    out = []
    for k in range(D.num_components):
        p, _ = walk(k, False)
        w = D.writhe(k)
        corr = meridian_inv[k] if w > 0 else meridian[k]
        for _ in range(abs(w)):
            p = p * corr
        out.append(p)
    return tuple(out)


def longitude_series(D: LinkDiagram, degree: int, cap: int | None = None) -> tuple[TruncatedSeries, ...]:
    """Magnus images of the 0-framed longitudes, correct through ``degree``."""
    _check_degree(degree, cap)
    return _longitude_series(D, degree)


def chen_milnor_longitudes(D: LinkDiagram, q: int, cap: int | None = None) -> list[FreeWord]:
    """Longitudes as words in the component meridians, equal modulo ``F_q``.

    Letters refer to components (1-based).  Words are only freely reduced,
    so their length grows quickly with ``q``.
    """
    if q < 1:
        raise ValueError("nilpotency class must be at least 1")
    _check_degree(q, cap)
    A = arc_data(D)
    n_arcs = len(A.arc_component)
    words = [FreeWord((A.arc_component[a] + 1,)) for a in range(n_arcs)]
    first_arc = {}
    for idx, k in enumerate(A.arc_component):
        first_arc.setdefault(k, idx)

    def prefixes(k: int, current: list[FreeWord]) -> tuple[list[FreeWord], FreeWord]:
        letters: list[int] = []
        pre = []
        for over, sign in A.under_passes[k]:
            w = current[over - 1]
            letters.extend(w.letters if sign > 0 else w.inverse().letters)
            pre.append(FreeWord(tuple(letters)))
            letters = list(pre[-1].letters)
            if len(letters) > WORD_LENGTH_CAP:
                raise DegreeCapError("word substitution exceeded the length guard")
        return pre, FreeWord(tuple(letters))

    for _ in range(q):
        new = list(words)
        for k in range(D.num_components):
            pre, _ = prefixes(k, words)
            m = FreeWord((k + 1,))
            for j, u in enumerate(pre[:-1]):
                new[first_arc[k] + 1 + j] = m.conjugate(u)
        words = new
    out = []
    for k in range(D.num_components):
        _, lam = prefixes(k, words)
        out.append(lam * FreeWord((k + 1,)) ** (-D.writhe(k)))
    return out


def _raw_mu(D: LinkDiagram, I: tuple[int, ...], cap: int | None) -> int:
    series = longitude_series(D, len(I) - 1, cap)
    return series[I[-1] - 1].coefficient(I[:-1])


def _check_index(D: LinkDiagram, I: Sequence[int]) -> tuple[int, ...]:
    I = tuple(int(i) for i in I)
    if len(I) < 2:
        raise ValueError("a Milnor multi-index has length at least 2")
    for i in I:
        if not 1 <= i <= D.num_components:
            raise DiagramError(f"index {i} out of range 1..{D.num_components}")
    return I


def indeterminacy(D: LinkDiagram, I: Sequence[int], cap: int | None = None) -> int:
    """gcd of the invariants of cyclic permutations of proper subsequences of ``I``."""
    I = _check_index(D, I)
    g = 0
    seen = set()
    for size in range(2, len(I)):
        for pos in combinations(range(len(I)), size):
            sub = tuple(I[p] for p in pos)
            for s in range(size):
                rot = sub[s:] + sub[:s]
                if rot in seen:
                    continue
                seen.add(rot)
                g = gcd(g, _raw_mu(D, rot, cap))
    return g


def milnor_mu(D: LinkDiagram, I: Sequence[int], cap: int | None = None) -> tuple[int, int]:
    """``(value, indeterminacy)`` of the invariant with multi-index ``I`` (1-based).

    The last index names the longitude; the value is reduced modulo the
    indeterminacy when that is positive.
    """
    I = _check_index(D, I)
    value = _raw_mu(D, I, cap)
    delta = indeterminacy(D, I, cap)
    if delta:
        value %= delta
    return value, delta


def _all_longitudes_trivial(D: LinkDiagram) -> bool:
    return all(not longitude(D, k).letters for k in range(D.num_components))


def first_nonvanishing_length(D: LinkDiagram, cap: int | None = None) -> int | None:
    """Smallest length with a non-zero invariant, or None if all vanish within the cap."""
    if _all_longitudes_trivial(D):
        return None
    cap = DEFAULT_DEGREE_CAP if cap is None else cap
    for degree in range(1, cap + 1):
        series = longitude_series(D, degree, cap)
        if any(s.homogeneous(degree) for s in series):
            return degree + 1
    return None


def mu_vanish_up_to(D: LinkDiagram, length: int, cap: int | None = None) -> bool:
    """True iff every invariant of length 2..``length`` vanishes."""
    if length < 2:
        return True
    if _all_longitudes_trivial(D):
        return True
    series = longitude_series(D, length - 1, cap)
    return all(s.is_one() for s in series)


def leading_invariants(D: LinkDiagram, up_to: int, cap: int | None = None) -> tuple[int | None, dict]:
    """First length ``<= up_to`` with a non-zero invariant and all non-zero invariants of that length.

    Shorter invariants vanish there, so these values carry no indeterminacy.
    """
    if up_to < 2 or _all_longitudes_trivial(D):
        return None, {}
    series = longitude_series(D, up_to - 1, cap)
    for degree in range(1, up_to):
        found = {}
        for j, s in enumerate(series, start=1):
            for key, val in s.homogeneous(degree).items():
                if val:
                    found[key + (j,)] = val
        if found:
            return degree + 1, dict(sorted(found.items()))
    return None, {}


def _admissible(seq: tuple[int, ...], bounds: Sequence[int]) -> bool:
    for i, b in enumerate(bounds, start=1):
        if seq.count(i) > b:
            return False
    return True


def refined_vanish(D: LinkDiagram, bounds: Sequence[int], cap: int | None = None) -> bool:
    """True iff every invariant whose index ``i`` occurs at most ``bounds[i-1]`` times vanishes."""
    r = D.num_components
    if len(bounds) != r:
        raise ValueError(f"need {r} occurrence bounds, got {len(bounds)}")
    if any(b < 1 for b in bounds):
        raise ValueError("occurrence bounds must be at least 1")
    if _all_longitudes_trivial(D):
        return True
    longest = sum(bounds)
    if longest < 2:
        return True
    series = longitude_series(D, longest - 1, cap)
    # any non-zero coefficient of the right shape refutes; checking by increasing
    # length means the first one found is a well-defined invariant
    for length in range(2, longest + 1):
        for j in range(1, r + 1):
            for key, val in series[j - 1].homogeneous(length - 1).items():
                if val and _admissible(key + (j,), bounds):
                    return False
    return True


@dataclass
class MilnorTable:
    link: str
    max_length: int
    entries: dict[tuple[int, ...], tuple[int, int]] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "schema": "linkcert/milnor-table@1",
            "link": self.link,
            "maxLength": self.max_length,
            "entries": [
                {"index": list(I), "value": v, "delta": d}
                for I, (v, d) in sorted(self.entries.items(), key=lambda kv: (len(kv[0]), kv[0]))
            ],
        }

    def nonzero(self) -> dict[tuple[int, ...], tuple[int, int]]:
        return {I: vd for I, vd in self.entries.items() if vd != (0, 0)}


def milnor_table(
    D: LinkDiagram,
    max_length: int,
    indices: Iterable[Sequence[int]] | None = None,
    cap: int | None = None,
) -> MilnorTable:
    """Invariants for the given multi-indices, or every multi-index of length 2..max_length."""
    if max_length < 2:
        raise ValueError("max length must be at least 2")
    _check_degree(max_length - 1, cap)
    r = D.num_components
    if indices is None:
        indices = (I for n in range(2, max_length + 1) for I in product(range(1, r + 1), repeat=n))
    table = MilnorTable(D.name or "link", max_length)
    for I in indices:
        I = _check_index(D, I)
        if len(I) > max_length:
            raise ValueError(f"index {I} is longer than max length {max_length}")
        table.entries[I] = milnor_mu(D, I, cap)
    return table
