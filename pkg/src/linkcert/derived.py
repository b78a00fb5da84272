"""Fox calculus and membership in the derived series of a free group.

``F/F^(d)`` embeds in pairs ``(g, (a_1, ..., a_r))`` where ``g`` lies in
``F/F^(d-1)`` and ``a_i`` are the Fox derivatives of the word, pushed into
the integral group ring of ``F/F^(d-1)``.  Pairs multiply by
``(g, a)(h, b) = (gh, a + g.b)``.  Depth 1 reduces to exponent sums, and a
word lies in ``F^(d)`` exactly when its depth-``d`` pair is trivial.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cache, lru_cache

from .groups import FreeWord

DEFAULT_DEPTH_CAP = 4


class DepthCapError(ValueError):
    pass


def fox_derivative(w: FreeWord | Iterable[int], i: int) -> dict[FreeWord, int]:
    """Fox derivative with respect to generator ``i`` as a word -> coefficient map."""
    letters = w.letters if isinstance(w, FreeWord) else tuple(w)
    out: dict[FreeWord, int] = defaultdict(int)
    for p, a in enumerate(letters):
        if a == i:
            out[FreeWord(letters[:p])] += 1
        elif a == -i:
            out[FreeWord(letters[: p + 1])] -= 1
    return {k: v for k, v in out.items() if v}


# Group elements of F/F^(d) are nested tuples; ring elements are frozensets of
# (element, coefficient) pairs with non-zero coefficients.

_TRIVIAL0: tuple = ()


@cache
def _identity(depth: int, r: int):
    if depth == 0:
        return _TRIVIAL0
    return (_identity(depth - 1, r), (frozenset(),) * r)


def _ring_add(f: frozenset, g: frozenset) -> frozenset:
    if not g:
        return f
    if not f:
        return g
    acc = dict(f)
    for k, v in g:
        acc[k] = acc.get(k, 0) + v
    return frozenset((k, v) for k, v in acc.items() if v)


def _ring_shift(depth: int, r: int, a, g: frozenset) -> frozenset:
    """Left-multiply every group element of the ring element ``g`` by ``a``."""
    if not g or a == _identity(depth, r):
        return g
    return frozenset((_mul(depth, r, a, k), v) for k, v in g)


@lru_cache(maxsize=200_000)
def _mul(depth: int, r: int, x, y):
    if depth == 0:
        return _TRIVIAL0
    (a, f), (b, g) = x, y
    base = _mul(depth - 1, r, a, b)
    parts = tuple(_ring_add(fi, _ring_shift(depth - 1, r, a, gi)) for fi, gi in zip(f, g))
    return (base, parts)


@cache
def _letter(depth: int, r: int, a: int):
    if depth == 0:
        return _TRIVIAL0
    i = abs(a) - 1
    base = _letter(depth - 1, r, a)
    parts = [frozenset()] * r
    if a > 0:
        parts[i] = frozenset({(_identity(depth - 1, r), 1)})
    else:
        parts[i] = frozenset({(base, -1)})
    return (base, tuple(parts))


def _element(letters: tuple[int, ...], depth: int, r: int):
    acc = _identity(depth, r)
    for a in letters:
        acc = _mul(depth, r, acc, _letter(depth, r, a))
    return acc


@dataclass(frozen=True)
class SolvableNormalForm:
    """Normal form of a word in the free solvable group ``F/F^(depth)`` of rank ``rank``."""

    depth: int
    rank: int
    element: object

    def is_trivial(self) -> bool:
        return self.element == _identity(self.depth, self.rank)

    def exponent_sums(self) -> list[int]:
        if self.depth == 0:
            return [0] * self.rank
        e = self.element
        while True:
            base, parts = e
            if base == _TRIVIAL0:
                return [sum(v for _, v in p) for p in parts]
            e = base

    def base(self) -> SolvableNormalForm:
        """Image in ``F/F^(depth-1)``."""
        if self.depth == 0:
            return self
        return SolvableNormalForm(self.depth - 1, self.rank, self.element[0])

    def derivatives(self) -> tuple[frozenset, ...]:
        """Fox derivative images in the group ring of ``F/F^(depth-1)``."""
        if self.depth == 0:
            return ()
        return self.element[1]

    def __mul__(self, other: SolvableNormalForm) -> SolvableNormalForm:
        if (self.depth, self.rank) != (other.depth, other.rank):
            raise ValueError("normal forms of different depth or rank")
        return SolvableNormalForm(self.depth, self.rank, _mul(self.depth, self.rank, self.element, other.element))


def _resolve(w, rank: int | None, depth: int, cap: int | None):
    cap = DEFAULT_DEPTH_CAP if cap is None else cap
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if depth > cap:
        raise DepthCapError(f"depth {depth} exceeds the configured cap {cap}")
    word = w if isinstance(w, FreeWord) else FreeWord(tuple(w))
    r = word.rank if rank is None else rank
    if word.rank > r:
        raise ValueError(f"word uses generator {word.rank} but rank is {r}")
    return word, max(r, 1)


def solvable_nf(
    w: FreeWord | Iterable[int], d: int, rank: int | None = None, cap: int | None = None
) -> SolvableNormalForm:
    if d < 1:
        raise ValueError("depth must be at least 1")
    word, r = _resolve(w, rank, d, cap)
    return SolvableNormalForm(d, r, _element(word.letters, d, r))


def in_derived(w: FreeWord | Iterable[int], n: int, rank: int | None = None, cap: int | None = None) -> bool:
    """Whether the word lies in the ``n``-th derived subgroup of the free group."""
    word, r = _resolve(w, rank, n, cap)
    if n == 0:
        return True
    return solvable_nf(word, n, r, cap).is_trivial()


def derived_depth(w: FreeWord | Iterable[int], rank: int | None = None, cap: int | None = None) -> int | None:
    """Largest ``n <= cap`` with the word in ``F^(n)``; None if it survives the whole cap."""
    cap = DEFAULT_DEPTH_CAP if cap is None else cap
    word = w if isinstance(w, FreeWord) else FreeWord(tuple(w))
    if not word.letters:
        return None
    for n in range(1, cap + 1):
        if not in_derived(word, n, rank, cap):
            return n - 1
    return None
