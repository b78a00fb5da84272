"""Truncated non-commuting power series and the Magnus expansion.

A series over variables ``X_1..X_r`` is a sparse map from index tuples
(each index 1-based) to integers; the empty tuple is the constant term.
Every product drops terms of degree above the series' cap.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable, Mapping

from .groups import FreeWord

DEFAULT_DEGREE_CAP = 8


class DegreeCapError(ValueError):
    pass


class TruncatedSeries:
    __slots__ = ("cap", "terms")

    def __init__(self, cap: int, terms: Mapping[tuple[int, ...], int] | None = None):
        if cap < 0:
            raise ValueError("degree cap must be non-negative")
        self.cap = cap
        self.terms: dict[tuple[int, ...], int] = {
            k: v for k, v in (terms or {}).items() if v and len(k) <= cap
        }

    # -- constructors ---------------------------------------------------

    @classmethod
    def one(cls, cap: int) -> TruncatedSeries:
        return cls(cap, {(): 1})

    @classmethod
    def variable(cls, i: int, cap: int) -> TruncatedSeries:
        return cls(cap, {(i,): 1})

    @classmethod
    def letter(cls, a: int, cap: int) -> TruncatedSeries:
        """Image of ``x_i`` (a = i) or ``x_i^-1`` (a = -i)."""
        i = abs(a)
        if a > 0:
            return cls(cap, {(): 1, (i,): 1})
        return cls(cap, {(i,) * k: (-1) ** k for k in range(cap + 1)})

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return TruncatedSeries(min(self.cap, other.cap), out)

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(self.cap, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        return self + (-other)

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        cap = min(self.cap, other.cap)
        by_len: dict[int, list] = defaultdict(list)
        for k, v in other.terms.items():
            by_len[len(k)].append((k, v))
        out: dict[tuple[int, ...], int] = defaultdict(int)
        for ka, va in self.terms.items():
            room = cap - len(ka)
            for n in range(room + 1):
                for kb, vb in by_len.get(n, ()):
                    out[ka + kb] += va * vb
        return TruncatedSeries(cap, out)

    def times_letter(self, a: int) -> TruncatedSeries:
        """Right multiplication by the image of a single letter, in linear time."""
        i = abs(a)
        out = dict(self.terms)
        if a > 0:
            for k, v in self.terms.items():
                if len(k) < self.cap:
                    key = k + (i,)
                    out[key] = out.get(key, 0) + v
            return TruncatedSeries(self.cap, out)
        # N (1 + X_i) = M  =>  N[s] = M[s] - N[s without its trailing i]
        res: dict[tuple[int, ...], int] = {}
        for k in sorted(set(self.terms) | _trailing_extensions(self.terms, i, self.cap), key=len):
            v = self.terms.get(k, 0)
            if k and k[-1] == i:
                v -= res.get(k[:-1], 0)
            if v:
                res[k] = v
        return TruncatedSeries(self.cap, res)

    def inverse(self) -> TruncatedSeries:
        """Inverse of a series with constant term +-1."""
        c = self.terms.get((), 0)
        if c not in (1, -1):
            raise ValueError("only series with constant term +-1 are invertible over Z")
        a = TruncatedSeries(self.cap, {k: -v * c for k, v in self.terms.items() if k})
        # (c(1 - a))^-1 = c (1 + a + a^2 + ...)
        total = TruncatedSeries.one(self.cap)
        power = TruncatedSeries.one(self.cap)
        for _ in range(self.cap):
            power = power * a
            if not power.terms:
                break
            total = total + power
        return TruncatedSeries(self.cap, {k: v * c for k, v in total.terms.items()})

    def conjugate_by(self, p: TruncatedSeries, p_inv: TruncatedSeries | None = None) -> TruncatedSeries:
        """``p^-1 * self * p``."""
        if p_inv is None:
            p_inv = p.inverse()
        return p_inv * self * p

    def truncate(self, cap: int) -> TruncatedSeries:
        return TruncatedSeries(min(cap, self.cap), self.terms)

    # -- inspection -----------------------------------------------------

    def coefficient(self, seq: Iterable[int]) -> int:
        seq = tuple(seq)
        if len(seq) > self.cap:
            raise DegreeCapError(f"degree {len(seq)} exceeds the cap {self.cap}")
        return self.terms.get(seq, 0)

    def homogeneous(self, degree: int) -> dict[tuple[int, ...], int]:
        return {k: v for k, v in self.terms.items() if len(k) == degree}

    def lowest_degree_above_constant(self) -> int | None:
        degs = [len(k) for k in self.terms if k]
        return min(degs) if degs else None

    def is_one(self) -> bool:
        return self.terms == {(): 1}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        cap = min(self.cap, other.cap)
        a = {k: v for k, v in self.terms.items() if len(k) <= cap}
        b = {k: v for k, v in other.terms.items() if len(k) <= cap}
        return a == b

    def __hash__(self) -> int:
        return hash((self.cap, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"TruncatedSeries(cap={self.cap}, {self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=lambda s: (len(s), s)):
            v = self.terms[k]
            mono = "".join(f"X{i}" for i in k) or "1"
            if mono == "1":
                parts.append(str(v))
            elif v == 1:
                parts.append(mono)
            elif v == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{v}{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _trailing_extensions(terms, i: int, cap: int) -> set[tuple[int, ...]]:
    """Keys reachable from ``terms`` by appending runs of ``i`` (within the cap)."""
    out = set()
    for k in terms:
        cur = k
        while len(cur) < cap:
            cur = cur + (i,)
            out.add(cur)
    return out


def magnus_expand(w: FreeWord | Iterable[int], d: int) -> TruncatedSeries:
    """Image of a free word under ``x_i -> 1 + X_i``, truncated above degree ``d``."""
    if d < 1:
        raise ValueError("degree must be at least 1")
    letters = w.letters if isinstance(w, FreeWord) else tuple(w)
    out = TruncatedSeries.one(d)
    for a in letters:
        out = out.times_letter(a)
    return out
