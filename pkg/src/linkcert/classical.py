"""Alexander polynomial, Seifert matrix, signature and the genus window.

The Alexander polynomial comes from the Fox Jacobian of the Wirtinger
presentation with every generator sent to ``t``.  For links with ``m >= 2``
components the minor is divided by ``(t - 1)`` once, which makes the Hopf
link evaluate to 1.

The Seifert matrix is built on the surface of a closed braid: one disk per
strand and one band per crossing, with loops through consecutive bands of
the same column as the homology basis.
"""

from __future__ import annotations

import re
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

from sympy import ZZ, Poly, symbols
from sympy.polys.matrices import DomainMatrix

from .diagram import LinkDiagram
from .groups import wirtinger
from .vogel import braid_word

_t = symbols("t")


@dataclass(frozen=True)
class LaurentPoly:
    """Integer Laurent polynomial in ``t`` stored as exponent -> coefficient."""

    coeffs: tuple[tuple[int, int], ...]

    @classmethod
    def from_dict(cls, d: Mapping[int, int]) -> LaurentPoly:
        return cls(tuple(sorted((e, c) for e, c in d.items() if c)))

    @classmethod
    def from_list(cls, coefficients: Sequence[int], offset: int = 0) -> LaurentPoly:
        return cls.from_dict({offset + k: c for k, c in enumerate(coefficients)})

    @classmethod
    def parse(cls, text: str) -> LaurentPoly:
        """Read strings such as ``"-4t^-5+36t^-4-144t^-3+504"``."""
        s = text.replace(" ", "").replace("−", "-").replace("⁻", "-")
        s = s.translate(str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹", "0123456789"))
        s = re.sub(r"t(-?\d+)", r"t^\1", s)
        terms = re.findall(r"([+-]?)(\d*)(t(?:\^(-?\d+))?)?", s)
        out: dict[int, int] = {}
        consumed = 0
        for sign, num, tpart, exp in terms:
            if not (num or tpart):
                continue
            consumed += len(sign) + len(num) + len(tpart)
            c = int(num) if num else 1
            c = -c if sign == "-" else c
            e = (int(exp) if exp else 1) if tpart else 0
            out[e] = out.get(e, 0) + c
        if consumed != len(s):
            raise ValueError(f"cannot read {text!r} as a Laurent polynomial")
        return cls.from_dict(out)

    @property
    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def canonical(self) -> LaurentPoly:
        """Shift to lowest exponent 0 and make the leading coefficient positive."""
        if not self.coeffs:
            return self
        low = self.coeffs[0][0]
        sign = 1 if self.coeffs[-1][1] > 0 else -1
        return LaurentPoly.from_dict({e - low: sign * c for e, c in self.coeffs})

    def equals_up_to_units(self, other: LaurentPoly) -> bool:
        return self.canonical() == other.canonical()

    def is_symmetric(self) -> bool:
        """``p(t) = +-t^k p(1/t)`` for some k."""
        if not self.coeffs:
            return True
        mirrored = LaurentPoly.from_dict({-e: c for e, c in self.coeffs})
        return self.equals_up_to_units(mirrored)

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        return sum((Fraction(c) * x**e for e, c in self.coeffs), Fraction(0))

    def coefficient_list(self) -> tuple[int, list[int]]:
        """``(offset, coefficients)`` with coefficients from the lowest exponent up."""
        if not self.coeffs:
            return 0, []
        low, high = self.coeffs[0][0], self.coeffs[-1][0]
        d = self.as_dict
        return low, [d.get(e, 0) for e in range(low, high + 1)]

    def to_json(self) -> dict:
        offset, coeffs = self.coefficient_list()
        return {"offset": offset, "coefficients": coeffs, "text": str(self)}

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in reversed(self.coeffs):
            mag = abs(c)
            if e == 0:
                mono = str(mag)
            else:
                base = "t" if e == 1 else f"t^{e}"
                mono = base if mag == 1 else f"{mag}{base}"
            parts.append(("-" if c < 0 else "+") + mono)
        s = "".join(parts)
        return s.removeprefix("+")


def _fox_row(relator, n: int) -> list[dict[int, int]]:
    """Fox derivatives of one relator with every generator sent to t."""
    row: list[dict[int, int]] = [dict() for _ in range(n)]
    height = 0
    for a in relator.letters:
        i = abs(a) - 1
        if a > 0:
            row[i][height] = row[i].get(height, 0) + 1
            height += 1
        else:
            height -= 1
            row[i][height] = row[i].get(height, 0) - 1
    return row


def _det_laurent(rows: list[list[dict[int, int]]]) -> dict[int, int]:
    """Determinant of a square matrix of Laurent polynomials."""
    n = len(rows)
    if n == 0:
        return {0: 1}
    shift = 0
    exprs = []
    for row in rows:
        low = min((e for entry in row for e in entry), default=0)
        shift += low
        exprs.append([sum((c * _t ** (e - low) for e, c in entry.items()), ZZ.zero) for entry in row])
    M = DomainMatrix.from_list_sympy(n, n, exprs).convert_to(ZZ[_t])
    P = Poly(ZZ[_t].to_sympy(M.det()), _t)
    return {e + shift: int(c) for (e,), c in P.terms() if c}


def alexander_minor(D: LinkDiagram) -> LaurentPoly:
    """A first-elementary-ideal generator of the one-variable Fox Jacobian."""
    if not D.crossings:
        return LaurentPoly.from_dict({0: 1} if D.num_components == 1 else {})
    G = wirtinger(D)
    n = G.generators
    rows = [_fox_row(w, n) for w in G.relators]
    sub = [r[1:] for r in rows[1:]]
    # a component that never passes under lifts off the rest: split link
    if len(D.pieces) > 1 or D.loops or n > len(G.relators):
        return LaurentPoly(())
    return LaurentPoly.from_dict(_det_laurent(sub))


def alexander_poly(D: LinkDiagram) -> LaurentPoly:
    """One-variable Alexander polynomial in canonical form (0 for split diagrams)."""
    minor = alexander_minor(D)
    if minor.is_zero() or D.num_components == 1:
        return minor.canonical()
    quotient = _divide_t_minus_one(minor)
    return quotient.canonical()


def _divide_t_minus_one(p: LaurentPoly) -> LaurentPoly:
    offset, coeffs = p.coefficient_list()
    # synthetic division by (t - 1), highest degree first
    q: list[int] = []
    carry = 0
    for c in reversed(coeffs):
        carry = c + carry
        q.append(carry)
    if q[-1] != 0:
        raise ArithmeticError("link minor is not divisible by (t - 1)")
    q.pop()
    q.reverse()
    return LaurentPoly.from_list(q, offset)


# -- Seifert matrix --------------------------------------------------------


@dataclass(frozen=True)
class SeifertData:
    matrix: tuple[tuple[int, ...], ...]
    braid: tuple[tuple[int, tuple[int, ...]], ...]
    components: int

    @property
    def size(self) -> int:
        return len(self.matrix)

    def symmetrized(self) -> list[list[int]]:
        V = self.matrix
        return [[V[i][j] + V[j][i] for j in range(self.size)] for i in range(self.size)]

    @property
    def genus(self) -> int | None:
        """Genus of the connected surface, from rank = 2g + m - 1."""
        g2 = self.size - self.components + 1
        return g2 // 2 if g2 >= 0 and g2 % 2 == 0 else None


def braid_seifert_matrix(word: Sequence[int]) -> list[list[int]]:
    """Seifert matrix of the braid closure surface for ``word``."""
    cols: dict[int, list[tuple[int, int]]] = {}
    for pos, g in enumerate(word):
        cols.setdefault(abs(g), []).append((pos, 1 if g > 0 else -1))
    gens: list[tuple[int, int, int, int, int]] = []  # (column, start, end, sign_start, sign_end)
    for col in sorted(cols):
        seq = cols[col]
        for (p, e), (q, f) in zip(seq, seq[1:]):
            gens.append((col, p, q, e, f))
    n = len(gens)
    V = [[0] * n for _ in range(n)]
    for a, (col, p, q, e, f) in enumerate(gens):
        V[a][a] = -(e + f) // 2
    for a in range(n - 1):
        b = a + 1
        if gens[a][0] == gens[b][0]:
            shared = gens[a][4]
            if shared > 0:
                V[a][b] = 1
            else:
                V[b][a] = -1
    for a, (col, p, q, _, _) in enumerate(gens):
        for b, (col2, p2, q2, _, _) in enumerate(gens):
            if col2 != col + 1:
                continue
            if p2 < p < q2 < q:
                V[b][a] = -1
            elif p < p2 < q < q2:
                V[b][a] = 1
    return V


def seifert_matrix(D: LinkDiagram) -> SeifertData:
    """Seifert matrix of a connected surface for the link.

    Each split piece is braided separately; pieces (and crossingless
    components) are joined by tubes, each of which adds a zero row.
    """
    blocks: list[list[list[int]]] = []
    braids = []
    for piece in D.pieces:
        sub = D.sublink(sorted(piece))
        if sub.crossings:
            n, word = braid_word(sub)
        else:
            n, word = 1, []
        braids.append((n, tuple(word)))
        blocks.append(braid_seifert_matrix(word))
    size = sum(len(b) for b in blocks) + len(blocks) - 1
    V = [[0] * size for _ in range(size)]
    at = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, v in enumerate(row):
                V[at + i][at + j] = v
        at += len(b)
    return SeifertData(tuple(tuple(r) for r in V), tuple(braids), D.num_components)


def signature_of_symmetric(M: Sequence[Sequence[int]]) -> int:
    """Signature of a symmetric integer matrix by exact congruence diagonalization."""
    A = [[Fraction(v) for v in row] for row in M]
    n = len(A)
    sig = 0
    k = 0
    while k < n:
        if A[k][k] == 0:
            # find a usable pivot: a non-zero diagonal, or make one from an off-diagonal
            j = next((j for j in range(k + 1, n) if A[j][j] != 0), None)
            if j is not None:
                A[k], A[j] = A[j], A[k]
                for row in A:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if A[k][j] != 0), None)
                if j is None:
                    k += 1
                    continue
                # row_k += row_j, col_k += col_j gives diagonal 2 A[k][j]
                for c in range(n):
                    A[k][c] += A[j][c]
                for r in range(n):
                    A[r][k] += A[r][j]
        p = A[k][k]
        sig += 1 if p > 0 else -1
        for r in range(k + 1, n):
            if A[r][k] != 0:
                m = A[r][k] / p
                for c in range(k, n):
                    A[r][c] -= m * A[k][c]
                for c in range(k, n):
                    A[c][r] = A[r][c]
        for r in range(k + 1, n):
            A[r][k] = A[k][r] = Fraction(0)
        k += 1
    return sig


def signature(D: LinkDiagram) -> int:
    S = seifert_matrix(D)
    return signature_of_symmetric(S.symmetrized())


def seifert_alexander(S: SeifertData) -> LaurentPoly:
    """``det(V - t V^T)`` as a Laurent polynomial."""
    V = S.matrix
    n = len(V)
    rows = [[{0: V[i][j], 1: -V[j][i]} for j in range(n)] for i in range(n)]
    rows = [[{e: c for e, c in entry.items() if c} for entry in row] for row in rows]
    return LaurentPoly.from_dict(_det_laurent(rows))


def determinant(D: LinkDiagram) -> int:
    """``|det(V + V^T)|``."""
    S = seifert_matrix(D)
    M = S.symmetrized()
    if not M:
        return 1
    return abs(int(DomainMatrix([[ZZ(v) for v in r] for r in M], (len(M), len(M)), ZZ).det()))


def g4_bounds_from_c(c: int) -> tuple[Fraction, int]:
    """Slice-genus window ``(c/2, c)`` from ``c`` (self-)intersections."""
    if c < 0:
        raise ValueError("intersection count must be non-negative")
    return Fraction(c, 2), c
