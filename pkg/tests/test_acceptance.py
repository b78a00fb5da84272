"""Acceptance suite: one or more tests per numbered criterion.

conftest.py prints a PASS/FAIL/WAIVED line per criterion at the end of the run.
"""

import random
from itertools import product

import pytest
import sympy as sp
from linkgen import (
    BORROMEAN_PD,
    HOPF,
    TREFOIL_BR,
    UNLINK2,
    WHITEHEAD_PD,
    diagram,
    metabelian_trivial,
    normalize_poly,
    random_braid_link,
    random_knot,
    random_pattern,
    random_zero_lk_string_link,
    seifert_alexander_sympy,
)

from linkcert import (
    IntersectionLedger,
    alexander_poly,
    closure,
    g4_bounds_from_c,
    gen_family,
    in_derived,
    milnor_mu,
    milnor_table,
    mu_vanish_up_to,
    multi_infect,
    refined_bounds_choices,
    refined_vanish,
    required_length_thm14,
    required_length_thm15,
    seifert_matrix,
    signature,
    solvable_nf,
)
from linkcert.classical import LaurentPoly
from linkcert.families import whitehead_double
from linkcert.groups import FreeWord, commutator, gen
from linkcert.milnor import first_nonvanishing_length
from linkcert.tangle import from_braid, trivial_string_link

PRINTED_REFERENCE = "-4t^-5+36t^-4-144t^-3+336t^-2-504t^-1+504-336t+144t^2-35t^3+4t^4"


# -- 1 ------------------------------------------------------------------------


@pytest.mark.parametrize("c, r, add, doubled", [(3, 2, 5, 6), (4, 2, 6, 8)])
def test_criterion_01_thresholds(c, r, add, doubled):
    ledger = IntersectionLedger.uniform(r, c)
    assert required_length_thm14(ledger) == add
    assert required_length_thm15(ledger) == doubled


# -- 2 ------------------------------------------------------------------------


def test_criterion_02_unlink_all_zero_through_8():
    table = milnor_table(diagram(UNLINK2), 8)
    assert table.entries
    assert all(v == 0 for v, _ in table.entries.values())


def test_criterion_02_hopf():
    value, delta = milnor_mu(diagram(HOPF), (1, 2))
    assert abs(value) == 1 and delta == 0


def test_criterion_02_borromean():
    D = diagram(BORROMEAN_PD)
    assert all(v == 0 for v, _ in milnor_table(D, 2).entries.values())
    value, delta = milnor_mu(D, (1, 2, 3))
    assert abs(value) == 1 and delta == 0


def test_criterion_02_whitehead():
    D = diagram(WHITEHEAD_PD)
    assert mu_vanish_up_to(D, 3)
    value, delta = milnor_mu(D, (1, 1, 2, 2))
    assert abs(value) == 1 and delta == 0


# -- 3 ------------------------------------------------------------------------


def test_criterion_03_length_two_is_linking_number():
    rng = random.Random(3)
    checked = 0
    for _ in range(220):
        D = random_braid_link(rng, (2, 4), 12)
        m = D.num_components
        for i in range(m):
            for j in range(m):
                if i != j:
                    value, _ = milnor_mu(D, (i + 1, j + 1))
                    assert value == D.linking_number(i, j)
        checked += 1
    assert checked >= 200


# -- 4 ------------------------------------------------------------------------


def test_criterion_04_infection_preserves_linking():
    rng = random.Random(4)
    for _ in range(120):
        D = random_braid_link(rng, (1, 3), 10)
        r = rng.randint(1, 3)
        P = random_pattern(rng, D, r)
        J = random_zero_lk_string_link(rng, r)
        R = multi_infect(P, J)
        assert R.num_components == D.num_components
        assert R.linking_matrix() == D.linking_matrix()


# -- 5 ------------------------------------------------------------------------


def test_criterion_05_trivial_infection_is_identity():
    rng = random.Random(5)
    for _ in range(60):
        D = random_braid_link(rng, (1, 3), 9)
        r = rng.randint(1, 3)
        P = random_pattern(rng, D, r)
        R = multi_infect(P, trivial_string_link(r))
        assert R.linking_matrix() == D.linking_matrix()
        assert alexander_poly(R).equals_up_to_units(alexander_poly(D))


# -- 6 ------------------------------------------------------------------------


def test_criterion_06_depth_two_exhaustive_rank3():
    """Every reduced word of length <= 8 in rank 3 (585,937 words)."""
    letters = (1, -1, 2, -2, 3, -3)
    step = {a: solvable_nf((a,), 2, 3) for a in letters}
    identity = solvable_nf((), 2, 3)
    count = 0
    disagreements = []

    def walk(word, nf):
        nonlocal count
        count += 1
        if nf.is_trivial() != metabelian_trivial(word, 3):
            disagreements.append(tuple(word))
        if len(word) == 8:
            return
        for a in letters:
            if word and word[-1] == -a:
                continue
            word.append(a)
            walk(word, nf * step[a])
            word.pop()

    walk([], identity)
    assert count == 1 + 6 * (5**8 - 1) // 4
    assert not disagreements


def test_criterion_06_direct_membership_sample():
    rng = random.Random(6)
    members = 0
    for _ in range(3000):
        n = rng.randint(0, 8)
        w = FreeWord(tuple(rng.choice((1, -1, 2, -2, 3, -3)) for _ in range(n)))
        expected = metabelian_trivial(w.letters, 3)
        assert in_derived(w, 2, 3) == expected
        members += expected
    # also hit members built on purpose
    x, y, z = gen(1), gen(2), gen(3)
    for a, b in product([x, y, z, x * y, y.inverse() * z], repeat=2):
        c1 = commutator(a, b)
        c2 = commutator(c1, commutator(b, a * b))
        assert in_derived(c2, 2, 3) == metabelian_trivial(c2.letters, 3)
    assert members > 0


def test_criterion_06_depth_three_spot_checks():
    x, y, z = gen(1), gen(2), gen(3)
    xy = commutator(x, y)
    assert in_derived(xy, 1, 3) and not in_derived(xy, 2, 3)
    double = commutator(xy, commutator(x, z))
    assert in_derived(double, 2, 3) and not in_derived(double, 3, 3)
    triple = commutator(double, commutator(commutator(y, z), commutator(x, y)))
    assert in_derived(triple, 3, 3)


# -- 7 ------------------------------------------------------------------------


def test_criterion_07_trefoil_and_unknot():
    T = diagram(TREFOIL_BR)
    assert alexander_poly(T).equals_up_to_units(LaurentPoly.parse("t^2-t+1"))
    assert signature(T) == -2
    U = diagram("PD[Loop[1]]")
    assert alexander_poly(U).equals_up_to_units(LaurentPoly.parse("1"))
    assert signature(U) == 0


def _knot_corpus():
    from linkgen import SMALL_PD, from_table

    rng = random.Random(7)
    out = [from_table(name) for name in SMALL_PD if name.startswith("K")]
    while len(out) < 60:
        K = random_knot(rng, 10)
        if K.num_crossings <= 10:
            out.append(K)
    return out


def test_criterion_07_symmetry_and_determinant():
    for K in _knot_corpus():
        delta = alexander_poly(K)
        assert delta.is_symmetric(), K.pd_text()
        S = seifert_matrix(K)
        sym = sp.Matrix(S.symmetrized()) if S.size else sp.Matrix([[1]])
        assert abs(delta.evaluate(-1)) == abs(sym.det()), K.pd_text()
        # independent route: det(V - t V^T) from the same Seifert matrix
        assert normalize_poly(seifert_alexander_sympy(S.matrix)) == normalize_poly(
            delta.as_dict
        )


# -- 8 ------------------------------------------------------------------------


def test_criterion_08_reference_example():
    printed = LaurentPoly.parse(PRINTED_REFERENCE)
    # the printed reference is not palindromic, which a genuine Alexander polynomial must be
    assert not printed.is_symmetric()
    coeffs = printed.as_dict
    assert (coeffs[-3], coeffs[2]) == (-144, 144)
    assert (coeffs[-4], coeffs[3]) == (36, -35)
    assert g4_bounds_from_c(3) == (sp.Rational(3, 2), 3)
    assert g4_bounds_from_c(4) == (2, 4)
    pytest.skip(
        "waived: no diagram of the reference link is available; "
        "printed polynomial is non-palindromic (-144 vs +144, 36 vs -35)"
    )


# -- 9 ------------------------------------------------------------------------


def test_criterion_09_family_generator():
    member = gen_family("whitehead-iterate", 1)
    L = closure(member.string_link)
    assert mu_vanish_up_to(L, 3)
    assert not mu_vanish_up_to(L, 4)
    assert first_nonvanishing_length(L) == 4
    meta = member.metadata()
    assert meta["firstNonvanishingLength"] == 4
    assert meta["vanishingThrough"] == 3
    # the same lengths from an independent construction
    W = whitehead_double(diagram(HOPF), 1)
    assert first_nonvanishing_length(W) == 4


# -- 10 -----------------------------------------------------------------------


def _ledger_strings(r):
    J0 = trivial_string_link(r)
    yield J0
    if r == 2:
        yield gen_family("whitehead-iterate", 1).string_link
        yield gen_family("whitehead-iterate", 2).string_link
    if r == 3:
        yield from_braid(3, [1, -2, 1, -2, 1, -2])


def test_criterion_10_refined_choice_dominance():
    rng = random.Random(10)
    strings = {r: list(_ledger_strings(r)) for r in (2, 3)}
    rng_strings = {r: [random_zero_lk_string_link(rng, r, 1) for _ in range(3)] for r in (2, 3)}
    hypothesis_held = 0
    for _ in range(60):
        r = rng.choice((2, 3))
        pairs = [(i, j) for i in range(1, r + 1) for j in range(i + 1, r + 1)]
        mixed = {}
        for _ in range(rng.randint(0, 6)):
            key = rng.choice(pairs)
            mixed[key] = mixed.get(key, 0) + 1
        budget = 8 - r - sum(mixed.values())
        self_counts = [0] * r
        for _ in range(rng.randint(0, max(budget, 0))):
            self_counts[rng.randrange(r)] += 1
        ledger = IntersectionLedger(r, tuple(self_counts), mixed)
        if ledger.c + r > 8:
            continue
        choices = refined_bounds_choices(ledger)
        assert all(sum(v) == r + ledger.c for v in choices)
        for J in strings[r] + rng_strings[r]:
            L = closure(J)
            if mu_vanish_up_to(L, ledger.c + r):
                hypothesis_held += 1
                assert all(refined_vanish(L, v) for v in choices)
    assert hypothesis_held > 0
