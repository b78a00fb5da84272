import random
from fractions import Fraction

import pytest
import sympy as sp
from linkgen import (
    HOPF,
    SMALL_PD,
    TREFOIL_BR,
    UNLINK2,
    WHITEHEAD_PD,
    diagram,
    from_table,
    metabelian_trivial,
    normalize_poly,
    random_braid_link,
    random_knot,
    seifert_alexander_sympy,
    symmetric_signature_numpy,
)

from linkcert import (
    FreeWord,
    alexander_poly,
    commutator,
    derived_depth,
    fox_derivative,
    g4_bounds_from_c,
    in_derived,
    seifert_matrix,
    signature,
    solvable_nf,
)
from linkcert.classical import LaurentPoly, determinant
from linkcert.derived import DepthCapError
from linkcert.groups import gen


def _random_word(rng, rank, n):
    return FreeWord(tuple(rng.choice([1, -1]) * rng.randint(1, rank) for _ in range(n)))


# -- Fox calculus and derived series ------------------------------------------------


def test_fox_fundamental_formula():
    """w - 1 = sum_i (dw/dx_i)(x_i - 1) in the group ring."""
    rng = random.Random(1)
    for _ in range(100):
        w = _random_word(rng, 3, rng.randint(0, 10))
        total: dict[FreeWord, int] = {}
        for i in range(1, 4):
            for g, c in fox_derivative(w, i).items():
                for h, s in ((g * gen(i), c), (g, -c)):
                    total[h] = total.get(h, 0) + s
        total = {k: v for k, v in total.items() if v}
        expected = {} if not w.letters else {w: 1, FreeWord(()): -1}
        assert total == expected


def test_fox_derivative_example():
    d = fox_derivative(FreeWord.parse("x1 x2 x1^-1"), 1)
    assert d == {FreeWord(()): 1, FreeWord((1, 2, -1)): -1}


def test_derived_depths():
    x, y, z = gen(1), gen(2), gen(3)
    assert derived_depth(x) == 0
    assert derived_depth(commutator(x, y)) == 1
    assert derived_depth(commutator(commutator(x, y), commutator(x, z))) == 2
    assert derived_depth(FreeWord(())) is None


def test_depth_cap():
    with pytest.raises(DepthCapError):
        in_derived(gen(1), 9)


def test_normal_form_is_a_homomorphism():
    rng = random.Random(2)
    for _ in range(60):
        u, v = _random_word(rng, 3, 6), _random_word(rng, 3, 6)
        assert solvable_nf(u * v, 2, 3) == solvable_nf(u, 2, 3) * solvable_nf(v, 2, 3)


def test_conjugates_of_derived_members_stay_inside():
    rng = random.Random(3)
    x, y, z = gen(1), gen(2), gen(3)
    member = commutator(commutator(x, y), commutator(y, z))
    for _ in range(30):
        g = _random_word(rng, 3, 5)
        assert in_derived(member.conjugate(g), 2, 3)
        assert metabelian_trivial(member.conjugate(g).letters, 3)


# -- Alexander polynomial and signature ----------------------------------------------


def test_laurent_parse_and_units():
    p = LaurentPoly.parse("t^2-t+1")
    assert p.to_json()["coefficients"] == [1, -1, 1]
    assert LaurentPoly.parse("t^-1-1+t").equals_up_to_units(p)
    assert LaurentPoly.parse("-t^3+t^2-t").equals_up_to_units(p)
    assert p.is_symmetric()
    assert p.evaluate(-1) == Fraction(3)


def test_link_calibration():
    assert alexander_poly(diagram(HOPF)).equals_up_to_units(LaurentPoly.parse("1"))
    assert alexander_poly(diagram(WHITEHEAD_PD)).equals_up_to_units(LaurentPoly.parse("t^2-2t+1"))
    assert alexander_poly(diagram(UNLINK2)).is_zero()


def test_link_alexander_against_seifert_determinant():
    """For links the Fox route equals det(V - tV^T) / (t - 1)."""
    t = sp.symbols("t")
    rng = random.Random(4)
    checked = 0
    while checked < 25:
        D = random_braid_link(rng, (2, 3), 10, connected=True)
        seif = seifert_alexander_sympy(seifert_matrix(D).matrix)
        ours = alexander_poly(D).as_dict
        product = sp.Poly(sp.expand(sum(c * t ** (e + 10) for e, c in ours.items()) * (t - 1)), t)
        expected = {m[0] - 10: int(c) for m, c in zip(product.monoms(), product.coeffs())}
        assert normalize_poly(seif) == normalize_poly(expected), D.pd_text()
        checked += 1


def test_trefoil_determinant_and_signs():
    T = diagram(TREFOIL_BR)
    assert determinant(T) == 3
    assert signature(T.mirror()) == 2
    assert signature(diagram(HOPF)) == -1


def test_seifert_matrix_shape_for_trefoil():
    S = seifert_matrix(diagram(TREFOIL_BR))
    assert S.size == 2
    assert S.genus == 1


@pytest.mark.parametrize("name", sorted(n for n in SMALL_PD if n.startswith("K")))
def test_signature_against_spherogram(name):
    spherogram = pytest.importorskip("spherogram")
    K = from_table(name)
    theirs = [[int(v) for v in row] for row in spherogram.Link(SMALL_PD[name]).seifert_matrix()]
    sym = [[theirs[i][j] + theirs[j][i] for j in range(len(theirs))] for i in range(len(theirs))]
    # spherogram draws the mirror image of the KnotTheory convention
    assert signature(K) == -symmetric_signature_numpy(sym)
    assert alexander_poly(K).equals_up_to_units(
        LaurentPoly.from_dict(seifert_alexander_sympy(theirs))
    )


def test_signature_is_numpy_signature_of_own_matrix():
    rng = random.Random(5)
    for _ in range(30):
        K = random_knot(rng, 10)
        S = seifert_matrix(K)
        assert signature(K) == symmetric_signature_numpy(S.symmetrized())
        assert signature(K) % 2 == 0


def test_g4_window():
    assert g4_bounds_from_c(0) == (0, 0)
    assert g4_bounds_from_c(3) == (Fraction(3, 2), 3)
    with pytest.raises(ValueError):
        g4_bounds_from_c(-1)
