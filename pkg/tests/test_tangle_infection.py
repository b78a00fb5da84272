import random

import pytest
from linkgen import (
    HOPF,
    TREFOIL_BR,
    UNLINK2,
    WHITEHEAD_PD,
    diagram,
    random_braid_link,
    random_pattern,
    random_zero_lk_string_link,
)

from linkcert import (
    DiagramError,
    MultiDiskPattern,
    SiteStrand,
    alexander_poly,
    cable,
    closure,
    cut_open,
    from_braid,
    from_morse_word,
    milnor_mu,
    multi_infect,
    signature,
)
from linkcert.classical import LaurentPoly
from linkcert.infection import band_directions
from linkcert.milnor import first_nonvanishing_length
from linkcert.tangle import cable_string_link, trivial_string_link

TREFOIL_TANGLE = [("cup", 2), 1, 1, 1, ("cap", 2)]


# -- string links and cables ---------------------------------------------------


def test_pure_braid_closure():
    L = closure(from_braid(2, [1, 1]))
    assert L.linking_matrix() == [[0, 1], [1, 0]]


def test_non_pure_braid_is_not_a_string_link():
    with pytest.raises(DiagramError):
        from_braid(2, [1])


def test_one_strand_tangle_closes_to_trefoil():
    K = closure(from_morse_word(1, TREFOIL_TANGLE))
    assert alexander_poly(K).equals_up_to_units(LaurentPoly.parse("t^2-t+1"))


def test_zero_cable_deletes_component():
    assert cable(diagram(HOPF), 1, 0).num_components == 1


def test_cable_is_zero_framed():
    C = cable(diagram(TREFOIL_BR), 0, 2)
    assert C.num_components == 2
    assert C.linking_number(0, 1) == 0


def test_cable_copies_link_the_other_component():
    C = cable(diagram(HOPF), 0, 2)
    assert C.num_components == 3
    lk = C.linking_matrix()
    assert lk[0][1] == 0
    assert lk[0][2] == lk[1][2] == 1


def test_string_link_cable_keeps_total_linking():
    J = from_braid(2, [1, 1])
    C = closure(cable_string_link(J, [2, 1]))
    assert C.num_components == 3
    assert sorted(C.linking_matrix()[2][:2]) == [1, 1]


@pytest.mark.parametrize("text", [HOPF, WHITEHEAD_PD, TREFOIL_BR])
def test_cut_open_closure_has_same_invariants(text):
    D = diagram(text)
    L = closure(cut_open(D))
    assert L.num_crossings == D.num_crossings
    assert L.linking_matrix() == D.linking_matrix()
    assert alexander_poly(L).equals_up_to_units(alexander_poly(D))
    if D.num_components == 2:
        assert first_nonvanishing_length(L) == first_nonvanishing_length(D)


# -- infection --------------------------------------------------------------------


def test_connected_sum_with_trefoil():
    U = diagram("PD[Loop[1]]")
    P = MultiDiskPattern(U, [[SiteStrand(0, 1)]])
    R = multi_infect(P, from_morse_word(1, TREFOIL_TANGLE))
    assert alexander_poly(R).equals_up_to_units(LaurentPoly.parse("t^2-t+1"))
    assert signature(R) == -2


def test_all_sites_empty_returns_pattern():
    D = diagram(WHITEHEAD_PD)
    P = MultiDiskPattern(D, [[], []])
    R = multi_infect(P, random_zero_lk_string_link(random.Random(0), 2))
    assert R.canonical_text() == D.canonical_text()


def test_strand_count_mismatch():
    P = MultiDiskPattern(diagram(UNLINK2), [[SiteStrand(0, 1)], [SiteStrand(1, 2)]])
    with pytest.raises(DiagramError):
        multi_infect(P, trivial_string_link(3))


def test_unlink_infected_by_cut_whitehead():
    P = MultiDiskPattern(diagram(UNLINK2), [[SiteStrand(0, 1)], [SiteStrand(1, 2)]])
    R = multi_infect(P, cut_open(diagram(WHITEHEAD_PD)))
    assert R.linking_matrix() == [[0, 0], [0, 0]]
    assert abs(milnor_mu(R, (1, 1, 2, 2))[0]) == 1


def test_nonzero_linking_string_link_changes_linking():
    # the zero-linking hypothesis matters: a Hopf clasp links the two unknots
    P = MultiDiskPattern(diagram(UNLINK2), [[SiteStrand(0, 1)], [SiteStrand(1, 2)]])
    R = multi_infect(P, cut_open(diagram(HOPF)))
    assert abs(R.linking_number(0, 1)) == 1


def test_empty_site_drops_its_strand():
    D = diagram(TREFOIL_BR)
    edge = D.components[0][0]
    P = MultiDiskPattern(D, [[], [SiteStrand(0, edge)]])
    J = from_morse_word(2, [1, 1, ("cup", 3), 2, 2, 2, ("cap", 3), -1, -1])
    R = multi_infect(P, J)
    assert R.num_components == 1
    # only the knotted second strand survives: trefoil # trefoil, (t^2-t+1)^2
    assert alexander_poly(R).equals_up_to_units(LaurentPoly.parse("t^4-2t^3+3t^2-2t+1"))


def test_band_that_crosses_itself_is_rejected():
    D = diagram("PD[X[8,6,1,5],X[1,6,2,7],X[3,3,4,2],X[7,4,8,5]]")
    strands = [SiteStrand(0, e) for e in (6, 4, 2, 8)]
    with pytest.raises(DiagramError, match="crosses itself"):
        band_directions(D, strands)


def test_contradicting_direction_is_rejected():
    D = diagram(HOPF)
    e = D.components[0][0]
    dirs = band_directions(D, [SiteStrand(0, e)])
    assert dirs in ([1], [-1])
    F = D.faces
    # a second edge of the face reached after the first: its direction is forced
    reached = F.right[e] if dirs[0] > 0 else F.left[e]
    nxt = next(lab for lab, _ in F.boundary[reached] if lab != e)
    forced = band_directions(D, [SiteStrand(0, e, dirs[0]), SiteStrand(D.component_of[nxt], nxt)])[1]
    with pytest.raises(DiagramError):
        band_directions(D, [SiteStrand(0, e, dirs[0]), SiteStrand(D.component_of[nxt], nxt, -forced)])


def test_random_infections_are_planar():
    rng = random.Random(12)
    for _ in range(60):
        D = random_braid_link(rng, (1, 3), 10)
        r = rng.randint(1, 3)
        P = random_pattern(rng, D, r)
        R = multi_infect(P, random_zero_lk_string_link(rng, r))
        assert R.faces.boundary  # Euler check on every piece
        assert R.num_components == D.num_components
