import random

import pytest
from linkgen import (
    BORROMEAN_BR,
    BORROMEAN_PD,
    HOPF,
    SMALL_PD,
    TREFOIL_BR,
    TREFOIL_PD,
    UNLINK2,
    WHITEHEAD_DT,
    WHITEHEAD_PD,
    diagram,
    from_table,
    random_braid_link,
)

from linkcert import DiagramError, DiagramSyntaxError, parse_diagram, parse_string_link
from linkcert.milnor import milnor_mu
from linkcert.tangle import closure
from linkcert.textio import string_link_text, to_braid, to_dt


def test_hopf_linking_and_components():
    D = diagram(HOPF)
    assert D.num_components == 2
    assert D.num_crossings == 2
    assert D.linking_matrix() == [[0, 1], [1, 0]]


def test_mirror_and_reverse_flip_linking():
    D = diagram(HOPF)
    assert D.mirror().linking_number(0, 1) == -1
    assert D.reversed([0]).linking_number(0, 1) == -1
    assert D.reversed([0, 1]).linking_number(0, 1) == 1


def test_trefoil_writhe_from_pd_and_braid():
    assert diagram(TREFOIL_BR).writhe() == 3
    assert abs(diagram(TREFOIL_PD).writhe()) == 3
    assert diagram(TREFOIL_BR).mirror().writhe() == -3


def test_unlink_loops():
    D = diagram(UNLINK2)
    assert D.num_components == 2
    assert D.num_crossings == 0
    assert D.linking_matrix() == [[0, 0], [0, 0]]


def test_borromean_pd_and_braid_agree_on_linking():
    for text in (BORROMEAN_PD, BORROMEAN_BR):
        D = diagram(text)
        assert D.num_components == 3
        assert all(v == 0 for row in D.linking_matrix() for v in row)


@pytest.mark.parametrize(
    "text",
    ["PD[X[1,2,3]]", "PD[X[1,3,2,4],X[3,1,4,2]", "FOO[1]", "BR[0,[]]", "DT[]"],
)
def test_syntax_errors_carry_a_position(text):
    with pytest.raises(DiagramSyntaxError) as info:
        parse_diagram(text)
    assert "position" in str(info.value)


@pytest.mark.parametrize("text", ["PD[X[1,2,3,4],X[5,6,7,8]]", "PD[X[1,1,2,3]]"])
def test_inconsistent_codes_rejected(text):
    with pytest.raises(DiagramError):
        parse_diagram(text)


def test_comments_are_ignored():
    D = parse_diagram("# Hopf link\nPD[X[1,3,2,4],\n  # second crossing\n X[3,1,4,2]]\n")
    assert D.num_crossings == 2


@pytest.mark.parametrize("name", sorted(SMALL_PD))
def test_pd_text_round_trip(name):
    D = from_table(name)
    again = parse_diagram(D.pd_text())
    assert again.num_crossings == D.num_crossings
    assert again.linking_matrix() == D.linking_matrix()
    assert again.canonical_text() == D.canonical_text()


def test_relabeled_canonical_text_ignores_labels():
    rng = random.Random(11)
    for _ in range(20):
        D = random_braid_link(rng, (1, 3), 8)
        shift = {lab: lab + 100 for comp in D.components for lab in comp}
        text = "PD[" + ",".join(
            "X[" + ",".join(str(shift[v]) for v in c) + "]" for c in D.crossings
        ) + "]"
        if D.loops:
            continue
        assert parse_diagram(text).relabeled().canonical_text() == D.relabeled().canonical_text()


def test_dt_whitehead():
    pytest.importorskip("spherogram")
    D = diagram(WHITEHEAD_DT)
    assert (D.num_components, D.num_crossings) == (2, 5)
    value, _ = milnor_mu(D, (1, 1, 2, 2))
    assert abs(value) == 1


def test_dt_and_braid_export_round_trip():
    pytest.importorskip("spherogram")
    W = diagram(WHITEHEAD_PD)
    again = parse_diagram(to_dt(W))
    assert again.num_crossings == 5
    assert abs(milnor_mu(again, (1, 1, 2, 2))[0]) == 1
    B = parse_diagram(to_braid(diagram(TREFOIL_PD)))
    assert abs(B.writhe()) == 3


def test_string_link_formats():
    J = parse_string_link("SL[2,[cup3,2,2,cap2]]")
    assert J.strands == 2
    assert parse_string_link("BR[3,[1,1,2,2]]").strands == 3
    T = parse_string_link(string_link_text(J))
    assert (T.strands, T.crossings, T.signs) == (J.strands, J.crossings, J.signs)


def test_closed_inputs_are_cut_open():
    for text in (HOPF, WHITEHEAD_PD, TREFOIL_BR):
        J = parse_string_link(text)
        L, D = closure(J), diagram(text)
        assert L.num_components == D.num_components
        assert L.linking_matrix() == D.linking_matrix()


def test_three_component_closed_input_rejected():
    with pytest.raises(DiagramError):
        parse_string_link(BORROMEAN_PD)
