import random

import pytest
from linkgen import HOPF, UNLINK2, UNLINK3, WHITEHEAD_PD, diagram

from linkcert import (
    DegreeCapError,
    FreeQuotientWitness,
    IntersectionLedger,
    MultiDiskPattern,
    SiteStrand,
    certify_slice,
    certify_solvable,
    closure,
    cut_open,
    from_braid,
    gen_family,
    refined_bounds_choices,
    required_length_thm14,
    required_length_thm15,
)
from linkcert.certify import ChoiceCapError
from linkcert.groups import commutator, gen
from linkcert.milnor import first_nonvanishing_length
from linkcert.schemas import certificate_from_json
from linkcert.tangle import trivial_string_link


def _unlink_pattern(r):
    D = diagram(UNLINK2 if r == 2 else UNLINK3)
    return MultiDiskPattern(D, [[SiteStrand(k, D.components[k][0])] for k in range(r)])


BORROMEAN_J = from_braid(3, [1, -2, 1, -2, 1, -2])


# -- ledgers --------------------------------------------------------------------


def test_ledger_totals_and_validation():
    ledger = IntersectionLedger(3, (1, 0, 2), {(2, 1): 1, (1, 3): 2})
    assert ledger.c == 6
    assert ledger.mixed == {(1, 2): 1, (1, 3): 2}
    with pytest.raises(ValueError):
        IntersectionLedger(2, (1,))
    with pytest.raises(ValueError):
        IntersectionLedger(2, (0, 0), {(1, 1): 1})
    with pytest.raises(ValueError):
        IntersectionLedger(2, (-1, 0))


def test_threshold_edge_cases():
    assert required_length_thm14(IntersectionLedger.uniform(1, 0)) == 1
    assert required_length_thm15(IntersectionLedger.uniform(1, 0)) == 0


def test_doubled_threshold_exceeds_additive_iff_c_at_least_r():
    for r in range(1, 5):
        for c in range(7):
            ledger = IntersectionLedger.uniform(r, c)
            assert (required_length_thm15(ledger) >= required_length_thm14(ledger)) == (c >= r)


def test_refined_choice_examples():
    assert refined_bounds_choices(IntersectionLedger(2, (1, 0), {(1, 2): 1})) == {(3, 1), (2, 2)}
    assert refined_bounds_choices(IntersectionLedger(2, (0, 0))) == {(1, 1)}
    assert refined_bounds_choices(IntersectionLedger(3, (0, 0, 0), {(1, 2): 2})) == {
        (3, 1, 1),
        (2, 2, 1),
        (1, 3, 1),
    }


def test_refined_choice_cap():
    ledger = IntersectionLedger(2, (0, 0), {(1, 2): 20})
    assert len(refined_bounds_choices(ledger)) == 21
    with pytest.raises(ChoiceCapError):
        refined_bounds_choices(ledger, cap=10)


def test_refined_choices_sum_to_r_plus_c():
    rng = random.Random(1)
    for _ in range(100):
        r = rng.randint(1, 4)
        pairs = [(i, j) for i in range(1, r + 1) for j in range(i + 1, r + 1)]
        mixed = {p: rng.randint(0, 2) for p in pairs}
        ledger = IntersectionLedger(r, tuple(rng.randint(0, 2) for _ in range(r)), mixed)
        for v in refined_bounds_choices(ledger):
            assert sum(v) == r + ledger.c
            assert all(x >= 1 + s for x, s in zip(v, ledger.self_counts))


# -- slice certificates ------------------------------------------------------------


@pytest.mark.parametrize("mode", ["thm14", "thm15", "refined"])
def test_trivial_string_link_certified_in_every_mode(mode):
    cert = certify_slice(_unlink_pattern(2), IntersectionLedger.uniform(2, 3), trivial_string_link(2), mode)
    assert cert.verdict == "certified"
    assert cert.assumptions


def test_whitehead_fails_additive_threshold():
    J = cut_open(diagram(WHITEHEAD_PD))
    cert = certify_slice(_unlink_pattern(2), IntersectionLedger.uniform(2, 2), J, "thm14")
    assert cert.verdict == "not-certified"
    assert cert.requirement["requiredLength"] == 4
    assert cert.evidence["firstNonvanishingLength"] == 4
    found = {tuple(e["index"]): e["value"] for e in cert.evidence["nonvanishing"]}
    assert abs(found[(1, 1, 2, 2)]) == 1


def test_whitehead_passes_when_threshold_is_below_four():
    J = cut_open(diagram(WHITEHEAD_PD))
    cert = certify_slice(_unlink_pattern(2), IntersectionLedger.uniform(2, 1), J, "thm14")
    assert cert.requirement["requiredLength"] == 3
    assert cert.verdict == "certified"


def test_refined_mode_records_the_satisfying_choice():
    J = cut_open(diagram(WHITEHEAD_PD))
    ledger = IntersectionLedger(2, (1, 0), {(1, 2): 1})
    cert = certify_slice(_unlink_pattern(2), ledger, J, "refined")
    # (3,1) admits only indices with a single 2, so it passes; (2,2) admits 1122
    assert cert.verdict == "certified"
    assert tuple(cert.evidence["satisfyingChoice"]) == (3, 1)


def test_strand_mismatch_and_cap_errors():
    with pytest.raises(ValueError):
        certify_slice(_unlink_pattern(2), IntersectionLedger.uniform(3, 1), trivial_string_link(2), "thm14")
    J = cut_open(diagram(WHITEHEAD_PD))
    with pytest.raises(DegreeCapError):
        certify_slice(_unlink_pattern(2), IntersectionLedger.uniform(2, 9), J, "thm14")


def test_certificate_json_round_trip():
    cert = certify_slice(_unlink_pattern(2), IntersectionLedger.uniform(2, 2), trivial_string_link(2), "thm15")
    doc = cert.to_json()
    assert doc["schema"] == "linkcert/slice-certificate@1"
    assert certificate_from_json(doc).to_json() == doc


@pytest.mark.slow
def test_additive_threshold_beats_doubled_for_c4_r2():
    J = gen_family("whitehead-iterate", 3).string_link
    assert first_nonvanishing_length(closure(J)) == 8
    ledger = IntersectionLedger.uniform(2, 4)
    P = _unlink_pattern(2)
    assert certify_slice(P, ledger, J, "thm14").verdict == "certified"
    doubled = certify_slice(P, ledger, J, "thm15")
    assert doubled.requirement["requiredLength"] == 8
    assert doubled.verdict == "not-certified"


# -- solvability certificates --------------------------------------------------------


def test_solvable_commutator_level_one():
    eta = [commutator(gen(1), gen(2))] * 2
    cert = certify_solvable(_unlink_pattern(2), eta, 1, trivial_string_link(2))
    assert cert.verdict == "certified"
    assert cert.evidence["concludedLevel"] == 0.5


def test_solvable_rejects_meridian():
    cert = certify_solvable(_unlink_pattern(2), [gen(1), gen(2)], 1, trivial_string_link(2))
    assert cert.verdict == "not-certified"


def test_solvable_borromean_level_two():
    eta = commutator(commutator(gen(1), gen(2)), commutator(gen(1), gen(3)))
    cert = certify_solvable(_unlink_pattern(3), [eta] * 3, 2, BORROMEAN_J)
    assert cert.verdict == "certified"
    assert cert.evidence["concludedLevel"] == 1.5
    assert cert.evidence["linkingVanishes"]


def test_solvable_nests_downward():
    eta = commutator(commutator(gen(1), gen(2)), commutator(gen(1), gen(3)))
    for n in (0, 1, 2):
        assert certify_solvable(_unlink_pattern(3), [eta] * 3, n, BORROMEAN_J).verdict == "certified"
    assert certify_solvable(_unlink_pattern(3), [eta] * 3, 3, BORROMEAN_J).verdict == "not-certified"


def test_solvable_linking_condition():
    eta = [commutator(gen(1), gen(2))] * 2
    cert = certify_solvable(_unlink_pattern(2), eta, 1, cut_open(diagram(HOPF)))
    assert cert.verdict == "not-certified"
    assert not cert.evidence["linkingVanishes"]


def test_solvable_with_witness_is_conditional():
    eta = [commutator(gen(1), gen(4))] * 2
    witness = FreeQuotientWitness(4, "quotient onto a free group of rank 4")
    cert = certify_solvable(_unlink_pattern(2), eta, 1, trivial_string_link(2), witness)
    assert cert.verdict == "conditional"
    with pytest.raises(ValueError):
        certify_solvable(_unlink_pattern(2), eta, 1, trivial_string_link(2))


def test_solvable_word_count_must_match():
    with pytest.raises(ValueError):
        certify_solvable(_unlink_pattern(2), [gen(1)], 1, trivial_string_link(2))


# -- families ---------------------------------------------------------------------------


def test_whitehead_iterate_level_zero_is_hopf_type():
    member = gen_family("whitehead-iterate", 0)
    assert member.first_nonvanishing == 2
    assert abs(closure(member.string_link).linking_number(0, 1)) == 1


@pytest.mark.parametrize("kind, level, length", [("whitehead-iterate", 1, 4), ("whitehead-iterate", 2, 6), ("bing-style", 1, 4)])
def test_family_lengths_are_measured(kind, level, length):
    member = gen_family(kind, level)
    L = closure(member.string_link)
    assert L.linking_matrix() == [[0, 0], [0, 0]]
    assert first_nonvanishing_length(L) == member.first_nonvanishing == length
    meta = member.metadata()
    assert meta["kind"] == kind and meta["level"] == level
    assert meta["vanishingThrough"] == length - 1
    assert meta["crossings"] == L.num_crossings


def test_family_cap_below_first_length():
    member = gen_family("whitehead-iterate", 2, cap=4)
    assert member.first_nonvanishing is None
    assert member.metadata()["firstNonvanishingLength"] is None
    assert "cap" in member.metadata()["status"]


def test_family_rejects_bad_input():
    with pytest.raises(ValueError):
        gen_family("bing-style", 0)
    with pytest.raises(ValueError):
        gen_family("no-such-kind", 1)
