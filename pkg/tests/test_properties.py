from hypothesis import given, settings
from hypothesis import strategies as st
from linkgen import metabelian_trivial

from linkcert import (
    FreeWord,
    IntersectionLedger,
    in_derived,
    magnus_expand,
    refined_bounds_choices,
)
from linkcert.derived import solvable_nf
from linkcert.groups import free_reduce

letters = st.sampled_from([1, -1, 2, -2, 3, -3])
words = st.lists(letters, max_size=12).map(lambda xs: FreeWord(tuple(xs)))


@given(st.lists(letters, max_size=20))
def test_free_reduction_is_idempotent_and_reduced(xs):
    once = free_reduce(xs)
    assert free_reduce(once) == once
    assert all(a != -b for a, b in zip(once, once[1:]))


@given(words, words)
def test_magnus_multiplicative(u, v):
    assert magnus_expand(u * v, 4) == magnus_expand(u, 4) * magnus_expand(v, 4)


@given(words, words)
@settings(max_examples=150)
def test_commutators_are_in_first_derived(u, v):
    c = u * v * u.inverse() * v.inverse()
    assert in_derived(c, 1, 3)
    assert in_derived(c, 2, 3) == metabelian_trivial(c.letters, 3)


@given(words, words)
def test_normal_form_multiplies(u, v):
    assert solvable_nf(u * v, 2, 3) == solvable_nf(u, 2, 3) * solvable_nf(v, 2, 3)


@st.composite
def ledgers(draw):
    r = draw(st.integers(1, 4))
    self_counts = tuple(draw(st.lists(st.integers(0, 3), min_size=r, max_size=r)))
    pairs = [(i, j) for i in range(1, r + 1) for j in range(i + 1, r + 1)]
    mixed = {p: draw(st.integers(0, 2)) for p in pairs}
    return IntersectionLedger(r, self_counts, mixed)


@given(ledgers())
def test_choice_vectors_sum_to_r_plus_c(ledger):
    choices = refined_bounds_choices(ledger)
    assert choices
    assert all(sum(v) == ledger.r + ledger.c for v in choices)
