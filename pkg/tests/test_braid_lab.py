from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from annular_floer import annular_invariant as ai
from annular_floer import braid_lab as bl
from annular_floer.braids import BraidWord, parse_word
from annular_floer.errors import BadParameters, BadPosition
from annular_floer.grid_core import from_braid
from strategies import braid_words

TS = [F(k, 4) for k in range(8)]
QP_WORDS = [
    bl.quasi_positive_word(2, [((), 1)]),
    bl.quasi_positive_word(3, [((1,), 2)]),
    bl.quasi_positive_word(3, [((), 1), ((2,), 1)]),
    bl.quasi_positive_word(3, [((-2,), 1), ((), 2)]),
    bl.quasi_positive_word(2, [((), 1), ((), 1)]),
]


def A(w):
    return ai.pl_function(from_braid(w))


def union_breakpoints(*fs):
    return sorted({t for f in fs for t, _ in f.breakpoints})


# --- edits -----------------------------------------------------------------------

def test_edit_examples():
    assert bl.edit(BraidWord(1, ()), "pos_stab") == parse_word("1", 2)
    assert bl.edit(BraidWord(1, ()), "neg_stab") == parse_word("-1", 2)
    assert bl.edit(parse_word("1 1 1", 2), "crossing_flip", 2).text() == "1 1 -1"
    assert bl.edit(parse_word("1", 2), "add_letter", -1).text() == "1 -1"
    assert bl.edit(parse_word("1", 2), "tensor", parse_word("-1", 2)) == parse_word("1 -3", 4)


def test_edit_errors():
    with pytest.raises(BadPosition):
        bl.crossing_flip(parse_word("1", 2), 1)
    with pytest.raises(BadParameters):
        bl.edit(parse_word("1", 2), "twist")


def test_conjugate_and_rotate():
    w = parse_word("1 -2", 3)
    assert bl.conjugate(w, (2,)).text() == "2 1 -2 -2"
    assert bl.rotate(w, 1).text() == "-2 1"


# --- closed forms ------------------------------------------------------------------

def test_closed_form_examples():
    assert bl.closed_formulas("identity", n=3) == ai.PLFunction.constant(F(3, 2))
    assert bl.closed_formulas("torus", p=2, q=3) == ai.PLFunction.line(2, F(-1, 2))
    assert bl.closed_formulas("quasi_positive", wr=2, l=1, n=3) == ai.PLFunction.constant(F(3, 2))
    with pytest.raises(BadParameters):
        bl.closed_formulas("torus", p=3, q=2)
    with pytest.raises(BadParameters):
        bl.closed_formulas("cable", p=1)


@pytest.mark.parametrize("w", QP_WORDS, ids=lambda w: f"{w.text()}@{w.strands}")
def test_quasi_positive_formula(w):
    assert A(w) == bl.quasi_positive_formula(w.writhe, w.num_components, w.strands)


def test_torus_formula_matches_engine():
    for p, q in ((1, 1), (2, 2), (2, 4)):
        assert A(bl.torus_word(p, q)) == bl.torus_formula(p, q)


# --- band rank -----------------------------------------------------------------------

def test_band_rank_examples():
    assert bl.band_rank_lower_bound(parse_word("1 1 1", 2)).bound == 3
    for n in (1, 2, 3):
        assert bl.band_rank_lower_bound(BraidWord(n, ())).bound == 0


@pytest.mark.parametrize("w", QP_WORDS, ids=lambda w: f"{w.text()}@{w.strands}")
def test_band_rank_on_quasi_positive(w):
    b = bl.band_rank_lower_bound(w)
    # a quasi-positive word of k factors has band rank at most k
    assert b.bound <= sum(1 for g in w.letters if g > 0) - sum(1 for g in w.letters if g < 0)
    assert b.bennequin <= b.bound or b.bennequin <= len(w.letters)


@given(braid_words(max_strands=3, max_len=4))
def test_band_rank_below_letter_count(w):
    assert bl.band_rank_lower_bound(w).bound <= len(w.letters)


# --- monoid --------------------------------------------------------------------------

def test_monoid_examples():
    assert not bl.monoid_membership(parse_word("-1", 2), 0)
    for w in QP_WORDS:
        assert all(bl.monoid_membership(w, t) for t in TS)
    with pytest.raises(BadParameters):
        bl.monoid_membership(parse_word("1", 2), 2)


@given(braid_words(max_strands=3, max_len=3))
def test_membership_persists_to_larger_t(w):
    f = A(w)
    inside = [bl.monoid_membership(w, t, f) for t in TS]
    first = inside.index(True) if True in inside else len(TS)
    assert all(inside[first:])


@settings(max_examples=25)
@given(braid_words(max_strands=3, max_len=3), st.integers(1, 2), st.sampled_from(TS))
def test_adding_a_crossing_moves_M_with_its_sign(w, i, t):
    # M_t is capped by n/2 and the identity reaches the cap, so a negative
    # crossing can only lower it ("-1" on two strands drops to 0 at t = 0)
    if w.strands < 2:
        return
    i = min(i, w.strands - 1)
    M = ai.derived_functions(A(w)).M(t)
    assert ai.derived_functions(A(bl.add_letter(w, i))).M(t) >= M
    assert ai.derived_functions(A(bl.add_letter(w, -i))).M(t) <= M


@given(braid_words(max_strands=3, max_len=3), st.sampled_from(TS))
def test_M_never_exceeds_half_index(w, t):
    assert ai.derived_functions(A(w)).M(t) <= F(w.strands, 2)


@settings(max_examples=10)
@given(st.sampled_from(QP_WORDS + [parse_word("1 1", 2), parse_word("2 1 2", 3)]),
       st.sampled_from(QP_WORDS + [parse_word("1 1", 2), parse_word("2 1 2", 3)]),
       st.sampled_from(TS))
def test_monoid_product_closure(w1, w2, t):
    if w1.strands != w2.strands:
        return
    if bl.monoid_membership(w1, t) and bl.monoid_membership(w2, t):
        assert bl.monoid_membership(BraidWord(w1.strands, w1.letters + w2.letters), t)


# --- inequalities -----------------------------------------------------------------------

@settings(max_examples=12)
@given(braid_words(max_strands=3, max_len=3))
def test_stabilization_inequalities(w):
    f, fp, fm = A(w), A(bl.pos_stab(w)), A(bl.neg_stab(w))
    for t in union_breakpoints(f, fp, fm):
        assert f(t) + (1 - t) / 2 <= fp(t) <= f(t) + F(1, 2)
        assert f(t) - (1 - t) / 2 <= fm(t) <= f(t) + F(1, 2)


@settings(max_examples=25)
@given(braid_words(max_strands=3, max_len=4), st.integers(0, 3))
def test_crossing_change_inequality(w, i):
    positives = [k for k, g in enumerate(w.letters) if g > 0]
    if not positives:
        return
    k = positives[i % len(positives)]
    fplus, fminus = A(w), A(bl.crossing_flip(w, k))
    for t in union_breakpoints(fplus, fminus):
        assert fminus(t) <= fplus(t) <= fminus(t) + 1 - t / 2
