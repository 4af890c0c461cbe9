from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from annular_floer import annular_invariant as ai
from annular_floer import grid_core as g
from annular_floer.braids import BraidWord, parse_word
from annular_floer.errors import BadParameters, NoAxis, TruncationUnstable
from expected import IDENTITY, REGRESSION_TOP, TORUS
from oracles import brute_value
from strategies import annular_grids, braid_words

TS = [F(k, 4) for k in range(9)]


def grid(text, n):
    return g.from_braid(parse_word(text, n))


# --- PL functions --------------------------------------------------------------

def test_pl_function_basics():
    f = ai.PLFunction(((0, 1), (1, F(1, 2)), (2, 1)))
    assert f(F(1, 2)) == F(3, 4)
    assert f.slope_right(0) == F(-1, 2) and f.slope_right(1) == F(1, 2)
    assert f.slope_right(2) == 0
    assert ai.PLFunction.from_json(f.to_json()) == f
    with pytest.raises(BadParameters):
        f(3)


def test_collinear_corners_are_merged():
    f = ai.PLFunction(((0, 0), (1, 1), (2, 2)))
    assert f.breakpoints == ((0, 0), (2, 2))


@pytest.mark.parametrize("bad", [((0, 0),), ((1, 0), (2, 0)), ((0, 0), (0, 1), (2, 0))])
def test_pl_function_rejects(bad):
    with pytest.raises(ValueError):
        ai.PLFunction(bad)


def test_derived_functions():
    df = ai.derived_functions(ai.PLFunction.line(2, F(-1, 2)))
    assert df.m(1) == F(-1, 2) and df.y(1) == 2 and df.M(1) == 1


# --- values ----------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3])
def test_identity(n):
    assert ai.pl_function(grid("", n)).breakpoints == IDENTITY[n]


@pytest.mark.parametrize("pq", [(2, 2), (2, 3), (3, 3)])
def test_torus(pq):
    p, q = pq
    f = ai.pl_function(g.from_braid(BraidWord(p, tuple(list(range(1, p)) * q))))
    assert (f(0), f(2)) == TORUS[pq] and len(f.breakpoints) == 2


@pytest.mark.parametrize("key", sorted(REGRESSION_TOP))
def test_regression_values(key):
    assert ai.pl_function(grid(*key)).breakpoints == REGRESSION_TOP[key]


@given(annular_grids(max_n=5), st.sampled_from(TS))
def test_top_matches_brute_force(d, t):
    assert ai.value_at(d, t).value == brute_value(d, t)


@given(annular_grids(max_n=5), st.sampled_from(TS))
def test_bottom_matches_brute_force(d, t):
    assert ai.value_at(d, t, ai.BOTTOM).value == brute_value(d, t, "bottom")


def test_value_without_tightening_agrees():
    d = grid("1 -2 1", 3)
    loose = ai.InvariantConfig(tighten=False)
    for t in TS:
        assert ai.value_at(d, t).value == ai.value_at(d, t, cfg=loose).value


def test_witnesses_realise_value():
    d = grid("1 1 1", 2)
    res = ai.value_at(d, 1)
    assert all(u / 2 + l / 2 == res.value for u, l in res.witness_bigradings)


def test_tau_examples():
    assert ai.tau(grid("1 1 1", 2)) == 3
    assert ai.tau(grid("", 1)) == 1


def test_needs_axis():
    with pytest.raises(NoAxis):
        ai.value_at(g.validate(2, [1, 0], [0, 1], plain=True), 0)


@given(braid_words(max_strands=3, max_len=3))
def test_slopes_come_from_realised_bigradings(w):
    d = g.from_braid(w)
    f = ai.pl_function(d)
    grads = ai._model(d, ai.TOP, ai.InvariantConfig()).bigradings()
    slopes = {(u - l) / 2 for u, l in grads}
    for (t0, v0), (t1, v1) in zip(f.breakpoints, f.breakpoints[1:]):
        assert (v1 - v0) / (t1 - t0) in slopes


@given(braid_words(max_strands=3, max_len=4))
def test_endpoint_and_floor(w):
    d = g.from_braid(w)
    f = ai.pl_function(d)
    assert f(2) == F(w.strands, 2)
    for t in TS:
        assert ai.slice_bennequin_floor(d, t) <= f(t)


def test_floor_equals_distinguished_weights():
    # second route: weights of x+ and x- on the mirror grid, read from gradings
    for text, n in (("1 1 1", 2), ("1 -2", 3), ("-1", 2), ("-1 -1 -1 -1", 2)):
        d = grid(text, n)
        m = g.mirror_horizontal(d)
        xp, xm = g.distinguished_states(m)
        for t in TS:
            ws = [t / 2 * g.gradings(m, s).a_u + (1 - t / 2) * g.gradings(m, s).a_l
                  for s in (xp, xm)]
            assert ai.slice_bennequin_floor(d, t) == max(ws)


@given(annular_grids(max_n=5))
def test_mirror_antisymmetry(d):
    top = ai.pl_function(d)
    bottom_of_mirror = ai.pl_function(g.mirror_horizontal(d), ai.BOTTOM)
    for t in TS:
        assert top(t) == -bottom_of_mirror(t)


# --- t-modified cross-check -------------------------------------------------------

@pytest.mark.parametrize("text,n", [("", 1), ("1", 2), ("1 1 1", 2), ("-1", 2)])
@pytest.mark.parametrize("p,q", [(0, 1), (1, 3), (1, 2), (2, 3)])
def test_tmod_agrees_with_sweep(text, n, p, q):
    d = grid(text, n)
    assert ai.tmod_cross_check(d, p, q, 4) == -ai.value_at(d, F(2 * p, q)).value


def test_tmod_detects_short_truncation():
    with pytest.raises(TruncationUnstable):
        ai.tmod_cross_check(grid("-1 -1 -1", 2), 0, 1, 1)
