"""Frozen expected values.

Closed forms are written out by hand (not imported from ``braid_lab``) so
they cannot drift together with the code under test.  Values marked
*regression* were produced by the engine once, cross-checked against the
brute-force oracle or mirror antisymmetry, and frozen.
"""

from fractions import Fraction as F

# (word, strands) -> breakpoints of the top invariant
IDENTITY = {n: ((F(0), F(n, 2)), (F(2), F(n, 2))) for n in (1, 2, 3, 4)}

# (p, q) -> (value at 0, value at 2); all torus predictions are single lines
TORUS = {
    (2, 2): (F(2), F(1)),
    (2, 3): (F(2), F(1)),
    (3, 3): (F(9, 2), F(3, 2)),
    (2, 5): (F(3), F(1)),
}

# regression: mixed-sign words
REGRESSION_TOP = {
    ("-1", 2): ((F(0), F(1)), (F(1), F(1, 2)), (F(2), F(1))),
    ("1 -2", 3): ((F(0), F(3, 2)), (F(1), F(1)), (F(2), F(3, 2))),
    ("1 -2 1 -2", 3): ((F(0), F(3, 2)), (F(1), F(1)), (F(2), F(3, 2))),
    ("-1 -1 -1", 2): ((F(0), F(0)), (F(1), F(0)), (F(2), F(1))),
}

# eta: +inf written as None
ETA = {
    ("", 1): None,
    ("1", 2): None,
    ("1 1 1", 2): None,
    ("-1", 2): F(0),
    ("1 -2", 3): F(-1, 2),
    ("-1 -1 -1", 2): F(0),
}

THETA = {("1 1 1", 2): True, ("-1", 2): False, ("", 1): True, ("1 -2", 3): False}
