"""Braid-word edits, closed-form predictions and the bounds they imply.

Words are :class:`~annular_floer.braids.BraidWord` values; every edit
returns a new word.  The closed forms are exact lines in ``t`` and are
compared against :func:`~annular_floer.annular_invariant.pl_function` on
the closure with its axis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .annular_invariant import PLFunction, derived_functions, pl_function, slice_bennequin_floor
from .braids import BraidWord, parse_word
from .errors import BadParameters, BadPosition
from .grid_core import from_braid
from .rational import RationalLike, to_fraction


# ---------------------------------------------------------------------------
# word edits


def pos_stab(w: BraidWord) -> BraidWord:
    """Append ``sigma_n`` on ``n + 1`` strands."""
    return BraidWord(w.strands + 1, w.letters + (w.strands,))


def neg_stab(w: BraidWord) -> BraidWord:
    """Append ``sigma_n^-1`` on ``n + 1`` strands."""
    return BraidWord(w.strands + 1, w.letters + (-w.strands,))


def add_letter(w: BraidWord, g: int) -> BraidWord:
    return BraidWord(w.strands, w.letters + (int(g),))


def crossing_flip(w: BraidWord, position: int) -> BraidWord:
    """Invert the letter at ``position`` (0-based)."""
    if not 0 <= position < len(w.letters):
        raise BadPosition(f"position {position} outside 0..{len(w.letters) - 1}", position=position)
    letters = list(w.letters)
    letters[position] = -letters[position]
    return BraidWord(w.strands, tuple(letters))


def tensor(w1: BraidWord, w2: BraidWord) -> BraidWord:
    """Side-by-side braid: ``w2`` acts on strands ``n1 + 1 ..``."""
    shift = w1.strands
    return BraidWord(w1.strands + w2.strands,
                     w1.letters + tuple(g + shift if g > 0 else g - shift for g in w2.letters))


def conjugate(w: BraidWord, by: Sequence[int]) -> BraidWord:
    """``by * w * by^-1``."""
    by = tuple(by)
    return BraidWord(w.strands, by + w.letters + tuple(-g for g in reversed(by)))


def rotate(w: BraidWord, k: int) -> BraidWord:
    """Cyclic conjugate moving the first ``k`` letters to the end."""
    if not w.letters:
        return w
    k %= len(w.letters)
    return BraidWord(w.strands, w.letters[k:] + w.letters[:k])


_EDITS = {"pos_stab", "neg_stab", "add_letter", "crossing_flip", "tensor"}


def edit(w: BraidWord, op: str, arg=None) -> BraidWord:
    """Dispatch by name; ``arg`` is the letter, the position or the second word."""
    if op == "pos_stab":
        return pos_stab(w)
    if op == "neg_stab":
        return neg_stab(w)
    if op == "add_letter":
        return add_letter(w, arg)
    if op == "crossing_flip":
        return crossing_flip(w, arg)
    if op == "tensor":
        return tensor(w, arg)
    raise BadParameters(f"unknown edit {op!r}; choose from {sorted(_EDITS)}")


# ---------------------------------------------------------------------------
# closed forms


def identity_formula(n: int) -> PLFunction:
    if n < 1:
        raise BadParameters(f"braid index must be positive, got {n}")
    return PLFunction.constant(Fraction(n, 2))


def torus_formula(p: int, q: int) -> PLFunction:
    """Prediction for the ``p``-strand braid ``(sigma_1 ... sigma_{p-1})^q``."""
    if not 1 <= p <= q:
        raise BadParameters(f"torus parameters need 1 <= p <= q, got ({p}, {q})")
    comps = gcd(p, q)
    return PLFunction.line(Fraction(p * q - q + comps, 2), Fraction(p + q - p * q - comps, 4))


def quasi_positive_formula(writhe: int, components: int, n: int) -> PLFunction:
    if n < 1 or not 1 <= components <= n:
        raise BadParameters(f"need 1 <= components <= n, got l={components}, n={n}")
    return PLFunction.line(Fraction(writhe + components, 2), Fraction(n - writhe - components, 4))


def closed_formulas(kind: str, **params) -> PLFunction:
    """``kind`` is ``identity`` (n), ``torus`` (p, q) or ``quasi_positive`` (wr, l, n)."""
    if kind == "identity":
        return identity_formula(params["n"])
    if kind == "torus":
        return torus_formula(params["p"], params["q"])
    if kind == "quasi_positive":
        return quasi_positive_formula(params["wr"], params["l"], params["n"])
    raise BadParameters(f"unknown closed form {kind!r}")


def torus_word(p: int, q: int) -> BraidWord:
    return BraidWord(p, tuple(range(1, p)) * q)


def quasi_positive_word(strands: int, factors: Sequence[tuple]) -> BraidWord:
    """Product of conjugated positive generators ``w sigma_i w^-1``.

    ``factors`` holds ``(w, i)`` pairs with ``w`` a letter sequence.
    """
    letters = []
    for w, i in factors:
        if i < 1:
            raise BadParameters(f"quasi-positive factors use positive generators, got {i}")
        letters += list(w) + [i] + [-g for g in reversed(w)]
    return BraidWord(strands, tuple(letters))


# ---------------------------------------------------------------------------
# bounds


@dataclass(frozen=True)
class BandRankBound:
    """Lower bounds on band rank.

    ``bound`` comes from comparing the invariant with the identity braid's;
    ``bennequin`` from the slice-Bennequin floor in its place.  Both are
    bounds only: band rank itself is never computed.
    """

    bound: Fraction
    at_t: Fraction
    bennequin: Fraction


def _rank_from_gap(gap: Fraction, t: Fraction, l: int, n: int) -> Fraction:
    return 2 * gap / (1 - t / 2) - l + n


def band_rank_lower_bound(w: BraidWord, f: Optional[PLFunction] = None) -> BandRankBound:
    """Largest ``2(f(t) - n/2) / (1 - t/2) - l + n`` over breakpoints ``t < 2``.

    A braid with band rank ``r`` bounds a cobordism to the identity with
    ``r`` saddles, which caps ``f - n/2`` from above by
    ``(r + l - n)(1 - t/2)/2``.  Only the signed gap is bounded: ``"-1"``
    on two strands has ``f(1) = 1/2`` and band rank 1, so the absolute
    gap would claim 3.  The ratio of a linear gap to ``1 - t/2`` is
    monotone on each piece, so the maximum sits at a breakpoint; the
    result is clamped at 0.
    """
    n, l = w.strands, w.num_components
    d = from_braid(w)
    if f is None:
        f = pl_function(d)
    half = Fraction(n, 2)
    best_value, best_t = None, None
    for t, v in f.breakpoints:
        if t >= 2:
            continue
        value = _rank_from_gap(v - half, t, l, n)
        if best_value is None or value > best_value:
            best_value, best_t = value, t
    bennequin = max(_rank_from_gap(slice_bennequin_floor(d, t) - half, t, l, n)
                    for t, _ in f.breakpoints if t < 2)
    return BandRankBound(max(best_value, Fraction(0)), best_t, bennequin)


def monoid_membership(w: BraidWord, t: RationalLike, f: Optional[PLFunction] = None) -> bool:
    """Is ``M_t = 2 m_t + y_t`` equal to ``n/2``?"""
    t = to_fraction(t)
    if not 0 <= t < 2:
        raise BadParameters(f"membership needs 0 <= t < 2, got {t}")
    if f is None:
        f = pl_function(from_braid(w))
    return derived_functions(f).M(t) == Fraction(w.strands, 2)


def as_word(text, strands: Optional[int] = None) -> BraidWord:
    return text if isinstance(text, BraidWord) else parse_word(text, strands)
