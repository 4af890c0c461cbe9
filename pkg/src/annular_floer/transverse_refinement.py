"""Transverse data of braid closures read off the ``x+`` state.

``theta_nonzero`` decides whether ``x+`` survives in the homology of the
fully blocked graded complex.  ``eta`` finds the first filtration level of
the single-variable annular complex at which ``[x+]`` becomes a multiple
of ``V``; it is finite exactly when the transverse class vanishes.
``legendrian_grading_audit`` cross-checks the gradings of ``x+`` and
``x-`` against the classical invariants of the grid's Legendrian link.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .braids import BraidWord, parse_word
from .chain_complexes import build_v_module, eta_spec, state_space
from .errors import BadParameters, TruncationUnstable
from .gf2_linalg import IncrementalEliminator
from .rational import fmt
from .grid_core import (ClassicalInvariants, GridDiagram, alexander_component, classical_invariants,
                        distinguished_states, from_braid, maslov, mirror_horizontal, validate)


class _Infinity:
    """The value of ``eta`` when ``[x+]`` never becomes a ``V``-multiple."""

    def __repr__(self):
        return "inf"

    def __str__(self):
        return "inf"

    def __eq__(self, other):
        return isinstance(other, _Infinity)

    def __hash__(self):
        return hash("eta-infinity")


INFINITY = _Infinity()


# ---------------------------------------------------------------------------
# theta


def theta_nonzero(d: GridDiagram) -> bool:
    """Is ``x+`` outside the image of the X- and O-blocked differential?

    The differential preserves every Alexander grading, so only sources of
    Maslov grading ``M(x+) + 1`` with the same Alexander gradings as
    ``x+`` can hit it.
    """
    x_plus, _ = distinguished_states(d)
    m = maslov(d, x_plus)
    sp = state_space(d, (m, m + 1))
    xp = sp.state_index(x_plus.perm)
    same = np.all(sp.four_a == sp.four_a[:, [xp]], axis=0)
    src = np.flatnonzero(same & (sp.maslov_o == m + 1))
    if len(src) == 0:
        return True
    rb = sp.rectangles(src, avoid_x=True, avoid_o=True)
    if not np.any(rb.target_key == sp.keys[xp]):
        return True
    cols = {}
    tgt = np.flatnonzero(same & (sp.maslov_o == m))
    pos = sp.lookup(tgt, rb.target_key)
    for s, p in zip(rb.source.tolist(), pos.tolist()):
        if p >= 0:
            cols[s] = cols.get(s, 0) ^ (1 << p)
    elim = IncrementalEliminator()
    for v in cols.values():
        elim.absorb(v)
    target = 1 << int(np.searchsorted(tgt, xp))
    inside, _ = elim.membership(target)
    return not inside


def strip_axis(d: GridDiagram) -> GridDiagram:
    """The plain grid of the link with the axis rows and columns deleted."""
    if d.axis is None:
        return d
    keep_rows = [r for r in range(d.n) if d.comp_of_row[r] != d.axis]
    keep_cols = sorted({d.x_col[r] for r in keep_rows})
    col_rank = {c: i for i, c in enumerate(keep_cols)}
    x = [col_rank[d.x_col[r]] for r in keep_rows]
    o = [col_rank[d.o_col[r]] for r in keep_rows]
    return validate(len(keep_rows), x, o, None, plain=True)


def eta_grid(word: BraidWord) -> GridDiagram:
    """Grid of the axis together with the mirror of the closure of ``word``.

    The axis links every strand negatively here, and ``x+`` sits at the
    lowest axis filtration level ``-N/2``.
    """
    return mirror_horizontal(from_braid(word, axis_orientation=1))


def theta_for_braid(word, strands: Optional[int] = None) -> bool:
    """``theta_nonzero`` for the transverse closure of ``word``.

    The grid is the axis-free part of :func:`eta_grid`, whose Legendrian
    push-off has self-linking ``writhe - N``.
    """
    if not isinstance(word, BraidWord):
        word = parse_word(word, strands)
    return theta_nonzero(strip_axis(eta_grid(word)))


# ---------------------------------------------------------------------------
# eta


@dataclass
class EtaResult:
    value: object                       # Fraction or INFINITY
    truncation_used: int
    filtration_trace: list = field(default_factory=list)
    strands: int = 0

    @property
    def finite(self) -> bool:
        return self.value != INFINITY

    @property
    def height(self):
        """``value`` measured from the bottom level ``-N/2``.

        Stabilizing adds a strand and lowers the bottom level by 1/2, so
        comparisons across braid indices are made on heights.
        """
        return self.value + Fraction(self.strands, 2) if self.finite else INFINITY

    def to_json(self) -> dict:
        return {
            "value": fmt(self.value) if self.finite else "inf",
            "strands": self.strands,
            "truncation": self.truncation_used,
            "trace": [[fmt(k), bool(ok)] for k, ok in self.filtration_trace],
        }


def _eta_trace(d: GridDiagram, strands: int, D: int):
    """``[(k, solvable)]`` for ``k = -N/2, -N/2 + 1/2, ..., N/2``.

    Solvable means ``x+ = dw + V c`` with ``dc = 0`` and ``w``, ``c`` in
    axis filtration ``-A_U <= k``.  Gradings pin everything down: ``w``
    lives at ``M_X = 2 - n`` and link grading ``a``, ``c`` at ``1 - n``
    and ``a + 1``, where ``a`` is the link grading of ``x+``.
    """
    lo = 1 - d.n
    x_plus, _ = distinguished_states(d)
    mod = build_v_module(d, eta_spec(), D, maslov_x_window=(lo - 1, lo + 1))
    sp = state_space(d, (lo - 1, lo + 1), use_x=True)
    xp = sp.state_index(x_plus.perm)
    a4 = int(mod.four_l[xp])
    rows = {}

    def row(key):
        return rows.setdefault(key, len(rows))

    target = 1 << row(("w", xp, 0))
    columns = []  # (4 * filtration level, bitset)
    for i in range(mod.num_states):
        m = int(mod.maslov_x[i])
        shift = int(mod.four_l[i]) - a4
        if m == lo + 1 and shift % 4 == 0 and 0 <= shift // 4 < D:
            j = shift // 4
            col = 0
            for dst, power in mod.boundary_terms(i, j):
                col ^= 1 << row(("w", dst, power))
            columns.append((-int(mod.four_u[i]), col))
        if m == lo and (shift - 4) % 4 == 0 and 0 <= (shift - 4) // 4 < D:
            j = (shift - 4) // 4
            col = 0
            if j + 1 < D:
                col ^= 1 << row(("w", i, j + 1))
            for dst, power in mod.boundary_terms(i, j):
                col ^= 1 << row(("c", dst, power))
            columns.append((-int(mod.four_u[i]), col))
    columns.sort(key=lambda c: c[0])
    elim = IncrementalEliminator()
    trace = []
    pos = 0
    for k4 in range(-2 * strands, 2 * strands + 1, 2):
        while pos < len(columns) and columns[pos][0] <= k4:
            elim.absorb(columns[pos][1])
            pos += 1
        inside, _ = elim.membership(target)
        trace.append((Fraction(k4, 4), inside))
    return trace


def eta(word, strands: Optional[int] = None, D: int = 4) -> EtaResult:
    """First axis level at which ``[x+]`` is a ``V``-multiple, or ``INFINITY``.

    Accepted only when truncations ``D`` and ``D + 1`` give the same trace.
    """
    if not isinstance(word, BraidWord):
        word = parse_word(word, strands)
    if D < 2:
        raise BadParameters(f"eta needs truncation D >= 2, got {D}")
    d = eta_grid(word)
    first = _eta_trace(d, word.strands, D)
    second = _eta_trace(d, word.strands, D + 1)
    if first != second:
        raise TruncationUnstable(D, f"eta trace changes between D={D} and D={D + 1}")
    value = next((k for k, ok in first if ok), INFINITY)
    return EtaResult(value, D, first, word.strands)


# ---------------------------------------------------------------------------
# Legendrian audit


@dataclass
class AuditResult:
    passed: bool
    checks: dict

    def __bool__(self):
        return self.passed


def legendrian_grading_audit(d: GridDiagram,
                             invariants: Optional[ClassicalInvariants] = None) -> AuditResult:
    """Compare gradings of ``x+`` and ``x-`` with ``tb`` and ``rot``.

    Expected: ``M(x+) = tb - r + 1``, ``M(x-) = tb + r + 1``,
    ``A_i(x+-) = (tb_i -+ r_i + 1)/2`` for every component and
    ``A(x+-) = (tb -+ r + k)/2`` for the ``k``-component total.
    ``invariants`` overrides the computed classical data (used to check
    that a wrong convention is caught).
    """
    ci = invariants if invariants is not None else classical_invariants(d)
    xp, xm = distinguished_states(d)
    k = d.num_components
    checks = {}
    checks["maslov_plus"] = maslov(d, xp) == ci.tb - ci.rot + 1
    checks["maslov_minus"] = maslov(d, xm) == ci.tb + ci.rot + 1
    a_plus = [alexander_component(d, xp, c) for c in range(k)]
    a_minus = [alexander_component(d, xm, c) for c in range(k)]
    checks["alexander_components_plus"] = all(
        a_plus[c] == Fraction(ci.tb_comp[c] - ci.rot_comp[c] + 1, 2) for c in range(k))
    checks["alexander_components_minus"] = all(
        a_minus[c] == Fraction(ci.tb_comp[c] + ci.rot_comp[c] + 1, 2) for c in range(k))
    checks["alexander_total_plus"] = sum(a_plus) == Fraction(ci.tb - ci.rot + k, 2)
    checks["alexander_total_minus"] = sum(a_minus) == Fraction(ci.tb + ci.rot + k, 2)
    return AuditResult(all(checks.values()), checks)
