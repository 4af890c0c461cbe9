"""Search for an isotopic grid with few states in a Maslov window.

Commutations and cyclic translations change a grid without changing the
link it represents (axis included), yet the number of states near the top
Maslov grading varies by orders of magnitude between such grids.  For the
unlinked braid on four strands the layout produced by
:func:`~annular_floer.grid_core.from_braid` has about a million states in
gradings ``-1..1``; a dozen commutations bring that below a hundred.

Counting uses the subset dynamic program of :mod:`state_space`, so each
candidate costs milliseconds even at size ten.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AnnularFloerError
from .grid_core import GridDiagram, column_commutation, cyclic, row_commutation
from .state_space import maslov_histogram


@dataclass(frozen=True)
class SearchConfig:
    """Greedy descent settings.

    ``window`` is the Maslov range whose population is minimised;
    ``use_x`` selects ``M_X`` instead of ``M_O``.
    """

    window: tuple = (-1, 1)
    use_x: bool = False
    max_steps: int = 200


def window_cost(d: GridDiagram, cfg: SearchConfig = SearchConfig()):
    """``(states in window, states above it)``; compared lexicographically."""
    h = maslov_histogram(d, cfg.use_x)
    lo, hi = cfg.window
    inside = sum(v for m, v in h.items() if lo <= m <= hi)
    above = sum(v for m, v in h.items() if m > hi)
    return inside, above


def _neighbours(d: GridDiagram):
    bases = [d, cyclic(d, (1, 0)), cyclic(d, (0, 1))]
    for base in bases:
        for i in range(d.n - 1):
            for move in (column_commutation, row_commutation):
                try:
                    yield move(base, i, allow_axis=True)
                except AnnularFloerError:
                    continue


def tighten(d: GridDiagram, cfg: SearchConfig = SearchConfig()) -> GridDiagram:
    """Best-improvement descent over commutations (axis moves allowed).

    Deterministic: candidates are scanned in a fixed order and the first
    strictly best one wins.  Stops at a local minimum.
    """
    best = window_cost(d, cfg)
    seen = {(d.x_col, d.o_col)}
    for _ in range(cfg.max_steps):
        step = None
        for e in _neighbours(d):
            key = (e.x_col, e.o_col)
            if key in seen:
                continue
            seen.add(key)
            cost = window_cost(e, cfg)
            if cost < best and (step is None or cost < step[0]):
                step = (cost, e)
        if step is None:
            break
        best, d = step
    return d
