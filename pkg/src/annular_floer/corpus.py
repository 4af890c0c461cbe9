"""Seeded generators for fuzzing: random annular grids, random legal moves
and random braid words.

All randomness flows through an explicit :class:`random.Random`, so a seed
reproduces the corpus exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .braids import BraidWord
from .errors import AnnularFloerError
from .grid_core import (GridDiagram, column_commutation, component_rows, cyclic, destabilize,
                        row_commutation, stabilize_xsw, validate)


def random_annular_grid(rng: random.Random, n: int, max_tries: int = 10_000) -> GridDiagram:
    """Uniform-ish random grid of size ``n`` with a detectable axis.

    Rejection sampling over pairs of permutations: keep the draw when some
    component has two X markings and something else remains.  If several
    components qualify, one of them is chosen as the axis.
    """
    for _ in range(max_tries):
        x = list(range(n))
        o = list(range(n))
        rng.shuffle(x)
        rng.shuffle(o)
        if any(a == b for a, b in zip(x, o)):
            continue
        comp = component_rows(n, x, o)
        ncomp = max(comp) + 1
        candidates = [c for c in range(ncomp) if comp.count(c) == 2]
        if ncomp < 2 or not candidates:
            continue
        return validate(n, x, o, rng.choice(candidates))
    raise AnnularFloerError(f"no annular grid of size {n} found in {max_tries} draws")


@dataclass(frozen=True)
class MoveConfig:
    """Which moves the random walk may use; ``max_size`` caps stabilizations."""

    max_size: int = 7
    stabilize: bool = True


def random_move(d: GridDiagram, rng: random.Random, cfg: MoveConfig = MoveConfig(),
                max_tries: int = 200):
    """One random legal move that leaves the axis alone.

    Returns ``(name, site, new_grid)``.
    """
    names = ["cyclic", "column_commutation", "row_commutation", "destabilize"]
    if cfg.stabilize and d.n < cfg.max_size:
        names.append("stabilize_XSW")
    for _ in range(max_tries):
        name = rng.choice(names)
        try:
            if name == "cyclic":
                site = (rng.randrange(d.n), rng.randrange(d.n))
                return name, site, cyclic(d, site)
            if name == "column_commutation":
                site = rng.randrange(d.n - 1)
                return name, site, column_commutation(d, site)
            if name == "row_commutation":
                site = rng.randrange(d.n - 1)
                return name, site, row_commutation(d, site)
            if name == "stabilize_XSW":
                site = rng.randrange(d.n)
                return name, site, stabilize_xsw(d, site)
            site = (rng.randrange(d.n - 1), rng.randrange(d.n - 1))
            return name, site, destabilize(d, site)
        except AnnularFloerError:
            continue
    raise AnnularFloerError("no legal move found")


def random_word(rng: random.Random, strands: int, length: int,
                positive_only: bool = False) -> BraidWord:
    gens = list(range(1, strands))
    if not gens:
        return BraidWord(strands, ())
    letters = []
    for _ in range(length):
        g = rng.choice(gens)
        if not positive_only and rng.random() < 0.5:
            g = -g
        letters.append(g)
    return BraidWord(strands, tuple(letters))


def make_rng(seed: Optional[int]) -> random.Random:
    return random.Random(0 if seed is None else seed)
