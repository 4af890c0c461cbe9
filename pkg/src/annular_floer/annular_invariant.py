"""The annular invariant as a piecewise-linear function of ``t`` in ``[0, 2]``.

For an annular grid the weighted filtration ``F_t = (t/2) A_U + (1 - t/2) A_L``
sweeps the tilde complex; the *top* invariant at ``t`` is the least ``s``
such that some cycle of Maslov grading 0 lying in ``F_t <= s`` is not a
boundary.  The *bottom* invariant is the same sweep at Maslov grading
``1 - n``, shifted to undo the extra tensor factors of the tilde complex.

Everything runs on a :class:`~annular_floer.chain_complexes.ReducedComplex`:
one filtered cancellation per grid, after which each value of ``t`` is a
sort plus a small elimination.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .chain_complexes import ReducedComplex, build_v_module, reduced_model, state_space, t_spec
from .errors import (BadParameters, InconsistentInterpolation, NoAxis, NotAnnular,
                     TruncationUnstable)
from .gf2_linalg import IncrementalEliminator, bits
from .grid_core import GridDiagram, classical_invariants, distinguished_states, mirror_horizontal
from .grid_search import SearchConfig, tighten
from .rational import RationalLike, fmt, to_fraction
from .state_space import keys_of

TOP, BOTTOM = "top", "bottom"


# ---------------------------------------------------------------------------
# piecewise-linear functions


@dataclass(frozen=True)
class PLFunction:
    """Continuous piecewise-linear function on ``[0, 2]`` given by its corners."""

    breakpoints: tuple

    def __post_init__(self):
        pts = tuple((to_fraction(t), to_fraction(v)) for t, v in self.breakpoints)
        if len(pts) < 2 or pts[0][0] != 0 or pts[-1][0] != 2:
            raise ValueError("breakpoints must start at t=0 and end at t=2")
        if any(a[0] >= b[0] for a, b in zip(pts, pts[1:])):
            raise ValueError("breakpoint parameters must increase strictly")
        object.__setattr__(self, "breakpoints", _merge_collinear(pts))

    @classmethod
    def line(cls, intercept: RationalLike, slope: RationalLike) -> "PLFunction":
        b, m = to_fraction(intercept), to_fraction(slope)
        return cls(((Fraction(0), b), (Fraction(2), b + 2 * m)))

    @classmethod
    def constant(cls, value: RationalLike) -> "PLFunction":
        return cls.line(value, 0)

    def __call__(self, t: RationalLike) -> Fraction:
        t = to_fraction(t)
        if not 0 <= t <= 2:
            raise BadParameters(f"t={t} outside [0, 2]")
        pts = self.breakpoints
        for (t0, v0), (t1, v1) in zip(pts, pts[1:]):
            if t0 <= t <= t1:
                return v0 + (v1 - v0) * (t - t0) / (t1 - t0)
        raise AssertionError("unreachable")

    def slope_right(self, t: RationalLike) -> Fraction:
        """Right derivative; zero at ``t = 2`` by convention."""
        t = to_fraction(t)
        if t >= 2:
            return Fraction(0)
        pts = self.breakpoints
        for (t0, v0), (t1, v1) in zip(pts, pts[1:]):
            if t0 <= t < t1:
                return (v1 - v0) / (t1 - t0)
        raise BadParameters(f"t={t} outside [0, 2]")

    @property
    def slopes(self) -> tuple:
        pts = self.breakpoints
        return tuple((v1 - v0) / (t1 - t0) for (t0, v0), (t1, v1) in zip(pts, pts[1:]))

    def __add__(self, other: "PLFunction") -> "PLFunction":
        ts = sorted({t for t, _ in self.breakpoints} | {t for t, _ in other.breakpoints})
        return PLFunction(tuple((t, self(t) + other(t)) for t in ts))

    def to_json(self) -> dict:
        return {"breakpoints": [{"t": fmt(t), "value": fmt(v)} for t, v in self.breakpoints]}

    @classmethod
    def from_json(cls, obj: dict) -> "PLFunction":
        return cls(tuple((to_fraction(p["t"]), to_fraction(p["value"])) for p in obj["breakpoints"]))


def _merge_collinear(pts):
    out = [pts[0]]
    for p in pts[1:]:
        while len(out) >= 2:
            (t0, v0), (t1, v1) = out[-2], out[-1]
            if (v1 - v0) * (p[0] - t1) == (p[1] - v1) * (t1 - t0):
                out.pop()
            else:
                break
        out.append(p)
    return tuple(out)


# ---------------------------------------------------------------------------
# configuration and models


@dataclass(frozen=True)
class InvariantConfig:
    """``tighten`` replaces the grid by an isotopic one with a sparser Maslov
    window before building the complex (values are unchanged, cost is not)."""

    tighten: bool = True
    search_steps: int = 200


@dataclass
class SweepResult:
    value: Fraction
    witness_bigradings: list
    maslov_level: int
    t: Fraction


@dataclass
class _Model:
    """Degree-``mid`` data of a reduced complex ready for sweeps."""

    grid: GridDiagram
    mid: int
    four_u: np.ndarray
    four_l: np.ndarray
    out_cols: list           # boundary of each degree-mid generator (bitsets)
    boundaries: IncrementalEliminator
    cancelled: int

    @property
    def size(self) -> int:
        return len(self.four_u)

    def bigradings(self):
        return sorted({(Fraction(int(u), 4), Fraction(int(l), 4))
                       for u, l in zip(self.four_u.tolist(), self.four_l.tolist())})


_MODELS = {}


def _check_annular(d: GridDiagram):
    if d.axis is None:
        raise NoAxis("the annular invariant needs a grid with an axis component")
    if d.l < 1:
        raise NotAnnular("the grid has no link component besides the axis")


def _model(d: GridDiagram, level: str, cfg: InvariantConfig) -> _Model:
    _check_annular(d)
    if level not in (TOP, BOTTOM):
        raise BadParameters(f"level must be 'top' or 'bottom', got {level!r}")
    key = (d.n, d.x_col, d.o_col, d.axis, level, cfg)
    hit = _MODELS.get(key)
    if hit is not None:
        return hit
    mid = 0 if level == TOP else 1 - d.n
    g = d
    if cfg.tighten:
        g = tighten(d, SearchConfig(window=(mid - 1, mid + 1), max_steps=cfg.search_steps))
    rm: ReducedComplex = reduced_model(g, mid)
    elim = IncrementalEliminator()
    for v in rm.boundary[mid + 1]:
        elim.absorb(v)
    model = _Model(g, mid, rm.four_u[mid], rm.four_l[mid], rm.boundary[mid], elim, rm.cancelled)
    if len(_MODELS) > 64:
        _MODELS.pop(next(iter(_MODELS)))
    _MODELS[key] = model
    return model


def _weight4(t: Fraction, four_u: np.ndarray, four_l: np.ndarray):
    """``8 * F_t`` times the denominator of ``t``, as exact integers."""
    p, q = t.numerator, t.denominator
    return [p * int(u) + (2 * q - p) * int(l) for u, l in zip(four_u.tolist(), four_l.tolist())], 8 * q


def _sweep(m: _Model, t: Fraction):
    """Least sublevel of ``F_t`` carrying a non-boundary cycle.

    Generators enter in ``F_t`` order (ties by index); after each tie
    group the new kernel vectors are tested against the boundary space.
    Returns ``(value, cycle bitset)`` or ``None`` when homology is zero.
    """
    if m.size == 0:
        return None
    w, scale = _weight4(t, m.four_u, m.four_l)
    order = sorted(range(m.size), key=lambda i: (w[i], i))
    kernel = IncrementalEliminator()
    pos = 0
    while pos < len(order):
        level = w[order[pos]]
        fresh = []
        while pos < len(order) and w[order[pos]] == level:
            i = order[pos]
            grew, _, tag = kernel.absorb(m.out_cols[i], 1 << i)
            if not grew:
                fresh.append(tag)
            pos += 1
        for z in fresh:
            inside, _ = m.boundaries.membership(z)
            if not inside:
                return Fraction(level, scale), z
    return None


def _offset(d: GridDiagram, t: Fraction, level: str) -> Fraction:
    if level == TOP:
        return Fraction(0)
    return t / 2 + (d.n - d.l - 2) * (1 - t / 2)


def value_at(d: GridDiagram, t: RationalLike, level: str = TOP,
             cfg: InvariantConfig = InvariantConfig()) -> SweepResult:
    t = to_fraction(t)
    if not 0 <= t <= 2:
        raise BadParameters(f"t={t} outside [0, 2]")
    m = _model(d, level, cfg)
    found = _sweep(m, t)
    if found is None:
        raise NotAnnular(f"tilde homology vanishes at Maslov grading {m.mid}")
    raw, cycle = found
    wit = sorted({(Fraction(int(m.four_u[i]), 4), Fraction(int(m.four_l[i]), 4)) for i in bits(cycle)
                  if Fraction(int(m.four_u[i]) * t, 8) + Fraction(int(m.four_l[i]) * (2 - t), 8) == raw})
    return SweepResult(raw + _offset(d, t, level), wit, m.mid, t)


def breakpoint_candidates(bigradings) -> list:
    """Parameters in ``(0, 2)`` where two bigradings tie under ``F_t``."""
    out = set()
    for i, (u1, l1) in enumerate(bigradings):
        for u2, l2 in bigradings[i + 1:]:
            du, dl = u1 - u2, l1 - l2
            if dl != du:
                t = 2 * dl / (dl - du)
                if 0 < t < 2:
                    out.add(t)
    return sorted(out)


def pl_function(d: GridDiagram, level: str = TOP,
                cfg: InvariantConfig = InvariantConfig()) -> PLFunction:
    m = _model(d, level, cfg)
    ts = [Fraction(0)] + breakpoint_candidates(m.bigradings()) + [Fraction(2)]
    vals = [value_at(d, t, level, cfg).value for t in ts]
    f = PLFunction(tuple(zip(ts, vals)))
    for a, b in zip(ts, ts[1:]):
        mid = (a + b) / 2
        got = value_at(d, mid, level, cfg).value
        if got != f(mid):
            raise InconsistentInterpolation(
                f"value {got} at t={mid} is off the interpolated segment ({f(mid)})", t=mid)
    return f


def tau(d: GridDiagram, cfg: InvariantConfig = InvariantConfig()) -> Fraction:
    """Twice the top invariant at ``t = 1``, where ``F_t`` is half the total
    Alexander grading."""
    return 2 * value_at(d, 1, TOP, cfg).value


def slice_bennequin_floor(d: GridDiagram, t: RationalLike) -> Fraction:
    """Lower bound on the top invariant from classical Legendrian invariants.

    The Legendrian used is the one drawn by the horizontal mirror of ``d``
    (a grid read as a front represents the mirror of the grid's own link,
    so this Legendrian has the link type of ``d``).  With ``tb_i`` and
    ``r_i`` its per-component Thurston-Bennequin and rotation numbers
    (``tb_i`` counts front linking), the bound is the larger over
    ``s = +1, -1`` of
    ``(t/2)(tb_U - s r_U + 1)/2 + (1 - t/2) sum_L (tb_i - s r_i + 1)/2``.
    Those brackets are the gradings of ``x+`` and ``x-`` on the mirror
    grid, which lie in the tower computing the invariant.
    """
    _check_annular(d)
    t = to_fraction(t)
    m = mirror_horizontal(d)
    ci = classical_invariants(m)
    link = [c for c in range(m.num_components) if c != m.axis]
    best = None
    for s in (1, -1):
        a_u = Fraction(ci.tb_comp[m.axis] - s * ci.rot_comp[m.axis] + 1, 2)
        a_l = sum((Fraction(ci.tb_comp[c] - s * ci.rot_comp[c] + 1, 2) for c in link), Fraction(0))
        value = t / 2 * a_u + (1 - t / 2) * a_l
        best = value if best is None else max(best, value)
    return best


# ---------------------------------------------------------------------------
# slopes and intercepts


@dataclass(frozen=True)
class DerivedFunctions:
    """Right slope ``m``, intercept ``y = f(t) - t m(t)`` and ``M = 2m + y``."""

    f: PLFunction

    def m(self, t: RationalLike) -> Fraction:
        return self.f.slope_right(t)

    def y(self, t: RationalLike) -> Fraction:
        t = to_fraction(t)
        return self.f(t) - t * self.m(t)

    def M(self, t: RationalLike) -> Fraction:
        return 2 * self.m(t) + self.y(t)


def derived_functions(f: PLFunction) -> DerivedFunctions:
    return DerivedFunctions(f)


# ---------------------------------------------------------------------------
# the t-modified complex


def bottom_cocycle(d: GridDiagram) -> dict:
    """A cocycle on the X-blocked complex at ``V = 1`` in grading ``M_X = 1 - n``.

    It vanishes on boundaries from ``M_X = 2 - n`` and takes the value one
    on ``x+``.  Returned as ``{state key: 1}`` over its support.
    """
    lo = 1 - d.n
    sp = state_space(d, (lo, lo + 1), use_x=True)
    src = sp.indices_with(lo + 1, use_x=True)
    tgt = sp.indices_with(lo, use_x=True)
    rb = sp.rectangles(src, avoid_x=True, avoid_o=False)
    pos = sp.lookup(tgt, rb.target_key)
    cols = {}
    for s_, p_ in zip(rb.source.tolist(), pos.tolist()):
        if p_ >= 0:
            cols[s_] = cols.get(s_, 0) ^ (1 << p_)
    elim = IncrementalEliminator()
    for v in cols.values():
        elim.absorb(v)
    x_plus, _ = distinguished_states(d)
    xp_local = int(np.searchsorted(tgt, sp.state_index(x_plus.perm)))
    nf = elim.normal_form(1 << xp_local)
    if nf == 0:
        raise NotAnnular("x+ is a boundary once V is set to one")
    qbit = (nf & -nf).bit_length() - 1
    keys = sp.keys[tgt].tolist()
    return {keys[j]: 1 for j in range(len(tgt)) if (elim.normal_form(1 << j) >> qbit) & 1}


def _tmod_level(d: GridDiagram, p: int, q: int, D: int):
    """Highest ``F_t`` level carrying a cycle whose image under ``V -> 1``
    pairs non-trivially with :func:`bottom_cocycle`.

    The differential lowers the state grading ``M_X`` by exactly one, so
    cycles split by ``M_X`` and only states at ``1 - n`` (sources) and
    ``-n`` (targets) matter.
    """
    psi = bottom_cocycle(d)
    lo = 1 - d.n
    mod = build_v_module(d, t_spec(p, q), D, maslov_x_window=(lo - 1, lo))
    keys = keys_of(mod.perms, d.n).tolist()
    base = p * mod.four_u.astype(np.int64) + (q - p) * mod.four_l.astype(np.int64)
    levels = {}
    for i in np.flatnonzero(mod.maslov_x == lo).tolist():
        for j in range(D):
            levels.setdefault(int(base[i]) - 4 * j, []).append((i, j))
    for g in sorted(levels, reverse=True):
        kernel = IncrementalEliminator()
        rows = {}
        for i, j in levels[g]:
            col = 0
            for term in mod.boundary_terms(i, j):
                r = rows.setdefault(term, len(rows))
                col ^= 1 << r
            grew, _, tag = kernel.absorb(col, psi.get(keys[i], 0))
            if not grew and tag:
                return Fraction(g, 4 * q)
    return None


def tmod_cross_check(d: GridDiagram, p: int, q: int, D: int) -> Fraction:
    """Minus the top ``F_t`` level (``t = 2p/q``) of the ``x+`` tower.

    The t-modified complex is built on the horizontal mirror of ``d``, whose
    X-blocked complex at ``V = 1`` computes the tilde homology of the
    reversed link.  The answer is accepted only if truncations ``D`` and
    ``D + q`` agree; it should equal ``-value_at(d, 2p/q)``.
    """
    _check_annular(d)
    t_spec(p, q)  # validates p, q
    if D < 1:
        raise BadParameters(f"truncation must be positive, got D={D}")
    mirror = mirror_horizontal(d)
    first = _tmod_level(mirror, p, q, D)
    second = _tmod_level(mirror, p, q, D + q)
    if first is None or first != second:
        raise TruncationUnstable(D, f"tower top {first} at D={D} but {second} at D={D + q}")
    return -first
