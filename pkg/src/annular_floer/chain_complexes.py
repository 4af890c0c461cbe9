"""Grid chain complexes over GF(2).

* tilde complex: rectangles avoiding every O (X allowed); filtered by
  every Alexander grading, graded by ``M_O``;
* graded complex: rectangles avoiding every X and every O; preserves all
  Alexander gradings;
* V-modules: rectangles avoiding every X, each weighted by a power of a
  single variable ``V`` and truncated at ``V**D``; graded by ``M_X``.

Generators are grid states in lexicographic order.  Boundaries are kept
as edge arrays (``src -> dst`` in local numbering), so complexes with a
million generators stay cheap; :attr:`FilteredComplex.boundary` gives the
bitset matrix for small ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

import numpy as np

from .errors import BadParameters, NoAxis, WindowEmpty
from .gf2_linalg import IncrementalEliminator, SparseMatrixGF2, bits
from .grid_core import Bigrading, GridDiagram, GridState
from .reduction import cancel_same_level
from .state_space import StateSpace

_SPACES = {}


def state_space(d: GridDiagram, window=None, use_x: bool = False) -> StateSpace:
    """Shared :class:`StateSpace` per grid and Maslov window (a few are kept).

    Without a window every state is enumerated; with one only the states in
    it, which is what makes grids of size ten practical.
    """
    key = (d.n, d.x_col, d.o_col, d.axis, None if window is None else tuple(window), use_x)
    sp = _SPACES.get(key)
    if sp is None:
        if len(_SPACES) >= 4:
            _SPACES.pop(next(iter(_SPACES)))
        sp = StateSpace(d, window, use_x)
        _SPACES[key] = sp
    return sp


def mod2_edges(src, dst, *extra):
    """Drop edge multiplicities mod 2 (equal tuples cancel in pairs)."""
    src = np.asarray(src, dtype=np.int64)
    dst = np.asarray(dst, dtype=np.int64)
    if len(src) == 0:
        return (src, dst) + tuple(np.asarray(e, dtype=np.int64) for e in extra)
    cols = [src, dst] + [np.asarray(e, dtype=np.int64) for e in extra]
    stacked = np.stack(cols, axis=1)
    uniq, counts = np.unique(stacked, axis=0, return_counts=True)
    keep = uniq[counts % 2 == 1]
    return tuple(keep[:, i] for i in range(keep.shape[1]))


# ---------------------------------------------------------------------------
# filtered and graded complexes


@dataclass
class FilteredComplex:
    """Generators (grid states) with exact gradings and a sparse boundary.

    ``kind`` is ``"tilde"`` or ``"graded"``.  ``four_a[c]`` holds four
    times the Alexander grading of component ``c`` for every generator.
    """

    grid: GridDiagram
    kind: str
    state_index: np.ndarray
    perms: np.ndarray
    maslov: np.ndarray
    four_a: np.ndarray
    src: np.ndarray
    dst: np.ndarray
    _boundary: Optional[SparseMatrixGF2] = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return len(self.state_index)

    def bigrading(self, i: int) -> Bigrading:
        d = self.grid
        per = [Fraction(int(self.four_a[c, i]), 4) for c in range(d.num_components)]
        a_u = per[d.axis] if d.axis is not None else Fraction(0)
        comp = tuple(per[c] for c in d.link_components)
        return Bigrading(Fraction(int(self.maslov[i])), a_u, comp, sum(comp, Fraction(0)))

    @property
    def generators(self):
        return [(GridState(tuple(int(c) for c in self.perms[i])), self.bigrading(i))
                for i in range(self.size)]

    @property
    def maslov_index(self) -> dict:
        out = {}
        for m in np.unique(self.maslov):
            out[int(m)] = np.flatnonzero(self.maslov == m)
        return out

    @property
    def boundary(self) -> SparseMatrixGF2:
        if self._boundary is None:
            cols = [0] * self.size
            for s, t in zip(self.src.tolist(), self.dst.tolist()):
                cols[s] ^= 1 << t
            self._boundary = SparseMatrixGF2(self.size, self.size, tuple(cols))
        return self._boundary

    def four_a_axis(self) -> np.ndarray:
        return self.four_a[self.grid.axis]

    def four_a_link(self) -> np.ndarray:
        return self.four_a[list(self.grid.link_components)].sum(axis=0)


def _windowed(d: GridDiagram, window, use_x: bool):
    sp = state_space(d, window, use_x)
    if window is not None and len(sp.perms) == 0:
        raise WindowEmpty(f"no states with Maslov grading in [{window[0]}, {window[1]}]")
    return sp


def _build(d: GridDiagram, window, avoid_x: bool, avoid_o: bool, kind: str) -> FilteredComplex:
    sp = _windowed(d, window, use_x=False)
    m_all = sp.maslov_o
    idx = np.arange(len(sp.perms))
    rb = sp.rectangles(idx, avoid_x=avoid_x, avoid_o=avoid_o)
    tgt = sp.lookup(idx, rb.target_key)
    keep = tgt >= 0
    src, dst = mod2_edges(rb.source[keep], tgt[keep])
    return FilteredComplex(d, kind, idx, sp.perms[idx], m_all[idx].astype(np.int64),
                           sp.four_a[:, idx].astype(np.int64), src, dst)


def build_tilde(d: GridDiagram, maslov_window=None) -> FilteredComplex:
    """Rectangles avoiding all O markings; window restricts Maslov gradings."""
    return _build(d, maslov_window, avoid_x=False, avoid_o=True, kind="tilde")


def build_graded(d: GridDiagram, maslov_window=None) -> FilteredComplex:
    """Rectangles avoiding all X and all O markings."""
    return _build(d, maslov_window, avoid_x=True, avoid_o=True, kind="graded")


def homology_ranks(c: FilteredComplex) -> dict:
    """Rank of homology in each Maslov grading of ``c``.

    Only meaningful for gradings whose neighbours are inside the window.
    """
    by_m = c.maslov_index
    local = {}
    for m, idx in by_m.items():
        for pos, i in enumerate(idx.tolist()):
            local[i] = pos
    ranks_out = {}
    cols_by_m = {m: [0] * len(idx) for m, idx in by_m.items()}
    for s, t in zip(c.src.tolist(), c.dst.tolist()):
        m = int(c.maslov[s])
        cols_by_m[m][local[s]] ^= 1 << local[t]
    rank_d = {}
    for m, cols in cols_by_m.items():
        e = IncrementalEliminator()
        for v in cols:
            e.absorb(v)
        rank_d[m] = e.rank
    for m, idx in by_m.items():
        ranks_out[m] = len(idx) - rank_d[m] - rank_d.get(m + 1, 0)
    return ranks_out


# ---------------------------------------------------------------------------
# reduced models (filtered cancellation)


@dataclass
class ReducedComplex:
    """Small filtered model of three consecutive Maslov gradings.

    ``gens[k]`` for ``k`` in ``(top, mid, low)`` lists the surviving
    states (as state-space indices), ``four_u``/``four_l`` their axis and
    link Alexander gradings (times four).  ``boundary[k]`` maps a local
    generator index of degree ``k`` to a bitset over degree ``k - 1``.
    Filtration levels are those of the original generators.
    """

    grid: GridDiagram
    degrees: tuple
    gens: dict
    four_u: dict
    four_l: dict
    boundary: dict
    cancelled: int


def reduced_model(d: GridDiagram, mid: int, use_x: bool = False) -> ReducedComplex:
    """Cancel same-bigrading arrows in the truncated complex on gradings
    ``mid + 1, mid, mid - 1``.

    With ``use_x=False`` this is the tilde complex (``M_O`` grading,
    O-avoiding rectangles).  With ``use_x=True`` the roles of X and O are
    exchanged: ``M_X`` grading and X-avoiding rectangles (the complex a
    V-module becomes after setting ``V = 1``).

    Truncating both ends does not change homology in grading ``mid``, nor
    the image of any sublevel in it.
    """
    if d.axis is None:
        raise NoAxis("reduced models are defined for annular grids")
    sp = state_space(d, (mid - 1, mid + 1), use_x)
    m_all = sp.maslov_x if use_x else sp.maslov_o
    degrees = (mid + 1, mid, mid - 1)
    idx = {k: np.flatnonzero(m_all == k) for k in degrees}
    offset = {}
    total = 0
    for k in degrees:
        offset[k] = total
        total += len(idx[k])
    fu = np.concatenate([sp.four_a_axis(idx[k]) for k in degrees]).astype(np.int64)
    fl = np.concatenate([sp.four_a_link(idx[k]) for k in degrees]).astype(np.int64)
    srcs, dsts = [], []
    for k in degrees[:2]:
        if len(idx[k]) == 0 or len(idx[k - 1]) == 0:
            continue
        rb = sp.rectangles(idx[k], avoid_x=use_x, avoid_o=not use_x)
        tgt = sp.lookup(idx[k - 1], rb.target_key)
        ok = tgt >= 0
        srcs.append(rb.source[ok] + offset[k])
        dsts.append(tgt[ok] + offset[k - 1])
    if srcs:
        src, dst = mod2_edges(np.concatenate(srcs), np.concatenate(dsts))
    else:
        src = dst = np.zeros(0, np.int64)
    level = (fu + (1 << 20)) * (1 << 21) + (fl + (1 << 20))
    alive, rsrc, rdst, cancelled = cancel_same_level(total, level, src, dst)

    gens, four_u, four_l, local = {}, {}, {}, {}
    for k in degrees:
        sl = np.arange(offset[k], offset[k] + len(idx[k]))
        keep = sl[alive[sl]]
        gens[k] = idx[k][keep - offset[k]]
        four_u[k] = fu[keep]
        four_l[k] = fl[keep]
        for pos, g in enumerate(keep.tolist()):
            local[g] = pos
    boundary = {k: [0] * len(gens[k]) for k in degrees}
    deg_of = np.empty(total, np.int64)
    for k in degrees:
        deg_of[offset[k]:offset[k] + len(idx[k])] = k
    for s, t in zip(rsrc.tolist(), rdst.tolist()):
        boundary[int(deg_of[s])][local[s]] ^= 1 << local[t]
    return ReducedComplex(d, degrees, gens, four_u, four_l, boundary, int(cancelled))


# ---------------------------------------------------------------------------
# V-modules


@dataclass(frozen=True)
class VModuleSpec:
    """``eta`` (link O's weighted, axis O's free) or ``t`` with ``(p, q)``."""

    kind: str
    p: int = 0
    q: int = 1

    def __post_init__(self):
        if self.kind not in ("eta", "t"):
            raise BadParameters(f"unknown V-module kind {self.kind!r}")
        if self.kind == "t":
            if not (self.q >= 1 and 0 <= self.p <= self.q and gcd(self.p, self.q) == 1):
                raise BadParameters(f"need 0 <= p <= q, q >= 1, gcd(p, q) = 1; got p={self.p}, q={self.q}")

    def weight(self, o_axis, o_link):
        if self.kind == "eta":
            return o_link
        return self.p * o_axis + (self.q - self.p) * o_link


def eta_spec() -> VModuleSpec:
    return VModuleSpec("eta")


def t_spec(p: int, q: int) -> VModuleSpec:
    return VModuleSpec("t", p, q)


@dataclass
class VModule:
    """Truncated ``F2[V]/V^D`` module on states of the chosen ``M_X`` gradings.

    Generator ``(i, j)`` stands for ``V**j`` times state ``i`` (local
    numbering).  Edges ``src -> dst`` carry exponent ``wexp``; the image of
    ``V**j src`` contains ``V**(j + wexp) dst`` whenever that exponent is
    below ``D``.
    """

    grid: GridDiagram
    spec: VModuleSpec
    D: int
    state_index: np.ndarray
    perms: np.ndarray
    maslov_x: np.ndarray
    four_u: np.ndarray
    four_l: np.ndarray
    src: np.ndarray
    dst: np.ndarray
    wexp: np.ndarray

    @property
    def num_states(self) -> int:
        return len(self.state_index)

    def grading4q(self, i, j):
        """``4q`` times the declared functional of ``V**j * state_i``.

        ``t``: ``F_t = (p A_U + (q - p) A_L)/q - j/q``.
        ``eta``: the filtration ``-A_U`` (``q = 1``; V does not move it).
        """
        s = self.spec
        if s.kind == "eta":
            return -self.four_u[i]
        return s.p * self.four_u[i] + (s.q - s.p) * self.four_l[i] - 4 * j

    def a_link4(self, i, j):
        """Four times the link Alexander grading of ``V**j * state_i``."""
        return self.four_l[i] - 4 * j

    def boundary_terms(self, i: int, j: int):
        """Terms ``(state, power)`` of the boundary of ``V**j * state_i``."""
        sel = self._by_src(i)
        out = []
        for e in sel:
            k = j + int(self.wexp[e])
            if k < self.D:
                out.append((int(self.dst[e]), k))
        return out

    def _by_src(self, i):
        if not hasattr(self, "_src_ptr"):
            order = np.argsort(self.src, kind="stable")
            self._order = order
            self._src_ptr = np.searchsorted(self.src[order], np.arange(self.num_states + 1))
        return self._order[self._src_ptr[i]:self._src_ptr[i + 1]]


def build_v_module(d: GridDiagram, spec: VModuleSpec, D: int, maslov_x_window=None) -> VModule:
    """X-avoiding rectangles weighted by ``V**weight`` modulo ``V**D``."""
    if d.axis is None:
        raise NoAxis("V-modules need an axis component")
    if D < 1:
        raise BadParameters(f"truncation must be positive, got D={D}")
    sp = _windowed(d, maslov_x_window, use_x=True)
    m_all = sp.maslov_x
    idx = np.arange(len(sp.perms))
    rb = sp.rectangles(idx, avoid_x=True, avoid_o=False)
    tgt = sp.lookup(idx, rb.target_key)
    ok = tgt >= 0
    w = spec.weight(rb.o_axis[ok].astype(np.int64), rb.o_link[ok].astype(np.int64))
    src, dst, wexp = mod2_edges(rb.source[ok], tgt[ok], w)
    return VModule(d, spec, D, idx, sp.perms[idx], m_all[idx].astype(np.int64),
                   sp.four_a_axis(idx).astype(np.int64), sp.four_a_link(idx).astype(np.int64),
                   src, dst, wexp)


# ---------------------------------------------------------------------------
# audits


@dataclass
class AuditReport:
    passed: bool
    checks: dict
    witnesses: list

    def __bool__(self):
        return self.passed


def _square_zero_witness(n_gen, src, dst):
    """Return a ``(x, z)`` pair with odd two-step path count, or ``None``."""
    order = np.argsort(src, kind="stable")
    s_sorted, d_sorted = src[order], dst[order]
    ptr = np.searchsorted(s_sorted, np.arange(n_gen + 1))
    for x in range(n_gen):
        acc = {}
        for y in d_sorted[ptr[x]:ptr[x + 1]].tolist():
            for z in d_sorted[ptr[y]:ptr[y + 1]].tolist():
                acc[z] = acc.get(z, 0) ^ 1
        for z, parity in acc.items():
            if parity:
                return (x, z)
    return None


def _square_zero_witness_weighted(m: VModule):
    n_gen = m.num_states
    order = np.argsort(m.src, kind="stable")
    s_sorted, d_sorted, w_sorted = m.src[order], m.dst[order], m.wexp[order]
    ptr = np.searchsorted(s_sorted, np.arange(n_gen + 1))
    for x in range(n_gen):
        acc = {}
        for e in range(ptr[x], ptr[x + 1]):
            y, w1 = int(d_sorted[e]), int(w_sorted[e])
            for f in range(ptr[y], ptr[y + 1]):
                key = (int(d_sorted[f]), w1 + int(w_sorted[f]))
                if key[1] < m.D:
                    acc[key] = acc.get(key, 0) ^ 1
        for key, parity in acc.items():
            if parity:
                return (x, key)
    return None


def check_complex(c) -> AuditReport:
    """Verify square-zero, the grading drop and the filtration behaviour."""
    checks, wit = {}, []
    if isinstance(c, FilteredComplex):
        w = _square_zero_witness(c.size, c.src, c.dst)
        checks["square_zero"] = w is None
        if w is not None:
            wit.append(("square_zero", w))
        drop = c.maslov[c.src] - c.maslov[c.dst]
        checks["maslov_drop"] = bool(np.all(drop == 1))
        if not checks["maslov_drop"]:
            e = int(np.flatnonzero(drop != 1)[0])
            wit.append(("maslov_drop", (int(c.src[e]), int(c.dst[e]))))
        diff = c.four_a[:, c.src] - c.four_a[:, c.dst]
        if c.kind == "graded":
            ok = np.all(diff == 0, axis=0)
            name = "alexander_preserved"
        else:
            ok = np.all(diff >= 0, axis=0)
            name = "filtered"
        checks[name] = bool(np.all(ok))
        if not checks[name]:
            e = int(np.flatnonzero(~ok)[0])
            wit.append((name, (int(c.src[e]), int(c.dst[e]))))
    elif isinstance(c, VModule):
        w = _square_zero_witness_weighted(c)
        checks["square_zero"] = w is None
        if w is not None:
            wit.append(("square_zero", w))
        drop = c.maslov_x[c.src] - c.maslov_x[c.dst]
        checks["maslov_drop"] = bool(np.all(drop == 1))
        g_src = c.grading4q(c.src, 0)
        g_dst = c.grading4q(c.dst, c.wexp)
        if c.spec.kind == "t":
            ok = g_src == g_dst
            name = "grading_preserved"
        else:
            ok = g_dst <= g_src
            name = "filtered"
            al = c.a_link4(c.src, 0) == c.a_link4(c.dst, c.wexp)
            checks["link_grading_preserved"] = bool(np.all(al))
        checks[name] = bool(np.all(ok))
        if not checks[name]:
            e = int(np.flatnonzero(~ok)[0])
            wit.append((name, (int(c.src[e]), int(c.dst[e]))))
    else:
        raise TypeError(f"cannot audit {type(c).__name__}")
    return AuditReport(all(checks.values()), checks, wit)


def with_flipped_entry(c: FilteredComplex, src: int, dst: int) -> FilteredComplex:
    """Copy of ``c`` with one boundary coefficient toggled (audit fixture)."""
    s = np.concatenate([c.src, [src]])
    t = np.concatenate([c.dst, [dst]])
    s, t = mod2_edges(s, t)
    return FilteredComplex(c.grid, c.kind, c.state_index, c.perms, c.maslov, c.four_a, s, t)
