"""Vectorised enumeration of grid states with their gradings.

States are generated in lexicographic order as an ``int8`` array; gradings
and rectangles are then evaluated column-wise with numpy.  This is the
performance path used by the complexes.  The scalar formulas in
:mod:`grid_core` are the reference they are tested against.

A Maslov grading is a sum of one term per row that depends only on the
row, its column and the set of columns used by the rows below.  A dynamic
program over column subsets therefore counts states per Maslov grading in
``O(2^n n)`` steps, and enumerating only the states inside a Maslov window
can prune every partial state that has no completion in the window.

Integer encodings:

* ``key`` -- the permutation read as a base-``n`` number; keys increase in
  lexicographic order, so ``np.searchsorted`` maps keys back to indices.
* ``four_a[c]`` -- four times the Alexander grading of component ``c``
  (always an integer, since gradings live in ``Z/2``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

import numpy as np

from .grid_core import GridDiagram, _o_points, _sym, _x_points

MAX_ENUMERATED_SIZE = 11
MAX_WINDOW_SIZE = 13


@lru_cache(maxsize=4)
def all_permutations(n: int) -> np.ndarray:
    """Every permutation of ``0..n-1`` as rows of an ``(n!, n)`` int8 array,
    in lexicographic order."""
    if n > MAX_ENUMERATED_SIZE:
        raise ValueError(f"refusing to enumerate {factorial(n)} states (n={n})")
    perms = np.zeros((1, 1), dtype=np.int8)
    for m in range(2, n + 1):
        prev = perms
        block = prev.shape[0]
        out = np.empty((block * m, m), dtype=np.int8)
        for v in range(m):
            sl = out[v * block:(v + 1) * block]
            sl[:, 0] = v
            sl[:, 1:] = prev + (prev >= v)
        perms = out
    perms.setflags(write=False)
    return perms


def keys_of(perms: np.ndarray, n: int) -> np.ndarray:
    weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return perms.astype(np.int64) @ weights


def _marking_counts(perms: np.ndarray, cols, rows) -> np.ndarray:
    """Sum over the markings ``(cols[k], rows[k])`` of the number of state
    points strictly south-west or north-east of the marking."""
    total = np.zeros(perms.shape[0], dtype=np.int32)
    n = perms.shape[1]
    for c, r in zip(cols, rows):
        for row in range(n):
            column = perms[:, row]
            if row <= r:
                total += column <= c
            else:
                total += column > c
    return total


def _row_weights(d: GridDiagram, use_x: bool) -> np.ndarray:
    """``w[r, c]``: markings strictly NE or weakly SW of lattice point ``(c, r)``."""
    n = d.n
    cols = d.x_col if use_x else d.o_col
    r = np.arange(n)[:, None, None]
    c = np.arange(n)[None, :, None]
    mr = np.arange(n)[None, None, :]
    mc = np.array(cols)[None, None, :]
    hit = ((r <= mr) & (c <= mc)) | ((r > mr) & (c > mc))
    return hit.sum(axis=2)  # indexed [row, col]


def _maslov_constant(d: GridDiagram, use_x: bool) -> int:
    marks = _x_points(d) if use_x else _o_points(d)
    return _sym(marks, marks) // 2 + 1


@lru_cache(maxsize=1)
def _popcount_and_lower(n: int):
    masks = np.arange(1 << n)
    pop = np.zeros(1 << n, dtype=np.int64)
    for c in range(n):
        pop += (masks >> c) & 1
    lower = np.zeros((1 << n, n), dtype=np.int64)  # set bits below c
    for c in range(1, n):
        lower[:, c] = lower[:, c - 1] + ((masks >> (c - 1)) & 1)
    return pop, lower


def _increments(d: GridDiagram, use_x: bool) -> np.ndarray:
    """``inc[mask, c]``: grading contribution of the next row at column ``c``."""
    n = d.n
    pop, lower = _popcount_and_lower(n)
    w = _row_weights(d, use_x)
    rows = np.minimum(pop, n - 1)
    return lower - w[rows, :]


def _suffix_ranges(d: GridDiagram, use_x: bool):
    """For every column subset, the set of values the remaining rows can add,
    as a boolean table over an offset range."""
    n = d.n
    full = (1 << n) - 1
    inc = _increments(d, use_x)
    span = n * n + 1
    reach = np.zeros((1 << n, 2 * span + 1), dtype=bool)
    reach[full, span] = True
    pop, _ = _popcount_and_lower(n)
    order = np.argsort(-pop, kind="stable")
    for mask in order.tolist():
        if mask == full:
            continue
        acc = reach[mask]
        for c in range(n):
            if mask >> c & 1:
                continue
            k = int(inc[mask, c])
            src = reach[mask | (1 << c)]
            if k >= 0:
                acc[k:] |= src[:len(src) - k]
            else:
                acc[:k] |= src[-k:]
    return reach, span, inc


def maslov_histogram(d: GridDiagram, use_x: bool = False) -> dict:
    """Number of states in each Maslov grading, without enumerating them."""
    n = d.n
    inc = _increments(d, use_x)
    pop, _ = _popcount_and_lower(n)
    span = n * n + 1
    counts = np.zeros((1 << n, 2 * span + 1), dtype=np.int64)
    counts[0, span] = 1
    for mask in np.argsort(pop, kind="stable").tolist():
        h = counts[mask]
        if pop[mask] == n or not h.any():
            continue
        for c in range(n):
            if mask >> c & 1:
                continue
            k = int(inc[mask, c])
            dst = counts[mask | (1 << c)]
            if k >= 0:
                dst[k:] += h[:len(h) - k]
            else:
                dst[:k] += h[-k:]
    final = counts[(1 << n) - 1]
    const = _maslov_constant(d, use_x)
    return {int(v) - span + const: int(final[v]) for v in np.flatnonzero(final)}


def window_permutations(d: GridDiagram, lo: int, hi: int, use_x: bool = False) -> np.ndarray:
    """All states whose Maslov grading lies in ``[lo, hi]``, lexicographically.

    Rows are filled bottom-up; a partial state survives only if some
    completion lands in the window, so the frontier never exceeds the
    output size.
    """
    n = d.n
    if n > MAX_WINDOW_SIZE:
        raise ValueError(f"grid size {n} exceeds the windowed enumeration limit")
    reach, span, inc = _suffix_ranges(d, use_x)
    const = _maslov_constant(d, use_x)
    lo_off, hi_off = lo - const, hi - const
    values = np.arange(2 * span + 1) - span
    # prefix values v survive at mask when some suffix s has lo <= v + s <= hi
    cum = np.concatenate([np.zeros((1 << n, 1), dtype=np.int64), np.cumsum(reach, axis=1)], axis=1)

    def feasible(mask, val):
        a = np.clip(lo_off - val + span, 0, 2 * span + 1)
        b = np.clip(hi_off - val + span + 1, 0, 2 * span + 1)
        return cum[mask, b] > cum[mask, a]

    perms = np.zeros((1, 0), dtype=np.int8)
    masks = np.zeros(1, dtype=np.int64)
    vals = np.zeros(1, dtype=np.int64)
    if not feasible(masks, vals)[0]:
        return np.zeros((0, n), dtype=np.int8)
    for row in range(n):
        new_p, new_m, new_v = [], [], []
        for c in range(n):
            free = ((masks >> c) & 1) == 0
            m2 = masks[free] | (1 << c)
            v2 = vals[free] + inc[masks[free], c]
            ok = feasible(m2, v2)
            sel = np.flatnonzero(free)[ok]
            new_p.append(np.concatenate([perms[sel], np.full((len(sel), 1), c, np.int8)], axis=1))
            new_m.append(m2[ok])
            new_v.append(v2[ok])
        perms = np.concatenate(new_p)
        masks = np.concatenate(new_m)
        vals = np.concatenate(new_v)
    order = np.lexsort(perms.T[::-1])
    out = perms[order]
    out.setflags(write=False)
    return out


@dataclass
class RectangleBatch:
    """Rectangles leaving a set of source states.

    Arrays are parallel: ``source`` indexes the batch's source list,
    ``target_key`` is the target state's key, ``o_axis``/``o_link`` count
    the O markings on the axis / on the other components, ``x_count`` the
    X markings inside.
    """

    source: np.ndarray
    target_key: np.ndarray
    o_axis: np.ndarray
    o_link: np.ndarray
    x_axis: np.ndarray
    x_link: np.ndarray


class StateSpace:
    """States of a grid with bulk gradings.

    With ``window=(lo, hi)`` only states whose Maslov grading (``M_X`` when
    ``use_x``, else ``M_O``) lies in ``[lo, hi]`` are present; otherwise all
    ``n!`` states are.  Heavy arrays are computed lazily and cached.
    """

    def __init__(self, d: GridDiagram, window=None, use_x: bool = False):
        self.d = d
        self.n = d.n
        self.window = None if window is None else (int(window[0]), int(window[1]))
        self.window_uses_x = use_x
        self._perms = None
        self._keys = None
        self._maslov_o = None
        self._maslov_x = None
        self._four_a = None

    # -- bulk arrays --------------------------------------------------------

    @property
    def perms(self) -> np.ndarray:
        if self._perms is None:
            if self.window is None:
                self._perms = all_permutations(self.n)
            else:
                self._perms = window_permutations(self.d, *self.window, use_x=self.window_uses_x)
        return self._perms

    @property
    def keys(self) -> np.ndarray:
        if self._keys is None:
            self._keys = keys_of(self.perms, self.n)
        return self._keys

    def _self_pairs(self) -> np.ndarray:
        """``I(x, x)``: pairs of state points in north-east position."""
        p = self.perms
        n = self.n
        out = np.zeros(p.shape[0], dtype=np.int32)
        for a in range(n):
            for b in range(a + 1, n):
                out += p[:, b] > p[:, a]
        return out

    def _maslov(self, use_x: bool) -> np.ndarray:
        d = self.d
        cols = d.x_col if use_x else d.o_col
        marks = _x_points(d) if use_x else _o_points(d)
        s = _marking_counts(self.perms, cols, range(self.n))
        const = _sym(marks, marks) // 2 + 1
        return (self._self_i - s + const).astype(np.int16)

    @property
    def _self_i(self):
        if not hasattr(self, "_cached_self_i"):
            self._cached_self_i = self._self_pairs()
        return self._cached_self_i

    @property
    def maslov_o(self) -> np.ndarray:
        if self._maslov_o is None:
            self._maslov_o = self._maslov(False)
        return self._maslov_o

    @property
    def maslov_x(self) -> np.ndarray:
        if self._maslov_x is None:
            self._maslov_x = self._maslov(True)
        return self._maslov_x

    @property
    def four_a(self) -> np.ndarray:
        """Shape ``(num_components, n!)``: four times each A_i."""
        if self._four_a is None:
            d = self.d
            out = np.zeros((d.num_components, self.perms.shape[0]), dtype=np.int16)
            allx, allo = _x_points(d), _o_points(d)
            for comp in range(d.num_components):
                rows = d.rows_of(comp)
                sx = _marking_counts(self.perms, [d.x_col[r] for r in rows], rows)
                so = _marking_counts(self.perms, [d.o_col[r] for r in rows], rows)
                xs, os_ = _x_points(d, comp), _o_points(d, comp)
                const = (_sym(allx, xs) + _sym(allo, xs) - _sym(allx, os_) - _sym(allo, os_)
                         + 2 * (len(rows) - 1))
                out[comp] = 2 * (sx - so) - const
            self._four_a = out
        return self._four_a

    def four_a_axis(self, idx=None) -> np.ndarray:
        arr = self.four_a[self.d.axis]
        return arr if idx is None else arr[idx]

    def four_a_link(self, idx=None) -> np.ndarray:
        links = list(self.d.link_components)
        arr = self.four_a[links].sum(axis=0, dtype=np.int32)
        return arr if idx is None else arr[idx]

    # -- selection ----------------------------------------------------------

    def indices_with(self, maslov: int, use_x: bool = False) -> np.ndarray:
        m = self.maslov_x if use_x else self.maslov_o
        return np.flatnonzero(m == maslov)

    def lookup(self, idx_sorted: np.ndarray, keys: np.ndarray) -> np.ndarray:
        """Positions of ``keys`` inside the (sorted) index list ``idx_sorted``;
        ``-1`` where absent."""
        ks = self.keys[idx_sorted]
        pos = np.searchsorted(ks, keys)
        pos_clipped = np.minimum(pos, len(ks) - 1)
        found = (pos < len(ks)) & (ks[pos_clipped] == keys) if len(ks) else np.zeros(len(keys), bool)
        return np.where(found, pos_clipped, -1)

    def state_index(self, perm) -> int:
        key = int(np.dot(np.array(perm, dtype=np.int64),
                         self.n ** np.arange(self.n - 1, -1, -1, dtype=np.int64)))
        pos = int(np.searchsorted(self.keys, key))
        if pos >= len(self.keys) or self.keys[pos] != key:
            raise KeyError(perm)
        return pos

    # -- rectangles ---------------------------------------------------------

    def rectangles(self, source_idx: np.ndarray, avoid_x: bool, avoid_o: bool,
                   chunk: int = 200_000) -> RectangleBatch:
        """Empty rectangles out of the given states (toroidal)."""
        d = self.d
        n = self.n
        weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
        axis_rows = np.array([d.comp_of_row[r] == d.axis for r in range(n)])
        o_col = np.array(d.o_col)
        x_col = np.array(d.x_col)
        parts = []
        for start in range(0, len(source_idx), chunk):
            sel = source_idx[start:start + chunk]
            p = self.perms[sel].astype(np.int16)
            keys = self.keys[sel]
            local = np.arange(start, start + len(sel))
            for a in range(n):
                for b in range(n):
                    if a == b:
                        continue
                    h = (b - a) % n
                    w = (p[:, b] - p[:, a]) % n
                    ok = np.ones(len(sel), dtype=bool)
                    for k in range(1, h):
                        r = (a + k) % n
                        off = (p[:, r] - p[:, a]) % n
                        ok &= ~((off >= 1) & (off <= w - 1))
                    rows_in = [(a + k) % n for k in range(h)]
                    oa = np.zeros(len(sel), dtype=np.int16)
                    ol = np.zeros(len(sel), dtype=np.int16)
                    xa = np.zeros(len(sel), dtype=np.int16)
                    xl = np.zeros(len(sel), dtype=np.int16)
                    for r in rows_in:
                        o_in = (o_col[r] - p[:, a]) % n < w
                        x_in = (x_col[r] - p[:, a]) % n < w
                        if axis_rows[r]:
                            oa += o_in
                            xa += x_in
                        else:
                            ol += o_in
                            xl += x_in
                    if avoid_o:
                        ok &= (oa + ol) == 0
                    if avoid_x:
                        ok &= (xa + xl) == 0
                    hit = np.flatnonzero(ok)
                    if len(hit) == 0:
                        continue
                    delta = (p[hit, b] - p[hit, a]).astype(np.int64) * (weights[a] - weights[b])
                    parts.append((local[hit], keys[hit] + delta, oa[hit], ol[hit], xa[hit], xl[hit]))
        if not parts:
            z = np.zeros(0, dtype=np.int64)
            return RectangleBatch(z, z, z, z, z, z)
        cols = list(zip(*parts))
        return RectangleBatch(*(np.concatenate(c) for c in cols))
