"""Toroidal grid diagrams of annular links and their grading formulas.

Conventions
-----------
Rows and columns are numbered ``0..n-1`` bottom-to-top and left-to-right.
Grid-state points sit on lattice points ``(c, r)``; markings sit at cell
centres ``(c + 1/2, r + 1/2)``.  Internally every point is doubled so that
all comparisons are integer comparisons: lattice point ``(c, r)`` becomes
``(2c, 2r)`` and the marking in cell ``(c, r)`` becomes ``(2c+1, 2r+1)``.

Each component is oriented from X to O along vertical segments and from
O to X along horizontal segments.  At a crossing the vertical strand
passes over the horizontal one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (
    AxisNotUnknot,
    AxisTouched,
    CellCollision,
    IllegalMove,
    NoAxisComponent,
    NotPermutation,
    StateSizeMismatch,
    UnknownComponent,
)

HALF = Fraction(1, 2)

RECTANGLE_POLICIES = ("avoid_X", "avoid_O", "avoid_X_and_O", "count_all")


# ---------------------------------------------------------------------------
# value types


@dataclass(frozen=True)
class GridDiagram:
    """Validated grid.  Build instances with :func:`validate`.

    ``comp_of_row[r]`` is the component owning the X and O markings of
    row ``r`` (both markings of a row always lie on the same component).
    Components are numbered by their lowest row.  ``axis`` is the index of
    the axis unknot or ``None`` for a plain link.
    """

    n: int
    x_col: tuple
    o_col: tuple
    comp_of_row: tuple
    axis: Optional[int] = None

    @property
    def num_components(self) -> int:
        return max(self.comp_of_row) + 1

    @property
    def link_components(self) -> tuple:
        """Component ids other than the axis, in increasing order."""
        return tuple(c for c in range(self.num_components) if c != self.axis)

    @property
    def l(self) -> int:
        """Number of components of the link with the axis removed."""
        return len(self.link_components)

    def rows_of(self, comp: int) -> tuple:
        return tuple(r for r in range(self.n) if self.comp_of_row[r] == comp)

    def size_of(self, comp: int) -> int:
        """Number of X markings on ``comp``."""
        return sum(1 for c in self.comp_of_row if c == comp)

    @property
    def x_row_of_col(self) -> tuple:
        inv = [0] * self.n
        for r, c in enumerate(self.x_col):
            inv[c] = r
        return tuple(inv)

    @property
    def o_row_of_col(self) -> tuple:
        inv = [0] * self.n
        for r, c in enumerate(self.o_col):
            inv[c] = r
        return tuple(inv)

    def comp_of_col(self, col: int) -> int:
        return self.comp_of_row[self.x_row_of_col[col]]

    def to_json(self) -> dict:
        return {"n": self.n, "x": list(self.x_col), "o": list(self.o_col), "axis": self.axis}


@dataclass(frozen=True)
class GridState:
    """``perm[r]`` is the column of the state point on horizontal line ``r``."""

    perm: tuple

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(int(c) for c in self.perm))
        if sorted(self.perm) != list(range(len(self.perm))):
            raise NotPermutation(f"state {self.perm} is not a permutation")

    @property
    def n(self) -> int:
        return len(self.perm)

    def points(self):
        return [(c, r) for r, c in enumerate(self.perm)]


@dataclass(frozen=True)
class Bigrading:
    maslov: Fraction
    a_u: Fraction
    a_comp: tuple
    a_l: Fraction

    @property
    def alexander(self) -> Fraction:
        return self.a_u + self.a_l


@dataclass(frozen=True)
class Rectangle:
    """Rectangle from ``source`` to ``target``.

    ``o_counts[r]`` / ``x_counts[r]`` is the multiplicity (0 or 1) of the
    O / X marking of row ``r`` inside the rectangle.
    """

    source: GridState
    target: GridState
    o_counts: tuple
    x_counts: tuple
    empty: bool = True

    @property
    def num_o(self) -> int:
        return sum(self.o_counts)

    @property
    def num_x(self) -> int:
        return sum(self.x_counts)


@dataclass(frozen=True)
class ClassicalInvariants:
    """Classical data of the Legendrian link carried by a grid.

    The Legendrian front is obtained by rotating the grid 45 degrees
    clockwise and switching every crossing, so the Legendrian link is
    the mirror of the topological link drawn by the grid.  ``lk`` on the
    other hand is the linking matrix of the grid's own link.
    """

    writhe: int
    lk: tuple
    tb_comp: tuple
    rot_comp: tuple
    tb: int
    rot: Fraction
    cusps: tuple

    @property
    def sl(self) -> Fraction:
        return self.tb - self.rot


# ---------------------------------------------------------------------------
# construction


def _is_perm(seq: Sequence[int], n: int) -> bool:
    return len(seq) == n and sorted(seq) == list(range(n))


def component_rows(n: int, x_col: Sequence[int], o_col: Sequence[int]) -> tuple:
    """Chase row/column marking chains; return the component of each row."""
    x_row_of_col = [0] * n
    for r, c in enumerate(x_col):
        x_row_of_col[c] = r
    comp = [-1] * n
    count = 0
    for start in range(n):
        if comp[start] >= 0:
            continue
        r = start
        while comp[r] < 0:
            comp[r] = count
            r = x_row_of_col[o_col[r]]
        count += 1
    return tuple(comp)


def validate(n: int, x: Sequence[int], o: Sequence[int], axis: Optional[int] = None,
             plain: bool = False) -> GridDiagram:
    """Check a raw grid and compute its components.

    With ``plain=False`` an axis is required: either the hinted component
    index or the unique component carrying exactly two X markings.
    """
    x = tuple(int(c) for c in x)
    o = tuple(int(c) for c in o)
    if len(x) != n or len(o) != n:
        raise NotPermutation(f"expected {n} columns per marking type, got {len(x)} and {len(o)}")
    if n < 2:
        raise NotPermutation("grids of size 1 are not accepted")
    if not _is_perm(x, n):
        raise NotPermutation(f"X columns {list(x)} are not a permutation of 0..{n - 1}")
    if not _is_perm(o, n):
        raise NotPermutation(f"O columns {list(o)} are not a permutation of 0..{n - 1}")
    for r in range(n):
        if x[r] == o[r]:
            raise CellCollision(f"row {r} has X and O in column {x[r]}", row=r)
    comp = component_rows(n, x, o)
    ncomp = max(comp) + 1
    if plain:
        if axis is not None:
            _check_axis(comp, ncomp, axis)
        return GridDiagram(n, x, o, comp, axis)
    if axis is None:
        candidates = [c for c in range(ncomp) if comp.count(c) == 2]
        if len(candidates) != 1:
            raise NoAxisComponent(
                f"found {len(candidates)} components with two X markings; pass an axis hint")
        axis = candidates[0]
    _check_axis(comp, ncomp, axis)
    if ncomp < 2:
        raise NoAxisComponent("the diagram consists of the axis alone")
    return GridDiagram(n, x, o, comp, axis)


def _check_axis(comp, ncomp, axis):
    if not 0 <= axis < ncomp:
        raise NoAxisComponent(f"axis hint {axis} is not a component (have {ncomp})")
    if comp.count(axis) != 2:
        # Any component drawn with two X markings is a rectangle, hence an
        # unknot; larger ones are refused rather than tested for knottedness.
        raise AxisNotUnknot(f"axis component {axis} has {comp.count(axis)} X markings, need 2")


def from_json(obj: dict, plain: bool = False) -> GridDiagram:
    return validate(int(obj["n"]), obj["x"], obj["o"], obj.get("axis"), plain=plain)


def with_axis(d: GridDiagram, axis: Optional[int]) -> GridDiagram:
    return validate(d.n, d.x_col, d.o_col, axis, plain=axis is None)


# ---------------------------------------------------------------------------
# gradings


def _count_ne(ps: Iterable[tuple], qs: Iterable[tuple]) -> int:
    """``I(P, Q)``: pairs with q strictly north-east of p."""
    qs = list(qs)
    return sum(1 for (px, py) in ps for (qx, qy) in qs if px < qx and py < qy)


def _sym(ps, qs) -> int:
    """Twice the symmetrised pairing ``J(P, Q)``."""
    return _count_ne(ps, qs) + _count_ne(qs, ps)


def _state_points(s: GridState):
    return [(2 * c, 2 * r) for r, c in enumerate(s.perm)]


def _x_points(d: GridDiagram, comp: Optional[int] = None):
    return [(2 * c + 1, 2 * r + 1) for r, c in enumerate(d.x_col)
            if comp is None or d.comp_of_row[r] == comp]


def _o_points(d: GridDiagram, comp: Optional[int] = None):
    return [(2 * c + 1, 2 * r + 1) for r, c in enumerate(d.o_col)
            if comp is None or d.comp_of_row[r] == comp]


def _check_state(d: GridDiagram, s) -> GridState:
    if not isinstance(s, GridState):
        s = GridState(tuple(s))
    if s.n != d.n:
        raise StateSizeMismatch(f"state has {s.n} points, grid has size {d.n}")
    return s


def maslov(d: GridDiagram, s: GridState, use_x: bool = False) -> int:
    """``M_O`` (default) or ``M_X``: J(x - O, x - O) + 1."""
    s = _check_state(d, s)
    pts = _state_points(s)
    marks = _x_points(d) if use_x else _o_points(d)
    twice = _sym(pts, pts) - 2 * _sym(pts, marks) + _sym(marks, marks)
    return twice // 2 + 1


def alexander_component(d: GridDiagram, s: GridState, comp: int) -> Fraction:
    """Per-component Alexander grading via the symmetrised pairing."""
    s = _check_state(d, s)
    if not 0 <= comp < d.num_components:
        raise UnknownComponent(f"no component {comp}")
    pts = _state_points(s)
    xs, os_ = _x_points(d, comp), _o_points(d, comp)
    allx, allo = _x_points(d), _o_points(d)
    # 4 * J(x - (X+O)/2, X_i - O_i)
    four = 2 * (_sym(pts, xs) - _sym(pts, os_)) - (
        _sym(allx, xs) + _sym(allo, xs) - _sym(allx, os_) - _sym(allo, os_))
    return Fraction(four, 4) - Fraction(d.size_of(comp) - 1, 2)


def alexander_component_asymmetric(d: GridDiagram, s: GridState, comp: int) -> Fraction:
    """Same formula with the non-symmetrised pairing ``I``.

    Kept only so the test-suite can show that it disagrees with the
    winding-number formula; it is not used by any computation.
    """
    s = _check_state(d, s)
    pts = _state_points(s)
    xs, os_ = _x_points(d, comp), _o_points(d, comp)
    allx, allo = _x_points(d), _o_points(d)
    two = 2 * (_count_ne(pts, xs) - _count_ne(pts, os_)) - (
        _count_ne(allx, xs) + _count_ne(allo, xs) - _count_ne(allx, os_) - _count_ne(allo, os_))
    return Fraction(two, 2) - Fraction(d.size_of(comp) - 1, 2)


def gradings(d: GridDiagram, s) -> Bigrading:
    s = _check_state(d, s)
    m = Fraction(maslov(d, s))
    per = {c: alexander_component(d, s, c) for c in range(d.num_components)}
    a_u = per[d.axis] if d.axis is not None else Fraction(0)
    a_comp = tuple(per[c] for c in d.link_components)
    return Bigrading(m, a_u, a_comp, sum(a_comp, Fraction(0)))


def winding_number(d: GridDiagram, comp: int, px: int, py: int) -> int:
    """Winding number of the planar projection of ``comp`` around the doubled
    point ``(px, py)``, counted along a ray pointing right."""
    x_row = d.x_row_of_col
    o_row = d.o_row_of_col
    w = 0
    for col in range(d.n):
        if d.comp_of_row[x_row[col]] != comp:
            continue
        if 2 * col + 1 <= px:
            continue
        lo, hi = sorted((2 * x_row[col] + 1, 2 * o_row[col] + 1))
        if lo < py < hi:
            w += 1 if o_row[col] > x_row[col] else -1
    return w


def alexander_winding(d: GridDiagram, s, comp: int) -> Fraction:
    """Per-component Alexander grading from winding numbers.

    ``-sum of windings at the state points + (1/8) * sum of windings at the
    four corners of every marked cell - (n_comp - 1)/2``.
    """
    s = _check_state(d, s)
    if not 0 <= comp < d.num_components:
        raise UnknownComponent(f"no component {comp}")
    total_state = sum(winding_number(d, comp, 2 * c, 2 * r) for r, c in enumerate(s.perm))
    corners = 0
    for cols in (d.x_col, d.o_col):
        for r, c in enumerate(cols):
            for dx in (0, 2):
                for dy in (0, 2):
                    corners += winding_number(d, comp, 2 * c + dx, 2 * r + dy)
    return -total_state + Fraction(corners, 8) - Fraction(d.size_of(comp) - 1, 2)


# ---------------------------------------------------------------------------
# rectangles


def rectangles(d: GridDiagram, s, policy: str = "count_all", empty_only: bool = True):
    """All rectangles out of ``s`` (toroidal), filtered by ``policy``.

    Policies: ``avoid_X``, ``avoid_O``, ``avoid_X_and_O``, ``count_all``.
    """
    if policy not in RECTANGLE_POLICIES:
        raise ValueError(f"unknown rectangle policy {policy!r}")
    s = _check_state(d, s)
    n, x = d.n, s.perm
    out = []
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            w = (x[b] - x[a]) % n
            h = (b - a) % n
            empty = all(not (1 <= (x[r] - x[a]) % n <= w - 1)
                        for r in ((a + k) % n for k in range(1, h)))
            if empty_only and not empty:
                continue
            rows_in = [(a + k) % n for k in range(h)]
            o_counts = [0] * n
            x_counts = [0] * n
            for r in rows_in:
                if (d.o_col[r] - x[a]) % n < w:
                    o_counts[r] = 1
                if (d.x_col[r] - x[a]) % n < w:
                    x_counts[r] = 1
            if policy in ("avoid_X", "avoid_X_and_O") and any(x_counts):
                continue
            if policy in ("avoid_O", "avoid_X_and_O") and any(o_counts):
                continue
            y = list(x)
            y[a], y[b] = x[b], x[a]
            out.append(Rectangle(s, GridState(tuple(y)), tuple(o_counts), tuple(x_counts), empty))
    return out


def empty_rectangles(d: GridDiagram, s, policy: str = "count_all"):
    return rectangles(d, s, policy, empty_only=True)


# ---------------------------------------------------------------------------
# distinguished states and classical invariants


def distinguished_states(d: GridDiagram):
    """States at the north-east and south-west corners of the X cells."""
    n = d.n
    plus = [0] * n
    minus = [0] * n
    for r, c in enumerate(d.x_col):
        plus[(r + 1) % n] = (c + 1) % n
        minus[r] = c
    return GridState(tuple(plus)), GridState(tuple(minus))


def crossings(d: GridDiagram):
    """Crossings of the planar projection as ``(col, row, sign)``.

    ``col`` is the over (vertical) strand's column, ``row`` the under
    (horizontal) strand's row.
    """
    x_row, o_row = d.x_row_of_col, d.o_row_of_col
    out = []
    for col in range(d.n):
        lo, hi = sorted((x_row[col], o_row[col]))
        up = 1 if o_row[col] > x_row[col] else -1
        for row in range(lo + 1, hi):
            left, right = sorted((d.x_col[row], d.o_col[row]))
            if left < col < right:
                rightward = 1 if d.x_col[row] > d.o_col[row] else -1
                out.append((col, row, -up * rightward))
    return out


def linking_matrix(d: GridDiagram):
    k = d.num_components
    twice = [[0] * k for _ in range(k)]
    for col, row, sign in crossings(d):
        a, b = d.comp_of_col(col), d.comp_of_row[row]
        if a != b:
            twice[a][b] += sign
            twice[b][a] += sign
    return tuple(tuple(v // 2 for v in line) for line in twice)


def _corner_cusps(d: GridDiagram):
    """Per component: (north-east corner count, south-west count, down cusps, up cusps).

    After a 45 degree clockwise rotation, north-east and south-west
    corners become the cusps of the front.
    """
    k = d.num_components
    ne = [0] * k
    sw = [0] * k
    down = [0] * k
    up = [0] * k
    x_row, o_row = d.x_row_of_col, d.o_row_of_col
    for r in range(d.n):
        comp = d.comp_of_row[r]
        for kind, col in (("X", d.x_col[r]), ("O", d.o_col[r])):
            other_col = d.o_col[r] if kind == "X" else d.x_col[r]
            other_row = o_row[col] if kind == "X" else x_row[col]
            hdir = 1 if other_col > col else -1
            vdir = 1 if other_row > r else -1
            if hdir < 0 and vdir < 0:
                ne[comp] += 1
                if kind == "X":
                    down[comp] += 1
                else:
                    up[comp] += 1
            elif hdir > 0 and vdir > 0:
                sw[comp] += 1
                if kind == "X":
                    up[comp] += 1
                else:
                    down[comp] += 1
    return ne, sw, down, up


def classical_invariants(d: GridDiagram) -> ClassicalInvariants:
    k = d.num_components
    cr = crossings(d)
    writhe = sum(s for _, _, s in cr)
    self_writhe = [0] * k
    for col, row, sign in cr:
        if d.comp_of_col(col) == d.comp_of_row[row]:
            self_writhe[d.comp_of_row[row]] += sign
    lk = linking_matrix(d)
    ne, sw, down, up = _corner_cusps(d)
    tb_comp = []
    rot_comp = []
    for c in range(k):
        # the front's crossings are the grid's crossings switched
        front_wr = -self_writhe[c]
        front_lk = -sum(lk[c][j] for j in range(k) if j != c)
        cusps = ne[c] + sw[c]
        tb_comp.append(front_wr + front_lk - cusps // 2)
        rot_comp.append(Fraction(down[c] - up[c], 2))
    cusps = tuple(ne[c] + sw[c] for c in range(k))
    return ClassicalInvariants(writhe, lk, tuple(tb_comp), tuple(rot_comp), sum(tb_comp),
                               sum(rot_comp, Fraction(0)), cusps)


# ---------------------------------------------------------------------------
# moves


def _rebuild(d: GridDiagram, x, o, axis_row: Optional[int]) -> GridDiagram:
    n = len(x)
    if d.axis is None:
        return validate(n, x, o, None, plain=True)
    comp = component_rows(n, x, o)
    return validate(n, x, o, comp[axis_row])


def _axis_row(d: GridDiagram) -> Optional[int]:
    return None if d.axis is None else d.rows_of(d.axis)[0]


def mirror_state(d: GridDiagram, s) -> GridState:
    """Image of a state under :func:`mirror_horizontal`."""
    s = _check_state(d, s)
    n = d.n
    y = [0] * n
    for r, c in enumerate(s.perm):
        y[(-r) % n] = c
    return GridState(tuple(y))


def mirror_horizontal(d: GridDiagram) -> GridDiagram:
    """Reflect rows (``r -> n-1-r``); draws the mirror link."""
    n = d.n
    x = [d.x_col[n - 1 - r] for r in range(n)]
    o = [d.o_col[n - 1 - r] for r in range(n)]
    ar = _axis_row(d)
    return _rebuild(d, x, o, None if ar is None else n - 1 - ar)


def reflect_diagonal(d: GridDiagram) -> GridDiagram:
    """Swap the roles of rows and columns; draws the reversed link."""
    n = d.n
    x = [0] * n
    o = [0] * n
    for r in range(n):
        x[d.x_col[r]] = r
        o[d.o_col[r]] = r
    ar = _axis_row(d)
    return _rebuild(d, x, o, None if ar is None else d.x_col[ar])


def cyclic(d: GridDiagram, shift) -> GridDiagram:
    """Cyclically translate by ``(dcol, drow)`` on the torus."""
    dc, dr = shift
    n = d.n
    x = [0] * n
    o = [0] * n
    for r in range(n):
        x[(r + dr) % n] = (d.x_col[r] + dc) % n
        o[(r + dr) % n] = (d.o_col[r] + dc) % n
    ar = _axis_row(d)
    return _rebuild(d, x, o, None if ar is None else (ar + dr) % n)


def _interleaved(a, b) -> bool:
    a0, a1 = sorted(a)
    b0, b1 = sorted(b)
    return (a0 < b0 < a1) != (a0 < b1 < a1)


def _column_swap(d: GridDiagram, i: int, allow_axis: bool, want_interleaved: bool) -> GridDiagram:
    n = d.n
    if not 0 <= i < n - 1:
        raise IllegalMove(i, f"column index must lie in 0..{n - 2}")
    j = i + 1
    if not allow_axis and d.axis is not None and d.axis in (d.comp_of_col(i), d.comp_of_col(j)):
        raise AxisTouched(f"columns {i},{j} touch the axis component")
    xr, orow = d.x_row_of_col, d.o_row_of_col
    inter = _interleaved((xr[i], orow[i]), (xr[j], orow[j]))
    if inter != want_interleaved:
        reason = "segments interleave" if inter else "segments do not interleave"
        raise IllegalMove(i, reason)
    swap = {i: j, j: i}
    x = [swap.get(c, c) for c in d.x_col]
    o = [swap.get(c, c) for c in d.o_col]
    return _rebuild(d, x, o, _axis_row(d))


def column_commutation(d: GridDiagram, i: int, allow_axis: bool = False) -> GridDiagram:
    """Swap columns ``i`` and ``i+1`` when their segments are nested or disjoint."""
    return _column_swap(d, i, allow_axis, want_interleaved=False)


def row_commutation(d: GridDiagram, i: int, allow_axis: bool = False) -> GridDiagram:
    return reflect_diagonal(column_commutation(reflect_diagonal(d), i, allow_axis))


def crossing_change(d: GridDiagram, i: int, allow_axis: bool = False) -> GridDiagram:
    """Swap adjacent columns whose segments interleave; switches one crossing."""
    return _column_swap(d, i, allow_axis, want_interleaved=True)


def stabilize(d: GridDiagram, row: int, kind: str = "X", empty: str = "SW",
              allow_axis: bool = False) -> GridDiagram:
    """Replace the ``kind`` marking of ``row`` by a 2x2 block.

    The block holds two markings of type ``kind`` on one diagonal and one
    of the other type on the other diagonal; ``empty`` names the corner
    left blank.  The original row and column are split into a lower/upper
    row and a left/right column.
    """
    n = d.n
    if kind not in ("X", "O") or empty not in ("NE", "NW", "SE", "SW"):
        raise IllegalMove((row, kind, empty), "unknown stabilization type")
    if not 0 <= row < n:
        raise IllegalMove(row, "row out of range")
    if not allow_axis and d.axis is not None and d.comp_of_row[row] == d.axis:
        raise AxisTouched(f"row {row} belongs to the axis")
    col = d.x_col[row] if kind == "X" else d.o_col[row]
    same = list(d.x_col) if kind == "X" else list(d.o_col)
    other = list(d.o_col) if kind == "X" else list(d.x_col)
    # the marking of the other type sits at the corner diagonally opposite the empty one
    opp = {"SW": "NE", "NE": "SW", "NW": "SE", "SE": "NW"}[empty]
    oy = 1 if opp[0] == "N" else 0
    ox = 1 if opp[1] == "E" else 0

    def shift_col(c):
        return c + 1 if c > col else c

    new_same = [0] * (n + 1)
    new_other = [0] * (n + 1)
    for r in range(n):
        nr = r if r < row else r + 1
        if r == row:
            continue
        new_same[nr] = shift_col(same[r])
        new_other[nr] = shift_col(other[r])
    new_other[row + oy] = col + ox
    new_same[row + oy] = col + (1 - ox)
    new_same[row + (1 - oy)] = col + ox
    # the row without an other-type marking inherits the old row's one
    new_other[row + (1 - oy)] = shift_col(other[row])
    # the column without one inherits the old column's other-type marking
    for r in range(n + 1):
        if r not in (row, row + 1) and new_other[r] == col:
            new_other[r] = col + (1 - ox)
    x, o = (new_same, new_other) if kind == "X" else (new_other, new_same)
    ar = _axis_row(d)
    if ar is not None and ar > row:
        ar += 1
    return _rebuild(d, x, o, ar)


def stabilize_xsw(d: GridDiagram, row: int, allow_axis: bool = False) -> GridDiagram:
    """X-type stabilization leaving the south-west cell of the block empty."""
    return stabilize(d, row, "X", "SW", allow_axis)


def destabilize(d: GridDiagram, cell, allow_axis: bool = False) -> GridDiagram:
    """Undo a stabilization whose 2x2 block has lower-left cell ``cell = (col, row)``."""
    c, r = cell
    n = d.n
    if n <= 2:
        raise IllegalMove(cell, "grid too small to destabilize")
    if not (0 <= c < n - 1 and 0 <= r < n - 1):
        raise IllegalMove(cell, "block must lie inside the grid")
    marks = {}
    for rr in (r, r + 1):
        for kind, cols in (("X", d.x_col), ("O", d.o_col)):
            if cols[rr] in (c, c + 1):
                marks[(cols[rr], rr)] = kind
    if len(marks) != 3:
        raise IllegalMove(cell, f"block holds {len(marks)} markings, need 3")
    full_rows = [rr for rr in (r, r + 1) if d.x_col[rr] in (c, c + 1) and d.o_col[rr] in (c, c + 1)]
    x_row, o_row = d.x_row_of_col, d.o_row_of_col
    full_cols = [cc for cc in (c, c + 1) if x_row[cc] in (r, r + 1) and o_row[cc] in (r, r + 1)]
    if len(full_rows) != 1 or len(full_cols) != 1:
        raise IllegalMove(cell, "block is not a stabilization block")
    R, C = full_rows[0], full_cols[0]
    shared = marks.get((C, R))
    if shared is None:
        raise IllegalMove(cell, "block is not a stabilization block")
    keep_kind = "O" if shared == "X" else "X"
    keep_row = r + r + 1 - R
    keep_col = c + c + 1 - C
    if not allow_axis and d.axis is not None and d.comp_of_row[R] == d.axis:
        raise AxisTouched(f"block at {cell} lies on the axis")
    x = list(d.x_col)
    o = list(d.o_col)
    if keep_kind == "X":
        x[keep_row] = keep_col
    else:
        o[keep_row] = keep_col

    def drop(c0):
        return c0 - 1 if c0 > C else c0

    x = [drop(v) for i, v in enumerate(x) if i != R]
    o = [drop(v) for i, v in enumerate(o) if i != R]
    ar = _axis_row(d)
    if ar is not None:
        if ar == R:
            ar = keep_row
        ar = ar - 1 if ar > R else ar
    return _rebuild(d, x, o, ar)


def transform(d: GridDiagram, move: str, site=None, allow_axis: bool = False) -> GridDiagram:
    """Dispatch a named move; see the individual functions for semantics."""
    if move == "mirror_horizontal":
        return mirror_horizontal(d)
    if move == "reflect_diagonal":
        return reflect_diagonal(d)
    if move == "cyclic":
        return cyclic(d, site)
    if move == "column_commutation":
        return column_commutation(d, site, allow_axis)
    if move == "row_commutation":
        return row_commutation(d, site, allow_axis)
    if move == "stabilize_XSW":
        return stabilize_xsw(d, site, allow_axis)
    if move == "destabilize":
        return destabilize(d, site, allow_axis)
    if move == "crossing_change":
        return crossing_change(d, site, allow_axis)
    raise IllegalMove(site, f"unknown move {move!r}")


# ---------------------------------------------------------------------------
# braid closures


def from_braid(word, strands: int = None, axis_orientation: int = 1, absorb: bool = True,
               split=None) -> GridDiagram:
    """Grid of the axis together with the closure of a braid word.

    ``word`` is a :class:`~annular_floer.braids.BraidWord` or text such as
    ``"1 -2 1"`` (then ``strands`` is required).  ``axis_orientation=+1``
    makes every strand link the axis positively.
    """
    from .braids import BraidWord, parse_word
    from .layout import braid_grid_data

    if not isinstance(word, BraidWord):
        word = parse_word(word, strands)
    n, x, o, axis_row, _ = braid_grid_data(word, axis_orientation, absorb, split)
    comp = component_rows(n, x, o)
    return validate(n, x, o, comp[axis_row])
