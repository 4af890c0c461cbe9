"""Rectilinear layout of a closed braid together with its axis.

Picture the axis as a large rectangle whose lower-left corner ``P`` sits
at the origin.  The closed braid winds around ``P`` counter-clockwise:

* bottom transition (below everything): strands run rightwards from the
  left half-plane to the right half-plane;
* right half-plane: strands run upwards, crossing over the axis' bottom
  edge; each letter placed here is one horizontal *jog*;
* top transition: strands run leftwards, passing under the axis' left
  edge;
* left half-plane: strands run downwards, with more jogs.

Radial position 1 is the strand nearest ``P``.  A jog moving the outer
strand of a pair inwards is a positive crossing, moving the inner strand
outwards a negative one, in either half-plane.  The two transitions can
each realise a braid whose letters share one sign and in which no two
strands cross twice, at no extra cost: only the heights of the transition
segments change.  Every other letter costs one grid row and one column,
so the grid has size ``2N + 2 + #jogs``.

The finished polygon is turned into a grid by ranking x- and
y-coordinates; every vertical segment starts at an X and ends at an O.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .braids import BraidWord, is_permutation_braid, letters_permutation


@dataclass(frozen=True)
class Split:
    """A conjugate ``bottom * right * top * left`` of the word."""

    rotation: int
    bottom: tuple
    right: tuple
    top: tuple
    left: tuple

    @property
    def jogs(self) -> int:
        return len(self.right) + len(self.left)


def best_split(letters: Sequence[int], strands: int, absorb: bool = True) -> Split:
    """Choose a cyclic rotation and cut that absorbs the most letters.

    Brute force over rotations and cut points; ties go to the earliest
    rotation and cut so the result is deterministic.  Negative letters are
    never jogged in the right half: there the jog adds a zigzag that lowers
    the self-linking number of the grid's Legendrian by two, so ``x+`` would
    stop representing the transverse closure.  Left-half jogs of either
    sign are harmless.
    """
    letters = tuple(letters)
    L = len(letters)
    if not absorb or L == 0:
        return Split(0, (), (), (), letters)
    best = None
    best_key = None
    for r in range(L):
        w = letters[r:] + letters[:r]
        for a in range(L + 1):
            if not is_permutation_braid(w[:a], strands):
                break
            for b in range(a, L + 1):
                if any(g < 0 for g in w[a:b]):
                    break
                for c in range(L, b - 1, -1):
                    if is_permutation_braid(w[b:c], strands):
                        key = a + (c - b)
                        if best_key is None or key > best_key:
                            best_key = key
                            best = Split(r, w[:a], w[a:b], w[b:c], w[c:])
                        break
        if best_key == L:
            break
    return best


class _Lane:
    def __init__(self):
        self.vertices = []


def _fresh(lo: Fraction, hi: Fraction, used: set) -> Fraction:
    """An unused rational strictly between ``lo`` and ``hi``."""
    v = (lo + hi) / 2
    while v in used:
        v = (v + hi) / 2
    used.add(v)
    return v


def _jog(xs: list, lanes: list, letter: int, side: int, lane_vertices, row, used):
    """Apply one letter as a jog at height ``row``.

    ``xs[p]`` is the x-coordinate of radial position ``p`` (0-based) and
    ``lanes[p]`` the lane occupying it.  ``side`` is +1 for the right half
    (x increases outwards) and -1 for the left half.
    """
    i = abs(letter) - 1
    n = len(xs)
    if letter > 0:
        mover = i + 1
        inner_bound = xs[i - 1] if i > 0 else Fraction(0)
        new_x = _fresh(xs[i], inner_bound, used)
    else:
        mover = i
        if i + 2 < n:
            outer_bound = xs[i + 2]
        else:
            outer_bound = xs[i + 1] + side
        new_x = _fresh(xs[i + 1], outer_bound, used)
    lane = lanes[mover]
    lane_vertices[lane].append((xs[mover], row))
    lane_vertices[lane].append((new_x, row))
    xs[mover] = new_x
    xs[i], xs[i + 1] = xs[i + 1], xs[i]
    lanes[i], lanes[i + 1] = lanes[i + 1], lanes[i]


def braid_polygons(word: BraidWord, absorb: bool = True, split: Split = None):
    """Closed rectilinear polygons (vertex lists) of the braid closure.

    Returns ``(strand_polygons, split)``; the axis is added separately.
    """
    N = word.strands
    if split is None:
        split = best_split(word.letters, N, absorb)
    rho = letters_permutation(split.bottom, N)
    pi = letters_permutation(split.top, N)
    k_right, k_left = len(split.right), len(split.left)
    used = set()

    # lanes are indexed by their left-half position at the bottom transition
    verts = [[] for _ in range(N)]
    right_x = [Fraction(p + 1) for p in range(N)]
    left_start_x = [Fraction(-(p + 1)) for p in range(N)]
    used.update(right_x)
    used.update(left_start_x)

    # bottom heights (the left-half final x is filled in after the left jogs)
    bottom_sign = 1 if not split.bottom or split.bottom[0] > 0 else -1
    y_bottom = [0] * N
    for k in range(N):
        rank = rho[k] if bottom_sign > 0 else k
        y_bottom[k] = Fraction(-(k_left + 1 + rank))

    right_lanes = [0] * N
    for k in range(N):
        right_lanes[rho[k]] = k
        verts[k].append(None)  # placeholder for the left-half end point
        verts[k].append((right_x[rho[k]], y_bottom[k]))

    for j, g in enumerate(split.right):
        _jog(right_x, right_lanes, g, +1, verts, Fraction(j + 1), used)

    top_sign = 1 if not split.top or split.top[0] > 0 else -1
    left_x = list(left_start_x)
    left_lanes = [0] * N
    for p in range(N):
        lane = right_lanes[p]
        target = pi[p]
        rank = target if top_sign > 0 else p
        y_top = Fraction(k_right + 1 + rank)
        verts[lane].append((right_x[p], y_top))
        verts[lane].append((left_x[target], y_top))
        left_lanes[target] = lane

    for j, g in enumerate(split.left):
        _jog(left_x, left_lanes, g, -1, verts, Fraction(-(j + 1)), used)

    # close up: the lane at final left position p continues as lane p
    successor = [0] * N
    for p in range(N):
        lane = left_lanes[p]
        successor[lane] = p
        verts[p][0] = (left_x[p], y_bottom[p])

    polygons = []
    seen = [False] * N
    for start in range(N):
        if seen[start]:
            continue
        poly = []
        k = start
        while not seen[k]:
            seen[k] = True
            poly.extend(verts[k])
            k = successor[k]
        polygons.append(poly)
    return polygons, split


def axis_polygon(polys, orientation: int):
    """Axis rectangle with lower-left corner at the origin.

    ``orientation=-1`` traverses it counter-clockwise, which makes each
    strand link it negatively with the crossing conventions used here.
    """
    xmax = max(x for poly in polys for x, _ in poly) + 1
    ymax = max(y for poly in polys for _, y in poly) + 1
    ccw = [(Fraction(0), Fraction(0)), (xmax, Fraction(0)), (xmax, ymax), (Fraction(0), ymax)]
    return ccw if orientation < 0 else list(reversed(ccw))


def polygons_to_grid(polys):
    """Rank-compress rectilinear polygons into X/O column lists.

    Each polygon must alternate horizontal and vertical edges and all
    vertical (horizontal) edges must have distinct x (y) coordinates.
    Returns ``(n, x_col, o_col, first_row_of_each_polygon)``.
    """
    verticals = []  # (x, y_start, y_end)
    for poly in polys:
        m = len(poly)
        for i in range(m):
            (x0, y0), (x1, y1) = poly[i], poly[(i + 1) % m]
            if x0 == x1 and y0 != y1:
                verticals.append((x0, y0, y1))
            elif y0 == y1 and x0 != x1:
                continue
            else:
                raise ValueError(f"degenerate edge {poly[i]} -> {poly[(i + 1) % m]}")
    xs = sorted({v[0] for v in verticals})
    if len(xs) != len(verticals):
        raise ValueError("two vertical edges share an x-coordinate")
    ys = sorted({y for poly in polys for _, y in poly})
    n = len(xs)
    if len(ys) != n:
        raise ValueError("horizontal edges do not have distinct heights")
    col = {x: i for i, x in enumerate(xs)}
    row = {y: i for i, y in enumerate(ys)}
    x_col = [None] * n
    o_col = [None] * n
    for x, y0, y1 in verticals:
        x_col[row[y0]] = col[x]
        o_col[row[y1]] = col[x]
    if None in x_col or None in o_col:
        raise ValueError("layout does not give one X and one O per row")
    first_rows = [row[poly[0][1]] for poly in polys]
    return n, x_col, o_col, first_rows


def braid_grid_data(word: BraidWord, axis_orientation: int = -1, absorb: bool = True,
                    split: Split = None):
    """Grid columns for the axis plus the closure of ``word``.

    Returns ``(n, x_col, o_col, axis_row, split)``.
    """
    polys, split = braid_polygons(word, absorb, split)
    axis = axis_polygon(polys, axis_orientation)
    n, x_col, o_col, first_rows = polygons_to_grid([axis] + polys)
    return n, x_col, o_col, first_rows[0], split
