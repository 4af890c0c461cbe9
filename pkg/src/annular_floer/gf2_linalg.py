"""Linear algebra over the two-element field.

Vectors are Python ints used as bitsets (bit ``i`` set means coordinate
``i`` is one).  Python's arbitrary-precision integers give machine-word
packed XOR for free, which is all elimination needs.  Pivots are always
the lowest set bit, so every run is reproducible bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch


def lowest_bit(v: int) -> int:
    return (v & -v).bit_length() - 1


def bits(v: int):
    """Indices of the set bits of ``v`` in increasing order."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def from_indices(idx: Iterable[int]) -> int:
    v = 0
    for i in idx:
        v ^= 1 << int(i)
    return v


@dataclass(frozen=True)
class SparseMatrixGF2:
    """Column-major matrix: ``columns[j]`` is the bitset of column ``j``."""

    rows: int
    cols: int
    columns: tuple

    def __post_init__(self):
        if len(self.columns) != self.cols:
            raise DimensionMismatch(f"{len(self.columns)} columns stored, {self.cols} declared")
        bound = 1 << self.rows
        for c in self.columns:
            if c < 0 or c >= bound:
                raise DimensionMismatch("column has an entry outside the row range")

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[tuple]) -> "SparseMatrixGF2":
        """Build from ``(row, col)`` pairs; repeated pairs cancel mod 2."""
        data = [0] * cols
        for r, c in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise DimensionMismatch(f"entry ({r}, {c}) outside {rows}x{cols}")
            data[c] ^= 1 << r
        return cls(rows, cols, tuple(data))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "SparseMatrixGF2":
        return cls(rows, cols, (0,) * cols)

    @classmethod
    def identity(cls, k: int) -> "SparseMatrixGF2":
        return cls(k, k, tuple(1 << i for i in range(k)))

    def entries(self):
        for j, col in enumerate(self.columns):
            for i in bits(col):
                yield i, j

    def nnz(self) -> int:
        return sum(bin(c).count("1") for c in self.columns)

    def apply(self, v: int) -> int:
        """Matrix times the column vector ``v`` (a bitset over columns)."""
        out = 0
        for j in bits(v):
            out ^= self.columns[j]
        return out

    def __matmul__(self, other: "SparseMatrixGF2") -> "SparseMatrixGF2":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        return SparseMatrixGF2(self.rows, other.cols, tuple(self.apply(c) for c in other.columns))

    def is_zero(self) -> bool:
        return not any(self.columns)

    def transpose(self) -> "SparseMatrixGF2":
        rows_out = [0] * self.rows
        for j, col in enumerate(self.columns):
            for i in bits(col):
                rows_out[i] |= 1 << j
        return SparseMatrixGF2(self.cols, self.rows, tuple(rows_out))

    def with_entry_flipped(self, row: int, col: int) -> "SparseMatrixGF2":
        data = list(self.columns)
        data[col] ^= 1 << row
        return SparseMatrixGF2(self.rows, self.cols, tuple(data))


class IncrementalEliminator:
    """Growing basis in echelon form keyed by lowest set bit.

    Each stored vector may carry a *tag*, an int combined by XOR exactly
    like the vectors are.  Tags track which absorbed inputs a reduced
    vector is made of (as a bitset), or a single linear functional's value
    (as 0/1).
    """

    def __init__(self, dim: Optional[int] = None):
        self.dim = dim
        self.pivots = {}  # pivot bit -> (vector, tag)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _check(self, v: int):
        if v < 0 or (self.dim is not None and v >> self.dim):
            raise DimensionMismatch(f"vector has entries beyond dimension {self.dim}")

    def reduce(self, v: int, tag: int = 0):
        """Reduce until the lowest bit is not a pivot; returns ``(residual, tag)``.

        The residual is zero exactly when ``v`` lies in the span.
        """
        self._check(v)
        piv = self.pivots
        while v:
            p = (v & -v).bit_length() - 1
            hit = piv.get(p)
            if hit is None:
                break
            v ^= hit[0]
            tag ^= hit[1]
        return v, tag

    def membership(self, v: int):
        """``(True, 0)`` if ``v`` is in the span, else ``(False, residual)``."""
        res, _ = self.reduce(v)
        return (res == 0), res

    def absorb(self, v: int, tag: int = 0):
        """Add ``v``.  Returns ``(grew, residual, tag)``; when the rank did not
        grow the residual is zero and ``tag`` is the combination found."""
        res, tag = self.reduce(v, tag)
        if res:
            self.pivots[(res & -res).bit_length() - 1] = (res, tag)
            return True, res, tag
        return False, 0, tag

    def normal_form(self, v: int) -> int:
        """The unique vector of ``v + span`` with no pivot bit set.

        This map is linear and kills the span, so any bit of it is a linear
        functional vanishing on the stored subspace.
        """
        self._check(v)
        piv = self.pivots
        out = 0
        while v:
            low = v & -v
            p = low.bit_length() - 1
            hit = piv.get(p)
            if hit is None:
                out |= low
                v ^= low
            else:
                v ^= hit[0]
        return out

    def basis(self):
        return [vec for vec, _ in self.pivots.values()]


def rank(m: SparseMatrixGF2) -> int:
    e = IncrementalEliminator(m.rows)
    for c in m.columns:
        e.absorb(c)
    return e.rank


def dense_rank(rows_as_ints: Sequence[int]) -> int:
    """Plain Gaussian elimination on row bitsets (used as an oracle)."""
    rows = [r for r in rows_as_ints if r]
    rank_ = 0
    while rows:
        pivot = rows.pop()
        if not pivot:
            continue
        rank_ += 1
        top = pivot.bit_length() - 1
        rows = [r ^ pivot if (r >> top) & 1 else r for r in rows]
        rows = [r for r in rows if r]
    return rank_


def kernel_basis(m: SparseMatrixGF2):
    """Basis of the kernel as bitsets over the columns of ``m``."""
    e = IncrementalEliminator(m.rows)
    out = []
    for j, col in enumerate(m.columns):
        grew, _, tag = e.absorb(col, 1 << j)
        if not grew:
            out.append(tag)
    return out
