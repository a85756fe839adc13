"""
GF(2) linear algebra
Matrices over GF(2) with rows packed into Python integers (bit c of a row is
column c). Elimination pivots column by column and takes the lowest-index
row carrying the pivot, so ranks, kernels and solutions are reproducible.
"""
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from topoising.exceptions import InvalidArgument


def bits_to_int(bits: Iterable[int]) -> int:
    value = 0
    for b in bits:
        value |= 1 << int(b)
    return value


def int_to_bits(value: int) -> List[int]:
    out = []
    idx = 0
    while value:
        if value & 1:
            out.append(idx)
        value >>= 1
        idx += 1
    return out


def parity(value: int) -> int:
    return value.bit_count() & 1


@dataclass(frozen=True)
class Gf2Matrix:
    """Binary matrix; `data` holds one packed integer per row."""
    rows: int
    cols: int
    data: Tuple[int, ...]

    def __post_init__(self):
        if len(self.data) != self.rows:
            raise InvalidArgument(f"Gf2Matrix expects {self.rows} rows, got {len(self.data)}")
        limit = 1 << self.cols
        for r, row in enumerate(self.data):
            if row < 0 or row >= limit:
                raise InvalidArgument(f"row {r} has entries beyond column {self.cols - 1}")

    @classmethod
    def from_rows(cls, rows: Sequence[int], cols: int) -> 'Gf2Matrix':
        return cls(len(rows), cols, tuple(int(r) for r in rows))

    @classmethod
    def from_dense(cls, entries: Sequence[Sequence[int]]) -> 'Gf2Matrix':
        entries = [list(row) for row in entries]
        cols = len(entries[0]) if entries else 0
        packed = []
        for row in entries:
            if len(row) != cols:
                raise InvalidArgument("ragged rows in GF(2) matrix")
            packed.append(bits_to_int(c for c, v in enumerate(row) if int(v) % 2))
        return cls(len(packed), cols, tuple(packed))

    @classmethod
    def identity(cls, size: int) -> 'Gf2Matrix':
        return cls(size, size, tuple(1 << i for i in range(size)))

    def to_dense(self) -> List[List[int]]:
        return [[(row >> c) & 1 for c in range(self.cols)] for row in self.data]

    def transpose(self) -> 'Gf2Matrix':
        out = [0] * self.cols
        for r, row in enumerate(self.data):
            for c in int_to_bits(row):
                out[c] |= 1 << r
        return Gf2Matrix(self.cols, self.rows, tuple(out))

    def multiply_vector(self, vector: int) -> int:
        """M·v over GF(2); bit r of the result is row r dotted with v."""
        out = 0
        for r, row in enumerate(self.data):
            if parity(row & vector):
                out |= 1 << r
        return out

    def rref(self, pivot_cols: Optional[int] = None) -> Tuple[List[int], List[int]]:
        """
        Reduced row echelon form.

        Args:
            pivot_cols: pivot only on columns below this index (default: all);
                higher columns are carried along as augmented data.

        Returns:
            (rows, pivots): reduced rows (pivot rows first, in pivot order)
            and the pivot column of each pivot row.
        """
        rows = list(self.data)
        pivots: List[int] = []
        rank = 0
        limit = self.cols if pivot_cols is None else pivot_cols
        for col in range(limit):
            bit = 1 << col
            pivot_row = None
            for r in range(rank, len(rows)):
                if rows[r] & bit:
                    pivot_row = r
                    break
            if pivot_row is None:
                continue
            rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
            for r in range(len(rows)):
                if r != rank and rows[r] & bit:
                    rows[r] ^= rows[rank]
            pivots.append(col)
            rank += 1
        return rows, pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> List[int]:
        """Basis of {v : M·v = 0}, one vector per free column in ascending order."""
        rows, pivots = self.rref()
        pivot_set = set(pivots)
        basis = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            vec = 1 << free
            for i, p in enumerate(pivots):
                if rows[i] >> free & 1:
                    vec |= 1 << p
            basis.append(vec)
        return basis

    def row_space_contains(self, vector: int) -> bool:
        rows, pivots = self.rref()
        for i, p in enumerate(pivots):
            if vector >> p & 1:
                vector ^= rows[i]
        return vector == 0

    def solve(self, rhs: int) -> Optional[int]:
        """
        Particular solution of M·x = rhs.

        Args:
            rhs: packed right-hand side, bit r for row r.

        Returns:
            A packed solution vector, or None when the system is inconsistent.
        """
        aug_bit = 1 << self.cols
        augmented = Gf2Matrix(
            self.rows,
            self.cols + 1,
            tuple(row | (aug_bit if rhs >> r & 1 else 0) for r, row in enumerate(self.data)),
        )
        rows, pivots = augmented.rref(pivot_cols=self.cols)
        for r in range(len(pivots), len(rows)):
            if rows[r] & aug_bit:
                return None
        solution = 0
        for i, p in enumerate(pivots):
            if rows[i] & aug_bit:
                solution |= 1 << p
        return solution

    def independent_rows(self) -> List[int]:
        """Indices of a maximal independent subset of rows, greedy in row order."""
        chosen: List[int] = []
        basis: List[Tuple[int, int]] = []  # (leading bit, reduced row)
        for r, row in enumerate(self.data):
            vec = row
            for lead, brow in basis:
                if vec >> lead & 1:
                    vec ^= brow
            if vec:
                basis.append((vec.bit_length() - 1, vec))
                chosen.append(r)
        return chosen

    def __repr__(self):
        return f'<Gf2Matrix {self.rows}x{self.cols}>'


def gf2_rank(m: Gf2Matrix) -> int:
    return m.rank()


def gf2_nullspace(m: Gf2Matrix) -> List[int]:
    return m.nullspace()


def span_elements(basis: Sequence[int], offset: int = 0) -> List[int]:
    """All 2^k elements of offset + span(basis), built by doubling."""
    elements = [offset]
    for vec in basis:
        elements = elements + [e ^ vec for e in elements]
    return elements
