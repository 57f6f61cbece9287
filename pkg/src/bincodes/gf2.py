"""Bit-packed exact linear algebra over GF(2).

Vectors and matrices are backed by Python integers used as bitsets:
bit ``i`` of the payload is coordinate ``i``.  All operations are exact,
allocate fresh objects and never mutate their inputs, so values can be
shared freely across threads.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple


class BitVector:
    """Immutable vector over GF(2) of fixed length."""

    __slots__ = ("n", "bits")

    def __init__(self, n: int, bits: int = 0):
        if n < 0:
            raise ValueError("length must be nonnegative")
        if bits < 0 or bits >> n:
            raise ValueError("payload has bits outside the declared length")
        self.n = n
        self.bits = bits

    @classmethod
    def from_bits(cls, values: Iterable[int]) -> "BitVector":
        bits = 0
        n = 0
        for v in values:
            if v not in (0, 1):
                raise ValueError("entries must be 0 or 1")
            bits |= v << n
            n += 1
        return cls(n, bits)

    @classmethod
    def from_support(cls, n: int, support: Iterable[int]) -> "BitVector":
        bits = 0
        for i in support:
            if not 0 <= i < n:
                raise ValueError(f"support index {i} outside [0, {n})")
            bits |= 1 << i
        return cls(n, bits)

    @classmethod
    def ones(cls, n: int) -> "BitVector":
        return cls(n, (1 << n) - 1)

    def weight(self) -> int:
        """Number of set bits."""
        return self.bits.bit_count()

    def bit(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(f"index {i} outside [0, {self.n})")
        return (self.bits >> i) & 1

    def support(self) -> List[int]:
        """Sorted indices of the set bits."""
        out = []
        b = self.bits
        while b:
            lsb = b & -b
            out.append(lsb.bit_length() - 1)
            b ^= lsb
        return out

    def dot(self, other: "BitVector") -> int:
        """Inner product over GF(2)."""
        if self.n != other.n:
            raise ValueError("length mismatch in dot product")
        return (self.bits & other.bits).bit_count() & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.n != other.n:
            raise ValueError("length mismatch in xor")
        return BitVector(self.n, self.bits ^ other.bits)

    def __and__(self, other: "BitVector") -> "BitVector":
        if self.n != other.n:
            raise ValueError("length mismatch in and")
        return BitVector(self.n, self.bits & other.bits)

    def concat(self, other: "BitVector") -> "BitVector":
        return BitVector(self.n + other.n, self.bits | (other.bits << self.n))

    def take(self, n: int) -> "BitVector":
        """First n coordinates."""
        if not 0 <= n <= self.n:
            raise ValueError("bad prefix length")
        return BitVector(n, self.bits & ((1 << n) - 1))

    def delete(self, i: int) -> "BitVector":
        """Vector with coordinate i removed."""
        if not 0 <= i < self.n:
            raise IndexError(f"index {i} outside [0, {self.n})")
        low = self.bits & ((1 << i) - 1)
        high = self.bits >> (i + 1)
        return BitVector(self.n - 1, low | (high << i))

    def to01(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.n))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitVector)
            and self.n == other.n
            and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((self.n, self.bits))

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        if self.n <= 40:
            return f"BitVector({self.to01()!r})"
        return f"BitVector(n={self.n}, weight={self.weight()})"


class BitMatrix:
    """Immutable dense matrix over GF(2), rows stored as bitsets."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, ncols: int, rows: Iterable[int]):
        rows = tuple(rows)
        if ncols < 0:
            raise ValueError("column count must be nonnegative")
        for r in rows:
            if r < 0 or r >> ncols:
                raise ValueError("row has bits outside the declared width")
        self.ncols = ncols
        self.nrows = len(rows)
        self.rows = rows

    @classmethod
    def from_vectors(cls, vectors: Sequence[BitVector]) -> "BitMatrix":
        if not vectors:
            raise ValueError("need at least one row to infer the width")
        n = vectors[0].n
        for v in vectors:
            if v.n != n:
                raise ValueError("rows of unequal length")
        return cls(n, (v.bits for v in vectors))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, (1 << i for i in range(n)))

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls(ncols, (0,) * nrows)

    def row(self, i: int) -> BitVector:
        return BitVector(self.ncols, self.rows[i])

    def row_vectors(self) -> List[BitVector]:
        return [BitVector(self.ncols, r) for r in self.rows]

    def entry(self, i: int, j: int) -> int:
        if not 0 <= j < self.ncols:
            raise IndexError(f"column {j} outside [0, {self.ncols})")
        return (self.rows[i] >> j) & 1

    def transpose(self) -> "BitMatrix":
        cols = [0] * self.ncols
        for i, row in enumerate(self.rows):
            bit = 1 << i
            while row:
                lsb = row & -row
                cols[lsb.bit_length() - 1] |= bit
                row ^= lsb
        return BitMatrix(self.nrows, cols)

    def stack(self, other: "BitMatrix") -> "BitMatrix":
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch in stack")
        return BitMatrix(self.ncols, self.rows + other.rows)

    def append_column(self, column: BitVector) -> "BitMatrix":
        """Matrix with one extra column on the right."""
        if column.n != self.nrows:
            raise ValueError("column length must equal the row count")
        extra = 1 << self.ncols
        return BitMatrix(
            self.ncols + 1,
            (r | (extra if (column.bits >> i) & 1 else 0) for i, r in enumerate(self.rows)),
        )

    def mat_vec(self, x: BitVector) -> BitVector:
        """Product m * x^T as a column, returned as a BitVector of length nrows."""
        if x.n != self.ncols:
            raise ValueError(f"vector length {x.n} != column count {self.ncols}")
        out = 0
        for i, r in enumerate(self.rows):
            out |= ((r & x.bits).bit_count() & 1) << i
        return BitVector(self.nrows, out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.ncols, self.rows))

    def __repr__(self) -> str:
        return f"BitMatrix({self.nrows}x{self.ncols})"

    def to01(self) -> str:
        return "\n".join(self.row(i).to01() for i in range(self.nrows))


def rref(m: BitMatrix) -> Tuple[BitMatrix, List[int]]:
    """Reduced row echelon form and the strictly increasing pivot columns.

    Row space is preserved; zero rows are kept at the bottom.
    """
    rows = list(m.rows)
    pivots: List[int] = []
    r = 0
    for c in range(m.ncols):
        bit = 1 << c
        pivot = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return BitMatrix(m.ncols, rows), pivots


def rank(m: BitMatrix) -> int:
    """Dimension of the row space."""
    # Eliminating on the transpose is much cheaper for very tall matrices:
    # the rank is invariant and the work is O(min(r, c)) big-int row ops.
    if m.nrows > 4 * m.ncols and m.nrows > 512:
        m = m.transpose()
    return _rank_ints(m.rows)


def _rank_ints(rows: Iterable[int]) -> int:
    """Rank of rows given as ints, by incremental elimination on lowest set bits."""
    pivots: dict[int, int] = {}
    count = 0
    for row in rows:
        while row:
            low = row & -row
            other = pivots.get(low)
            if other is None:
                pivots[low] = row
                count += 1
                break
            row ^= other
    return count


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Exact GF(2) matrix product."""
    if a.ncols != b.nrows:
        raise ValueError(f"inner dimensions differ: {a.ncols} != {b.nrows}")
    out = []
    for row in a.rows:
        acc = 0
        r = row
        while r:
            lsb = r & -r
            acc ^= b.rows[lsb.bit_length() - 1]
            r ^= lsb
        out.append(acc)
    return BitMatrix(b.ncols, out)


def solve(m: BitMatrix, rhs: BitVector) -> Optional[BitVector]:
    """One solution x of m * x^T = rhs^T, or None when the system is inconsistent.

    The returned witness is re-multiplied against m before being handed back.
    """
    if rhs.n != m.nrows:
        raise ValueError(f"rhs length {rhs.n} != row count {m.nrows}")
    # Keep only independent augmented rows; redundant equations either agree
    # (reduce to zero) or expose an inconsistency (zero row, nonzero rhs bit).
    width = m.ncols
    flag = 1 << width
    basis: dict[int, int] = {}
    for i, row in enumerate(m.rows):
        aug = row | (flag if (rhs.bits >> i) & 1 else 0)
        while aug & (flag - 1):
            low = aug & -aug
            other = basis.get(low)
            if other is None:
                basis[low] = aug
                break
            aug ^= other
        else:
            if aug:  # 0 = 1
                return None
    # Back substitution on the small reduced system.
    reduced = sorted(basis.values(), key=lambda x: x & -x)
    x = 0
    for aug in reversed(reduced):
        pivot = aug & -aug
        coeffs = aug & ~pivot & (flag - 1)
        val = ((aug & flag) != 0) ^ ((coeffs & x).bit_count() & 1)
        if val:
            x |= pivot
    witness = BitVector(width, x)
    if m.mat_vec(witness) != rhs:
        raise AssertionError("solver produced a non-solution")  # pragma: no cover
    return witness


def null_space(m: BitMatrix) -> BitMatrix:
    """Basis of {x : m * x^T = 0}, one row per basis vector.

    The row count always equals ncols - rank(m); for a full-rank square
    matrix the result has zero rows.
    """
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.ncols) if c not in pivot_set]
    basis = []
    for f in free:
        vec = 1 << f
        fbit = 1 << f
        for r, c in enumerate(pivots):
            if reduced.rows[r] & fbit:
                vec |= 1 << c
        basis.append(vec)
    return BitMatrix(m.ncols, basis)


def systematic_form(
    m: BitMatrix, column_order: Optional[Sequence[int]] = None
) -> Tuple[BitMatrix, List[int]]:
    """Row-reduce m picking pivots greedily in the given column order.

    Returns the reduced matrix together with the pivot columns in the order
    they were chosen; this records the column permutation needed to map a
    systematic message back to original coordinates.  With the default order
    this is plain rref.
    """
    if column_order is None:
        column_order = range(m.ncols)
    rows = list(m.rows)
    pivots: List[int] = []
    r = 0
    for c in column_order:
        if not 0 <= c < m.ncols:
            raise ValueError(f"column {c} outside [0, {m.ncols})")
        bit = 1 << c
        pivot = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return BitMatrix(m.ncols, rows), pivots
