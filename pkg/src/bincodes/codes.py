"""Binary linear codes: constructions, predicates and generator-matrix I/O."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import IO, List, Optional, Tuple, Union

from .gf2 import BitMatrix, BitVector, rref, systematic_form


class GeneratorFormatError(ValueError):
    """Malformed generator-matrix file."""


@dataclass(frozen=True)
class SystematicForm:
    """A row-reduced generator together with its information set.

    pivots lists the information columns in the order they were chosen;
    overlap counts how many of them were borrowed from earlier information
    sets when several disjoint sets are requested (the rank deficiency of
    this set's own column block).
    """

    rows: Tuple[int, ...]
    pivots: Tuple[int, ...]
    overlap: int


class LinearCode:
    """A [n, k] binary linear code held as a full-rank generator matrix.

    Immutable after construction; the disjoint-information-set systematic
    forms used by codeword enumeration are precomputed here so a shared
    instance never mutates.
    """

    def __init__(self, generator: BitMatrix):
        if generator.nrows == 0:
            raise ValueError("a code needs at least one generator row")
        reduced, pivots = rref(generator)
        if len(pivots) != generator.nrows:
            raise ValueError(
                f"generator rows are dependent (rank {len(pivots)}"
                f" < {generator.nrows}); reduce with from_span first"
            )
        self.n = generator.ncols
        self.k = generator.nrows
        self.generator = generator
        self._pivot_rows = {1 << c: reduced.rows[i] for i, c in enumerate(pivots)}
        self.systematic_forms = self._build_systematic_forms()

    def _build_systematic_forms(self) -> List[SystematicForm]:
        """Greedy disjoint information sets covering as many columns as possible."""
        forms: List[SystematicForm] = []
        used: set[int] = set()
        while True:
            order = [c for c in range(self.n) if c not in used] + sorted(used)
            reduced, pivots = systematic_form(self.generator, order)
            new = [c for c in pivots if c not in used]
            if not new:
                break
            forms.append(
                SystematicForm(reduced.rows[: self.k], tuple(pivots), self.k - len(new))
            )
            used.update(new)
            if len(used) >= self.n:
                break
        return forms

    def contains(self, v: BitVector) -> bool:
        if v.n != self.n:
            raise ValueError("length mismatch")
        bits = v.bits
        while bits:
            row = self._pivot_rows.get(bits & -bits)
            if row is None:
                return False
            bits ^= row
        return True

    def __repr__(self) -> str:
        return f"LinearCode[{self.n},{self.k}]"


def _row_basis(rows) -> List[int]:
    """Independent rows spanning the same space, keyed by lowest set bit."""
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            low = row & -row
            other = pivots.get(low)
            if other is None:
                pivots[low] = row
                break
            row ^= other
    return [pivots[key] for key in sorted(pivots)]


def from_span(rows: BitMatrix) -> LinearCode:
    """The code spanned by the given rows; the generator is the rref basis."""
    basis = _row_basis(rows.rows)
    if not basis:
        raise ValueError("cannot span a code from all-zero rows")
    reduced, _ = rref(BitMatrix(rows.ncols, basis))
    return LinearCode(BitMatrix(rows.ncols, reduced.rows[: len(basis)]))


def reed_muller(r: int, m: int) -> LinearCode:
    """Reed-Muller code R(r,m) of length 2^m.

    Generator rows are evaluation vectors of the monomials of degree <= r
    over all points of F_2^m in integer order; monomials are listed in
    graded lexicographic order so the matrix is reproducible.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    if not 0 <= r <= m:
        raise ValueError(f"order must satisfy 0 <= r <= m, got r={r}, m={m}")
    n = 1 << m
    rows = []
    for degree in range(r + 1):
        for monomial in itertools.combinations(range(m), degree):
            mask = 0
            for var in monomial:
                mask |= 1 << var
            bits = 0
            for point in range(n):
                if point & mask == mask:
                    bits |= 1 << point
            rows.append(bits)
    assert len(rows) == sum(comb(m, i) for i in range(r + 1))
    return LinearCode(BitMatrix(n, rows))


def extend(c: LinearCode) -> LinearCode:
    """Append an overall parity coordinate (each generator row made even)."""
    parity = BitVector(
        c.k, sum((row.bit_count() & 1) << i for i, row in enumerate(c.generator.rows))
    )
    return LinearCode(c.generator.append_column(parity))


def puncture(c: LinearCode, position: int) -> LinearCode:
    """Delete one coordinate; the dimension may drop by one."""
    if not 0 <= position < c.n:
        raise ValueError(f"position {position} outside [0, {c.n})")
    low = (1 << position) - 1
    rows = [(r & low) | ((r >> (position + 1)) << position) for r in c.generator.rows]
    return from_span(BitMatrix(c.n - 1, rows))


def dual(c: LinearCode) -> LinearCode:
    """The dual code of dimension n - k."""
    if c.k >= c.n:
        raise ValueError("the dual of the full space is the zero code")
    from .gf2 import null_space

    basis = null_space(c.generator)
    reduced, _ = rref(basis)
    return LinearCode(BitMatrix(c.n, reduced.rows[: basis.nrows]))


def is_self_dual(c: LinearCode) -> bool:
    """n = 2k and all pairwise generator inner products vanish."""
    if c.n != 2 * c.k:
        return False
    rows = c.generator.rows
    return all(
        (rows[i] & rows[j]).bit_count() & 1 == 0
        for i in range(c.k)
        for j in range(i, c.k)
    )


def is_doubly_even(c: LinearCode) -> bool:
    """Every codeword weight divisible by 4.

    Checked via the generator: each row weight must be 0 mod 4 and every
    pairwise row intersection even; together these force the property on
    the whole code.
    """
    rows = c.generator.rows
    if any(r.bit_count() & 3 for r in rows):
        return False
    return all(
        (rows[i] & rows[j]).bit_count() & 1 == 0
        for i in range(c.k)
        for j in range(i + 1, c.k)
    )


def equal_codes(a: LinearCode, b: LinearCode) -> bool:
    """Same row space (not mere equivalence up to coordinate permutation)."""
    if a.n != b.n or a.k != b.k:
        return False
    return all(a.contains(BitVector(b.n, row)) for row in b.generator.rows)


def load_matrix(source: Union[str, IO[str]], name: str = "<stream>") -> BitMatrix:
    """Parse a matrix of '0'/'1' characters, one row per line.

    Whitespace inside a line is ignored, blank lines are skipped.  Raises
    GeneratorFormatError with the offending position for ragged rows, foreign
    characters, or an empty matrix.
    """
    if isinstance(source, str):
        with open(source, "r", encoding="ascii") as handle:
            return load_matrix(handle, name=source)
    rows = []
    width = None
    for lineno, line in enumerate(source, 1):
        bits = 0
        length = 0
        for col, ch in enumerate(line, 1):
            if ch in "01":
                bits |= (ch == "1") << length
                length += 1
            elif not ch.isspace():
                raise GeneratorFormatError(
                    f"{name}:{lineno}:{col}: invalid character {ch!r}"
                )
        if length == 0:
            continue
        if width is None:
            width = length
        elif length != width:
            raise GeneratorFormatError(
                f"{name}:{lineno}: ragged row of length {length}, expected {width}"
            )
        rows.append(bits)
    if width is None:
        raise GeneratorFormatError(f"{name}: no rows found")
    return BitMatrix(width, rows)


def load_generator(source: Union[str, IO[str]]) -> LinearCode:
    """Load a generator matrix; the rows must be linearly independent."""
    return LinearCode(load_matrix(source))


def save_generator(c: LinearCode, stream: IO[str]) -> None:
    """Write the generator matrix as '0'/'1' rows, bit-exact for round-trips."""
    for i in range(c.k):
        stream.write(c.generator.row(i).to01())
        stream.write("\n")
