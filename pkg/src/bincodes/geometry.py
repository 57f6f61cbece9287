"""Finite-geometry designs over GF(2) and their parameter formulas.

Enumerates points and s-subspaces of PG(m,2) and AG(m,2) into incidence
structures, evaluates the classical design parameters for general prime
powers q, and verifies t-design properties by exhaustive counting.

Point ordering is fixed so incidence matrices are reproducible bit for bit:
projective points are the nonzero vectors of F_2^{m+1} in increasing integer
order (vector value p gets point index p - 1), affine points are all vectors
of F_2^m in increasing integer order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import IO, List, Optional, Sequence, Tuple

from .gf2 import BitMatrix, BitVector

MAX_BLOCKS = 10**7
MAX_INCIDENCES = 10**9


class SizeLimitError(Exception):
    """Requested enumeration exceeds the configured size guard."""


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = 2
    n = q
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
        p += 1
    return True  # q itself is prime


@dataclass(frozen=True)
class GeometrySpec:
    """Selects the design PG_s(m,q) or AG_s(m,q)."""

    kind: str  # "projective" or "affine"
    m: int
    s: int
    q: int = 2

    def __post_init__(self):
        if self.kind not in ("projective", "affine"):
            raise ValueError(f"unknown geometry kind {self.kind!r}")
        if not 1 <= self.s <= self.m - 1:
            raise ValueError(f"need 1 <= s <= m-1, got s={self.s}, m={self.m}")
        if not is_prime_power(self.q):
            raise ValueError(f"q must be a prime power >= 2, got {self.q}")


@dataclass(frozen=True)
class DesignParameters:
    v: int
    k: int
    lam: int
    lam3: Optional[int] = None


def gaussian_coefficient(m: int, i: int, q: int) -> int:
    """Number of i-dimensional subspaces of an m-dimensional space over GF(q).

    Returns 0 for i outside [0, m] by convention; exact for any size.
    """
    if q < 2:
        raise ValueError("q must be at least 2")
    if m < 0:
        raise ValueError("m must be nonnegative")
    if i < 0 or i > m:
        return 0
    i = min(i, m - i)  # symmetry keeps the products short
    num = 1
    den = 1
    for t in range(i):
        num *= q ** (m - t) - 1
        den *= q ** (t + 1) - 1
    assert num % den == 0
    return num // den


def design_parameters(spec: GeometrySpec) -> DesignParameters:
    """Exact 2-design parameters of PG_s(m,q) or AG_s(m,q).

    For the affine geometries with q = 2 and s >= 2 the structure is also a
    3-design and the third-order coincidence number is included.
    """
    q, m, s = spec.q, spec.m, spec.s
    lam = gaussian_coefficient(m - 1, s - 1, q)
    if spec.kind == "projective":
        v = (q ** (m + 1) - 1) // (q - 1)
        k = (q ** (s + 1) - 1) // (q - 1)
        return DesignParameters(v, k, lam)
    v = q**m
    k = q**s
    lam3 = gaussian_coefficient(m - 2, s - 2, 2) if (q == 2 and s >= 2) else None
    return DesignParameters(v, k, lam, lam3)


def block_count(spec: GeometrySpec) -> int:
    """Number of blocks of the geometric design."""
    if spec.kind == "projective":
        return gaussian_coefficient(spec.m + 1, spec.s + 1, spec.q)
    return spec.q ** (spec.m - spec.s) * gaussian_coefficient(spec.m, spec.s, spec.q)


class Design:
    """Incidence structure: v points and a list of blocks as bit-sets."""

    def __init__(
        self,
        point_count: int,
        blocks: Sequence[BitVector],
        params: Optional[DesignParameters] = None,
    ):
        if not blocks:
            raise ValueError("a design needs at least one block")
        for b in blocks:
            if b.n != point_count:
                raise ValueError("block length differs from the point count")
        k = blocks[0].weight()
        for b in blocks:
            if b.weight() != k:
                raise ValueError("blocks of unequal size")
        if params is not None and (params.v != point_count or params.k != k):
            raise ValueError("declared parameters disagree with the blocks")
        self.v = point_count
        self.k = k
        self.blocks = list(blocks)
        self.params = params

    @property
    def b(self) -> int:
        return len(self.blocks)

    def incidence_matrix(self) -> BitMatrix:
        """Block-by-point incidence matrix (one row per block)."""
        return BitMatrix(self.v, (blk.bits for blk in self.blocks))

    def point_bitsets(self) -> List[int]:
        """For each point, the set of blocks containing it, as a bitset."""
        return self.incidence_matrix().transpose().rows

    def __repr__(self) -> str:
        return f"Design(v={self.v}, k={self.k}, b={self.b})"


def _rref_bases(n: int, d: int):
    """All d-dimensional subspaces of F_2^n, one canonical RREF basis each.

    Yields tuples of d row bitsets, deterministically ordered: pivot column
    sets in lexicographic order, then free entries in increasing integer
    order.
    """
    for pivots in itertools.combinations(range(n), d):
        pivot_set = set(pivots)
        free_slots = [
            (i, j)
            for i in range(d)
            for j in range(pivots[i] + 1, n)
            if j not in pivot_set
        ]
        base = [1 << c for c in pivots]
        for assign in range(1 << len(free_slots)):
            rows = base.copy()
            g = assign
            idx = 0
            while g:
                if g & 1:
                    i, j = free_slots[idx]
                    rows[i] |= 1 << j
                g >>= 1
                idx += 1
            yield tuple(rows)


def _span_nonzero(basis: Sequence[int]) -> List[int]:
    """All nonzero vectors in the span, by Gray-code accumulation."""
    d = len(basis)
    out = []
    acc = 0
    prev = 0
    for t in range(1, 1 << d):
        g = (t >> 1) ^ t
        acc ^= basis[(g ^ prev).bit_length() - 1]
        prev = g
        out.append(acc)
    return out


def enumerate_subspaces(spec: GeometrySpec) -> Design:
    """The design of points and s-subspaces of PG(m,2) or AG(m,2).

    Only the binary case is built explicitly; general q is rejected rather
    than half-supported.  Block count is guarded at 10^7.
    """
    if spec.q != 2:
        raise ValueError("explicit enumeration is implemented for q = 2 only")
    expected = block_count(spec)
    if expected > MAX_BLOCKS:
        raise SizeLimitError(
            f"{expected} blocks exceed the enumeration guard of {MAX_BLOCKS}"
        )
    params = design_parameters(spec)
    blocks = []
    if spec.kind == "projective":
        n = spec.m + 1
        for basis in _rref_bases(n, spec.s + 1):
            bits = 0
            for member in _span_nonzero(basis):
                bits |= 1 << (member - 1)
            blocks.append(BitVector(params.v, bits))
    else:
        n = spec.m
        for basis in _rref_bases(n, spec.s):
            members = [0] + _span_nonzero(basis)
            member_set = set(members)
            # Each coset once, keyed by its minimal element.
            for rep in range(1 << n):
                if any((rep ^ u) < rep for u in member_set):
                    continue
                bits = 0
                for u in members:
                    bits |= 1 << (rep ^ u)
                blocks.append(BitVector(params.v, bits))
    assert len(blocks) == expected
    return Design(params.v, blocks, params)


@dataclass(frozen=True)
class TDesignCheck:
    """Outcome of a t-design verification.

    lambda_t is set when every t-subset meets the same number of blocks;
    otherwise witness names a t-subset whose count (witness_count) deviates
    from the first subset's count.
    """

    lambda_t: Optional[int]
    witness: Optional[Tuple[int, ...]] = None
    witness_count: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.lambda_t is not None


def verify_t_design(design: Design, t: int) -> TDesignCheck:
    """Exhaustively check whether every t-subset of points lies in equally
    many blocks, returning that count or a deviating witness subset."""
    if t < 1:
        raise ValueError("t must be at least 1")
    if t > design.v:
        raise ValueError("t exceeds the point count")
    incidences = design.b * comb(design.k, t)
    if comb(design.v, t) > MAX_INCIDENCES or incidences > MAX_INCIDENCES:
        raise SizeLimitError(
            f"t-design check needs {incidences} incidences, guard is {MAX_INCIDENCES}"
        )
    points = design.point_bitsets()
    expected: Optional[int] = None
    for subset in itertools.combinations(range(design.v), t):
        acc = points[subset[0]]
        for p in subset[1:]:
            acc &= points[p]
            if not acc:
                break
        count = acc.bit_count()
        if expected is None:
            expected = count
        elif count != expected:
            return TDesignCheck(None, subset, count)
    return TDesignCheck(expected)


def save_design(design: Design, stream: IO[str]) -> None:
    """One block per line: sorted 0-based point indices, space-separated."""
    for blk in design.blocks:
        stream.write(" ".join(str(i) for i in blk.support()))
        stream.write("\n")


def load_design(stream: IO[str], point_count: Optional[int] = None) -> Design:
    """Read the block-per-line format written by save_design.

    The point count is inferred as max index + 1 unless given explicitly.
    """
    supports = []
    top = -1
    for lineno, line in enumerate(stream, 1):
        line = line.strip()
        if not line:
            continue
        try:
            idx = [int(tok) for tok in line.split()]
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        if any(i < 0 for i in idx):
            raise ValueError(f"line {lineno}: negative point index")
        supports.append(idx)
        top = max(top, max(idx))
    if not supports:
        raise ValueError("empty design file")
    v = point_count if point_count is not None else top + 1
    return Design(v, [BitVector.from_support(v, s) for s in supports])
