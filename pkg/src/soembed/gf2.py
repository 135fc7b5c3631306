"""Word-parallel linear algebra over GF(2).

Vectors are packed into Python integers: coordinate ``i`` lives in bit ``i``
(the least significant bit of the lowest word is coordinate 0).  Matrices are
tuples of packed rows.  Everything here is an immutable value; elimination
routines work on private copies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

WORD_BITS = 64


class DimensionError(ValueError):
    """Raised when operand shapes do not line up."""


def parity(x: int) -> int:
    return x.bit_count() & 1


def _mask(n: int) -> int:
    return (1 << n) - 1


@dataclass(frozen=True)
class BitVector:
    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise DimensionError("negative length")
        if self.bits < 0 or self.bits >> self.length:
            raise DimensionError(f"bits beyond length {self.length}")

    @classmethod
    def from_string(cls, s: str) -> "BitVector":
        s = s.strip()
        bits = 0
        for i, ch in enumerate(s):
            if ch == "1":
                bits |= 1 << i
            elif ch != "0":
                raise ValueError(f"bad bit character {ch!r}")
        return cls(len(s), bits)

    @classmethod
    def from_list(cls, seq: Sequence[int]) -> "BitVector":
        bits = 0
        for i, b in enumerate(seq):
            if b & 1:
                bits |= 1 << i
        return cls(len(seq), bits)

    @classmethod
    def ones(cls, n: int) -> "BitVector":
        return cls(n, _mask(n))

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __iter__(self) -> Iterator[int]:
        for i in range(self.length):
            yield (self.bits >> i) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        _same_len(self, other)
        return BitVector(self.length, self.bits ^ other.bits)

    def __and__(self, other: "BitVector") -> "BitVector":
        _same_len(self, other)
        return BitVector(self.length, self.bits & other.bits)

    def weight(self) -> int:
        return self.bits.bit_count()

    def words(self, word_bits: int = WORD_BITS) -> list[int]:
        """Packed words, ``ceil(length / word_bits)`` of them."""
        count = -(-self.length // word_bits)
        m = _mask(word_bits)
        return [(self.bits >> (w * word_bits)) & m for w in range(count)]

    def to_string(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.length))

    def __repr__(self) -> str:
        return f"BitVector({self.to_string()!r})"


def _same_len(u: BitVector, v: BitVector) -> None:
    if u.length != v.length:
        raise DimensionError(f"length mismatch: {u.length} vs {v.length}")


def dot(u: BitVector, v: BitVector) -> int:
    _same_len(u, v)
    return parity(u.bits & v.bits)


def weight(v: BitVector) -> int:
    return v.bits.bit_count()


class BinaryMatrix:
    """Dense row-major GF(2) matrix with packed rows."""

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, rows: Iterable[int], ncols: int):
        rows = tuple(int(r) for r in rows)
        if ncols < 0:
            raise DimensionError("negative column count")
        for r in rows:
            if r < 0 or r >> ncols:
                raise DimensionError(f"row has bits beyond column {ncols}")
        self._rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def from_strings(cls, rows: Sequence[str], ncols: int | None = None) -> "BinaryMatrix":
        vecs = [BitVector.from_string(r) for r in rows]
        if ncols is None:
            ncols = vecs[0].length if vecs else 0
        if any(v.length != ncols for v in vecs):
            raise DimensionError("ragged rows")
        return cls((v.bits for v in vecs), ncols)

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]]) -> "BinaryMatrix":
        vecs = [BitVector.from_list(r) for r in rows]
        ncols = vecs[0].length if vecs else 0
        if any(v.length != ncols for v in vecs):
            raise DimensionError("ragged rows")
        return cls((v.bits for v in vecs), ncols)

    @classmethod
    def from_vectors(cls, vecs: Sequence[BitVector], ncols: int | None = None) -> "BinaryMatrix":
        if ncols is None:
            ncols = vecs[0].length if vecs else 0
        if any(v.length != ncols for v in vecs):
            raise DimensionError("ragged rows")
        return cls((v.bits for v in vecs), ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BinaryMatrix":
        return cls([0] * nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls((1 << i for i in range(n)), n)

    @classmethod
    def from_columns(cls, cols: Sequence[int], nrows: int) -> "BinaryMatrix":
        """Build from packed columns (bit ``i`` of a column is row ``i``)."""
        return cls(_transpose_ints(cols, nrows), len(cols))

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def row(self, i: int) -> BitVector:
        return BitVector(self.ncols, self._rows[i])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not 0 <= j < self.ncols:
            raise IndexError(j)
        return (self._rows[i] >> j) & 1

    def __iter__(self) -> Iterator[BitVector]:
        return (BitVector(self.ncols, r) for r in self._rows)

    def __len__(self) -> int:
        return self.nrows

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        return self.ncols == other.ncols and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.ncols, self._rows))

    def __add__(self, other: "BinaryMatrix") -> "BinaryMatrix":
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        return BinaryMatrix((a ^ b for a, b in zip(self._rows, other._rows)), self.ncols)

    def __matmul__(self, other: "BinaryMatrix") -> "BinaryMatrix":
        return mul(self, other)

    def is_zero(self) -> bool:
        return not any(self._rows)

    def columns(self) -> list[int]:
        """Packed columns; bit ``i`` of column ``j`` is entry ``(i, j)``."""
        return _transpose_ints(self._rows, self.ncols)

    def transpose(self) -> "BinaryMatrix":
        return BinaryMatrix(self.columns(), self.nrows)

    @property
    def T(self) -> "BinaryMatrix":
        return self.transpose()

    def hstack(self, other: "BinaryMatrix") -> "BinaryMatrix":
        if self.nrows != other.nrows:
            raise DimensionError("row count mismatch in hstack")
        s = self.ncols
        return BinaryMatrix((a | (b << s) for a, b in zip(self._rows, other._rows)), s + other.ncols)

    def vstack(self, other: "BinaryMatrix") -> "BinaryMatrix":
        if self.ncols != other.ncols:
            raise DimensionError("column count mismatch in vstack")
        return BinaryMatrix(self._rows + other._rows, self.ncols)

    def select_columns(self, cols: Sequence[int]) -> "BinaryMatrix":
        """New matrix whose column ``t`` is column ``cols[t]`` of this one."""
        for c in cols:
            if not 0 <= c < self.ncols:
                raise IndexError(c)
        out = []
        for r in self._rows:
            v = 0
            for t, c in enumerate(cols):
                if (r >> c) & 1:
                    v |= 1 << t
            out.append(v)
        return BinaryMatrix(out, len(cols))

    def select_rows(self, idx: Sequence[int]) -> "BinaryMatrix":
        return BinaryMatrix((self._rows[i] for i in idx), self.ncols)

    def to_strings(self) -> list[str]:
        return [BitVector(self.ncols, r).to_string() for r in self._rows]

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self._rows]

    def __repr__(self) -> str:
        body = ", ".join(repr(s) for s in self.to_strings())
        return f"BinaryMatrix([{body}], ncols={self.ncols})"


def _transpose_ints(rows: Sequence[int], ncols: int) -> list[int]:
    cols = [0] * ncols
    for i, r in enumerate(rows):
        bit = 1 << i
        while r:
            low = r & -r
            cols[low.bit_length() - 1] |= bit
            r ^= low
    return cols


def mul(M: BinaryMatrix, N: BinaryMatrix) -> BinaryMatrix:
    if M.ncols != N.nrows:
        raise DimensionError(f"cannot multiply {M.shape} by {N.shape}")
    nrows = N.rows
    out = []
    for r in M.rows:
        acc = 0
        while r:
            low = r & -r
            acc ^= nrows[low.bit_length() - 1]
            r ^= low
        out.append(acc)
    return BinaryMatrix(out, N.ncols)


def gram(G: BinaryMatrix) -> BinaryMatrix:
    """``G G^T``."""
    rows = G.rows
    k = len(rows)
    out = [0] * k
    for i in range(k):
        ri = rows[i]
        for j in range(i, k):
            if parity(ri & rows[j]):
                out[i] |= 1 << j
                out[j] |= 1 << i
    return BinaryMatrix(out, k)


def rref_rows(rows: Sequence[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form.

    Pivot rule: leftmost column with a nonzero entry below the current row,
    topmost such row.  Returns the nonzero reduced rows and their pivot
    columns (ascending).
    """
    work = list(rows)
    pivots: list[int] = []
    r = 0
    n = len(work)
    for c in range(ncols):
        if r == n:
            break
        bit = 1 << c
        for i in range(r, n):
            if work[i] & bit:
                break
        else:
            continue
        work[r], work[i] = work[i], work[r]
        p = work[r]
        for j in range(n):
            if j != r and work[j] & bit:
                work[j] ^= p
        pivots.append(c)
        r += 1
    return work[:r], pivots


def rref(M: BinaryMatrix) -> tuple[BinaryMatrix, list[int]]:
    rows, pivots = rref_rows(M.rows, M.ncols)
    return BinaryMatrix(rows, M.ncols), pivots


def rank_rows(rows: Iterable[int]) -> int:
    basis = SpanBasis()
    for r in rows:
        basis.add(r)
    return basis.rank


def rank(M: BinaryMatrix) -> int:
    return rank_rows(M.rows)


def nullspace_rows(rows: Sequence[int], ncols: int) -> list[int]:
    red, pivots = rref_rows(rows, ncols)
    pivset = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = 1 << f
        for r, p in zip(red, pivots):
            if (r >> f) & 1:
                v |= 1 << p
        out.append(v)
    return out


def nullspace_basis(M: BinaryMatrix) -> BinaryMatrix:
    """Basis of ``{x : M x^T = 0}``, one vector per free column (ascending)."""
    return BinaryMatrix(nullspace_rows(M.rows, M.ncols), M.ncols)


class SpanBasis:
    """Incremental XOR basis keyed by each vector's lowest set bit."""

    __slots__ = ("_basis",)

    def __init__(self, vectors: Iterable[int] = ()):
        self._basis: dict[int, int] = {}
        for v in vectors:
            self.add(v)

    def reduce(self, v: int) -> int:
        basis = self._basis
        while v:
            low = v & -v
            b = basis.get(low)
            if b is None:
                return v
            v ^= b
        return 0

    def add(self, v: int) -> bool:
        """Insert ``v``; return False if it was already in the span."""
        v = self.reduce(v)
        if not v:
            return False
        self._basis[v & -v] = v
        return True

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    @property
    def rank(self) -> int:
        return len(self._basis)

    def copy(self) -> "SpanBasis":
        other = SpanBasis()
        other._basis = dict(self._basis)
        return other


def in_span(v: int, rows: Iterable[int]) -> bool:
    return v in SpanBasis(rows)


def same_span(rows_a: Sequence[int], rows_b: Sequence[int]) -> bool:
    a, b = SpanBasis(rows_a), SpanBasis(rows_b)
    return a.rank == b.rank and all(r in a for r in rows_b) and all(r in b for r in rows_a)


class AffineSpace:
    """The set ``particular + span(basis)`` inside GF(2)^dim.

    The basis is kept reduced on its highest bits so that iteration yields the
    members in ascending integer order.
    """

    __slots__ = ("dim", "particular", "basis")

    def __init__(self, dim: int, particular: int, basis: Sequence[int]):
        # reduce on highest bits, then sort by highest bit ascending
        red: list[int] = []
        for v in basis:
            for b in red:
                if v >> (b.bit_length() - 1) & 1:
                    v ^= b
            if not v:
                continue
            hb = v.bit_length() - 1
            red = [b ^ v if (b >> hb) & 1 else b for b in red]
            red.append(v)
        red.sort(key=int.bit_length)
        for b in red:
            if (particular >> (b.bit_length() - 1)) & 1:
                particular ^= b
        self.dim = dim
        self.particular = particular
        self.basis = tuple(red)

    def __len__(self) -> int:
        return 1 << len(self.basis)

    def __iter__(self) -> Iterator[int]:
        items = [self.particular]
        for b in self.basis:
            items += [x ^ b for x in items]
        # monotone construction: each doubling appends strictly larger values
        return iter(items)

    def __contains__(self, v: int) -> bool:
        v ^= self.particular
        for b in reversed(self.basis):
            if (v >> (b.bit_length() - 1)) & 1:
                v ^= b
        return v == 0

    def vectors(self) -> list[BitVector]:
        return [BitVector(self.dim, v) for v in self]

    def __repr__(self) -> str:
        return f"AffineSpace(dim={self.dim}, size={len(self)})"


def solve_affine_rows(rows: Sequence[int], rhs: Sequence[int], dim: int) -> AffineSpace | None:
    """Solve ``row_i . x = rhs_i`` for all ``i``; None when inconsistent."""
    top = 1 << dim
    aug = [r | (top if b & 1 else 0) for r, b in zip(rows, rhs)]
    red, pivots = rref_rows(aug, dim + 1)
    if pivots and pivots[-1] == dim:
        return None
    particular = 0
    for r, p in zip(red, pivots):
        if r & top:
            particular |= 1 << p
    homog = nullspace_rows([r & (top - 1) for r in red], dim)
    return AffineSpace(dim, particular, homog)


def solve_affine(constraints: Sequence[tuple[BitVector, int]], dim: int) -> AffineSpace | None:
    """All ``v`` in GF(2)^dim with ``dot(c, v) == b`` for every ``(c, b)``.

    Returns None for an inconsistent system.
    """
    for c, _ in constraints:
        if c.length != dim:
            raise DimensionError(f"constraint of length {c.length}, expected {dim}")
    return solve_affine_rows([c.bits for c, _ in constraints], [b for _, b in constraints], dim)
