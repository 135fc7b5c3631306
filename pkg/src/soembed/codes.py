"""Binary linear codes: constructions, hull analysis, weights and file I/O."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .errors import CapabilityError, DomainError, EmptyCodeError, FormatError
from .gf2 import (
    BinaryMatrix,
    BitVector,
    SpanBasis,
    gram,
    nullspace_rows,
    parity,
    rank_rows,
    rref_rows,
)

ENUMERATION_BOUND = 28
_LOW_BITS = 14


@dataclass(frozen=True)
class WeightDistribution:
    counts: tuple[int, ...]

    def __getitem__(self, w: int) -> int:
        return self.counts[w]

    def __len__(self) -> int:
        return len(self.counts)

    def nonzero(self) -> dict[int, int]:
        return {w: c for w, c in enumerate(self.counts) if c}

    @property
    def total(self) -> int:
        return sum(self.counts)

    def min_weight(self) -> int | None:
        for w in range(1, len(self.counts)):
            if self.counts[w]:
                return w
        return None


@dataclass(frozen=True)
class HullDecomposition:
    hull_rows: BinaryMatrix
    comp_rows: BinaryMatrix
    odd_row_index: int | None

    @property
    def odd_row(self) -> int | None:
        if self.odd_row_index is None:
            return None
        return self.comp_rows.rows[self.odd_row_index]

    @property
    def even_rows(self) -> BinaryMatrix:
        idx = [i for i in range(self.comp_rows.nrows) if i != self.odd_row_index]
        return self.comp_rows.select_rows(idx)

    def generator(self) -> BinaryMatrix:
        return self.hull_rows.vstack(self.comp_rows)


class LinearCode:
    """An ``[n, k]`` binary code held as a full-rank generator matrix.

    Derived data (hull, weight distribution, ...) is computed lazily and
    cached; the cache is guarded so concurrent readers never observe a
    partially built entry.
    """

    def __init__(self, generator: BinaryMatrix):
        if rank_rows(generator.rows) != generator.nrows:
            raise DomainError("generator rows are not linearly independent")
        self.generator = generator
        self._cache: dict = {}
        self._lock = threading.Lock()

    @classmethod
    def from_generator(cls, M: BinaryMatrix, allow_empty: bool = False) -> "LinearCode":
        """Keep the rows of ``M`` that are independent of the rows above them."""
        basis = SpanBasis()
        kept = [r for r in M.rows if basis.add(r)]
        if not kept and not allow_empty:
            raise EmptyCodeError("generator matrix has no nonzero rows")
        return cls(BinaryMatrix(kept, M.ncols))

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> "LinearCode":
        return cls.from_generator(BinaryMatrix.from_strings(rows))

    def __getstate__(self):
        return {"generator": self.generator}

    def __setstate__(self, state):
        self.generator = state["generator"]
        self._cache = {}
        self._lock = threading.Lock()

    def _memo(self, key, compute: Callable):
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        value = compute()
        with self._lock:
            return self._cache.setdefault(key, value)

    @property
    def n(self) -> int:
        return self.generator.ncols

    @property
    def k(self) -> int:
        return self.generator.nrows

    @property
    def rows(self) -> tuple[int, ...]:
        return self.generator.rows

    def __repr__(self) -> str:
        return f"LinearCode([{self.n}, {self.k}])"

    def canonical_rows(self) -> tuple[int, ...]:
        """Reduced row echelon rows; identical for identical codes."""
        return self._memo("rref", lambda: tuple(rref_rows(self.rows, self.n)[0]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.n == other.n and self.canonical_rows() == other.canonical_rows()

    def __hash__(self) -> int:
        return hash((self.n, self.canonical_rows()))

    def __contains__(self, v) -> bool:
        bits = v.bits if isinstance(v, BitVector) else int(v)
        return bits in self._span()

    def _span(self) -> SpanBasis:
        return self._memo("span", lambda: SpanBasis(self.rows))

    def encode(self, message: int) -> int:
        acc = 0
        rows = self.rows
        while message:
            low = message & -message
            acc ^= rows[low.bit_length() - 1]
            message ^= low
        return acc

    # -- duality and hull -------------------------------------------------

    def gram(self) -> BinaryMatrix:
        return self._memo("gram", lambda: gram(self.generator))

    def dual(self) -> "LinearCode":
        return self._memo(
            "dual",
            lambda: LinearCode(BinaryMatrix(nullspace_rows(self.rows, self.n), self.n)),
        )

    def hull_basis(self) -> BinaryMatrix:
        """Basis of ``C ∩ C^⊥`` from the left null space of the Gram matrix."""

        def compute():
            combos = nullspace_rows(self.gram().rows, self.k)
            return BinaryMatrix((self.encode(x) for x in combos), self.n)

        return self._memo("hull", compute)

    def hull_dim(self) -> int:
        return self.k - rank_rows(self.gram().rows)

    def is_self_orthogonal(self) -> bool:
        return self.gram().is_zero()

    def is_lcd(self) -> bool:
        return self.hull_dim() == 0

    def is_even(self) -> bool:
        # wt(u + v) = wt(u) + wt(v) - 2 wt(u & v): even rows span an even code
        return all(not parity(r) for r in self.rows)

    def contains_dual(self) -> bool:
        span = self._span()
        return all(r in span for r in self.dual().rows)

    def is_self_dual(self) -> bool:
        return 2 * self.k == self.n and self.is_self_orthogonal()

    def hull_decompose(self) -> HullDecomposition:
        return self._memo("decomp", lambda: _hull_decompose(self))

    # -- weights ----------------------------------------------------------

    def weight_distribution(self, bound: int = ENUMERATION_BOUND) -> WeightDistribution:
        _check_bound(self.k, bound)
        return self._memo("wd", lambda: _weight_distribution(self.rows, self.n))

    def min_distance(self, bound: int = ENUMERATION_BOUND) -> int:
        """Minimum nonzero weight; 0 for the zero code."""
        if self.k == 0:
            return 0
        if "wd" in self._cache:
            return self._cache["wd"].min_weight()
        _check_bound(self.k, bound)
        return self._memo("d", lambda: _min_weight(self.rows, self.n))

    def codewords_of_weight(self, weights: Iterable[int], bound: int = ENUMERATION_BOUND) -> list[int]:
        _check_bound(self.k, bound)
        return _words_of_weight(self.rows, self.n, set(weights))

    # -- coordinate operations --------------------------------------------

    def puncture(self, coords: Iterable[int]) -> "LinearCode":
        drop = set(coords)
        for c in drop:
            if not 0 <= c < self.n:
                raise IndexError(f"coordinate {c} out of range for length {self.n}")
        keep = [j for j in range(self.n) if j not in drop]
        return LinearCode.from_generator(self.generator.select_columns(keep), allow_empty=True)

    def permute(self, perm: Sequence[int]) -> "LinearCode":
        """The code ``σC`` where coordinate ``i`` moves to position ``perm[i]``."""
        if sorted(perm) != list(range(self.n)):
            raise DomainError("not a permutation of the coordinates")
        inv = [0] * self.n
        for i, p in enumerate(perm):
            inv[p] = i
        return LinearCode(self.generator.select_columns(inv))


def _check_bound(k: int, bound: int) -> None:
    if k > bound:
        raise CapabilityError(f"dimension {k} exceeds enumeration bound {bound}", bound)


def _hull_decompose(C: LinearCode) -> HullDecomposition:
    hull = C.hull_basis()
    hull_span = SpanBasis(hull.rows)
    # prefer the code's own generator rows where they already lie in the hull
    chosen = SpanBasis()
    hull_rows = []
    for r in C.rows:
        if r in hull_span and chosen.add(r):
            hull_rows.append(r)
    for r in hull.rows:
        if chosen.add(r):
            hull_rows.append(r)
    comp = [r for r in C.rows if chosen.add(r)]

    odd_index = None
    for i, r in enumerate(comp):
        if parity(r):
            odd_index = i
            break
    if odd_index is not None:
        x = comp[odd_index]
        comp = [r ^ x if (i != odd_index and parity(r)) else r for i, r in enumerate(comp)]
    return HullDecomposition(
        hull_rows=BinaryMatrix(hull_rows, C.n),
        comp_rows=BinaryMatrix(comp, C.n),
        odd_row_index=odd_index,
    )


# -- word-parallel enumeration ----------------------------------------------


def pack_rows(rows: Sequence[int], n: int) -> np.ndarray:
    """Rows as a ``(len(rows), ceil(n/64))`` uint64 array."""
    W = max(1, -(-n // 64))
    out = np.zeros((len(rows), W), dtype=np.uint64)
    m = (1 << 64) - 1
    for i, r in enumerate(rows):
        for w in range(W):
            out[i, w] = (r >> (64 * w)) & m
    return out


def unpack_words(words: np.ndarray) -> int:
    v = 0
    for w in range(len(words) - 1, -1, -1):
        v = (v << 64) | int(words[w])
    return v


def _gray_blocks(rows: Sequence[int], n: int) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """Yield ``(high_index, words, weights)`` covering all ``2^k`` codewords.

    The low rows are tabulated once; the high part walks a Gray code so that
    each step XORs a single generator row into the running offset.
    """
    k = len(rows)
    packed = pack_rows(rows, n)
    W = packed.shape[1]
    lo = min(k, _LOW_BITS)
    table = np.zeros((1, W), dtype=np.uint64)
    for i in range(lo):
        table = np.concatenate([table, table ^ packed[i]])
    offset = np.zeros(W, dtype=np.uint64)
    gray = 0
    for step in range(1 << (k - lo)):
        if step:
            bit = (step & -step).bit_length() - 1
            offset ^= packed[lo + bit]
            gray ^= 1 << bit
        words = table ^ offset
        weights = np.bitwise_count(words).sum(axis=1, dtype=np.int64)
        yield gray, words, weights


def _weight_distribution(rows: Sequence[int], n: int) -> WeightDistribution:
    counts = np.zeros(n + 1, dtype=np.int64)
    for _, _, weights in _gray_blocks(rows, n):
        counts += np.bincount(weights, minlength=n + 1)
    return WeightDistribution(tuple(int(c) for c in counts))


def _min_weight(rows: Sequence[int], n: int) -> int:
    best = n + 1
    for gray, _, weights in _gray_blocks(rows, n):
        if gray == 0:
            weights = weights[1:]
        if len(weights):
            best = min(best, int(weights.min()))
    return best


def _words_of_weight(rows: Sequence[int], n: int, wanted: set[int]) -> list[int]:
    out = []
    sel = np.array(sorted(wanted), dtype=np.int64)
    for _, words, weights in _gray_blocks(rows, n):
        hit = np.nonzero(np.isin(weights, sel))[0]
        for i in hit:
            out.append(unpack_words(words[i]))
    return out


def coordinate_weight_profile(C: LinearCode, words: Sequence[int] | None = None) -> list[tuple[int, ...]]:
    """For each coordinate, the weights of the given codewords covering it.

    With ``words`` omitted all codewords are used.  Returns per-coordinate
    count vectors indexed by weight.
    """
    n = C.n
    if words is None:
        prof = np.zeros((n, n + 1), dtype=np.int64)
        for _, block, weights in _gray_blocks(C.rows, n):
            for j in range(n):
                col = (block[:, j // 64] >> np.uint64(j % 64)) & np.uint64(1)
                prof[j] += np.bincount(weights[col.astype(bool)], minlength=n + 1)
        return [tuple(int(x) for x in prof[j]) for j in range(n)]
    prof_l = [[0] * (n + 1) for _ in range(n)]
    for w in words:
        wt = w.bit_count()
        while w:
            low = w & -w
            prof_l[low.bit_length() - 1][wt] += 1
            w ^= low
    return [tuple(p) for p in prof_l]


# -- families -----------------------------------------------------------------


def _parity_check_columns(r: int) -> list[int]:
    """Rows of the ``r x (2^r - 1)`` matrix whose column ``j`` is ``j + 1`` in binary."""
    n = (1 << r) - 1
    rows = [0] * r
    for j in range(n):
        v = j + 1
        for i in range(r):
            if (v >> i) & 1:
                rows[i] |= 1 << j
    return rows


def hamming(r: int) -> LinearCode:
    if r < 2:
        raise DomainError("Hamming codes need r >= 2")
    n = (1 << r) - 1
    return LinearCode(BinaryMatrix(nullspace_rows(_parity_check_columns(r), n), n))


def simplex(r: int) -> LinearCode:
    if r < 2:
        raise DomainError("simplex codes need r >= 2")
    return LinearCode(BinaryMatrix(_parity_check_columns(r), (1 << r) - 1))


def even_code(n: int) -> LinearCode:
    if n < 2:
        raise DomainError("even weight code needs n >= 2")
    last = 1 << (n - 1)
    return LinearCode(BinaryMatrix(((1 << i) | last for i in range(n - 1)), n))


def repetition(n: int) -> LinearCode:
    return LinearCode(BinaryMatrix([(1 << n) - 1], n))


def full_space(n: int) -> LinearCode:
    return LinearCode(BinaryMatrix.identity(n))


def reed_muller(r: int, m: int) -> LinearCode:
    if not (0 <= r <= m) or m < 1:
        raise DomainError("Reed-Muller needs 0 <= r <= m, m >= 1")
    n = 1 << m
    rows = []
    for mono in range(n):
        if mono.bit_count() > r:
            continue
        v = 0
        for p in range(n):
            if p & mono == mono:
                v |= 1 << p
        rows.append(v)
    return LinearCode(BinaryMatrix(rows, n))


# -- hex and text formats -------------------------------------------------------


def _hex_to_bits(row: str, n: int) -> int:
    L = len(row)
    total = 4 * L
    value = int(row, 16)
    pad = total - n
    if value & ((1 << pad) - 1):
        raise FormatError(f"nonzero padding bits in hex row {row!r}")
    # MSB of the first digit is coordinate 0
    value >>= pad
    bits = 0
    for i in range(n):
        if (value >> (n - 1 - i)) & 1:
            bits |= 1 << i
    return bits


def _bits_to_hex(bits: int, n: int) -> str:
    L = -(-n // 4)
    value = 0
    for i in range(n):
        value = (value << 1) | ((bits >> i) & 1)
    value <<= 4 * L - n
    return format(value, f"0{L}x")


def hex_to_matrix(rows: Sequence[str], n: int) -> BinaryMatrix:
    rows = [r.strip().lower() for r in rows]
    if not rows:
        raise FormatError("no hex rows")
    L = len(rows[0])
    if any(len(r) != L for r in rows):
        raise FormatError("ragged hex rows")
    if not (4 * L >= n and 4 * L - n <= 3):
        raise FormatError(f"hex width {L} does not match length {n}")
    try:
        return BinaryMatrix((_hex_to_bits(r, n) for r in rows), n)
    except ValueError as e:
        if isinstance(e, FormatError):
            raise
        raise FormatError(str(e)) from None


def matrix_to_hex(M: BinaryMatrix) -> list[str]:
    return [_bits_to_hex(r, M.ncols) for r in M.rows]


def parse_hex(rows: Sequence[str], n: int) -> LinearCode:
    return LinearCode.from_generator(hex_to_matrix(rows, n))


def emit_hex(C: LinearCode) -> list[str]:
    return matrix_to_hex(C.generator)


def loads_code(text: str) -> LinearCode:
    """Parse either the ``n k`` bit-row format or the ``hex n k`` format."""
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError("empty code file")
    lineno, header = lines[0]
    parts = header.split()
    is_hex = parts and parts[0] == "hex"
    if is_hex:
        parts = parts[1:]
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise FormatError(f"line {lineno}: expected header 'n k' or 'hex n k'")
    n, k = int(parts[0]), int(parts[1])
    body = lines[1:]
    if len(body) != k:
        raise FormatError(f"line {lineno}: header announces {k} rows, found {len(body)}")
    if is_hex:
        for ln_no, row in body:
            try:
                int(row, 16)
            except ValueError:
                raise FormatError(f"line {ln_no}: not a hex row") from None
        try:
            M = hex_to_matrix([row for _, row in body], n)
        except FormatError as e:
            raise FormatError(f"line {body[0][0]}: {e}") from None
    else:
        rows = []
        for ln_no, row in body:
            if len(row) != n or set(row) - {"0", "1"}:
                raise FormatError(f"line {ln_no}: expected {n} characters from {{0,1}}")
            rows.append(BitVector.from_string(row).bits)
        M = BinaryMatrix(rows, n)
    return LinearCode.from_generator(M)


def dumps_code(C: LinearCode, hex_format: bool = False) -> str:
    if hex_format:
        body = matrix_to_hex(C.generator)
        return "\n".join([f"hex {C.n} {C.k}", *body]) + "\n"
    return "\n".join([f"{C.n} {C.k}", *C.generator.to_strings()]) + "\n"


def read_code(path: str | Path) -> LinearCode:
    return loads_code(Path(path).read_text())


def write_code(C: LinearCode, path: str | Path, hex_format: bool = False) -> None:
    Path(path).write_text(dumps_code(C, hex_format))
