"""Orthonormal bases over GF(2), the orthogonal group O(s, 2), and self-dual
embeddings of odd dual-containing codes built from them."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

from .codes import LinearCode
from .embed import EmbeddingResult
from .errors import CapabilityError, DomainError
from .gf2 import BinaryMatrix, mul, nullspace_basis, parity, rank_rows, rref_rows, solve_affine_rows

ORTHOGONAL_BOUND = 8


# -- orthonormalisation -------------------------------------------------------


@dataclass(frozen=True)
class OrthonormalBasis:
    vectors: BinaryMatrix
    source: BinaryMatrix

    def __len__(self) -> int:
        return self.vectors.nrows


def orthonormalize(basis: BinaryMatrix) -> OrthonormalBasis:
    """Turn a basis of an odd LCD code into vectors ``b_i`` with ``b_i.b_j = [i == j]``.

    Odd vectors are taken greedily and projected out of the rest.  When only
    even vectors remain, a pair ``a, a'`` with ``a.a' = 1`` is merged with the
    first output vector ``b`` into ``b + a + a'``, ``b + a'``, ``b + a``.
    The remaining vectors are then projected against all three of them.
    """
    rows = list(basis.rows)
    if rank_rows(rows) != len(rows):
        raise DomainError("orthonormalize: input rows are linearly dependent")
    out: list[int] = []
    rest = rows
    while rest:
        idx = next((i for i, a in enumerate(rest) if parity(a)), None)
        if idx is not None:
            b = rest.pop(idx)
            out.append(b)
            rest = [a ^ b if parity(a & b) else a for a in rest]
            continue
        if not out:
            raise DomainError("orthonormalize: no odd-weight vector to start from (code is even)")
        a2 = rest[0]
        j = next((i for i in range(1, len(rest)) if parity(a2 & rest[i])), None)
        if j is None:
            raise DomainError("orthonormalize: even vector orthogonal to all others (code is not LCD)")
        a3 = rest[j]
        b1 = out[0] ^ a2 ^ a3
        b2 = a2 ^ b1
        b3 = a3 ^ b1
        out[0] = b1
        out += [b2, b3]
        rest = [a for i, a in enumerate(rest) if i not in (0, j)]
        for b in (b1, b2, b3):
            rest = [a ^ b if parity(a & b) else a for a in rest]
    for i, u in enumerate(out):
        for j2 in range(i, len(out)):
            if parity(u & out[j2]) != (i == j2):
                raise AssertionError("orthonormalize produced a non-orthonormal set")
    return OrthonormalBasis(BinaryMatrix(out, basis.ncols), basis)


# -- self-dual embeddings from a systematic generator ---------------------------


@dataclass(frozen=True)
class SystematicForm:
    """``rows`` equal ``[I_k | A]`` after moving ``order`` to the front.

    ``rows`` stay in the original coordinates; ``A`` is ``k x r``.
    """

    rows: tuple[int, ...]
    order: tuple[int, ...]
    A: BinaryMatrix

    @property
    def k(self) -> int:
        return len(self.rows)


def systematic_form(C: LinearCode) -> SystematicForm:
    rows, pivots = rref_rows(C.rows, C.n)
    pset = set(pivots)
    others = [j for j in range(C.n) if j not in pset]
    A = BinaryMatrix(rows, C.n).select_columns(others)
    return SystematicForm(tuple(rows), tuple(pivots + others), A)


def _check_dual_containing(C: LinearCode, sf: SystematicForm) -> None:
    if C.is_even():
        raise DomainError(f"{C} is even; the orthogonal-basis construction needs an odd code")
    A = sf.A
    if mul(A.T, A) != BinaryMatrix.identity(A.ncols):
        raise DomainError("A^T A != I: the dual is not self-orthogonal in this position")


def selfdual_basis_block(C: LinearCode) -> tuple[SystematicForm, BinaryMatrix]:
    """Systematic form of ``C`` and a block ``B`` (k x (k-r)) with ``A^T B = 0``, ``B^T B = I``."""
    sf = systematic_form(C)
    _check_dual_containing(C, sf)
    At = sf.A.T
    null = nullspace_basis(At)
    if At.nrows and null.nrows:
        # both <A^T> and its dual must carry odd words
        if not any(parity(r) for r in At.rows) or not any(parity(r) for r in null.rows):
            raise AssertionError("the code spanned by A^T is not LCD_{o,o}")
    ob = orthonormalize(null)
    return sf, ob.vectors.T


def embedding_from_block(C: LinearCode, sf: SystematicForm, B: BinaryMatrix, strategy: str = "orthobasis") -> EmbeddingResult:
    gen = BinaryMatrix(sf.rows, C.n)
    return EmbeddingResult.build(C, gen, B, strategy)


def selfdual_embed_systematic(C: LinearCode, R: BinaryMatrix | None = None) -> EmbeddingResult:
    """Self-dual ``[2k, k]`` embedding ``[I_k | A | B R]`` of an odd code containing its dual."""
    sf, B = selfdual_basis_block(C)
    if R is not None:
        B = mul(B, R)
    return embedding_from_block(C, sf, B)


# -- the orthogonal group -------------------------------------------------------


def _check_s(s: int, bound: int) -> None:
    if s < 0:
        raise DomainError("s must be nonnegative")
    if s > bound:
        raise CapabilityError(f"O({s},2) enumeration exceeds bound {bound}", bound)


def _column_space(chosen: Sequence[int], s: int):
    ones = (1 << s) - 1
    return solve_affine_rows(list(chosen) + [ones], [0] * len(chosen) + [1], s)


def _columns(s: int, prefix: tuple[int, ...], ascending: bool) -> Iterator[tuple[int, ...]]:
    """Orthonormal column tuples extending ``prefix``.

    A partial set can be completed iff the all-ones vector is not the sum of
    the chosen columns (otherwise the complement holds only even vectors).
    """
    ones = (1 << s) - 1
    chosen = list(prefix)
    acc = 0
    for c in chosen:
        acc ^= c

    def rec(acc: int) -> Iterator[tuple[int, ...]]:
        j = len(chosen)
        if j == s:
            yield tuple(chosen)
            return
        space = _column_space(chosen, s)
        if space is None:
            return
        low = chosen[-1] if (ascending and chosen) else -1
        for v in space:
            if v <= low:
                continue
            nacc = acc ^ v
            if j + 1 < s and nacc == ones:
                continue
            chosen.append(v)
            yield from rec(nacc)
            chosen.pop()

    yield from rec(acc)


def _count(s: int, prefix: tuple[int, ...]) -> int:
    ones = (1 << s) - 1
    chosen = list(prefix)

    def rec(acc: int) -> int:
        j = len(chosen)
        if j == s:
            return 1
        space = _column_space(chosen, s)
        if space is None:
            return 0
        if j == s - 1:
            return len(space)
        if j == s - 2:
            # every admissible column here has exactly one completion
            return len(space) - ((acc ^ ones) in space)
        total = 0
        for v in space:
            nacc = acc ^ v
            if nacc == ones:
                continue
            chosen.append(v)
            total += rec(nacc)
            chosen.pop()
        return total

    acc = 0
    for c in chosen:
        acc ^= c
    return rec(acc)


def first_columns(s: int) -> list[int]:
    """Admissible first columns, the work partition for the enumeration."""
    if s == 0:
        return []
    ones = (1 << s) - 1
    return [v for v in _column_space([], s) if s == 1 or v != ones]


def orthogonal_group(s: int, bound: int = ORTHOGONAL_BOUND, first: int | None = None) -> Iterator[BinaryMatrix]:
    """All ``R`` in O(s, 2), columns chosen in ascending order of value.

    ``first`` restricts the enumeration to matrices with that first column.
    """
    _check_s(s, bound)
    prefix = () if first is None else (first,)
    if s == 0:
        yield BinaryMatrix.zeros(0, 0)
        return
    for cols in _columns(s, prefix, ascending=False):
        yield BinaryMatrix.from_columns(cols, s)


def orthogonal_group_order(s: int, bound: int = ORTHOGONAL_BOUND, workers: int = 1) -> int:
    """``|O(s, 2)|`` by exhaustive enumeration, optionally split by first column."""
    _check_s(s, bound)
    if s == 0:
        return 1
    firsts = first_columns(s)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return sum(pool.map(_count, [s] * len(firsts), [(f,) for f in firsts]))
    return sum(_count(s, (f,)) for f in firsts)


@dataclass(frozen=True)
class CosetRep:
    """An orthogonal matrix standing for its orbit ``{R P : P a permutation}``."""

    matrix: BinaryMatrix
    canonical_key: tuple[int, ...]

    @classmethod
    def from_matrix(cls, R: BinaryMatrix) -> "CosetRep":
        return cls(R, canonical_key(R))

    @property
    def orbit_size(self) -> int:
        from math import factorial
        from collections import Counter

        size = factorial(len(self.canonical_key))
        for c in Counter(self.canonical_key).values():
            size //= factorial(c)
        return size


def canonical_key(R: BinaryMatrix) -> tuple[int, ...]:
    return tuple(sorted(R.columns()))


def coset_representatives(s: int, bound: int = ORTHOGONAL_BOUND) -> list[CosetRep]:
    """One matrix per orbit of column permutations, the one with ascending columns.

    Columns of an orthogonal matrix are distinct, so every orbit contains
    exactly one member whose columns increase; it is produced directly by the
    ascending-column enumeration.
    """
    _check_s(s, bound)
    if s == 0:
        return [CosetRep(BinaryMatrix.zeros(0, 0), ())]
    return [CosetRep(BinaryMatrix.from_columns(cols, s), cols) for cols in _columns(s, (), ascending=True)]


def random_orthogonal(s: int, rng: random.Random) -> BinaryMatrix:
    """A random element of O(s, 2), built column by column."""
    ones = (1 << s) - 1
    while True:
        chosen: list[int] = []
        acc = 0
        for j in range(s):
            space = _column_space(chosen, s)
            v = None
            for _ in range(64):
                cand = space.particular
                for b in space.basis:
                    if rng.getrandbits(1):
                        cand ^= b
                if j + 1 == s or acc ^ cand != ones:
                    v = cand
                    break
            if v is None:
                break
            chosen.append(v)
            acc ^= v
        if len(chosen) == s:
            return BinaryMatrix.from_columns(chosen, s)


# -- the sweep ------------------------------------------------------------------


@dataclass
class SweepClass:
    embedding: EmbeddingResult
    min_distance: int
    members: int


@dataclass
class SweepResult:
    classes: list[SweepClass]
    tried: int

    def __len__(self) -> int:
        return len(self.classes)


def sweep_selfdual_embeddings(
    C: LinearCode,
    sample: int | None = None,
    seeds: Sequence[BinaryMatrix] = (),
    rng: random.Random | None = None,
    bound: int = ORTHOGONAL_BOUND,
) -> SweepResult:
    """Classify the self-dual embeddings ``[I | A | B R]`` of ``C``.

    With ``sample`` unset, ``R`` ranges over the coset representatives of
    O(s, 2) under column permutations, which covers every self-dual
    embedding of this shape.  Otherwise ``R`` is drawn at random ``sample``
    times, after the explicit ``seeds``.
    """
    from .search import EquivalenceClassSet

    sf, B = selfdual_basis_block(C)
    s = B.ncols
    if sample is None:
        mats = [rep.matrix for rep in coset_representatives(s, bound)]
        mats = list(seeds) + mats
    else:
        rng = rng or random.Random(0)
        mats = list(seeds) + [random_orthogonal(s, rng) for _ in range(sample)]
    classes = EquivalenceClassSet()
    found: list[SweepClass] = []
    for R in mats:
        E = embedding_from_block(C, sf, mul(B, R))
        idx, new = classes.add(E.result)
        if new:
            found.append(SweepClass(E, E.result.min_distance(), 1))
        else:
            found[idx].members += 1
    return SweepResult(found, len(mats))
