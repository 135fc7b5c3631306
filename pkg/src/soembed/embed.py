"""Shortest self-orthogonal embeddings: length prediction and constructions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .codes import LinearCode
from .errors import CapabilityError, DomainError, InfeasibleEmbedding, StructureViolation
from .gf2 import BinaryMatrix, SpanBasis, parity, solve_affine_rows

DFS_BOUND = 16


@dataclass(frozen=True)
class EmbeddingResult:
    """A self-orthogonal code ``[generator | appended]`` extending ``source``.

    ``generator`` is the basis of ``source`` the block was built against (hull
    rows first where the construction is hull-adapted); ``hull_rows`` counts
    those leading rows.
    """

    source: LinearCode
    generator: BinaryMatrix
    appended: BinaryMatrix
    result: LinearCode
    predicted_m: int
    strategy: str

    @classmethod
    def build(
        cls,
        source: LinearCode,
        generator: BinaryMatrix,
        appended: BinaryMatrix,
        strategy: str,
        predicted_m: int | None = None,
    ) -> "EmbeddingResult":
        result = LinearCode(generator.hstack(appended))
        if predicted_m is None:
            predicted_m = shortest_length(source)
        return cls(source, generator, appended, result, predicted_m, strategy)

    @property
    def m(self) -> int:
        return self.appended.ncols

    def certify(self) -> "Certificate":
        return certify(self)


@dataclass(frozen=True)
class Certificate:
    self_orthogonal: bool
    punctures_back: bool
    shortest: bool
    distance_ok: bool | None
    hull_block_zero: bool
    self_dual: bool
    self_dual_expected: bool | None

    @property
    def ok(self) -> bool:
        return (
            self.self_orthogonal
            and self.punctures_back
            and self.shortest
            and self.distance_ok is not False
            and self.hull_block_zero
            and (self.self_dual_expected is None or self.self_dual == self.self_dual_expected)
        )


def shortest_length(C: LinearCode) -> int:
    """Number of columns a shortest self-orthogonal embedding appends."""
    t = C.k - C.hull_dim()
    if t == 0:
        return 0
    if t % 2 == 1 or not C.is_even():
        return t
    return t + 1


def puncture(C: LinearCode, coords: Iterable[int]) -> LinearCode:
    return C.puncture(coords)


# -- depth-first construction -------------------------------------------------


def _dfs_append(rows: Sequence[int], m: int) -> list[int] | None:
    """Find rows ``b_i`` in GF(2)^m making ``[rows | b]`` self-orthogonal.

    Row ``i`` is constrained by ``wt(b_i) = wt(g_i) (mod 2)`` and
    ``b_j . b_i = g_j . g_i`` for ``j < i``; candidates are tried in
    ascending integer order and the first complete assignment is returned.
    """
    t = len(rows)
    ones = (1 << m) - 1
    chosen: list[int] = []

    def rec(i: int) -> bool:
        if i == t:
            return True
        gi = rows[i]
        space = solve_affine_rows(
            chosen + [ones],
            [parity(rows[j] & gi) for j in range(i)] + [parity(gi)],
            m,
        )
        if space is None:
            return False
        for v in space:
            chosen.append(v)
            if rec(i + 1):
                return True
            chosen.pop()
        return False

    return list(chosen) if rec(0) else None


def embed_dfs(C: LinearCode, target_m: int | None = None, bound: int = DFS_BOUND) -> EmbeddingResult:
    """Hull-adapted depth-first search for an SO embedding with ``target_m`` columns."""
    dec = C.hull_decompose()
    t = dec.comp_rows.nrows
    if target_m is None:
        target_m = shortest_length(C)
    if t > bound:
        raise CapabilityError(f"k - hull = {t} exceeds DFS bound {bound}", bound)
    gen = dec.generator()
    if t == 0:
        block = [0] * C.k
    else:
        comp = _dfs_append(dec.comp_rows.rows, target_m)
        if comp is None:
            raise InfeasibleEmbedding(f"no SO embedding of {C} with {target_m} added columns")
        block = [0] * dec.hull_rows.nrows + comp
    return EmbeddingResult.build(C, gen, BinaryMatrix(block, target_m), "dfs")


# -- closed-form constructions ------------------------------------------------


def is_even_weight_code(C: LinearCode) -> bool:
    return C.n >= 2 and C.k == C.n - 1 and C.is_even()


def embed_even_canonical(C: LinearCode) -> EmbeddingResult:
    """Embed the even weight code ``E_n`` by the explicit block constructions."""
    if not is_even_weight_code(C):
        raise DomainError(f"{C} is not the even weight code E_n")
    n = C.n
    last = 1 << (n - 1)
    gen_rows = [(1 << i) | last for i in range(n - 1)]
    gen = BinaryMatrix(gen_rows, n)
    if n % 2 == 0:
        full = (1 << (n - 1)) - 1
        block = BinaryMatrix((full ^ (1 << i) for i in range(n - 1)), n - 1)
    else:
        block = gen
    return EmbeddingResult.build(C, gen, block, "even-canonical")


def embed_theorem_odd(C: LinearCode, bound: int = DFS_BOUND) -> EmbeddingResult:
    """Odd code with even ``k - hull``: split off the odd row, embed the rest."""
    if C.is_even():
        raise DomainError("theorem construction requires an odd code")
    dec = C.hull_decompose()
    t = dec.comp_rows.nrows
    if t % 2 == 1:
        res = embed_dfs(C, t, bound)
        return EmbeddingResult.build(C, res.generator, res.appended, "dfs")
    n = C.n
    x = dec.odd_row
    a0 = list(dec.even_rows.rows)
    hull = list(dec.hull_rows.rows)
    partner = next((z for z in a0 if parity(x & z)), None)
    if partner is None:
        # x is orthogonal to the even part: one column on x, then embed A_0
        d = _dfs_append(a0, t - 1)
        if d is None:
            raise InfeasibleEmbedding("residual even block could not be embedded")
        src_rows = hull + [x] + a0
        block = [0] * len(hull) + [1] + [v << 1 for v in d]
    else:
        y = partner
        b0 = [z ^ y if parity(x & z) else z for z in a0 if z is not y]
        d = _dfs_append([y | (1 << n)] + b0, t - 1)
        if d is None:
            raise InfeasibleEmbedding("residual block [y 1; B_0 0] could not be embedded")
        src_rows = hull + [x, y] + b0
        block = [0] * len(hull) + [1, 1 | (d[0] << 1)] + [v << 1 for v in d[1:]]
    return EmbeddingResult.build(
        C, BinaryMatrix(src_rows, n), BinaryMatrix(block, t), "theorem-odd-case"
    )


def identity_embedding(C: LinearCode) -> EmbeddingResult:
    if not C.is_self_orthogonal():
        raise DomainError(f"{C} is not self-orthogonal")
    return EmbeddingResult.build(C, C.generator, BinaryMatrix.zeros(C.k, 0), "identity", 0)


STRATEGIES = ("auto", "identity", "dfs", "even-canonical", "orthobasis", "theorem-odd")


def embed_shortest(C: LinearCode, strategy: str = "auto", bound: int = DFS_BOUND) -> EmbeddingResult:
    """Dispatch to the construction suited to ``C``."""
    from .orthosearch import selfdual_embed_systematic

    if strategy == "identity":
        return identity_embedding(C)
    if strategy == "dfs":
        return embed_dfs(C, bound=bound)
    if strategy == "even-canonical":
        return embed_even_canonical(C)
    if strategy == "orthobasis":
        return selfdual_embed_systematic(C)
    if strategy == "theorem-odd":
        return embed_theorem_odd(C, bound)
    if strategy != "auto":
        raise DomainError(f"unknown strategy {strategy!r}")

    if C.is_self_orthogonal():
        return identity_embedding(C)
    if is_even_weight_code(C):
        return embed_even_canonical(C)
    odd = not C.is_even()
    if odd and C.contains_dual():
        return selfdual_embed_systematic(C)
    t = C.k - C.hull_dim()
    if t <= bound:
        return embed_dfs(C, bound=bound)
    if odd and t % 2 == 0:
        return embed_theorem_odd(C, bound)
    raise CapabilityError(f"k - hull = {t} exceeds DFS bound {bound}", bound)


# -- certificates -------------------------------------------------------------


def _combination(v: int, rows: Sequence[int], n: int) -> int | None:
    """Bitmask of rows summing to ``v``; None when ``v`` is outside the span."""
    basis = SpanBasis((r | (1 << (n + i))) for i, r in enumerate(rows))
    rest = basis.reduce(v)
    if rest & ((1 << n) - 1):
        return None
    return rest >> n


def check_structure(E: EmbeddingResult) -> dict:
    """Check that hull codewords of the source carry a zero appended part.

    Raises StructureViolation naming the offending hull basis row.
    """
    if not E.result.is_self_orthogonal():
        raise StructureViolation("embedding is not self-orthogonal")
    n = E.source.n
    rows = E.generator.rows
    tails = E.appended.rows
    for idx, h in enumerate(E.source.hull_basis().rows):
        combo = _combination(h, rows, n)
        if combo is None:
            raise StructureViolation("generator does not span the source code", idx)
        tail = 0
        i = 0
        while combo:
            if combo & 1:
                tail ^= tails[i]
            combo >>= 1
            i += 1
        if tail:
            raise StructureViolation(f"hull row {idx} has a nonzero appended part", idx)
    return {
        "hull_block_zero": True,
        "self_dual": E.result.is_self_dual(),
        "length": E.result.n,
        "twice_k": 2 * E.result.k,
    }


def expected_self_dual(C: LinearCode) -> bool:
    """Whether a shortest SO embedding of ``C`` is self-dual."""
    if C.is_even():
        return C.is_self_dual()
    return C.contains_dual()


def certify(E: EmbeddingResult, distance_bound: int = 20) -> Certificate:
    src, res = E.source, E.result
    so = res.is_self_orthogonal()
    m = E.m
    back = res.puncture(range(src.n, src.n + m)) == src
    shortest = m == E.predicted_m
    dist_ok = None
    if src.k <= distance_bound:
        dist_ok = res.min_distance() >= src.min_distance()
    try:
        hull_zero = so and check_structure(E)["hull_block_zero"]
    except StructureViolation:
        hull_zero = False
    sd = res.is_self_dual()
    expected = expected_self_dual(src) if m == shortest_length(src) else None
    return Certificate(so, back, shortest, dist_ok, hull_zero, sd, expected)
