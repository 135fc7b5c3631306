"""Exhaustive enumeration of SO embeddings and code equivalence testing."""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .codes import LinearCode, coordinate_weight_profile
from .embed import shortest_length
from .errors import EquivalenceUndecided
from .gf2 import BinaryMatrix, SpanBasis, parity, solve_affine_rows

EQUIVALENCE_BUDGET = 10**7


# -- invariants and equivalence -----------------------------------------------


def fingerprint(C: LinearCode) -> tuple:
    """Permutation-invariant signature: ``(n, k, weights, coordinate profiles)``.

    Coordinate profiles count, per weight, the codewords covering a
    coordinate; for ``k > 16`` only minimum-weight words are counted.
    """

    def compute():
        wd = C.weight_distribution()
        if C.k <= 16:
            prof = coordinate_weight_profile(C)
        else:
            d = wd.min_weight()
            prof = coordinate_weight_profile(C, C.codewords_of_weight([d]))
        return (C.n, C.k, wd.counts, tuple(sorted(prof)))

    return C._memo("fingerprint", compute)


def _spanning_words(C: LinearCode, weights_present: Sequence[int]) -> tuple[list[int], list[int]]:
    """Smallest prefix of the weight classes whose words span ``C``."""
    used: list[int] = []
    basis = SpanBasis()
    words: list[int] = []
    for w in weights_present:
        batch = C.codewords_of_weight([w])
        used.append(w)
        words.extend(batch)
        for v in batch:
            basis.add(v)
        if basis.rank == C.k:
            break
    return used, words


class _Graph:
    """Bipartite incidence graph: coordinates ``0..n-1`` then codewords."""

    def __init__(self, n: int, words: Sequence[int]):
        self.n = n
        size = n + len(words)
        adj: list[list[int]] = [[] for _ in range(size)]
        colors = [0] * n
        for t, w in enumerate(words):
            v = n + t
            colors.append(1 + w.bit_count())
            x = w
            while x:
                low = x & -x
                j = low.bit_length() - 1
                adj[v].append(j)
                adj[j].append(v)
                x ^= low
        self.adj = adj
        self.colors = colors


def _refine(g1: _Graph, g2: _Graph, c1: list[int], c2: list[int]):
    """Joint colour refinement; None when the colour classes stop matching."""
    ncls = len(set(c1))
    while True:
        s1 = [(c1[v], tuple(sorted(c1[u] for u in nb))) for v, nb in enumerate(g1.adj)]
        s2 = [(c2[v], tuple(sorted(c2[u] for u in nb))) for v, nb in enumerate(g2.adj)]
        index = {key: i for i, key in enumerate(sorted(set(s1) | set(s2)))}
        n1 = [index[s] for s in s1]
        n2 = [index[s] for s in s2]
        if Counter(n1) != Counter(n2):
            return None
        new_ncls = len(set(n1))
        if new_ncls == ncls:
            return n1, n2
        c1, c2, ncls = n1, n2, new_ncls


def are_equivalent(C1: LinearCode, C2: LinearCode, budget: int = EQUIVALENCE_BUDGET) -> list[int] | None:
    """A permutation ``perm`` with ``C1.permute(perm) == C2``, or None.

    Invariant mismatch rejects immediately.  Otherwise coordinates are matched
    by individualisation and colour refinement on the incidence graph of a
    spanning set of low-weight codewords.  Raises EquivalenceUndecided when
    more than ``budget`` search nodes are needed.
    """
    if (C1.n, C1.k) != (C2.n, C2.k):
        return None
    n = C1.n
    if C1 == C2:
        return list(range(n))
    if fingerprint(C1) != fingerprint(C2):
        return None
    wd = C1.weight_distribution()
    present = [w for w in range(1, n + 1) if wd[w]]
    used, words1 = _spanning_words(C1, present)
    words2 = C2.codewords_of_weight(used)
    if SpanBasis(words2).rank != C2.k:
        return None
    g1, g2 = _Graph(n, words1), _Graph(n, words2)
    nodes = 0

    def rec(c1: list[int], c2: list[int]):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise EquivalenceUndecided(f"equivalence search exceeded {budget} nodes")
        r = _refine(g1, g2, c1, c2)
        if r is None:
            return None
        c1, c2 = r
        cells: dict[int, list[int]] = {}
        for v in range(n):
            cells.setdefault(c1[v], []).append(v)
        open_cells = [cell for cell in cells.values() if len(cell) > 1]
        if not open_cells:
            where = {c2[w]: w for w in range(n)}
            perm = [where[c1[v]] for v in range(n)]
            return perm if C1.permute(perm) == C2 else None
        cell = min(open_cells, key=lambda c: (len(c), c[0]))
        v = cell[0]
        colour = c1[v]
        fresh = max(c1) + 1
        for w in range(n):
            if c2[w] != colour:
                continue
            d1, d2 = list(c1), list(c2)
            d1[v] = fresh
            d2[w] = fresh
            found = rec(d1, d2)
            if found is not None:
                return found
        return None

    return rec(list(g1.colors), list(g2.colors))


@dataclass
class EquivalenceClassSet:
    representatives: list[LinearCode] = field(default_factory=list)
    fingerprints: list[tuple] = field(default_factory=list)
    sizes: list[int] = field(default_factory=list)

    def add(self, C: LinearCode) -> tuple[int, bool]:
        """Insert ``C``; return its class index and whether the class is new."""
        fp = fingerprint(C)
        for i, (rep, rfp) in enumerate(zip(self.representatives, self.fingerprints)):
            if rfp == fp and are_equivalent(rep, C) is not None:
                self.sizes[i] += 1
                return i, False
        self.representatives.append(C)
        self.fingerprints.append(fp)
        self.sizes.append(1)
        return len(self.representatives) - 1, True

    def __len__(self) -> int:
        return len(self.representatives)

    def __iter__(self):
        return iter(self.representatives)


# -- exhaustive search ----------------------------------------------------------


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for :func:`search_all`.

    ``normalize_first_row`` restricts the first non-hull row of the appended
    block to ``1..10..0`` patterns.  ``sort_columns`` goes further and keeps
    only blocks whose columns are in descending lexicographic order (row
    order = significance); both are column-permutation symmetry reductions.
    """

    m: int | None = None
    normalize_first_row: bool = True
    sort_columns: bool = False
    max_solutions: int | None = None
    thread_partition_depth: int = 1
    threads: int = 1


@dataclass
class SearchResult:
    classes: EquivalenceClassSet
    blocks: list[BinaryMatrix]
    generator: BinaryMatrix
    m: int
    leaves: int
    distinct_blocks: int

    def __len__(self) -> int:
        return len(self.classes)


def _candidates(rows, gram_rows, chosen, i, m, first, cfg_norm, tied):
    ones = (1 << m) - 1
    gi = rows[i]
    space = solve_affine_rows(
        list(chosen) + [ones],
        [parity(rows[j] & gi) for j in range(len(chosen))] + [parity(gi)],
        m,
    )
    if space is None:
        return []
    out = []
    for v in space:
        if first and cfg_norm and v & (v + 1):
            continue  # ones must be a prefix
        if tied is not None and (~v & (v >> 1)) & tied:
            continue
        out.append(v)
    return out


def _block_key(block: Sequence[int], m: int) -> tuple[int, ...]:
    cols = [0] * m
    for i, r in enumerate(block):
        for j in range(m):
            if (r >> j) & 1:
                cols[j] |= 1 << i
    return tuple(sorted(cols))


def _subtree(args) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]], int]:
    """Enumerate completions of a partial block; returns (keys, blocks, leaves)."""
    rows, gram_bits, prefix, m, norm, sort_cols, cap = args
    t = len(rows)
    ones_pairs = (1 << max(m - 1, 0)) - 1
    keys: list[tuple[int, ...]] = []
    blocks: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    leaves = 0
    chosen = list(prefix)

    tied0 = ones_pairs if sort_cols else None
    if sort_cols:
        for v in prefix:
            tied0 &= ~(v ^ (v >> 1))

    def rec(i: int, tied) -> bool:
        nonlocal leaves
        if i == t:
            for a in range(t):
                for b in range(a, t):
                    if gram_bits[a][b] ^ parity(chosen[a] & chosen[b]):
                        raise AssertionError("leaf block is not self-orthogonal")
            leaves += 1
            key = _block_key(chosen, m)
            if key not in seen:
                seen.add(key)
                keys.append(key)
                blocks.append(tuple(chosen))
                if cap is not None and len(keys) >= cap:
                    return True
            return False
        for v in _candidates(rows, gram_bits, chosen, i, m, i == 0, norm, tied):
            chosen.append(v)
            nt = None if tied is None else tied & ~(v ^ (v >> 1))
            stop = rec(i + 1, nt)
            chosen.pop()
            if stop:
                return True
        return False

    rec(len(prefix), tied0)
    return keys, blocks, leaves


def _prefixes(rows, gram_bits, m, norm, sort_cols, depth) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    ones_pairs = (1 << max(m - 1, 0)) - 1

    def rec(chosen, tied):
        i = len(chosen)
        if i == depth:
            out.append(tuple(chosen))
            return
        for v in _candidates(rows, gram_bits, chosen, i, m, i == 0, norm, tied):
            rec(chosen + [v], None if tied is None else tied & ~(v ^ (v >> 1)))

    rec([], ones_pairs if sort_cols else None)
    return out


def search_all(C: LinearCode, cfg: SearchConfig = SearchConfig()) -> SearchResult:
    """All inequivalent SO embeddings ``[G | B]`` of ``C`` with ``cfg.m`` columns.

    Rows spanning the hull get a zero block row; the remaining rows are filled
    by backtracking over the affine candidate sets.  Blocks that agree up to a
    permutation of their columns are collapsed before the equivalence test.
    """
    m = shortest_length(C) if cfg.m is None else cfg.m
    dec = C.hull_decompose()
    gen = dec.generator()
    h = dec.hull_rows.nrows
    rows = list(dec.comp_rows.rows)
    t = len(rows)
    gram_bits = [[parity(rows[a] & rows[b]) for b in range(t)] for a in range(t)]

    if t == 0:
        prefixes = [()]
    else:
        depth = max(0, min(cfg.thread_partition_depth, t - 1))
        prefixes = _prefixes(rows, gram_bits, m, cfg.normalize_first_row, cfg.sort_columns, depth)
    jobs = [
        (rows, gram_bits, p, m, cfg.normalize_first_row, cfg.sort_columns, cfg.max_solutions)
        for p in prefixes
    ]
    if cfg.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            parts = list(pool.map(_subtree, jobs))
    else:
        parts = [_subtree(j) for j in jobs]

    seen: set[tuple[int, ...]] = set()
    found: list[tuple[int, ...]] = []
    leaves = 0
    for keys, blocks, n_leaves in parts:
        leaves += n_leaves
        for key, blk in zip(keys, blocks):
            if key in seen:
                continue
            seen.add(key)
            found.append(blk)
            if cfg.max_solutions is not None and len(found) >= cfg.max_solutions:
                break
        if cfg.max_solutions is not None and len(found) >= cfg.max_solutions:
            break

    codes = []
    for blk in found:
        B = BinaryMatrix([0] * h + list(blk), m)
        codes.append((B, LinearCode(gen.hstack(B))))
    order = sorted(range(len(codes)), key=lambda i: fingerprint(codes[i][1]))
    classes = EquivalenceClassSet()
    class_blocks: list[BinaryMatrix] = []
    for i in order:
        B, code = codes[i]
        _, new = classes.add(code)
        if new:
            class_blocks.append(B)
    return SearchResult(classes, class_blocks, gen, m, leaves, len(found))
