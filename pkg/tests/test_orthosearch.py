from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import naive_matmul, naive_rank
from soembed.codes import LinearCode, even_code, full_space, hamming
from soembed.errors import CapabilityError, DomainError
from soembed.fixtures import B_T, C_A_PERP, basis_b_h4, block_b_h5, hamming4_systematic, hamming5_systematic
from soembed.gf2 import BinaryMatrix, gram, mul, same_span
from soembed.orthosearch import (
    CosetRep,
    canonical_key,
    coset_representatives,
    embedding_from_block,
    orthogonal_group,
    orthogonal_group_order,
    orthonormalize,
    random_orthogonal,
    selfdual_basis_block,
    selfdual_embed_systematic,
    sweep_selfdual_embeddings,
    systematic_form,
)
from soembed.search import are_equivalent


def is_orthonormal(M: BinaryMatrix) -> bool:
    return gram(M) == BinaryMatrix.identity(M.nrows)


def brute_orthogonal(s: int) -> set[tuple[int, ...]]:
    """Column tuples of every s x s matrix with R R^T = I, by trying all 2^(s*s)."""
    out = set()
    for flat in range(1 << (s * s)):
        cols = [(flat >> (s * j)) & ((1 << s) - 1) for j in range(s)]
        R = BinaryMatrix.from_columns(cols, s)
        if mul(R, R.T) == BinaryMatrix.identity(s):
            out.add(tuple(cols))
    return out


class TestOrthonormalize:
    def test_single_odd_vector(self):
        M = BinaryMatrix.from_strings(["10110"])
        assert orthonormalize(M).vectors == M

    def test_hamming_dual_block(self):
        src = BinaryMatrix.from_strings(C_A_PERP)
        ob = orthonormalize(src)
        assert is_orthonormal(ob.vectors)
        assert same_span(ob.vectors.rows, BinaryMatrix.from_strings(B_T).rows)
        assert ob.source is src

    def test_hamming_dual_block_exact(self):
        # with lowest-index choices the output coincides with the stored block
        ob = orthonormalize(BinaryMatrix.from_strings(C_A_PERP))
        assert ob.vectors.to_strings() == B_T

    def test_even_pair_step(self):
        # b odd, u and v even, orthogonal to b, with u.v = 1
        M = BinaryMatrix.from_strings(["100000", "011000", "001100"])
        out = orthonormalize(M).vectors
        assert out.nrows == 3
        assert naive_matmul(out.to_lists(), out.T.to_lists()) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        assert same_span(out.rows, M.rows)

    def test_projection_against_merged_vector(self):
        # after the even-pair step the leftover vectors must also be projected
        # against the updated first vector
        rows = ["11101111", "11011001", "01110110", "10001011", "10011111", "10100000", "10011100"]
        M = BinaryMatrix.from_strings(rows)
        out = orthonormalize(M).vectors
        assert is_orthonormal(out) and same_span(out.rows, M.rows)

    def test_even_code_rejected(self):
        with pytest.raises(DomainError, match="odd"):
            orthonormalize(BinaryMatrix.from_strings(["1100", "0110"]))

    def test_non_lcd_rejected(self):
        with pytest.raises(DomainError, match="LCD"):
            orthonormalize(BinaryMatrix.from_strings(["100000", "011000", "000110"]))

    def test_dependent_rows_rejected(self):
        with pytest.raises(DomainError):
            orthonormalize(BinaryMatrix.from_strings(["100", "100"]))

    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, 2**32))
    def test_random_odd_lcd(self, seed):
        rng = random.Random(seed)
        n = rng.randint(2, 14)
        s = rng.randint(1, n)
        rows = [rng.getrandbits(n) for _ in range(s)]
        M = BinaryMatrix(rows, n)
        C = LinearCode.from_generator(M, allow_empty=True)
        if C.k != s or not C.is_lcd() or C.is_even():
            return
        out = orthonormalize(M).vectors
        assert is_orthonormal(out)
        assert same_span(out.rows, rows)


class TestOrthogonalGroup:
    def test_s1(self):
        mats = list(orthogonal_group(1))
        assert mats == [BinaryMatrix.identity(1)]
        assert orthogonal_group_order(1) == 1

    def test_s2(self):
        mats = list(orthogonal_group(2))
        assert len(mats) == 2 == orthogonal_group_order(2)
        assert BinaryMatrix.identity(2) in mats
        assert BinaryMatrix.from_strings(["01", "10"]) in mats

    @pytest.mark.parametrize("s", [1, 2, 3, 4])
    def test_matches_brute_force(self, s):
        expected = brute_orthogonal(s)
        got = [tuple(R.columns()) for R in orthogonal_group(s)]
        assert len(got) == len(set(got)) == len(expected) == orthogonal_group_order(s)
        assert set(got) == expected

    def test_members_orthogonal_both_sides(self):
        for R in orthogonal_group(5):
            I = BinaryMatrix.identity(5)
            assert mul(R, R.T) == I and mul(R.T, R) == I

    def test_deterministic_order(self):
        a = [R.columns() for R in orthogonal_group(4)]
        assert a == [R.columns() for R in orthogonal_group(4)]
        assert a == sorted(a)

    def test_partition_by_first_column(self):
        s = 5
        total = orthogonal_group_order(s)
        from soembed.orthosearch import first_columns

        assert sum(sum(1 for _ in orthogonal_group(s, first=f)) for f in first_columns(s)) == total

    def test_bound(self):
        with pytest.raises(CapabilityError):
            orthogonal_group_order(9)
        with pytest.raises(CapabilityError):
            coset_representatives(9)

    def test_random_orthogonal(self):
        rng = random.Random(3)
        for s in (1, 2, 7, 21):
            R = random_orthogonal(s, rng)
            assert mul(R, R.T) == BinaryMatrix.identity(s)


class TestCosets:
    @pytest.mark.parametrize("s,count", [(1, 1), (2, 1)])
    def test_small(self, s, count):
        assert len(coset_representatives(s)) == count

    @pytest.mark.parametrize("s", [1, 2, 3, 4, 5, 6])
    def test_orbit_sizes_sum_to_group_order(self, s):
        reps = coset_representatives(s)
        assert sum(r.orbit_size for r in reps) == orthogonal_group_order(s)
        assert len({r.canonical_key for r in reps}) == len(reps)

    def test_key_invariant_under_column_permutation(self):
        rng = random.Random(0)
        R = random_orthogonal(6, rng)
        cols = R.columns()
        for _ in range(20):
            rng.shuffle(cols)
            assert canonical_key(BinaryMatrix.from_columns(cols, 6)) == canonical_key(R)

    def test_representatives_are_orthogonal(self):
        for rep in coset_representatives(5):
            assert isinstance(rep, CosetRep)
            assert mul(rep.matrix, rep.matrix.T) == BinaryMatrix.identity(5)
            assert rep == CosetRep.from_matrix(rep.matrix)


def extended_hamming3() -> LinearCode:
    H = hamming(3)
    rows = [r | ((r.bit_count() % 2) << 7) for r in H.rows]
    return LinearCode(BinaryMatrix(rows, 8))


class TestSelfDualSystematic:
    def test_hamming3(self):
        E = selfdual_embed_systematic(hamming(3))
        assert (E.result.n, E.result.k, E.result.min_distance()) == (8, 4, 4)
        assert E.result.is_self_dual()
        assert are_equivalent(E.result, extended_hamming3()) is not None

    def test_hamming4_with_stored_block(self):
        H = hamming4_systematic()
        sf = systematic_form(H)
        E = embedding_from_block(H, sf, basis_b_h4())
        assert (E.result.n, E.result.k, E.result.min_distance()) == (22, 11, 4)
        assert E.result.is_self_dual()

    def test_full_space(self):
        E = selfdual_embed_systematic(full_space(4))
        assert E.appended == BinaryMatrix.identity(4)
        assert E.result.is_self_dual()

    def test_conditions_on_block(self):
        for C in (hamming(3), hamming(4), hamming(5)):
            sf, B = selfdual_basis_block(C)
            A = sf.A
            assert mul(A.T, A) == BinaryMatrix.identity(A.ncols)
            assert mul(A.T, B).is_zero()
            assert mul(B.T, B) == BinaryMatrix.identity(B.ncols)

    def test_systematic_columns_recorded(self):
        C = hamming(4).permute([14 - i for i in range(15)])
        sf = systematic_form(C)
        E = selfdual_embed_systematic(C)
        assert sorted(sf.order) == list(range(15))
        assert E.result.puncture(range(15, 22)) == C

    def test_hypothesis_violations(self):
        with pytest.raises(DomainError):
            selfdual_embed_systematic(even_code(6))
        with pytest.raises(DomainError):
            selfdual_embed_systematic(LinearCode.from_strings(["1000", "0100"]))


class TestSweep:
    def test_hamming3(self):
        res = sweep_selfdual_embeddings(hamming(3))
        assert res.tried == 1 and len(res) == 1
        assert res.classes[0].min_distance == 4

    def test_hamming5_seeded_sample(self):
        H5 = hamming5_systematic()
        _, B = selfdual_basis_block(H5)
        R = mul(B.T, block_b_h5())
        assert mul(R, R.T) == BinaryMatrix.identity(21)
        res = sweep_selfdual_embeddings(H5, sample=3, seeds=[R], rng=random.Random(1))
        assert res.tried == 4
        dists = [c.min_distance for c in res.classes]
        assert 8 in dists
        for c in res.classes:
            assert c.embedding.result.is_self_dual()
            assert c.embedding.result.n == 52

    def test_hamming5_is_the_standard_one(self):
        assert are_equivalent(hamming5_systematic(), hamming(5)) is not None


def test_naive_rank_of_group_elements():
    for R in itertools.islice(orthogonal_group(6), 50):
        assert naive_rank(R.to_lists()) == 6
