import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grasscohom.linalg import (
    bareiss_determinant,
    clear_denominators,
    cokernel_is_free,
    has_full_column_rank,
    integer_rref,
    normalize_row,
    rank_exact,
    rank_lower_bound_certified,
    rank_mod_prime,
    rank_mod_prime_dense,
    row_content,
    smith_invariant_factors_all_one,
    unit_echelon,
)


def dense_to_rows(mat):
    return [{j: v for j, v in enumerate(row) if v} for row in mat]


def fraction_rank(mat, ncols):
    """Plain Gaussian elimination over Fraction, the reference rank."""
    work = [[Fraction(v) for v in row] for row in mat]
    rank = 0
    col = 0
    nrows = len(work)
    while rank < nrows and col < ncols:
        piv = next((r for r in range(rank, nrows) if work[r][col]), None)
        if piv is None:
            col += 1
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = 1 / work[rank][col]
        work[rank] = [v * inv for v in work[rank]]
        for r in range(nrows):
            if r != rank and work[r][col]:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], work[rank])]
        rank += 1
        col += 1
    return rank


small_mats = st.lists(
    st.lists(st.integers(-9, 9), min_size=4, max_size=4),
    min_size=1, max_size=6)


def test_row_helpers():
    assert row_content({0: 6, 3: -9}) == 3
    assert row_content({}) == 0
    assert normalize_row({2: -4, 5: -6}) == {2: 2, 5: 3}
    assert normalize_row({1: 3, 2: -6}) == {1: 1, 2: -2}
    row, denom = clear_denominators({0: Fraction(1, 2), 1: Fraction(2, 3)})
    assert denom == 6 and row == {0: 3, 1: 4}


def test_integer_rref_identity():
    pivots, free = integer_rref(dense_to_rows([[1, 0], [0, 1]]), 2)
    assert set(pivots) == {0, 1} and free == []
    assert pivots[0] == {} and pivots[1] == {}


def test_integer_rref_expresses_pivots_in_free_columns():
    # x0 + 2 x2 = 0 and x1 - x2 = 0: pivots 0,1; stored row gives
    # pivot = sum(coeff * free), sign folded in
    rows = dense_to_rows([[1, 0, 2], [0, 1, -1]])
    pivots, free = integer_rref(rows, 3)
    assert free == [2]
    assert pivots[0] == {2: Fraction(-2)}
    assert pivots[1] == {2: Fraction(1)}


@settings(max_examples=50, deadline=None)
@given(small_mats)
def test_rank_paths_agree(mat):
    rows = dense_to_rows(mat)
    expected = fraction_rank(mat, 4)
    assert rank_exact([dict(r) for r in rows], 4) == expected
    assert len(integer_rref([dict(r) for r in rows], 4)[0]) == expected
    # mod-p ranks never exceed the rational rank and certification matches
    assert rank_mod_prime([dict(r) for r in rows], 4) <= expected
    assert rank_mod_prime_dense([dict(r) for r in rows], 4) <= expected
    assert rank_lower_bound_certified([dict(r) for r in rows], 4, expected)
    assert not rank_lower_bound_certified([dict(r) for r in rows], 4, expected + 1)


def test_full_column_rank():
    assert has_full_column_rank(dense_to_rows([[2, 0], [0, 3], [1, 1]]), 2)
    assert not has_full_column_rank(dense_to_rows([[1, 2], [2, 4]]), 2)


def test_bareiss_determinant_known():
    assert bareiss_determinant([[2, 1], [1, 1]]) == 1
    assert bareiss_determinant([[1, 2], [3, 4]]) == -2
    assert bareiss_determinant([[0, 1], [1, 0]]) == -1
    assert bareiss_determinant([[3]]) == 3
    assert bareiss_determinant([[1, 2], [2, 4]]) == 0


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3),
                min_size=3, max_size=3))
def test_bareiss_matches_fraction_elimination(mat):
    # reference: product of pivots from fraction-based elimination
    work = [[Fraction(v) for v in row] for row in mat]
    det = Fraction(1)
    for col in range(3):
        piv = next((r for r in range(col, 3) if work[r][col]), None)
        if piv is None:
            det = Fraction(0)
            break
        if piv != col:
            work[col], work[piv] = work[piv], work[col]
            det = -det
        det *= work[col][col]
        inv = 1 / work[col][col]
        for r in range(col + 1, 3):
            f = work[r][col] * inv
            work[r] = [a - f * b for a, b in zip(work[r], work[col])]
    assert bareiss_determinant(mat) == det


# -- Smith / freeness certificates --------------------------------------


def test_smith_all_one_basics():
    assert smith_invariant_factors_all_one(dense_to_rows([[1, 0], [0, 1]]), 2, 2)
    assert not smith_invariant_factors_all_one(dense_to_rows([[2]]), 1, 1)
    # diag(2,3): invariant factors (1,6)
    assert not smith_invariant_factors_all_one(dense_to_rows([[2, 0], [0, 3]]), 2, 2)
    assert smith_invariant_factors_all_one(dense_to_rows([[2, 1], [1, 1]]), 2, 2)


def test_unit_echelon_extracts_unit_staircase():
    rows = dense_to_rows([[1, 2, 0], [0, 2, 0], [0, 0, -1]])
    echelon, parked = unit_echelon([dict(r) for r in rows], stop=3)
    assert set(echelon) == {0, 2}
    assert len(parked) == 1 and 1 in parked[0]


def test_cokernel_free_basics():
    assert cokernel_is_free(dense_to_rows([[1]]), 1, 1)
    assert not cokernel_is_free(dense_to_rows([[2]]), 1, 1)
    assert cokernel_is_free(dense_to_rows([[2, 1], [1, 1]]), 2, 2)
    assert not cokernel_is_free(dense_to_rows([[2, 0], [0, 2]]), 2, 2)
    # wide free case: extra dependent rows must not confuse it
    assert cokernel_is_free(dense_to_rows([[1, 0, 5], [0, 1, 7], [1, 1, 12]]), 3, 2)
    assert cokernel_is_free([], 3, 0)


def _random_unimodular(rng, n):
    mat = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        a, b = rng.sample(range(n), 2)
        f = rng.randint(-3, 3)
        mat[a] = [x + f * y for x, y in zip(mat[a], mat[b])]
    return mat


def _matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


@pytest.mark.parametrize("seed", range(6))
def test_cokernel_free_detects_planted_torsion(seed):
    rng = random.Random(seed)
    n = 4
    u = _random_unimodular(rng, n)
    v = _random_unimodular(rng, n)
    # free module: diag(1,1,1,1) conjugated stays free
    free = _matmul(_matmul(u, [[1 if i == j else 0 for j in range(n)]
                               for i in range(n)]), v)
    assert cokernel_is_free(dense_to_rows(free), n, n,
                            rng=random.Random(seed + 100))
    # plant one invariant factor 3
    diag = [[(3 if i == j == 2 else (1 if i == j else 0)) for j in range(n)]
            for i in range(n)]
    torsion = _matmul(_matmul(u, diag), v)
    assert not cokernel_is_free(dense_to_rows(torsion), n, n,
                                rng=random.Random(seed + 200))
    # dual check through the Smith route
    assert not smith_invariant_factors_all_one(dense_to_rows(torsion), n, n)


@pytest.mark.parametrize("seed", range(4))
def test_cokernel_free_on_random_full_rank_unimodular(seed):
    rng = random.Random(seed)
    n = 5
    mat = _random_unimodular(rng, n)
    rows = dense_to_rows(mat)
    assert abs(bareiss_determinant(mat)) == 1
    assert cokernel_is_free(rows, n, n, rng=random.Random(seed + 300))
