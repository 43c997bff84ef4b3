"""Exact linear algebra: oracles first, then algebraic laws."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradedtwist.exactmath import (
    QQ,
    Matrix,
    PrimeField,
    SingularMatrixError,
    block_matrix,
    column_echelon,
    hstack,
    inverse,
    kernel_basis,
    kernel_matrix,
    kron,
    mat_mul,
    rank,
    rref,
    solve,
    try_inverse,
    vstack,
)

F7 = PrimeField(7)
F5 = PrimeField(5)


def naive_mat_mul(a, b):
    """Entry-by-entry triple loop, the independent multiplication oracle."""
    assert a.cols == b.rows
    out = []
    for i in range(a.rows):
        for j in range(b.cols):
            acc = a.field.zero
            for k in range(a.cols):
                acc = a.field.add(acc, a.field.mul(a[i, k], b[k, j]))
            out.append(acc)
    return Matrix(a.rows, b.cols, a.field, out)


def random_matrix(rng, rows, cols, field):
    if field == QQ:
        entries = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(rows * cols)]
    else:
        entries = [rng.randrange(field.p) for _ in range(rows * cols)]
    return Matrix(rows, cols, field, entries)


class TestMatMul:
    def test_identity_case(self):
        rng = random.Random(11)
        m = random_matrix(rng, 3, 4, QQ)
        assert mat_mul(Matrix.identity(3, QQ), m) == m

    def test_diagonal_arithmetic(self):
        a = Matrix.from_rows([[Fraction(1, 2), 0], [0, 2]], QQ)
        b = Matrix.from_rows([[2], [Fraction(1, 2)]], QQ)
        assert a @ b == Matrix.from_rows([[1], [1]], QQ)

    def test_matches_triple_loop_oracle_over_f7(self):
        rng = random.Random(20260823)
        for _ in range(25):
            a = random_matrix(rng, 4, 3, F7)
            b = random_matrix(rng, 3, 5, F7)
            assert mat_mul(a, b) == naive_mat_mul(a, b)

    def test_zero_dimensional_product(self):
        a = Matrix.zeros(3, 0, QQ)
        b = Matrix.zeros(0, 2, QQ)
        assert a @ b == Matrix.zeros(3, 2, QQ)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            mat_mul(Matrix.identity(2, QQ), Matrix.identity(3, QQ))

    def test_field_mismatch(self):
        with pytest.raises(ValueError):
            mat_mul(Matrix.identity(2, QQ), Matrix.identity(2, F7))


class TestKron:
    def test_identity(self):
        assert kron(Matrix.identity(2, QQ), Matrix.identity(3, QQ)) == Matrix.identity(6, QQ)

    def test_zero_object(self):
        f = Matrix.from_rows([[1, 2], [3, 4]], QQ)
        empty = Matrix.zeros(0, 0, QQ)
        assert kron(f, empty) == Matrix.zeros(0, 0, QQ)

    def test_hand_expansion(self):
        # kron([[2]], [[0,1],[1,0]]) expands to [[0,2],[2,0]]
        f = Matrix.from_rows([[2]], QQ)
        g = Matrix.from_rows([[0, 1], [1, 0]], QQ)
        assert kron(f, g) == Matrix.from_rows([[0, 2], [2, 0]], QQ)

    def test_index_convention(self):
        # entry[i*n' + j, k*n + l] = f[i,k] g[j,l] checked on a rectangular pair
        rng = random.Random(7)
        f = random_matrix(rng, 2, 3, F7)
        g = random_matrix(rng, 4, 2, F7)
        k = kron(f, g)
        assert (k.rows, k.cols) == (8, 6)
        for i in range(2):
            for kk in range(3):
                for j in range(4):
                    for l in range(2):
                        assert k[i * 4 + j, kk * 2 + l] == F7.mul(f[i, kk], g[j, l])


class TestKernel:
    def test_injective_map_has_empty_kernel(self):
        assert kernel_basis(Matrix.identity(4, QQ)) == []

    def test_zero_matrix_kernel_is_standard_basis(self):
        k = kernel_matrix(Matrix.zeros(2, 3, QQ))
        assert k == Matrix.identity(3, QQ)

    def test_one_equation(self):
        [v] = kernel_basis(Matrix.from_rows([[1, 1]], QQ))
        assert v == Matrix.column([1, -1], QQ)

    def test_canonical_across_presentations(self):
        # same row space written two ways must give identical kernel bases
        a = Matrix.from_rows([[1, 2, 3], [0, 1, 1]], QQ)
        b = Matrix.from_rows([[2, 5, 7], [1, 3, 4], [3, 8, 11]], QQ)
        assert kernel_matrix(a) == kernel_matrix(b)

    def test_kernel_of_prime_field_matrix(self):
        m = Matrix.from_rows([[1, 3], [2, 6]], F7)
        k = kernel_matrix(m)
        assert k.cols == 1
        assert (m @ k).is_zero()


class TestInverse:
    def test_identity(self):
        assert inverse(Matrix.identity(3, QQ)) == Matrix.identity(3, QQ)

    def test_involution(self):
        swap = Matrix.from_rows([[0, 1], [1, 0]], QQ)
        assert inverse(swap) == swap

    def test_multiply_back_random(self):
        rng = random.Random(5)
        found = 0
        while found < 10:
            m = random_matrix(rng, 5, 5, QQ)
            mi = try_inverse(m)
            if mi is None:
                continue
            found += 1
            assert m @ mi == Matrix.identity(5, QQ)
            assert mi @ m == Matrix.identity(5, QQ)

    def test_singular_raises(self):
        with pytest.raises(SingularMatrixError):
            inverse(Matrix.zeros(2, 2, QQ))
        assert try_inverse(Matrix.zeros(2, 2, QQ)) is None

    def test_empty_matrix_is_invertible(self):
        e = Matrix.zeros(0, 0, QQ)
        assert inverse(e) == e


class TestSolve:
    def test_coordinates_in_a_basis(self):
        basis = Matrix.from_rows([[1, 0], [1, 1], [0, 2]], QQ)
        target = basis @ Matrix.column([3, -2], QQ)
        assert solve(basis, target) == Matrix.column([3, -2], QQ)

    def test_inconsistent(self):
        basis = Matrix.from_rows([[1], [0]], QQ)
        with pytest.raises(ValueError):
            solve(basis, Matrix.column([0, 1], QQ))


class TestStacking:
    def test_hstack_vstack_roundtrip(self):
        a = Matrix.from_rows([[1, 2], [3, 4]], QQ)
        b = Matrix.from_rows([[5], [6]], QQ)
        h = hstack([a, b])
        assert h == Matrix.from_rows([[1, 2, 5], [3, 4, 6]], QQ)
        v = vstack([a, Matrix.from_rows([[7, 8]], QQ)])
        assert v == Matrix.from_rows([[1, 2], [3, 4], [7, 8]], QQ)

    def test_block_matrix_with_empty_blocks(self):
        blocks = {(0, 0): Matrix.identity(2, QQ), (1, 1): Matrix.from_rows([[5]], QQ)}
        m = block_matrix([2, 1], [2, 1], blocks, QQ)
        assert m == Matrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 5]], QQ)
        # zero-size blocks collapse silently
        m2 = block_matrix([2, 0], [0, 2], {(0, 1): Matrix.identity(2, QQ)}, QQ)
        assert m2 == Matrix.identity(2, QQ)


# ---------------------------------------------------------------------------
# property tests

def matrices(field, max_dim=3, min_dim=0):
    if field == QQ:
        scalars = st.fractions(min_value=-20, max_value=20, max_denominator=8)
    else:
        scalars = st.integers(min_value=0, max_value=field.p - 1)
    dims = st.integers(min_value=min_dim, max_value=max_dim)

    def build(rows, cols):
        return st.lists(scalars, min_size=rows * cols, max_size=rows * cols).map(
            lambda entries: Matrix(rows, cols, field, entries)
        )

    return st.tuples(dims, dims).flatmap(lambda rc: build(*rc))


def matrix_chain(field, length, max_dim=3):
    """Chains of composable matrices with shared inner dimensions."""
    dims = st.lists(
        st.integers(min_value=0, max_value=max_dim), min_size=length + 1, max_size=length + 1
    )
    if field == QQ:
        scalars = st.fractions(min_value=-10, max_value=10, max_denominator=5)
    else:
        scalars = st.integers(min_value=0, max_value=field.p - 1)

    def build(shape):
        mats = []
        for i in range(length):
            r, c = shape[i], shape[i + 1]
            mats.append(
                st.lists(scalars, min_size=r * c, max_size=r * c).map(
                    lambda entries, r=r, c=c: Matrix(r, c, field, entries)
                )
            )
        return st.tuples(*mats)

    return dims.flatmap(build)


@settings(max_examples=60, deadline=None)
@given(matrix_chain(QQ, 3))
def test_mat_mul_associative(chain):
    a, b, c = chain
    assert (a @ b) @ c == a @ (b @ c)


@settings(max_examples=60, deadline=None)
@given(matrix_chain(F7, 2), matrix_chain(F7, 2))
def test_kron_functorial(left, right):
    a, c = left
    b, d = right
    assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)


@settings(max_examples=80, deadline=None)
@given(matrices(F5, max_dim=4))
def test_rank_nullity_and_kernel_membership(m):
    k = kernel_matrix(m)
    assert rank(m) + k.cols == m.cols
    if k.cols:
        assert (m @ k).is_zero()


@settings(max_examples=60, deadline=None)
@given(matrices(QQ))
def test_column_echelon_idempotent(m):
    ce = column_echelon(m)
    assert column_echelon(ce) == ce


@settings(max_examples=60, deadline=None)
@given(matrices(F7, max_dim=4))
def test_rref_pivots_are_clean(m):
    r, pivots = rref(m)
    for row_index, p in enumerate(pivots):
        assert r[row_index, p] == 1
        for other in range(m.rows):
            if other != row_index:
                assert r[other, p] == 0


@settings(max_examples=80, deadline=None)
@given(st.fractions(min_value=-(10**6), max_value=10**6, max_denominator=10**6))
def test_rational_scalar_string_roundtrip(x):
    assert QQ.parse(QQ.format(x)) == x


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=6))
def test_prime_scalar_string_roundtrip(x):
    out = F7.format(x)
    assert out.endswith(" mod 7")
    assert F7.parse(out) == x


def test_prime_field_needs_prime():
    with pytest.raises(ValueError):
        PrimeField(6)


def test_field_inverse():
    assert F7.inv(3) == 5
    assert QQ.inv(Fraction(-3, 4)) == Fraction(-4, 3)
    with pytest.raises(ZeroDivisionError):
        F7.inv(0)
