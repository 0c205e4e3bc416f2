import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix as SMatrix, Rational

from braidlab.exactalg import (ONE, ZERO, Cyclotomic, Matrix, Subspace, as_phase, intersect, kernel_basis, rank,
                               root_of_unity, rref, scalar_str, solve_affine, subspace_sum, to_scalar, zeta)

small = st.integers(-3, 3)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = [[to_scalar(draw(small)) for _ in range(c)] for _ in range(r)]
    return Matrix(r, c, rows)


def _sympy(m: Matrix):
    return SMatrix([[Rational(int(x.numerator), int(x.denominator)) for x in row] for row in m.rows])


@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + kernel_basis(m).dim == m.ncols


@given(matrices())
def test_rank_matches_sympy(m):
    # independent elimination
    assert rank(m) == _sympy(m).rank()


@given(matrices())
def test_kernel_vectors_are_killed(m):
    for v in kernel_basis(m).basis:
        assert not any(m.apply(v))


@given(matrices(), st.randoms(use_true_random=False))
def test_rref_is_canonical(m, rnd):
    # row operations (permute + combine) do not change the reduced form
    rows = [list(r) for r in m.rows]
    rnd.shuffle(rows)
    if len(rows) > 1:
        rows[0] = [a + 2 * b for a, b in zip(rows[0], rows[1])]
    r1, p1 = rref(m)
    r2, p2 = rref(Matrix(m.nrows, m.ncols, rows))
    assert p1 == p2
    assert [r for r in r1.rows if any(r)] == [r for r in r2.rows if any(r)]


@given(matrices())
def test_kernel_basis_is_rref(m):
    k = kernel_basis(m)
    assert Subspace.span(k.basis, m.ncols).basis == k.basis


@given(matrices(4, 4), matrices(4, 4))
def test_intersection_dimension_formula(a, b):
    n = min(a.ncols, b.ncols)
    A = Subspace.span([r[:n] for r in a.rows], n)
    B = Subspace.span([r[:n] for r in b.rows], n)
    assert subspace_sum(A, B).dim + intersect(A, B).dim == A.dim + B.dim
    I = intersect(A, B)
    assert A.contains_subspace(I) and B.contains_subspace(I)


@given(matrices(), st.lists(small, min_size=5, max_size=5))
def test_solve_affine(m, x):
    x = [to_scalar(t) for t in x[: m.ncols]]
    rhs = m.apply(x)
    sol = solve_affine(m, rhs)
    assert sol is not None
    assert m.apply(list(sol.particular)) == rhs
    assert sol.kernel.dim == m.ncols - rank(m)


def test_solve_affine_inconsistent():
    m = Matrix.from_rows([[1, 1], [2, 2]])
    assert solve_affine(m, [1, 3]) is None


def test_kron_shape_and_entries():
    a = Matrix.from_rows([[1, 2], [0, 1]])
    b = Matrix.from_rows([[0, 1], [1, 0]])
    k = a.kron(b)
    assert k.shape == (4, 4)
    assert k[0, 3] == 2 and k[1, 2] == 2 and k[2, 3] == 1


# --- cyclotomic scalars


@pytest.mark.parametrize("m", [3, 4, 5, 6, 7, 8, 9, 12, 15])
def test_root_of_unity_order(m):
    z = zeta(m)
    assert isinstance(z, Cyclotomic)
    assert z ** m == ONE
    assert all(z ** k != ONE for k in range(1, m))


@pytest.mark.parametrize("m", [3, 4, 5, 6, 8, 12])
def test_sum_of_primitive_powers_is_mobius(m):
    from math import gcd
    from sympy import mobius

    s = sum((zeta(m, k) for k in range(m) if gcd(k, m) == 1), ZERO)
    assert s == int(mobius(m))


@given(st.integers(1, 12), st.integers(-20, 20), st.integers(1, 12), st.integers(-20, 20))
def test_field_ops_agree_with_complex(m1, k1, m2, k2):
    a = zeta(m1, k1) + 2
    b = zeta(m2, k2) * to_scalar(Fraction(1, 3)) - 1
    ca = cmath.exp(2j * cmath.pi * k1 / m1) + 2
    cb = cmath.exp(2j * cmath.pi * k2 / m2) / 3 - 1

    def c(x):
        return x.to_complex() if isinstance(x, Cyclotomic) else complex(float(x))

    assert abs(c(a * b) - ca * cb) < 1e-9
    assert abs(c(a + b) - (ca + cb)) < 1e-9
    if b:
        assert abs(c(a / b) - ca / cb) < 1e-9


@given(st.integers(1, 30), st.integers(0, 60))
def test_embedding_equality_and_hash(m, k):
    # zeta(m)^k written in a bigger field is the same number
    a = zeta(m, k)
    b = zeta(2 * m, 2 * k)
    assert a == b and hash(a) == hash(b)


@given(st.fractions(min_value=0, max_value=1, max_denominator=24))
def test_phase_round_trip(r):
    r = Fraction(r) % 1
    assert as_phase(root_of_unity(r)) == r


def test_non_root_has_no_phase():
    assert as_phase(to_scalar(2)) is None
    assert as_phase(zeta(5) + 1) is None


def test_inverse():
    x = zeta(7, 2) + zeta(7, 3) - 5
    assert x * x.inverse() == ONE


def test_scalar_str():
    assert scalar_str(to_scalar(Fraction(-1, 2))) == "-1/2"
    assert scalar_str(zeta(3)) == "zeta(3)"
    assert scalar_str(zeta(3) + to_scalar(Fraction(1, 2))) == "1/2+zeta(3)"
    assert scalar_str(zeta(4, 3)) == "-zeta(4)"


@settings(max_examples=30)
@given(st.integers(2, 6), st.lists(st.integers(-2, 2), min_size=4, max_size=4))
def test_rank_over_cyclotomic_field(m, cs):
    # rows (1, z) and (z^{-1}, 1) are proportional, plus an independent row
    z = zeta(m)
    rows = [[ONE, z, to_scalar(cs[0])], [z ** -1, ONE, to_scalar(cs[0]) * z ** -1], [ZERO, ZERO, ONE]]
    assert rank(Matrix(3, 3, rows)) == 2
