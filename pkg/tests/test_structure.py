import pytest

from braidlab.hopf import free_algebra, nichols_component, nichols_quotient
from braidlab.specfile import builtin_space
from braidlab.structure import (associated_graded, bigraded_dims, primitive_filtration, primitive_space,
                                primitive_tower, verify_pbw, verify_perfect_structure)


def test_filtration_zeta3():
    A = free_algebra(builtin_space("zeta3"), 5)
    F = primitive_filtration(A)
    table = [[F.layer(p, q).dim for q in range(6)] for p in range(4)]
    # x^3 is primitive, so it already sits in F_1; F_2 fills every degree up to 4
    assert table == [[1, 0, 0, 0, 0, 0], [1, 1, 0, 1, 0, 0], [1, 1, 1, 1, 1, 0], [1, 1, 1, 1, 1, 1]]
    assert F.layer(2, 3).dim == A.dim(3)


def test_stage_one_generators_zeta3():
    A = free_algebra(builtin_space("zeta3"), 5)
    W = primitive_space(A).space
    assert W.weights == [1, 3]
    st = associated_graded(A)
    assert all(st.checks.values())
    assert bigraded_dims(A) == {(q, q): 1 for q in range(6)}


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_pbw_zeta(n):
    rep = verify_pbw(free_algebra(builtin_space(f"zeta{n}"), n + 2))
    assert rep.passed, rep.failures
    assert rep.diagonal == [1] * n + [0] * 3
    assert rep.primitive_dims == rep.indecomposable_dims
    assert rep.primitive_dims == [0, 1] + [0] * (n - 2) + [1, 0, 0]


def test_pbw_zeta3_infinity_frozen():
    rep = verify_pbw(free_algebra(builtin_space("zeta3"), 5))
    inf = {k: v for k, v in rep.tower.infinity.items() if v}
    assert inf == {(0, 0): 1, (1, 1): 1, (1, 3): 1, (2, 2): 1, (2, 4): 1, (3, 5): 1}


def test_pbw_symmetric():
    rep = verify_pbw(free_algebra(builtin_space("symmetric-swap"), 5))
    assert rep.passed
    # symmetric algebra dims on the diagonal, primitives = free Lie algebra in the top stage
    assert rep.diagonal == [1, 2, 3, 4, 5, 6]
    assert rep.primitive_dims == rep.indecomposable_dims == [0, 2, 1, 2, 3, 6]


def test_nichols_input_is_a_fixed_point():
    B = nichols_quotient(builtin_space("s3-fk"), 4)
    tower = primitive_tower(B)
    assert all(d == tower.bigraded[0] for d in tower.bigraded)
    assert verify_pbw(B).passed


def test_pbw_rack_tower_matches_nichols():
    V = builtin_space("s3-fk")
    rep = verify_pbw(free_algebra(V, 4))
    assert rep.passed
    assert rep.diagonal == [1] + [nichols_component(V, q).dim for q in range(1, 5)]


def test_perfect_structure_plain_rack():
    rep = verify_perfect_structure(free_algebra(builtin_space("s3-rack"), 5))
    assert rep.passed, rep.failures
    assert rep.primitive_dims == [0, 3, 0, 0, 2, 6]
    assert rep.generator_dims == [0, 3, 0, 0, 0, 0]
    assert rep.decomposable_dims == [0, 0, 0, 0, 2, 6]
    assert rep.tower_kernel_dims == [0, 0, 0, 0, 2, 18]
    assert rep.woronowicz_dims == [0, 3, 0, 0, 2, 18]


def test_perfect_structure_nichols_input():
    rep = verify_perfect_structure(nichols_quotient(builtin_space("symmetric-swap"), 4))
    assert rep.passed
    assert rep.decomposable_dims == [0] * 5 and rep.tower_kernel_dims == [0] * 5
