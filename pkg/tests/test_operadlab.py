from fractions import Fraction

import pytest

from braidlab.braids import BraidWord, FormalBraidSum, symmetrizer_sum
from braidlab.exactalg import ONE, Subspace, kernel_basis
from braidlab.fingroup import (GroupAlgebraElement, MonomialMatrix, antipode, braid_quotient, cyclic_quotient,
                               eval_sum, left_mult_matrix, symmetric_quotient)
from braidlab.operadlab import (NotRightIdealError, brprim_level, cabled_bracket, element_report,
                                garsia_idempotent, garsia_solution_dimension, operad_level, solve_factor,
                                symmetrization_table, verify_idempotent, verify_not_right_ideal, woronowicz_level)
from braidlab.specfile import builtin_space
from braidlab.ydspace import image_group

# regression values produced by the Maschke + affine-solve route and independently checked for
# idempotence, antipode symmetry and generation
G3 = {"()": "1/3", "(1 2)": "-1/6", "(2 3)": "-1/6", "(1 2 3)": "-1/6", "(1 3 2)": "-1/6", "(1 3)": "1/3"}
H3 = {"()": "5/6", "(1 2)": "-1/6", "(2 3)": "-1/6", "(1 2 3)": "-1/6", "(1 3 2)": "-1/6", "(1 3)": "-1/6"}


def test_symmetrization_table():
    assert symmetrization_table(4) == [(2, 1, 1, 1, 1), (3, 2, 5, 2, 5), (4, 6, 23, 6, 23)]


def test_level_checks_and_n2_equality():
    for n in (2, 3):
        lvl = operad_level(symmetric_quotient(n))
        assert all(lvl.check().values())
    q = symmetric_quotient(2)
    assert brprim_level(q) == woronowicz_level(q)


def test_trivial_quotient_level_is_zero():
    q = braid_quotient(2, [MonomialMatrix.identity(1)])
    assert brprim_level(q).dim == 0


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_norm_bracket_spans_brprim2(n):
    q = cyclic_quotient(2 * n)
    I = brprim_level(q)
    from braidlab.braids import norm_bracket_sum

    b = eval_sum(norm_bracket_sum(n), q)
    assert I.dim == 1 and I.contains(b.vector())
    # b is its own symmetric idempotent generator
    assert garsia_idempotent(I, q.group) == b


def test_garsia_z2():
    q = cyclic_quotient(2)
    e = garsia_idempotent(brprim_level(q), q.group)
    assert element_report(e) == {"()": "1/2", "(1 2)": "-1/2"}


def test_garsia_zero_ideal():
    q = symmetric_quotient(3)
    assert garsia_idempotent(Subspace.zero(6), q.group).is_zero()


def test_garsia_s3_values():
    q = symmetric_quotient(3)
    g = garsia_idempotent(brprim_level(q), q.group)
    h = garsia_idempotent(woronowicz_level(q), q.group)
    assert element_report(g) == G3
    assert element_report(h) == H3
    assert g != h


@pytest.mark.parametrize("n", [2, 3, 4])
def test_garsia_unique_and_verified(n):
    q = symmetric_quotient(n)
    for I in (brprim_level(q), woronowicz_level(q)):
        e = garsia_idempotent(I, q.group)
        assert all(verify_idempotent(e, I).values())
        assert garsia_solution_dimension(I, q.group) == 0
        assert e * e == e and antipode(e) == e


def test_woronowicz_idempotent_formula():
    # over S_n the Woronowicz level is the augmentation-type complement of the integral
    for n in (2, 3, 4):
        q = symmetric_quotient(n)
        h = garsia_idempotent(woronowicz_level(q), q.group)
        integral = GroupAlgebraElement.integral(q.group).scale(ONE / q.group.order)
        assert h == GroupAlgebraElement.delta(q.group, q.group.identity) - integral


def test_not_a_right_ideal():
    q = symmetric_quotient(3)
    # the span of the identity is not closed under right multiplication
    line = Subspace.span([GroupAlgebraElement.delta(q.group, 0).vector()], 6)
    with pytest.raises(NotRightIdealError):
        garsia_idempotent(line, q.group)


def test_solve_factor():
    q = symmetric_quotient(3)
    g = garsia_idempotent(brprim_level(q), q.group)
    h = garsia_idempotent(woronowicz_level(q), q.group)
    sol = solve_factor(g, h)
    assert sol is not None and sol.particular * h == g
    # the left annihilator of h is spanned by the integral: one free direction
    assert sol.kernel_dim == 1


def test_counterexample_vectors():
    V = builtin_space("s3-rack")
    rep = verify_not_right_ideal(V)
    s = rep.as_strings()
    assert s["intermediate"] == "1/4*xxy + -1/4*yxx + -1/4*yzz + 1/4*zzy"
    assert s["symmetrized"] == "1/2*xyz + -1/2*xzx + -1/2*zxz + 1/2*zyx"
    assert s["verdict"] == "NONZERO"
    assert rep.period == 4
    assert rep.control == {} and rep.control_period == 6
    q = Fraction(1, 4)
    assert {V.word_str(w): c for w, c in rep.intermediate.items()} == {
        "xxy": q, "yzz": -q, "zzy": q, "yxx": -q}


def test_cabled_bracket_is_in_brprim3_fails_in_w3():
    # b o_1 mu is not killed by S_3 in the image group acting on V^{(x)3}
    V = builtin_space("s3-rack")
    q = image_group(V, 3)
    e = eval_sum(cabled_bracket(2), q)
    S3 = eval_sum(symmetrizer_sum(3), q)
    assert not (S3 * e).is_zero()
    assert not woronowicz_level(q).contains(e.vector())


def test_sign_cocycle_kills_the_counterexample():
    rep = verify_not_right_ideal(builtin_space("s3-fk"))
    assert not rep.nonzero


def test_brprim_kernel_definition():
    q = symmetric_quotient(3)
    one_plus = eval_sum(FormalBraidSum.build(2, [(1, BraidWord.unit(2)), (1, BraidWord(2, ((1, 1),)))]),
                        symmetric_quotient(2))
    assert kernel_basis(left_mult_matrix(one_plus)).dim == 1
    assert brprim_level(q).dim == 2
