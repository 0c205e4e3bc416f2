import cmath
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st
from sympy.combinatorics import Permutation, PermutationGroup

from braidlab.braids import BraidWord, Perm, shuffle_sum, symmetrizer_sum
from braidlab.exactalg import ONE, Cyclotomic, Subspace, zeta
from braidlab.fingroup import MonomialMatrix, close_group, symmetric_quotient
from braidlab.specfile import builtin_names, builtin_space
from braidlab.ydspace import (TensorCapExceeded, YDError, YDSpace, apply_sum, braid_action, braiding_matrix,
                              diagonal_space, image_group, rack_space, sub_yd)

BUILTINS = builtin_names()


@pytest.mark.parametrize("name", BUILTINS)
def test_ybe_as_matrices(name):
    V = builtin_space(name)
    a = braid_action(V, 3, BraidWord.from_indices(3, [1, 2, 1]))
    b = braid_action(V, 3, BraidWord.from_indices(3, [2, 1, 2]))
    assert a == b
    V.check_ybe()


@pytest.mark.parametrize("name", BUILTINS)
def test_braiding_invertible(name):
    V = builtin_space(name)
    s = braid_action(V, 2, BraidWord(2, ((1, 1),)))
    si = braid_action(V, 2, BraidWord(2, ((1, -1),)))
    assert (s @ si) == braid_action(V, 2, BraidWord.unit(2))
    assert braiding_matrix(V) == s


@pytest.mark.parametrize("name", BUILTINS)
@pytest.mark.parametrize("n", [2, 3, 4])
def test_symmetrizer_factorization(name, n):
    V = builtin_space(name)
    Sn = apply_sum(V, n, symmetrizer_sum(n))
    for p in range(1, n):
        lhs = apply_sum(V, p, symmetrizer_sum(p)).kron(apply_sum(V, n - p, symmetrizer_sum(n - p)))
        assert Sn == lhs @ apply_sum(V, n, shuffle_sum(p, n - p))


def _complex(x):
    return x.to_complex() if isinstance(x, Cyclotomic) else complex(float(x))


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_q_factorial(m, n):
    # on the 1-dim space with q = zeta_m, S_n acts on x^n by the q-factorial
    V = builtin_space(f"zeta{m}")
    val = apply_sum(V, n, symmetrizer_sum(n))[0, 0]
    q = cmath.exp(2j * cmath.pi / m)
    fact = 1
    for k in range(1, n + 1):
        fact *= sum(q ** i for i in range(k))
    assert abs(_complex(val) - fact) < 1e-9


def _sympy_image_order(V, n):
    # signed permutation action on +/- basis words, as permutations of 2 * dim^n points
    words = list(product(range(V.dim), repeat=n))
    index = {w: i for i, w in enumerate(words)}
    N = len(words)
    order_of_phase = None
    gens = []
    for i in range(1, n):
        M = braid_action(V, n, BraidWord(n, ((i, 1),)))
        img = [0] * (2 * N)
        for j in range(N):
            r = [k for k in range(N) if M[k, j]]
            assert len(r) == 1
            c = M[r[0], j]
            if c == ONE:
                img[j], img[j + N] = r[0], r[0] + N
            elif c == -ONE:
                img[j], img[j + N] = r[0] + N, r[0]
            else:
                order_of_phase = c
        gens.append(Permutation(img))
    assert order_of_phase is None, "oracle handles signed monomials only"
    return PermutationGroup(gens).order(), index


@pytest.mark.parametrize("name,n,expected", [
    ("s3-rack", 2, 3), ("s3-rack", 3, 24), ("s3-fk", 2, 6), ("s3-fk", 3, 48),
    ("symmetric-swap", 3, 6), ("zeta2", 3, 2)])
def test_image_group_orders(name, n, expected):
    V = builtin_space(name)
    q = image_group(V, n)
    assert q.group.order == expected
    assert _sympy_image_order(V, n)[0] == expected
    q.check_relations()


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_diagonal_image_is_cyclic(m):
    q = image_group(builtin_space(f"zeta{m}"), 3)
    assert q.group.order == m and q.group.is_abelian()


def test_rack_needs_conjugation_closed_subset():
    G = symmetric_quotient(3).group
    x = G.index[MonomialMatrix.from_perm(Perm.from_cycles(3, [[1, 2]]))]
    y = G.index[MonomialMatrix.from_perm(Perm.from_cycles(3, [[2, 3]]))]
    with pytest.raises(YDError, match="not closed under conjugation"):
        rack_space(G, [x, y])


def test_diagonal_rejects_non_roots():
    with pytest.raises(YDError, match="not a root of unity"):
        diagonal_space([[2]])


def test_ybe_failure_names_triple():
    V = builtin_space("s3-rack")

    class Broken(YDSpace):
        def sigma_pair(self, a, b):
            # a <| b = a + b mod 3 is not self-distributive, so the braid equation fails
            return [((b, (a + b) % 3), ONE)]

    W = Broken.__new__(Broken)
    W.__dict__.update(V.__dict__)
    W._pair_cache = {}
    W._inv_cache = {}
    with pytest.raises(YDError, match=r"basis triple"):
        W.check_ybe()


def test_component_order_and_cap():
    V = builtin_space("s3-rack")
    c = V.component(2)
    assert c.words[:4] == [(0, 0), (0, 1), (0, 2), (1, 0)]
    with pytest.raises(TensorCapExceeded):
        apply_sum(V, 5, symmetrizer_sum(5), cap=100)


def test_sub_yd_stability():
    V = builtin_space("s3-rack")
    comp = V.component(2)
    # xx, yy, zz all have trivial degree and conjugation permutes them
    v = [ONE if w[0] == w[1] else 0 for w in comp.words]
    L = sub_yd(V, 2, Subspace.span([v], comp.dim))
    assert L.dim == 1 and L.weights == [2]
    # xx alone is moved to zz by (2 3)
    xx = [ONE if w == (0, 0) else 0 for w in comp.words]
    with pytest.raises(YDError, match="not stable"):
        sub_yd(V, 2, Subspace.span([xx], comp.dim))
    W = sub_yd(V, 2, Subspace.full(comp.dim))
    assert W.dim == 9 and W.weights == [2] * 9


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 6), st.integers(0, 5), st.integers(0, 5))
def test_diagonal_braiding_entries(m, a, b):
    q = [[zeta(m, a), zeta(m, b)], [zeta(m, b), zeta(m, a)]]
    V = diagonal_space(q)
    s = braiding_matrix(V)
    # sigma(e_i e_j) = q_ij e_j e_i; words ordered lex
    assert s[1, 2] == zeta(m, b) and s[2, 1] == zeta(m, b)
    assert s[0, 0] == zeta(m, a)


def test_group_closure_cap():
    from braidlab.braids import CapExceeded

    gens = [MonomialMatrix.from_perm(Perm.transposition(5, i, i + 1)) for i in range(1, 5)]
    with pytest.raises(CapExceeded):
        close_group(gens, cap=50)
