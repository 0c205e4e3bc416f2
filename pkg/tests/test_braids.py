from itertools import permutations
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from braidlab.braids import (BraidError, BraidWord, FormalBraidSum, Perm, binomial_count, cable, cable_perm,
                             coshuffle_sum, hurwitz_act, hurwitz_orbit, matsumoto_lift, norm_bracket_sum,
                             shuffle_sum, shuffles, symmetrizer_sum, unshuffles)

perms4 = st.permutations(range(1, 5)).map(lambda t: Perm(tuple(t)))


@st.composite
def braid_words(draw, n=4, max_len=6):
    k = draw(st.integers(0, max_len))
    letters = tuple((draw(st.integers(1, n - 1)), draw(st.sampled_from([1, -1]))) for _ in range(k))
    return BraidWord(n, letters)


def test_perm_composition_convention():
    a = Perm.transposition(3, 1, 2)
    b = Perm.transposition(3, 2, 3)
    # (a*b)(j) = a(b(j))
    assert (a * b)(3) == a(b(3)) == 1


@given(perms4)
def test_lift_is_reduced_and_projects(t):
    w = matsumoto_lift(t)
    assert w.is_positive()
    assert len(w) == t.inversions()
    assert w.perm() == t


def test_longest_element_lift():
    assert str(matsumoto_lift(Perm((3, 2, 1)))) == "s1s2s1"


def test_unshuffles_frozen():
    # inverses of the (2,1)-shuffles, lex order of the image of {1,2}
    assert [str(u) for u in unshuffles(2, 1)] == ["()", "(2 3)", "(1 3 2)"]


@pytest.mark.parametrize("p,q", [(1, 1), (2, 1), (1, 3), (2, 2), (3, 2)])
def test_shuffle_counts(p, q):
    assert len(shuffles(p, q)) == comb(p + q, p) == binomial_count(p, q)
    assert len(shuffle_sum(p, q)) == comb(p + q, p)
    for s in shuffles(p, q):
        im = s.images
        assert list(im[:p]) == sorted(im[:p]) and list(im[p:]) == sorted(im[p:])


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_symmetrizer_size(n):
    assert len(symmetrizer_sum(n)) == factorial(n)


def test_coshuffle_is_inverse_words():
    assert coshuffle_sum(2, 2) == shuffle_sum(2, 2).inverse_words()


def test_norm_bracket_coefficients():
    b = norm_bracket_sum(2)
    assert [(str(c), str(w)) for c, w in b.terms] == [
        ("1/4", "1"), ("-1/4", "s1"), ("1/4", "s1s1"), ("-1/4", "s1s1s1")]


@given(braid_words())
def test_inverse_word(w):
    assert (w * w.inverse()).perm().is_identity()
    assert w.inverse().exponent_sum() == -w.exponent_sum()


@given(braid_words(3, 4), st.integers(1, 3), braid_words(2, 3))
def test_cable_matches_strand_tracing(w, i, inner):
    c = cable(w, inner, i)
    assert c.strands == 4
    assert c.perm() == cable_perm(w.perm(), inner.perm(), i)
    assert len(w) + len(inner) <= len(c) <= 2 * len(w) + len(inner)


def test_cable_of_generator():
    s = BraidWord(2, ((1, 1),))
    # doubling the first strand: the ribbon crosses the single strand
    assert str(cable(s, BraidWord.unit(2), 1)) == "s1s2"
    assert str(cable(s, BraidWord.unit(2), 2)) == "s2s1"


def test_bad_letters():
    with pytest.raises(BraidError):
        BraidWord(3, ((3, 1),))
    with pytest.raises(BraidError):
        Perm((1, 1, 2))


def test_formal_sum_merges():
    w = BraidWord(2, ((1, 1),))
    s = FormalBraidSum.of_word(w) + FormalBraidSum.of_word(w).scale(-1)
    assert len(s) == 0


# --- Hurwitz

def _s3(*cycles):
    return Perm.from_cycles(3, [list(c) for c in cycles])


def _brute_orbit(seed):
    # independent enumeration: closure under both moves with plain tuples
    def mul(a, b):
        return tuple(a[b[j] - 1] for j in range(len(a)))

    def inv(a):
        out = [0] * len(a)
        for j, t in enumerate(a, 1):
            out[t - 1] = j
        return tuple(out)

    seen = {seed}
    todo = [seed]
    while todo:
        a, b = todo.pop()
        for u in ((b, mul(mul(inv(b), a), b)), (mul(mul(a, b), inv(a)), a)):
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return seen


def test_hurwitz_orbit_s3():
    seed = (_s3((1, 2)), _s3((2, 3)))
    rep = hurwitz_orbit(2, seed)
    assert rep.size == 3
    assert {tuple(p.images for p in t) for t in rep.orbit} == _brute_orbit(tuple(p.images for p in seed))
    assert rep.product_invariant
    assert str(rep.stabilizing_word) == "s1s1s1" and rep.certified_nontrivial
    assert hurwitz_act(BraidWord(2, ((1, 1),)), seed) == (_s3((2, 3)), _s3((1, 3)))


@given(braid_words(3, 6), st.lists(st.permutations(range(1, 4)), min_size=3, max_size=3))
def test_hurwitz_invariants(w, tup):
    tup = tuple(Perm(tuple(t)) for t in tup)
    out = hurwitz_act(w, tup)
    assert out[0] * out[1] * out[2] == tup[0] * tup[1] * tup[2]
    assert hurwitz_act(w.inverse(), out) == tup
    # the multiset of conjugacy classes (cycle types) is preserved
    assert sorted(sorted(len(c) for c in p.cycles()) for p in out) == \
        sorted(sorted(len(c) for c in p.cycles()) for p in tup)


@given(st.lists(st.permutations(range(1, 4)), min_size=3, max_size=3))
def test_hurwitz_braid_relation(tup):
    tup = tuple(Perm(tuple(t)) for t in tup)
    a = BraidWord.from_indices(3, [1, 2, 1])
    b = BraidWord.from_indices(3, [2, 1, 2])
    assert hurwitz_act(a, tup) == hurwitz_act(b, tup)


def test_all_transposition_pairs_orbit():
    ts = [_s3((1, 2)), _s3((2, 3)), _s3((1, 3))]
    sizes = {hurwitz_orbit(2, (a, b)).size for a in ts for b in ts}
    # equal pairs are fixed; distinct pairs form the orbit of size 3
    assert sizes == {1, 3}
    assert all(len(_brute_orbit((a.images, b.images))) in (1, 3) for a in ts for b in ts)
    assert len(list(permutations(ts, 2))) == 6
