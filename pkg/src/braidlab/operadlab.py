"""Level-wise braided operads inside group algebras of finite braid-group quotients.

For a quotient B_n -> Q the braided primitives at level n are the common
kernel of left multiplication by the images of the shuffle sums S_{p,q}; the
Woronowicz level is the kernel of left multiplication by the full symmetrizer.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial, lcm

from .braids import BraidWord, FormalBraidSum, cable, norm_bracket_sum, shuffle_sum, symmetrizer_sum
from .exactalg import ONE, ZERO, Matrix, Subspace, intersect, kernel_basis, solve_affine
from .fingroup import (BraidQuotient, FinGroup, GroupAlgebraElement, antipode, eval_sum, is_right_stable,
                       left_mult_matrix, right_ideal, right_mult_matrix, symmetric_quotient)
from .ydspace import YDSpace, apply_sum_vec, apply_word


class GarsiaError(RuntimeError):
    """The symmetric-idempotent solve was inconsistent or not unique."""

    def __init__(self, msg: str, solution_dim: int | None = None):
        super().__init__(msg)
        self.solution_dim = solution_dim  # None when inconsistent


class NotRightIdealError(ValueError):
    pass


def brprim_level(q: BraidQuotient) -> Subspace:
    n = q.n
    if n < 2:
        raise ValueError("levels are defined for n >= 2")
    cur = None
    for p in range(1, n):
        k = kernel_basis(left_mult_matrix(eval_sum(shuffle_sum(p, n - p), q)))
        cur = k if cur is None else intersect(cur, k)
    return cur


def woronowicz_level(q: BraidQuotient) -> Subspace:
    if q.n < 2:
        raise ValueError("levels are defined for n >= 2")
    return kernel_basis(left_mult_matrix(eval_sum(symmetrizer_sum(q.n), q)))


@dataclass
class OperadLevel:
    n: int
    quotient: BraidQuotient
    brprim: Subspace
    woron: Subspace

    def check(self) -> dict:
        g = self.quotient.group
        return {
            "brprim_in_woron": self.woron.contains_subspace(self.brprim),
            "brprim_right_stable": is_right_stable(self.brprim, g),
            "woron_right_stable": is_right_stable(self.woron, g),
        }


def operad_level(q: BraidQuotient) -> OperadLevel:
    return OperadLevel(q.n, q, brprim_level(q), woronowicz_level(q))


def _element(group: FinGroup, v) -> GroupAlgebraElement:
    return GroupAlgebraElement.from_vector(group, v)


def garsia_idempotent(I: Subspace, group: FinGroup) -> GroupAlgebraElement:
    """The antipode-invariant idempotent e with e k[Q] = I."""
    N = group.order
    if I.ambient_dim != N:
        raise ValueError("subspace does not live in this group algebra")
    if not is_right_stable(I, group):
        raise NotRightIdealError("subspace is not closed under right multiplication by the generators")
    if not I.dim:
        return GroupAlgebraElement.make(group, {})
    # Maschke average of the projection along the non-pivot coordinates, evaluated at 1
    inv_order = ONE / N
    acc: dict = {}
    for row, piv in zip(I.basis, I.pivots):
        ginv = group.inv(piv)
        for k, c in enumerate(row):
            if c:
                t = group.mul(k, ginv)
                acc[t] = acc.get(t, ZERO) + c * inv_order
    e0 = GroupAlgebraElement.make(group, acc)
    one = GroupAlgebraElement.delta(group, group.identity)
    comp = one - e0
    U = Subspace.span([(e0 * GroupAlgebraElement.delta(group, h) * comp).vector() for h in range(N)], N)
    rhs = (antipode(e0) - e0).vector()
    if U.dim:
        cols = []
        for b in U.basis:
            u = _element(group, b)
            cols.append((u - antipode(u)).vector())
        lin = Matrix.from_columns(cols, N)
        sol = solve_affine(lin, rhs)
        if sol is None:
            raise GarsiaError("no antipode-invariant idempotent generator exists (inconsistent system)")
        if sol.kernel.dim:
            raise GarsiaError(f"antipode-invariant idempotent is not unique: solution space has dimension "
                              f"{sol.kernel.dim}", sol.kernel.dim)
        u = [ZERO] * N
        for t, b in zip(sol.particular, U.basis):
            if t:
                u = [x + t * y for x, y in zip(u, b)]
        e = e0 + _element(group, u)
    else:
        if any(rhs):
            raise GarsiaError("no antipode-invariant idempotent generator exists (inconsistent system)")
        e = e0
    check = verify_idempotent(e, I)
    if not all(check.values()):
        raise GarsiaError(f"idempotent verification failed: {check}")
    return e


def verify_idempotent(e: GroupAlgebraElement, I: Subspace) -> dict:
    return {
        "idempotent": e * e == e,
        "symmetric": antipode(e) == e,
        "generates": right_ideal(e) == I if not e.is_zero() else I.dim == 0,
    }


def garsia_solution_dimension(I: Subspace, group: FinGroup) -> int:
    """Dimension of the solution space of the symmetry system (0 means unique)."""
    try:
        garsia_idempotent(I, group)
    except GarsiaError as err:
        if err.solution_dim is None:
            raise
        return err.solution_dim
    return 0


@dataclass
class FactorSolution:
    particular: GroupAlgebraElement
    kernel_dim: int


def solve_factor(g: GroupAlgebraElement, h: GroupAlgebraElement) -> FactorSolution | None:
    """Some c with g = c h (no canonical choice; kernel dimension reported)."""
    lin = right_mult_matrix(h)
    sol = solve_affine(lin, g.vector())
    if sol is None:
        return None
    return FactorSolution(_element(g.group, sol.particular), sol.kernel.dim)


# ---------------------------------------------------------------------------
# the right-ideal counterexample


@dataclass
class CounterexampleReport:
    intermediate: dict
    symmetrized: dict
    nonzero: bool
    period: int  # order of the cabled generator on the input word
    control: dict  # S_2 b(pair) with a bracket whose period fits the pair; zero since b is in BrPrim(2)
    control_period: int
    space: YDSpace

    def as_strings(self) -> dict:
        return {
            "intermediate": self.space.vector_str(self.intermediate),
            "symmetrized": self.space.vector_str(self.symmetrized),
            "period": self.period,
            "control": self.space.vector_str(self.control),
            "verdict": "NONZERO" if self.nonzero else "ZERO",
        }


def cabled_bracket(half_period: int = 2) -> FormalBraidSum:
    """b o_1 mu: the norm bracket with its first strand doubled."""
    b = norm_bracket_sum(half_period)
    mu = BraidWord.unit(2)
    return FormalBraidSum.build(3, [(c, cable(w, mu, 1)) for c, w in b.terms])


def cabled_period(V: YDSpace, word: tuple, limit: int = 1000) -> int:
    """Smallest k with cable(sigma^k) fixing the basis word; cable(sigma)^k is a different braid,
    so we iterate the cabled full twist cable(sigma^2) and double its order."""
    twist = cable(BraidWord(2, ((1, 1), (1, 1))), BraidWord.unit(2), 1)
    start = {tuple(word): ONE}
    vec = start
    for k in range(1, limit + 1):
        vec = apply_word(V, twist.letters, vec)
        if vec == start:
            return 2 * k
    raise ValueError(f"cabled full twist has no period <= {limit} on {V.word_str(tuple(word))}")


def braiding_period(V: YDSpace, pair: tuple, limit: int = 1000) -> int:
    """Order of sigma acting on a basis word of V (x) V."""
    start = {tuple(pair): ONE}
    vec = start
    for k in range(1, limit + 1):
        vec = apply_word(V, ((1, 1),), vec)
        if vec == start:
            return k
    raise ValueError(f"braiding has no period <= {limit} on {V.word_str(tuple(pair))}")


def bracket_control(V: YDSpace, pair: tuple = (0, 1)) -> tuple:
    """(S_2 b(pair), period) for the shortest norm bracket that acts on the pair."""
    per = braiding_period(V, pair)
    half = lcm(per, 2) // 2
    b_xy = apply_sum_vec(V, norm_bracket_sum(half), {tuple(pair): ONE})
    return apply_sum_vec(V, symmetrizer_sum(2), b_xy), 2 * half


def verify_not_right_ideal(V: YDSpace, word: tuple = (0, 0, 1), half_period: int = 2,
                           pair: tuple = (0, 1)) -> CounterexampleReport:
    """S_3 applied to (b o_1 mu)(word); nonzero means b o_1 mu is not in W(3).

    b lives in k[Z/2n], so it only acts once the cabled generator has period dividing 2n on the word.
    """
    period = cabled_period(V, word)
    if (2 * half_period) % period:
        raise ValueError(f"cabled generator has period {period} on {V.word_str(tuple(word))}, "
                         f"which does not divide {2 * half_period}")
    inter = apply_sum_vec(V, cabled_bracket(half_period), {tuple(word): ONE})
    sym = apply_sum_vec(V, symmetrizer_sum(3), inter)
    control, cper = bracket_control(V, pair)
    return CounterexampleReport(inter, sym, bool(sym), period, control, cper, V)


# ---------------------------------------------------------------------------
# tables


def symmetrization_table(n_max: int = 5) -> list:
    """[(n, dim brprim, dim woron, (n-1)!, n!-1)] over Q = S_n."""
    out = []
    for n in range(2, n_max + 1):
        lvl = operad_level(symmetric_quotient(n))
        out.append((n, lvl.brprim.dim, lvl.woron.dim, factorial(n - 1), factorial(n) - 1))
    return out


def element_report(e: GroupAlgebraElement) -> dict:
    return {k: v for k, v in sorted(e.keyed().items())}
