"""Yetter-Drinfeld modules over finite groups and the induced braid actions.

A YD module is a G-graded space with a right G-action v -> v.h such that
X_g . h lands in X_{h^-1 g h}.  Its braiding is

    sigma(a (x) b) = b (x) a.deg(b)

and sigma_i acts on V^{(x)n} at positions i, i+1.  Basis vectors are
homogeneous; vectors in V^{(x)n} are dicts word -> coefficient, with words
tuples of basis indices.

Generators may carry positive integer weights (used when the generators of a
tensor algebra sit in several degrees); the weighted degree of a word is the
sum of its letter weights.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product
from math import lcm
from typing import Callable, Sequence

from .braids import BraidError, BraidWord, CapExceeded, FormalBraidSum
from .exactalg import ONE, ZERO, Matrix, Subspace, as_phase, root_of_unity, to_scalar
from .fingroup import DEFAULT_GROUP_CAP, BraidQuotient, FinGroup, MonomialMatrix, braid_quotient, close_group

DEFAULT_TENSOR_CAP = 4096


class YDError(ValueError):
    pass


class TensorCapExceeded(CapExceeded):
    pass


class YDSpace:
    """Finite-dimensional YD module over a finite group with homogeneous basis.

    ``gen_action[k]`` is the matrix of v -> v.s for the k-th generator s of the
    group (columns are images of basis vectors).
    """

    def __init__(self, group: FinGroup, labels: Sequence[str], degree: Sequence[int],
                 gen_action: Sequence[Matrix], weights: Sequence[int] | None = None,
                 check_ybe: bool = True):
        self.group = group
        self.labels = list(labels)
        self.degree = list(degree)
        self.dim = len(self.labels)
        self.weights = list(weights) if weights is not None else [1] * self.dim
        if len(self.degree) != self.dim or len(self.weights) != self.dim:
            raise YDError("labels, degrees and weights must have equal length")
        if len(gen_action) != len(group.gen_indices):
            raise YDError("need one action matrix per group generator")
        self.gen_action = list(gen_action)
        self._action = self._extend_action()
        self._check_compatibility()
        self._pair_cache: dict = {}
        self._inv_cache: dict = {}
        self._word_degree: dict = {}
        self._components: dict = {}
        self.ybe_checked = False
        if check_ybe and self.dim ** 3 <= DEFAULT_TENSOR_CAP:
            self.check_ybe()
            self.ybe_checked = True

    # -- group action -------------------------------------------------------

    @staticmethod
    def _sparse_cols(m: Matrix) -> list:
        return [[(i, m.rows[i][j]) for i in range(m.nrows) if m.rows[i][j]] for j in range(m.ncols)]

    @staticmethod
    def _compose(a: list, b: list) -> list:
        """Sparse columns of A*B (apply b first)."""
        out = []
        for col in b:
            acc: dict = {}
            for k, c in col:
                for i, d in a[k]:
                    acc[i] = acc.get(i, ZERO) + c * d
            out.append(sorted((i, v) for i, v in acc.items() if v))
        return out

    def _extend_action(self) -> list:
        g = self.group
        gens = [self._sparse_cols(m) for m in self.gen_action]
        for m in self.gen_action:
            if m.shape != (self.dim, self.dim):
                raise YDError("action matrix has the wrong shape")
        ident = [[(j, ONE)] for j in range(self.dim)]
        act = [None] * g.order
        act[g.identity] = ident
        # R_{gs} = R_s R_g for a right action
        for i in range(1, g.order):
            p, k = g.parents[i]
            act[i] = self._compose(gens[k], act[p])
        for i in range(g.order):
            for k, s in enumerate(g.gen_indices):
                if self._compose(gens[k], act[i]) != act[g.mul(i, s)]:
                    raise YDError(f"action matrices do not define a right action of the group "
                                  f"(element {g.element_key(i)}, generator {k + 1})")
        return act

    def act_cols(self, h: int) -> list:
        """Sparse columns of v -> v.h for the element index h."""
        return self._action[h]

    def _check_compatibility(self) -> None:
        g = self.group
        for k, h in enumerate(g.gen_indices):
            target = lambda d: g.mul(g.mul(g.inv(h), d), h)
            for j, col in enumerate(self._action[h]):
                want = target(self.degree[j])
                for i, _ in col:
                    if self.degree[i] != want:
                        raise YDError(f"YD compatibility fails: {self.labels[j]} acted on by generator {k + 1} "
                                      f"leaves the degree {g.element_key(want)}")
                    if self.weights[i] != self.weights[j]:
                        raise YDError("group action must preserve generator weights")

    # -- braiding -------------------------------------------------------------

    def sigma_pair(self, a: int, b: int) -> list:
        """sigma(e_a (x) e_b) as [((b, r), c), ...]."""
        key = (a, b)
        r = self._pair_cache.get(key)
        if r is None:
            col = self._action[self.degree[b]][a]
            r = [((b, i), c) for i, c in col]
            self._pair_cache[key] = r
        return r

    def sigma_inv_pair(self, p: int, q: int) -> list:
        """sigma^-1(e_p (x) e_q) = e_q.deg(p)^-1 (x) e_p."""
        key = (p, q)
        r = self._inv_cache.get(key)
        if r is None:
            col = self._action[self.group.inv(self.degree[p])][q]
            r = [((i, p), c) for i, c in col]
            self._inv_cache[key] = r
        return r

    def word_degree(self, w: tuple) -> int:
        r = self._word_degree.get(w)
        if r is None:
            g = self.group
            r = reduce(g.mul, (self.degree[a] for a in w), g.identity)
            self._word_degree[w] = r
        return r

    def word_weight(self, w: tuple) -> int:
        return sum(self.weights[a] for a in w)

    def is_monomial(self) -> bool:
        return all(len(col) == 1 and as_phase(col[0][1]) is not None for act in self._action for col in act)

    def check_ybe(self) -> None:
        w1 = BraidWord(3, ((1, 1), (2, 1), (1, 1)))
        w2 = BraidWord(3, ((2, 1), (1, 1), (2, 1)))
        for t in product(range(self.dim), repeat=3):
            v = {t: ONE}
            if apply_word(self, w1.letters, v) != apply_word(self, w2.letters, v):
                raise YDError(f"braid equation fails on basis triple "
                              f"{'(x)'.join(self.labels[a] for a in t)}")

    # -- tensor components ----------------------------------------------------

    def component(self, n: int) -> "Component":
        """Words of weighted degree n, ordered by (length, lex)."""
        c = self._components.get(n)
        if c is None:
            words = []
            if n == 0:
                words = [()]
            else:
                by_len: dict = {}

                def rec(prefix, remaining):
                    if remaining == 0:
                        by_len.setdefault(len(prefix), []).append(prefix)
                        return
                    for a in range(self.dim):
                        wa = self.weights[a]
                        if wa <= remaining:
                            rec(prefix + (a,), remaining - wa)

                rec((), n)
                for k in sorted(by_len):
                    words.extend(sorted(by_len[k]))
            c = Component(n, words)
            self._components[n] = c
        return c

    def tensor_act(self, h: int, vec: dict) -> dict:
        """Diagonal right action of the element h on a vector of words."""
        cols = self._action[h]
        out: dict = {}
        for w, c in vec.items():
            partial = [((), c)]
            for a in w:
                partial = [(p + (i,), x * y) for p, x in partial for i, y in cols[a]]
            for p, x in partial:
                out[p] = out.get(p, ZERO) + x
        return {k: v for k, v in out.items() if v}

    def word_str(self, w: tuple) -> str:
        return "".join(self.labels[a] for a in w) if all(len(l) == 1 for l in self.labels) else \
            "|".join(self.labels[a] for a in w)

    def vector_str(self, vec: dict) -> str:
        from .exactalg import scalar_str

        if not vec:
            return "0"
        parts = []
        for w in sorted(vec):
            c = vec[w]
            parts.append(f"{scalar_str(c)}*{self.word_str(w)}")
        return " + ".join(parts)


@dataclass
class Component:
    degree: int
    words: list

    def __post_init__(self):
        self.index = {w: i for i, w in enumerate(self.words)}

    @property
    def dim(self) -> int:
        return len(self.words)

    def length_ranges(self) -> dict:
        """word length -> (start, end) of its contiguous block."""
        out: dict = {}
        for i, w in enumerate(self.words):
            k = len(w)
            if k in out:
                out[k] = (out[k][0], i + 1)
            else:
                out[k] = (i, i + 1)
        return out

    def to_dense(self, vec: dict) -> list:
        v = [ZERO] * len(self.words)
        for w, c in vec.items():
            v[self.index[w]] += c
        return v

    def to_sparse(self, v: Sequence) -> dict:
        return {self.words[i]: c for i, c in enumerate(v) if c}


# ---------------------------------------------------------------------------
# braid actions on vectors and matrices


def apply_word(V: YDSpace, letters: Sequence, vec: dict) -> dict:
    """Apply a braid word (sequence of (i, eps)) to a sparse vector; rightmost letter first."""
    for i, e in reversed(letters):
        out: dict = {}
        pair = V.sigma_pair if e == 1 else V.sigma_inv_pair
        for w, c in vec.items():
            for (a, b), x in pair(w[i - 1], w[i]):
                u = w[: i - 1] + (a, b) + w[i + 1:]
                out[u] = out.get(u, ZERO) + c * x
        vec = {k: v for k, v in out.items() if v}
    return vec


def apply_sum_vec(V: YDSpace, s: FormalBraidSum, vec: dict) -> dict:
    out: dict = {}
    for c, w in s.terms:
        for u, x in apply_word(V, w.letters, vec).items():
            out[u] = out.get(u, ZERO) + c * x
    return {k: v for k, v in out.items() if v}


def _check_cap(V: YDSpace, n: int, cap: int) -> None:
    if V.dim ** n > cap:
        raise TensorCapExceeded(f"tensor power V^{n} of a {V.dim}-dim space", V.dim ** n, cap)


def _basis_words(V: YDSpace, n: int) -> list:
    return list(product(range(V.dim), repeat=n))


def braid_action(V: YDSpace, n: int, w: BraidWord, cap: int = DEFAULT_TENSOR_CAP) -> Matrix:
    """Matrix of the braid word on V^{(x)n} in the lexicographic word basis."""
    if w.strands != n:
        raise BraidError(f"word on {w.strands} strands acting on V^{n}")
    return apply_sum(V, n, FormalBraidSum.of_word(w), cap)


def apply_sum(V: YDSpace, n: int, s: FormalBraidSum, cap: int = DEFAULT_TENSOR_CAP) -> Matrix:
    if s.strands != n:
        raise BraidError(f"sum on {s.strands} strands acting on V^{n}")
    _check_cap(V, n, cap)
    words = _basis_words(V, n)
    index = {w: i for i, w in enumerate(words)}
    N = len(words)
    rows = [[ZERO] * N for _ in range(N)]
    for j, w in enumerate(words):
        for u, c in apply_sum_vec(V, s, {w: ONE}).items():
            rows[index[u]][j] = c
    return Matrix(N, N, rows)


def braiding_matrix(V: YDSpace) -> Matrix:
    return braid_action(V, 2, BraidWord(2, ((1, 1),)))


@dataclass
class BraidingOp:
    matrix: Matrix
    is_monomial: bool
    scalar_if_onedim: object


def braiding_op(V: YDSpace) -> BraidingOp:
    m = braiding_matrix(V)
    return BraidingOp(m, V.is_monomial(), m.rows[0][0] if V.dim == 1 else None)


def tensor_power_monomial(V: YDSpace, n: int, i: int) -> MonomialMatrix:
    """sigma_i on V^{(x)n} as a monomial matrix; requires a monomial braiding."""
    words = _basis_words(V, n)
    index = {w: k for k, w in enumerate(words)}
    perm, phases = [], []
    for w in words:
        img = V.sigma_pair(w[i - 1], w[i])
        if len(img) != 1:
            raise YDError("braiding is not monomial")
        (a, b), c = img[0]
        ph = as_phase(c)
        if ph is None:
            raise YDError("braiding coefficient is not a root of unity")
        perm.append(index[w[: i - 1] + (a, b) + w[i + 1:]])
        phases.append(ph)
    return MonomialMatrix.make(perm, phases)


def image_group(V: YDSpace, n: int, cap: int = DEFAULT_GROUP_CAP,
                tensor_cap: int = DEFAULT_TENSOR_CAP) -> BraidQuotient:
    """The finite image of B_n acting on V^{(x)n}."""
    _check_cap(V, n, tensor_cap)
    if n == 1:
        return braid_quotient(1, [])
    gens = [tensor_power_monomial(V, n, i) for i in range(1, n)]
    return braid_quotient(n, gens, cap)


# ---------------------------------------------------------------------------
# constructors


def rack_space(G: FinGroup, c: Sequence[int], character: Callable[[int], object] | None = None,
               labels: Sequence[str] | None = None) -> YDSpace:
    """Span of a conjugation-closed subset c of G; v_g . h = chi(h) v_{h^-1 g h}.

    ``character`` is an optional linear character of G with root-of-unity values
    (identically 1 by default, giving the plain conjugation rack).
    """
    c = list(c)
    pos = {g: k for k, g in enumerate(c)}
    if len(pos) != len(c):
        raise YDError("rack elements must be distinct")
    chi = character or (lambda h: ONE)
    for h in range(G.order):
        for s in G.gen_indices:
            if chi(G.mul(h, s)) != chi(h) * chi(s):
                raise YDError("character is not multiplicative")
    mats = []
    for s in G.gen_indices:
        m = Matrix.zeros(len(c), len(c))
        for j, g in enumerate(c):
            conj = G.mul(G.mul(G.inv(s), g), s)
            if conj not in pos:
                raise YDError(f"subset not closed under conjugation: {G.element_key(g)} conjugated by "
                              f"{G.element_key(s)} gives {G.element_key(conj)}")
            m.rows[pos[conj]][j] = to_scalar(chi(s))
        mats.append(m)
    if labels is None:
        labels = [G.element_key(g) for g in c]
    return YDSpace(G, labels, c, mats)


def diagonal_space(q: Sequence[Sequence], labels: Sequence[str] | None = None,
                   cap: int = DEFAULT_GROUP_CAP) -> YDSpace:
    """sigma(e_i (x) e_j) = q[i][j] e_j (x) e_i for roots of unity q[i][j].

    Realized over G = (Z/M)^d with generators g_j of degree e_j acting by
    e_i . g_j = q[i][j] e_i.
    """
    d = len(q)
    if any(len(r) != d for r in q):
        raise YDError("q-matrix must be square")
    phases = []
    for i, r in enumerate(q):
        row = []
        for j, x in enumerate(r):
            ph = as_phase(to_scalar(x))
            if ph is None:
                raise YDError(f"q[{i + 1}][{j + 1}] = {x} is not a root of unity; infinite braid images "
                              f"are not supported")
            row.append(ph)
        phases.append(row)
    M = lcm(*(p.denominator for r in phases for p in r)) if d else 1
    gens = [MonomialMatrix.diagonal([Fraction(1, M) if k == j else 0 for k in range(d)]) for j in range(d)]
    G = close_group(gens, cap)
    mats = []
    for j in range(d):
        m = Matrix.zeros(d, d)
        for i in range(d):
            m.rows[i][i] = root_of_unity(phases[i][j])
        mats.append(m)
    if labels is None:
        labels = ["x"] if d == 1 else [f"x{i + 1}" for i in range(d)]
    return YDSpace(G, labels, G.gen_indices, mats)


# ---------------------------------------------------------------------------
# sub-YD-modules


@dataclass
class SubYD:
    space: YDSpace
    vectors: list  # ambient coordinate vectors of the new basis, in order


def sub_module(group: FinGroup, degrees: Sequence[int], act: Callable[[int, list], list],
               S: Subspace, weight: int | Sequence[int] = 1, label_prefix: str = "w",
               check_ybe: bool = False) -> SubYD:
    """YD structure on a homogeneous, G-stable subspace S of a graded module.

    ``degrees[k]`` is the group degree of ambient coordinate k and
    ``act(generator position, vector)`` the right action of a group generator
    on ambient coordinate vectors.
    """
    N = S.ambient_dim
    by_deg: dict = {}
    for k, g in enumerate(degrees):
        by_deg.setdefault(g, []).append(k)
    blocks = {}
    for g in sorted(by_deg):
        coords = by_deg[g]
        parts = []
        for b in S.basis:
            v = [ZERO] * N
            for k in coords:
                v[k] = b[k]
            if any(v):
                if not S.contains(v):
                    raise YDError(f"not a sub-YD-module: the degree-{group.element_key(g)} part of a basis "
                                  f"vector is not in the subspace (witness coordinates {b})")
                parts.append(v)
        if parts:
            blocks[g] = Subspace.span(parts, N)
    vectors, degs = [], []
    owner = []
    for g, sub in blocks.items():
        for b in sub.basis:
            vectors.append(list(b))
            degs.append(g)
            owner.append(g)
    mats = []
    for pos, h in enumerate(group.gen_indices):
        m = Matrix.zeros(len(vectors), len(vectors))
        for j, v in enumerate(vectors):
            img = act(pos, v)
            if not any(img):
                raise YDError("group action killed a basis vector")
            tgt = group.mul(group.mul(group.inv(h), degs[j]), h)
            sub = blocks.get(tgt)
            if sub is None or not sub.contains(img):
                raise YDError(f"not a sub-YD-module: subspace is not stable under generator {pos + 1} "
                              f"(witness coordinates {v})")
            coords = sub.coordinates(img)
            start = owner.index(tgt)
            for r, c in enumerate(coords):
                if c:
                    m.rows[start + r][j] = c
        mats.append(m)
    if isinstance(weight, int):
        weights = [weight] * len(vectors)
    else:
        weights = list(weight)
    labels = [f"{label_prefix}{k + 1}" for k in range(len(vectors))]
    return SubYD(YDSpace(group, labels, degs, mats, weights, check_ybe=check_ybe), vectors)


def sub_yd(V: YDSpace, n: int, S: Subspace, cap: int = DEFAULT_TENSOR_CAP) -> YDSpace:
    """YD structure on a homogeneous G-stable subspace of the weighted component n."""
    comp = V.component(n)
    if comp.dim > cap:
        raise TensorCapExceeded(f"component of degree {n}", comp.dim, cap)
    if S.ambient_dim != comp.dim:
        raise YDError("subspace ambient dimension does not match the component")
    degrees = [V.word_degree(w) for w in comp.words]

    def act(pos, v):
        h = V.group.gen_indices[pos]
        return comp.to_dense(V.tensor_act(h, comp.to_sparse(v)))

    return sub_module(V.group, degrees, act, S, weight=n, check_ybe=True).space
