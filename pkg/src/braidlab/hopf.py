"""Degree-wise braided Hopf algebras A = T(V)/I up to a degree cutoff.

Component n of T(V) is spanned by words of weighted degree n.  Each ideal
component I_n is a Subspace in RREF; the quotient A_n is coordinatized by the
non-pivot words of I_n, so a class in A_n is represented by its unique lift
supported on those words.

The coproduct of a word w of length k is sum_r S_{r,k-r}(w) split after r
letters; its (a,b) component keeps the terms whose left part has weight a.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .braids import coshuffle_sum, matsumoto_lift, shuffle_sum, symmetrizer_sum, unshuffles
from .exactalg import ONE, ZERO, Matrix, Subspace, intersect, kernel_basis, subspace_sum
from .ydspace import DEFAULT_TENSOR_CAP, TensorCapExceeded, YDSpace, apply_sum, apply_sum_vec, apply_word


class HopfIdealError(ValueError):
    def __init__(self, msg: str, degree: int | None = None, witness=None):
        super().__init__(msg)
        self.degree = degree
        self.witness = witness


_LIFT_CACHE: dict = {}


def _unshuffle_lifts(r: int, s: int) -> list:
    key = (r, s)
    out = _LIFT_CACHE.get(key)
    if out is None:
        out = [matsumoto_lift(u).letters for u in unshuffles(r, s)]
        _LIFT_CACHE[key] = out
    return out


def coproduct_terms(V: YDSpace, w: tuple) -> list:
    """Reduced coproduct of a word: [(left word, right word, coeff), ...] over
    all splits with both sides nonempty."""
    k = len(w)
    out = []
    for r in range(1, k):
        acc: dict = {}
        for letters in _unshuffle_lifts(r, k - r):
            for u, c in apply_word(V, letters, {w: ONE}).items():
                acc[u] = acc.get(u, ZERO) + c
        for u, c in acc.items():
            if c:
                out.append((u[:r], u[r:], c))
    return out


class _IdealView:
    """Read access to the ideal components as full Subspaces (assembled lazily)."""

    def __init__(self, owner: "GradedHopfQuotient"):
        self._owner = owner
        self._cache: dict = {}

    def __getitem__(self, n: int) -> Subspace:
        r = self._cache.get(n)
        if r is None:
            r = self._owner._assemble(n)
            self._cache[n] = r
        return r

    def __contains__(self, n: int) -> bool:
        return 0 <= n <= self._owner.D

    def items(self):
        return [(n, self[n]) for n in range(self._owner.D + 1)]


class GradedHopfQuotient:
    """A = T(V)/I truncated at degree D (weighted degrees).

    The ideal may be given either as full Subspaces per degree (``ideal``) or,
    for ideals that are homogeneous in word length, as ``blocks``: per degree a
    map word length -> Subspace of the span of the words of that length.
    Elimination then never leaves a length block.
    """

    def __init__(self, V: YDSpace, D: int, ideal: dict | None = None, cap: int = DEFAULT_TENSOR_CAP,
                 blocks: dict | None = None):
        self.V = V
        self.D = D
        self.cap = cap
        ideal = ideal or {}
        blocks = blocks or {}
        self._blocks: dict = {}
        for n in range(D + 1):
            comp = self.comp(n)
            ranges = comp.length_ranges()
            if n in blocks:
                parts = []
                for k, (a, b) in ranges.items():
                    sub = blocks[n].get(k) or Subspace.zero(b - a)
                    if sub.ambient_dim != b - a:
                        raise ValueError(f"ideal block ({k},{n}) has the wrong ambient dimension")
                    parts.append((a, b, sub))
            else:
                sub = ideal.get(n)
                if sub is None:
                    sub = Subspace.zero(comp.dim)
                if sub.ambient_dim != comp.dim:
                    raise ValueError(f"ideal component {n} has the wrong ambient dimension")
                parts = [(0, comp.dim, sub)]
            self._blocks[n] = parts
        self.ideal = _IdealView(self)
        self._proj: dict = {}
        self._delta: dict = {}
        self._prims: dict = {}
        self._wordproj: dict = {}

    def _assemble(self, n: int) -> Subspace:
        parts = self._blocks[n]
        if len(parts) == 1:
            return parts[0][2]
        N = self.comp(n).dim
        basis, piv = [], []
        for a, b, sub in parts:
            for row, p in zip(sub.basis, sub.pivots):
                v = [ZERO] * N
                v[a:b] = row
                basis.append(tuple(v))
                piv.append(a + p)
        return Subspace(N, tuple(basis), tuple(piv))

    def ideal_blocks(self, n: int) -> list:
        """[(start, end, Subspace)] covering component n."""
        return self._blocks[n]

    # -- bookkeeping ----------------------------------------------------------

    def comp(self, n: int):
        c = self.V.component(n)
        if c.dim > self.cap:
            raise TensorCapExceeded(f"tensor component of degree {n}", c.dim, self.cap)
        return c

    def ideal_dim(self, n: int) -> int:
        return sum(sub.dim for _, _, sub in self._blocks[n])

    def dim(self, n: int) -> int:
        return self.comp(n).dim - self.ideal_dim(n)

    def hilbert(self) -> list:
        return [self.dim(n) for n in range(self.D + 1)]

    def _tables(self, n: int):
        t = self._proj.get(n)
        if t is None:
            nonp, rowof = [], {}
            for a, b, sub in self._blocks[n]:
                nonp.extend(a + j for j in sub.nonpivots)
                for r, p in enumerate(sub.pivots):
                    rowof[a + p] = (a, b, sub.basis[r])
            qidx = {j: k for k, j in enumerate(nonp)}
            t = (qidx, rowof, tuple(nonp))
            self._proj[n] = t
        return t

    def nonpivots(self, n: int) -> tuple:
        return self._tables(n)[2]

    def project_word(self, n: int, word_index: int) -> dict:
        """Quotient coordinates of the class of a basis word."""
        key = (n, word_index)
        r = self._wordproj.get(key)
        if r is None:
            qidx, rowof, _ = self._tables(n)
            k = qidx.get(word_index)
            if k is not None:
                r = {k: ONE}
            else:
                a, _, row = rowof[word_index]
                r = {}
                for j, c in enumerate(row):
                    if c and j + a != word_index:
                        r[qidx[a + j]] = -c
            self._wordproj[key] = r
        return r

    def project(self, n: int, v: Sequence) -> list:
        """Quotient coordinates of a dense vector of T(V)_n."""
        out = [ZERO] * self.dim(n)
        for j, c in enumerate(v):
            if c:
                for k, x in self.project_word(n, j).items():
                    out[k] += c * x
        return out

    def project_sparse(self, n: int, vec: dict) -> dict:
        comp = self.comp(n)
        out: dict = {}
        for w, c in vec.items():
            for k, x in self.project_word(n, comp.index[w]).items():
                out[k] = out.get(k, ZERO) + c * x
        return {k: v for k, v in out.items() if v}

    def lift(self, n: int, q: Sequence) -> list:
        v = [ZERO] * self.comp(n).dim
        for k, j in enumerate(self.nonpivots(n)):
            v[j] = q[k]
        return v

    def lift_sparse(self, n: int, q: Sequence) -> dict:
        words = self.comp(n).words
        return {words[j]: q[k] for k, j in enumerate(self.nonpivots(n)) if q[k]}

    # -- coproduct ------------------------------------------------------------

    def reduced_delta_word(self, n: int, word_index: int) -> dict:
        """(pi (x) pi) of the reduced coproduct of a basis word, keyed (a, i, j)."""
        key = (n, word_index)
        r = self._delta.get(key)
        if r is None:
            V = self.V
            comp = self.comp(n)
            r = {}
            for left, right, c in coproduct_terms(V, comp.words[word_index]):
                a = V.word_weight(left)
                b = n - a
                pl = self.project_word(a, self.comp(a).index[left])
                if not pl:
                    continue
                pr = self.project_word(b, self.comp(b).index[right])
                for i, x in pl.items():
                    for j, y in pr.items():
                        k3 = (a, i, j)
                        r[k3] = r.get(k3, ZERO) + c * x * y
            r = {k: v for k, v in r.items() if v}
            self._delta[key] = r
        return r

    def reduced_delta(self, n: int, v: Sequence) -> dict:
        out: dict = {}
        for j, c in enumerate(v):
            if c:
                for k, x in self.reduced_delta_word(n, j).items():
                    out[k] = out.get(k, ZERO) + c * x
        return {k: x for k, x in out.items() if x}

    # -- products -------------------------------------------------------------

    def decomposable_span(self, n: int) -> Subspace:
        """Image in A_n of words of length >= 2 (the degree-n part of ker(eps)^2)."""
        comp = self.comp(n)
        vecs = []
        for j, w in enumerate(comp.words):
            if len(w) >= 2:
                vecs.append(self.project_word(n, j))
        d = self.dim(n)
        dense = []
        for p in vecs:
            v = [ZERO] * d
            for k, x in p.items():
                v[k] = x
            dense.append(v)
        return Subspace.span(dense, d)


def primitives(A: GradedHopfQuotient, n: int) -> Subspace:
    """Primitive classes in A_n, as a Subspace of quotient coordinates."""
    if n in A._prims:
        return A._prims[n]
    if n < 1 or n > A.D:
        raise ValueError(f"degree {n} outside 1..{A.D}")
    nonp = A.nonpivots(n)
    d = len(nonp)
    # group rows by the left weight a so each block is eliminated separately
    blocks: dict = {}
    for col, j in enumerate(nonp):
        for (a, i, k), c in A.reduced_delta_word(n, j).items():
            rows = blocks.setdefault(a, {})
            row = rows.get((i, k))
            if row is None:
                row = rows[(i, k)] = [ZERO] * d
            row[col] = c
    cur = Subspace.full(d)
    for a in sorted(blocks):
        rows = list(blocks[a].values())
        if cur.dim == d:
            cur = kernel_basis(Matrix(len(rows), d, rows))
        else:
            if not cur.dim:
                break
            # restrict to the current kernel: rows * basis
            basis = cur.basis
            restricted = [[sum((r[t] * b[t] for t in range(d) if r[t] and b[t]), ZERO) for b in basis] for r in rows]
            coeffs = kernel_basis(Matrix(len(rows), len(basis), restricted))
            vecs = []
            for cvec in coeffs.basis:
                v = [ZERO] * d
                for c, b in zip(cvec, basis):
                    if c:
                        v = [x + c * y for x, y in zip(v, b)]
                vecs.append(v)
            cur = Subspace.span(vecs, d)
    A._prims[n] = cur
    return cur


def free_primitives(V: YDSpace, n: int, cap: int = DEFAULT_TENSOR_CAP) -> Subspace:
    """Intersection of the kernels of S_{p,q} acting on V^{(x)n} (unweighted words)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if V.dim ** n > cap:
        raise TensorCapExceeded(f"tensor power V^{n}", V.dim ** n, cap)
    if n == 1:
        return Subspace.full(V.dim)
    cur = None
    for p in range(1, n):
        k = kernel_basis(apply_sum(V, n, shuffle_sum(p, n - p), cap))
        cur = k if cur is None else intersect(cur, k)
    return cur


@dataclass
class NicholsComponent:
    relations: Subspace
    dim: int
    by_length: dict = field(default_factory=dict)  # word length -> dim of the quotient block


def nichols_component(V: YDSpace, n: int, cap: int = DEFAULT_TENSOR_CAP) -> NicholsComponent:
    """ker(S_k) on the weighted component n, blockwise in word length k.

    With all weights 1 this is ker(S_n) on V^{(x)n}.
    """
    comp = V.component(n)
    if comp.dim > cap:
        raise TensorCapExceeded(f"tensor component of degree {n}", comp.dim, cap)
    rel_vecs = []
    by_len: dict = {}
    start = 0
    words = comp.words
    while start < len(words):
        k = len(words[start])
        end = start
        while end < len(words) and len(words[end]) == k:
            end += 1
        block = words[start:end]
        bidx = {w: i for i, w in enumerate(block)}
        if k == 0:
            by_len[0] = 1
            start = end
            continue
        S = symmetrizer_sum(k)
        rows = [[ZERO] * len(block) for _ in block]
        for j, w in enumerate(block):
            for u, c in apply_sum_vec(V, S, {w: ONE}).items():
                rows[bidx[u]][j] = c
        ker = kernel_basis(Matrix(len(block), len(block), rows))
        by_len[k] = len(block) - ker.dim
        for b in ker.basis:
            v = [ZERO] * comp.dim
            v[start:end] = b
            rel_vecs.append(v)
        start = end
    rel = Subspace.span(rel_vecs, comp.dim)
    return NicholsComponent(rel, comp.dim - rel.dim, by_len)


def quantum_shuffle(V: YDSpace, u: dict, w: dict) -> dict:
    """u * w = coshuffle sum applied to u (x) w; vectors are dicts word -> coeff."""
    if not u or not w:
        return {}
    p = len(next(iter(u)))
    q = len(next(iter(w)))
    if p == 0 or q == 0:
        unit, other = (u, w) if p == 0 else (w, u)
        c = unit[()]
        return {k: c * x for k, x in other.items()}
    prod = {a + b: x * y for a, x in u.items() for b, y in w.items()}
    return apply_sum_vec(V, coshuffle_sum(p, q), prod)


# ---------------------------------------------------------------------------
# ideals


def _multiply_letters(V: YDSpace, A_or_none, n: int, lower: dict) -> list:
    """Vectors a*x and x*a in T(V)_n for letters a and basis vectors x of lower ideals."""
    comp = V.component(n)
    out = []
    for a in range(V.dim):
        wa = V.weights[a]
        m = n - wa
        if m < 0 or m not in lower:
            continue
        sub = lower[m]
        if not sub.dim:
            continue
        low = V.component(m)
        for b in sub.basis:
            left = [ZERO] * comp.dim
            right = [ZERO] * comp.dim
            for j, c in enumerate(b):
                if c:
                    w = low.words[j]
                    left[comp.index[(a,) + w]] = c
                    right[comp.index[w + (a,)]] = c
            out.append(left)
            out.append(right)
    return out


def _generate(V: YDSpace, gens: dict, D: int, cap: int) -> dict:
    ideal: dict = {}
    for n in range(D + 1):
        comp = V.component(n)
        if comp.dim > cap:
            raise TensorCapExceeded(f"tensor component of degree {n}", comp.dim, cap)
        vecs = list(gens[n].basis) if n in gens else []
        vecs += _multiply_letters(V, None, n, ideal)
        ideal[n] = Subspace.span(vecs, comp.dim)
    return ideal


def _check_stable(V: YDSpace, n: int, sub: Subspace) -> list | None:
    comp = V.component(n)
    for h in V.group.gen_indices:
        for b in sub.basis:
            img = comp.to_dense(V.tensor_act(h, comp.to_sparse(b)))
            if not sub.contains(img):
                return list(b)
    return None


def ideal_generate(V: YDSpace, gens: dict, D: int, cap: int = DEFAULT_TENSOR_CAP,
                   check: bool = True) -> GradedHopfQuotient:
    """Smallest degree-wise two-sided ideal containing gens, checked to be a Hopf ideal.

    It suffices to check the generators: the reduced coproduct of a generator
    must vanish modulo I (x) T + T (x) I, and generators must be G-stable; the
    braided multiplicativity of the coproduct propagates both to the ideal.
    """
    for n, sub in gens.items():
        if n > D:
            raise ValueError(f"generator degree {n} exceeds the cutoff {D}")
        if sub.ambient_dim != V.component(n).dim:
            raise ValueError(f"generators in degree {n} have the wrong ambient dimension")
    A = GradedHopfQuotient(V, D, _generate(V, gens, D, cap), cap)
    if check:
        for n, sub in gens.items():
            if not sub.dim:
                continue
            bad = _check_stable(V, n, sub)
            if bad is not None:
                raise HopfIdealError(f"generators in degree {n} are not stable under the group action",
                                     n, bad)
            for b in sub.basis:
                if A.reduced_delta(n, b):
                    raise HopfIdealError(f"not a Hopf ideal: coproduct of a degree-{n} generator does not "
                                         f"vanish modulo the ideal", n, list(b))
    return A


def free_algebra(V: YDSpace, D: int, cap: int = DEFAULT_TENSOR_CAP) -> GradedHopfQuotient:
    return GradedHopfQuotient(V, D, None, cap)


def nichols_quotient(V: YDSpace, D: int, cap: int = DEFAULT_TENSOR_CAP) -> GradedHopfQuotient:
    gens = {n: nichols_component(V, n, cap).relations for n in range(2, D + 1)}
    return ideal_generate(V, gens, D, cap)


@dataclass
class ValidationReport:
    ideal_closed: bool
    hopf: bool
    yd_stable: bool
    failures: list

    @property
    def ok(self) -> bool:
        return self.ideal_closed and self.hopf and self.yd_stable


def validate(A: GradedHopfQuotient) -> ValidationReport:
    """Re-check ideal closure, the Hopf condition and YD-stability on every basis vector."""
    V = A.V
    fails = []
    closed = hopf = stable = True
    for n in range(A.D + 1):
        extra = _multiply_letters(V, A, n, {m: A.ideal[m] for m in range(n)})
        for v in extra:
            if not A.ideal[n].contains(v):
                closed = False
                fails.append(("closure", n))
                break
        for b in A.ideal[n].basis:
            if A.reduced_delta(n, b):
                hopf = False
                fails.append(("hopf", n))
                break
        if _check_stable(V, n, A.ideal[n]) is not None:
            stable = False
            fails.append(("yd", n))
    return ValidationReport(closed, hopf, stable, fails)


# ---------------------------------------------------------------------------
# decomposables and the combinatorial rank tower


def decomposable_primitives(A: GradedHopfQuotient, n: int) -> Subspace:
    """P(A)_n intersected with the degree-n part of ker(eps)^2."""
    P = primitives(A, n)
    if not P.dim:
        return P
    return intersect(P, A.decomposable_span(n))


def indecomposables(A: GradedHopfQuotient, n: int) -> int:
    return A.dim(n) - A.decomposable_span(n).dim


def quotient_step(A: GradedHopfQuotient) -> GradedHopfQuotient:
    gens = {}
    for n in range(2, A.D + 1):
        dp = decomposable_primitives(A, n)
        vecs = list(A.ideal[n].basis) + [A.lift(n, b) for b in dp.basis]
        gens[n] = Subspace.span(vecs, A.comp(n).dim)
    return ideal_generate(A.V, gens, A.D, A.cap, check=True)


def has_decomposable_primitives(A: GradedHopfQuotient) -> bool:
    return any(decomposable_primitives(A, n).dim for n in range(2, A.D + 1))


@dataclass
class RankReport:
    rank: int | None  # steps needed, or None when max_steps was reached
    lower_bound: int
    D: int
    tower: list  # GradedHopfQuotient per step
    dims: list  # Hilbert data per step

    @property
    def label(self) -> str:
        return f"{self.rank} (up to degree {self.D})" if self.rank is not None else \
            f">= {self.lower_bound} (up to degree {self.D})"


def rank_tower(A: GradedHopfQuotient, max_steps: int = 10) -> RankReport:
    tower = [A]
    steps = 0
    while has_decomposable_primitives(tower[-1]):
        if steps >= max_steps:
            return RankReport(None, steps, A.D, tower, [t.hilbert() for t in tower])
        tower.append(quotient_step(tower[-1]))
        steps += 1
    return RankReport(steps, steps, A.D, tower, [t.hilbert() for t in tower])


def combinatorial_rank(V: YDSpace, D: int, max_steps: int = 10, cap: int = DEFAULT_TENSOR_CAP) -> RankReport:
    return rank_tower(free_algebra(V, D, cap), max_steps)


def tower_kernel(A: GradedHopfQuotient, final: GradedHopfQuotient, n: int) -> Subspace:
    """ker(A_n -> final_n) in the quotient coordinates of A_n."""
    vecs = [A.project(n, b) for b in final.ideal[n].basis]
    return Subspace.span(vecs, A.dim(n))


def woronowicz_primitives(A: GradedHopfQuotient, max_steps: int = 10) -> dict:
    """Per degree n: P(A)_n + ker(A -> end of the combinatorial tower)_n."""
    rep = rank_tower(A, max_steps)
    final = rep.tower[-1]
    out = {}
    for n in range(1, A.D + 1):
        out[n] = subspace_sum(primitives(A, n), tower_kernel(A, final, n))
    return out


def hopf_report(A: GradedHopfQuotient) -> dict:
    return {
        "hilbert": A.hilbert(),
        "primitives": [0] + [primitives(A, n).dim for n in range(1, A.D + 1)],
        "indecomposables": [0] + [indecomposables(A, n) for n in range(1, A.D + 1)],
        "relations": [A.ideal_dim(n) for n in range(A.D + 1)],
    }
