"""Filtration by powers of the primitives, associated graded algebras and the
primitive tower A -> A^(1) -> A^(2) -> ..., with the structure verifiers.

All subspaces of A_q are in the quotient coordinates of the GradedHopfQuotient.
The associated graded of A is presented on W = P(A) (generator weights = their
degrees): its ideal in word length p and weight q is the kernel of evaluating
W-words in F_p(A)_q / F_{p-1}(A)_q.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .exactalg import ONE, ZERO, Matrix, Subspace, intersect, kernel_basis, subspace_sum
from .hopf import (GradedHopfQuotient, decomposable_primitives, nichols_component, primitives, rank_tower,
                   tower_kernel, woronowicz_primitives)
from .ydspace import YDSpace, sub_module

TOWER_TENSOR_CAP = 20000


# ---------------------------------------------------------------------------
# products in A


def multiply(A: GradedHopfQuotient, q1: int, u, q2: int, v) -> list:
    """Product of classes u in A_{q1} and v in A_{q2} (quotient coordinates)."""
    lu = A.lift_sparse(q1, u)
    lv = A.lift_sparse(q2, v)
    prod: dict = {}
    for a, x in lu.items():
        for b, y in lv.items():
            w = a + b
            prod[w] = prod.get(w, ZERO) + x * y
    q = q1 + q2
    out = [ZERO] * A.dim(q)
    for k, c in A.project_sparse(q, prod).items():
        out[k] = c
    return out


@dataclass
class FilteredAlgebraView:
    owner: GradedHopfQuotient
    layers: dict  # (p, q) -> Subspace of A_q, for 0 <= p <= q <= D
    prim: dict  # q -> Subspace P(A)_q

    def layer(self, p: int, q: int) -> Subspace:
        if p >= q:
            return self.layers[(q, q)]
        return self.layers[(p, q)]

    def graded_dim(self, p: int, q: int) -> int:
        if p == 0:
            return 1 if q == 0 else 0
        return self.layer(p, q).dim - self.layer(p - 1, q).dim


def primitive_filtration(A: GradedHopfQuotient, D: int | None = None) -> FilteredAlgebraView:
    D = A.D if D is None else D
    prim = {r: primitives(A, r) for r in range(1, D + 1)}
    layers: dict = {(0, 0): Subspace.full(1)}
    for q in range(1, D + 1):
        layers[(0, q)] = Subspace.zero(A.dim(q))
    for p in range(1, D + 1):
        layers[(p, 0)] = layers[(0, 0)]
        for q in range(1, D + 1):
            if p > q:
                continue
            prev = layers[(p - 1, q)]
            vecs = []
            for r in range(1, q + 1):
                lower = layers[(min(p - 1, q - r), q - r)]
                for x in prim[r].basis:
                    for y in lower.basis:
                        vecs.append(multiply(A, r, x, q - r, y))
            layers[(p, q)] = subspace_sum(prev, Subspace.span(vecs, A.dim(q)))
    return FilteredAlgebraView(A, layers, prim)


# ---------------------------------------------------------------------------
# the primitive space as a weighted YD module


@dataclass
class PrimitiveSpace:
    space: YDSpace  # W, weights = degrees
    vectors: list  # for each W basis vector: (degree r, quotient coordinates in A_r)


def direct_sum_spaces(parts: list, group) -> tuple:
    """Concatenate sub-YD data [(r, SubYD)] into one YDSpace with weights r."""
    labels, degs, weights, vectors = [], [], [], []
    offsets = []
    total = sum(sy.space.dim for _, sy in parts)
    for r, sy in parts:
        offsets.append(len(labels))
        sp = sy.space
        labels += [f"p{r}_{k + 1}" for k in range(sp.dim)]
        degs += sp.degree
        weights += [r] * sp.dim
        vectors += [(r, v) for v in sy.vectors]
    mats = []
    for pos in range(len(group.gen_indices)):
        m = Matrix.zeros(total, total)
        for (r, sy), off in zip(parts, offsets):
            g = sy.space.gen_action[pos]
            for i in range(g.nrows):
                for j in range(g.ncols):
                    if g.rows[i][j]:
                        m.rows[off + i][off + j] = g.rows[i][j]
        mats.append(m)
    return YDSpace(group, labels, degs, mats, weights, check_ybe=False), vectors


def _quotient_module(A: GradedHopfQuotient, r: int):
    """Group degrees of the quotient coordinates of A_r and the action on them."""
    V = A.V
    comp = A.comp(r)
    nonp = A.nonpivots(r)
    degrees = [V.word_degree(comp.words[j]) for j in nonp]

    def act(pos, v):
        h = V.group.gen_indices[pos]
        lifted = A.lift_sparse(r, v)
        img = A.project_sparse(r, V.tensor_act(h, lifted))
        out = [ZERO] * len(nonp)
        for k, c in img.items():
            out[k] = c
        return out

    return degrees, act


def primitive_space(A: GradedHopfQuotient, D: int | None = None) -> PrimitiveSpace:
    D = A.D if D is None else D
    parts = []
    for r in range(1, D + 1):
        P = primitives(A, r)
        if not P.dim:
            continue
        degrees, act = _quotient_module(A, r)
        parts.append((r, sub_module(A.V.group, degrees, act, P, weight=r)))
    W, vectors = direct_sum_spaces(parts, A.V.group)
    return PrimitiveSpace(W, vectors)


# ---------------------------------------------------------------------------
# associated graded


@dataclass
class GradedStage:
    algebra: GradedHopfQuotient  # T(W)/I'
    source: GradedHopfQuotient
    filtration: FilteredAlgebraView
    prims: PrimitiveSpace
    bigraded: dict  # (p, q) -> dim
    checks: dict = field(default_factory=dict)


def bigraded_dims(A: GradedHopfQuotient) -> dict:
    """(word length p, weight q) -> dim of that part of A_q (the ideal must be length-homogeneous)."""
    out = {}
    for q in range(A.D + 1):
        comp = A.comp(q)
        ranges = comp.length_ranges()
        blocks = A.ideal_blocks(q)
        if len(blocks) == 1 and len(ranges) > 1:
            sub = blocks[0][2]
            for p, (a, b) in ranges.items():
                inside = sum(1 for piv in sub.pivots if a <= piv < b)
                out[(p, q)] = (b - a) - inside
        else:
            for p, (a, b) in ranges.items():
                inside = sum(sub.dim for s, e, sub in blocks if s == a)
                out[(p, q)] = (b - a) - inside
    return out


def associated_graded(A: GradedHopfQuotient, D: int | None = None, cap: int = TOWER_TENSOR_CAP,
                      check: bool = True) -> GradedStage:
    D = A.D if D is None else D
    F = primitive_filtration(A, D)
    ps = primitive_space(A, D)
    W = ps.space
    evals: dict = {(): (0, [ONE])}

    def evaluate(word):
        r = evals.get(word)
        if r is None:
            deg, vec = ps.vectors[word[0]]
            qrest, rest = evaluate(word[1:])
            r = (deg + qrest, multiply(A, deg, vec, qrest, rest))
            evals[word] = r
        return r

    blocks: dict = {}
    bigraded: dict = {}
    checks = {"dim_conservation": True, "eval_onto_graded": True}
    for q in range(D + 1):
        comp = W.component(q)
        if comp.dim > cap:
            from .ydspace import TensorCapExceeded

            raise TensorCapExceeded(f"tensor component of degree {q} of the primitive space", comp.dim, cap)
        blocks[q] = {}
        total = 0
        for p, (a, b) in comp.length_ranges().items():
            if q == 0:
                bigraded[(0, 0)] = 1
                total += 1
                continue
            lower = F.layer(p - 1, q)
            cols = [lower.reduce(evaluate(w)[1]) for w in comp.words[a:b]]
            m = Matrix.from_columns(cols, A.dim(q)) if cols else Matrix.zeros(A.dim(q), 0)
            ker = kernel_basis(m)
            blocks[q][p] = ker
            d = (b - a) - ker.dim
            bigraded[(p, q)] = d
            total += d
            if d != F.graded_dim(p, q):
                checks["eval_onto_graded"] = False
        if total != A.dim(q):
            checks["dim_conservation"] = False
    new = GradedHopfQuotient(W, D, cap=cap, blocks=blocks)
    if check:
        checks["hopf"] = _hopf_check_blocks(new)
    return GradedStage(new, A, F, ps, bigraded, checks)


def _hopf_check_blocks(A: GradedHopfQuotient) -> bool:
    """Reduced coproduct of every ideal vector vanishes modulo I (x) T + T (x) I.

    Equivalent test used here: in each length block the coproduct rows must lie
    in the row space of the ideal's annihilator, i.e. kill every ideal vector.
    """
    for q in range(2, A.D + 1):
        for a, b, sub in A.ideal_blocks(q):
            if not sub.dim:
                continue
            # coproduct matrix restricted to the block: rows keyed (a, i, j)
            rows: dict = {}
            for col in range(a, b):
                for key, c in A.reduced_delta_word(q, col).items():
                    rows.setdefault(key, {})[col - a] = c
            if not rows:
                continue
            for vec in sub.basis:
                nz = [(k, c) for k, c in enumerate(vec) if c]
                for row in rows.values():
                    s = ZERO
                    for k, c in nz:
                        x = row.get(k)
                        if x:
                            s += x * c
                    if s:
                        return False
    return True


# ---------------------------------------------------------------------------
# tower


@dataclass
class TowerReport:
    stages: list  # GradedStage per stage k >= 1; stage 0 is the input
    input: GradedHopfQuotient
    bigraded: list  # per stage k (including 0): dict (p,q) -> dim
    stabilization: list  # per k: dims of stages k and k+1 agree for q <= k+1
    infinity: dict  # (p, q) -> dim A^(q)_{p,q}
    D: int

    def algebra(self, k: int) -> GradedHopfQuotient:
        return self.input if k == 0 else self.stages[k - 1].algebra

    def conservation(self) -> bool:
        for dims in self.bigraded:
            for q in range(self.D + 1):
                if sum(v for (p, qq), v in dims.items() if qq == q) != self.input.dim(q):
                    return False
        return True


def _agree(d1: dict, d2: dict, qmax: int) -> bool:
    keys = {k for k in list(d1) + list(d2) if k[1] <= qmax}
    return all(d1.get(k, 0) == d2.get(k, 0) for k in keys)


def primitive_tower(A: GradedHopfQuotient, D: int | None = None, k_max: int | None = None,
                    cap: int = TOWER_TENSOR_CAP, check: bool = True) -> TowerReport:
    D = A.D if D is None else D
    k_max = D if k_max is None else k_max
    stages = []
    dims = [bigraded_dims(A)]
    cur = A
    for _ in range(k_max):
        st = associated_graded(cur, D, cap, check)
        stages.append(st)
        dims.append(st.bigraded)
        cur = st.algebra
    stab = [_agree(dims[k], dims[k + 1], k + 1) for k in range(len(dims) - 1)]
    inf = {}
    for q in range(D + 1):
        k = min(q, len(dims) - 1)
        for (p, qq), v in dims[k].items():
            if qq == q:
                inf[(p, q)] = v
    return TowerReport(stages, A, dims, stab, inf, D)


# ---------------------------------------------------------------------------
# verifiers


@dataclass
class PBWReport:
    passed: bool
    tower: TowerReport
    primitive_dims: list  # dim P(A^(D))_q
    indecomposable_dims: list  # dim Q(A^(D))_q
    nichols_bigraded: dict  # (p, q) -> dim of the Nichols algebra of the stabilized primitives
    diagonal: list  # A^(inf)_{q,q}
    failures: list


def verify_pbw(A: GradedHopfQuotient, D: int | None = None, k_max: int | None = None,
               cap: int = TOWER_TENSOR_CAP) -> PBWReport:
    from .hopf import indecomposables

    D = A.D if D is None else D
    tower = primitive_tower(A, D, k_max, cap)
    top = tower.algebra(len(tower.stages))
    fails = []
    if not tower.conservation():
        fails.append("dimension conservation")
    for k, ok in enumerate(tower.stabilization):
        if not ok:
            fails.append(f"stabilization at stage {k}")
    for st in tower.stages:
        for name, ok in st.checks.items():
            if not ok:
                fails.append(f"stage check {name}")
    pd = [0] + [primitives(top, q).dim for q in range(1, D + 1)]
    qd = [0] + [indecomposables(top, q) for q in range(1, D + 1)]
    if pd != qd:
        fails.append("primitives differ from indecomposables")
    # Nichols algebra of the stabilized primitive space, bigraded by word length
    W = primitive_space(top, D).space
    nb = {(0, 0): 1}
    for q in range(1, D + 1):
        comp = nichols_component(W, q, cap)
        for p, d in comp.by_length.items():
            nb[(p, q)] = d
    if not _agree(nb, tower.infinity, D):
        fails.append("tower dims differ from the Nichols algebra of the stabilized primitives")
    diag = [tower.infinity.get((q, q), 0) for q in range(D + 1)]
    return PBWReport(not fails, tower, pd, qd, nb, diag, fails)


@dataclass
class PerfectStructureReport:
    passed: bool
    primitive_dims: list
    generator_dims: list  # dim (P(A) cap V)_n
    decomposable_dims: list
    tower_kernel_dims: list
    woronowicz_dims: list
    failures: list


def generator_span(A: GradedHopfQuotient, n: int) -> Subspace:
    """Image in A_n of the single letters of weight n."""
    comp = A.comp(n)
    vecs = []
    for j, w in enumerate(comp.words):
        if len(w) == 1:
            v = [ZERO] * A.dim(n)
            for k, c in A.project_word(n, j).items():
                v[k] = c
            vecs.append(v)
    return Subspace.span(vecs, A.dim(n))


def verify_perfect_structure(A: GradedHopfQuotient, D: int | None = None, max_steps: int = 10
                             ) -> PerfectStructureReport:
    D = A.D if D is None else D
    rep = rank_tower(A, max_steps)
    final = rep.tower[-1]
    wor = woronowicz_primitives(A, max_steps)
    pd, gd, dd, kd, wd, fails = [0], [0], [0], [0], [0], []
    for n in range(1, D + 1):
        P = primitives(A, n)
        gens = generator_span(A, n)
        dec = decomposable_primitives(A, n) if n >= 2 else Subspace.zero(A.dim(n))
        Vn = intersect(P, gens)
        if not P.contains_subspace(gens):
            fails.append(f"generators not primitive in degree {n}")
        if intersect(Vn, dec).dim or subspace_sum(Vn, dec) != P:
            fails.append(f"P(A)_{n} is not the direct sum of generators and decomposables")
        ker = tower_kernel(A, final, n)
        if not ker.contains_subspace(dec):
            fails.append(f"decomposable primitives not in the tower kernel in degree {n}")
        if not wor[n].contains_subspace(P):
            fails.append(f"P(A)_{n} not contained in the Woronowicz primitives")
        pd.append(P.dim)
        gd.append(Vn.dim)
        dd.append(dec.dim)
        kd.append(ker.dim)
        wd.append(wor[n].dim)
    return PerfectStructureReport(not fails, pd, gd, dd, kd, wd, fails)
