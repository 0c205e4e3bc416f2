"""Finite groups of monomial matrices, braid-group quotients and group algebras."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .braids import BraidError, BraidWord, CapExceeded, FormalBraidSum, Perm
from .exactalg import ONE, ZERO, Matrix, Subspace, root_of_unity, scalar_str, subspace_sum, to_scalar

DEFAULT_GROUP_CAP = 20000


@dataclass(frozen=True)
class MonomialMatrix:
    """Invertible monomial matrix M with M e_j = exp(2 pi i phases[j]) e_{perm[j]} (0-based)."""

    perm: tuple
    phases: tuple  # Fractions reduced mod 1

    @classmethod
    def make(cls, perm: Sequence[int], phases: Sequence | None = None) -> "MonomialMatrix":
        perm = tuple(perm)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError(f"not a permutation: {perm}")
        if phases is None:
            phases = (Fraction(0),) * len(perm)
        return cls(perm, tuple(Fraction(p) % 1 for p in phases))

    @classmethod
    def from_perm(cls, p: Perm) -> "MonomialMatrix":
        return cls.make([t - 1 for t in p.images])

    @classmethod
    def identity(cls, d: int) -> "MonomialMatrix":
        return cls.make(range(d))

    @classmethod
    def diagonal(cls, phases: Sequence) -> "MonomialMatrix":
        return cls.make(range(len(phases)), phases)

    @property
    def dim(self) -> int:
        return len(self.perm)

    def __mul__(self, other: "MonomialMatrix") -> "MonomialMatrix":
        perm = tuple(self.perm[k] for k in other.perm)
        phases = tuple((other.phases[j] + self.phases[other.perm[j]]) % 1 for j in range(len(perm)))
        return MonomialMatrix(perm, phases)

    def inverse(self) -> "MonomialMatrix":
        d = self.dim
        perm = [0] * d
        phases = [Fraction(0)] * d
        for j, k in enumerate(self.perm):
            perm[k] = j
            phases[k] = (-self.phases[j]) % 1
        return MonomialMatrix(tuple(perm), tuple(phases))

    def is_permutation(self) -> bool:
        return not any(self.phases)

    def to_matrix(self) -> Matrix:
        m = Matrix.zeros(self.dim, self.dim)
        for j, (k, ph) in enumerate(zip(self.perm, self.phases)):
            m.rows[k][j] = root_of_unity(ph)
        return m

    def __str__(self):
        if self.is_permutation():
            return str(Perm(tuple(k + 1 for k in self.perm)))
        parts = []
        for j, (k, ph) in enumerate(zip(self.perm, self.phases)):
            coef = "" if ph == 0 else f"z[{ph}]*"
            parts.append(f"{j + 1}->{coef}{k + 1}")
        return "[" + " ".join(parts) + "]"


class FinGroup:
    """A finite group given by generator closure.

    Elements are stored in BFS order from the identity; each element records a
    parent and the generator used to reach it, so every element has a word in
    the generators.
    """

    def __init__(self, elements: list, generators: list, parents: list):
        self.elements = elements
        self.index = {g: i for i, g in enumerate(elements)}
        self.gen_indices = [self.index[g] for g in generators]
        self.parents = parents  # (parent index, generator position) or None
        self.identity = 0
        self._mul: dict = {}
        self._inv: dict = {}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        key = (i, j)
        r = self._mul.get(key)
        if r is None:
            r = self.index[self.elements[i] * self.elements[j]]
            self._mul[key] = r
        return r

    def inv(self, i: int) -> int:
        r = self._inv.get(i)
        if r is None:
            r = self.index[self.elements[i].inverse()]
            self._inv[i] = r
        return r

    def word(self, i: int) -> list:
        """Generator positions whose ordered product is element i."""
        out = []
        while self.parents[i] is not None:
            i, g = self.parents[i]
            out.append(g)
        return out[::-1]

    def element_key(self, i: int) -> str:
        return str(self.elements[i])

    def is_abelian(self) -> bool:
        gs = self.gen_indices
        return all(self.mul(a, b) == self.mul(b, a) for a in gs for b in gs)


def close_group(generators: Iterable, cap: int = DEFAULT_GROUP_CAP) -> FinGroup:
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator (use the identity for the trivial group)")
    ident = gens[0] * gens[0].inverse()
    elements = [ident]
    parents = [None]
    seen = {ident: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            g = elements[i]
            for k, s in enumerate(gens):
                h = g * s
                if h not in seen:
                    seen[h] = len(elements)
                    elements.append(h)
                    parents.append((i, k))
                    if len(elements) > cap:
                        raise CapExceeded("group closure", len(elements), cap)
                    nxt.append(seen[h])
        frontier = nxt
    return FinGroup(elements, gens, parents)


# ---------------------------------------------------------------------------
# braid quotients


class RelationError(ValueError):
    pass


@dataclass
class BraidQuotient:
    n: int
    group: FinGroup
    gen_images: list  # element indices of the images of sigma_1 .. sigma_{n-1}

    def eval_word(self, w: BraidWord) -> int:
        if w.strands != self.n:
            raise BraidError(f"word on {w.strands} strands evaluated in a quotient of B_{self.n}")
        g = self.group
        acc = g.identity
        for i, e in w.letters:
            s = self.gen_images[i - 1]
            acc = g.mul(acc, s if e == 1 else g.inv(s))
        return acc

    def check_relations(self) -> None:
        g = self.group
        s = self.gen_images
        for i in range(self.n - 1):
            for j in range(i + 1, self.n - 1):
                if j == i + 1:
                    lhs = g.mul(g.mul(s[i], s[j]), s[i])
                    rhs = g.mul(g.mul(s[j], s[i]), s[j])
                    if lhs != rhs:
                        raise RelationError(f"braid relation s{i + 1}s{j + 1}s{i + 1} = s{j + 1}s{i + 1}s{j + 1} fails")
                elif g.mul(s[i], s[j]) != g.mul(s[j], s[i]):
                    raise RelationError(f"far commutation s{i + 1}s{j + 1} = s{j + 1}s{i + 1} fails")


def braid_quotient(n: int, gen_images: Sequence, cap: int = DEFAULT_GROUP_CAP) -> BraidQuotient:
    gen_images = list(gen_images)
    if len(gen_images) != n - 1:
        raise BraidError(f"B_{n} needs {n - 1} generator images, got {len(gen_images)}")
    if n == 1:
        grp = close_group([MonomialMatrix.identity(1)], cap)
        return BraidQuotient(1, grp, [])
    grp = close_group(gen_images, cap)
    q = BraidQuotient(n, grp, list(grp.gen_indices))
    q.check_relations()
    return q


def symmetric_quotient(n: int) -> BraidQuotient:
    """B_n -> S_n, sigma_i -> (i i+1)."""
    if n == 1:
        return braid_quotient(1, [])
    return braid_quotient(n, [MonomialMatrix.from_perm(Perm.transposition(n, i, i + 1)) for i in range(1, n)])


def cyclic_quotient(m: int) -> BraidQuotient:
    """B_2 -> Z/m, sigma -> generator (realized as the m-cycle)."""
    if m == 1:
        return braid_quotient(2, [MonomialMatrix.identity(1)])
    return braid_quotient(2, [MonomialMatrix.make([(k + 1) % m for k in range(m)])])


# ---------------------------------------------------------------------------
# group algebra


@dataclass(frozen=True)
class GroupAlgebraElement:
    group: FinGroup = field(compare=False)
    coeffs: tuple  # sorted ((element index, scalar), ...), no zeros

    @classmethod
    def make(cls, group: FinGroup, coeffs: dict) -> "GroupAlgebraElement":
        return cls(group, tuple(sorted((k, to_scalar(v)) for k, v in coeffs.items() if v)))

    @classmethod
    def delta(cls, group: FinGroup, i: int, c=ONE) -> "GroupAlgebraElement":
        return cls.make(group, {i: c})

    @classmethod
    def from_vector(cls, group: FinGroup, v: Sequence) -> "GroupAlgebraElement":
        return cls.make(group, {i: c for i, c in enumerate(v) if c})

    @classmethod
    def integral(cls, group: FinGroup) -> "GroupAlgebraElement":
        return cls.make(group, {i: ONE for i in range(group.order)})

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def vector(self) -> list:
        v = [ZERO] * self.group.order
        for k, c in self.coeffs:
            v[k] = c
        return v

    def __add__(self, other):
        d = self.as_dict()
        for k, c in other.coeffs:
            d[k] = d.get(k, ZERO) + c
        return GroupAlgebraElement.make(self.group, d)

    def __neg__(self):
        return self.scale(-ONE)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return GroupAlgebraElement.make(self.group, {k: v * c for k, v in self.coeffs})

    def __mul__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return self.scale(to_scalar(other))
        g = self.group
        d: dict = {}
        for a, x in self.coeffs:
            for b, y in other.coeffs:
                k = g.mul(a, b)
                d[k] = d.get(k, ZERO) + x * y
        return GroupAlgebraElement.make(g, d)

    def is_zero(self) -> bool:
        return not self.coeffs

    def keyed(self) -> dict:
        """Coefficients keyed by canonical element strings (for reports)."""
        return {self.group.element_key(k): scalar_str(c) for k, c in self.coeffs}

    def __str__(self):
        return " + ".join(f"{scalar_str(c)}*{self.group.element_key(k)}" for k, c in self.coeffs) or "0"


def eval_sum(s: FormalBraidSum, q: BraidQuotient) -> GroupAlgebraElement:
    if s.strands != q.n:
        raise BraidError(f"sum on {s.strands} strands evaluated in a quotient of B_{q.n}")
    d: dict = {}
    for c, w in s.terms:
        k = q.eval_word(w)
        d[k] = d.get(k, ZERO) + c
    return GroupAlgebraElement.make(q.group, d)


def antipode(x: GroupAlgebraElement) -> GroupAlgebraElement:
    g = x.group
    return GroupAlgebraElement.make(g, {g.inv(k): c for k, c in x.coeffs})


def left_mult_matrix(x: GroupAlgebraElement) -> Matrix:
    """Matrix of y -> x*y in the element basis."""
    g = x.group
    n = g.order
    rows = [[ZERO] * n for _ in range(n)]
    for col in range(n):
        for a, c in x.coeffs:
            rows[g.mul(a, col)][col] += c
    return Matrix(n, n, rows)


def right_mult_matrix(x: GroupAlgebraElement) -> Matrix:
    """Matrix of y -> y*x in the element basis."""
    g = x.group
    n = g.order
    rows = [[ZERO] * n for _ in range(n)]
    for col in range(n):
        for a, c in x.coeffs:
            rows[g.mul(col, a)][col] += c
    return Matrix(n, n, rows)


def right_multiply_vector(group: FinGroup, v: Sequence, h: int) -> list:
    """Coordinates of v*h."""
    out = [ZERO] * group.order
    for k, c in enumerate(v):
        if c:
            out[group.mul(k, h)] = c
    return out


def right_ideal(x, group: FinGroup | None = None) -> Subspace:
    """x*k[Q] for an element x, or the right ideal generated by a Subspace of k[Q]."""
    if isinstance(x, GroupAlgebraElement):
        group = x.group
        start = Subspace.span([x.vector()], group.order)
    else:
        if group is None:
            raise ValueError("group required for a Subspace argument")
        start = x
    cur = start
    while True:
        new = [right_multiply_vector(group, b, s) for b in cur.basis for s in group.gen_indices]
        nxt = subspace_sum(cur, Subspace.span(new, group.order))
        if nxt.dim == cur.dim:
            return cur
        cur = nxt


def is_right_stable(sub: Subspace, group: FinGroup) -> bool:
    return all(sub.contains(right_multiply_vector(group, b, s)) for b in sub.basis for s in group.gen_indices)


def quotient_hom(q: BraidQuotient, r: BraidQuotient) -> list:
    """The map Q -> R sending gen_images of q to those of r, as an index table.
    Raises RelationError if it is not a well-defined homomorphism."""
    if q.n != r.n:
        raise BraidError("quotients of different braid groups")
    G, H = q.group, r.group
    img = [None] * G.order
    img[G.identity] = H.identity
    # generators of G's closure are exactly q.gen_images in order
    for i in range(1, G.order):
        p, k = G.parents[i]
        img[i] = H.mul(img[p], r.gen_images[k])
    for i in range(G.order):
        for pos, s in enumerate(q.gen_images):
            if img[G.mul(i, s)] != H.mul(img[i], r.gen_images[pos]):
                raise RelationError("generator assignment does not define a homomorphism")
    return img


def pushforward(x: GroupAlgebraElement, hom: Sequence[int], target: FinGroup) -> GroupAlgebraElement:
    d: dict = {}
    for k, c in x.coeffs:
        t = hom[k]
        d[t] = d.get(t, ZERO) + c
    return GroupAlgebraElement.make(target, d)


def pushforward_subspace(sub: Subspace, hom: Sequence[int], target: FinGroup) -> Subspace:
    vecs = []
    for b in sub.basis:
        v = [ZERO] * target.order
        for k, c in enumerate(b):
            if c:
                v[hom[k]] += c
        vecs.append(v)
    return Subspace.span(vecs, target.order)
