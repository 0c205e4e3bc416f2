"""Braid words, permutations and the formal symmetrizer elements of k[B_n].

Conventions.  A word l1 l2 ... lk acts on the left, so the rightmost letter is
applied first.  Permutations act on positions 1..n, compose as functions
((a * b)(j) = a(b(j))), and the permutation of a word is s_{l1} * ... * s_{lk}.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb
from typing import Callable, Iterable, Sequence

from gmpy2 import mpq

from .exactalg import ONE, ZERO, scalar_str, to_scalar


class BraidError(ValueError):
    pass


# ---------------------------------------------------------------------------
# permutations


@dataclass(frozen=True, order=True)
class Perm:
    """Permutation of {1..n} given by its images (one-line notation)."""

    images: tuple

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise BraidError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Perm":
        im = list(range(1, n + 1))
        im[i - 1], im[j - 1] = j, i
        return cls(tuple(im))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Perm":
        im = list(range(1, n + 1))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                im[a - 1] = b
        return cls(tuple(im))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, j: int) -> int:
        return self.images[j - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        return Perm(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Perm":
        inv = [0] * self.n
        for j, t in enumerate(self.images, 1):
            inv[t - 1] = j
        return Perm(tuple(inv))

    def inversions(self) -> int:
        im = self.images
        return sum(1 for a in range(len(im)) for b in range(a + 1, len(im)) if im[a] > im[b])

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.n + 1))

    def cycles(self) -> list:
        seen, out = set(), []
        for j in range(1, self.n + 1):
            if j in seen:
                continue
            cyc = [j]
            seen.add(j)
            k = self(j)
            while k != j:
                cyc.append(k)
                seen.add(k)
                k = self(k)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self):
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"


# ---------------------------------------------------------------------------
# braid words


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple = ()

    def __post_init__(self):
        for i, e in self.letters:
            if not 1 <= i <= self.strands - 1 or e not in (1, -1):
                raise BraidError(f"letter ({i},{e}) invalid on {self.strands} strands")

    @classmethod
    def unit(cls, n: int) -> "BraidWord":
        return cls(n, ())

    @classmethod
    def from_indices(cls, n: int, idx: Iterable[int]) -> "BraidWord":
        """Signed indices: 2 means sigma_2, -2 means sigma_2^{-1}."""
        return cls(n, tuple((abs(k), 1 if k > 0 else -1) for k in idx))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise BraidError("strand mismatch in product")
        return BraidWord(self.strands, self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple((i, -e) for i, e in reversed(self.letters)))

    def perm(self) -> Perm:
        p = Perm.identity(self.strands)
        for i, _ in self.letters:
            p = p * Perm.transposition(self.strands, i, i + 1)
        return p

    def is_positive(self) -> bool:
        return all(e == 1 for _, e in self.letters)

    def exponent_sum(self) -> int:
        return sum(e for _, e in self.letters)

    def shifted(self, offset: int, strands: int) -> "BraidWord":
        """The same word on strands offset+1 .. offset+self.strands of a wider braid."""
        if offset < 0 or offset + self.strands > strands:
            raise BraidError("shift out of range")
        return BraidWord(strands, tuple((i + offset, e) for i, e in self.letters))

    def signed(self) -> tuple:
        return tuple(i * e for i, e in self.letters)

    def __str__(self):
        if not self.letters:
            return "1"
        return "".join(f"s{i}" + ("" if e == 1 else "^-1") for i, e in self.letters)


@dataclass(frozen=True)
class FormalBraidSum:
    """Finite linear combination of braid words; equality is syntactic on words."""

    strands: int
    terms: tuple  # ((coeff, BraidWord), ...), canonical order, no zero coefficients

    @classmethod
    def build(cls, strands: int, terms: Iterable) -> "FormalBraidSum":
        acc: dict = {}
        for c, w in terms:
            if w.strands != strands:
                raise BraidError("strand mismatch in formal sum")
            acc[w.letters] = acc.get(w.letters, ZERO) + to_scalar(c)
        out = tuple((c, BraidWord(strands, k)) for k, c in sorted(acc.items(), key=lambda kv: kv[0]) if c)
        return cls(strands, out)

    @classmethod
    def of_word(cls, w: BraidWord, c=ONE) -> "FormalBraidSum":
        return cls.build(w.strands, [(c, w)])

    def __add__(self, other: "FormalBraidSum") -> "FormalBraidSum":
        return FormalBraidSum.build(self.strands, self.terms + other.terms)

    def scale(self, c) -> "FormalBraidSum":
        return FormalBraidSum.build(self.strands, [(c * a, w) for a, w in self.terms])

    def __mul__(self, other: "FormalBraidSum") -> "FormalBraidSum":
        """Product in k[B_n] by concatenation of words."""
        return FormalBraidSum.build(
            self.strands, [(a * b, u * v) for a, u in self.terms for b, v in other.terms]
        )

    def inverse_words(self) -> "FormalBraidSum":
        return FormalBraidSum.build(self.strands, [(c, w.inverse()) for c, w in self.terms])

    def shifted(self, offset: int, strands: int) -> "FormalBraidSum":
        return FormalBraidSum.build(strands, [(c, w.shifted(offset, strands)) for c, w in self.terms])

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{scalar_str(c)}*{w}" for c, w in self.terms)


# ---------------------------------------------------------------------------
# lifts and symmetrizers


def _left_descent(t: Perm):
    inv = t.inverse().images
    for i in range(1, t.n):
        if inv[i] < inv[i - 1]:
            return i
    return None


def matsumoto_lift(t: Perm) -> BraidWord:
    """Positive braid lift of a reduced word for t, built by peeling off the
    smallest left descent at each step."""
    letters = []
    while True:
        i = _left_descent(t)
        if i is None:
            break
        letters.append((i, 1))
        t = Perm.transposition(t.n, i, i + 1) * t
    return BraidWord(t.n, tuple(letters))


def shuffles(p: int, q: int) -> list:
    """(p,q)-shuffles: permutations increasing on 1..p and on p+1..p+q, ordered
    lexicographically by the image of 1..p."""
    n = p + q
    out = []
    for first in combinations(range(1, n + 1), p):
        rest = [j for j in range(1, n + 1) if j not in first]
        out.append(Perm(tuple(first) + tuple(rest)))
    return out


def unshuffles(p: int, q: int) -> list:
    if p < 0 or q < 0:
        raise BraidError("p and q must be non-negative")
    return [s.inverse() for s in shuffles(p, q)]


def shuffle_sum(p: int, q: int) -> FormalBraidSum:
    return FormalBraidSum.build(p + q, [(ONE, matsumoto_lift(u)) for u in unshuffles(p, q)])


def coshuffle_sum(p: int, q: int) -> FormalBraidSum:
    return FormalBraidSum.build(p + q, [(ONE, matsumoto_lift(u).inverse()) for u in unshuffles(p, q)])


def symmetrizer_sum(n: int) -> FormalBraidSum:
    if n < 1:
        raise BraidError("symmetrizer needs n >= 1")
    return FormalBraidSum.build(n, [(ONE, matsumoto_lift(Perm(t))) for t in permutations(range(1, n + 1))])


def norm_bracket_sum(n: int) -> FormalBraidSum:
    """(1/2n) sum_{i<2n} (-1)^i sigma_1^i on two strands."""
    if n < 1:
        raise BraidError("half period must be >= 1")
    c = mpq(1, 2 * n)
    return FormalBraidSum.build(2, [((-1) ** i * c, BraidWord(2, ((1, 1),) * i)) for i in range(2 * n)])


# ---------------------------------------------------------------------------
# cabling


def cable(outer: BraidWord, inner: BraidWord, i: int) -> BraidWord:
    """Replace strand i of outer by a ribbon carrying inner (outer o_i inner)."""
    m, n = outer.strands, inner.strands
    if not 1 <= i <= m:
        raise BraidError(f"cabling position {i} out of range 1..{m}")
    total = m + n - 1
    pos = i  # position of the ribbon's first strand before the current outer letter
    pieces = []
    for j, e in reversed(outer.letters):
        if j == pos:
            block = [(j + k, e) for k in range(n)]
            pos = j + 1
        elif j + 1 == pos:
            block = [(j + n - 1 - k, e) for k in range(n)]
            pos = j
        elif j + 1 < pos:
            block = [(j, e)]
        else:
            block = [(j + n - 1, e)]
        pieces.append(block)
    letters = []
    for block in reversed(pieces):
        letters.extend(block)
    letters.extend((k + i - 1, e) for k, e in inner.letters)
    return BraidWord(total, tuple(letters))


def cable_perm(gamma: Perm, rho: Perm, i: int) -> Perm:
    """Permutation-level cabling, by tracing strands."""
    m, n = gamma.n, rho.n
    gi = gamma(i)

    def adj(x):
        return x if x < gi else x + n - 1

    im = []
    for j in range(1, m + n):
        if j < i:
            im.append(adj(gamma(j)))
        elif j > i + n - 1:
            im.append(adj(gamma(j - n + 1)))
        else:
            im.append(gi + rho(j - i + 1) - 1)
    return Perm(tuple(im))


# ---------------------------------------------------------------------------
# Hurwitz action


def _default_ops(mul, inv):
    return (mul or (lambda a, b: a * b)), (inv or (lambda a: a.inverse()))


def hurwitz_act(w: BraidWord, tup: Sequence, mul: Callable | None = None, inv: Callable | None = None) -> tuple:
    """sigma_i: (.., a, b, ..) -> (.., b, b^-1 a b, ..); inverse letters undo it.
    The rightmost letter acts first."""
    if len(tup) != w.strands:
        raise BraidError("tuple length must equal the strand count")
    mul, inv = _default_ops(mul, inv)
    t = list(tup)
    for i, e in reversed(w.letters):
        a, b = t[i - 1], t[i]
        if e == 1:
            t[i - 1], t[i] = b, mul(mul(inv(b), a), b)
        else:
            t[i - 1], t[i] = mul(mul(a, b), inv(a)), a
    return tuple(t)


class CapExceeded(RuntimeError):
    def __init__(self, what: str, reached: int, cap: int):
        super().__init__(f"{what}: cap {cap} exceeded (reached {reached})")
        self.reached = reached
        self.cap = cap


@dataclass
class OrbitReport:
    orbit: list
    size: int
    product_invariant: bool
    stabilizing_word: BraidWord | None  # shortest freely reduced nonempty word fixing the seed
    certified_nontrivial: bool  # the witness is nontrivial in B_n (nonzero exponent sum or nontrivial perm)
    search_bound: int


def hurwitz_orbit(n: int, seed: Sequence, cap: int = 100000, word_bound: int = 6,
                  mul: Callable | None = None, inv: Callable | None = None) -> OrbitReport:
    mul, inv = _default_ops(mul, inv)
    seed = tuple(seed)
    if len(seed) != n:
        raise BraidError("seed length must equal n")
    gens = [BraidWord(n, ((i, e),)) for i in range(1, n) for e in (1, -1)]
    seen = {seed}
    order = [seed]
    frontier = [seed]
    while frontier:
        nxt = []
        for t in frontier:
            for g in gens:
                u = hurwitz_act(g, t, mul, inv)
                if u not in seen:
                    seen.add(u)
                    order.append(u)
                    if len(order) > cap:
                        raise CapExceeded("hurwitz orbit", len(order), cap)
                    nxt.append(u)
        frontier = nxt

    def prod(t):
        acc = t[0]
        for x in t[1:]:
            acc = mul(acc, x)
        return acc

    p0 = prod(seed)
    invariant = all(prod(t) == p0 for t in order)

    # breadth-first over freely reduced words, tracking the image of the seed
    witness = None
    layer = [((), seed)]
    for _ in range(word_bound):
        new = []
        for letters, t in layer:
            for k in range(1, n):
                for e in (1, -1):
                    if letters and letters[0] == (k, -e):
                        continue
                    # prepend: the new letter acts after the existing word
                    u = hurwitz_act(BraidWord(n, ((k, e),)), t, mul, inv)
                    lw = ((k, e),) + letters
                    if u == seed:
                        witness = BraidWord(n, lw)
                        break
                    new.append((lw, u))
                if witness:
                    break
            if witness:
                break
        if witness:
            break
        layer = new
    nontrivial = bool(witness) and (witness.exponent_sum() != 0 or not witness.perm().is_identity())
    return OrbitReport(order, len(order), invariant, witness, nontrivial, word_bound)


def binomial_count(p: int, q: int) -> int:
    return comb(p + q, p)
