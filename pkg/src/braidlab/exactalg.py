"""Exact scalars (rationals and cyclotomics) and dense exact linear algebra.

Rationals are ``gmpy2.mpq``.  Elements of a cyclotomic field Q(zeta_m) are
:class:`Cyclotomic` instances holding power-basis coordinates reduced modulo
the m-th cyclotomic polynomial.  Arithmetic collapses any result that happens
to be rational back to ``mpq``, so a ``Cyclotomic`` is never rational and
``x == 0`` / ``bool(x)`` behave uniformly across both kinds of scalar.

Subspaces are stored by a basis in reduced row-echelon form, which makes
equality of subspaces a plain comparison of tuples.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from gmpy2 import mpq

ZERO = mpq(0)
ONE = mpq(1)


# ---------------------------------------------------------------------------
# scalars


@lru_cache(maxsize=None)
def _cyclo_data(m: int):
    """(phi, reduction table of x^k mod Phi_m, normalized trace weights)."""
    from sympy import Poly, cyclotomic_poly, mobius, symbols, totient

    x = symbols("x")
    phi = int(totient(m))
    coeffs = [int(c) for c in reversed(Poly(cyclotomic_poly(m, x), x).all_coeffs())]
    # x^phi = -sum_{i<phi} coeffs[i] x^i
    size = max(2 * phi - 1, m + 1)
    table = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(size):
        table.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * coeffs[i] for i, c in enumerate(cur)]
    weights = []
    for j in range(phi):
        d = m // gcd(j, m)
        weights.append(mpq(int(mobius(d)), int(totient(d))))
    return phi, tuple(table), tuple(weights)


def _make(m: int, coeffs: Sequence) -> "Scalar":
    for c in coeffs[1:]:
        if c:
            return Cyclotomic(m, tuple(coeffs))
    return mpq(coeffs[0])


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class Cyclotomic:
    """An irrational element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^(phi-1)."""

    __slots__ = ("m", "c")

    def __init__(self, m: int, c: tuple):
        self.m = m
        self.c = c

    def embed(self, big: int) -> tuple:
        """Coordinates of self inside Q(zeta_big), big a multiple of m."""
        if big == self.m:
            return self.c
        step = big // self.m
        phi, table, _ = _cyclo_data(big)
        out = [ZERO] * phi
        for i, a in enumerate(self.c):
            if a:
                for j, t in enumerate(table[i * step]):
                    if t:
                        out[j] += a * t
        return tuple(out)

    @staticmethod
    def _coerce(a, b):
        """Bring two scalars to a common conductor; returns (m, ca, cb)."""
        ma = a.m if isinstance(a, Cyclotomic) else 1
        mb = b.m if isinstance(b, Cyclotomic) else 1
        m = _lcm(ma, mb)
        phi = _cyclo_data(m)[0]

        def coords(x):
            if isinstance(x, Cyclotomic):
                return x.embed(m)
            return (mpq(x),) + (ZERO,) * (phi - 1)

        return m, coords(a), coords(b)

    def __add__(self, other):
        if not isinstance(other, Cyclotomic):
            return Cyclotomic(self.m, (self.c[0] + other,) + self.c[1:])
        m, a, b = self._coerce(self, other)
        return _make(m, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.m, tuple(-x for x in self.c))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Cyclotomic):
            if not other:
                return ZERO
            return Cyclotomic(self.m, tuple(x * other for x in self.c))
        m, a, b = self._coerce(self, other)
        phi, table, _ = _cyclo_data(m)
        prod = [ZERO] * (2 * phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:phi]
        for k in range(phi, 2 * phi - 1):
            p = prod[k]
            if p:
                for j, t in enumerate(table[k]):
                    if t:
                        out[j] += p * t
        return _make(m, out)

    __rmul__ = __mul__

    def inverse(self):
        phi, table, _ = _cyclo_data(self.m)
        # columns of the multiplication-by-self matrix are self * zeta^j
        cols = []
        for j in range(phi):
            e = [ZERO] * phi
            e[j] = ONE
            prod = self * (_make(self.m, e) if j else ONE)
            cols.append(prod.c if isinstance(prod, Cyclotomic) else (prod,) + (ZERO,) * (phi - 1))
        mat = [[cols[j][i] for j in range(phi)] + [ONE if i == 0 else ZERO] for i in range(phi)]
        red, piv = _rref(mat, phi + 1)
        sol = [ZERO] * phi
        for row, p in zip(red, piv):
            sol[p] = row[phi]
        return _make(self.m, sol)

    def __truediv__(self, other):
        if isinstance(other, Cyclotomic):
            return self * other.inverse()
        if not other:
            raise ZeroDivisionError("division by zero in Q(zeta)")
        return Cyclotomic(self.m, tuple(x / other for x in self.c))

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return True

    def __eq__(self, other):
        if not isinstance(other, Cyclotomic):
            return False
        if other.m == self.m:
            return self.c == other.c
        _, a, b = self._coerce(self, other)
        return a == b

    def __hash__(self):
        # normalized trace Tr(x)/[K:Q] does not depend on the field K containing x
        _, _, w = _cyclo_data(self.m)
        return hash(sum((a * t for a, t in zip(self.c, w)), ZERO))

    def to_complex(self) -> complex:
        import cmath

        z = cmath.exp(2j * cmath.pi / self.m)
        return sum(float(a) * z**i for i, a in enumerate(self.c))

    def __repr__(self):
        return scalar_str(self)


Scalar = "mpq | Cyclotomic"


def to_scalar(x) -> "Scalar":
    if isinstance(x, Cyclotomic):
        return x
    if type(x) is type(ZERO):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def zeta(m: int, k: int = 1) -> "Scalar":
    """The root of unity zeta_m^k with zeta_m = exp(2 pi i / m)."""
    if m < 1:
        raise ValueError("conductor must be positive")
    k %= m
    g = gcd(k, m)
    m, k = m // g, k // g
    if m == 1:
        return ONE
    if m == 2:
        return -ONE
    _, table, _ = _cyclo_data(m)
    return Cyclotomic(m, tuple(mpq(t) for t in table[k]))


def root_of_unity(phase: Fraction) -> "Scalar":
    """exp(2 pi i * phase) for a rational phase."""
    phase = Fraction(phase) % 1
    return zeta(phase.denominator, phase.numerator)


def conductor(x) -> int:
    return x.m if isinstance(x, Cyclotomic) else 1


def scalar_str(x) -> str:
    """Exact text form, e.g. ``-1/2``, ``1/3 + 2*z^2 @ zeta(5)``-style is avoided in
    favour of ``1/3+2*zeta(5)^2``."""
    if not isinstance(x, Cyclotomic):
        return str(mpq(x))
    parts = []
    for i, a in enumerate(x.c):
        if not a:
            continue
        if i == 0:
            parts.append(str(a))
            continue
        mon = f"zeta({x.m})" + (f"^{i}" if i > 1 else "")
        if a == 1:
            parts.append(mon)
        elif a == -1:
            parts.append("-" + mon)
        else:
            parts.append(f"{a}*{mon}")
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


def as_phase(x) -> Fraction | None:
    """The phase r with x = exp(2 pi i r) if x is a root of unity, else None."""
    if x == 1:
        return Fraction(0)
    if x == -1:
        return Fraction(1, 2)
    if not isinstance(x, Cyclotomic):
        return None
    n = 2 * x.m
    for k in range(n):
        if zeta(n, k) == x:
            return Fraction(k, n)
    return None


# ---------------------------------------------------------------------------
# matrices


def _rref(rows, ncols):
    """Gauss-Jordan elimination.  Returns (nonzero reduced rows, pivot columns).

    Pivot choice is the first column with a nonzero entry among the unused
    rows, topmost such row; the output is canonical regardless.
    """
    rows = [list(r) for r in rows]
    rows = [r for r in rows if any(r)]
    pivots = []
    nrows = len(rows)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        lead = prow[c]
        if lead != 1:
            inv = ONE / lead
            prow[c:] = [a * inv for a in prow[c:]]
        tail = prow[c:]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f:
                row[c:] = [a - f * b if b else a for a, b in zip(row[c:], tail)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


@dataclass(frozen=True, eq=False)
class Matrix:
    """Dense matrix of exact scalars; ``rows`` must not be mutated."""

    nrows: int
    ncols: int
    rows: list

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], ncols: int | None = None) -> "Matrix":
        data = [[to_scalar(x) for x in r] for r in rows]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")
        return cls(len(data), ncols, data)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(nrows, ncols, [[ZERO] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        m = cls.zeros(n, n)
        for i in range(n):
            m.rows[i][i] = ONE
        return m

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int) -> "Matrix":
        return cls(nrows, len(cols), [[to_scalar(c[i]) for c in cols] for i in range(nrows)])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.rows == other.rows

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(self.nrows, self.ncols, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(-ONE)

    def scale(self, c) -> "Matrix":
        c = to_scalar(c)
        return Matrix(self.nrows, self.ncols, [[a * c for a in r] for r in self.rows])

    def transpose(self) -> "Matrix":
        return Matrix(self.ncols, self.nrows, [list(col) for col in zip(*self.rows)] if self.nrows else [[] for _ in range(self.ncols)])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        # sparse-aware: walk nonzeros of each row of self
        out = []
        orows = other.rows
        for r in self.rows:
            acc = [ZERO] * other.ncols
            for k, a in enumerate(r):
                if a:
                    for j, b in enumerate(orows[k]):
                        if b:
                            acc[j] += a * b
            out.append(acc)
        return Matrix(self.nrows, other.ncols, out)

    def apply(self, v: Sequence) -> list:
        return [sum((a * b for a, b in zip(r, v) if a and b), ZERO) for r in self.rows]

    def kron(self, other: "Matrix") -> "Matrix":
        out = []
        for r in self.rows:
            for s in other.rows:
                out.append([a * b for a in r for b in s])
        return Matrix(self.nrows * other.nrows, self.ncols * other.ncols, out)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def __repr__(self):
        body = "; ".join(" ".join(scalar_str(x) for x in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: {body})"


def stack(mats: Sequence[Matrix]) -> Matrix:
    """Vertical concatenation."""
    ncols = mats[0].ncols
    rows = []
    for m in mats:
        if m.ncols != ncols:
            raise ValueError("column mismatch in stack")
        rows.extend(m.rows)
    return Matrix(len(rows), ncols, rows)


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """A subspace of k^ambient_dim given by its RREF basis."""

    ambient_dim: int
    basis: tuple
    pivots: tuple

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        rows, piv = _rref([[to_scalar(x) for x in v] for v in vectors], ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in rows), tuple(piv))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, (), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(
            ambient_dim,
            tuple(tuple(ONE if j == i else ZERO for j in range(ambient_dim)) for i in range(ambient_dim)),
            tuple(range(ambient_dim)),
        )

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def nonpivots(self) -> tuple:
        p = set(self.pivots)
        return tuple(j for j in range(self.ambient_dim) if j not in p)

    def matrix(self) -> Matrix:
        return Matrix(self.dim, self.ambient_dim, [list(r) for r in self.basis])

    def reduce(self, v: Sequence) -> list:
        """Remainder of v modulo the subspace, supported on non-pivot columns."""
        v = [to_scalar(x) for x in v]
        for row, p in zip(self.basis, self.pivots):
            f = v[p]
            if f:
                v = [a - f * b if b else a for a, b in zip(v, row)]
        return v

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def coordinates(self, v: Sequence) -> list:
        """Coordinates of v (assumed to lie in the subspace) in the RREF basis."""
        return [to_scalar(v[p]) for p in self.pivots]

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.basis)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains_subspace(self)


def rref(m: Matrix) -> tuple[Matrix, list]:
    rows, piv = _rref(m.rows, m.ncols)
    return Matrix(len(rows), m.ncols, rows), piv


def rank(m: Matrix) -> int:
    return len(_rref(m.rows, m.ncols)[1])


def kernel_basis(m: Matrix) -> Subspace:
    """Right null space {v : m v = 0}, canonical RREF basis.

    Eliminating with the column order reversed makes the standard kernel
    vectors come out already in RREF (each free column leads its own vector).
    """
    n = m.ncols
    rev = [list(reversed(r)) for r in m.rows]
    rows, piv = _rref(rev, n)
    # back to original column labels
    piv_orig = [n - 1 - p for p in piv]
    rows = [list(reversed(r)) for r in rows]
    pivset = set(piv_orig)
    free = [j for j in range(n) if j not in pivset]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for row, p in zip(rows, piv_orig):
            a = row[f]
            if a:
                v[p] = -a
        basis.append(tuple(v))
    return Subspace(n, tuple(basis), tuple(free))


def image(m: Matrix) -> Subspace:
    """Column space of m as a subspace of k^nrows."""
    return Subspace.span(m.transpose().rows, m.nrows)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(f"ambient dimension mismatch: {a.ambient_dim} vs {b.ambient_dim}")
    if not b.dim:
        return a
    if not a.dim:
        return b
    return Subspace.span(list(a.basis) + list(b.basis), a.ambient_dim)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """a ∩ b via the kernel of [A^T | -B^T]."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(f"ambient dimension mismatch: {a.ambient_dim} vs {b.ambient_dim}")
    if not a.dim or not b.dim:
        return Subspace.zero(a.ambient_dim)
    # elements of a annihilated by the reduction modulo b
    reduced = [b.reduce(r) for r in a.basis]
    # columns = basis vectors of a; find combinations whose remainder vanishes
    rel = kernel_basis(Matrix(a.ambient_dim, a.dim, [list(col) for col in zip(*reduced)]))
    vecs = []
    for coeffs in rel.basis:
        v = [ZERO] * a.ambient_dim
        for c, row in zip(coeffs, a.basis):
            if c:
                v = [x + c * y for x, y in zip(v, row)]
        vecs.append(v)
    return Subspace.span(vecs, a.ambient_dim)


def quotient_dim(ambient: Subspace, sub: Subspace) -> int:
    if not ambient.contains_subspace(sub):
        raise ValueError("sub is not contained in ambient")
    return ambient.dim - sub.dim


@dataclass(frozen=True)
class AffineSolution:
    particular: tuple
    kernel: Subspace


def solve_affine(lin: Matrix, rhs: Sequence) -> AffineSolution | None:
    """Solve lin x = rhs.  Returns None when the system is inconsistent."""
    if len(rhs) != lin.nrows:
        raise ValueError("rhs length must equal the number of rows")
    aug = [r + [to_scalar(b)] for r, b in zip(lin.rows, rhs)]
    rows, piv = _rref(aug, lin.ncols + 1)
    if piv and piv[-1] == lin.ncols:
        return None
    x = [ZERO] * lin.ncols
    for row, p in zip(rows, piv):
        x[p] = row[lin.ncols]
    return AffineSolution(tuple(x), kernel_basis(lin))


def restrict(op: Matrix, sub: Subspace, target: Subspace | None = None) -> Matrix:
    """Matrix of op restricted to sub, in the RREF bases of sub and target.

    Columns index sub's basis; rows index target's basis (or the ambient
    coordinates when target is None).  Raises if op does not map sub into target.
    """
    images = [op.apply(v) for v in sub.basis]
    if target is None:
        return Matrix.from_columns(images, op.nrows) if images else Matrix.zeros(op.nrows, 0)
    cols = []
    for w in images:
        if not target.contains(w):
            raise ValueError("operator does not map sub into target")
        cols.append(target.coordinates(w))
    return Matrix.from_columns(cols, target.dim) if cols else Matrix.zeros(target.dim, 0)


def inclusion(sub: Subspace) -> Matrix:
    """ambient_dim x dim matrix whose columns are the basis of sub."""
    return Matrix.from_columns(sub.basis, sub.ambient_dim) if sub.dim else Matrix.zeros(sub.ambient_dim, 0)


def vec_add(u: Sequence, v: Sequence) -> list:
    return [a + b for a, b in zip(u, v)]


def vec_scale(c, v: Sequence) -> list:
    return [c * a for a in v]
