"""Exact linear algebra over the rationals.

Vectors are tuples of ``Fraction``; matrices are lists of row lists.  Every
routine is exact, so equality of subspaces is decided by comparing reduced
row echelon forms.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import GsmError

ZERO = Fraction(0)
ONE = Fraction(1)

Vector = tuple  # tuple[Fraction, ...]
Matrix = list  # list[list[Fraction]]


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def vec(xs: Iterable) -> Vector:
    return tuple(frac(x) for x in xs)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


def add(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise GsmError("E_DIM_MISMATCH", f"{len(u)} != {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise GsmError("E_DIM_MISMATCH", f"{len(u)} != {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Sequence) -> Vector:
    c = frac(c)
    return tuple(c * a for a in v)


def is_zero(v: Sequence) -> bool:
    return all(a == 0 for a in v)


def support(v: Sequence) -> list[int]:
    return [i for i, a in enumerate(v) if a != 0]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[ZERO] * n for _ in range(m)]


def matmul(a: Matrix, b: Matrix, inner: int | None = None) -> Matrix:
    """Product ``a @ b``.  ``inner`` is only needed when ``a`` has no rows."""
    if not a:
        return []
    k = len(a[0]) if inner is None else inner
    if len(b) != k:
        raise GsmError("E_DIM_MISMATCH", f"inner dimensions {k} and {len(b)}")
    n = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [ZERO] * n
        for t, coef in enumerate(row):
            if not coef:
                continue
            for j, x in enumerate(b[t]):
                if x:
                    acc[j] += coef * x
        out.append(acc)
    return out


def matvec(a: Matrix, v: Sequence) -> Vector:
    out = []
    for row in a:
        s = ZERO
        for coef, x in zip(row, v):
            if coef and x:
                s += coef * x
        out.append(s)
    return tuple(out)


def transpose(a: Matrix, ncols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def from_columns(cols: Sequence[Sequence], nrows: int) -> Matrix:
    """Matrix whose j-th column is ``cols[j]``."""
    return [[frac(c[i]) for c in cols] for i in range(nrows)]


def columns(a: Matrix, ncols: int) -> list[Vector]:
    return [tuple(row[j] for row in a) for j in range(ncols)]


def mat_equal(a: Matrix, b: Matrix) -> bool:
    return [list(r) for r in a] == [list(r) for r in b]


def rref(rows: Iterable[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; zero rows are dropped.

    Returns ``(rows, pivots)`` with ``pivots`` strictly increasing.
    """
    m = [[frac(x) for x in r] for r in rows]
    for r in m:
        if len(r) != ncols:
            raise GsmError("E_DIM_MISMATCH", f"row of length {len(r)} in {ncols} columns")
    m = [r for r in m if any(r)]
    pivots = []
    top = 0
    for col in range(ncols):
        piv = None
        for i in range(top, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[top], m[piv] = m[piv], m[top]
        prow = m[top]
        inv = 1 / prow[col]
        if inv != 1:
            prow = [x * inv for x in prow]
            m[top] = prow
        nz = [j for j in range(col, ncols) if prow[j]]
        for i in range(len(m)):
            if i == top:
                continue
            f = m[i][col]
            if not f:
                continue
            row = m[i]
            for j in nz:
                row[j] -= f * prow[j]
        pivots.append(col)
        top += 1
        if top == len(m):
            break
    return m[:top], pivots


def rank(rows: Iterable[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(a: Matrix, ncols: int) -> list[Vector]:
    """Basis of ``{v : a v = 0}``, one vector per free column."""
    r, pivots = rref(a, ncols)
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(r, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def solve(a: Matrix, b: Sequence, ncols: int) -> Vector | None:
    """One solution of ``a x = b`` or ``None`` when inconsistent."""
    aug = [list(row) + [frac(bi)] for row, bi in zip(a, b)]
    r, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [ZERO] * ncols
    for row, p in zip(r, pivots):
        x[p] = row[ncols]
    return tuple(x)


class Subspace:
    """A subspace of Q^dim held in reduced row echelon form."""

    __slots__ = ("dim", "rows", "pivots")

    def __init__(self, dim: int, rows: Iterable[Sequence] = ()):
        self.dim = dim
        r, p = rref(rows, dim)
        self.rows = tuple(tuple(x) for x in r)
        self.pivots = tuple(p)

    @classmethod
    def full(cls, dim: int) -> "Subspace":
        return cls(dim, identity(dim))

    @classmethod
    def zero(cls, dim: int) -> "Subspace":
        return cls(dim)

    @classmethod
    def coordinate(cls, dim: int, indices: Iterable[int]) -> "Subspace":
        return cls(dim, [unit_vector(dim, i) for i in sorted(set(indices))])

    @property
    def rank(self) -> int:
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.dim == other.dim and self.rows == other.rows

    def __hash__(self):
        return hash((self.dim, self.rows))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, rank={self.rank})"

    def _check(self, other: "Subspace"):
        if self.dim != other.dim:
            raise GsmError("E_DIM_MISMATCH", f"ambient {self.dim} != {other.dim}")

    def coordinates(self, v: Sequence) -> Vector | None:
        """Coefficients of ``v`` on the echelon basis, or ``None`` if outside."""
        if len(v) != self.dim:
            raise GsmError("E_DIM_MISMATCH", f"vector of length {len(v)} in ambient {self.dim}")
        coords = tuple(frac(v[p]) for p in self.pivots)
        acc = [ZERO] * self.dim
        for c, row in zip(coords, self.rows):
            if c != 0:
                for j, x in enumerate(row):
                    if x != 0:
                        acc[j] += c * x
        if tuple(acc) != tuple(frac(x) for x in v):
            return None
        return coords

    def contains(self, other) -> bool:
        """Membership of a vector, or inclusion of a subspace."""
        if isinstance(other, Subspace):
            self._check(other)
            return all(self.coordinates(r) is not None for r in other.rows)
        return self.coordinates(other) is not None

    def combine(self, coords: Sequence) -> Vector:
        acc = [ZERO] * self.dim
        for c, row in zip(coords, self.rows):
            c = frac(c)
            if c != 0:
                for j, x in enumerate(row):
                    if x != 0:
                        acc[j] += c * x
        return tuple(acc)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.dim, self.rows + other.rows)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not self.rows or not other.rows:
            return Subspace(self.dim)
        # c·U = d·V  <=>  (c, -d) in the left kernel of [U; V]
        k, l = self.rank, other.rank
        stacked = transpose([list(r) for r in self.rows] + [[-x for x in r] for r in other.rows])
        kernel = nullspace(stacked, k + l)
        return Subspace(self.dim, [self.combine(c[:k]) for c in kernel])


def span(vectors: Iterable[Sequence], dim: int) -> Subspace:
    return Subspace(dim, vectors)


def column_space(a: Matrix, ncols: int, nrows: int) -> Subspace:
    return Subspace(nrows, columns(a, ncols))
