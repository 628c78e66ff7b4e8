"""Exact linear algebra over Q(i, sqrt2).

Matrices are immutable, entries are Scalar, and every routine (echelon
form, kernels, solving, characteristic polynomial, nilpotent exponential)
is exact.  Pivoting is deterministic (first nonzero entry in column
order), so canonical bases and serialized output are reproducible to the
byte.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .scalars import ONE, ZERO, Scalar, ScalarLike

Vector = tuple[Scalar, ...]


def as_vector(entries: Iterable[ScalarLike]) -> Vector:
    return tuple(Scalar.coerce(x) for x in entries)


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(c: ScalarLike, v: Vector) -> Vector:
    s = Scalar.coerce(c)
    return tuple(s * a for a in v)


def vec_conj(v: Vector) -> Vector:
    return tuple(a.conjugate() for a in v)


def vec_is_zero(v: Vector) -> bool:
    return all(a.is_zero() for a in v)


class Matrix:
    """Immutable exact matrix; rows is a tuple of tuples of Scalar."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[ScalarLike]]) -> None:
        coerced = tuple(tuple(Scalar.coerce(x) for x in row) for row in rows)
        if not coerced:
            raise ValueError("matrix needs at least one row")
        width = len(coerced[0])
        if any(len(row) != width for row in coerced):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", coerced)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Matrix is immutable")

    @staticmethod
    def zeros(nrows: int, ncols: int) -> "Matrix":
        return Matrix([[ZERO] * ncols for _ in range(nrows)])

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def from_cols(cols: Sequence[Vector]) -> "Matrix":
        if not cols:
            raise ValueError("need at least one column")
        n = len(cols[0])
        return Matrix([[cols[j][i] for j in range(len(cols))] for i in range(n)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, key: tuple[int, int]) -> Scalar:
        i, j = key
        return self.rows[i][j]

    def row(self, i: int) -> Vector:
        return self.rows[i]

    def col(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def cols(self) -> list[Vector]:
        return [self.col(j) for j in range(self.ncols)]

    # -- algebra ----------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ]
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in row] for row in self.rows])

    def __mul__(self, c: ScalarLike) -> "Matrix":
        s = Scalar.coerce(c)
        return Matrix([[s * a for a in row] for row in self.rows])

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = [other.col(j) for j in range(other.ncols)]
        return Matrix(
            [
                [_dot(row, col) for col in ocols]
                for row in self.rows
            ]
        )

    def __pow__(self, n: int) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("power of a non-square matrix")
        if n < 0:
            return inverse(self) ** (-n)
        result = Matrix.identity(self.nrows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def apply(self, v: Vector) -> Vector:
        if len(v) != self.ncols:
            raise ValueError(f"vector length {len(v)} vs {self.ncols} columns")
        return tuple(_dot(row, v) for row in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix([self.col(j) for j in range(self.ncols)])

    def conj(self) -> "Matrix":
        return Matrix([[a.conjugate() for a in row] for row in self.rows])

    def conj_transpose(self) -> "Matrix":
        return self.transpose().conj()

    def trace(self) -> Scalar:
        if self.nrows != self.ncols:
            raise ValueError("trace of a non-square matrix")
        t = ZERO
        for i in range(self.nrows):
            t = t + self.rows[i][i]
        return t

    def is_zero(self) -> bool:
        return all(a.is_zero() for row in self.rows for a in row)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Matrix):
            return self.rows == other.rows
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.rows)

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(a) for a in row) + "]" for row in self.rows)

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols})"


def _dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    t = ZERO
    for a, b in zip(u, v):
        if a.is_zero() or b.is_zero():
            continue
        t = t + a * b
    return t


def bracket(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a


def form_value(form: Matrix, u: Vector, w: Vector) -> Scalar:
    """Bilinear value u^T form w; arguments in that order."""
    return _dot(u, form.apply(w))


# -- elimination ------------------------------------------------------------


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form with the list of pivot columns."""
    rows = [list(r) for r in m.rows]
    nr, nc = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        pivot_row = next((i for i in range(r, nr) if not rows[i][c].is_zero()), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [inv * x for x in rows[r]]
        for i in range(nr):
            if i != r and not rows[i][c].is_zero():
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return Matrix(rows), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> list[Vector]:
    """Basis of the right kernel, canonical (free variables set to 1)."""
    r, pivots = rref(m)
    nc = m.ncols
    pivot_set = set(pivots)
    free = [c for c in range(nc) if c not in pivot_set]
    basis: list[Vector] = []
    for f in free:
        v = [ZERO] * nc
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -r[i, f]
        basis.append(tuple(v))
    return basis


def solve(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """One exact solution X of A X = B, or None if inconsistent."""
    if a.nrows != b.nrows:
        raise ValueError("row count mismatch")
    aug = Matrix([list(ra) + list(rb) for ra, rb in zip(a.rows, b.rows)])
    r, pivots = rref(aug)
    if any(p >= a.ncols for p in pivots):
        return None
    x = [[ZERO] * b.ncols for _ in range(a.ncols)]
    for i, p in enumerate(pivots):
        for j in range(b.ncols):
            x[p][j] = r[i, a.ncols + j]
    return Matrix(x) if a.ncols else None


def solve_vector(a: Matrix, b: Vector) -> Optional[Vector]:
    x = solve(a, Matrix([[t] for t in b]))
    return x.col(0) if x is not None else None


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise ValueError("inverse of a non-square matrix")
    x = solve(m, Matrix.identity(m.nrows))
    if x is None or rank(m) != m.nrows:
        raise ValueError("matrix is singular")
    return x


def det(m: Matrix) -> Scalar:
    """Exact determinant by Gaussian elimination with swap tracking."""
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    rows = [list(r) for r in m.rows]
    n = m.nrows
    result = ONE
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if not rows[i][c].is_zero()), None)
        if pivot_row is None:
            return ZERO
        if pivot_row != c:
            rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
            result = -result
        result = result * rows[c][c]
        inv = rows[c][c].inverse()
        for i in range(c + 1, n):
            if not rows[i][c].is_zero():
                factor = rows[i][c] * inv
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[c])]
    return result


def flatten(m: Matrix) -> Vector:
    """Row-major coordinates of a matrix, for subspace work in End(V)."""
    return tuple(x for row in m.rows for x in row)


def unflatten(v: Vector, nrows: int, ncols: int) -> Matrix:
    if len(v) != nrows * ncols:
        raise ValueError("coordinate length does not match the shape")
    return Matrix([v[i * ncols : (i + 1) * ncols] for i in range(nrows)])


def charpoly(m: Matrix) -> list[Scalar]:
    """Coefficients c[0..n] of det(t*I - M), ascending degree, c[n] = 1.

    Faddeev-LeVerrier: exact, division only by integers.
    """
    if not m.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = m.nrows
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    aux = Matrix.zeros(n, n)
    ident = Matrix.identity(n)
    for k in range(1, n + 1):
        aux = m @ aux + coeffs[n - k + 1] * ident
        prod = m @ aux
        coeffs[n - k] = prod.trace() * Scalar(Fraction(-1, k))
    return coeffs


# -- exponentials of nilpotents ---------------------------------------------


def nilpotent_exp(n: Matrix, z: ScalarLike = 1) -> Matrix:
    """exp(z*n) of a nilpotent matrix as a finite sum; raises if not nilpotent."""
    if not n.is_square():
        raise ValueError("exp of a non-square matrix")
    scaled = n * Scalar.coerce(z)
    size = n.nrows
    total = Matrix.identity(size)
    term = Matrix.identity(size)
    for k in range(1, size + 1):
        term = term @ scaled * Scalar(Fraction(1, k))
        if term.is_zero():
            return total
        total = total + term
    raise ValueError("matrix not nilpotent")


def unipotent_log(u: Matrix) -> Matrix:
    """log of a unipotent matrix as a finite sum; raises if not unipotent."""
    if not u.is_square():
        raise ValueError("log of a non-square matrix")
    size = u.nrows
    n = u - Matrix.identity(size)
    total = Matrix.zeros(size, size)
    term = Matrix.identity(size)
    for k in range(1, size + 1):
        term = term @ n
        if term.is_zero():
            return total
        total = total + term * Scalar(Fraction((-1) ** (k + 1), k))
    raise ValueError("matrix not unipotent")


# -- subspaces ---------------------------------------------------------------


class Subspace:
    """A linear subspace with a canonical (row-echelon) basis."""

    __slots__ = ("ambient", "basis")

    def __init__(self, vectors: Sequence[Vector], ambient: int) -> None:
        object.__setattr__(self, "ambient", ambient)
        vecs = [v for v in vectors if not vec_is_zero(v)]
        if any(len(v) != ambient for v in vecs):
            raise ValueError("vector length does not match ambient dimension")
        if not vecs:
            object.__setattr__(self, "basis", ())
            return
        r, pivots = rref(Matrix(vecs))
        object.__setattr__(self, "basis", tuple(r.rows[: len(pivots)]))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Subspace is immutable")

    @staticmethod
    def zero(ambient: int) -> "Subspace":
        return Subspace([], ambient)

    @staticmethod
    def full(ambient: int) -> "Subspace":
        return Subspace(list(Matrix.identity(ambient).rows), ambient)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains_vector(self, v: Vector) -> bool:
        if len(v) != self.ambient:
            raise ValueError("vector length does not match ambient dimension")
        if vec_is_zero(v):
            return True
        if not self.basis:
            return False
        return rank(Matrix(list(self.basis) + [v])) == self.dim

    def contains(self, other: "Subspace") -> bool:
        return all(self.contains_vector(v) for v in other.basis)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Subspace):
            return self.ambient == other.ambient and self.basis == other.basis
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ambient, self.basis))

    def sum_with(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace(list(self.basis) + list(other.basis), self.ambient)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient)
        mu = Matrix.from_cols(list(self.basis))
        mv = Matrix.from_cols(list(other.basis))
        stacked = Matrix([list(ra) + list(rb) for ra, rb in zip(mu.rows, mv.rows)])
        vectors = []
        for k in kernel_basis(stacked):
            coeffs = k[: self.dim]
            vectors.append(mu.apply(coeffs))
        return Subspace(vectors, self.ambient)

    def image_under(self, m: Matrix) -> "Subspace":
        if m.ncols != self.ambient:
            raise ValueError("matrix does not act on this ambient space")
        return Subspace([m.apply(v) for v in self.basis], m.nrows)

    def conjugate(self) -> "Subspace":
        return Subspace([vec_conj(v) for v in self.basis], self.ambient)

    def coordinates_of(self, v: Vector) -> Optional[Vector]:
        """Coefficients of v on the canonical basis, or None if outside."""
        if not self.basis:
            return () if vec_is_zero(v) else None
        return solve_vector(Matrix.from_cols(list(self.basis)), v)

    def _check_ambient(self, other: "Subspace") -> None:
        if self.ambient != other.ambient:
            raise ValueError("ambient dimension mismatch")

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def kernel_subspace(m: Matrix) -> Subspace:
    return Subspace(kernel_basis(m), m.ncols)


def image_subspace(m: Matrix) -> Subspace:
    return Subspace(m.cols(), m.nrows)


def eigenspace_decomposition(
    a: Matrix, eigenvalues: Sequence[ScalarLike]
) -> list[Subspace]:
    """Kernel of (a - lam) for each candidate eigenvalue, in input order.

    The candidates must exhaust the spectrum: the eigenspace dimensions
    have to add up to the ambient dimension, otherwise the operator is
    not semisimple over the given list and that is an error.
    """
    if not a.is_square():
        raise ValueError("eigenspace decomposition of a non-square matrix")
    spaces = []
    total = 0
    for lam in eigenvalues:
        ker = kernel_subspace(a - Matrix.identity(a.nrows) * Scalar.coerce(lam))
        spaces.append(ker)
        total += ker.dim
    if total != a.nrows:
        raise ValueError("operator not semisimple over the given spectrum")
    return spaces


def hermitian_positive(gram: Matrix) -> bool:
    """Exact positive definiteness of a hermitian Gram matrix via leading
    principal minors; raises if the matrix is not hermitian."""
    if not gram.is_square():
        raise ValueError("form not hermitian on subspace")
    n = gram.nrows
    for i in range(n):
        for j in range(n):
            if gram[i, j] != gram[j, i].conjugate():
                raise ValueError("form not hermitian on subspace")
    for k in range(1, n + 1):
        minor = det(Matrix([list(r)[:k] for r in gram.rows[:k]]))
        if not minor.is_real():
            raise ValueError("form not hermitian on subspace")
        if minor.sign() <= 0:
            return False
    return True


def symmetric_signature(gram: Matrix) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia of a symmetric real Gram matrix,
    by exact congruence reduction."""
    n = gram.nrows
    for i in range(n):
        for j in range(n):
            if gram[i, j] != gram[j, i] or not gram[i, j].is_real():
                raise ValueError("signature needs a real symmetric matrix")
    rows = [list(r) for r in gram.rows]
    pos = neg = zero = 0
    idx = list(range(n))
    while idx:
        pivot = None
        for i in idx:
            if not rows[i][i].is_zero():
                pivot = i
                break
        if pivot is None:
            off = None
            for i in idx:
                for j in idx:
                    if j > i and not rows[i][j].is_zero():
                        off = (i, j)
                        break
                if off:
                    break
            if off is None:
                zero += len(idx)
                break
            i, j = off
            # replace basis vector e_i by e_i + e_j to expose a diagonal pivot
            for k in range(n):
                rows[i][k] = rows[i][k] + rows[j][k]
            for k in range(n):
                rows[k][i] = rows[k][i] + rows[k][j]
            continue
        p = rows[pivot][pivot]
        if p.sign() > 0:
            pos += 1
        else:
            neg += 1
        idx.remove(pivot)
        for i in idx:
            factor = rows[i][pivot] * p.inverse()
            for k in range(n):
                rows[i][k] = rows[i][k] - factor * rows[pivot][k]
        for i in idx:
            factor = rows[pivot][i] * p.inverse()
            for k in range(n):
                rows[k][i] = rows[k][i] - factor * rows[k][pivot]
    return pos, neg, zero


def extend_basis(inner: Subspace, outer: Subspace) -> list[Vector]:
    """Vectors of outer completing a basis of inner to one of outer."""
    if not outer.contains(inner):
        raise ValueError("inner subspace is not contained in the outer one")
    picked: list[Vector] = []
    current = inner
    for v in outer.basis:
        if not current.contains_vector(v):
            picked.append(v)
            current = current.sum_with(Subspace([v], outer.ambient))
    if current.dim != outer.dim:
        raise AssertionError("basis extension failed")
    return picked
