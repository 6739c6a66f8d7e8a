"""Exact arithmetic over the Gaussian rationals Q(i).

Scalars are :class:`GaussianRational`, matrices are immutable
:class:`Matrix` values, and linear subspaces are stored in a canonical
reduced column-echelon form so that equal subspaces compare equal.

Row reduction is done fraction-free (Bareiss) over the Gaussian integers
after clearing denominators row by row; only the final back substitution
works with fractions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Shapes or ambient dimensions do not fit together."""


class SingularMatrixError(ZeroDivisionError):
    pass


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class GaussianRational:
    """An exact complex number ``re + im*i`` with rational ``re`` and ``im``.

    Stored as ``(a + b*i) / d`` with integer ``a, b``, ``d > 0`` and
    ``gcd(a, b, d) == 1``.
    """

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        d = _lcm(re.denominator, im.denominator)
        self._a = re.numerator * (d // re.denominator)
        self._b = im.numerator * (d // im.denominator)
        self._d = d

    @classmethod
    def _make(cls, a: int, b: int, d: int) -> GaussianRational:
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(a, b, d)
        if g != 1:
            a //= g
            b //= g
            d //= g
        z = object.__new__(cls)
        z._a = a
        z._b = b
        z._d = d
        return z

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def conjugate(self) -> GaussianRational:
        return GaussianRational._make(self._a, -self._b, self._d)

    def norm(self) -> Fraction:
        """``re**2 + im**2``."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        d1, d2 = self._d, o._d
        if d1 == d2:
            return GaussianRational._make(self._a + o._a, self._b + o._b, d1)
        return GaussianRational._make(self._a * d2 + o._a * d1, self._b * d2 + o._b * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._make(-self._a, -self._b, self._d)

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, e = self._a, self._b, o._a, o._b
        return GaussianRational._make(a * c - b * e, a * e + b * c, self._d * o._d)

    __rmul__ = __mul__

    def inverse(self) -> GaussianRational:
        a, b = self._a, self._b
        n = a * a + b * b
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        # d / (a + bi) = d (a - bi) / n
        return GaussianRational._make(self._d * a, -self._d * b, n)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self._a == o._a and self._b == o._b and self._d == o._d

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def _coerce(x) -> GaussianRational | None:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    if isinstance(x, complex):
        if x.real != int(x.real) or x.imag != int(x.imag):
            return None
        return GaussianRational(int(x.real), int(x.imag))
    return None


def gr(x) -> GaussianRational:
    """Coerce an int, Fraction, integral complex or scalar string."""
    if isinstance(x, str):
        return parse_scalar(x)
    z = _coerce(x)
    if z is None:
        raise TypeError(f"cannot convert {x!r} to a Gaussian rational")
    return z


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


# -- text form ---------------------------------------------------------------

class ParseError(ValueError):
    pass


def format_scalar(z: GaussianRational) -> str:
    re, im = z.re, z.im
    if im == 0:
        return str(re)
    mag = f"{abs(im)}*i"
    if re == 0:
        return mag if im > 0 else "-" + mag
    return f"{re}{'+' if im > 0 else '-'}{mag}"


def parse_scalar(text: str) -> GaussianRational:
    """Parse ``a/b``, ``a/b+c/d*i``, ``-c/d*i``, ``i`` and similar forms."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ParseError("empty scalar")
    try:
        if not s.endswith("i"):
            return GaussianRational(Fraction(s))
        body = s[:-1]
        starred = body.endswith("*")
        if starred:
            body = body[:-1]
        split = max(body.rfind("+"), body.rfind("-"))
        if split > 0:
            re_txt, im_txt = body[:split], body[split:]
        else:
            re_txt, im_txt = "0", body
        if starred and im_txt in ("", "+", "-"):
            raise ValueError("'*' needs a coefficient")
        if im_txt in ("", "+"):
            im = Fraction(1)
        elif im_txt == "-":
            im = Fraction(-1)
        else:
            im = Fraction(im_txt)
        return GaussianRational(Fraction(re_txt), im)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed scalar {text!r}") from exc


# -- matrices ----------------------------------------------------------------

class Matrix:
    """Immutable dense matrix of Gaussian rationals."""

    __slots__ = ("rows", "cols", "_r", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        data = [gr(x) for x in entries]
        if len(data) != rows * cols:
            raise DimensionError(f"{len(data)} entries for a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self._r = tuple(tuple(data[i * cols:(i + 1) * cols]) for i in range(rows))
        self._hash = None

    @classmethod
    def _wrap(cls, rows: int, cols: int, r) -> Matrix:
        m = object.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._r = tuple(tuple(row) for row in r)
        m._hash = None
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> Matrix:
        rows = list(rows)
        if cols is None:
            if not rows:
                raise DimensionError("cannot infer the column count of an empty row list")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise DimensionError("ragged rows")
        return cls._wrap(len(rows), cols, [[gr(x) for x in r] for r in rows])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> Matrix:
        columns = list(columns)
        if rows is None:
            if not columns:
                raise DimensionError("cannot infer the row count of an empty column list")
            rows = len(columns[0])
        if any(len(c) != rows for c in columns):
            raise DimensionError("ragged columns")
        cols = [[gr(x) for x in c] for c in columns]
        return cls._wrap(rows, len(cols), [[c[i] for c in cols] for i in range(rows)])

    @classmethod
    def column(cls, values: Sequence) -> Matrix:
        return cls.from_columns([values])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls._wrap(rows, cols, [[ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls._wrap(n, n, [[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, values: Sequence) -> Matrix:
        vals = [gr(v) for v in values]
        n = len(vals)
        return cls._wrap(n, n, [[vals[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple[GaussianRational, ...]:
        return tuple(x for row in self._r for x in row)

    def tolist(self) -> list[list[GaussianRational]]:
        return [list(row) for row in self._r]

    def row(self, i: int) -> tuple[GaussianRational, ...]:
        return self._r[i]

    def col(self, j: int) -> tuple[GaussianRational, ...]:
        return tuple(row[j] for row in self._r)

    def __getitem__(self, ij):
        i, j = ij
        return self._r[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._r == other._r

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._r))
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self._r)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    # arithmetic

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return Matrix._wrap(self.rows, self.cols,
                            [[x + y for x, y in zip(r, s)] for r, s in zip(self._r, other._r)])

    def __sub__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {other.shape} from {self.shape}")
        return Matrix._wrap(self.rows, self.cols,
                            [[x - y for x, y in zip(r, s)] for r, s in zip(self._r, other._r)])

    def __neg__(self) -> Matrix:
        return Matrix._wrap(self.rows, self.cols, [[-x for x in r] for r in self._r])

    def scale(self, c) -> Matrix:
        c = gr(c)
        return Matrix._wrap(self.rows, self.cols, [[c * x for x in r] for r in self._r])

    def __matmul__(self, other: Matrix) -> Matrix:
        return matmul(self, other)

    @property
    def T(self) -> Matrix:
        return Matrix._wrap(self.cols, self.rows,
                            [[self._r[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self._r for x in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def select_columns(self, idx: Sequence[int]) -> Matrix:
        return Matrix._wrap(self.rows, len(idx), [[row[j] for j in idx] for row in self._r])

    def select_rows(self, idx: Sequence[int]) -> Matrix:
        return Matrix._wrap(len(idx), self.cols, [self._r[i] for i in idx])

    def hstack(self, *others: Matrix) -> Matrix:
        rows = [list(r) for r in self._r]
        cols = self.cols
        for o in others:
            if o.rows != self.rows:
                raise DimensionError("hstack needs equal row counts")
            for r, s in zip(rows, o._r):
                r.extend(s)
            cols += o.cols
        return Matrix._wrap(self.rows, cols, rows)

    def vstack(self, *others: Matrix) -> Matrix:
        rows = list(self._r)
        for o in others:
            if o.cols != self.cols:
                raise DimensionError("vstack needs equal column counts")
            rows.extend(o._r)
        return Matrix._wrap(len(rows), self.cols, rows)

    def rank(self) -> int:
        return rank(self)

    def det(self) -> GaussianRational:
        return det(self)

    def inverse(self) -> Matrix:
        return inverse(self)

    def __pow__(self, k: int) -> Matrix:
        if not self.is_square() or k < 0:
            raise DimensionError("integer powers need a square matrix and k >= 0")
        out = Matrix.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out


def as_matrix(x) -> Matrix:
    """Accept a Matrix or a nested sequence of scalars (rows)."""
    if isinstance(x, Matrix):
        return x
    return Matrix.from_rows(x)


def as_column(v) -> Matrix:
    if isinstance(v, Matrix):
        if v.cols != 1:
            raise DimensionError("expected a column vector")
        return v
    return Matrix.column(list(v))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    bt = [b.col(j) for j in range(b.cols)]
    out = []
    for row in a._r:
        out_row = []
        for col in bt:
            acc = ZERO
            for x, y in zip(row, col):
                if x._a or x._b:
                    if y._a or y._b:
                        acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return Matrix._wrap(a.rows, b.cols, out)


# -- fraction-free elimination over Z[i] -------------------------------------

def _gi_div(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    """Exact quotient x / y in Z[i]."""
    a, b = x
    c, d = y
    n = c * c + d * d
    re, r1 = divmod(a * c + b * d, n)
    im, r2 = divmod(b * c - a * d, n)
    if r1 or r2:
        raise ArithmeticError("inexact Gaussian integer division in Bareiss step")
    return (re, im)


def _integer_rows(m: Matrix) -> tuple[list[list[tuple[int, int]]], list[int]]:
    rows = []
    scales = []
    for r in m._r:
        L = 1
        for x in r:
            if x._d != 1:
                L = _lcm(L, x._d)
        rows.append([(x._a * (L // x._d), x._b * (L // x._d)) for x in r])
        scales.append(L)
    return rows, scales


def _bareiss(m: Matrix):
    """Fraction-free row echelon form.

    Returns ``(rows, pivots, sign, scales)`` where ``rows`` is the echelon
    form over Z[i] of the denominator-cleared matrix, ``pivots`` the pivot
    columns, ``sign`` the permutation sign and ``scales`` the row factors.
    """
    A, scales = _integer_rows(m)
    nrows, ncols = m.rows, m.cols
    prev = (1, 0)
    pivots: list[int] = []
    sign = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if A[i][c] != (0, 0)), None)
        if p is None:
            continue
        if p != r:
            A[r], A[p] = A[p], A[r]
            scales[r], scales[p] = scales[p], scales[r]
            sign = -sign
        pa, pb = A[r][c]
        prow = A[r]
        for i in range(r + 1, nrows):
            row = A[i]
            qa, qb = row[c]
            if qa == 0 and qb == 0:
                if prev != (1, 0) or (pa, pb) != (1, 0):
                    for j in range(c + 1, ncols):
                        xa, xb = row[j]
                        if xa or xb:
                            row[j] = _gi_div((pa * xa - pb * xb, pa * xb + pb * xa), prev)
                continue
            for j in range(c + 1, ncols):
                xa, xb = row[j]
                ya, yb = prow[j]
                na = (pa * xa - pb * xb) - (qa * ya - qb * yb)
                nb = (pa * xb + pb * xa) - (qa * yb + qb * ya)
                row[j] = _gi_div((na, nb), prev) if prev != (1, 0) else (na, nb)
            row[c] = (0, 0)
        prev = (pa, pb)
        pivots.append(c)
        r += 1
    return A, pivots, sign, scales


def rank(m: Matrix) -> int:
    """Exact rank via fraction-free elimination."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_bareiss(m)[1])


def det(m: Matrix) -> GaussianRational:
    if not m.is_square():
        raise DimensionError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return ONE
    A, pivots, sign, scales = _bareiss(m)
    if len(pivots) < n:
        return ZERO
    a, b = A[n - 1][n - 1]
    denom = 1
    for s in scales:
        denom *= s
    return GaussianRational._make(sign * a, sign * b, denom)


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    if m.rows == 0 or m.cols == 0:
        return m, []
    A, pivots, _, _ = _bareiss(m)
    k = len(pivots)
    R = [[GaussianRational._make(a, b, 1) for (a, b) in A[i]] for i in range(k)]
    for i in range(k - 1, -1, -1):
        c = pivots[i]
        inv = R[i][c].inverse()
        R[i] = [x * inv for x in R[i]]
        for h in range(i):
            f = R[h][c]
            if not f.is_zero():
                R[h] = [x - f * y for x, y in zip(R[h], R[i])]
    R.extend([ZERO] * m.cols for _ in range(m.rows - k))
    return Matrix._wrap(m.rows, m.cols, R), pivots


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise DimensionError("inverse of a non-square matrix")
    n = m.rows
    R, pivots = rref(m.hstack(Matrix.identity(n)))
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return R.select_columns(range(n, 2 * n))


def solve_kernel_basis(m: Matrix) -> list[list[GaussianRational]]:
    """A basis of the null space (not canonicalised)."""
    n = m.cols
    if m.rows == 0:
        return [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    R, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for f in range(n):
        if f in pivot_set:
            continue
        v = [ZERO] * n
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -R[i, f]
        basis.append(v)
    return basis


def left_inverse(m: Matrix) -> Matrix:
    """A ``k x n`` matrix ``L`` with ``L m = I`` for ``m`` of full column rank ``k``."""
    n, k = m.shape
    _, rows = rref(m.T)
    if len(rows) != k:
        raise SingularMatrixError("matrix does not have full column rank")
    sub_inv = inverse(m.select_rows(rows))
    out = [[ZERO] * n for _ in range(k)]
    for j, p in enumerate(rows):
        for i in range(k):
            out[i][p] = sub_inv[i, j]
    return Matrix._wrap(k, n, out)


def kernel_dim(m: Matrix) -> int:
    return m.cols - rank(m)


# -- subspaces ---------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A linear subspace of ``Q(i)^ambient_dim``.

    ``basis`` is ``ambient_dim x dim`` and is the transpose of the reduced row
    echelon form of any spanning set, so equal subspaces have equal bases.
    Build instances with :func:`column_space`, :func:`kernel` or
    :meth:`Subspace.span`.
    """

    ambient_dim: int
    basis: Matrix

    def __post_init__(self):
        if self.basis.rows != self.ambient_dim:
            raise DimensionError("basis rows must equal the ambient dimension")

    @property
    def dim(self) -> int:
        return self.basis.cols

    @classmethod
    def span(cls, vectors: Sequence[Sequence], ambient_dim: int) -> Subspace:
        if not vectors:
            return cls.zero(ambient_dim)
        return column_space(Matrix.from_columns(vectors, rows=ambient_dim))

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n, Matrix.zeros(n, 0))

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, Matrix.identity(n))

    def vectors(self) -> list[tuple[GaussianRational, ...]]:
        return [self.basis.col(j) for j in range(self.dim)]

    def contains_vector(self, v) -> bool:
        v = as_column(v)
        if v.rows != self.ambient_dim:
            raise DimensionError("vector length differs from the ambient dimension")
        return rank(self.basis.hstack(v)) == self.dim

    def __le__(self, other: Subspace) -> bool:
        return subspace_contains(other, self)


def column_space(m: Matrix) -> Subspace:
    """Canonical span of the columns of ``m``."""
    if m.cols == 0:
        return Subspace.zero(m.rows)
    R, pivots = rref(m.T)
    k = len(pivots)
    return Subspace(m.rows, R.select_rows(range(k)).T)


def kernel(m: Matrix) -> Subspace:
    """Canonical null space of ``m`` inside ``Q(i)^cols``."""
    basis = solve_kernel_basis(m)
    if not basis:
        return Subspace.zero(m.cols)
    return column_space(Matrix.from_columns(basis, rows=m.cols))


def _check_ambient(u: Subspace, v: Subspace) -> None:
    if u.ambient_dim != v.ambient_dim:
        raise DimensionError(f"ambient dimensions differ: {u.ambient_dim} vs {v.ambient_dim}")


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _check_ambient(u, v)
    return column_space(u.basis.hstack(v.basis))


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    _check_ambient(u, v)
    if u.dim == 0 or v.dim == 0:
        return Subspace.zero(u.ambient_dim)
    coeffs = solve_kernel_basis(u.basis.hstack(-v.basis))
    if not coeffs:
        return Subspace.zero(u.ambient_dim)
    x = Matrix.from_columns([c[:u.dim] for c in coeffs], rows=u.dim)
    return column_space(u.basis @ x)


def subspace_contains(u: Subspace, v: Subspace) -> bool:
    """True iff ``v`` is a subspace of ``u``."""
    _check_ambient(u, v)
    if v.dim == 0:
        return True
    return rank(u.basis.hstack(v.basis)) == u.dim


def annihilator(u: Subspace) -> Matrix:
    """A ``(n - dim u) x n`` matrix whose kernel is exactly ``u``."""
    n = u.ambient_dim
    if u.dim == 0:
        return Matrix.identity(n)
    rows = solve_kernel_basis(u.basis.T)
    return Matrix.from_rows(rows, cols=n)


# -- random exact samples ----------------------------------------------------

def random_scalar(rng: random.Random, box: int = 3, denominators: Sequence[int] = (1,)) -> GaussianRational:
    d = rng.choice(denominators)
    return GaussianRational._make(rng.randint(-box, box), rng.randint(-box, box), d)


def random_matrix(rng: random.Random, rows: int, cols: int, box: int = 3,
                  denominators: Sequence[int] = (1,)) -> Matrix:
    return Matrix._wrap(rows, cols, [[random_scalar(rng, box, denominators) for _ in range(cols)]
                                     for _ in range(rows)])


def random_of_rank(rng: random.Random, rows: int, cols: int, r: int, box: int = 2,
                   max_tries: int = 100) -> Matrix:
    """A random ``rows x cols`` matrix of exact rank ``r``."""
    if r < 0 or r > min(rows, cols):
        raise ValueError(f"rank {r} impossible for a {rows}x{cols} matrix")
    if r == 0:
        return Matrix.zeros(rows, cols)
    for _ in range(max_tries):
        m = random_matrix(rng, rows, r, box) @ random_matrix(rng, r, cols, box)
        if rank(m) == r:
            return m
    raise RuntimeError(f"failed to sample a rank-{r} matrix in {max_tries} tries")


def random_invertible(rng: random.Random, n: int, box: int = 2, max_tries: int = 100) -> Matrix:
    for _ in range(max_tries):
        m = random_matrix(rng, n, n, box)
        if rank(m) == n:
            return m
    raise RuntimeError(f"failed to sample an invertible {n}x{n} matrix")
