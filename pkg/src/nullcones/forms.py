"""Nondegenerate bilinear forms, isometries, Lie algebras and adjoints."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Sequence

from .exact import (
    ONE,
    ZERO,
    DimensionError,
    GaussianRational,
    Matrix,
    SingularMatrixError,
    as_column,
    det,
    inverse,
    random_scalar,
)


class Kind(str, enum.Enum):
    SYMMETRIC = "symmetric"
    SYMPLECTIC = "symplectic"

    @property
    def opposite(self) -> Kind:
        return Kind.SYMPLECTIC if self is Kind.SYMMETRIC else Kind.SYMMETRIC

    @property
    def sign(self) -> int:
        """``+1`` if the Gram matrix is symmetric, ``-1`` if antisymmetric."""
        return 1 if self is Kind.SYMMETRIC else -1


class ParityError(ValueError):
    pass


@dataclass(frozen=True)
class BilinearForm:
    kind: Kind
    gram: Matrix

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        g = self.gram
        if not g.is_square():
            raise DimensionError("Gram matrix must be square")
        if self.kind is Kind.SYMPLECTIC and g.rows % 2:
            raise ParityError("a symplectic form needs even dimension")
        want = g if self.kind is Kind.SYMMETRIC else -g
        if g.T != want:
            raise ValueError(f"Gram matrix is not {self.kind.value}")
        if det(g).is_zero():
            raise ValueError("Gram matrix is degenerate")

    @property
    def dim(self) -> int:
        return self.gram.rows


@dataclass(frozen=True)
class FormedSpace:
    """``Q(i)^dim`` with a nondegenerate bilinear form."""

    dim: int
    form: BilinearForm

    def __post_init__(self):
        if self.form.dim != self.dim:
            raise DimensionError("form size differs from the space dimension")

    @classmethod
    def standard(cls, kind: Kind | str, n: int) -> FormedSpace:
        return cls(n, standard_form(kind, n))

    @property
    def kind(self) -> Kind:
        return self.form.kind

    @property
    def gram(self) -> Matrix:
        return self.form.gram

    def is_standard(self) -> bool:
        return self.form == standard_form(self.kind, self.dim)


def standard_form(kind: Kind | str, n: int) -> BilinearForm:
    """Identity Gram for symmetric forms; ``[[0, I], [-I, 0]]`` for symplectic ones."""
    kind = Kind(kind)
    if kind is Kind.SYMMETRIC:
        return BilinearForm(kind, Matrix.identity(n))
    if n % 2:
        raise ParityError(f"symplectic forms need even dimension, got {n}")
    p = n // 2
    rows = [[ZERO] * n for _ in range(n)]
    for j in range(p):
        rows[j][p + j] = ONE
        rows[p + j][j] = -ONE
    return BilinearForm(kind, Matrix.from_rows(rows, cols=n))


def form_eval(space: FormedSpace, u: Sequence, v: Sequence) -> GaussianRational:
    u = as_column(u)
    v = as_column(v)
    if u.rows != space.dim or v.rows != space.dim:
        raise DimensionError("vector length differs from the space dimension")
    return (u.T @ space.gram @ v)[0, 0]


def _check_square(space: FormedSpace, x: Matrix) -> None:
    if x.shape != (space.dim, space.dim):
        raise DimensionError(f"expected a {space.dim}x{space.dim} matrix, got {x.shape}")


def is_isometry(space: FormedSpace, g: Matrix) -> bool:
    _check_square(space, g)
    return g.T @ space.gram @ g == space.gram


def in_lie_algebra(space: FormedSpace, x: Matrix) -> bool:
    _check_square(space, x)
    G = space.gram
    return (x.T @ G + G @ x).is_zero()


def random_lie_algebra_element(space: FormedSpace, rng: random.Random, box: int = 2,
                               denominators: Sequence[int] = (1, 2, 3)) -> Matrix:
    """``G^-1 S`` with ``S`` random antisymmetric (symmetric form) or symmetric
    (symplectic form); such matrices are exactly the Lie algebra."""
    n = space.dim
    eps = space.kind.sign
    S = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            if i == j and eps == 1:
                continue
            z = random_scalar(rng, box, denominators)
            S[i][j] = z
            S[j][i] = -z if eps == 1 else z
    S = Matrix.from_rows(S, cols=n)
    if space.is_standard() and space.kind is Kind.SYMMETRIC:
        return S
    return inverse(space.gram) @ S


def cayley(x: Matrix) -> Matrix:
    """``(I - X)(I + X)^-1``; raises SingularMatrixError when ``I + X`` is singular."""
    e = Matrix.identity(x.rows)
    return (e - x) @ inverse(e + x)


def reflection(space: FormedSpace) -> Matrix:
    """A fixed determinant -1 isometry of a symmetric form."""
    if space.kind is not Kind.SYMMETRIC:
        raise ValueError("symplectic isometries all have determinant 1")
    n = space.dim
    if space.gram == Matrix.identity(n):
        return Matrix.diag([ONE] * (n - 1) + [-ONE])
    # reflection along a basis vector e_k (or e_j + e_k) with (v, v) != 0
    G = space.gram
    candidates = [[ONE if t == k else ZERO for t in range(n)] for k in range(n)]
    candidates += [[ONE if t in (j, k) else ZERO for t in range(n)]
                   for j in range(n) for k in range(j + 1, n)]
    for vec in candidates:
        v = as_column(vec)
        q = (v.T @ G @ v)[0, 0]
        if not q.is_zero():
            return Matrix.identity(n) - (v @ v.T @ G).scale(2 / q)
    raise AssertionError("a nondegenerate symmetric form has an anisotropic vector")


def sample_isometry(space: FormedSpace, rng: random.Random, det_sign: int | str = "any",
                    max_tries: int = 20) -> Matrix:
    """Cayley transform of a random Lie algebra element.

    ``det_sign`` is ``1``, ``-1`` or ``"any"``; a negative sign composes the
    Cayley output with :func:`reflection`.
    """
    if det_sign not in (1, -1, "any"):
        raise ValueError(f"det_sign must be 1, -1 or 'any', got {det_sign!r}")
    if det_sign == -1 and space.kind is Kind.SYMPLECTIC:
        raise ValueError("symplectic isometries have determinant 1")
    for _ in range(max_tries):
        x = random_lie_algebra_element(space, rng)
        try:
            g = cayley(x)
        except SingularMatrixError:
            continue
        break
    else:
        raise RuntimeError(f"I + X singular in {max_tries} consecutive draws")
    flip = det_sign == -1
    if det_sign == "any" and space.kind is Kind.SYMMETRIC:
        flip = rng.random() < 0.5
    if flip:
        g = g @ reflection(space)
    return g


def adjoint(t: Matrix, source: FormedSpace, target: FormedSpace) -> Matrix:
    """The map ``T*`` with ``(T w, v)_target = (w, T* v)_source``.

    In coordinates the identity reads ``T^t G_target = G_source T*``.
    """
    if t.shape != (target.dim, source.dim):
        raise DimensionError(f"T must be {target.dim}x{source.dim}, got {t.shape}")
    return inverse(source.gram) @ t.T @ target.gram
