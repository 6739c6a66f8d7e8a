"""The three null cones: orthogonal, symplectic and general linear.

Orthogonal/symplectic points are ``n x m`` matrices ``T`` with
``T^t G T = 0``; general linear points are pairs ``(A, B)`` of shapes
``s x n`` and ``n x m`` with ``AB = 0``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Union

from .exact import (
    ZERO,
    DimensionError,
    Matrix,
    annihilator,
    column_space,
    inverse,
    random_invertible,
    random_of_rank,
    rank,
)
from .forms import FormedSpace, Kind
from .isotropic import (
    Flag2,
    IsotropicSubspace,
    _first_order_map,
    component_label,
    is_isotropic,
    sample_flag2,
    sample_isotropic,
)


class RankError(ValueError):
    """A requested rank cannot be realised on the null cone."""


class DomainError(ValueError):
    """An operation on null points received a point off the null cone."""


@dataclass(frozen=True)
class OrthSympSetting:
    space: FormedSpace
    m: int

    def __post_init__(self):
        if self.space.dim < 1 or self.m < 1:
            raise ValueError("need n >= 1 and m >= 1")

    @classmethod
    def standard(cls, kind: Kind | str, n: int, m: int) -> OrthSympSetting:
        return cls(FormedSpace.standard(kind, n), m)

    @property
    def n(self) -> int:
        return self.space.dim

    @property
    def kind(self) -> Kind:
        return self.space.kind

    @property
    def r(self) -> int:
        """Maximal rank of a null mapping, ``min(m, floor(n/2))``."""
        return min(self.m, self.n // 2)


@dataclass(frozen=True)
class GlSetting:
    n: int
    s: int
    m: int

    def __post_init__(self):
        if self.s < 1 or self.m < 1:
            raise ValueError("need s >= 1 and m >= 1")
        if self.n < self.s + self.m:
            raise ValueError(f"need n >= s + m, got n={self.n}, s={self.s}, m={self.m}")


Setting = Union[OrthSympSetting, GlSetting]


@dataclass(frozen=True)
class OSPoint:
    t: Matrix


@dataclass(frozen=True)
class GLPoint:
    a: Matrix
    b: Matrix


NullPoint = Union[OSPoint, GLPoint]


def _check_t(setting: OrthSympSetting, t: Matrix) -> None:
    if t.shape != (setting.n, setting.m):
        raise DimensionError(f"T must be {setting.n}x{setting.m}, got {t.shape}")


def _check_ab(setting: GlSetting, a: Matrix, b: Matrix) -> None:
    if a.shape != (setting.s, setting.n) or b.shape != (setting.n, setting.m):
        raise DimensionError(f"A must be {setting.s}x{setting.n} and B {setting.n}x{setting.m}, "
                             f"got {a.shape} and {b.shape}")


def eval_Q(setting: OrthSympSetting, t: Matrix) -> Matrix:
    """``T^t G T``: the Gram matrix of the columns of ``T``."""
    _check_t(setting, t)
    return t.T @ setting.space.gram @ t


def eval_phi(setting: GlSetting, a: Matrix, b: Matrix) -> Matrix:
    _check_ab(setting, a, b)
    return a @ b


def is_null(setting: Setting, point: NullPoint) -> bool:
    if isinstance(point, OSPoint):
        return eval_Q(setting, point.t).is_zero()
    return eval_phi(setting, point.a, point.b).is_zero()


def check_equivariance_os(setting: OrthSympSetting, t: Matrix, g: Matrix, h: Matrix) -> bool:
    """``Q(gT) = Q(T)`` and ``Q(Th) = h^t Q(T) h``.

    The first identity only holds for isometries ``g``; passing a non-isometry
    is how the negative control is exercised.
    """
    q = eval_Q(setting, t)
    return eval_Q(setting, g @ t) == q and eval_Q(setting, t @ h) == h.T @ q @ h


def check_equivariance_gl(setting: GlSetting, a: Matrix, b: Matrix,
                          g1: Matrix, g2: Matrix, g3: Matrix) -> bool:
    """``phi(A g2^-1, g2 B) = phi(A, B)`` and ``phi(g1 A, B g3^-1) = g1 phi(A, B) g3^-1``."""
    q = eval_phi(setting, a, b)
    g2i = inverse(g2)
    g3i = inverse(g3)
    return (eval_phi(setting, a @ g2i, g2 @ b) == q
            and eval_phi(setting, g1 @ a, b @ g3i) == g1 @ q @ g3i)


def sample_null_os(setting: OrthSympSetting, target_rank: int, rng: random.Random,
                   u: IsotropicSubspace | None = None) -> OSPoint:
    """``T = B_U M`` for a sampled isotropic ``U`` and random ``M`` of full rank."""
    if not 0 <= target_rank <= setting.r:
        raise RankError(f"null mappings have rank at most {setting.r}, asked for {target_rank}")
    if target_rank == 0:
        return OSPoint(Matrix.zeros(setting.n, setting.m))
    if u is None:
        u = sample_isotropic(setting.space, target_rank, rng)
    elif u.dim != target_rank:
        raise RankError("prescribed isotropic plane has the wrong dimension")
    M = random_of_rank(rng, target_rank, setting.m, target_rank)
    return OSPoint(u.sub.basis @ M)


def sample_null_gl(setting: GlSetting, rank_a: int, rank_b: int, rng: random.Random,
                   flag: Flag2 | None = None) -> GLPoint:
    """``B`` with image in ``U1`` and ``A`` vanishing on ``U2`` for a random flag."""
    if not 0 <= rank_a <= setting.s or not 0 <= rank_b <= setting.m:
        raise RankError(f"infeasible ranks (rank A={rank_a}, rank B={rank_b}) for "
                        f"s={setting.s}, m={setting.m}")
    if flag is None:
        flag = sample_flag2(setting.n, setting.m, setting.s, rng)
    b = flag.u1.basis @ random_of_rank(rng, setting.m, setting.m, rank_b)
    a = random_of_rank(rng, setting.s, setting.s, rank_a) @ annihilator(flag.u2)
    return GLPoint(a, b)


def sample_null(setting: Setting, target_rank, rng: random.Random) -> NullPoint:
    """Orthogonal/symplectic: ``target_rank`` is an int.  General linear: a pair
    ``(rank_a, rank_b)``."""
    if isinstance(setting, OrthSympSetting):
        return sample_null_os(setting, target_rank, rng)
    rank_a, rank_b = target_rank
    return sample_null_gl(setting, rank_a, rank_b, rng)


def jacobian_os(setting: OrthSympSetting, t: Matrix) -> Matrix:
    """Differential of ``T -> T^t G T`` at ``t`` on all ``m x m`` output entries."""
    _check_t(setting, t)
    return _first_order_map(t, setting.space.gram, setting.n, setting.m, t)


def jacobian_gl(setting: GlSetting, a: Matrix, b: Matrix) -> Matrix:
    """Differential ``(X, Y) -> XB + AY``; variables are X entries then Y entries."""
    _check_ab(setting, a, b)
    s, n, m = setting.s, setting.n, setting.m
    cols = []
    for i in range(s):
        for k in range(n):
            # E_ik B has row i = row k of B
            out = [[ZERO] * m for _ in range(s)]
            out[i] = list(b.row(k))
            cols.append([x for row in out for x in row])
    for k in range(n):
        for j in range(m):
            # A E_kj has column j = column k of A
            out = [[ZERO] * m for _ in range(s)]
            for i in range(s):
                out[i][j] = a[i, k]
            cols.append([x for row in out for x in row])
    return Matrix.from_columns(cols, rows=s * m)


def tangent_dim_at(setting: Setting, point: NullPoint) -> int:
    """Dimension of the Zariski tangent space of the defining equations at a
    null point (kernel of the Jacobian)."""
    if not is_null(setting, point):
        raise DomainError("tangent dimension requested at a point off the null cone")
    if isinstance(point, OSPoint):
        J = jacobian_os(setting, point.t)
        return setting.n * setting.m - rank(J)
    J = jacobian_gl(setting, point.a, point.b)
    return J.cols - rank(J)


def component_label_null(setting: OrthSympSetting, point: OSPoint,
                         reference: IsotropicSubspace) -> str:
    """Which of the two irreducible components (orthogonal, ``n = 2m``) a
    maximal-rank null mapping lies on."""
    if setting.kind is not Kind.SYMMETRIC or setting.n != 2 * setting.m:
        raise ValueError("the null cone is reducible only for symmetric forms with n = 2m")
    if not is_null(setting, point):
        raise DomainError("point is not null")
    if rank(point.t) != setting.m:
        raise ValueError("component labels need a null mapping of maximal rank")
    return component_label(IsotropicSubspace(setting.space, column_space(point.t)), reference)


def image_is_isotropic(setting: OrthSympSetting, t: Matrix) -> bool:
    return is_isotropic(setting.space, column_space(t))


def gl_action(a: Matrix, b: Matrix, g1: Matrix, g2: Matrix, g3: Matrix) -> tuple[Matrix, Matrix]:
    """``(g1 A g2^-1, g2 B g3^-1)``."""
    return g1 @ a @ inverse(g2), g2 @ b @ inverse(g3)


def random_gl_triple(setting: GlSetting, rng: random.Random) -> tuple[Matrix, Matrix, Matrix]:
    return (random_invertible(rng, setting.s), random_invertible(rng, setting.n),
            random_invertible(rng, setting.m))
