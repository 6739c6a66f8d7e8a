"""Isotropic subspaces, Grassmannians, two-step flags and their dimensions.

Every dimension formula here has an independent first-order check:
:func:`tangent_dim_isotropic_at` counts infinitesimal isotropic deformations
of a concrete subspace by exact linear algebra.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .exact import (
    I,
    ONE,
    ZERO,
    DimensionError,
    Matrix,
    Subspace,
    column_space,
    kernel,
    random_matrix,
    random_of_rank,
    rank,
    subspace_contains,
    subspace_intersect,
    subspace_sum,
)
from .forms import FormedSpace, Kind, sample_isometry


class EmptinessError(ValueError):
    """Requested isotropic dimension exceeds ``floor(n/2)``."""


def is_isotropic(space: FormedSpace, sub: Subspace) -> bool:
    if sub.ambient_dim != space.dim:
        raise DimensionError("subspace and form live in different dimensions")
    B = sub.basis
    return (B.T @ space.gram @ B).is_zero()


@dataclass(frozen=True)
class IsotropicSubspace:
    space: FormedSpace
    sub: Subspace

    def __post_init__(self):
        if not is_isotropic(self.space, self.sub):
            raise ValueError("subspace is not isotropic")

    @property
    def dim(self) -> int:
        return self.sub.dim


def max_isotropic_dim(space: FormedSpace) -> int:
    return space.dim // 2


def dim_isotropic_grassmannian(n: int, r: int, kind: Kind | str) -> int:
    """Dimension of the variety of isotropic ``r``-planes in ``n`` dimensions.

    Orthogonal: ``r(2n - 3r - 1)/2``.  Symplectic: ``r(2n - 3r + 1)/2``; the
    two differ because the pairing restricted to a plane lands in
    antisymmetric rather than symmetric ``r x r`` matrices.
    """
    kind = Kind(kind)
    if r < 0 or r > n // 2:
        raise EmptinessError(f"no isotropic {r}-planes in dimension {n}")
    if kind is Kind.SYMPLECTIC and n % 2:
        raise ValueError("symplectic spaces have even dimension")
    if kind is Kind.SYMMETRIC:
        return r * (2 * n - 3 * r - 1) // 2
    return r * (2 * n - 3 * r + 1) // 2


def dim_isotropic_grassmannian_uniform(n: int, r: int) -> int:
    """``r(2n - 3r - 1)/2`` regardless of the kind of form.

    Kept so reports can show where this expression and the tangent count
    disagree (every symplectic case with ``r >= 1``).
    """
    if r < 0 or r > n // 2:
        raise EmptinessError(f"no isotropic {r}-planes in dimension {n}")
    return r * (2 * n - 3 * r - 1) // 2


def _first_order_map(left: Matrix, gram: Matrix, nvars_rows: int, nvars_cols: int,
                     right: Matrix) -> Matrix:
    """Matrix of ``X -> X^t G R + L^t G X`` on ``nvars_rows x nvars_cols``
    matrices ``X``, where ``left = L``, ``right = R``; columns are indexed by
    the entries of ``X`` (row-major), rows by all entries of the output."""
    GR = gram @ right            # n x k
    LtG = left.T @ gram          # k x n
    k = nvars_cols
    cols = []
    for a in range(nvars_rows):
        for b in range(k):
            # E_ab^t G R has row b = row a of GR; L^t G E_ab has column b = column a of L^t G
            out = [[ZERO] * k for _ in range(k)]
            for j in range(k):
                out[b][j] = out[b][j] + GR[a, j]
            for i in range(k):
                out[i][b] = out[i][b] + LtG[i, a]
            cols.append([x for row in out for x in row])
    return Matrix.from_columns(cols, rows=k * k)


def tangent_dim_isotropic_at(u: IsotropicSubspace) -> int:
    """Dimension of first-order isotropic deformations of ``u``.

    Solves ``B^t G C + C^t G B = 0`` for ``C`` in ``Hom(C^r, C^n)`` and
    removes the ``r^2`` reparametrisations ``C = B M``.
    """
    B = u.sub.basis
    n, r = B.shape
    if r == 0:
        return 0
    J = _first_order_map(B, u.space.gram, n, r, B)
    return (n * r - rank(J)) - r * r


def isotropic_seed(space: FormedSpace, r: int) -> Subspace:
    """The standard isotropic ``r``-plane of a standard form.

    Symmetric: span of ``e_{2k-1} + i e_{2k}``; symplectic: span of
    ``e_1..e_r``.
    """
    n = space.dim
    if r < 0 or r > n // 2:
        raise EmptinessError(f"no isotropic {r}-planes in dimension {n}")
    if not space.is_standard():
        raise ValueError("seed subspaces are defined for standard forms only")
    vecs = []
    for k in range(r):
        v = [ZERO] * n
        if space.kind is Kind.SYMMETRIC:
            v[2 * k] = ONE
            v[2 * k + 1] = I
        else:
            v[k] = ONE
        vecs.append(v)
    return Subspace.span(vecs, n)


def sample_isotropic(space: FormedSpace, r: int, rng: random.Random,
                     det_sign: int | str = "any") -> IsotropicSubspace:
    """The seed ``r``-plane moved by a sampled isometry."""
    seed = isotropic_seed(space, r)
    if r == 0:
        return IsotropicSubspace(space, seed)
    g = sample_isometry(space, rng, det_sign if space.kind is Kind.SYMMETRIC else 1)
    return IsotropicSubspace(space, column_space(g @ seed.basis))


def orthogonal_complement(space: FormedSpace, sub: Subspace) -> Subspace:
    if sub.dim == 0:
        return Subspace.full(space.dim)
    return kernel(sub.basis.T @ space.gram)


def _random_vector_in(sub: Subspace, rng: random.Random) -> Matrix:
    return sub.basis @ random_matrix(rng, sub.dim, 1, box=3)


def random_subspace_between(lower: Subspace, upper: Subspace, k: int,
                            rng: random.Random, max_tries: int = 50) -> Subspace:
    """A random ``k``-dimensional ``U`` with ``lower <= U <= upper``."""
    if not subspace_contains(upper, lower) or not lower.dim <= k <= upper.dim:
        raise ValueError(f"no {k}-dimensional subspace between the given bounds")
    for _ in range(max_tries):
        extra = k - lower.dim
        if extra == 0:
            return lower
        coeffs = random_matrix(rng, upper.dim, extra, box=3)
        cand = subspace_sum(lower, column_space(upper.basis @ coeffs))
        if cand.dim == k:
            return cand
    raise RuntimeError("failed to sample an intermediate subspace")


def isotropic_extensions(space: FormedSpace, sub: Subspace, r: int, rng: random.Random,
                         count: int = 2, max_tries: int = 60) -> list[IsotropicSubspace]:
    """Up to ``count`` distinct isotropic ``r``-planes containing ``sub``.

    For a maximal isotropic ``L`` the sum ``sub + (L meet sub-perp)`` is again
    maximal isotropic; random ``L`` and random intermediate planes give the
    distinct extensions.
    """
    if not is_isotropic(space, sub):
        raise ValueError("only isotropic subspaces have isotropic extensions")
    if not sub.dim <= r <= space.dim // 2:
        raise EmptinessError(f"cannot extend a {sub.dim}-plane to an isotropic {r}-plane")
    perp = orthogonal_complement(space, sub)
    found: list[Subspace] = []
    top = space.dim // 2
    for _ in range(max_tries):
        L = sample_isotropic(space, top, rng).sub
        maximal = subspace_sum(sub, subspace_intersect(L, perp))
        if maximal.dim != top:
            raise AssertionError("Witt extension did not reach maximal dimension")
        cand = random_subspace_between(sub, maximal, r, rng)
        if cand not in found:
            found.append(cand)
            if len(found) == count:
                break
    return [IsotropicSubspace(space, s) for s in found]


# -- ordinary Grassmannians and two-step flags ------------------------------

def dim_grassmannian(k: int, n: int) -> int:
    if not 0 <= k <= n:
        raise ValueError(f"no {k}-planes in dimension {n}")
    return k * (n - k)


def dim_flag2(m: int, s: int, n: int) -> int:
    """Dimension of flags ``U1 <= U2`` with ``dim U1 = m``, ``dim U2 = n - s``."""
    if m < 0 or s < 0 or m + s > n:
        raise ValueError(f"no flags of type (m={m}, n-s={n - s}) in dimension {n}")
    twice = n * n - s * s - (n - s - m) ** 2 - m * m
    return twice // 2


@dataclass(frozen=True)
class Flag2:
    ambient_dim: int
    u1: Subspace
    u2: Subspace

    def __post_init__(self):
        if self.u1.ambient_dim != self.ambient_dim or self.u2.ambient_dim != self.ambient_dim:
            raise DimensionError("flag members live in the wrong ambient space")
        if not subspace_contains(self.u2, self.u1):
            raise ValueError("flag members are not nested")


def sample_subspace(n: int, k: int, rng: random.Random) -> Subspace:
    return column_space(random_of_rank(rng, n, k, k))


def sample_flag2(n: int, m: int, s: int, rng: random.Random) -> Flag2:
    u2 = sample_subspace(n, n - s, rng)
    u1 = random_subspace_between(Subspace.zero(n), u2, m, rng)
    return Flag2(n, u1, u2)


# -- the two families of maximal isotropic subspaces ------------------------

def component_label(u: IsotropicSubspace, reference: IsotropicSubspace) -> str:
    """``'+'`` if ``u`` lies in the family of ``reference``, else ``'-'``.

    Only defined for symmetric forms on ``2k``-space and ``k``-planes; two
    such planes are in one family iff ``k - dim(u meet reference)`` is even.
    """
    n = u.space.dim
    if (u.space.kind is not Kind.SYMMETRIC or n != 2 * u.dim or reference.dim != u.dim
            or reference.space != u.space):
        raise ValueError("component labels need maximal isotropic planes of a symmetric "
                         "form in even dimension")
    meet = subspace_intersect(u.sub, reference.sub).dim
    return "+" if (u.dim - meet) % 2 == 0 else "-"
