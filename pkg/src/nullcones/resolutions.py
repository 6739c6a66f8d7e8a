"""Resolutions of the null cones and of two-column nilpotent orbit closures.

Variants are named by the resolution space they come from:

``nc0``  pairs ``(T, U)`` with ``U`` an isotropic ``r``-plane containing ``Im T``;
``nc``   quadruples ``(A, B, U1, U2)`` with ``Im B <= U1 <= U2 <= ker A``;
``nc1``  triples ``(A, B, U)`` with ``dim U = m``;
``nc2``  triples ``(A, B, U)`` with ``dim U = n - s``.

On the orbit side the same tags name the resolutions of the closure of the
class of square-zero matrices of rank ``m``: ``(g, U)`` with ``U`` isotropic
(``nc0``), ``(g, U1, U2)`` (``nc``) and ``(g, U)`` with ``dim U`` equal to
``m`` or ``n - m`` (``nc1``, ``nc2``).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import isqrt
from typing import Union

from .exact import (
    ZERO,
    DimensionError,
    GaussianRational,
    Matrix,
    Subspace,
    annihilator,
    column_space,
    inverse,
    kernel,
    left_inverse,
    random_of_rank,
    rank,
    subspace_contains,
)
from .forms import FormedSpace, Kind, adjoint, in_lie_algebra
from .isotropic import (
    IsotropicSubspace,
    component_label,
    dim_flag2,
    dim_grassmannian,
    dim_isotropic_grassmannian,
    is_isotropic,
    isotropic_extensions,
    random_subspace_between,
    sample_flag2,
    sample_isotropic,
    sample_subspace,
)
from .nullcone import (
    DomainError,
    GLPoint,
    GlSetting,
    NullPoint,
    OrthSympSetting,
    OSPoint,
    Setting,
    is_null,
)

VARIANTS = ("nc0", "nc", "nc1", "nc2")
_ALIASES = {"os": "nc0", "gl": "nc", "gl1": "nc1", "gl2": "nc2",
            "p0": "nc0", "p": "nc", "p1": "nc1", "p2": "nc2"}


def normalize_variant(variant: str) -> str:
    v = _ALIASES.get(variant, variant)
    if v not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {', '.join(VARIANTS)}")
    return v


class NotUniqueError(ValueError):
    """The fiber over a point has more than one element.

    ``witnesses`` holds distinct valid fiber elements when they could be
    constructed.
    """

    def __init__(self, message: str, witnesses: list | None = None):
        super().__init__(message)
        self.witnesses = list(witnesses or [])


class NotRepresentableError(ValueError):
    """A construction needs a square root that does not exist in Q(i)."""


# -- points -----------------------------------------------------------------

@dataclass(frozen=True)
class ResolutionPointOS:
    t: Matrix
    u: Subspace


@dataclass(frozen=True)
class ResolutionPointGL:
    a: Matrix
    b: Matrix
    u1: Subspace
    u2: Subspace


@dataclass(frozen=True)
class ResolutionPointGL1:
    a: Matrix
    b: Matrix
    u: Subspace


@dataclass(frozen=True)
class ResolutionPointGL2:
    a: Matrix
    b: Matrix
    u: Subspace


ResolutionPoint = Union[ResolutionPointOS, ResolutionPointGL, ResolutionPointGL1, ResolutionPointGL2]

_POINT_TYPES = {"nc0": ResolutionPointOS, "nc": ResolutionPointGL,
                "nc1": ResolutionPointGL1, "nc2": ResolutionPointGL2}


def variant_of(point) -> str:
    for v, cls in _POINT_TYPES.items():
        if isinstance(point, cls):
            return v
    for v, cls in _ORBIT_TYPES.items():
        if isinstance(point, cls):
            return v
    raise TypeError(f"not a resolution or orbit point: {point!r}")


@dataclass(frozen=True)
class OrbitPointOS:
    g: Matrix
    u: Subspace


@dataclass(frozen=True)
class OrbitPointGL:
    g: Matrix
    u1: Subspace
    u2: Subspace


@dataclass(frozen=True)
class OrbitPointGL1:
    g: Matrix
    u: Subspace


@dataclass(frozen=True)
class OrbitPointGL2:
    g: Matrix
    u: Subspace


OrbitPoint = Union[OrbitPointOS, OrbitPointGL, OrbitPointGL1, OrbitPointGL2]

_ORBIT_TYPES = {"nc0": OrbitPointOS, "nc": OrbitPointGL,
                "nc1": OrbitPointGL1, "nc2": OrbitPointGL2}


def _check_setting(variant: str, setting: Setting) -> None:
    want = OrthSympSetting if variant == "nc0" else GlSetting
    if not isinstance(setting, want):
        raise TypeError(f"variant {variant} needs a {want.__name__}")


def is_valid_resolution_point(setting: Setting, point: ResolutionPoint) -> bool:
    variant = variant_of(point)
    _check_setting(variant, setting)
    if variant == "nc0":
        if not is_null(setting, OSPoint(point.t)):
            return False
        u = point.u
        return (u.ambient_dim == setting.n and u.dim == setting.r
                and is_isotropic(setting.space, u)
                and subspace_contains(u, column_space(point.t)))
    if not is_null(setting, GLPoint(point.a, point.b)):
        return False
    im_b = column_space(point.b)
    ker_a = kernel(point.a)
    if variant == "nc":
        return (point.u1.dim == setting.m and point.u2.dim == setting.n - setting.s
                and subspace_contains(point.u1, im_b)
                and subspace_contains(point.u2, point.u1)
                and subspace_contains(ker_a, point.u2))
    want = setting.m if variant == "nc1" else setting.n - setting.s
    return (point.u.dim == want and subspace_contains(point.u, im_b)
            and subspace_contains(ker_a, point.u))


def mu(point: ResolutionPoint) -> NullPoint:
    """Forget the subspace data."""
    if isinstance(point, ResolutionPointOS):
        return OSPoint(point.t)
    return GLPoint(point.a, point.b)


# -- fibers of the resolution maps -------------------------------------------

def _gl_flag_forced(n: int, s: int, m: int, rank_b: int, ker_dim: int) -> bool:
    # U1 ranges over m-planes between Im B and ker A, then U2 over
    # (n-s)-planes between U1 and ker A.
    u1_forced = rank_b == m or ker_dim == m
    u2_forced = ker_dim == n - s or m == n - s
    return u1_forced and u2_forced


def unique_preimage_os(setting: OrthSympSetting, t: Matrix,
                       rng: random.Random | None = None) -> ResolutionPointOS:
    """The only ``(T, U)`` over a maximal-rank null mapping: ``U = Im T``."""
    point = OSPoint(t)
    if not is_null(setting, point):
        raise DomainError("T is not a null mapping")
    if rank(t) == setting.r:
        return ResolutionPointOS(t, column_space(t))
    witnesses = fiber_witnesses("nc0", setting, point, rng or random.Random(0))
    raise NotUniqueError(f"rank {rank(t)} < {setting.r}: the fiber is not a single point",
                         witnesses)


def unique_preimage_gl(setting: GlSetting, a: Matrix, b: Matrix, variant: str = "nc",
                       rng: random.Random | None = None) -> ResolutionPoint:
    """The forced subspace data over ``(A, B)``, e.g. ``U1 = Im B, U2 = ker A``.

    Maximal ranks always force it; a few boundary cases (``dim ker A = m``)
    force it too and are resolved rather than rejected.
    """
    variant = normalize_variant(variant)
    _check_setting(variant, setting)
    point = GLPoint(a, b)
    if not is_null(setting, point):
        raise DomainError("(A, B) is not on the null cone")
    n, s, m = setting.n, setting.s, setting.m
    im_b = column_space(b)
    ker_a = kernel(a)
    rb, K = im_b.dim, ker_a.dim
    if variant == "nc":
        if _gl_flag_forced(n, s, m, rb, K):
            u1 = im_b if rb == m else ker_a
            u2 = ker_a if K == n - s else u1
            return ResolutionPointGL(a, b, u1, u2)
    elif variant == "nc1":
        if rb == m:
            return ResolutionPointGL1(a, b, im_b)
        if K == m:
            return ResolutionPointGL1(a, b, ker_a)
    else:
        if K == n - s:
            return ResolutionPointGL2(a, b, ker_a)
        if rb == n - s:
            return ResolutionPointGL2(a, b, im_b)
    witnesses = fiber_witnesses(variant, setting, point, rng or random.Random(0))
    raise NotUniqueError(f"rank A = {s - (K - (n - s))}, rank B = {rb}: "
                         f"the {variant} fiber is not a single point", witnesses)


def unique_preimage(variant: str, setting: Setting, point: NullPoint,
                    rng: random.Random | None = None) -> ResolutionPoint:
    variant = normalize_variant(variant)
    if variant == "nc0":
        return unique_preimage_os(setting, point.t, rng)
    return unique_preimage_gl(setting, point.a, point.b, variant, rng)


def fiber_witnesses(variant: str, setting: Setting, point: NullPoint, rng: random.Random,
                    count: int = 2, max_tries: int = 60) -> list[ResolutionPoint]:
    """Up to ``count`` distinct points of the resolution lying over ``point``."""
    variant = normalize_variant(variant)
    _check_setting(variant, setting)
    if variant == "nc0":
        exts = isotropic_extensions(setting.space, column_space(point.t), setting.r, rng,
                                    count=count, max_tries=max_tries)
        return [ResolutionPointOS(point.t, e.sub) for e in exts]
    n, s, m = setting.n, setting.s, setting.m
    im_b = column_space(point.b)
    ker_a = kernel(point.a)
    found: list = []
    for _ in range(max_tries):
        if variant == "nc":
            u1 = random_subspace_between(im_b, ker_a, m, rng)
            u2 = random_subspace_between(u1, ker_a, n - s, rng)
            cand = ResolutionPointGL(point.a, point.b, u1, u2)
        else:
            k = m if variant == "nc1" else n - s
            cls = ResolutionPointGL1 if variant == "nc1" else ResolutionPointGL2
            cand = cls(point.a, point.b, random_subspace_between(im_b, ker_a, k, rng))
        if cand not in found:
            found.append(cand)
            if len(found) == count:
                break
    return found


def base_dim(variant: str, setting: Setting) -> int:
    """Dimension of the base of the bundle: an isotropic Grassmannian, the
    two-step flag variety or an ordinary Grassmannian."""
    variant = normalize_variant(variant)
    _check_setting(variant, setting)
    if variant == "nc0":
        return dim_isotropic_grassmannian(setting.n, setting.r, setting.kind)
    n, s, m = setting.n, setting.s, setting.m
    if variant == "nc":
        return dim_flag2(m, s, n)
    if variant == "nc1":
        return dim_grassmannian(m, n)
    return dim_grassmannian(n - s, n)


def fiber_dim(variant: str, setting: Setting) -> int:
    """Rank of the vector bundle.

    ``nc0``: ``Hom(C^m, U)``; ``nc``: ``Hom(V/U2, C^s) x Hom(C^m, U1)``;
    ``nc1``/``nc2``: ``Hom(V/U, C^s) x Hom(C^m, U)``.
    """
    variant = normalize_variant(variant)
    _check_setting(variant, setting)
    if variant == "nc0":
        return setting.m * setting.r
    n, s, m = setting.n, setting.s, setting.m
    if variant == "nc":
        return s * s + m * m
    if variant == "nc1":
        return m * m + s * (n - m)
    return m * (n - s) + s * s


def dim_resolution_total(variant: str, setting: Setting) -> int:
    return base_dim(variant, setting) + fiber_dim(variant, setting)


def _constraint_kernel_dim(blocks: list[tuple[int, int]], equations) -> int:
    """Dimension of the solution space of homogeneous linear equations.

    ``blocks`` lists the shapes of the unknown matrices; ``equations`` maps a
    tuple of matrices to a list of output matrices that must vanish.
    """
    sizes = [r * c for r, c in blocks]
    total = sum(sizes)
    cols = []
    for idx in range(total):
        mats = []
        offset = 0
        for (r, c), size in zip(blocks, sizes):
            vals = [ZERO] * size
            if offset <= idx < offset + size:
                vals[idx - offset] = GaussianRational(1)
            mats.append(Matrix(r, c, vals))
            offset += size
        cols.append([x for out in equations(*mats) for x in out.entries])
    return total - rank(Matrix.from_columns(cols))


def fiber_dim_at(variant: str, setting: Setting, base) -> int:
    """Exact dimension of the linear space of null points compatible with the
    subspace data ``base`` (an isotropic plane, a Flag2 or a Subspace)."""
    variant = normalize_variant(variant)
    _check_setting(variant, setting)
    if variant == "nc0":
        P = annihilator(base.sub if isinstance(base, IsotropicSubspace) else base)
        return _constraint_kernel_dim([(setting.n, setting.m)], lambda t: [P @ t])
    n, s, m = setting.n, setting.s, setting.m
    if variant == "nc":
        lo, hi = base.u1, base.u2
    else:
        lo = hi = base
    P = annihilator(lo)
    H = hi.basis
    return _constraint_kernel_dim([(s, n), (n, m)], lambda a, b: [P @ b, a @ H])


def sample_resolution_point(variant: str, setting: Setting, rng: random.Random,
                            ranks=None) -> ResolutionPoint:
    """A random point of the resolution space.

    ``ranks`` is ``rank T`` for ``nc0`` and ``(rank A, rank B)`` otherwise;
    the default is maximal rank.
    """
    variant = normalize_variant(variant)
    _check_setting(variant, setting)
    if variant == "nc0":
        k = setting.r if ranks is None else ranks
        u = sample_isotropic(setting.space, setting.r, rng)
        M = random_of_rank(rng, setting.r, setting.m, k) if setting.r else Matrix.zeros(0, setting.m)
        t = u.sub.basis @ M if setting.r else Matrix.zeros(setting.n, setting.m)
        return ResolutionPointOS(t, u.sub)
    n, s, m = setting.n, setting.s, setting.m
    ra, rb = (s, m) if ranks is None else ranks
    if variant == "nc":
        flag = sample_flag2(n, m, s, rng)
        lo, hi = flag.u1, flag.u2
    else:
        k = m if variant == "nc1" else n - s
        lo = hi = sample_subspace(n, k, rng)
    b = lo.basis @ random_of_rank(rng, lo.dim, m, rb)
    P = annihilator(hi)
    a = random_of_rank(rng, s, P.rows, ra) @ P
    if variant == "nc":
        return ResolutionPointGL(a, b, lo, hi)
    cls = ResolutionPointGL1 if variant == "nc1" else ResolutionPointGL2
    return cls(a, b, lo)


# -- quotient maps onto the orbit closure ------------------------------------

def opposite_space(setting: OrthSympSetting) -> FormedSpace:
    """The standard ``m``-dimensional space carrying the form of opposite kind."""
    return FormedSpace.standard(setting.kind.opposite, setting.m)


def _check_quotient(setting: OrthSympSetting, w: FormedSpace) -> None:
    if setting.n < 2 * setting.m:
        raise ValueError(f"quotient maps need n >= 2m, got n={setting.n}, m={setting.m}")
    if w.dim != setting.m or w.kind is not setting.kind.opposite:
        raise ValueError("W must be m-dimensional with the form of opposite kind")


def quotient_Qtilde(setting: OrthSympSetting, t: Matrix, w: FormedSpace) -> Matrix:
    """``T* T``, an element of the Lie algebra of ``W``."""
    _check_quotient(setting, w)
    return adjoint(t, w, setting.space) @ t


def quotient_R(setting: OrthSympSetting, t: Matrix, w: FormedSpace) -> Matrix:
    """``T T*``, an element of the Lie algebra of ``V``."""
    _check_quotient(setting, w)
    return t @ adjoint(t, w, setting.space)


def quotient_BA(setting: GlSetting, a: Matrix, b: Matrix) -> Matrix:
    if setting.s != setting.m:
        raise ValueError("the quotient (A, B) -> BA needs s = m")
    return b @ a


def in_orbit_closure_os(g: Matrix, m: int, space: FormedSpace) -> bool:
    """Lie algebra element of rank at most ``m`` with isotropic image."""
    return (in_lie_algebra(space, g) and rank(g) <= m
            and is_isotropic(space, column_space(g)))


def in_orbit_closure_gl(g: Matrix, m: int) -> bool:
    return (g @ g).is_zero() and rank(g) <= m


def _sqrt(z: GaussianRational) -> GaussianRational | None:
    """Exact square root in Q(i), or None."""
    # z = (a + bi)/d = (a + bi) d / d^2
    c, e, d = z._a * z._d, z._b * z._d, z._d
    N2 = c * c + e * e
    N = isqrt(N2)
    if N * N != N2:
        return None
    x2, y2 = (N + c), (N - c)
    if x2 % 2 or y2 % 2:
        return None
    x, y = isqrt(x2 // 2), isqrt(y2 // 2)
    if x * x != x2 // 2 or y * y != y2 // 2:
        return None
    if e < 0:
        y = -y
    return GaussianRational._make(x, y, d)


def _symplectic_basis(S: Matrix) -> Matrix:
    """``F`` with ``F^t S F = [[0, I], [-I, 0]]`` for invertible antisymmetric ``S``."""
    k = S.rows
    pool = [Matrix.column([GaussianRational(1) if i == j else ZERO for i in range(k)])
            for j in range(k)]

    def w(x, y):
        return (x.T @ S @ y)[0, 0]

    es, fs = [], []
    while pool:
        e = pool.pop(0)
        idx = next((i for i, f in enumerate(pool) if not w(e, f).is_zero()), None)
        if idx is None:
            if all(w(e, f).is_zero() for f in pool) and not any(
                    not w(e, v).is_zero() for v in es + fs):
                raise ValueError("form is degenerate")
            raise AssertionError("symplectic reduction failed")
        f = pool.pop(idx)
        f = f.scale(w(e, f).inverse())
        es.append(e)
        fs.append(f)
        pool = [v - e.scale(w(v, f)) + f.scale(w(v, e)) for v in pool]
        pool = [v for v in pool if not v.is_zero()]
    return es[0].hstack(*es[1:], *fs)


def _orthonormal_factor(S: Matrix) -> Matrix:
    """``M`` with ``M M^t = S`` for symmetric ``S`` when Q(i) square roots allow."""
    k = S.rows
    basis = [Matrix.column([GaussianRational(1) if i == j else ZERO for i in range(k)])
             for j in range(k)]
    cands = basis + [x + y for i, x in enumerate(basis) for y in basis[i + 1:]]
    chosen: list[Matrix] = []
    for _ in range(k):
        for v in cands:
            # project away from chosen (orthonormal w.r.t. S)
            for c in chosen:
                v = v - c.scale((c.T @ S @ v)[0, 0])
            q = (v.T @ S @ v)[0, 0]
            if q.is_zero():
                continue
            root = _sqrt(q)
            if root is None:
                continue
            chosen.append(v.scale(root.inverse()))
            break
        else:
            raise NotRepresentableError("no orthonormal basis over Q(i) found for this form")
    F = chosen[0].hstack(*chosen[1:])
    # F^t S F = I  =>  S = F^-t F^-1
    return inverse(F).T


def closure_preimage_os(setting: OrthSympSetting, g: Matrix, w: FormedSpace) -> Matrix:
    """A null mapping ``T`` with ``T T* = g`` for ``g`` of rank exactly ``m``
    in the orbit closure.

    Writes ``g = B S B^t G`` with ``B`` a basis of ``Im g`` and solves
    ``M G_W^-1 M^t = S`` by a symplectic or orthonormal basis; the symmetric
    case can fail over Q(i) and then raises NotRepresentableError.
    """
    _check_quotient(setting, w)
    m = setting.m
    if not in_orbit_closure_os(g, m, setting.space) or rank(g) != m:
        raise DomainError("g must lie in the orbit closure with rank exactly m")
    B = column_space(g).basis
    K = left_inverse(B) @ g                      # g = B K
    C = B.T @ setting.space.gram                 # K = S C
    S = K @ left_inverse(C.T).T
    gw_inv = inverse(w.gram)
    if w.kind is Kind.SYMPLECTIC:
        F_s = _symplectic_basis(S)
        F_w = _symplectic_basis(gw_inv)
        M = inverse(F_s).T @ F_w.T
    else:
        if gw_inv != Matrix.identity(m):
            raise NotImplementedError("symmetric W must carry the identity form")
        M = _orthonormal_factor(S)
    return B @ M


def closure_preimage_gl(g: Matrix, m: int) -> tuple[Matrix, Matrix]:
    """``(A, B)`` with ``AB = 0`` and ``BA = g`` for square-zero ``g`` of rank ``m``."""
    if not in_orbit_closure_gl(g, m) or rank(g) != m:
        raise DomainError("g must square to zero and have rank exactly m")
    B = column_space(g).basis
    A = left_inverse(B) @ g
    return A, B


# -- orbit side --------------------------------------------------------------

def is_valid_orbit_point(point: OrbitPoint, m: int, space: FormedSpace | None = None) -> bool:
    variant = variant_of(point)
    g = point.g
    n = g.rows
    im_g = column_space(g)
    ker_g = kernel(g)
    if variant == "nc0":
        if space is None:
            raise ValueError("the orthogonal/symplectic orbit side needs the formed space")
        return (in_orbit_closure_os(g, m, space) and point.u.dim == m
                and is_isotropic(space, point.u) and subspace_contains(point.u, im_g))
    if not in_orbit_closure_gl(g, m):
        return False
    if variant == "nc":
        return (point.u1.dim == m and point.u2.dim == n - m
                and subspace_contains(point.u1, im_g)
                and subspace_contains(point.u2, point.u1)
                and subspace_contains(ker_g, point.u2))
    want = m if variant == "nc1" else n - m
    return (point.u.dim == want and subspace_contains(point.u, im_g)
            and subspace_contains(ker_g, point.u))


def orbit_fiber_is_singleton(variant: str, g: Matrix, m: int) -> bool:
    """Whether the dimensions alone force the subspace data over ``g``."""
    variant = normalize_variant(variant)
    n = g.rows
    k = rank(g)
    K = n - k
    if variant == "nc0":
        return k == m
    if variant == "nc":
        return _gl_flag_forced(n, m, m, k, K)
    want = m if variant == "nc1" else n - m
    return k == want or K == want


def orbit_unique_preimage(variant: str, g: Matrix, m: int, space: FormedSpace | None = None,
                          rng: random.Random | None = None) -> OrbitPoint:
    """The single point over an interior ``g`` (rank exactly ``m``)."""
    variant = normalize_variant(variant)
    n = g.rows
    if variant == "nc0":
        if space is None or not in_orbit_closure_os(g, m, space):
            raise DomainError("g is not in the orbit closure")
    elif not in_orbit_closure_gl(g, m):
        raise DomainError("g is not in the orbit closure")
    im_g, ker_g = column_space(g), kernel(g)
    if orbit_fiber_is_singleton(variant, g, m):
        if variant == "nc0":
            return OrbitPointOS(g, im_g)
        if variant == "nc":
            u1 = im_g if im_g.dim == m else ker_g
            u2 = ker_g if ker_g.dim == n - m else u1
            return OrbitPointGL(g, u1, u2)
        want = m if variant == "nc1" else n - m
        u = im_g if im_g.dim == want else ker_g
        return (OrbitPointGL1 if variant == "nc1" else OrbitPointGL2)(g, u)
    rng = rng or random.Random(0)
    if variant == "nc0":
        exts = isotropic_extensions(space, im_g, m, rng)
        witnesses = [OrbitPointOS(g, e.sub) for e in exts]
    else:
        witnesses = []
        for _ in range(60):
            if variant == "nc":
                u1 = random_subspace_between(im_g, ker_g, m, rng)
                cand = OrbitPointGL(g, u1, random_subspace_between(u1, ker_g, n - m, rng))
            else:
                want = m if variant == "nc1" else n - m
                cls = OrbitPointGL1 if variant == "nc1" else OrbitPointGL2
                cand = cls(g, random_subspace_between(im_g, ker_g, want, rng))
            if cand not in witnesses:
                witnesses.append(cand)
                if len(witnesses) == 2:
                    break
    raise NotUniqueError(f"rank {rank(g)} < {m}: the orbit-side fiber is not a single point",
                         witnesses)


def induced_orbit_point(setting: Setting, point: ResolutionPoint,
                        w: FormedSpace | None = None) -> OrbitPoint:
    """Push a resolution point through the quotient, keeping its subspaces."""
    variant = variant_of(point)
    if variant == "nc0":
        return OrbitPointOS(quotient_R(setting, point.t, w or opposite_space(setting)), point.u)
    g = quotient_BA(setting, point.a, point.b)
    if variant == "nc":
        return OrbitPointGL(g, point.u1, point.u2)
    return (OrbitPointGL1 if variant == "nc1" else OrbitPointGL2)(g, point.u)


def check_diagram(setting: Setting, point: ResolutionPoint, w: FormedSpace | None = None) -> bool:
    """Both routes around the square agree and the induced point is valid:
    projecting after the induced quotient equals the quotient after projecting."""
    variant = variant_of(point)
    if not is_valid_resolution_point(setting, point):
        return False
    top = induced_orbit_point(setting, point, w)
    space = setting.space if variant == "nc0" else None
    if not is_valid_orbit_point(top, setting.m, space):
        return False
    down = mu(point)
    if variant == "nc0":
        other = quotient_R(setting, down.t, w or opposite_space(setting))
    else:
        other = quotient_BA(setting, down.a, down.b)
    return top.g == other


def q1(point: ResolutionPointGL) -> ResolutionPointGL1:
    return ResolutionPointGL1(point.a, point.b, point.u1)


def q2(point: ResolutionPointGL) -> ResolutionPointGL2:
    return ResolutionPointGL2(point.a, point.b, point.u2)


def check_q_triangle(setting: GlSetting, point: ResolutionPointGL) -> bool:
    """``q1`` and ``q2`` land in the one-step resolutions and both forgetful
    routes give the same null point."""
    a, b = q1(point), q2(point)
    return (is_valid_resolution_point(setting, point)
            and is_valid_resolution_point(setting, a)
            and is_valid_resolution_point(setting, b)
            and mu(a) == mu(b) == mu(point))


def f0_nilpotency_check(g: Matrix, u: Subspace, space: FormedSpace) -> bool:
    """``g`` kills ``U`` and squares to zero.

    Always true when ``g`` is in the Lie algebra, ``Im g <= U`` and ``U`` is
    isotropic; the function itself does not assume these.
    """
    if g.shape != (space.dim, space.dim) or u.ambient_dim != space.dim:
        raise DimensionError("shape mismatch")
    return (g @ u.basis).is_zero() and (g @ g).is_zero()


def very_even_split(g: Matrix, m: int, space: FormedSpace, reference: IsotropicSubspace) -> str:
    """Which of the two special-orthogonal classes a very even ``g`` lies in."""
    if space.kind is not Kind.SYMMETRIC or space.dim != 2 * m:
        raise ValueError("the very even case is orthogonal with n = 2m")
    if not in_orbit_closure_os(g, m, space) or rank(g) != m:
        raise ValueError("g must be an interior point of the orbit closure")
    return component_label(IsotropicSubspace(space, column_space(g)), reference)


# -- dimension counts on the orbit side --------------------------------------

def orbit_fiber_dim_at(variant: str, base, space: FormedSpace | None = None) -> int:
    """Exact dimension of ``{g : Im g <= lo, hi <= ker g}`` (plus Lie algebra
    membership for ``nc0``) for the subspace data ``base``."""
    variant = normalize_variant(variant)
    if variant == "nc0":
        u = base.sub if isinstance(base, IsotropicSubspace) else base
        P = annihilator(u)
        G = space.gram
        return _constraint_kernel_dim([(space.dim, space.dim)],
                                      lambda g: [P @ g, g.T @ G + G @ g])
    if variant == "nc":
        lo, hi = base.u1, base.u2
    else:
        lo = hi = base
    n = lo.ambient_dim
    P = annihilator(lo)
    H = hi.basis
    return _constraint_kernel_dim([(n, n)], lambda g: [P @ g, g @ H])


def orbit_dim_gl(g: Matrix) -> int:
    """``n^2`` minus the centraliser dimension: the dimension of the class of ``g``."""
    n = g.rows
    return n * n - _constraint_kernel_dim([(n, n)], lambda x: [x @ g - g @ x])


def orbit_dim_os(g: Matrix, space: FormedSpace) -> int:
    """Dimension of the adjoint orbit of ``g`` inside the Lie algebra of ``space``."""
    n = space.dim
    G = space.gram
    lie = _constraint_kernel_dim([(n, n)], lambda x: [x.T @ G + G @ x])
    cent = _constraint_kernel_dim([(n, n)], lambda x: [x.T @ G + G @ x, x @ g - g @ x])
    return lie - cent
