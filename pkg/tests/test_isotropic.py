import pytest
import sympy

from conftest import to_sympy
from nullcones.exact import Subspace, column_space, subspace_intersect
from nullcones.forms import FormedSpace, Kind, sample_isometry
from nullcones.isotropic import (
    EmptinessError,
    Flag2,
    IsotropicSubspace,
    component_label,
    dim_flag2,
    dim_grassmannian,
    dim_isotropic_grassmannian,
    dim_isotropic_grassmannian_uniform,
    is_isotropic,
    isotropic_extensions,
    isotropic_seed,
    max_isotropic_dim,
    orthogonal_complement,
    random_subspace_between,
    sample_flag2,
    sample_isotropic,
    tangent_dim_isotropic_at,
)

SYM = Kind.SYMMETRIC
SP = Kind.SYMPLECTIC


def iso(space, vectors):
    return IsotropicSubspace(space, Subspace.span(vectors, space.dim))


def test_is_isotropic_examples():
    v2 = FormedSpace.standard(SYM, 2)
    assert is_isotropic(v2, Subspace.zero(2))
    assert is_isotropic(v2, Subspace.span([[1, 1j]], 2))
    assert not is_isotropic(v2, Subspace.span([[1, 0]], 2))
    with pytest.raises(ValueError):
        IsotropicSubspace(v2, Subspace.span([[1, 0]], 2))


def test_max_isotropic_dim():
    assert max_isotropic_dim(FormedSpace.standard(SYM, 5)) == 2
    assert max_isotropic_dim(FormedSpace.standard(SP, 4)) == 2
    assert max_isotropic_dim(FormedSpace.standard(SYM, 2)) == 1


def test_dim_formula_examples():
    assert dim_isotropic_grassmannian(4, 2, SYM) == 1
    assert dim_isotropic_grassmannian(2, 1, SP) == 1
    assert dim_isotropic_grassmannian(6, 3, SYM) == 3
    assert dim_isotropic_grassmannian_uniform(2, 1) == 0
    with pytest.raises(EmptinessError):
        dim_isotropic_grassmannian(4, 3, SYM)


def test_tangent_oracle_examples():
    s2 = FormedSpace.standard(SP, 2)
    v2 = FormedSpace.standard(SYM, 2)
    v4 = FormedSpace.standard(SYM, 4)
    assert tangent_dim_isotropic_at(iso(s2, [[1, 0]])) == 1
    assert tangent_dim_isotropic_at(iso(v2, [[1, 1j]])) == 0
    assert tangent_dim_isotropic_at(iso(v4, [[1, 1j, 0, 0], [0, 0, 1, 1j]])) == 1


def _sympy_tangent(u: IsotropicSubspace) -> int:
    """Same count built symbolically: unknown C, linearise B^t G C + C^t G B."""
    B = to_sympy(u.sub.basis)
    G = to_sympy(u.space.gram)
    n, r = B.shape
    cs = sympy.symbols(f"c0:{n * r}")
    C = sympy.Matrix(n, r, cs)
    E = B.T * G * C + C.T * G * B
    jac = sympy.Matrix([[sympy.diff(e, c) for c in cs] for e in E])
    return n * r - jac.rank() - r * r


@pytest.mark.parametrize("kind,n,r", [(SYM, 2, 1), (SYM, 4, 2), (SYM, 5, 2), (SP, 4, 1),
                                      (SP, 4, 2), (SP, 6, 2)])
def test_tangent_oracle_matches_sympy(kind, n, r):
    space = FormedSpace.standard(kind, n)
    u = IsotropicSubspace(space, isotropic_seed(space, r))
    assert tangent_dim_isotropic_at(u) == _sympy_tangent(u)


GRID = [(n, r, k) for n in range(2, 8) for r in range(1, n // 2 + 1) for k in (SYM, SP)
        if not (k is SP and n % 2)]


@pytest.mark.parametrize("n,r,kind", GRID)
def test_formula_equals_oracle(n, r, kind, rng):
    space = FormedSpace.standard(kind, n)
    for _ in range(3):
        u = sample_isotropic(space, r, rng)
        assert is_isotropic(space, u.sub) and u.dim == r
        assert tangent_dim_isotropic_at(u) == dim_isotropic_grassmannian(n, r, kind)


def test_uniform_expression_fails_exactly_for_symplectic():
    for n, r, kind in GRID:
        same = dim_isotropic_grassmannian(n, r, kind) == dim_isotropic_grassmannian_uniform(n, r)
        assert same == (kind is SYM)


def test_seed_subspaces():
    v2 = FormedSpace.standard(SYM, 2)
    s4 = FormedSpace.standard(SP, 4)
    assert isotropic_seed(v2, 1) == Subspace.span([[1, 1j]], 2)
    assert isotropic_seed(s4, 2) == Subspace.span([[1, 0, 0, 0], [0, 1, 0, 0]], 4)
    with pytest.raises(EmptinessError):
        isotropic_seed(v2, 2)


def test_orthogonal_complement(rng):
    v = FormedSpace.standard(SYM, 5)
    u = sample_isotropic(v, 2, rng).sub
    perp = orthogonal_complement(v, u)
    assert perp.dim == 3
    assert u <= perp


@pytest.mark.parametrize("kind,n,k,r", [(SYM, 4, 1, 2), (SYM, 5, 0, 2), (SP, 6, 1, 3),
                                        (SP, 4, 0, 1), (SYM, 6, 1, 2)])
def test_isotropic_extensions(kind, n, k, r, rng):
    space = FormedSpace.standard(kind, n)
    base = sample_isotropic(space, k, rng).sub
    exts = isotropic_extensions(space, base, r, rng)
    assert len(exts) == 2 and exts[0] != exts[1]
    for e in exts:
        assert e.dim == r and base <= e.sub


def test_random_subspace_between(rng):
    lo = Subspace.span([[1, 0, 0, 0]], 4)
    hi = Subspace.span([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]], 4)
    for _ in range(5):
        u = random_subspace_between(lo, hi, 2, rng)
        assert u.dim == 2 and lo <= u <= hi
    with pytest.raises(ValueError):
        random_subspace_between(hi, lo, 2, rng)


def test_grassmannian_and_flag_dims():
    assert dim_grassmannian(1, 2) == 1
    assert dim_flag2(1, 1, 2) == 1
    assert dim_flag2(2, 1, 4) == 5


@pytest.mark.parametrize("n", range(1, 8))
def test_flag_lattice_identity(n):
    for m in range(0, n + 1):
        for s in range(0, n - m + 1):
            assert dim_flag2(m, s, n) == dim_grassmannian(m, n) + dim_grassmannian(n - s - m, n - m)


def test_flag_validation(rng):
    f = sample_flag2(5, 2, 2, rng)
    assert f.u1.dim == 2 and f.u2.dim == 3 and f.u1 <= f.u2
    with pytest.raises(ValueError):
        Flag2(2, Subspace.span([[1, 0]], 2), Subspace.span([[0, 1]], 2))


def test_component_label_examples():
    v2 = FormedSpace.standard(SYM, 2)
    ref = iso(v2, [[1, 1j]])
    assert component_label(ref, ref) == "+"
    assert component_label(iso(v2, [[1, -1j]]), ref) == "-"
    with pytest.raises(ValueError):
        s2 = FormedSpace.standard(SP, 2)
        component_label(iso(s2, [[1, 0]]), iso(s2, [[1, 0]]))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_component_label_under_isometries(m, rng):
    space = FormedSpace.standard(SYM, 2 * m)
    ref = IsotropicSubspace(space, isotropic_seed(space, m))
    for _ in range(10):
        u = sample_isotropic(space, m, rng)
        lab = component_label(u, ref)
        gp = sample_isometry(space, rng, 1)
        gm = sample_isometry(space, rng, -1)
        up = IsotropicSubspace(space, column_space(gp @ u.sub.basis))
        um = IsotropicSubspace(space, column_space(gm @ u.sub.basis))
        assert component_label(up, ref) == lab
        assert component_label(um, ref) != lab


def test_component_label_is_an_equivalence(rng):
    # same family iff k - dim(u meet w) is even, for any pair
    space = FormedSpace.standard(SYM, 6)
    ref = IsotropicSubspace(space, isotropic_seed(space, 3))
    us = [sample_isotropic(space, 3, rng) for _ in range(8)]
    for a in us:
        for b in us:
            meet = subspace_intersect(a.sub, b.sub).dim
            same = (3 - meet) % 2 == 0
            assert same == (component_label(a, ref) == component_label(b, ref))
