import random

import pytest

from conftest import mat
from nullcones.exact import ONE, ZERO, DimensionError, Matrix, det, gr, random_matrix
from nullcones.forms import (
    BilinearForm,
    FormedSpace,
    Kind,
    ParityError,
    adjoint,
    cayley,
    form_eval,
    in_lie_algebra,
    is_isometry,
    random_lie_algebra_element,
    reflection,
    sample_isometry,
    standard_form,
)

SYM = Kind.SYMMETRIC
SP = Kind.SYMPLECTIC


def test_standard_forms():
    assert standard_form(SYM, 3).gram == Matrix.identity(3)
    assert standard_form(SP, 2).gram == mat([[0, 1], [-1, 0]])
    assert standard_form(SP, 4).gram == mat([[0, 0, 1, 0], [0, 0, 0, 1],
                                             [-1, 0, 0, 0], [0, -1, 0, 0]])
    with pytest.raises(ParityError):
        standard_form(SP, 3)


def test_form_validation():
    with pytest.raises(ValueError):
        BilinearForm(SYM, mat([[1, 1], [0, 1]]))
    with pytest.raises(ValueError):
        BilinearForm(SYM, mat([[1, 1], [1, 1]]))
    with pytest.raises(ValueError):
        BilinearForm(SP, Matrix.identity(2))


def test_form_eval():
    v2 = FormedSpace.standard(SYM, 2)
    s2 = FormedSpace.standard(SP, 2)
    assert form_eval(v2, [1, 1j], [1, 1j]) == ZERO
    assert form_eval(v2, [1, 0], [1, 0]) == ONE
    assert form_eval(s2, [1, 0], [0, 1]) == ONE
    assert form_eval(s2, [1, 0], [1, 0]) == ZERO
    with pytest.raises(DimensionError):
        form_eval(v2, [1, 0, 0], [1, 0])


def test_symplectic_pairing_formula(rng):
    # (v, v') = sum x_j y'_j - y_j x'_j with v = (x, y)
    s = FormedSpace.standard(SP, 6)
    for _ in range(10):
        u = random_matrix(rng, 6, 1)
        v = random_matrix(rng, 6, 1)
        x, y = u.entries[:3], u.entries[3:]
        x2, y2 = v.entries[:3], v.entries[3:]
        want = sum((x[j] * y2[j] - y[j] * x2[j] for j in range(3)), ZERO)
        assert form_eval(s, u.entries, v.entries) == want


def test_isometry_examples():
    v2 = FormedSpace.standard(SYM, 2)
    assert is_isometry(v2, Matrix.identity(2))
    assert is_isometry(v2, Matrix.diag([1, -1]))
    assert not is_isometry(v2, Matrix.diag([2, 1]))


def test_lie_algebra_examples():
    v2 = FormedSpace.standard(SYM, 2)
    s2 = FormedSpace.standard(SP, 2)
    assert in_lie_algebra(v2, Matrix.zeros(2, 2))
    assert in_lie_algebra(v2, mat([[0, 1], [-1, 0]]))
    assert not in_lie_algebra(s2, Matrix.identity(2))
    assert in_lie_algebra(s2, mat([[1, 0], [0, -1]]))


@pytest.mark.parametrize("kind,n", [(SYM, 2), (SYM, 3), (SYM, 5), (SP, 2), (SP, 4), (SP, 6)])
def test_random_lie_elements_and_cayley(kind, n, rng):
    space = FormedSpace.standard(kind, n)
    for _ in range(10):
        x = random_lie_algebra_element(space, rng)
        assert in_lie_algebra(space, x)
        try:
            g = cayley(x)
        except ZeroDivisionError:
            continue
        assert is_isometry(space, g)


def test_cayley_of_zero():
    assert cayley(Matrix.zeros(3, 3)) == Matrix.identity(3)


@pytest.mark.parametrize("kind,n", [(SYM, 2), (SYM, 3), (SYM, 4), (SP, 2), (SP, 4)])
def test_sample_isometry_signs(kind, n, rng):
    space = FormedSpace.standard(kind, n)
    for _ in range(10):
        g = sample_isometry(space, rng, 1)
        assert is_isometry(space, g) and det(g) == ONE
        h = sample_isometry(space, rng, "any")
        assert is_isometry(space, h) and det(h) in (ONE, -ONE)
    if kind is SYM:
        g = sample_isometry(space, rng, -1)
        assert is_isometry(space, g) and det(g) == -ONE
    else:
        with pytest.raises(ValueError):
            sample_isometry(space, rng, -1)


def test_reflection_nonstandard_gram():
    gram = mat([[0, 1, 0], [1, 0, 0], [0, 0, 2]])
    space = FormedSpace(3, BilinearForm(SYM, gram))
    r = reflection(space)
    assert is_isometry(space, r) and det(r) == -ONE
    g = sample_isometry(space, random.Random(1), -1)
    assert is_isometry(space, g) and det(g) == -ONE


def _adjoint_identity_holds(t, w, v, tstar):
    # (T w, v)_V = (w, T* v)_W on all basis pairs
    for a in range(w.dim):
        ea = Matrix.identity(w.dim).col(a)
        for b in range(v.dim):
            eb = Matrix.identity(v.dim).col(b)
            lhs = form_eval(v, (t @ Matrix.column(ea)).entries, eb)
            rhs = form_eval(w, ea, (tstar @ Matrix.column(eb)).entries)
            if lhs != rhs:
                return False
    return True


@pytest.mark.parametrize("vk,wk,n,m", [(SYM, SP, 4, 2), (SP, SYM, 4, 1), (SP, SYM, 6, 3),
                                       (SYM, SYM, 3, 2), (SP, SP, 4, 2)])
def test_adjoint_defining_identity(vk, wk, n, m, rng):
    v = FormedSpace.standard(vk, n)
    w = FormedSpace.standard(wk, m)
    for _ in range(5):
        t = random_matrix(rng, n, m)
        ts = adjoint(t, w, v)
        assert ts.shape == (m, n)
        assert _adjoint_identity_holds(t, w, v, ts)
        # the identity pins T* down, so perturbing it breaks the check
        bump = Matrix.zeros(m, n).tolist()
        bump[0][0] = ONE
        assert not _adjoint_identity_holds(t, w, v, ts + Matrix.from_rows(bump))
        # T** = eps_V eps_W T with eps = +1 symmetric, -1 symplectic
        sign = vk.sign * wk.sign
        assert adjoint(ts, v, w) == t.scale(sign)
        if sign == -1:
            assert adjoint(ts, v, w) != t


def test_adjoint_of_zero_and_identity_embedding():
    v = FormedSpace.standard(SYM, 3)
    w = FormedSpace.standard(SYM, 2)
    assert adjoint(Matrix.zeros(3, 2), w, v) == Matrix.zeros(2, 3)
    t = mat([[1, 0], [0, 1], [0, 0]])
    assert adjoint(t, w, v) == t.T


def test_adjoint_closed_forms_under_standard_forms(rng):
    """Which closed form matches the defining identity.

    V symmetric (Gram I), W symplectic (J_W):  T* = -J_W T^t.
    V symplectic (J_V), W symmetric (Gram I):  T* = T^t J_V.
    The opposite signs fail.
    """
    v, w = FormedSpace.standard(SYM, 4), FormedSpace.standard(SP, 2)
    t = random_matrix(rng, 4, 2)
    assert adjoint(t, w, v) == -(w.gram @ t.T)
    assert adjoint(t, w, v) != w.gram @ t.T

    v, w = FormedSpace.standard(SP, 4), FormedSpace.standard(SYM, 2)
    t = random_matrix(rng, 4, 2)
    assert adjoint(t, w, v) == t.T @ v.gram
    assert adjoint(t, w, v) != -(t.T @ v.gram)


def test_adjoint_shape_error():
    v = FormedSpace.standard(SYM, 3)
    w = FormedSpace.standard(SYM, 2)
    with pytest.raises(DimensionError):
        adjoint(Matrix.zeros(2, 3), w, v)


def test_gr_coercion():
    assert gr(2 + 3j) == gr("2+3*i")
    with pytest.raises(TypeError):
        gr(0.5j)
