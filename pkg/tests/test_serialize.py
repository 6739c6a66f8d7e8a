import random
import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import mat
from nullcones.exact import Matrix, ParseError, Subspace, random_matrix
from nullcones.forms import Kind, sample_isometry, standard_form
from nullcones.nullcone import GLPoint, GlSetting, OrthSympSetting, OSPoint
from nullcones.resolutions import (
    VARIANTS,
    induced_orbit_point,
    sample_resolution_point,
)
from nullcones.serialize import (
    dumps,
    form_from_json,
    form_to_json,
    loads,
    matrix_from_json,
    matrix_to_json,
    null_point_from_json,
    null_point_to_json,
    orbit_point_from_json,
    orbit_point_to_json,
    point_to_json,
    resolution_point_from_json,
    resolution_point_to_json,
    subspace_from_json,
    subspace_to_json,
)


def _setting(variant):
    if variant == "nc0":
        return OrthSympSetting.standard(Kind.SYMMETRIC, 5, 2)
    return GlSetting(5, 2, 2)


def test_matrix_text_format():
    m = mat([[1, "1/2+3/4*i"], [-1j, 0]])
    assert matrix_to_json(m) == [["1", "1/2+3/4*i"], ["-1*i", "0"]]
    assert matrix_from_json(matrix_to_json(m)) == m


def test_matrix_accepts_plain_ints():
    assert matrix_from_json([[1, "2"]]) == mat([[1, 2]])


def test_empty_matrix_with_shape():
    m = matrix_from_json([], shape=(0, 3))
    assert m.shape == (0, 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4), st.integers(1, 4))
def test_matrix_round_trip(seed, r, c):
    m = random_matrix(random.Random(seed), r, c)
    text = dumps(matrix_to_json(m))
    assert matrix_from_json(loads(text)) == m
    assert dumps(matrix_to_json(matrix_from_json(loads(text)))) == text


def test_subspace_round_trip(rng):
    for u in (Subspace.zero(3), Subspace.full(2), Subspace.span([[1, 1j, 0]], 3)):
        assert subspace_from_json(subspace_to_json(u)) == u
    zero = subspace_to_json(Subspace.zero(4))
    assert zero["dim"] == 0 and zero["ambient_dim"] == 4


def test_subspace_from_any_spanning_basis():
    data = {"ambient_dim": 2, "basis": [["2"], ["2*i"]]}
    assert subspace_from_json(data) == Subspace.span([[1, 1j]], 2)


def test_form_round_trip():
    for kind, n in ((Kind.SYMMETRIC, 3), (Kind.SYMPLECTIC, 4)):
        f = standard_form(kind, n)
        assert form_from_json(form_to_json(f)).gram == f.gram


def test_null_point_round_trip(rng):
    p = OSPoint(random_matrix(rng, 4, 2))
    q = GLPoint(random_matrix(rng, 1, 3), random_matrix(rng, 3, 2))
    for pt in (p, q):
        back = null_point_from_json(loads(dumps(null_point_to_json(pt))))
        assert back == pt


@pytest.mark.parametrize("variant", VARIANTS)
def test_resolution_point_round_trip(variant, rng):
    st_ = _setting(variant)
    for _ in range(5):
        p = sample_resolution_point(variant, st_, rng)
        data = resolution_point_to_json(p)
        assert data["variant"] == variant
        assert resolution_point_from_json(loads(dumps(data))) == p
        assert point_to_json(p) == data


@pytest.mark.parametrize("variant", VARIANTS)
def test_orbit_point_round_trip(variant, rng):
    st_ = _setting(variant)
    p = sample_resolution_point(variant, st_, rng)
    if variant == "nc0":
        w = standard_form(Kind.SYMPLECTIC, 2)
        o = induced_orbit_point(st_, p, w)
    else:
        o = induced_orbit_point(st_, p)
    data = orbit_point_to_json(o)
    assert "g" in data and point_to_json(o) == data
    assert orbit_point_from_json(loads(dumps(data))) == o


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'


@pytest.mark.parametrize("data,where", [
    ([["1", "x"]], "$[0][1]"),
    ([["1", "2"], ["3"]], "$[1]"),
    ("nope", "$"),
    ([[1.5]], "$[0][0]"),
    ([[True]], "$[0][0]"),
])
def test_matrix_errors_name_location(data, where):
    with pytest.raises(ParseError, match=re.escape(where)):
        matrix_from_json(data)


def test_shape_mismatch():
    with pytest.raises(ParseError, match="expected shape 2x2"):
        matrix_from_json([["1", "2"]], shape=(2, 2))


def test_null_point_errors():
    with pytest.raises(ParseError, match=r"\$\.case"):
        null_point_from_json({"case": "xx"})
    with pytest.raises(ParseError, match="missing field 'b'"):
        null_point_from_json({"case": "gl", "a": [["1"]]})
    with pytest.raises(ParseError, match=r"\$\.t\[0\]\[0\]"):
        null_point_from_json({"case": "os", "t": [["1/0"]]})
    with pytest.raises(ParseError, match="expected an object"):
        null_point_from_json([1])


def test_subspace_errors():
    with pytest.raises(ParseError, match="linearly dependent"):
        subspace_from_json({"ambient_dim": 2, "basis": [["1", "2"], ["1", "2"]]})
    with pytest.raises(ParseError, match=r"\.dim"):
        subspace_from_json({"ambient_dim": 2, "dim": 2, "basis": [["1"], ["0"]]})
    with pytest.raises(ParseError, match="rows"):
        subspace_from_json({"ambient_dim": 3, "basis": [["1"], ["0"]]})


def test_form_errors():
    with pytest.raises(ParseError, match="unknown kind"):
        form_from_json({"kind": "hermitian", "gram": [["1"]]})
    with pytest.raises(ParseError):
        form_from_json({"kind": Kind.SYMPLECTIC.value, "gram": [["1", "0"], ["0", "1"]]})


def test_variant_errors():
    with pytest.raises(ParseError, match="unknown variant"):
        resolution_point_from_json({"variant": "nc7"})
    with pytest.raises(ParseError, match="unknown variant"):
        orbit_point_from_json({"variant": "nc9", "g": [["0"]]})


def test_loads_reports_line_and_column():
    with pytest.raises(ParseError, match="line 2 column"):
        loads('{"a":\n  ,}', "input.json")


def test_isometry_matrix_survives_text(rng):
    space = OrthSympSetting.standard(Kind.SYMPLECTIC, 4, 1).space
    g = sample_isometry(space, rng)
    assert matrix_from_json(loads(dumps(matrix_to_json(g)))) == g
    assert isinstance(g, Matrix)
