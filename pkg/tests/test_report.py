import json
import math

import jsonschema
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from trapgauss.errors import DegenerateProjection
from trapgauss.report import dumps, export_mesh, loads, schema, stats, validate

scalars = st.one_of(
    st.none(),
    st.booleans(),
    st.integers(-10**6, 10**6),
    st.floats(allow_nan=False, allow_infinity=False),
    st.text(max_size=8),
)
documents = st.recursive(
    scalars,
    lambda kids: st.one_of(st.lists(kids, max_size=4), st.dictionaries(st.text(max_size=6), kids, max_size=4)),
    max_leaves=20,
)


@given(documents)
def test_round_trip_is_byte_identical(doc):
    text = dumps(doc)
    assert dumps(loads(text)) == text
    assert text.endswith("\n")


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_floats_survive_exactly(x):
    assert loads(dumps([x]))[0] == x
    assert isinstance(loads(dumps(x)), float)


def test_float_formatting():
    assert dumps(1.0) == "1.0\n"
    assert dumps(0.1) == "0.10000000000000001\n"
    assert dumps(1e300) == "1.0000000000000001e+300\n"
    assert dumps(float("nan")) == "null\n"
    assert dumps(np.float64(2.5)) == "2.5\n"


def test_stats():
    assert stats([1.0, None, 3.0]) == {"min": 1.0, "max": 3.0, "mean": 2.0}
    assert stats([]) == {"min": None, "max": None, "mean": None}


def test_mesh_of_two_by_two_grid():
    P = np.arange(16, dtype=float).reshape(2, 2, 4)
    text = export_mesh(P, (1, 2, 0))
    lines = text.splitlines()
    verts = [l for l in lines if l.startswith("v ")]
    faces = [l for l in lines if l.startswith("f ")]
    assert lines[:2] == ["# projection 1,2,0", "# grid 2x2"]
    assert len(verts) == 4 and faces == ["f 1 2 4", "f 1 4 3"]
    assert verts[0] == "v 1.0 2.0 0.0"


def test_mesh_drops_faces_at_invalid_nodes():
    P = np.zeros((3, 3, 4))
    valid = np.ones((3, 3), dtype=bool)
    valid[0, 0] = False
    text = export_mesh(P, (0, 1, 2), valid)
    assert sum(l.startswith("v ") for l in text.splitlines()) == 8
    assert sum(l.startswith("f ") for l in text.splitlines()) == 6


def test_mesh_projection_errors():
    P = np.zeros((2, 2, 4))
    with pytest.raises(DegenerateProjection):
        export_mesh(P, (0, 0, 1))
    with pytest.raises(ValueError):
        export_mesh(P, (0, 1, 7))


def test_schema_rejects_incomplete_reports():
    good = {
        "schema_version": "1.0",
        "command": "classify",
        "config": {},
        "surface": {"source": "catalog", "name": "plane", "spaceform": "minkowski", "points": 4},
        "taxonomy": {"kind": "Harmonic", "lambda": None, "C": None, "f": None,
                     "first_kind_residual": None, "second_kind_residual": None, "null_dim": None,
                     "samples": 4, "zero_samples": 4},
        "artifacts": {"mesh": None},
        "timings": {"total_seconds": 0.1},
    }
    validate(good)
    bad = dict(good)
    del bad["taxonomy"]
    with pytest.raises(jsonschema.ValidationError):
        validate(bad)
    with pytest.raises(jsonschema.ValidationError):
        validate({**good, "schema_version": "2.0"})
    jsonschema.Draft202012Validator.check_schema(schema())
