import json
import math

import numpy as np
import pytest

from linespace.export import csv_text, fmt, json_text, obj_text, read_obj_vertices, write_text


def test_fmt_round_trips():
    for x in (0.1, 1 / 3, -2.5e-300, 1e300, 7.0):
        assert float(fmt(x)) == x
    assert fmt(float("nan")) == "nan"
    assert fmt(np.float64(2.0)) == "2"


def test_csv_text():
    text = csv_text(["a", "b"], [[1.0, "x"], [0.5, float("nan")]], comments=["k=v"])
    assert text == "a,b\n1,x\n0.5,nan\n# k=v\n"


def test_obj_grid():
    g = np.zeros((3, 2, 3))
    g[..., 0] = np.arange(3)[:, None]
    g[..., 1] = np.arange(2)[None, :]
    text = obj_text(g, comments=["hello"])
    assert text.startswith("# hello\n")
    assert np.array_equal(read_obj_vertices(text), g.reshape(-1, 3))
    faces = [line for line in text.splitlines() if line.startswith("f ")]
    assert len(faces) == 4
    idx = {int(i) for f in faces for i in f.split()[1:]}
    assert idx == set(range(1, 7))


def test_obj_drops_bad_faces():
    g = np.random.default_rng(0).normal(size=(3, 3, 3))
    g[1, 1] = np.nan
    faces = [line for line in obj_text(g).splitlines() if line.startswith("f ")]
    assert faces == []
    g = np.random.default_rng(0).normal(size=(2, 3, 3))
    g[0, :] = 0.0  # a collapsed row
    faces = [line for line in obj_text(g).splitlines() if line.startswith("f ")]
    assert len(faces) == 2


def test_obj_shape_checked():
    with pytest.raises(ValueError):
        obj_text(np.zeros((4, 3)))


def test_json_text_deterministic():
    obj = {"b": [1 + 2j, np.float64(np.inf)], "a": np.array([1, 2]), "c": np.bool_(True), "d": float("nan")}
    text = json_text(obj)
    assert text == json_text(dict(reversed(list(obj.items()))))
    data = json.loads(text)
    assert list(data) == ["a", "b", "c", "d"]
    assert data["b"] == [[1.0, 2.0], None] and data["c"] is True and data["d"] is None


def test_write_text(tmp_path):
    p = tmp_path / "x.txt"
    write_text(p, "a\nb\n")
    assert p.read_bytes() == b"a\nb\n"
    assert math.isclose(float(fmt(0.1 + 0.2)), 0.1 + 0.2)
