import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cokrig.design import Design, collocated_design, interleaved_design, load_design, save_design
from cokrig.exceptions import DesignError, ParameterError


def test_interleaved_n2():
    d = interleaved_design(2)
    assert d.sites2 == (-1.0, -0.5, 0.5, 1.0)
    assert d.sites1 == (-1.0, 1.0)
    assert d.target == 0.0


def test_interleaved_n4_cardinality():
    d = interleaved_design(4)
    assert len(d.sites1) == 4
    assert len(d.sites2) == 8
    assert 0.0 not in d.sites2
    assert 0.0 not in d.sites1


@pytest.mark.parametrize("n", [1, 3, 0, -2, 2.5, True])
def test_interleaved_rejects(n):
    with pytest.raises(ParameterError):
        interleaved_design(n)


def test_interleaved_subset_for_all_n():
    for n in range(2, 2049, 2):
        d = interleaved_design(n)
        evens = {s for i, s in zip([*range(-n, 0), *range(1, n + 1)], d.sites2) if i % 2 == 0}
        assert set(d.sites1) == evens
        assert min(d.sites1) == -1.0 and max(d.sites1) == 1.0


def test_collocated():
    d = collocated_design([0.5], 0.0)
    assert d.sites1 == d.sites2 == (0.5,)
    d = collocated_design([i / 4 for i in range(-4, 5) if i])
    assert d.n_obs == 16
    assert d.is_collocated


def test_duplicates_rejected():
    with pytest.raises(DesignError):
        collocated_design([0.1, 0.2, 0.1])
    with pytest.raises(DesignError):
        Design([0.1], [0.3, 0.3])


def test_non_finite_rejected():
    with pytest.raises(DesignError):
        Design([float("nan")], [])
    with pytest.raises(DesignError):
        Design([0.1], [], float("inf"))


def test_json_roundtrip_bytes(tmp_path):
    d = interleaved_design(6)
    path = tmp_path / "d.json"
    save_design(d, path)
    first = path.read_bytes()
    again = load_design(path)
    assert again == d
    save_design(again, path)
    assert path.read_bytes() == first


@given(s1=st.lists(st.floats(allow_nan=False, allow_infinity=False), unique=True, max_size=10),
       s2=st.lists(st.floats(allow_nan=False, allow_infinity=False), unique=True, max_size=10),
       t=st.floats(allow_nan=False, allow_infinity=False))
def test_json_roundtrip_property(s1, s2, t):
    d = Design(s1, s2, t)
    text = d.to_json()
    assert Design.from_json(text).to_json() == text
    assert Design.from_json(text) == d


@pytest.mark.parametrize("doc, field", [
    ({"sites2": [], "target": 0}, "sites1"),
    ({"sites1": [], "target": 0}, "sites2"),
    ({"sites1": [], "sites2": []}, "target"),
    ({"sites1": ["a"], "sites2": [], "target": 0}, "sites1"),
    ({"sites1": [], "sites2": 3, "target": 0}, "sites2"),
    ({"sites1": [], "sites2": [], "target": "x"}, "target"),
])
def test_bad_documents_name_field(tmp_path, doc, field):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(DesignError, match=field) as info:
        load_design(path)
    assert str(path) in str(info.value)


def test_bad_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(DesignError, match="invalid JSON"):
        load_design(path)
