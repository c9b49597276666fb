import json
import random

import pytest

from patcoh.catalog import build, names
from patcoh.field import quadratic
from patcoh.model import (
    Hyperplane,
    ParseError,
    canonical_hyperplane,
    parse_projection_data,
    serialize_projection_data,
    validate,
)

F5 = quadratic(5)
TAU = F5.elem("1/2", "1/2")


def minimal_doc(**overrides):
    doc = {
        "schema": "patcoh/1",
        "name": "t",
        "field": {"kind": "Qsqrt", "D": 5},
        "dim": 1,
        "generators": [[["1"]], [["1/2", "1/2"]]],
        "hyperplanes": [{"normal": [["1"]], "offset": ["0"]}],
    }
    doc.update(overrides)
    return doc


def test_parse_minimal():
    data = parse_projection_data(json.dumps(minimal_doc()))
    assert data.m == 1 and data.n == 2 and data.d == 1
    assert data.gens[1][0] == TAU
    assert data.planes[0].offset == F5.zero


def test_parse_bare_string_element():
    doc = minimal_doc(generators=[["1"], ["1/2", "1/2"]])
    # a generator in 1-dim space may list coordinates as bare strings
    with pytest.raises(ParseError):
        parse_projection_data(json.dumps(doc))  # "1/2","1/2" is a 2-vector here
    doc = minimal_doc(generators=[[["1"]], [["1/2", "1/2"]]])
    assert parse_projection_data(json.dumps(doc)).n == 2


@pytest.mark.parametrize("mangle, match", [
    ({"schema": "nope"}, "schema"),
    ({"field": {"kind": "Qsqrt", "D": 12}}, "squarefree"),
    ({"field": {"kind": "R"}}, "field"),
    ({"dim": 0}, "dim"),
    ({"generators": []}, "generators"),
    ({"generators": [[["1"], ["0"]]]}, "coordinates"),
    ({"generators": [[["1", "0", "0"]]]}, "field element"),
    ({"hyperplanes": []}, "hyperplanes"),
    ({"hyperplanes": [{"normal": [["0"]]}]}, "zero"),
    ({"name": 3}, "name"),
])
def test_parse_errors_are_distinct(mangle, match):
    with pytest.raises(ParseError, match=match):
        parse_projection_data(json.dumps(minimal_doc(**mangle)))


def test_parse_rejects_malformed_json():
    with pytest.raises(ParseError, match="JSON"):
        parse_projection_data("{not json")


def test_irrational_component_over_q():
    doc = minimal_doc(field={"kind": "Q"}, generators=[[["1"]], [["1/2", "1/2"]]])
    with pytest.raises(ParseError, match="irrational"):
        parse_projection_data(json.dumps(doc))


def test_canonical_hyperplane():
    h = Hyperplane((F5.zero, TAU + TAU), TAU)
    c = canonical_hyperplane(h)
    assert c.normal == (F5.zero, F5.one)
    assert c.offset == F5.elem("1/2")
    assert canonical_hyperplane(c) == c
    with pytest.raises(ValueError):
        canonical_hyperplane(Hyperplane((F5.zero,), F5.one))


def test_parse_canonicalizes_planes():
    doc = minimal_doc(hyperplanes=[{"normal": [["0"], ["2"]], "offset": ["1"]}],
                      dim=2,
                      generators=[[["1"], ["0"]], [["0"], ["1"]],
                                  [["1/2", "1/2"], ["0"]]])
    data = parse_projection_data(json.dumps(doc))
    assert data.planes[0].normal == (F5.zero, F5.one)
    assert data.planes[0].offset == F5.elem("1/2")


def test_round_trip_catalog_entries():
    for nm in names():
        data = build(nm).data
        again = parse_projection_data(serialize_projection_data(data))
        assert again == data


def test_validate_catalog_entries():
    for nm in names():
        rep = validate(build(nm).data)
        if nm == "square_fibonacci":
            assert not rep.ok
            assert any(f.code == "decomposable" for f in rep.findings)
        else:
            assert rep.ok, (nm, rep.findings)
            assert any(f.code == "density_assumed" for f in rep.findings)


def test_validate_dependent_generators():
    doc = minimal_doc(generators=[[["1"]], [["2"]]])
    rep = validate(parse_projection_data(json.dumps(doc)))
    assert any(f.code == "gens_dependent" for f in rep.findings)


def test_validate_normals_must_span():
    doc = minimal_doc(
        dim=2,
        generators=[[["1"], ["0"]], [["0"], ["1"]], [["1/2", "1/2"], ["0"]],
                    [["0"], ["1/2", "1/2"]]],
        hyperplanes=[{"normal": [["1"], ["0"]]}])
    rep = validate(parse_projection_data(json.dumps(doc)))
    assert any(f.code == "normals_span" for f in rep.findings)


def test_validate_nu_warning():
    rep = validate(build("infinite_demo").data)
    assert rep.ok
    assert any(f.code == "nu_not_integral" and f.severity == "warning"
               for f in rep.findings)


def test_validate_density_partial_check():
    # pairing Gamma against the normal (0,1) yields the rank-1 group Z,
    # so translates of that plane cannot be dense
    doc = minimal_doc(
        dim=2,
        generators=[[["1"], ["0"]], [["0"], ["1"]], [["1/2", "1/2"], ["0"]]],
        hyperplanes=[{"normal": [["1"], ["0"]]}, {"normal": [["0"], ["1"]]},
                     {"normal": [["1"], ["1"]]}])
    rep = validate(parse_projection_data(json.dumps(doc)))
    assert any(f.code == "density" for f in rep.findings)


def test_validate_invariant_under_plane_permutation():
    rng = random.Random(61)
    data = build("danzer").data
    planes = list(data.planes)
    rng.shuffle(planes)
    shuffled = type(data)(data.field, data.m, data.gens, tuple(planes), data.name)
    assert validate(shuffled).ok == validate(data).ok
