import json
from fractions import Fraction as Fr

import pytest

from gkml.algebra import ONE, ZERO, OrderMap, build_order_map
from gkml.generators import random_model, trial_rng
from gkml.model import (GKModel, ModelError, builtin_model, dumps_model, frame_properties,
                        load_model, model_from_json, save_model, transform_model)

SEC6_FILE = {"worlds": ["x", "y"], "S": {"x,y": "1/2"}, "e": {"x": {"p": "1"}, "y": {"p": "1"}}}


def test_load_example_file(tmp_path):
    path = tmp_path / "sec6.json"
    path.write_text(json.dumps(SEC6_FILE))
    m = load_model(path)
    assert m.S("x", "y") == Fr(1, 2)
    assert m.S("y", "x") == ZERO
    assert m == builtin_model("sec6-crisp-fail")


def test_missing_entries_default_to_zero():
    m = model_from_json({"worlds": ["a", "b"]})
    assert all(v == ZERO for row in m.access for v in row)
    assert m.e("a", "p") == ZERO


@pytest.mark.parametrize("data", [
    {"worlds": ["x"], "S": {"x,x": "3/2"}},
    {"worlds": []},
    {"worlds": ["x", "x"]},
    {"worlds": ["x"], "S": {"x,z": "1"}},
    {"worlds": ["x"], "S": {"x,x": 0.5}},
    {"worlds": ["x"], "e": {"x": {"p": "2"}}},
    {"worlds": ["x"], "colour": "red"},
    [1, 2],
])
def test_invalid_models(data):
    with pytest.raises(ModelError):
        model_from_json(data)


def test_malformed_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(ModelError):
        load_model(path)


def test_round_trip_is_bit_exact(tmp_path):
    for t in range(50):
        m = random_model(trial_rng(3, t), ["p", "q"], constants={Fr(1, 3)} if t % 2 else None)
        path = tmp_path / "m.json"
        save_model(m, path)
        text = path.read_text()
        again = load_model(path)
        assert again == m
        assert dumps_model(again) == text


def test_constants_domain_contains_endpoints():
    m = model_from_json({"worlds": ["x"], "constants": ["1/2"]})
    assert m.constants == {ZERO, Fr(1, 2), ONE}


def test_frame_examples():
    report = frame_properties(builtin_model("sec6-crisp-fail"))
    assert not report.crisp and report.witnesses["crisp"] == ("x", "y", Fr(1, 2))
    assert not report.reflexive and not report.symmetric
    full = GKModel.from_maps(["a", "b"], {(x, y): ONE for x in "ab" for y in "ab"}, {})
    report = frame_properties(full)
    assert report.crisp and report.reflexive and report.transitive and report.symmetric
    chain = GKModel.from_maps(["x", "y", "z"], {("x", "y"): ONE, ("y", "z"): ONE,
                                               ("x", "z"): Fr(1, 2)}, {})
    report = frame_properties(chain)
    assert not report.transitive
    assert report.witnesses["transitive"][:3] == ("x", "y", "z")
    assert any(line.startswith("transitive: no") for line in report.lines())


@pytest.mark.parametrize("n", [1, 2, 5, 10])
def test_truncated_model_is_an_equivalence_frame(n):
    report = frame_properties(builtin_model("sec5-truncated", n))
    assert report.crisp and report.reflexive and report.transitive and report.symmetric


def test_builtins():
    assert builtin_model("sec5-truncated", 3).e("2", "p") == Fr(1, 3)
    assert builtin_model("sec6-crisp-fail").S("x", "y") == Fr(1, 2)
    slice5 = builtin_model("sec3-slice", 5)
    assert slice5.e("w", "p3") == Fr(3, 8)
    assert slice5.e("w", "q") == Fr(1, 2)
    with pytest.raises(ModelError):
        builtin_model("sec4")


def test_transform_examples():
    m = builtin_model("sec6-crisp-fail")
    assert transform_model(m, OrderMap.identity(m.values())) == m
    g = OrderMap(((ZERO, ZERO), (Fr(1, 2), Fr(3, 4)), (ONE, ONE)))
    assert transform_model(m, g).S("x", "y") == Fr(3, 4)
    with pytest.raises(ModelError, match="1/2"):
        transform_model(m, OrderMap.identity())


def test_transform_preserves_frame_report():
    for t in range(200):
        rng = trial_rng(11, t)
        frame = rng.choice([(), ("reflexive",), ("transitive",), ("symmetric",), ("crisp",)])
        m = random_model(rng, ["p"], frame=frame)
        lo = Fr(rng.randint(0, 4), 8)
        g = build_order_map(m.values(), lo, Fr(1, 2))
        before, after = frame_properties(m), frame_properties(transform_model(m, g))
        for prop in ("crisp", "reflexive", "transitive", "symmetric"):
            assert getattr(before, prop) == getattr(after, prop)


def test_random_models_respect_frame_class():
    for t in range(200):
        rng = trial_rng(5, t)
        m = random_model(rng, ["p"], frame=("reflexive", "transitive", "symmetric"))
        report = frame_properties(m)
        assert report.reflexive and report.transitive and report.symmetric
        assert frame_properties(random_model(rng, ["p"], frame=("crisp",))).crisp
