import json
import os
from pathlib import Path

import pytest

import polyescape

CORPUS = Path(os.environ.get("POLYESCAPE_CORPUS_DIR", Path(__file__).resolve().parents[1] / "corpus"))


def instance(A, a=None, strict=((), ()), nonstrict=((), ())):
    d = len(A)
    return {
        "dimension": d,
        "dynamics": {"A": A, "a": a or ["0"] * d},
        "polytope": {
            "strict": {"B": list(strict[0]), "b": list(strict[1])},
            "nonstrict": {"B": list(nonstrict[0]), "b": list(nonstrict[1])},
        },
    }


GROWTH = instance([["1"]], nonstrict=([["1"]], ["1"]))
DECAY = instance([["-1"]], nonstrict=([["1"]], ["1"]))


def test_growth_is_trapped_with_witness():
    v = polyescape.decide(GROWTH)
    assert v["verdict"] == "trapped-exists"
    ok, reason = polyescape.check_witness(GROWTH, v)
    assert ok, reason


def test_decay_escapes():
    v = polyescape.decide(DECAY, certificate=True)
    assert v["verdict"] == "all-escape"
    assert v["witness"] is None


def test_witness_rejected():
    ok, reason = polyescape.check_witness(GROWTH, ["-1"])
    assert not ok
    assert reason


def test_json_string_input():
    assert polyescape.decide(json.dumps(DECAY))["verdict"] == "all-escape"


def test_bad_input_raises():
    with pytest.raises(ValueError):
        polyescape.decide({"dimension": 2})


def test_spectrum_rotation():
    s = polyescape.spectrum([["0", "-1"], ["1", "0"]])
    assert s["minimal_polynomial"] == ["1", "0", "1"]
    assert len(s["eigenvalues"]) == 2
    assert not any(e["real"] for e in s["eigenvalues"])


def test_simulate_shape():
    times, points = polyescape.simulate(DECAY, [3.0], horizon=2.0, samples=5)
    assert times == pytest.approx([0, 0.5, 1, 1.5, 2])
    assert points[-1][0] == pytest.approx(3.0 * 2.718281828459045**-2, rel=1e-9)


def test_resource_limit():
    saddle = instance([["1", "0"], ["0", "-1"]], nonstrict=([["1", "0"], ["0", "1"]], ["1", "1"]))
    with pytest.raises(polyescape.ResourceLimitExceeded):
        polyescape.decide(saddle, max_branches=1)


@pytest.mark.parametrize("path", sorted(CORPUS.glob("*.json"))[:10], ids=lambda p: p.stem)
def test_corpus_sample(path):
    doc = json.loads(path.read_text())
    assert polyescape.decide(doc)["verdict"] == doc["expected"]
