import json
import math
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bochner_bounds.bounds import certify
from bochner_bounds.cli import main, render_table
from bochner_bounds.gridfn import Interval, sample
from bochner_bounds.hypotheses import Cone, Karamata
from bochner_bounds.jsonio import dumps

INPUTS = Path(__file__).resolve().parents[1] / "inputs"

SCHEMA = "bochner-bounds/1"


def write_doc(tmp_path, name, doc) -> str:
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


def constant_doc(value, hypothesis, n=5):
    nodes = [k / (n - 1) for k in range(n)]
    return {
        "schema": SCHEMA,
        "function": {
            "a": 0.0,
            "b": 1.0,
            "nodes": nodes,
            "values": [[[value.real, value.imag]] for _ in nodes],
            "interp": "linear",
        },
        "hypothesis": hypothesis,
    }


def test_certify_bundled_cone_arc(capsys):
    status = main(["certify", "--input", str(INPUTS / "cone_pi6_pi3.json")])
    doc = json.loads(capsys.readouterr().out)
    assert status == 0
    assert doc["hypothesis_verified"] is True
    assert doc["true_norm"] == pytest.approx(2 * math.sin(math.pi / 12), abs=1e-5)
    assert doc["lower_bound"] == pytest.approx(math.sqrt(0.5) * math.pi / 6, abs=1e-5)


def test_exit_codes_cover_exactly_the_contract(tmp_path, capsys):
    # passing input -> 0
    ok = constant_doc(1.0 + 0j, {"type": "unit_vector", "e": [[1, 0]], "k1": 0.5, "k2": 0.0})
    assert main(["check", "--input", write_doc(tmp_path, "ok.json", ok)]) == 0
    # falsified input -> 2
    bad = constant_doc(-1.0 + 0j, {"type": "unit_vector", "e": [[1, 0]], "k1": 0.5, "k2": 0.0})
    assert main(["check", "--input", write_doc(tmp_path, "bad.json", bad)]) == 2
    # malformed inputs -> 1
    p = tmp_path / "garbage.json"
    p.write_text("{oops", encoding="utf-8")
    assert main(["check", "--input", str(p)]) == 1
    assert main(["check", "--input", str(tmp_path / "missing.json")]) == 1
    wrong_schema = dict(ok, schema="wrong/0")
    assert main(["check", "--input", write_doc(tmp_path, "ws.json", wrong_schema)]) == 1
    unknown = dict(ok, hypothesis={"type": "nope"})
    assert main(["check", "--input", write_doc(tmp_path, "unk.json", unknown)]) == 1
    missing_field = dict(ok, hypothesis={"type": "unit_vector", "e": [[1, 0]], "k1": 0.5})
    assert main(["check", "--input", write_doc(tmp_path, "mf.json", missing_field)]) == 1
    mismatch = dict(ok, hypothesis={"type": "unit_vector", "e": [[1, 0], [0, 0]], "k1": 0.5, "k2": 0.0})
    assert main(["check", "--input", write_doc(tmp_path, "dim.json", mismatch)]) == 1
    infeasible = dict(ok, hypothesis={"type": "disk", "e": [[1, 0]], "eta1": 1.4, "eta2": 0.5})
    assert main(["check", "--input", write_doc(tmp_path, "inf.json", infeasible)]) == 1
    capsys.readouterr()


def test_error_messages_name_the_offending_field(tmp_path, capsys):
    ok = constant_doc(1.0 + 0j, {"type": "unit_vector", "e": [[1, 0]], "k1": 0.5, "k2": 0.0})
    main(["check", "--input", write_doc(tmp_path, "unk.json", dict(ok, hypothesis={"type": "zebra"}))])
    assert "zebra" in capsys.readouterr().err
    main(["check", "--input", write_doc(tmp_path, "mf.json",
                                        dict(ok, hypothesis={"type": "cone", "phi1": 0.1}))])
    assert "phi2" in capsys.readouterr().err
    mismatch = dict(ok, hypothesis={"type": "unit_vector", "e": [[1, 0], [0, 0]],
                                    "k1": 0.5, "k2": 0.0})
    main(["check", "--input", write_doc(tmp_path, "dim.json", mismatch)])
    assert "dimension mismatch" in capsys.readouterr().err


def test_witness_round_trip_through_files(tmp_path, capsys):
    out = tmp_path / "witness.json"
    status = main(["witness", "--input", str(INPUTS / "witness_unit_vector.json"),
                   "--output", str(out)])
    assert status == 0
    status = main(["certify", "--input", str(out)])
    doc = json.loads(capsys.readouterr().out)
    assert status == 0
    assert abs(doc["gap"]) <= 1e-12
    assert abs(doc["equality_residual"]) <= 1e-12


def test_witness_rejects_off_surface_hypothesis(tmp_path, capsys):
    doc = {
        "schema": SCHEMA,
        "hypothesis": {"type": "unit_vector", "e": [[1, 0]], "k1": 0.5, "k2": 0.5},
    }
    assert main(["witness", "--input", write_doc(tmp_path, "w.json", doc)]) == 1
    assert "coefficient" in capsys.readouterr().err


def test_bench_zero_violations_and_csv(tmp_path, capsys):
    out = tmp_path / "stats.csv"
    status = main(["bench", "--input", str(INPUTS / "bench_cone.json"),
                   "--trials", "25", "--seed", "1", "--output", str(out)])
    assert status == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0].split(",")[:2] == ["schema", "kind"]
    assert ",25," in "," + lines[1] + ","
    capsys.readouterr()


def test_bench_is_seed_deterministic(tmp_path, capsys):
    argv = ["bench", "--input", str(INPUTS / "bench_cone.json"), "--trials", "10", "--seed", "7"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first


def test_output_uses_17_significant_digits(capsys):
    main(["certify", "--input", str(INPUTS / "disk_lens.json")])
    out = capsys.readouterr().out
    assert "0.70710678118654757" in out  # sqrt(2)/2 at 17 significant digits


def test_integrate_document(capsys):
    status = main(["integrate", "--input", str(INPUTS / "disk_lens.json")])
    doc = json.loads(capsys.readouterr().out)
    assert status == 0
    assert doc["kind"] == "integral_report"
    assert doc["vector"][0] == pytest.approx([0.5, 0.5])
    assert doc["triangle_slack"] >= -1e-12


def test_quad_flags_are_honored(capsys):
    main(["certify", "--input", str(INPUTS / "cone_pi6_pi3.json"), "--quad-refine", "1"])
    doc = json.loads(capsys.readouterr().out)
    assert doc["true_norm"] == pytest.approx(2 * math.sin(math.pi / 12), rel=1e-9)
    assert doc["lower_bound"] == pytest.approx(math.sqrt(0.5) * math.pi / 6, rel=1e-9)


def test_render_table_orders_and_labels():
    import cmath

    f = sample(lambda t: cmath.exp(1j * t), Interval(math.pi / 6, math.pi / 3), 65)
    cone = certify(f, Cone(math.pi / 6, math.pi / 3))
    karamata = certify(f, Karamata(math.pi / 3))
    text = render_table([karamata, cone])
    lines = text.strip().split("\n")
    assert lines[0].split()[0] == "hypothesis"
    assert lines[1].startswith("cone")  # sorted by tag
    assert lines[2].startswith("karamata")
    assert lines[2].rstrip().endswith("n/a")
    # the cone coefficient beats the symmetric-window baseline on the same data
    assert float(lines[1].split()[1]) > float(lines[2].split()[1])


def test_render_table_single_row_and_empty():
    f = sample(lambda t: 1.0 + 0.2j * (t - 0.5), Interval(0, 1), 9)
    rep = certify(f, Karamata(0.5))
    text = render_table([rep])
    assert len(text.strip().split("\n")) == 2
    with pytest.raises(ValueError):
        render_table([])


json_scalars = st.one_of(
    st.none(), st.booleans(), st.integers(-10, 10), st.floats(-2, 2, allow_nan=False), st.text(max_size=8)
)
json_docs = st.recursive(
    json_scalars,
    lambda children: st.one_of(
        st.lists(children, max_size=4), st.dictionaries(st.text(max_size=8), children, max_size=4)
    ),
    max_leaves=12,
)


@settings(max_examples=30, deadline=None)
@given(json_docs)
def test_exit_codes_stay_in_contract_for_arbitrary_documents(tmp_path_factory, doc):
    path = tmp_path_factory.mktemp("fuzz") / "doc.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    for command in ("check", "certify", "witness", "bench", "integrate"):
        status = main([command, "--input", str(path)])
        assert status in (0, 1, 2)


def test_console_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "bochner_bounds.cli", "integrate",
         "--input", str(INPUTS / "disk_lens.json")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["kind"] == "integral_report"
