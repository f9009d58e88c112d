from __future__ import annotations

import csv
import io
import json
import re
from contextlib import redirect_stdout

import pytest

from backstrom.cli import main


def run_cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


def write_order(path, cycles, partition, field=None):
    doc = {
        "field": field or {"type": "Fp", "p": 5},
        "order": {"cycles": cycles, "partition": partition},
    }
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


def write_quiver(path, vertices, arrows, field=None):
    doc = {
        "field": field or {"type": "Q"},
        "quiver": {"vertices": vertices, "arrows": arrows},
    }
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


@pytest.fixture
def glued_pair_file(tmp_path):
    return write_order(tmp_path / "pair.json", [2], [[1, 2]])


def test_validate_ok(glued_pair_file):
    code, out = run_cli("validate", str(glued_pair_file))
    assert code == 0
    assert out.strip() == "ok"


def test_validate_overlapping_partition(tmp_path, capsys):
    path = write_order(tmp_path / "bad.json", [1, 1], [[1, 2], [2]])
    code, _ = run_cli("validate", str(path))
    assert code == 1


def test_validate_rejects_both_order_and_quiver(tmp_path):
    doc = {
        "field": {"type": "Q"},
        "order": {"cycles": [1], "partition": [[1]]},
        "quiver": {"vertices": [], "arrows": []},
    }
    path = tmp_path / "both.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, _ = run_cli("validate", str(path))
    assert code == 1


def test_classify_json_on_glued_pair(glued_pair_file):
    code, out = run_cli("classify", str(glued_pair_file))
    assert code == 0
    data = json.loads(out)
    assert data["gorenstein"] is True
    assert data["finite_gldim"] is False
    assert data["finite_cm_type"] is True
    assert data["indecomposable_cm_count"] == 3
    assert data["j_prime"] == [1, 2]


def test_classify_quiver_document(tmp_path):
    path = write_quiver(
        tmp_path / "loop.json",
        [{"id": 1, "weight": 3}],
        [{"src": 1, "dst": 1, "val": [2, 2]}],
    )
    code, out = run_cli("classify", str(path))
    assert code == 0
    data = json.loads(out)
    assert data["iwanaga_gorenstein"] is False
    assert data["sg_hom_finite"] is False
    assert data["hereditary"] is None


def test_h_quiver_dot(glued_pair_file):
    code, out = run_cli("h-quiver", str(glued_pair_file))
    assert code == 0
    assert out.startswith("digraph H {")
    assert out.rstrip().endswith("}")
    assert '"P1" -> "Q1";' in out and '"P1" -> "Q2";' in out


def test_a_quiver_dot_star_three(tmp_path):
    path = write_order(tmp_path / "star3.json", [1, 1, 1], [[1, 2, 3]])
    code, out = run_cli("a-quiver", str(path))
    assert code == 0
    edges = re.findall(r'"(\d+)" -> "(\d+)";', out)
    assert len(edges) == 6
    assert len(re.findall(r'"\d+" \[label=', out)) == 3


def test_a_quiver_dot_is_deterministic(glued_pair_file):
    _, first = run_cli("a-quiver", str(glued_pair_file))
    _, second = run_cli("a-quiver", "--dot", str(glued_pair_file))
    assert first == second


def test_a_quiver_renders_nontrivial_valuations(tmp_path):
    path = write_quiver(
        tmp_path / "val.json",
        [{"id": 1, "weight": 3}],
        [{"src": 1, "dst": 1, "val": [2, 2]}],
    )
    _, out = run_cli("a-quiver", str(path))
    assert '[label="(2,2)"]' in out
    assert '"1" [label="1 (3)"];' in out


def test_dot_output_quotes_and_braces(glued_pair_file):
    _, out = run_cli("a-quiver", str(glued_pair_file))
    body = out.splitlines()[1:-1]
    assert all(line.startswith("  ") and line.endswith(";") for line in body)
    assert out.count("{") == out.count("}") == 1


def test_cm_count_finite(glued_pair_file):
    code, out = run_cli("cm-count", str(glued_pair_file))
    assert code == 0 and json.loads(out) == {"finite": True, "count": 3}


def test_cm_count_infinite(tmp_path):
    path = write_order(tmp_path / "star4.json", [1] * 4, [[1, 2, 3, 4]])
    code, out = run_cli("cm-count", str(path))
    assert code == 0 and json.loads(out) == {"finite": False, "count": None}


def test_syzygy_iteration(glued_pair_file):
    code, out = run_cli("syzygy", str(glued_pair_file), "--node", "1", "--iterate", "3")
    assert code == 0
    data = json.loads(out)
    assert len(data["levels"]) == 4
    assert all(level["multiplicities"] == {"1": 1} for level in data["levels"])


def test_syzygy_rejects_projective_node(tmp_path):
    path = write_order(tmp_path / "fan.json", [3], [[1, 2], [3]])
    code, _ = run_cli("syzygy", str(path), "--node", "3")
    assert code == 1


def test_dsg_hom_table(glued_pair_file):
    code, out = run_cli("dsg-hom", "--all", str(glued_pair_file))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert {(r["a"], r["b"]): r["dim"] for r in rows} == {
        ("1", "1"): "1",
        ("1", "2"): "0",
        ("2", "1"): "0",
        ("2", "2"): "1",
    }


def test_dsg_hom_pair_and_inf(tmp_path):
    path = write_order(tmp_path / "star3.json", [1, 1, 1], [[1, 2, 3]])
    code, out = run_cli("dsg-hom", "--pair", "1", "1", str(path))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows == [{"a": "1", "b": "1", "dim": "inf", "level": ""}]


def test_v_structure_semisimple(glued_pair_file):
    code, out = run_cli("v-structure", str(glued_pair_file))
    assert code == 0
    data = json.loads(out)
    assert data["semisimple"] is True
    assert data["end_dim"] == 2
    assert data["blocks"] == [
        {"vertex": 1, "multiplicity": 1, "weight": 1},
        {"vertex": 2, "multiplicity": 1, "weight": 1},
    ]


def test_v_structure_not_semisimple(tmp_path):
    path = write_order(tmp_path / "star3.json", [1, 1, 1], [[1, 2, 3]])
    code, out = run_cli("v-structure", str(path))
    assert code == 0
    data = json.loads(out)
    assert data["semisimple"] is False and "witness" in data


def test_oracle_check_small(monkeypatch):
    monkeypatch.delenv("BACKSTROM_SEED", raising=False)
    code, out = run_cli("oracle-check", "--trials", "5", "--seed", "11")
    assert code == 0
    data = json.loads(out)
    assert data["ok"] is True and data["seed"] == 11 and data["trials"] == 5


def test_oracle_check_env_seed_override(monkeypatch):
    monkeypatch.setenv("BACKSTROM_SEED", "77")
    code, out = run_cli("oracle-check", "--trials", "2", "--seed", "5")
    assert code == 0
    assert json.loads(out)["seed"] == 77


def test_batch_mixed_directory(tmp_path):
    d = tmp_path / "inputs"
    d.mkdir()
    write_order(d / "a_pair.json", [2], [[1, 2]])
    write_quiver(d / "b_loop.json", [{"id": 1}], [{"src": 1, "dst": 1}])
    (d / "c_broken.json").write_text("{not json", encoding="utf-8")
    code, out = run_cli("batch", str(d))
    assert code == 1
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["name"] for r in rows] == ["a_pair.json", "b_loop.json", "c_broken.json"]
    assert rows[0]["gorenstein"] == "true" and rows[0]["cm_count"] == "3"
    assert rows[1]["kind"] == "quiver" and rows[1]["end_dim"] == "1"
    assert rows[2]["error"] != ""


def test_batch_empty_directory(tmp_path):
    d = tmp_path / "empty"
    d.mkdir()
    code, out = run_cli("batch", str(d))
    assert code == 0
    assert out.splitlines()[0].startswith("name,")
    assert len(out.splitlines()) == 1


def test_batch_deterministic_across_parallelism(tmp_path):
    d = tmp_path / "inputs"
    d.mkdir()
    for i, n in enumerate((2, 3, 4)):
        write_order(d / f"star{i}.json", [1] * n, [list(range(1, n + 1))])
    _, serial = run_cli("batch", str(d), "--jobs", "1")
    _, parallel = run_cli("batch", str(d), "--jobs", "8")
    assert serial == parallel
