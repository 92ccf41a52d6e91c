from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest

from corpus import EDGE_LISTS

from medianforge.cli import main


@pytest.fixture()
def p3_file(tmp_path):
    f = tmp_path / "p3.edges"
    f.write_text(EDGE_LISTS["p3"])
    return str(f)


@pytest.fixture()
def c4_file(tmp_path):
    f = tmp_path / "c4.edges"
    f.write_text(EDGE_LISTS["c4"])
    return str(f)


def run_json(args, tmp_path, name="out.json"):
    out = tmp_path / name
    rc = main(args + ["--json", str(out)])
    return rc, json.loads(out.read_text()) if out.exists() else None


# -- cuts ------------------------------------------------------------------------


def test_cuts_p3(p3_file, tmp_path):
    rc, doc = run_json(["cuts", p3_file, "--radius", "1"], tmp_path)
    assert rc == 0
    assert doc["schema"] == "medianforge/1"
    assert doc["stats"]["nontrivial_members"] == 4


def test_cuts_radius_zero(p3_file, tmp_path):
    rc, doc = run_json(["cuts", p3_file, "--radius", "0"], tmp_path)
    assert rc == 0
    assert doc["stats"]["nontrivial_members"] == 0


def test_cuts_missing_file(tmp_path):
    rc = main(["cuts", str(tmp_path / "nope.edges"), "--radius", "1"])
    assert rc == 2


def test_cuts_missing_radius(p3_file):
    assert main(["cuts", p3_file]) == 2


def test_cuts_budget(c4_file):
    assert main(["cuts", c4_file, "--radius", "2", "--budget-subsets", "3"]) == 3


def test_rejects_two_inputs(p3_file):
    assert main(["cuts", p3_file, "--gen", "line", "--truncate", "3", "--radius", "1"]) == 2


def test_rejects_invalid_input(tmp_path):
    bad = tmp_path / "bad.edges"
    bad.write_text("a a\n")
    assert main(["cuts", str(bad), "--radius", "1"]) == 2


# -- pipeline -----------------------------------------------------------------------


def test_pipeline_p3(p3_file, tmp_path):
    rc, doc = run_json(["pipeline", p3_file, "--radius", "1"], tmp_path)
    assert rc == 0
    assert doc["stats"]["dual_vertices"] == 3
    assert doc["stats"]["tree_edges"] == 2
    assert len(doc["spanning_tree"]) == 2


def test_pipeline_c4(c4_file, tmp_path):
    rc, doc = run_json(["pipeline", c4_file, "--radius", "2"], tmp_path)
    assert rc == 0
    assert doc["stats"]["dual_vertices"] >= 4
    assert doc["stats"]["tree_edges"] == doc["stats"]["dual_vertices"] - 1


def test_pipeline_generator(tmp_path):
    rc, doc = run_json(
        ["pipeline", "--gen", "ladder", "--truncate", "8", "--radius", "2"], tmp_path
    )
    assert rc == 0
    assert doc["input"] == {"kind": "generator", "order": "input", "spec": "ladder", "truncate": 8}
    assert doc["stats"]["tree_edges"] == doc["stats"]["dual_vertices"] - 1


def test_pipeline_dot_output(c4_file, tmp_path):
    dot = tmp_path / "dual.dot"
    rc = main(
        ["pipeline", c4_file, "--radius", "2", "--json", str(tmp_path / "o.json"), "--dot", str(dot)]
    )
    assert rc == 0
    text = dot.read_text()
    assert text.startswith("graph")
    assert "penwidth" in text  # tree overlay present


# -- other commands --------------------------------------------------------------------


def test_check_median_cli(tmp_path):
    c6 = tmp_path / "c6.edges"
    c6.write_text(EDGE_LISTS["c6"])
    rc, doc = run_json(["check-median", str(c6)], tmp_path)
    assert rc == 0
    assert doc["median"] is False
    assert doc["counterexample"] == ["v0", "v2", "v4"]


def test_hyperplanes_cli(c4_file, tmp_path):
    rc, doc = run_json(["hyperplanes", c4_file], tmp_path)
    assert rc == 0
    assert len(doc["hyperplanes"]) == 2


def test_hyperplanes_cli_rejects_nonmedian(tmp_path):
    c6 = tmp_path / "c6.edges"
    c6.write_text(EDGE_LISTS["c6"])
    assert main(["hyperplanes", str(c6)]) == 2


def test_tree_cli(c4_file, tmp_path):
    rc, doc = run_json(["tree", c4_file], tmp_path)
    assert rc == 0
    assert sorted(e["edge"] for e in doc["spanning_tree"]) == [
        ["br", "bl"],
        ["tl", "tr"],
        ["tr", "br"],
    ]


def test_roundtrip_cli(tmp_path):
    q3 = tmp_path / "q3.edges"
    q3.write_text(EDGE_LISTS["q3"])
    rc, doc = run_json(["roundtrip", str(q3)], tmp_path)
    assert rc == 0
    assert len(doc["pairing"]) == 8


def test_density_cli(p3_file, tmp_path):
    rc, doc = run_json(["density", p3_file, "--radius", "1"], tmp_path)
    assert rc == 0
    assert doc["density"]["max_block_size"] == 1
    assert doc["density"]["max_successor_count"] == 1


def test_ends_cli(tmp_path):
    rc, doc = run_json(
        ["ends", "--gen", "regular_tree:3", "--truncate", "6", "--radius", "1"], tmp_path
    )
    assert rc == 0
    assert doc["end_estimate"] == 3


def test_dot_cli(p3_file, tmp_path):
    dot = tmp_path / "g.dot"
    rc = main(["dot", p3_file, "--dot", str(dot), "--json", str(tmp_path / "j.json")])
    assert rc == 0
    assert '"a" -- "b"' in dot.read_text()


def test_lex_order(tmp_path):
    f = tmp_path / "g.edges"
    f.write_text("b c\na b\n")
    rc, doc = run_json(["cuts", str(f), "--radius", "1", "--order", "lex"], tmp_path)
    assert rc == 0
    assert doc["graph"]["vertices"] == ["a", "b", "c"]


# -- determinism across processes ------------------------------------------------------------


def test_pipeline_byte_identical_across_runs(tmp_path):
    c4 = tmp_path / "c4.edges"
    c4.write_text(EDGE_LISTS["c4"])
    outputs = []
    for seed in ("0", "424242"):
        out = tmp_path / f"run{seed}.json"
        env = dict(os.environ, PYTHONHASHSEED=seed)
        proc = subprocess.run(
            [
                sys.executable,
                "-m",
                "medianforge.cli",
                "pipeline",
                str(c4),
                "--radius",
                "2",
                "--json",
                str(out),
            ],
            env=env,
            capture_output=True,
        )
        assert proc.returncode == 0, proc.stderr
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]
