import json
import subprocess
import sys

import pytest

import rccg.cli as cli
from rccg.commuting import commuting_graph
from rccg.errors import ConstructionFalsified, Mismatch
from rccg.graphs import parse_graph_json
from rccg.groups import make_dihedral, make_semidihedral, save_cayley
from rccg.rainbow import EdgeColoring, is_rainbow_connected


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_info_sd24(capsys):
    code, doc = run_json(capsys, "info", "semidihedral:3")
    assert code == 0
    assert doc["order"] == 24 and len(doc["center"]) == 4 and doc["mas_count"] == 4


def test_info_a4_text(capsys):
    code, out, _ = run(capsys, "info", "alternating:4")
    assert code == 0
    assert "5 subgroups" in out and "(12)(34)" in out


def test_info_cyclic(capsys):
    code, doc = run_json(capsys, "info", "cyclic:4")
    assert doc["abelian"] and doc["mas_count"] == 1


def test_info_cayley_file(capsys, tmp_path):
    path = tmp_path / "d10.json"
    save_cayley(make_dihedral(5), path)
    code, doc = run_json(capsys, "info", str(path))
    assert code == 0 and doc["order2_count"] == 5 and doc["group"] == "d10"


def test_mas_writes_catalog(capsys, tmp_path):
    out = tmp_path / "mas.json"
    code, _, _ = run(capsys, "mas", "dihedral:3", "-o", str(out))
    assert code == 0
    assert json.loads(out.read_text())["order2_count"] == 3


def test_rc_both_d6(capsys):
    code, out, _ = run(capsys, "rc", "dihedral:3", "--mode", "both")
    assert code == 0
    assert "classifier rc = 3" in out and "solver rc = 3" in out and "PASS" in out


def test_rc_classify(capsys):
    code, doc = run_json(capsys, "rc", "semidihedral:3", "--mode", "classify")
    assert doc["exact"] == 2 and "center-tuples" in doc["method"]
    code, doc = run_json(capsys, "classify", "quaternion:4")
    assert doc["exact"] == 3


def test_rc_exact_bounds_only(capsys):
    code, doc = run_json(capsys, "rc", "semidihedral:3", "--mode", "exact")
    assert code == 0 and doc["exact"] is None and doc["lower"] == 2


def test_rc_exact_with_flags(capsys):
    code, doc = run_json(capsys, "rc", "quaternion:2", "--mode", "exact", "--max-search-edges", "30", "--seed", "7")
    assert doc["exact"] == 2


def test_env_budget(capsys, monkeypatch):
    monkeypatch.setenv("RCCG_MAX_SEARCH_EDGES", "1")
    code, doc = run_json(capsys, "rc", "dihedral:3", "--mode", "exact")
    assert doc["exact"] is None


def test_construct(capsys, tmp_path):
    out = tmp_path / "c.json"
    code, _, _ = run(capsys, "construct", "dihedral:5", "--theorem", "7", "-o", str(out))
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["theorem"] == "pendant-colors" and "ordering_notes" in doc
    code, doc = run_json(capsys, "construct", "quaternion:4", "--theorem", "5")
    assert doc["theorem"] == "pstar"


def test_construct_precondition_is_usage_error(capsys):
    code, _, err = run(capsys, "construct", "dihedral:3", "--theorem", "4")
    assert code == 2 and "center" in err


def test_export_dot(capsys):
    code, out, _ = run(capsys, "export", "semidihedral:3", "--format", "dot")
    assert code == 0
    assert out.startswith('graph "SD_24"')
    assert out.count(" -- ") == commuting_graph(make_semidihedral(3)).edge_count


def test_export_json_round_trip(capsys, tmp_path):
    out = tmp_path / "g.json"
    code, _, _ = run(capsys, "export", "alternating:4", "--format", "json", "--coloring", "theorem:3b", "-o", str(out))
    assert code == 0
    graph, colors = parse_graph_json(out.read_text())
    assert graph.vertex_count == 12
    coloring = EdgeColoring(graph, colors)
    assert coloring.k == 3 and is_rainbow_connected(graph, coloring)


def test_export_classify_coloring(capsys):
    code, out, _ = run(capsys, "export", "dihedral:4", "--coloring", "classify")
    assert code == 0 and 'label="2"' in out


def test_export_pstar_needs_large_intersection(capsys):
    code, _, err = run(capsys, "export", "alternating:4", "--coloring", "theorem:5")
    assert code == 2 and "fewer than two" in err


def test_suite_rows(capsys):
    code, doc = run_json(capsys, "suite", "dihedral:5", "quaternion:2")
    assert code == 0 and doc["failures"] == 0
    rows = {(r["group"], r["check"]): r for r in doc["rows"]}
    assert rows["dihedral:5", "construct:pendant-colors"]["detail"] == "5 colors"
    assert "rc = 5" in rows["dihedral:5", "classify"]["detail"]
    assert rows["quaternion:2", "construct:center-tuples"]["status"] == "PASS"


def test_default_suite_passes(capsys):
    code, out, _ = run(capsys, "suite")
    assert code == 0
    assert "0 failures" in out


def test_suite_reports_falsification(capsys, monkeypatch):
    def broken(g, cat=None):
        raise ConstructionFalsified("forced")

    monkeypatch.setattr(cli, "CONSTRUCTIONS", (broken,))
    code, doc = run_json(capsys, "suite", "dihedral:4")
    assert code == 1 and doc["failures"] == 1


def test_mismatch_exit_code(capsys, monkeypatch):
    def fake(g, cfg):
        raise Mismatch("forced")

    monkeypatch.setattr(cli, "cross_check", fake)
    code, out, _ = run(capsys, "rc", "dihedral:3", "--mode", "both")
    assert code == 1 and "MISMATCH" in out


@pytest.mark.parametrize(
    "argv",
    [["info", "bogus:3"], ["info", "nowhere.json"], ["rc", "dihedral:x"], ["suite", "dihedral:a-b"]],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_argparse_errors(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["rc", "dihedral:3", "--seed", "-1"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        cli.main(["construct", "dihedral:3", "--theorem", "9"])
    assert info.value.code == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "rccg", "classify", "dihedral:5"], capture_output=True, text=True)
    assert res.returncode == 0 and "rc = 5" in res.stdout
