"""CLI subcommands, report formats, and exit codes."""

from __future__ import annotations

import json

from skewpoisson.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


class TestGroupCommand:
    def test_bundled_group_table(self, capsys):
        code, out = run(capsys, "group")
        assert code == 0
        assert "order 8; 5 conjugacy classes; all elements symplectic" in out

    def test_machine_format(self, capsys):
        code, out = run(capsys, "group", "--format", "machine")
        assert code == 0
        doc = json.loads(out)
        group_stage = next(s for s in doc["stages"] if s["name"] == "group")
        assert group_stage["payload"]["order"] == 8
        classes = next(s for s in doc["stages"] if s["name"] == "classes")
        assert classes["payload"]["count"] == 5

    def test_non_symplectic_generator_flagged(self, capsys, tmp_path):
        config = {
            "nvars": 2,
            "symplectic_form": [["0", "1"], ["-1", "0"]],
            "group_generators": [
                {"name": "s", "matrix": [["0", "1"], ["1", "0"]]}
            ],
            "named_polynomials": {},
        }
        path = tmp_path / "swap2.json"
        path.write_text(json.dumps(config), encoding="utf-8")
        code, out = run(capsys, "group", "--config", str(path))
        assert code == 0
        assert "NON-SYMPLECTIC" in out

    def test_missing_config_is_a_config_error(self, capsys):
        code, out = run(capsys, "group", "--config", "/no/such/file.json")
        assert code == 2
        assert "error" in out

    def test_trivial_group(self, capsys, tmp_path):
        config = {
            "nvars": 2,
            "symplectic_form": [["0", "1"], ["-1", "0"]],
            "group_generators": [],
            "named_polynomials": {},
        }
        path = tmp_path / "trivial.json"
        path.write_text(json.dumps(config), encoding="utf-8")
        code, out = run(capsys, "group", "--config", str(path),
                        "--format", "machine")
        assert code == 0
        doc = json.loads(out)
        assert doc["stages"][0]["payload"]["order"] == 1
        assert doc["stages"][1]["payload"]["count"] == 1


class TestInvariantsCommand:
    def test_bundled_invariants(self, capsys):
        code, out = run(capsys, "invariants", "--format", "machine")
        assert code == 0
        doc = json.loads(out)
        inv = next(s for s in doc["stages"] if s["name"] == "invariance")
        assert inv["payload"]["all_invariant"] is True
        assert len(inv["payload"]["generators"]) == 8
        rel = next(s for s in doc["stages"] if s["name"] == "relations")
        assert rel["payload"]["nonzero_residuals"] == 0
        assert len(rel["payload"]["relations"]) == 9
        molien = next(s for s in doc["stages"] if s["name"] == "molien")
        assert molien["payload"]["deficient_degrees"] == []

    def test_corrupted_generator_named(self, capsys, tmp_path):
        data = json.loads(
            __import__("importlib.resources", fromlist=["files"])
            .files("skewpoisson").joinpath("data/counterexample.json")
            .read_text(encoding="utf-8")
        )
        data["named_polynomials"]["f1"] = "x1^2 + x3^2 + x1"  # no longer invariant
        path = tmp_path / "broken.json"
        path.write_text(json.dumps(data), encoding="utf-8")
        code, out = run(capsys, "invariants", "--config", str(path),
                        "--format", "machine")
        assert code == 0
        doc = json.loads(out)
        inv = next(s for s in doc["stages"] if s["name"] == "invariance")
        rows = {r["name"]: r["invariant"] for r in inv["payload"]["generators"]}
        assert rows["f1"] is False
        assert inv["status"] == "finding"

    def test_degree_flag_controls_the_table(self, capsys):
        code, out = run(capsys, "invariants", "--degree", "4",
                        "--format", "machine")
        assert code == 0
        doc = json.loads(out)
        molien = next(s for s in doc["stages"] if s["name"] == "molien")
        assert [row["degree"] for row in molien["payload"]["degrees"]] == [0, 1, 2, 3, 4]

    def test_empty_relation_set_gives_empty_section(self, capsys, tmp_path):
        config = {
            "nvars": 4,
            "symplectic_form": [
                ["0", "1", "0", "0"], ["-1", "0", "0", "0"],
                ["0", "0", "0", "1"], ["0", "0", "-1", "0"],
            ],
            "group_generators": [
                {"name": "b", "matrix": [
                    ["-1", "0", "0", "0"], ["0", "-1", "0", "0"],
                    ["0", "0", "1", "0"], ["0", "0", "0", "1"]]}
            ],
            "named_polynomials": {"q": "x3^2"},
            "generator_set": ["q"],
        }
        path = tmp_path / "norel.json"
        path.write_text(json.dumps(config), encoding="utf-8")
        code, out = run(capsys, "invariants", "--config", str(path),
                        "--degree", "2", "--format", "machine")
        assert code == 0
        doc = json.loads(out)
        rel = next(s for s in doc["stages"] if s["name"] == "relations")
        assert rel["payload"]["relations"] == []
        assert rel["payload"]["nonzero_residuals"] == 0


class TestBracketCommand:
    def test_named_polynomials(self, capsys):
        code, out = run(capsys, "bracket", "f1", "h1")
        assert code == 0
        assert "2*x1^2 + 2*x3^2" in out

    def test_inline_expressions(self, capsys):
        code, out = run(capsys, "bracket", "x1", "x2")
        assert code == 0
        assert "verdict: 1" in out

    def test_parse_error_exit_code(self, capsys):
        code, out = run(capsys, "bracket", "x1 +", "x2")
        assert code == 2


class TestProjectCommand:
    def test_bundled_projection(self, capsys):
        code, out = run(capsys, "project", "--part", "b:2*x1^2 + 2*x3^2",
                        "--format", "machine")
        assert code == 0
        doc = json.loads(out)
        stage = doc["stages"][0]
        components = {row["class"]: row["projection"]
                      for row in stage["payload"]["components"]}
        assert components[1] == "2*x3^2"
        assert stage["payload"]["trace_vector_valid"] is True

    def test_single_class_selection(self, capsys):
        code, out = run(capsys, "project", "--part", "b:x3*x4",
                        "--class-index", "1", "--format", "machine")
        assert code == 0
        doc = json.loads(out)
        rows = doc["stages"][0]["payload"]["components"]
        assert rows == [{"class": 1, "representative": "b",
                         "projection": "x3*x4"}]

    def test_bad_part_syntax(self, capsys):
        code, out = run(capsys, "project", "--part", "b=x1")
        assert code == 2

    def test_bad_class_index(self, capsys):
        code, out = run(capsys, "project", "--part", "b:x1",
                        "--class-index", "9")
        assert code == 2


class TestObstructionCommand:
    def test_bundled_run_decides(self, capsys):
        code, out = run(capsys, "obstruction")
        assert code == 0
        assert "INFEASIBLE_ALL_DEGREES" in out
        assert "witness x4" in out

    def test_degree_flag_rebuilds_ladder(self, capsys):
        code, out = run(capsys, "obstruction", "--degree", "2",
                        "--format", "machine")
        assert code == 0
        doc = json.loads(out)
        ladder = next(s for s in doc["stages"] if s["name"] == "psi=h1:ladder")
        assert [s["degree"] for s in ladder["payload"]["steps"]] == [0, 1, 2]

    def test_psi_sweep(self, capsys):
        code, out = run(capsys, "obstruction", "--psi", "f1", "--degree", "0")
        assert code == 0
        assert "f1: FEASIBLE" in out

    def test_inconclusive_class_exits_one(self, capsys, tmp_path):
        data = json.loads(
            __import__("importlib.resources", fromlist=["files"])
            .files("skewpoisson").joinpath("data/counterexample.json")
            .read_text(encoding="utf-8")
        )
        data["obstruction"]["class_rep"] = "e"
        path = tmp_path / "swapclass.json"
        path.write_text(json.dumps(data), encoding="utf-8")
        code, out = run(capsys, "obstruction", "--config", str(path),
                        "--degree", "3")
        assert code == 1
        assert "INFEASIBLE_AT_DEGREE" in out

    def test_trivial_group_is_config_error(self, capsys, tmp_path):
        config = {
            "nvars": 4,
            "symplectic_form": [
                ["0", "1", "0", "0"], ["-1", "0", "0", "0"],
                ["0", "0", "0", "1"], ["0", "0", "-1", "0"],
            ],
            "group_generators": [],
            "named_polynomials": {"f1": "x1^2 + x3^2", "h1": "x1*x2 + x3*x4"},
            "obstruction": {"phi": "f1", "psi": "h1", "class_rep": "1",
                            "degree_ladder": [0]},
        }
        path = tmp_path / "trivial.json"
        path.write_text(json.dumps(config), encoding="utf-8")
        code, out = run(capsys, "obstruction", "--config", str(path))
        assert code == 2
        assert "non-identity" in out


class TestSelftestCommand:
    def test_single_suite_passes(self, capsys):
        code, out = run(capsys, "selftest", "--suite", "group-structure")
        assert code == 0
        assert "0 failures" in out

    def test_corrupted_table_yields_named_failure(self, capsys):
        code, out = run(capsys, "selftest", "--suite", "group-structure",
                        "--corrupt", "mul-table")
        assert code == 3
        assert "associativity broke" in out

    def test_unknown_suite_rejected(self, capsys):
        code, out = run(capsys, "selftest", "--suite", "no-such-suite")
        assert code == 2

    def test_seed_override_passes(self, capsys):
        code, out = run(capsys, "selftest", "--suite", "parser-roundtrip",
                        "--seed", "12345")
        assert code == 0
        assert "seed 12345" in out
