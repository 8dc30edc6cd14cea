import json
import subprocess
import sys

from morphdes.gateway import run_cli


def run(capsys, *argv):
    code = run_cli(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSpace:
    def test_prints_the_count(self, capsys, fixture_path):
        code, out, _ = run(capsys, "space", fixture_path)
        assert code == 0
        assert out == "1179648\n"

    def test_json(self, capsys, fixture_path):
        code, out, _ = run(capsys, "space", fixture_path, "--json")
        assert code == 0
        assert json.loads(out) == {"design_space_size": 1179648}


class TestSolve:
    def test_node_e_json_contains_e1(self, capsys, fixture_path):
        code, out, _ = run(capsys, "solve", fixture_path, "--node", "E", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["node"] == "E"
        assert doc["decisions"][0] == {
            "w": 3, "n": [1, 1, 1],
            "selection": {"J": "J2", "K": "K1", "L": "L1"}}

    def test_missing_file(self, capsys):
        code, out, err = run(capsys, "solve", "missing.morph")
        assert code == 1
        assert "missing.morph" in err

    def test_unknown_flag_is_usage_error(self, capsys, fixture_path):
        code, _, _ = run(capsys, "solve", fixture_path, "--bogus")
        assert code == 2

    def test_unknown_node(self, capsys, fixture_path):
        code, _, err = run(capsys, "solve", fixture_path, "--node", "ZZ")
        assert code == 1
        assert "ZZ" in err

    def test_infeasible_node_error_doc(self, capsys, tmp_path):
        text = """
        system x "x" {
          criteria { criterion C1 maximize scale 0..5; }
          part R weights [1] {
            leaf A { alt A1 est [1] priority 1; }
            leaf B { alt B1 est [1] priority 1; }
          }
          compat A * B { A1, B1 = 0; }
        }
        """
        path = tmp_path / "infeasible.morph"
        path.write_text(text)
        code, out, _ = run(capsys, "solve", str(path), "--json")
        assert code == 1
        assert json.loads(out) == {"error": "infeasible-node", "node": "R"}


class TestValidate:
    def test_ok(self, capsys, fixture_path):
        code, out, _ = run(capsys, "validate", fixture_path)
        assert code == 0
        assert out == "model OK\n"

    def test_parse_diagnostics(self, capsys, tmp_path):
        path = tmp_path / "bad.morph"
        path.write_text('system x "x" { criteria { } }')
        code, _, err = run(capsys, "validate", str(path))
        assert code == 1
        assert "criterion" in err

    def test_json_diagnostics(self, capsys, tmp_path):
        path = tmp_path / "bad.morph"
        path.write_text('system x "x" { criteria { } }')
        code, out, _ = run(capsys, "validate", str(path), "--json")
        assert code == 1
        doc = json.loads(out)
        assert doc["error"] == "parse-failed"
        assert doc["diagnostics"][0]["line"] >= 1


class TestRank:
    def test_recompute_report(self, capsys, fixture_path):
        code, out, _ = run(capsys, "rank", fixture_path, "--recompute", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["recompute"] is True
        assert doc["params"] == {"p": 0.65, "q": 0.35}
        assert 0.0 <= doc["overall_agreement"] <= 1.0
        leaves = {leaf["leaf"] for leaf in doc["leaves"]}
        assert len(leaves) == 16
        for leaf in doc["leaves"]:
            for row in leaf["items"]:
                assert row["priority"] == row["computed"]

    def test_given_priorities_win_without_recompute(self, capsys, fixture_path):
        code, out, _ = run(capsys, "rank", fixture_path, "--json")
        assert code == 0
        doc = json.loads(out)
        for leaf in doc["leaves"]:
            for row in leaf["items"]:
                assert row["priority"] == row["given"]

    def test_threshold_flags(self, capsys, fixture_path):
        code, out, _ = run(capsys, "rank", fixture_path, "--p", "0.8", "--q", "0.2",
                           "--json")
        assert code == 0
        assert json.loads(out)["params"] == {"p": 0.8, "q": 0.2}

    def test_bad_threshold(self, capsys, fixture_path):
        code, _, err = run(capsys, "rank", fixture_path, "--p", "0.4")
        assert code == 1
        assert "concordance_p" in err

    def test_human_output(self, capsys, fixture_path):
        code, out, _ = run(capsys, "rank", fixture_path, "--recompute")
        assert code == 0
        assert "agreement with given priorities" in out


class TestBottlenecksAndWhatif:
    def test_bottlenecks_json(self, capsys, fixture_path):
        code, out, _ = run(capsys, "bottlenecks", fixture_path,
                           "--node", "E", "--decision", "3", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["decision"]["selection"] == {"J": "J1", "K": "K2", "L": "L3"}
        assert doc["elements"] == [{"id": "J1", "priority": 2}]
        assert {tuple(sorted(row["pair"])) for row in doc["pairs"]} == {
            ("J1", "K2"), ("J1", "L3"), ("K2", "L3")}
        assert [a["spec"] for a in doc["actions"]] == [
            "alt:J1=1", "ic:J1,K2=3", "ic:J1,L3=3", "ic:K2,L3=3"]

    def test_whatif_json(self, capsys, fixture_path):
        code, out, _ = run(capsys, "whatif", fixture_path, "--node", "E",
                           "--decision", "3",
                           "--action", "ic:J1,L3=3",
                           "--action", "ic:J1,K2=3",
                           "--action", "ic:K2,L3=3",
                           "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["quality_before"] == {"w": 1, "n": [2, 1, 0]}
        assert doc["quality_after"] == {"w": 3, "n": [2, 1, 0]}
        assert doc["dominance_delta"] == "first-dominates"
        beaten = [d["selection"] for d in doc["now_dominates"]]
        assert {"J": "J2", "K": "K1", "L": "L1"} in beaten

    def test_decision_index_out_of_range(self, capsys, fixture_path):
        code, _, err = run(capsys, "bottlenecks", fixture_path,
                           "--node", "E", "--decision", "99")
        assert code == 1
        assert "99" in err

    def test_malformed_action(self, capsys, fixture_path):
        code, _, err = run(capsys, "whatif", fixture_path, "--node", "E",
                           "--decision", "3", "--action", "nonsense")
        assert code == 1
        assert "malformed action" in err


class TestSubprocessEntry:
    def test_module_invocation(self, fixture_path):
        proc = subprocess.run(
            [sys.executable, "-m", "morphdes", "space", fixture_path],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert proc.stdout == "1179648\n"

    def test_serve_port_env_default(self, fixture_path, monkeypatch):
        import morphdes.gateway as gw

        seen = {}

        def fake_serve(model, host, port, ui_dir=None, model_path=None):
            seen["port"] = port
            return 0

        monkeypatch.setenv("MORPHDES_PORT", "9321")
        monkeypatch.setattr("morphdes.service.serve", fake_serve)
        assert gw.run_cli(["serve", fixture_path]) == 0
        assert seen["port"] == 9321
