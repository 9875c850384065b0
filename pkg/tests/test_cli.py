import json

import pytest

from k3quartic.cli import SUITES, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out), err


class TestAnalyze:
    def test_standard_member(self, capsys):
        code, rep, _ = run_json(capsys, "analyze", "81/49", "--mw-rank", "1")
        assert code == 0
        assert rep["command"] == "analyze"
        assert rep["inputs"] == {"alpha": "81/49", "mwRank": 1}
        res = rep["results"]
        assert res["stability"] == "Stable"
        types = sorted(fb["type"] for fb in res["fibers"] for _ in range(fb["degree"]))
        assert types == ["I0*", "I0*", "III", "III*"]
        assert res["eulerTotal"] == 24
        assert res["picardBound"] == 19
        assert res["picardBoundParityRefined"] == 20
        assert len(res["singularPoints"]) == 4
        assert all(e["pass"] for e in rep["verificationLedger"])

    def test_default_mw_rank_gives_18(self, capsys):
        code, rep, _ = run_json(capsys, "analyze", "81/49")
        assert code == 0
        assert rep["results"]["picardBound"] == 18
        assert rep["results"]["picardBoundParityRefined"] == 18

    def test_tacnode_member(self, capsys):
        code, rep, _ = run_json(capsys, "analyze", "1")
        assert code == 0
        assert rep["results"]["stability"] == "Unstable"
        assert "tacnode" in rep["results"]["reason"]

    def test_infinity(self, capsys):
        code, rep, _ = run_json(capsys, "analyze", "inf")
        assert code == 0
        assert rep["results"]["stability"] == "Unstable"

    def test_flag_form(self, capsys):
        code, rep, _ = run_json(capsys, "analyze", "--alpha", "5")
        assert code == 0
        assert rep["results"]["stability"] == "Stable"
        assert rep["results"]["eulerTotal"] == 24

    def test_text_output(self, capsys):
        code, out, _ = run(capsys, "analyze", "81/49")
        assert code == 0
        assert "Stable" in out
        assert "all 3 checks passed" in out

    def test_bad_alpha(self, capsys):
        code, _, err = run(capsys, "analyze", "not-a-number")
        assert code == 2
        assert "cannot parse" in err

    def test_alpha_given_twice(self, capsys):
        code, _, err = run(capsys, "analyze", "81/49", "--alpha", "1")
        assert code == 2
        assert "once" in err

    def test_alpha_missing(self, capsys):
        code, _, err = run(capsys, "analyze")
        assert code == 2


class TestFibers:
    def test_table(self, capsys):
        code, rep, _ = run_json(capsys, "fibers", "81/49")
        assert code == 0
        fibers = rep["results"]["fibers"]
        assert len(fibers) == 3
        by_type = {fb["type"]: fb for fb in fibers}
        assert by_type["I0*"]["degree"] == 2
        assert by_type["III"]["location"] == "infinity"
        assert rep["results"]["eulerTotal"] == 24


class TestLattice:
    def test_invariants_default(self, capsys):
        code, rep, _ = run_json(capsys, "lattice", "invariants")
        assert code == 0
        inv = rep["results"]["invariants"]
        assert inv["rank"] == 18
        assert inv["signature"] == [1, 17]
        assert inv["determinant"] == "-16"
        assert inv["ell"] == 4
        assert inv["twoElementary"] is True
        assert inv["delta"] == 1
        assert all(e["pass"] for e in rep["verificationLedger"])

    def test_invariants_custom_gram(self, capsys):
        code, rep, _ = run_json(capsys, "lattice", "invariants", "--gram", "T")
        assert code == 0
        inv = rep["results"]["invariants"]
        assert inv["signature"] == [2, 2]
        assert inv["determinant"] == "16"

    def test_invariants_bad_spec(self, capsys):
        code, _, err = run(capsys, "lattice", "invariants", "--gram", "E8")
        assert code == 2

    def test_tn_realized(self, capsys):
        code, rep, _ = run_json(capsys, "lattice", "tn", "--n", "7")
        assert code == 0
        res = rep["results"]
        assert res["verdict"] == "Realized"
        assert res["vector"] == [4, 0, 3, 0]
        assert res["minorGcd"] == 1
        assert res["pairGram"] == [[14, 0], [0, 14]]

    def test_tn_obstructed(self, capsys):
        code, rep, _ = run_json(capsys, "lattice", "tn", "--n", "2")
        assert code == 0
        res = rep["results"]
        assert res["verdict"] == "Obstructed"
        assert res["evidence"] == {"bound": 12, "candidates": 756,
                                   "primitive_found": 0}
        assert any("mod 4" in line for line in res["transcript"])

    def test_tn_requires_n(self, capsys):
        code, _, err = run(capsys, "lattice", "tn")
        assert code == 2

    def test_tn_rejects_nonpositive(self, capsys):
        code, _, err = run(capsys, "lattice", "tn", "--n", "0")
        assert code == 2


class TestSplit:
    def test_builtins(self, capsys):
        code, rep, _ = run_json(capsys, "split")
        assert code == 0
        tests = rep["results"]["tests"]
        assert len(tests) == 2
        assert all(t["verdict"] == "Splits" for t in tests)
        assert all(t["profile"] == [4, 4, 4] for t in tests)
        constants = {t["constant"] for t in tests}
        assert constants == {"-36006768", "-576108288"}

    def test_param_file(self, capsys, tmp_path):
        # the quartic-degree curve reparametrized by r -> 3r: same curve,
        # so the verdict must still be Splits with profile 4,4,4
        f = tmp_path / "curve.json"
        f.write_text(json.dumps({
            "x": [[0, "3969"], [1, "-2646"], [2, "441"]],
            "y": [[1, "15309"], [2, "-10206"], [3, "1701"]],
            "z": [[2, "59049"], [3, "22842"], [4, "6561"]],
        }))
        code, rep, _ = run_json(capsys, "split", "--param", str(f))
        assert code == 0
        t = rep["results"]["tests"][0]
        assert t["verdict"] == "Splits"
        assert t["profile"] == [4, 4, 4]

    def test_branch_component_fails_ledger(self, capsys, tmp_path):
        f = tmp_path / "conic.json"
        f.write_text(json.dumps({
            "x": [[0, "1"]], "y": [[1, "1"]], "z": [[2, "1"]],
        }))
        code, rep, _ = run_json(capsys, "split", "--param", str(f))
        assert code == 1
        assert rep["results"]["tests"][0]["verdict"] == "ContainedInBranch"
        assert not rep["verificationLedger"][0]["pass"]

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "split", "--param", "/nonexistent/f.json")
        assert code == 2

    def test_malformed_file(self, capsys, tmp_path):
        f = tmp_path / "bad.json"
        f.write_text("{not json")
        code, _, err = run(capsys, "split", "--param", str(f))
        assert code == 2

    def test_missing_coordinate(self, capsys, tmp_path):
        f = tmp_path / "partial.json"
        f.write_text(json.dumps({"x": [[0, "1"]], "y": [[0, "1"]]}))
        code, _, err = run(capsys, "split", "--param", str(f))
        assert code == 2
        assert "'z'" in err


class TestCm:
    def test_square_lattice_member(self, capsys):
        code, rep, _ = run_json(capsys, "cm", "--beta4", "7/9",
                                "--precision", "128")
        assert code == 0
        res = rep["results"]
        assert res["j"] == "1728"
        assert res["verdict"]["kind"] == "IsogenousToE"
        assert res["verdict"]["conductor"] == 1
        assert res["verdict"]["witness"] == [1, 0, 1]

    def test_degenerate_member(self, capsys):
        code, _, err = run(capsys, "cm", "--beta4", "1")
        assert code == 2
        assert "degenerate" in err

    def test_precision_floor(self, capsys):
        code, _, err = run(capsys, "cm", "--beta4", "7/9", "--precision", "16")
        assert code == 2


class TestModuli:
    def test_fricke(self, capsys):
        code, rep, _ = run_json(capsys, "moduli", "--check", "fricke")
        assert code == 0
        assert len(rep["verificationLedger"]) == 10
        assert all(rep["results"]["fricke"].values())

    def test_period(self, capsys):
        code, rep, _ = run_json(capsys, "moduli", "--check", "period")
        assert code == 0
        examples = rep["results"]["period"]["examples"]
        verdicts = [e["verdict"] for e in examples]
        assert verdicts == ["inside", "boundary", "inside"]
        assert rep["results"]["period"]["gramChecks"] == {
            "gram_matches_hermitian_form": True,
            "i_action_matches_j": True,
            "j_is_isometry": True,
        }

    def test_cayley(self, capsys):
        code, rep, _ = run_json(capsys, "moduli", "--check", "cayley")
        assert code == 0
        assert rep["results"]["cayley"]["roundTripExact"] is True


class TestVerify:
    def test_all(self, capsys):
        code, rep, _ = run_json(capsys, "verify", "all")
        assert code == 0
        ledger = rep["verificationLedger"]
        assert len(ledger) == len(SUITES["all"]) == 26
        assert all(e["pass"] for e in ledger)
        assert rep["results"]["checksPassed"] == 26

    def test_cover_subset(self, capsys):
        code, rep, _ = run_json(capsys, "verify", "cover")
        assert code == 0
        names = [e["checkName"] for e in rep["verificationLedger"]]
        assert names == ["cover_map_identity", "pencil_substitution"]

    def test_single_check(self, capsys):
        code, rep, _ = run_json(capsys, "verify", "generic_euler_number")
        assert code == 0
        assert len(rep["verificationLedger"]) == 1

    def test_unknown_suite(self, capsys):
        code, _, err = run(capsys, "verify", "nonsense")
        assert code == 2
        assert "unknown suite" in err

    def test_byte_stable(self, capsys):
        _, out1, _ = run(capsys, "verify", "fricke", "--json")
        _, out2, _ = run(capsys, "verify", "fricke", "--json")
        assert out1 == out2

    def test_report_file_matches_stdout(self, capsys, tmp_path):
        f = tmp_path / "report.json"
        code, out, _ = run(capsys, "verify", "pencil", "--json",
                           "--report", str(f))
        assert code == 0
        assert f.read_text() == out


class TestTopLevel:
    def test_no_args_is_usage_error(self, capsys):
        assert main([]) == 2

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        out = capsys.readouterr().out
        assert "analyze" in out and "verify" in out
