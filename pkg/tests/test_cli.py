import json
import math

import pytest

from gameprice.cli import main

INTRO = {
    "probabilities": [0.5, 0.5],
    "games": {"A": [19, 1], "B": [10, 10], "C": [1, 19]},
    "rate": {"value": 0.05, "convention": "continuous"},
}

REMARK35 = {
    "probabilities": [0.5, 0.5],
    "games": {"X": [50, 1], "Y": [30.6191, 14], "S": [12, 8]},
    "rate": {"value": 0.02, "convention": "simple"},
}


@pytest.fixture
def intro(tmp_path):
    path = tmp_path / "intro.json"
    path.write_text(json.dumps(INTRO))
    return str(path)


@pytest.fixture
def remark35(tmp_path):
    path = tmp_path / "remark35.json"
    path.write_text(json.dumps(REMARK35))
    return str(path)


def run(capsys, argv):
    rc = main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


class TestPriceCommand:
    def test_game_a_table(self, capsys, intro):
        rc, out, _ = run(capsys, ["price", "--game", "A", intro])
        assert rc == 0
        assert out.strip() == "u=7.224 t=0.274 regime=interior"

    def test_game_b_table(self, capsys, intro):
        rc, out, _ = run(capsys, ["price", "--game", "B", intro])
        assert rc == 0
        assert out.strip() == "u=9.512 t=1.000 regime=full"

    def test_rate_override_simple(self, capsys, remark35):
        rc, out, _ = run(
            capsys,
            ["price", "--rate", "0.02", "--convention", "simple", "--game", "X",
             remark35],
        )
        assert rc == 0
        assert out.startswith("u=20.67 ")

    def test_json_round_trip(self, capsys, intro):
        rc, out, _ = run(capsys, ["price", "--game", "A", "--format", "json", intro])
        assert rc == 0
        doc = json.loads(out)
        assert doc["regime"] == "interior"
        assert doc["price"] == pytest.approx(7.223641028417384, rel=1e-12)

    def test_full_precision(self, capsys, intro):
        rc, out, _ = run(capsys, ["price", "--game", "A", "--full-precision", intro])
        assert rc == 0
        u = float(out.split()[0].split("=")[1])
        assert u == pytest.approx(7.223641028417384, rel=1e-15)


class TestExitCodes:
    def test_missing_file_is_parse_error(self, capsys, tmp_path):
        rc, _, err = run(capsys, ["price", "--game", "A", str(tmp_path / "nope.json")])
        assert rc == 2
        assert "error" in err

    def test_bad_json_reports_line_and_column(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"probabilities": [0.5, 0.5],\n "games": {"A": [1,}')
        rc, _, err = run(capsys, ["price", "--game", "A", str(path)])
        assert rc == 2
        assert "line 2" in err

    def test_unknown_game_is_parse_error(self, capsys, intro):
        rc, _, err = run(capsys, ["price", "--game", "Z", intro])
        assert rc == 2
        assert '"Z"' in err

    def test_invariant_violation_named(self, capsys, tmp_path):
        path = tmp_path / "neg.json"
        path.write_text(json.dumps({
            "probabilities": [0.5, 0.5],
            "games": {"A": [-1, 2]},
            "rate": {"value": 0.05},
        }))
        rc, _, err = run(capsys, ["price", "--game", "A", str(path)])
        assert rc == 3
        assert "nonnegative" in err

    def test_degenerate_basis_exit_code(self, capsys, tmp_path):
        path = tmp_path / "prop.json"
        path.write_text(json.dumps({
            "probabilities": [0.5, 0.5],
            "games": {"A": [2, 2], "B": [10, 10]},
            "rate": {"value": 0.05},
        }))
        # equal payoff ratios reduce to one game: fine; proportional pair as a
        # declared 3-outcome basis is the failure case
        path2 = tmp_path / "prop3.json"
        path2.write_text(json.dumps({
            "probabilities": [0.4, 0.3, 0.3],
            "games": {"A": [2, 2, 2], "B": [10, 10, 10]},
            "rate": {"value": 0.05},
        }))
        rc, _, err = run(capsys, ["ls-price", str(path2)])
        assert rc == 4
        assert "basis" in err.lower()

    def test_missing_rate_everywhere(self, capsys, tmp_path):
        path = tmp_path / "norate.json"
        path.write_text(json.dumps({
            "probabilities": [0.5, 0.5], "games": {"A": [19, 1]},
        }))
        rc, _, err = run(capsys, ["price", "--game", "A", str(path)])
        assert rc == 2
        assert "--rate" in err


class TestLsPriceCommand:
    def test_documented_json_schema(self, capsys, tmp_path):
        path = tmp_path / "ex13.json"
        path.write_text(json.dumps({
            "probabilities": [0.5, 0.5],
            "games": {"A": [12, 8], "B": [11, 9]},
            "rate": {"value": 0.05},
        }))
        rc, out, _ = run(capsys, ["ls-price", "--format", "json", str(path)])
        assert rc == 0
        doc = json.loads(out)
        assert set(doc) == {"x", "prices", "certificate", "iterations", "max_violation"}
        assert sorted(doc["prices"]) == pytest.approx([9.345373, 9.468533], abs=1e-5)

    def test_reduction_prints_linear_members(self, capsys, tmp_path):
        path = tmp_path / "three.json"
        path.write_text(json.dumps({
            "probabilities": [0.5, 0.5],
            "games": {"A": [19, 1], "B": [16, 4], "C": [13, 7]},
            "rate": {"value": 0.05},
        }))
        rc, out, _ = run(capsys, ["ls-price", str(path)])
        assert rc == 0
        assert "priced by linearity" in out
        assert "certificate mix" in out

    def test_singleton(self, capsys, tmp_path):
        path = tmp_path / "one.json"
        path.write_text(json.dumps({
            "probabilities": [0.5, 0.5],
            "games": {"A": [19, 1]},
            "rate": {"value": 0.05},
        }))
        rc, out, _ = run(capsys, ["ls-price", str(path)])
        assert rc == 0
        assert "standalone=7.224 ls=7.224" in out

    def test_constant_mix_pins_both_prices(self, capsys, tmp_path):
        path = tmp_path / "ex11.json"
        path.write_text(json.dumps({
            "probabilities": [0.5, 0.5],
            "games": {"A": [19, 1], "B": [4, 16]},
            "rate": {"value": 0.05},
        }))
        rc, out, _ = run(capsys, ["ls-price", str(path)])
        assert rc == 0
        assert out.count("ls=9.512") == 2


class TestSimulateAndSweep:
    def test_simulate_defaults_to_solved_price(self, capsys, intro):
        rc, out, _ = run(capsys, [
            "simulate", "--game", "B", "--attempts", "50", "--paths", "5",
            "--format", "json", intro,
        ])
        assert rc == 0
        doc = json.loads(out)
        assert doc["mean_growth"] == pytest.approx(math.exp(0.05), rel=1e-12)
        assert doc["failed_paths"] == 0

    def test_sweep_default_csv(self, capsys, intro):
        rc, out, _ = run(capsys, [
            "sweep", "--game", "A", "--points", "3", "--attempts", "50",
            "--paths", "5", intro,
        ])
        assert rc == 0
        lines = out.strip().splitlines()
        assert lines[0] == "t,mean_growth,var_growth,ci"
        assert len(lines) == 4
        assert float(lines[1].split(",")[1]) == 1.0  # t = 0 row


class TestCompareAndParity:
    def test_compare_json(self, capsys, remark35):
        rc, out, _ = run(capsys, ["compare-mv", "--format", "json", remark35])
        assert rc == 0
        doc = json.loads(out)
        assert doc["w_onefund"] == pytest.approx(0.2932, abs=1e-3)
        assert doc["price_star"] == pytest.approx(21.4134, abs=1e-3)
        assert len(doc["allocation"]) == 3

    def test_parity_table(self, capsys, remark35):
        rc, out, _ = run(capsys, [
            "parity", "--stock", "S", "--strike", "10",
            "--rate", "0.05", "--convention", "continuous", remark35,
        ])
        assert rc == 0
        assert "residual" in out

    def test_parity_degenerate(self, capsys, remark35):
        rc, out, _ = run(capsys, [
            "parity", "--stock", "S", "--strike", "100",
            "--rate", "0.05", "--convention", "continuous", remark35,
        ])
        assert rc == 0
        assert "degenerate" in out


class TestPaperExamples:
    def test_full_run_has_14_passing_rows(self, capsys):
        rc, out, _ = run(capsys, ["paper-examples", "--format", "json"])
        assert rc == 0
        docs = json.loads(out)
        assert len(docs) == 14
        assert all(d["passed"] for d in docs)

    def test_filter_single_row(self, capsys):
        rc, out, _ = run(capsys, ["paper-examples", "--only", "remark3.2"])
        assert rc == 0
        lines = [l for l in out.strip().splitlines() if l]
        assert len(lines) == 2  # the row and the summary
        assert "PASS" in lines[0]

    def test_json_format(self, capsys):
        rc, out, _ = run(capsys, [
            "paper-examples", "--only", "theorem1.1", "--format", "json",
        ])
        assert rc == 0
        docs = json.loads(out)
        assert all(d["passed"] for d in docs)
        assert len(docs) == 3

    def test_unmatched_filter(self, capsys):
        rc, _, err = run(capsys, ["paper-examples", "--only", "nonsense"])
        assert rc == 2
        assert "no checks match" in err
