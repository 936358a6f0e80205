import json
import re

import pytest

from nodalcount.cli import main, parse_sigma_spec
from nodalcount.presets import resolve_group


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code = main(["--format", "json", *argv])
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestSigmaSpecs:
    def test_fixed_points(self):
        G = resolve_group("trivial")
        sigma = parse_sigma_spec("4*", G)
        assert sigma.decomposition.cardinality() == 4

    def test_free_orbit(self):
        G = resolve_group("V")
        sigma = parse_sigma_spec("[G]", G)
        assert sigma.orbit_classes == (0,)

    def test_mixed_terms_and_multiplicity(self):
        G = resolve_group("Z2")
        assert parse_sigma_spec("2*+[G]", G).orbit_classes == (0, 1, 1)
        assert parse_sigma_spec("2[G]", G).orbit_classes == (0, 0)

    def test_subgroup_terms(self):
        G = resolve_group("S3")
        sigma = parse_sigma_spec("2*+[G/(123)]", G)
        assert sigma.decomposition.cardinality() == 4

    def test_rejects_bad_sizes(self):
        G = resolve_group("Z2")
        with pytest.raises(Exception):
            parse_sigma_spec("3*", G)

    def test_rejects_foreign_subgroup(self):
        G = resolve_group("A4")
        with pytest.raises(Exception):
            parse_sigma_spec("1*+[G/(12)]", G)  # a transposition is not in A4


class TestCommands:
    def test_verify_trivial(self, capsys):
        code, out = run(capsys, "verify", "--group", "trivial", "--sigma", "4*")
        assert code == 0
        assert "equal: true" in out
        assert "lhs = 3*[G/G]" in out

    def test_verify_unequal_exits_one(self, capsys):
        code, out = run(capsys, "verify", "--group", "V", "--sigma", "[G]")
        assert code == 1
        assert "equal: false" in out

    def test_verify_all_klein(self, capsys):
        code, out = run(capsys, "verify-all", "--group", "V")
        assert code == 1  # some configurations are unequal
        assert out.count("group: V") == 11

    def test_verify_all_s3_passes(self, capsys):
        code, _ = run(capsys, "verify-all", "--group", "S3")
        assert code == 0

    def test_marks(self, capsys):
        code, out = run(capsys, "marks", "--group", "Z2")
        assert code == 0
        rows = [re.sub(r"\s+", " ", line) for line in out.splitlines()]
        assert "<()> | 2 0" in rows
        assert "G | 1 1" in rows

    def test_unknown_group_is_input_error(self, capsys):
        code = main(["marks", "--group", "Q8"])
        assert code == 2

    def test_bad_sigma_is_input_error(self, capsys):
        code = main(["verify", "--group", "Z2", "--sigma", "banana"])
        assert code == 2

    def test_counterexample_klein(self, capsys):
        code, out = run(capsys, "counterexample", "klein")
        assert code == 0
        assert "equal: false" in out
        assert "[1:2:3]" in out

    def test_counterexample_d8_case8(self, capsys):
        code, out = run(capsys, "counterexample", "d8", "--case", "8")
        assert code == 0
        assert "equal: false" in out
        assert "full per-subgroup table" in out
        # ten subgroup rows
        rows = [
            line
            for line in out.splitlines()[out.splitlines().index("full per-subgroup table:") + 2 :]
            if "|" in line
        ]
        assert len(rows) == 10

    def test_counterexample_d8_degenerate_case(self, capsys):
        code, out = run(capsys, "counterexample", "d8", "--case", "1")
        assert code == 0
        assert "not general: common component" in out

    def test_counterexample_d8_case9(self, capsys):
        code, out = run(capsys, "counterexample", "d8", "--case", "9")
        assert code == 0
        assert "equal: false" in out

    def test_theorem_sweep_matches_golden(self, capsys):
        code, out = run(capsys, "theorem-sweep")
        assert code == 0
        assert "all groups match the golden table" in out

    def test_output_file(self, tmp_path, capsys):
        target = tmp_path / "report.json"
        code = main(
            [
                "--format",
                "json",
                "--output",
                str(target),
                "verify",
                "--group",
                "Z2",
                "--sigma",
                "2[G]",
            ]
        )
        assert code == 0
        data = json.loads(target.read_text())
        assert data["equal"] is True


class TestJsonTextParity:
    def _table_from_text(self, out):
        rows = {}
        for line in out.splitlines():
            match = re.match(r"^(\S.*?)\s*\|\s*(-?\d+)\s*\|\s*(-?\d+)\s*$", line)
            if match and match.group(1) != "K <= G":
                rows[match.group(1)] = (int(match.group(2)), int(match.group(3)))
        return rows

    def test_verify_numbers_agree(self, capsys):
        code_t, text = run(capsys, "verify", "--group", "V", "--sigma", "[G]")
        code_j, payload = run_json(capsys, "verify", "--group", "V", "--sigma", "[G]")
        assert code_t == code_j == 1
        text_rows = self._table_from_text(text)
        json_rows = {
            row["class"]: (row["lhs"], row["rhs"]) for row in payload["table"]
        }
        assert text_rows == json_rows

    def test_sweep_numbers_agree(self, capsys):
        code_t, text = run(capsys, "theorem-sweep")
        code_j, payload = run_json(capsys, "theorem-sweep")
        assert code_t == code_j == 0
        for entry in payload["groups"]:
            for config in entry["configs"]:
                token = f"{config['sigma']}={'T' if config['equal'] else 'F'}"
                assert token in text
