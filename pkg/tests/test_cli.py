import json
import re

import pytest
from click.testing import CliRunner

from filterlens.cli import main
from conftest import DEMO_CSV


@pytest.fixture
def runner():
    return CliRunner()


def analyze(runner, *args):
    return runner.invoke(main, ["analyze", *args], catch_exceptions=False)


DEMO_ARGS = [str(DEMO_CSV), "--outcome", "two_year_recid",
             "--numeric", "decile_score", "--numeric", "v_decile_score"]


class TestAnalyze:
    def test_json_output(self, runner):
        result = analyze(runner, *DEMO_ARGS, "--filter", "sex=Female", "--json")
        assert result.exit_code == 0
        report = json.loads(result.output)
        assert len(report["filters"]) == 1
        entry = report["filters"][0]
        assert entry["strength"]["strength"] == "strong"
        assert abs(entry["strength"]["d"] - 0.6505) < 5e-4
        snap = report["snapshot"]
        assert snap["subsets"]["in"]["count"] == 529
        assert snap["n_rows"] == 1500

    def test_text_output_contains_same_numbers(self, runner):
        args = [*DEMO_ARGS, "--filter", "sex=Female", "--filter", "age:20..50"]
        text = analyze(runner, *args).output
        report = json.loads(analyze(runner, *args, "--json").output)
        for entry in report["filters"]:
            assert f"{entry['strength']['d']:.4f}" in text
            assert entry["strength"]["strength"] in text
        for label, info in report["snapshot"]["subsets"].items():
            assert f"count={info['count']}" in text
            assert f"fraction={info['fraction']:.4f}" in text
        for label, dist in report["snapshot"]["outcome_distributions"].items():
            for fraction in dist["fractions"]:
                assert f"{fraction:.4f}" in text

    def test_text_association_values_match_json(self, runner):
        args = [*DEMO_ARGS, "--filter", "sex=Female"]
        text = analyze(runner, *args).output
        report = json.loads(analyze(runner, *args, "--json").output)
        lines = text.splitlines()
        table = lines[lines.index("associations with outcome:"):]
        for entry in report["snapshot"]["associations"]:
            line = next(l for l in table
                        if l.strip().startswith(entry["feature"]))
            shown = [float(v) for v in re.findall(r"-?\d+\.\d{4}", line)]
            expected = [round(entry["values"][k], 4)
                        for k in sorted(report["snapshot"]["subsets"])
                        if entry["values"][k] is not None]
            assert shown == pytest.approx(expected, abs=1e-9)

    def test_multiple_filters_report_in_order(self, runner):
        result = analyze(runner, *DEMO_ARGS,
                         "--filter", "sex=Female", "--filter", "priors_count:0..5",
                         "--json")
        report = json.loads(result.output)
        columns = [f["constraint"]["column"] for f in report["filters"]]
        assert columns == ["sex", "priors_count"]
        assert [f["column"] for f in report["snapshot"]["filters"]] == columns

    def test_control_mode(self, runner):
        result = analyze(runner, *DEMO_ARGS, "--mode", "control",
                         "--filter", "sex=Female", "--json")
        report = json.loads(result.output)
        assert report["filters"][0]["strength"] is None
        assert set(report["snapshot"]["subsets"]) == {"in", "ex_control"}

    def test_feature_detail_flag(self, runner):
        result = analyze(runner, *DEMO_ARGS, "--filter", "sex=Female",
                         "--feature", "age", "--json")
        report = json.loads(result.output)
        assert report["snapshot"]["feature_detail"]["feature"] == "age"


class TestExitCodes:
    def test_missing_file(self, runner):
        result = analyze(runner, "/no/such/file.csv", "--outcome", "x")
        assert result.exit_code == 1

    def test_malformed_csv(self, runner, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_bytes(b"a,b\n1\n")
        result = analyze(runner, str(path), "--outcome", "a")
        assert result.exit_code == 1
        assert "MalformedCsv" in result.output

    def test_unknown_outcome(self, runner):
        result = analyze(runner, str(DEMO_CSV), "--outcome", "zzz")
        assert result.exit_code == 1
        assert "UnknownColumn" in result.output

    def test_unknown_filter_column(self, runner):
        result = analyze(runner, *DEMO_ARGS, "--filter", "zzz=1")
        assert result.exit_code == 1
        assert "UnknownColumn" in result.output

    def test_bad_filter_syntax(self, runner):
        result = analyze(runner, *DEMO_ARGS, "--filter", "age-20")
        assert result.exit_code == 1
        assert "InvalidConstraint" in result.output

    def test_bad_cf_fraction(self, runner):
        result = analyze(runner, *DEMO_ARGS, "--cf-fraction", "1.5")
        assert result.exit_code == 1
        assert "InvalidConfig" in result.output

    def test_filter_matches_nothing(self, runner):
        result = analyze(runner, *DEMO_ARGS, "--filter", "age:200..300")
        assert result.exit_code == 2
        assert "EmptyIncluded" in result.output

    def test_filter_matches_everything(self, runner):
        result = analyze(runner, *DEMO_ARGS, "--filter", "age:..1000")
        assert result.exit_code == 2
        assert "EmptyComplement" in result.output

    def test_filter_on_outcome(self, runner):
        result = analyze(runner, *DEMO_ARGS, "--filter", "two_year_recid=1")
        assert result.exit_code == 2
        assert "OutcomeConstraint" in result.output

    def test_success_is_zero(self, runner):
        assert analyze(runner, *DEMO_ARGS).exit_code == 0


def test_serve_command_exists(runner):
    result = runner.invoke(main, ["serve", "--help"])
    assert result.exit_code == 0
    assert "--port" in result.output
