import csv
import importlib
import io
import json

import pytest

from src.cli import main
from src.shared.errors import DriftExceededError


def run_cli(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gen_writes_body_and_sidecar(tmp_path, capsys) -> None:
    body = tmp_path / "phi.bin"
    code, out, _ = run_cli(capsys, "gen", "--family", "phi", "--h", "2", "--length", "500", "--out", str(body))
    assert code == 0
    header = json.loads(out)
    assert header["family"] == "phi" and header["length"] == 500 and header["encoding"] == "bytes"
    assert body.exists() and (tmp_path / "phi.bin.json").exists()


def test_gen_defaults_to_the_cache_directory(tmp_path, capsys, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("GALE_CACHE_DIR", str(tmp_path / "cache"))
    code, out, _ = run_cli(capsys, "gen", "--family", "phi", "--h", "2", "--seed", "3", "--length", "300")
    assert code == 0
    assert json.loads(out)["seed"] == 3
    body = tmp_path / "cache" / "phi-h2-L1-s3.bin"
    assert body.exists() and (tmp_path / "cache" / "phi-h2-L1-s3.bin.json").exists()


def test_build_validate_and_run_a_spec_file(tmp_path, capsys) -> None:
    spec = tmp_path / "f.gambler"
    body = tmp_path / "f.bin"
    assert run_cli(capsys, "gambler", "build", "--builtin", "f", "--h", "2", "--out", str(spec))[0] == 0
    code, out, _ = run_cli(capsys, "gambler", "validate", str(spec))
    assert code == 0
    assert json.loads(out)["valid"] is True

    run_cli(capsys, "gen", "--family", "f", "--h", "2", "--length", "1000", "--out", str(body))
    code, out, _ = run_cli(
        capsys, "run", "--gambler", str(spec), "--seq", str(body), "--checkpoints", "500,1000"
    )
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [row["n"] for row in rows] == ["500", "1000"]
    assert rows[-1]["full_wins"] == "199"
    assert rows[-1]["parity_losses"] == "0"


def test_run_then_report(tmp_path, capsys) -> None:
    trace = tmp_path / "trace.csv"
    code, _, _ = run_cli(
        capsys, "run", "--gambler", "builtin-phi", "--h", "2", "--n-max", "300", "--s", "0.9", "--exact", "--out", str(trace)
    )
    assert code == 0
    code, out, _ = run_cli(capsys, "report", "--trace", str(trace))
    assert code == 0
    report = json.loads(out)
    assert report["final_n"] == 243
    assert report["checkpoints"] == 6
    assert report["config"]["gambler"] == "builtin-phi"
    assert report["config"]["s_values"] == [0.9]
    assert "cache_dir" not in report["config"]


def test_drifting_exact_run_exits_with_a_failed_verdict(tmp_path, capsys, monkeypatch: pytest.MonkeyPatch) -> None:
    def drifted(spec, sequence, n, **kwargs):
        raise DriftExceededError(f"{spec.name}: log-domain capital drifted by 1.000e-06 at n=17")

    monkeypatch.setattr(importlib.import_module("src.cli.main"), "exact_crosscheck", drifted)
    code, _, err = run_cli(
        capsys, "run", "--gambler", "builtin-f", "--h", "2", "--n-max", "100", "--checkpoints", "50,100", "--exact", "--out", str(tmp_path / "t.csv")
    )
    assert code == 1
    assert "drifted" in err


def test_analyze_ratios_and_bounds(capsys) -> None:
    code, out, _ = run_cli(capsys, "analyze", "ratios", "--h", "2", "--d", "2")
    assert code == 0
    ratios = json.loads(out)
    assert ratios["zeta"] == "99/2500"
    assert ratios["gamma"] == "10099/10198"
    assert ratios["threshold"] == 51
    code, out, _ = run_cli(capsys, "analyze", "bounds", "--h", "2")
    assert json.loads(out)["delta_1"] == "9/80"


def test_analyze_beta_table(capsys) -> None:
    code, out, _ = run_cli(capsys, "analyze", "beta", "--h", "2", "--k-max", "3")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [row["point"] for row in rows] == ["s_1", "t_1", "s_3", "t_3"]
    assert rows[1]["limit"] == "9/80"


def test_analyze_sets(capsys) -> None:
    code, out, _ = run_cli(capsys, "analyze", "sets", "--h", "2", "--m", "20", "--n", "30")
    assert code == 0
    report = json.loads(out)
    assert report["sets"]["V"] == [[7, 8]]
    assert report["verdicts"] == {"A_disjoint_V": True}

    code, out, _ = run_cli(capsys, "analyze", "sets", "--family", "f", "--h", "2", "--m", "298", "--n", "305")
    assert code == 0
    sets = json.loads(out)["sets"]
    assert [48, 48] in sets["V_1"]
    assert sets["closure_1"][0] == [48, 48]


def test_verify_beta(capsys) -> None:
    code, out, _ = run_cli(capsys, "verify", "beta", "--h", "2")
    assert code == 0
    summary = json.loads(out)
    assert summary["passed"] is True
    assert [r["check"] for r in summary["results"]] == ["beta"]


@pytest.mark.parametrize(
    "argv",
    [
        ["run", "--gambler", "builtin-phi", "--n-max", "10"],
        ["run", "--gambler", "builtin-phi", "--h", "2"],
        ["analyze", "sets", "--h", "2"],
        ["gambler", "validate", "does-not-exist.gambler"],
        ["run", "--gambler", "builtin-f", "--h", "2", "--n-max", "100", "--checkpoints", "200"],
    ],
)
def test_usage_errors_exit_with_two(capsys, argv) -> None:
    code, _, err = run_cli(capsys, *argv)
    assert code == 2
    assert err.startswith("gale-lab ")


def test_bad_spec_file(tmp_path, capsys) -> None:
    spec = tmp_path / "bad.gambler"
    spec.write_text("heads 2\n")
    code, _, err = run_cli(capsys, "gambler", "validate", str(spec))
    assert code == 2
    assert "missing directives" in err


def test_unknown_check_is_rejected_by_the_parser(capsys) -> None:
    with pytest.raises(SystemExit):
        main(["verify", "nope"])
