import io
import json
import random
import shutil
import subprocess
import sys

import pytest

from stpakit import corpus
from stpakit.cli import EXIT_INVALID, EXIT_OK, EXIT_PARSE, EXIT_USAGE, main
from stpakit.diagnostics import CATALOG, Severity

from conftest import CORPUS_DIR, GOLDEN_DIR, REPO_ROOT
from mutants import MUTATORS


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def pdmp_path():
    return str(CORPUS_DIR / "pdmp.stpa")


@pytest.fixture
def cjfr_path():
    return str(CORPUS_DIR / "cjfr.stpa")


def test_check_corpus_passes_with_warnings(pdmp_path):
    code, out, err = run("check", pdmp_path)
    assert code == EXIT_OK and out == ""
    assert "warning[R007]" in err
    assert err.splitlines()[0].startswith(f"{pdmp_path}:")


def test_warnings_as_errors(pdmp_path):
    assert run("check", pdmp_path, "--warnings-as-errors")[0] == EXIT_INVALID


def test_check_json_lines(pdmp_path):
    code, out, _ = run("check", pdmp_path, "--format", "json")
    records = [json.loads(line) for line in out.splitlines()]
    assert code == EXIT_OK and records
    assert {"file", "severity", "code", "message", "line", "column"} <= set(records[0])


def test_missing_file_is_usage_error():
    code, _, err = run("check", "missing.stpa")
    assert code == EXIT_USAGE and "cannot read missing.stpa" in err


def test_bad_arguments_are_usage_errors(pdmp_path, capsys):
    assert run("frobnicate")[0] == EXIT_USAGE
    assert run("report", pdmp_path, "--table", "ucas")[0] == EXIT_USAGE
    assert run("report", pdmp_path, "--table", "hazards", "--loop", "X")[0] == EXIT_USAGE
    assert run("fmt", pdmp_path, "--check", "--write")[0] == EXIT_USAGE
    assert run("export", pdmp_path)[0] == EXIT_USAGE


def test_parse_errors_dominate(tmp_path):
    path = tmp_path / "bad.stpa"
    path.write_text('model "m" {}\nhazard H1 "h"\nloss L1 "a" { colour: red; }\n')
    code, _, err = run("check", str(path))
    assert code == EXIT_PARSE and "error[E011]" in err and "R001" not in err
    for cmd in (["stats"], ["fmt"], ["export", "--format", "dot"], ["expand", "--loop", "x"]):
        assert run(cmd[0], str(path), *cmd[1:])[0] == EXIT_PARSE


def test_validation_errors_exit_1(tmp_path):
    path = tmp_path / "v.stpa"
    path.write_text('model "m" {}\nloss L1 "a"\nhazard H1 "h"\n')
    code, _, err = run("check", str(path))
    assert code == EXIT_INVALID and f"{path}:3:8: error[R001]" in err
    assert run("report", str(path), "--table", "hazards")[0] == EXIT_INVALID


def test_expand_pfdd_grid(cjfr_path):
    code, out, _ = run("expand", cjfr_path, "--loop", "PFDD")
    rows = [l for l in out.splitlines() if l.startswith("| PF")]
    assert code == EXIT_OK and len(rows) == 6
    assert all(r.count(" | ") == 5 for r in rows)


def test_expand_patient_care(pdmp_path):
    code, out, _ = run("expand", pdmp_path, "--loop", "PatientCare")
    (row,) = [l for l in out.splitlines() if l.startswith("| ProvideScore")]
    assert row.split(" | ")[3] == "N/A"
    assert "coverage: 1.000" in out


def test_expand_unknown_loop(pdmp_path):
    code, _, err = run("expand", pdmp_path, "--loop", "NOPE")
    assert code == EXIT_INVALID and "E030" in err


def test_trace_forward_from_l1(pdmp_path):
    code, out, _ = run("trace", pdmp_path, "--from", "L1", "--direction", "forward")
    hazards = next(l for l in out.splitlines() if l.startswith("hazards:"))
    assert code == EXIT_OK and {"H1", "H2"} <= set(hazards[9:].split(", "))


def test_trace_back_from_h1(pdmp_path):
    code, out, _ = run("trace", pdmp_path, "--from", "H1")
    assert code == EXIT_OK
    assert out == "H1 -> L1\nH1 -> L4\nlosses: L1, L4\n"


def test_trace_unknown_id(pdmp_path):
    code, _, err = run("trace", pdmp_path, "--from", "ZZZ")
    assert code == EXIT_INVALID and "E031" in err


def test_report_matches_golden(cjfr_path):
    code, out, _ = run("report", cjfr_path, "--table", "hazards", "--format", "md")
    assert code == EXIT_OK and out == (GOLDEN_DIR / "cjfr_hazards.md").read_text()


def test_report_to_file(pdmp_path, tmp_path):
    target = tmp_path / "pc.csv"
    code, out, _ = run("report", pdmp_path, "--table", "ucas", "--loop", "PatientCare",
                       "--format", "csv", "--out", str(target))
    assert code == EXIT_OK and out == ""
    assert target.read_text().startswith("Control Action,Not Providing,")


def test_export_formats(pdmp_path):
    assert run("export", pdmp_path, "--format", "json")[1] == (GOLDEN_DIR / "pdmp.json").read_text()
    assert run("export", pdmp_path, "--format", "dot")[1] == (GOLDEN_DIR / "pdmp.dot").read_text()


def test_stats_output(cjfr_path):
    code, out, _ = run("stats", cjfr_path)
    assert code == EXIT_OK and "hazards: 21" in out and "ucas: 32" in out


def test_fmt_check_and_write(pdmp_path, tmp_path):
    assert run("fmt", pdmp_path, "--check")[0] == EXIT_OK
    messy = tmp_path / "m.stpa"
    messy.write_text('loss L1 "a"\nmodel "m"\n')
    assert run("fmt", str(messy), "--check")[0] == EXIT_INVALID
    assert run("fmt", str(messy))[1] == 'model "m" {}\n\nloss L1 "a"\n'
    assert run("fmt", str(messy), "--write")[0] == EXIT_OK
    assert messy.read_text() == 'model "m" {}\n\nloss L1 "a"\n'
    assert run("fmt", str(messy), "--check")[0] == EXIT_OK


def test_outputs_have_no_machine_paths(pdmp_path):
    for argv in (["stats"], ["export", "--format", "json"], ["export", "--format", "dot"],
                 ["report", "--table", "hazards"]):
        out = run(argv[0], pdmp_path, *argv[1:])[1]
        assert str(REPO_ROOT) not in out and "/root" not in out


@pytest.mark.parametrize("seed", range(3))
@pytest.mark.parametrize("code", sorted(MUTATORS))
def test_exit_codes_on_seeded_defects(corpus_name, code, seed, tmp_path):
    mutant = MUTATORS[code](corpus.load(corpus_name), random.Random(seed))
    path = tmp_path / "mutant.stpa"
    path.write_text(mutant.text)
    is_error = CATALOG[code][0] is Severity.ERROR
    rc, _, err = run("check", str(path))
    assert rc == (EXIT_INVALID if is_error else EXIT_OK)
    assert f"[{code}]" in err
    assert run("fmt", str(path), "--check")[0] == EXIT_OK
    # a stray character on top of the defect makes it a parse failure
    path.write_text(mutant.text + "\n@\n")
    assert run("check", str(path))[0] == EXIT_PARSE


def test_module_entry_point(pdmp_path):
    proc = subprocess.run([sys.executable, "-m", "stpakit", "stats", pdmp_path],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "ucas: 13" in proc.stdout


@pytest.mark.skipif(shutil.which("stpa-kit") is None, reason="console script not installed")
def test_console_script(pdmp_path):
    proc = subprocess.run(["stpa-kit", "check", "missing.stpa"], capture_output=True, text=True)
    assert proc.returncode == EXIT_USAGE
