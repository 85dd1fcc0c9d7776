import json
import subprocess
import sys
from pathlib import Path

import pytest

from starinv.cli import main
from starinv.exact_matrix import ExactMatrix

GOLDEN = Path(__file__).parent / "golden"


def run(argv, capsys):
    """Exit code, stdout, stderr; argparse's own SystemExit is folded into the code."""
    try:
        code = main([str(a) for a in argv])
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def write_matrix(tmp_path, rows, name="m.json"):
    path = tmp_path / name
    path.write_text(json.dumps(ExactMatrix(rows).to_json()))
    return path


def test_compute_golden(capsys):
    code, out, _ = run(["compute", GOLDEN / "a_11_00.json"], capsys)
    assert code == 0
    assert out == (GOLDEN / "compute_11_00.json").read_text()
    code, out, _ = run(["compute", GOLDEN / "a_11_00.json", "--format", "text"], capsys)
    assert out == (GOLDEN / "compute_11_00.txt").read_text()


def test_compute_core_only(capsys):
    code, out, _ = run(["compute", GOLDEN / "a_11_00.json", "--which", "core"], capsys)
    doc = json.loads(out)
    assert code == 0 and list(doc["inverses"]) == ["core"]
    assert ExactMatrix.from_json(doc["inverses"]["core"]["value"]) == ExactMatrix([[1, 0], [0, 0]])


def test_compute_nonexistent_group(capsys):
    code, out, _ = run(["compute", GOLDEN / "a_01_00.json", "--which", "group"], capsys)
    assert code == 2
    assert json.loads(out)["inverses"]["group"] == {"exists": False, "witness": {"rank": 1, "rank_square": 0}}
    code, out, _ = run(["compute", GOLDEN / "a_01_00.json", "--which", "group", "--format", "text"], capsys)
    assert "rank(a)=1 != rank(a^2)=0" in out


def test_compute_identity(capsys):
    code, out, _ = run(["compute", GOLDEN / "identity3.json", "--which", "mp,core,dual_core,group"], capsys)
    assert code == 0
    eye = ExactMatrix.identity(3)
    doc = json.loads(out)
    assert [ExactMatrix.from_json(v["value"]) for v in doc["inverses"].values()] == [eye] * 4


def test_output_round_trips(capsys):
    _, out, _ = run(["compute", GOLDEN / "a_11_00.json"], capsys)
    doc = json.loads(out)
    for entry in doc["inverses"].values():
        m = ExactMatrix.from_json(entry["value"])
        assert ExactMatrix.from_json(json.loads(json.dumps(m.to_json()))) == m


def test_parse_error_reports_line_and_column(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"rows": 2,\n  "cols" 2}')
    code, _, err = run(["compute", bad], capsys)
    assert code == 1
    assert f"{bad}:2:10:" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["compute", "missing.json"],
        ["compute", "{golden}/a_11_00.json", "--which", "drazin"],
        ["census", "Z:6", "--bound", "1000001"],
        ["census", "Z:6", "--workers", "0"],
        ["census", "R:6"],
        ["nonsense"],
        [],
    ],
)
def test_usage_errors_exit_one(argv, capsys):
    argv = [a.replace("{golden}", str(GOLDEN)) for a in argv]
    assert run(argv, capsys)[0] == 1


def test_non_square_matrix_rejected(tmp_path, capsys):
    path = write_matrix(tmp_path, [[1, 2, 3]])
    code, _, err = run(["compute", path], capsys)
    assert code == 1 and "square" in err


def test_census_examples(capsys):
    code, out, _ = run(["census", "Z:6"], capsys)
    assert code == 0 and out == (GOLDEN / "census_Z6.json").read_text()
    code, out, _ = run(["census", "M2:Z2"], capsys)
    assert code == 0 and json.loads(out)["order"] == 16
    assert out == (GOLDEN / "census_M2_Z2.json").read_text()
    code, _, err = run(["census", "Z:10001"], capsys)
    assert code == 1 and "bound" in err


def test_census_bound_override(capsys):
    code, _, _ = run(["census", "Z:10001", "--bound", "20000"], capsys)
    assert code == 0


def test_ep_examples(capsys):
    code, out, _ = run(["ep", GOLDEN / "a_11_11.json"], capsys)
    assert code == 0 and json.loads(out)["is_ep"]
    code, out, _ = run(["ep", GOLDEN / "a_11_00.json"], capsys)
    doc = json.loads(out)
    assert code == 2 and not doc["is_ep"] and not any(doc["conditions"].values())
    code, out, _ = run(["ep", GOLDEN / "a_01_00.json"], capsys)
    assert code == 4 and json.loads(out)["status"] == "prerequisites_missing"


def test_verify_golden_and_certificate_reverification(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(GOLDEN)
    code, out, _ = run(["verify", "a_11_00.json"], capsys)
    assert code == 0 and out == (GOLDEN / "verify_11_00.json").read_text()
    cert = json.loads(out)["results"][0]["certificate"]
    cert_path = tmp_path / "cert.json"
    cert_path.write_text(json.dumps(cert))
    code, out, _ = run(["verify", cert_path, "--format", "text"], capsys)
    assert code == 0 and out.startswith("VALID")
    cert["inverses"]["core"]["value"] = cert["inverses"]["group"]["value"]
    cert_path.write_text(json.dumps(cert))
    code, out, _ = run(["verify", cert_path, "--format", "text"], capsys)
    assert code == 3 and out.startswith("INVALID")


def test_verify_batch_is_identical_across_worker_counts(tmp_path, capsys):
    batch = [ExactMatrix(m).to_json() for m in ([[1, 1], [0, 0]], [[0, 1], [0, 0]], [[2, 0], [0, 0]])]
    batch.append({"ring": "M2:Z2", "index": 12})
    path = tmp_path / "batch.json"
    path.write_text(json.dumps(batch))
    outs = []
    for w in ("1", "2", "3"):
        code, out, _ = run(["verify", path, "--workers", w], capsys)
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1] == outs[2]
    assert [r["source"] for r in json.loads(outs[0])["results"]] == [f"{path}#{i}" for i in range(4)]


def test_census_identical_across_worker_counts(capsys):
    outs = {run(["census", "M2:Z3", "--workers", w], capsys)[1] for w in ("1", "2")}
    assert len(outs) == 1


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = run(["compute", GOLDEN / "a_11_00.json", "--out", target], capsys)
    assert code == 0 and out == ""
    assert target.read_text() == (GOLDEN / "compute_11_00.json").read_text()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "starinv", "ep", str(GOLDEN / "a_11_00.json"), "--format", "text"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 2 and proc.stdout.startswith("not EP")
