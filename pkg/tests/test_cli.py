import json
import subprocess
import sys

import pytest

from gftomega import omega as O
from gftomega.cli import main
from gftomega.series import save_series


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, f in {
        "identity": O.quadratic(0.0),
        "fhalf": O.family_f_mu(0.5, 128),
        "zz2": O.quadratic(1.0),
        "half": O.quadratic(0.5),
        "f09": O.family_f_mu(0.9, 256),
    }.items():
        paths[name] = str(tmp_path / f"{name}.json")
        save_series(f, paths[name])
    return paths


def test_roots(capsys):
    code, out, _ = run(capsys, "roots", "--eq", "convexity_2_1")
    assert code == 0 and "0.3181" in out
    code, out, _ = run(capsys, "roots", "--eq", "ctc_2_5", "--json")
    data = json.loads(out)
    assert code == 0 and abs(data["root"] - 0.5471) < 5e-4 and data["bracket"] == [0.05, 0.9]
    code, out, _ = run(capsys, "roots", "--all", "--json")
    assert len(json.loads(out)) == 7
    assert run(capsys, "roots", "--eq", "nonsense")[0] == 2


def test_member(capsys, files):
    code, out, _ = run(capsys, "member", "--input", files["identity"], "--lambda", "0.1")
    cert = json.loads(out)
    assert code == 0 and cert["defect"] == 0 and cert["member"]
    assert list(cert) == ["lambda", "defect", "method", "margin", "samples", "member"]
    assert run(capsys, "member", "--input", files["fhalf"], "--lambda", "0.5")[0] == 0
    assert run(capsys, "member", "--input", files["zz2"], "--lambda", "0.5")[0] == 1
    assert run(capsys, "member", "--input", files["zz2"], "--lambda", "0")[0] == 2


def test_member_bad_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "member", "--input", str(bad), "--lambda", "0.5")[0] == 2
    bad.write_text('{"coeffs": [[2, 0]]}')
    assert run(capsys, "member", "--input", str(bad), "--lambda", "0.5")[0] == 2
    assert run(capsys, "member", "--input", str(tmp_path / "missing.json"), "--lambda", "0.5")[0] == 2


def test_radius(capsys, files):
    code, out, _ = run(capsys, "radius", "--property", "convex", "--input", files["half"])
    res = json.loads(out)
    assert code == 0 and abs(res["radius"] - 0.5) < 1e-6 and res["method"]
    code, out, _ = run(capsys, "radius", "--property", "starlike", "--input", files["zz2"])
    assert abs(json.loads(out)["radius"] - 0.5) < 1e-6
    code, out, _ = run(capsys, "radius", "--property", "convex", "--input", files["f09"], "--partial-sum", "3")
    assert json.loads(out)["radius"] >= 0.4969
    assert run(capsys, "radius", "--property", "convex", "--input", files["half"], "--partial-sum", "1")[0] == 2


def test_radius_bad_property(capsys, files):
    with pytest.raises(SystemExit) as exc:
        main(["radius", "--property", "round", "--input", files["half"]])
    assert exc.value.code == 2


def test_radius_partial_result_exit_code(capsys, files, monkeypatch):
    # the functional turns negative before any pole, so force the error path
    from gftomega import geometry
    from gftomega.errors import PoleEncountered

    def boom(*args, **kwargs):
        raise PoleEncountered("pole", r=0.4, theta=1.0, last_good_radius=0.39)

    monkeypatch.setattr(geometry, "radius_of_positivity", boom)
    code, out, _ = run(capsys, "radius", "--property", "convex", "--input", files["half"])
    data = json.loads(out)
    assert code == 3
    assert data["radius"] == 0.39 and data["method"] == "partial" and data["pole_r"] == 0.4


def test_family(capsys, tmp_path):
    out = tmp_path / "f.json"
    assert run(capsys, "family", "--name", "fmu", "--mu", "0", "--degree", "5", "--out", str(out))[0] == 0
    assert json.loads(out.read_text())["coeffs"] == [[1, 0], [0, 0], [0.25, 0], [0, 0], [0, 0]]
    run(capsys, "family", "--name", "fmu", "--mu", "1", "--degree", "3", "--out", str(out))
    assert json.loads(out.read_text())["coeffs"] == [[1, 0], [0.5, 0], [0, 0]]
    run(capsys, "family", "--name", "eq16", "--lambda", "1", "--out", str(out))
    assert json.loads(out.read_text())["coeffs"] == [[1, 0], [0.5, 0], [0.25, 0]]
    run(capsys, "family", "--name", "extremal", "--k", "5", "--lambda", "0.5", "--out", str(out))
    assert json.loads(out.read_text())["coeffs"][4] == [0.125, 0]
    assert run(capsys, "family", "--name", "fmu", "--mu", "1.5")[0] == 2
    assert run(capsys, "family", "--name", "extremal", "--k", "1")[0] == 2
    assert run(capsys, "family", "--name", "fmu")[0] == 2


def test_figure1(capsys, tmp_path):
    path = tmp_path / "fig.csv"
    code, out, _ = run(capsys, "figure1", "--nmax", "40", "--out", str(path))
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "n,radius" and lines[1] == "2,1" and lines[2].startswith("3,0.6666")
    start = int(out.split("n = ")[1].split()[0])
    assert 10 <= start <= 14
    code, out, _ = run(capsys, "figure1", "--nmax", "5", "--format", "json")
    assert [row["n"] for row in json.loads(out)] == [2, 3, 4, 5]
    assert run(capsys, "figure1", "--out", str(tmp_path / "no" / "dir.csv"))[0] == 2
    assert run(capsys, "figure1", "--nmax", "1")[0] == 2


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "thm33")
    assert code == 0 and "minimal n  measured=12" in out
    code, out, _ = run(capsys, "verify", "--suite", "thm45", "--seed", "7", "--json")
    data = json.loads(out)
    assert code == 0 and data["suites"][0]["ok"]
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nope"])
    assert exc.value.code == 2


def test_verify_json_is_reproducible(capsys):
    first = run(capsys, "verify", "--suite", "lemma12", "--seed", "11", "--samples", "5", "--json")[1]
    second = run(capsys, "verify", "--suite", "lemma12", "--seed", "11", "--samples", "5", "--json")[1]
    other = run(capsys, "verify", "--suite", "lemma12", "--seed", "12", "--samples", "5", "--json")[1]
    assert first == second
    assert first != other


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gftomega", "roots", "--eq", "aux_3r2_4r_4"],
                          capture_output=True, text=True, check=True)
    assert "0.666666666667" in proc.stdout
