import json

import numpy as np
import pytest

from plurikernel import cli


@pytest.fixture(scope="module")
def ball_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("domains") / "ball2.json"
    path.write_text(json.dumps({"kind": "ball", "n": 2}))
    return str(path)


@pytest.fixture(scope="module")
def ellipsoid_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("domains") / "ellipsoid_1_4.json"
    path.write_text(json.dumps({"kind": "ellipsoid", "a": [1.0, 4.0]}))
    return str(path)


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_domain_validate(capsys, ellipsoid_file):
    code, out, _ = run_cli(capsys, "domain", "validate", "--domain", ellipsoid_file)
    assert code == 0
    data = json.loads(out)
    assert data["report"]["ok"]
    assert "config_digest" in data and data["version"]


def test_geodesic_two_point(capsys, ball_file):
    code, out, _ = run_cli(capsys, "geodesic", "two-point", "--domain", ball_file,
                           "--z", "0,0,0,0", "--w", "0.5,0,0,0", "--modes", "24")
    assert code == 0
    data = json.loads(out)
    assert abs(data["meta"]["t"] - 0.5) < 1e-10
    assert data["residuals"]["boundary_defect"] <= 1e-10
    # complex coefficients serialized as [re, im]
    assert len(data["phi"][0][0]) == 2


def test_geodesic_chl_linear_disc(capsys, ball_file):
    code, out, _ = run_cli(capsys, "geodesic", "chl", "--domain", ball_file,
                           "--p", "1,0,0,0", "--v", "1,0,0,0", "--modes", "24")
    assert code == 0
    data = json.loads(out)
    coeffs = np.asarray(data["phi"])
    c = coeffs[..., 0] + 1j * coeffs[..., 1]
    assert abs(c[0, 1] - 1.0) < 1e-12  # phi = (zeta, 0)
    assert np.abs(np.delete(c.reshape(-1), 1)).max() < 1e-12


def test_usage_errors(capsys, ball_file):
    with pytest.raises(SystemExit) as exc:
        cli.main(["geodesic", "two-point", "--domain", ball_file, "--z", "0,0,0,0"])
    assert exc.value.code == 2
    code, _, err = run_cli(capsys, "kernel", "green", "--domain", ball_file,
                           "--z0", "0,0,0,0", "--z", "bad")
    assert code == 2 and "error" in err
    code, _, err = run_cli(capsys, "levelset", "--domain", ball_file,
                           "--p", "1,0,0,0", "--R", "-2", "--count", "2")
    assert code == 2


def test_numeric_failure_exit_code(capsys, ball_file):
    # z outside the domain: solver precondition fails -> exit 3 branch is for
    # genuine numerical failures; exterior points are usage errors
    code, _, err = run_cli(capsys, "kernel", "green", "--domain", ball_file,
                           "--z0", "0,0,0,0", "--z", "0,0,0,0")
    assert code == 3  # pole hit: evaluation failure


def test_kernel_values(capsys, ball_file):
    code, out, _ = run_cli(capsys, "kernel", "poisson", "--domain", ball_file,
                           "--p", "1,0,0,0", "--z", "0,0,0,0")
    assert code == 0 and abs(json.loads(out)["value"] + 1.0) < 1e-14
    code, out, _ = run_cli(capsys, "kernel", "kobayashi", "--domain", ball_file,
                           "--z", "0.1,0,0,0", "--w", "0.1,0,0,0")
    assert code == 0 and json.loads(out)["value"] == 0.0


def test_levelset_csv(capsys, ball_file):
    code, out, _ = run_cli(capsys, "levelset", "--domain", ball_file,
                           "--p", "1,0,0,0", "--R", "1", "--count", "0")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("#") and "config_digest" in lines[0]
    assert lines[1] == "re_z1,im_z1,re_z2,im_z2"
    assert len(lines) == 2
    code, out, _ = run_cli(capsys, "levelset", "--domain", ball_file,
                           "--p", "1,0,0,0", "--R", "1", "--count", "3", "--seed", "4")
    rows = out.strip().splitlines()[2:]
    assert len(rows) == 3


def test_determinism(capsys, ball_file):
    args = ("check", "gvp", "--domain", ball_file, "--seed", "11")
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_check_failure_exit_code(capsys, ball_file, tmp_path, monkeypatch):
    # an impossible tolerance file forces a check failure -> exit 1
    defaults = json.loads(open("src/plurikernel/defaults.json").read())
    defaults["gvp"]["tol_ball"] = 1e-30
    path = tmp_path / "tight.json"
    path.write_text(json.dumps(defaults))
    monkeypatch.setenv("PLURIKERNEL_DEFAULTS", str(path))
    code, out, _ = run_cli(capsys, "check", "gvp", "--domain", ball_file)
    assert code == 1
    assert json.loads(out)["passed"] is False
