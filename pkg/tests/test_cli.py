from __future__ import annotations

import json
import subprocess
import sys

import pytest

from tiltstab.cli import main
from tiltstab.fano import model_names


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


def test_model_list(capsys):
    code, out, _ = run(capsys, "model", "list")
    assert code == 0
    assert [line.split()[0] for line in out.splitlines()] == model_names()


def test_model_show_and_validate(capsys, tmp_path):
    data = run_json(capsys, "model", "show", "blowup-p3-point")
    assert data["derived"]["H^3"] == "7" and data["derived"]["(-K)^3"] == "56"
    assert data["derived"]["td3"] == "1"
    code, out, _ = run(capsys, "model", "validate", "p1xp2")
    assert code == 0 and "valid" in out
    # a corrupted copy fails validation with a named violation
    data.pop("derived")
    data["product"]["h,e"] = ["1", "0"]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "model", "validate", str(path))
    assert code == 1
    assert "violation: product symmetry" in out or "violation: triple symmetry" in out


def test_wall(capsys):
    data = run_json(capsys, "wall", "--model", "blowup-p3-point", "--v", "O(2h)", "--w", "O(2h-e)")
    assert data == {"kind": "semicircle", "center": "1/2", "radius_sq": "1/4"}
    code, _, err = run(capsys, "wall", "--model", "blowup-p3-point", "--v", "O(h)", "--w", "2O(h)")
    assert code == 1 and "proportional" in err


def test_nu(capsys):
    data = run_json(capsys, "nu", "--model", "blowup-p3-point", "--class", "O(2h)", "--alpha", "1/2", "--beta", "1/2")
    assert data["nu"] == "0"
    data = run_json(capsys, "nu", "--model", "p3", "--class", "O(h)", "--alpha", "1", "--beta", "1")
    assert data["nu"] == "+inf"


def test_beta_bar(capsys):
    data = run_json(capsys, "beta-bar", "--model", "blowup-p3-point", "--class", "O(h)")
    assert data["beta_bar"] == "4/7 - 1/7*sqrt(2)"
    assert data["beta_plus"] == "4/7 + 1/7*sqrt(2)"
    assert data["discriminant"] == "2"


def test_check_bmt(capsys):
    data = run_json(
        capsys, "check-bmt", "--model", "blowup-p3-point", "--class", "O_e", "--gamma", "1/48(h^2+2e^2)", "--beta", "1/2"
    )
    assert data["gamma_inequality"] == "0" and data["holds"] is True
    data = run_json(capsys, "check-bmt", "--model", "blowup-p3-point", "--class", "O(-h)", "--gamma", "1/48(h^2+2e^2)")
    # m = -1 at beta-bar: -(3/98 + 2/147 sqrt 2) + 1/48
    assert data["gamma_inequality"] == "-23/2352 - 2/147*sqrt(2)"
    code, out, _ = run(capsys, "check-bmt", "--model", "p3", "--class", "O", "--grid", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "alpha,beta,gamma_inequality,q_form" and len(lines) == 1 + 3 * 5


def test_li_check(capsys):
    data = run_json(capsys, "li-check", "--model", "blowup-p3-point", "--class", "O(h)")
    assert data == {"status": "satisfied", "ratio": "2/49", "threshold": "1/49"}
    assert run_json(capsys, "li-check", "--model", "p3", "--class", "O")["status"] == "exempt"


def test_chi(capsys):
    data = run_json(capsys, "chi", "--model", "p3", "--class", "O(h)")
    assert data["chi"] == "4"
    assert data["frobenius_polynomial"] == ["1/6", "1", "11/6", "1"]
    data = run_json(capsys, "chi", "--model", "p1xp2", "--class", "O(2h)", "--pair", "O(h)")
    assert data["chi"] == "6" and data["chi_pair"] == "3"


def test_frobenius(capsys):
    code, out, _ = run(capsys, "frobenius-decompose", "--model", "p1xp2", "--m", "3")
    assert code == 0
    rows = out.strip().splitlines()
    assert rows[0] == "h,f,eta"
    table = {tuple(r.split(",")[:2]): int(r.split(",")[2]) for r in rows[1:]}
    assert table == {("0", "0"): 1, ("0", "1"): 2, ("1", "0"): 7, ("1", "1"): 14, ("2", "0"): 1, ("2", "1"): 2}
    code2, out2, _ = run(capsys, "frobenius-decompose", "--model", "p1xp2", "--m", "3", "--method", "enumerate")
    assert out2 == out
    assert run(capsys, "frobenius-decompose", "--model", "quadric-q3", "--m", "2")[0] == 1
    assert run(capsys, "frobenius-decompose", "--model", "p1xp2", "--m", "0")[0] == 1


def test_verify_paper(capsys):
    code, out, _ = run(capsys, "verify-paper")
    assert code == 0
    assert "FAIL" not in out
    assert out.strip().splitlines()[-1].endswith("checks passed")


def test_plot_walls(capsys, tmp_path):
    svg, csv = tmp_path / "w.svg", tmp_path / "w.csv"
    code, _, _ = run(
        capsys, "plot-walls", "--model", "blowup-p3-point", "--v", "O(2h)", "--w", "O(2h-e)", "--out", str(svg), "--csv", str(csv)
    )
    assert code == 0
    text = svg.read_text()
    assert text.startswith("<svg") and "<path" in text and "<polyline" in text
    assert csv.read_text().splitlines() == ["w,kind,beta,center,radius_sq", '"O(2h-e)",semicircle,,1/2,1/4']
    code, out, _ = run(capsys, "plot-walls", "--model", "blowup-p3-point", "--v", "O(h)")
    assert code == 0 and out.startswith("<svg")


@pytest.mark.parametrize(
    "argv",
    [
        ["nu", "--model", "nosuch", "--class", "O", "--alpha", "1", "--beta", "0"],
        ["nu", "--model", "p3", "--class", "O(q)", "--alpha", "1", "--beta", "0"],
        ["nu", "--model", "p3", "--class", "O", "--alpha", "0", "--beta", "0"],
        ["beta-bar", "--model", "p3", "--class", "O(h) + O(-h)"],
        ["li-check", "--model", "blowup-p3-point", "--class", "O_e"],
        ["model", "show"],
        ["bogus"],
    ],
)
def test_bad_input_exit_1(capsys, argv):
    assert main(argv) == 1


def test_deterministic(capsys):
    argv = ["check-bmt", "--model", "blowup-p3-point", "--class", "O(2h)", "--grid", "3"]
    first = run(capsys, *argv)
    assert run(capsys, *argv) == first


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "tiltstab", "wall", "--model", "blowup-p3-point", "--v", "O(3h)", "--w", "O(3h-e)"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert json.loads(proc.stdout) == {"kind": "semicircle", "center": "1/2", "radius_sq": "31/28"}
