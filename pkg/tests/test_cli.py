import json
import subprocess
import sys

import pytest

from regtri.cli import main
from regtri.io import load, save
from regtri.mesh import with_extra_edges


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def hyp_file(tmp_path, capsys):
    path = tmp_path / "h.json"
    assert run(capsys, "generate", "--model", "hyperbolic", "--alpha", 0.45, "--layers", 12, "--out", path)[0] == 0
    return path


def test_generate_sphere(tmp_path, capsys):
    code, out, _ = run(capsys, "generate", "--model", "sphere", "--k", 5, "--out", tmp_path / "ico.json")
    assert code == 0
    assert out.startswith("V=12 E=30 F=20 max_edge=1.10714871779409")


def test_generate_hyperbolic_summary(hyp_file, capsys):
    m = load(hyp_file)
    assert m.n_vertices == 1 + 3 * 12 * 13


@pytest.mark.parametrize(
    "argv, needle",
    [
        (["--model", "euclidean", "--k", 5, "--layers", 3], "k <= 5"),
        (["--model", "hyperbolic", "--alpha", 0.6, "--layers", 3], "(0, 0.5)"),
        (["--model", "hyperbolic", "--alpha", 0.0, "--layers", 3], "(0, 0.5)"),
        (["--model", "hyperbolic", "--k", 7, "--layers", 3], "6-regular"),
        (["--model", "hyperbolic"], "--layers"),
        (["--model", "sphere", "--k", 6], "k in (3, 4, 5)"),
        (["--model", "sphere", "--k", 4, "--layers", 2], "only --k"),
        (["--model", "euclidean", "--k", 7], "--layers"),
        (["--model", "euclidean", "--k", 7, "--layers", 3, "--alpha", 0.3], "hyperbolic model only"),
        (["--model", "euclidean", "--k", 7, "--layers", 30], "max_vertices"),
    ],
)
def test_generate_usage_errors(tmp_path, capsys, argv, needle):
    code, _, err = run(capsys, "generate", *argv, "--out", tmp_path / "x.json")
    assert code == 2
    assert needle in err
    assert not (tmp_path / "x.json").exists()


def test_generate_schedule_failure(tmp_path, capsys):
    code, _, err = run(capsys, "generate", "--model", "hyperbolic", "--bootstrap", "none", "--layers", 5, "--out", tmp_path / "x.json")
    assert code == 3
    assert "first passing layer: 2" in err


def test_validate_all(hyp_file, capsys):
    code, out, _ = run(capsys, "validate", hyp_file)
    assert code == 0
    reports = [json.loads(line) for line in out.splitlines()]
    assert [r["check"] for r in reports] == ["degree", "crossing", "euler", "disk"]
    assert all(r["passed"] for r in reports)


def test_validate_injected_crossing(hyp_file, tmp_path, capsys):
    bad = tmp_path / "bad.json"
    save(with_extra_edges(load(hyp_file), [(7, 9)]), bad)
    code, out, _ = run(capsys, "validate", bad, "--checks", "crossing")
    assert code == 1
    rep = json.loads(out)
    assert not rep["passed"]
    assert any([7, 9] in v[1]["edges"] for v in rep["violations"])


def test_validate_closed_on_disk_fails(hyp_file, capsys):
    code, out, _ = run(capsys, "validate", hyp_file, "--checks", "closed")
    assert code == 1
    assert "boundary" in json.loads(out)["violations"][0][1]["error"]


def test_validate_sphere(tmp_path, capsys):
    p = tmp_path / "s.json"
    run(capsys, "generate", "--model", "sphere", "--k", 4, "--out", p)
    code, out, _ = run(capsys, "validate", p)
    assert code == 0
    assert [json.loads(x)["check"] for x in out.splitlines()] == ["degree", "euler", "closed"]


@pytest.mark.parametrize("content", ['{"header": {"format_', "", "not json"])
def test_validate_malformed(tmp_path, capsys, content):
    p = tmp_path / "t.json"
    p.write_text(content)
    assert run(capsys, "validate", p)[0] == 2


def test_validate_unknown_check(hyp_file, capsys):
    assert run(capsys, "validate", hyp_file, "--checks", "degree,shape")[0] == 2


def test_validate_missing_file(tmp_path, capsys):
    assert run(capsys, "validate", tmp_path / "nope.json")[0] == 2


def test_stats_csv(hyp_file, capsys):
    code, out, _ = run(capsys, "stats", hyp_file, "--by", "layer")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "layer,etype,count,min,max,mean,min_angle,area"


def test_stats_fit_json(hyp_file, capsys):
    code, out, _ = run(capsys, "stats", hyp_file, "--fit", "type1", "--range", "3:12", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["fit"]["range"] == [3, 12]
    assert doc["fit"]["exponent"] < 0


@pytest.mark.parametrize("kind, expected", [("margin-lhs", -1.0), ("margin-rhs", -1.1)])
def test_stats_margin_fit(hyp_file, capsys, kind, expected):
    code, out, _ = run(capsys, "stats", hyp_file, "--fit", kind, "--range", "4:12")
    assert code == 0
    fit_row = out.splitlines()[-1].split(",")
    assert fit_row[0] == "fit"
    assert float(fit_row[2]) == pytest.approx(expected, abs=0.15)


def test_stats_sphere_single_row(tmp_path, capsys):
    p = tmp_path / "s.json"
    run(capsys, "generate", "--model", "sphere", "--k", 5, "--out", p)
    code, out, _ = run(capsys, "stats", p)
    rows = out.splitlines()[1:]
    assert code == 0 and len(rows) == 1
    cells = rows[0].split(",")
    assert float(cells[3]) == pytest.approx(float(cells[4]), rel=1e-15)


@pytest.mark.parametrize("rng", ["10:5", "0:5", "a:b", "5"])
def test_stats_bad_range(hyp_file, capsys, rng):
    assert run(capsys, "stats", hyp_file, "--range", rng)[0] == 2


def test_render(hyp_file, tmp_path, capsys):
    k, p = tmp_path / "k.svg", tmp_path / "p.svg"
    assert run(capsys, "render", hyp_file, "--out", k)[0] == 0
    assert run(capsys, "render", hyp_file, "--disk-model", "poincare", "--stroke-width", 0.003, "--out", p)[0] == 0
    assert "<path" in p.read_text() and "<path" not in k.read_text()
    assert 'stroke-width="0.003"' in p.read_text()


def test_render_sphere_is_usage_error(tmp_path, capsys):
    s = tmp_path / "s.json"
    run(capsys, "generate", "--model", "sphere", "--k", 3, "--out", s)
    assert run(capsys, "render", s, "--out", tmp_path / "s.svg")[0] == 2


def test_determinism(tmp_path, capsys):
    outs = []
    for i in range(2):
        mf, svg = tmp_path / f"m{i}.json", tmp_path / f"m{i}.svg"
        run(capsys, "generate", "--model", "euclidean", "--k", 8, "--layers", 3, "--out", mf)
        run(capsys, "render", mf, "--out", svg)
        outs.append((mf.read_bytes(), svg.read_bytes()))
    assert outs[0] == outs[1]


def test_console_entry_point(tmp_path):
    out = tmp_path / "o.json"
    r = subprocess.run(
        [sys.executable, "-m", "regtri.cli", "generate", "--model", "sphere", "--k", "3", "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert r.returncode == 0 and r.stdout.startswith("V=4 E=6 F=4")
    r = subprocess.run([sys.executable, "-m", "regtri.cli", "frobnicate"], capture_output=True, text=True)
    assert r.returncode == 2
