import json
import subprocess
import sys

import numpy as np
import pytest

from polyinv.cli import main
from polyinv.polygon import figure_eight_7, read_polygon, write_polygon


@pytest.fixture
def fig8(tmp_path):
    path = tmp_path / "fig8.txt"
    write_polygon(figure_eight_7(), path)
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", 7)
    assert code == 0
    assert "spheres_max=14" in out and "knots_upper=756" in out
    code, out, _ = run(capsys, "bounds", 7, "--json")
    assert json.loads(out)["knots_upper_mobius"] == 1512


def test_crossover(capsys):
    code, out, _ = run(capsys, "crossover")
    assert code == 0
    assert out.splitlines()[0] == "single-inversion: 72, mobius-group: 75"
    assert "5726623061 > upper 5102808336" in out
    rec = json.loads(run(capsys, "crossover", "--json")[1])
    assert (rec["single_inversion"], rec["mobius_group"]) == (72, 75)


def test_classify_pipeline(capsys, fig8):
    code, out, _ = run(capsys, "classify", "--polygon", fig8, "--center", "0,0,0")
    assert code == 0 and out.splitlines()[0] == "unknot"
    code, out, _ = run(capsys, "classify", "--polygon", fig8, "--json", "--seed", 3)
    rec = json.loads(out)
    assert rec["schema"] == 1 and rec["label"] == "figure_eight" and rec["determinant"] == 5
    assert rec["seed"] == 3


def test_classify_is_reproducible(capsys, fig8):
    outs = {run(capsys, "classify", "--polygon", fig8, "--center", "100,100,100", "--json", "--seed", 7)[1] for _ in range(3)}
    assert len(outs) == 1
    assert json.loads(outs.pop())["label"] == "trefoil_LH"


def test_invert_round_trip(capsys, fig8, tmp_path):
    once, twice = tmp_path / "once.txt", tmp_path / "twice.txt"
    assert run(capsys, "invert", "--polygon", fig8, "--center", "1,2,3", "--radius", 4, "-o", once)[0] == 0
    assert run(capsys, "invert", "--polygon", once, "--center", "1,2,3", "--radius", 4, "-o", twice)[0] == 0
    assert np.allclose(read_polygon(twice).vertices, figure_eight_7().vertices, rtol=1e-12, atol=1e-12)


def test_arcs(capsys, fig8):
    code, out, _ = run(capsys, "arcs", "--polygon", fig8, "--center", "50,0,0", "--samples-per-arc", 8)
    assert code == 0
    blocks = out.strip().split("\n\n")
    assert len(blocks) == 7
    assert all(len(b.splitlines()) == 1 + 9 for b in blocks)


def test_spheres_and_regions(capsys, fig8, tmp_path):
    system = tmp_path / "sys.txt"
    code, _, _ = run(capsys, "spheres", "--polygon", fig8, "-o", system)
    assert code == 0
    text = system.read_text()
    assert text.startswith("# ") and "edge pairs" in text
    code, out, _ = run(capsys, "regions", "--system", system, "--json")
    rec = json.loads(out)
    assert rec["region_count_upper"] == 756 and rec["region_count_exact"] <= 756


def test_regions_with_voxel(capsys, tmp_path):
    system = tmp_path / "two.txt"
    system.write_text("S 0 0 0 1\nS 1 0 0 1\n")
    code, out, _ = run(capsys, "regions", "--system", system, "--voxel")
    assert code == 0
    assert "region_count_exact=4" in out and "voxel_count=4" in out


def test_survey_json(capsys, fig8, tmp_path):
    out_path = tmp_path / "report.json"
    argv = ["survey", "--polygon", fig8, "--centers", 20, "--seed", 2, "--near-sphere-offset", 0.05, "--samples-per-sphere", 1]
    assert run(capsys, *argv, "--json", out_path)[0] == 0
    first = out_path.read_text()
    run(capsys, *argv, "--json", out_path)
    assert out_path.read_text() == first
    rec = json.loads(first)
    assert rec["schema"] == 1 and rec["seed"] == 2 and rec["strategy_near_sphere_offset"] == 0.05


def test_exit_codes(capsys, fig8, tmp_path):
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "bounds")[0] == 1
    assert run(capsys, "classify", "--polygon", fig8, "--bogus")[0] == 1
    assert run(capsys, "classify", "--polygon", fig8, "--eps", "-1")[0] == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("0 0 0\n1 0\n0 1 0\n")
    code, _, err = run(capsys, "classify", "--polygon", bad)
    assert code == 2 and "line 2" in err
    assert run(capsys, "classify", "--polygon", tmp_path / "missing.txt")[0] == 2
    two = tmp_path / "two.txt"
    two.write_text("0 0 0\n1 0 0\n")
    code, _, err = run(capsys, "classify", "--polygon", two)
    assert code == 3 and "DegeneratePolygon" in err
    code, _, err = run(capsys, "invert", "--polygon", fig8, "--center=-1,-13,24")
    assert code == 3 and "CenterHit" in err
    sq = tmp_path / "sq.txt"
    sq.write_text("1 1 0\n-1 1 0\n-1 -1 0\n1 -1 0\n")
    code, _, err = run(capsys, "arcs", "--polygon", sq, "--center", "0,1,0")
    assert code == 3 and "DegenerateArc" in err


def test_module_entry_point(fig8):
    proc = subprocess.run([sys.executable, "-m", "polyinv", "bounds", "7"], capture_output=True, text=True)
    assert proc.returncode == 0 and "knots_upper=756" in proc.stdout
