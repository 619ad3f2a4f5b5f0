import json
from fractions import Fraction as F

import pytest

from tropicharge import bundled_config
from tropicharge.cli import main
from tropicharge.codec import dumps, parse_rat, rat
from tropicharge.errors import NothingToRender
from tropicharge.render import render_svg


def run(tmp_path, config, *extra):
    out = tmp_path / "report.json"
    code = main(["run", str(config), "--out", str(out), *extra])
    return code, (json.loads(out.read_text()) if out.exists() else None)


def write_config(tmp_path, data):
    path = tmp_path / "job.json"
    path.write_text(json.dumps(data))
    return path


def test_rational_codec():
    assert rat(F(1, 2)) == "1/2"
    assert rat(3) == "3/1"
    assert parse_rat("-7/3") == F(-7, 3)
    assert parse_rat(2) == 2
    assert dumps({"b": F(1, 3), "a": [1]}) == dumps({"a": [1], "b": F(1, 3)})


def test_p2_line_report(tmp_path):
    code, report = run(tmp_path, bundled_config("p2_line"), "--skip-amoeba")
    assert code == 0
    assert report["passed"] is True
    assert report["invariants"] == {"E": ["1/1", "1/1", "1/1"], "V": "1/2"}
    coeffs = dict((tuple(m), c) for m, c in report["mirror_maps"][0]["coeffs"])
    assert coeffs[(1,)] == "-6/1"
    assert "amoeba" not in report


def test_p3_report(tmp_path):
    code, report = run(tmp_path, bundled_config("p3_two_hyperplanes"))
    assert code == 0
    assert report["intersection_numbers"] == {"N": ["1/1"] * 4, "N_tot": "2/1"}


def test_non_reflexive_config_exits_2(tmp_path, capsys):
    path = write_config(tmp_path, {"fan": [[1, 0], [0, 1], [-1, -3]], "family": [{"divisor": [0, 0, 1]}],
                                   "lambda": ["1"]})
    code, _ = run(tmp_path, path)
    assert code == 2
    assert "invalid" in capsys.readouterr().err


@pytest.mark.parametrize("data", [
    {"fan": [[1, 0], [0, 1], [-1, -1]], "family": [{"divisor": [0, 0, 0]}], "lambda": ["1"]},
    {"fan": [[1, 0], [0, 1], [-1, -1]], "family": [{"divisor": [0, 0, 1]}], "lambda": ["0"]},
    {"fan": [[1, 0], [0, 1], [-1, -1]], "family": [], "lambda": ["1"]},
    {"fan": [[1, 0], [0, 1], [-1, -1]], "lambda": ["1"]},
    {"schema": "other/9", "fan": [[1, 0], [0, 1], [-1, -1]], "family": [{"divisor": [0, 0, 1]}], "lambda": ["1"]},
])
def test_invalid_configs_exit_2(tmp_path, data):
    code, _ = run(tmp_path, write_config(tmp_path, data))
    assert code == 2


def test_missing_config_exits_2(tmp_path):
    code, _ = run(tmp_path, tmp_path / "nope.json")
    assert code == 2


def test_render_p2_line(tmp_path):
    code, report = run(tmp_path, bundled_config("p2_line"), "--skip-amoeba")
    svg = render_svg(report)
    assert svg.count('class="g-trop"') == 1
    assert svg.count('class="vertex"') == 1
    assert svg.count('class="edge"') == 3
    assert svg.count('class="end"') == 3


def test_render_command(tmp_path):
    run(tmp_path, bundled_config("p2_line"), "--skip-amoeba")
    assert main(["render", str(tmp_path / "report.json"), str(tmp_path / "fig.svg")]) == 0
    assert (tmp_path / "fig.svg").read_text().startswith("<svg")


def test_render_rejects_reports_without_plane_data(tmp_path):
    with pytest.raises(NothingToRender):
        render_svg({"fan": {"n": 3}, "curve": {"vertices": [], "edges": []}})
    code, _ = run(tmp_path, bundled_config("p3_two_hyperplanes"))
    assert main(["render", str(tmp_path / "report.json"), str(tmp_path / "fig.svg")]) == 2


def test_render_rejects_unknown_schema(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"schema": "something-else/2"}))
    assert main(["render", str(path), str(tmp_path / "fig.svg")]) == 2


def test_seed_and_order_flags(tmp_path):
    code, report = run(tmp_path, bundled_config("p1xp1_11"), "--skip-amoeba", "--seed", "5", "--order", "3")
    assert code == 0
    assert report["family"]["seed"] == 5
    assert report["truncation_order"] == 3


def test_shrink_is_halved_when_needed(tmp_path):
    data = json.loads(bundled_config("p3_two_hyperplanes").read_text())
    data["shrink"] = "1"
    data.pop("outputs", None)
    code, report = run(tmp_path, write_config(tmp_path, data))
    assert code == 0
    assert report["shrink"]["requested"] == "1/1"
    assert parse_rat(report["shrink"]["used"]) < 1
