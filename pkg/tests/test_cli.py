import json

import pytest

from seechart.cli import EXIT_INPUT, EXIT_OK, EXIT_USAGE, cli_main
from seechart.model import from_json, to_json

from conftest import build_bar_svg


@pytest.fixture
def subaru_path(tmp_path, subaru_chart):
    path = tmp_path / "subaru.json"
    path.write_text(to_json(subaru_chart))
    return str(path)


@pytest.fixture
def honduras_path(tmp_path, honduras_chart):
    path = tmp_path / "honduras.json"
    path.write_text(to_json(honduras_chart))
    return str(path)


def test_summarize_short_deterministic(subaru_path, capsys):
    assert cli_main(["summarize", subaru_path, "--length", "short", "--seed", "7"]) == EXIT_OK
    first = capsys.readouterr().out
    cli_main(["summarize", subaru_path, "--length", "short", "--seed", "7"])
    assert capsys.readouterr().out == first
    sentences = [s for s in first.strip().split(". ") if s]
    assert len(sentences) <= 4


def test_summarize_with_selection(subaru_path, capsys):
    assert cli_main(["summarize", subaru_path, "--select", "0-2", "--seed", "1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "3 selected data points" in out
    assert "Jul 2016 to Sep 2016" in out


def test_answer_fig5_sentence(honduras_path, capsys):
    code = cli_main(["answer", honduras_path, "--query", "What is the value of 2011?"])
    assert code == EXIT_OK
    assert capsys.readouterr().out.strip() == (
        "We have found multiple values for Year 2011. "
        "These are, Agriculture is 36.62, Industry is 19.36, Services is 44.02."
    )


def test_deconstruct_svg_file(tmp_path, capsys):
    svg = build_bar_svg(["A", "B"], [[10, 20]], title="T", x_label="cat", y_label="val")
    path = tmp_path / "chart.svg"
    path.write_text(svg)
    assert cli_main(["deconstruct", str(path)]) == EXIT_OK
    body = json.loads(capsys.readouterr().out)
    assert body["warnings"] == []
    spec = from_json(json.dumps(body["chart"]))
    assert spec.series[0].values == (10.0, 20.0)


def test_deconstruct_vegalite_file(tmp_path, fighter_jet_vegalite, capsys):
    path = tmp_path / "spec.json"
    path.write_text(fighter_jet_vegalite)
    assert cli_main(["deconstruct", str(path)]) == EXIT_OK
    body = json.loads(capsys.readouterr().out)
    assert body["chart"]["xAxis"]["label"] == "Country"


def test_insights_and_plan_dumps(subaru_path, capsys):
    assert cli_main(["insights", subaru_path]) == EXIT_OK
    messages = json.loads(capsys.readouterr().out)
    assert messages[0]["category"] == "intro_encoding"
    assert messages[1]["category"] == "extrema_min_max"
    assert messages[1]["salience"] == 0.57

    assert cli_main(["plan", subaru_path, "--length", "short"]) == EXIT_OK
    plan = json.loads(capsys.readouterr().out)
    assert plan["level"] == "short"
    assert len(plan["sentences"]) == 3


def test_usage_error_exit_code(capsys):
    assert cli_main(["summarize"]) == EXIT_USAGE
    capsys.readouterr()
    assert cli_main(["not-a-command"]) == EXIT_USAGE


def test_input_error_exit_code(tmp_path, capsys):
    missing = str(tmp_path / "nope.json")
    assert cli_main(["summarize", missing]) == EXIT_INPUT
    err = capsys.readouterr().err
    assert "error[" in err

    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    assert cli_main(["summarize", str(bad)]) == EXIT_INPUT


def test_no_chart_in_svg_is_input_error(tmp_path, capsys):
    path = tmp_path / "empty.svg"
    path.write_text('<svg xmlns="http://www.w3.org/2000/svg"></svg>')
    assert cli_main(["deconstruct", str(path)]) == EXIT_INPUT
    assert "NoChartFound" in capsys.readouterr().err


def test_templates_flag(tmp_path, subaru_path, capsys):
    from seechart.realizer import default_registry

    pools = {
        key: [{"text": t.text} for t in pool] for key, pool in default_registry()._pools.items()
    }
    pools["intro_bar"] = [
        {"text": "Custom intro one without slots."},
        {"text": "Custom intro two without slots."},
        {"text": "Custom intro three without slots."},
    ]
    path = tmp_path / "templates.json"
    path.write_text(json.dumps(pools))
    assert cli_main(["summarize", subaru_path, "--templates", str(path), "--seed", "0"]) == EXIT_OK
    assert "Custom intro" in capsys.readouterr().out
