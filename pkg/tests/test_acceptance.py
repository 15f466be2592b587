"""Acceptance suite: one test per release criterion, each printing a
pass line. Tolerances are pinned here and nowhere else."""

import itertools
import json
import math
import random
import time

from fastapi.testclient import TestClient

from seechart import insights, pipeline
from seechart.cli import EXIT_OK, cli_main
from seechart.deconstruct import deconstruct_svg, ingest_vegalite
from seechart.insights import Category, InsightMessage, compute_changes
from seechart.model import ChartType, DataPoint, DataType, Series, to_dict, to_json
from seechart.planner import LengthLevel, rank
from seechart.query import Selection, answer, parse_query
from seechart.realizer import RealizationContext, realize
from seechart.service import create_app

from conftest import build_bar_svg, build_line_svg, make_chart, make_series


def _passed(name):
    print(f"[PASS] {name}")


# 1 ---------------------------------------------------------------------------


def test_subaru_fixture_reproduction(subaru_chart):
    start = time.perf_counter()
    moderate = pipeline.summarize(subaru_chart, LengthLevel.MODERATE, seed=7).text
    long_ = pipeline.summarize(subaru_chart, LengthLevel.LONG, seed=7).text
    elapsed = time.perf_counter() - start

    for token in ("829", "Sep 2018", "44", "Aug 2017", "785"):
        assert token in moderate, f"moderate summary must state {token!r}: {moderate}"
    for token in ("829", "Sep 2018", "44", "Aug 2017", "785", "252.4", "10601"):
        assert token in long_, f"long summary must state {token!r}: {long_}"
    assert elapsed < 1.0, f"summaries took {elapsed:.3f}s"
    _passed("subaru fixture reproduction (moderate + long, < 1s)")


# 2 ---------------------------------------------------------------------------

_RANKING_CASES = {
    # feed order keeps tie groups in corpus-table row order; everything else shuffled
    ChartType.BAR: (
        [
            Category.DERIVED_VALUE,
            Category.COMPARISON_ABSOLUTE,
            Category.EXTREMA_MIN_MAX,
            Category.ORDER_RANK,
            Category.COMPARISON_RELATIVE,
            Category.TREND_GLOBAL,
        ],
        [
            Category.EXTREMA_MIN_MAX,
            Category.COMPARISON_RELATIVE,
            Category.ORDER_RANK,
            Category.TREND_GLOBAL,
            Category.DERIVED_VALUE,
            Category.COMPARISON_ABSOLUTE,
        ],
    ),
    ChartType.LINE: (
        [
            Category.MAX_DIFFERENCE,
            Category.EXTREMA_MIN_MAX,
            Category.TREND_GLOBAL,
            Category.TREND_LOCAL,
            Category.COMPARISON_RELATIVE,
            Category.COMPARISON_ABSOLUTE,
        ],
        [
            Category.TREND_GLOBAL,
            Category.TREND_LOCAL,
            Category.EXTREMA_MIN_MAX,
            Category.COMPARISON_RELATIVE,
            Category.COMPARISON_ABSOLUTE,
            Category.MAX_DIFFERENCE,
        ],
    ),
    ChartType.GROUPED_BAR: (
        [
            Category.LOCAL_EXTREMA,
            Category.ORDER_RANK,
            Category.TREND_LOCAL,
            Category.COMPARISON_RELATIVE,
            Category.MAX_DIFFERENCE,
            Category.TREND_GLOBAL,
            Category.GLOBAL_EXTREMA,
        ],
        [
            Category.GLOBAL_EXTREMA,
            Category.TREND_GLOBAL,
            Category.COMPARISON_RELATIVE,
            Category.MAX_DIFFERENCE,
            Category.TREND_LOCAL,
            Category.ORDER_RANK,
            Category.LOCAL_EXTREMA,
        ],
    ),
    ChartType.MULTI_LINE: (
        [
            Category.COMPARISON_RELATIVE,
            Category.LOCAL_EXTREMA,
            Category.GLOBAL_EXTREMA,
            Category.ORDER_RANK,
            Category.TREND_GLOBAL,
        ],
        [
            Category.TREND_GLOBAL,
            Category.ORDER_RANK,
            Category.GLOBAL_EXTREMA,
            Category.LOCAL_EXTREMA,
            Category.COMPARISON_RELATIVE,
        ],
    ),
}
_RANKING_CASES[ChartType.PIE] = _RANKING_CASES[ChartType.BAR]
_RANKING_CASES[ChartType.STACKED_BAR] = _RANKING_CASES[ChartType.GROUPED_BAR]


def test_ranking_conformance():
    for chart_type, (feed, expected) in _RANKING_CASES.items():
        messages = [InsightMessage(Category.INTRO_ENCODING, {})] + [
            InsightMessage(c, {}) for c in feed
        ]
        ranked = rank(messages, chart_type)
        got = [m.category for m in ranked[1:]]
        assert got == expected, f"{chart_type}: {got}"
    # spot checks called out by the criterion
    bar = [m.category for m in rank([InsightMessage(c, {}) for c in _RANKING_CASES[ChartType.BAR][0]], ChartType.BAR)]
    assert bar.index(Category.EXTREMA_MIN_MAX) < bar.index(Category.COMPARISON_RELATIVE) < bar.index(Category.ORDER_RANK)
    ml = [m.category for m in rank([InsightMessage(c, {}) for c in _RANKING_CASES[ChartType.MULTI_LINE][0]], ChartType.MULTI_LINE)]
    assert ml.index(Category.TREND_GLOBAL) < ml.index(Category.ORDER_RANK)
    _passed("corpus-frequency ranking conformance (all chart types, exact order)")


# 3 ---------------------------------------------------------------------------


def _random_chart(rng):
    chart_type = rng.choice(list(ChartType))
    n = rng.randint(1 if not chart_type.is_multi_series else 2, 12)
    categories = [f"cat{i}" for i in range(n)]
    n_series = rng.randint(2, 4) if chart_type.is_multi_series else 1
    series = []
    for s in range(n_series):
        values = [float(rng.randint(0, 500)) for _ in range(n)]
        series.append((f"series {s + 1}" if n_series > 1 else None, list(zip(categories, values))))
    return make_chart(chart_type, series)


def test_length_monotonicity():
    from seechart import planner

    rng = random.Random(2024)
    for _ in range(50):
        spec = _random_chart(rng)
        ranked = pipeline.analyze_and_rank(spec)
        plans = {level: planner.plan(ranked, level) for level in LengthLevel}
        counts = {level: len(p.sentences) for level, p in plans.items()}
        assert counts[LengthLevel.SHORT] <= 4
        assert counts[LengthLevel.SHORT] <= counts[LengthLevel.MODERATE] <= counts[LengthLevel.LONG]
        ids = {
            level: {id(m) for s in p.sentences for m in s.messages} for level, p in plans.items()
        }
        assert ids[LengthLevel.SHORT] <= ids[LengthLevel.MODERATE] <= ids[LengthLevel.LONG]
        assert ranked  # analysis produced content for every random chart
    _passed("length monotonicity over 50 randomized charts")


# 4 ---------------------------------------------------------------------------


def test_oracle_equivalence_sweep():
    """Exhaustive: every series of length <= 8 over values {0..5}; zero mismatches."""
    cats = [f"c{i}" for i in range(8)]
    points = [[DataPoint(cats[i], float(v)) for v in range(6)] for i in range(8)]
    checked = 0
    for n in range(1, 9):
        for values in itertools.product(range(6), repeat=n):
            series = Series(tuple(points[i][v] for i, v in enumerate(values)))

            # extrema: first-occurrence max and min
            max_i = values.index(max(values))
            min_i = values.index(min(values))
            ex = insights.extrema(series)
            assert ex.params["max_category"] == cats[max_i] and ex.params["max_value"] == values[max_i]
            assert ex.params["min_category"] == cats[min_i] and ex.params["min_value"] == values[min_i]

            if n >= 2:
                brute_gap = max(abs(a - b) for a in values for b in values)
                assert insights.max_difference(series).params["difference"] == brute_gap

            k = min(3, n)
            order = insights.order_rank(series, k)
            remaining = list(range(n))
            brute_top = []
            for _ in range(k):
                best = max(remaining, key=lambda i: (values[i], -i))
                brute_top.append(best)
                remaining.remove(best)
            assert order.params["top_categories"] == tuple(cats[i] for i in brute_top)

            derived = insights.derived_values(series)
            assert derived.params["sum"] == sum(values)
            assert derived.params["mean"] == round(sum(values) / n, 1)

            groups = {}
            for i, v in enumerate(values):
                groups.setdefault(v, []).append(cats[i])
            brute_groups = {v: tuple(cs) for v, cs in groups.items() if len(cs) >= 2}
            same = insights.same_values(series)
            if not brute_groups:
                assert same is None
            else:
                assert {v: cs for v, cs in same.params["groups"]} == brute_groups

            checked += 1
    assert checked == sum(6**n for n in range(1, 9))
    _passed(f"oracle equivalence sweep ({checked} series, zero mismatches)")


# 5 ---------------------------------------------------------------------------


def test_slope_normalization():
    rng = random.Random(99)
    for _ in range(1000):
        n = rng.randint(2, 40)
        values = [rng.uniform(-1000.0, 1000.0) for _ in range(n)]
        base = compute_changes(make_series(list(zip(map(str, range(n)), values))))
        assert all(0.0 <= c <= 1.0 for c in base)
        if any(a != b for a, b in zip(values, values[1:])):
            assert max(base) == 1.0
        for c in (0.5, 3.0, 100.0):
            scaled = compute_changes(
                make_series([(str(i), v * c) for i, v in enumerate(values)])
            )
            assert all(abs(a - b) <= 1e-12 for a, b in zip(base, scaled))
    _passed("slope normalization: bounds, scale invariance (1e-12), unit max")


# 6 ---------------------------------------------------------------------------


def test_percent_change_formatting():
    spec = make_chart(
        ChartType.LINE,
        [(None, [("1985", 3.7), ("1986", 14.2), ("1987", 1.0)])],
        x_label="Year",
        y_label="Inflation rate",
    )
    rendered = pipeline.summarize(spec, LengthLevel.LONG, seed=0).text
    assert "283.78%" in rendered
    segments = insights.local_trends(spec.series[0])
    assert segments[0].percent_change == 283.78
    _passed('percent-change formatting: 3.7 -> 14.2 renders "283.78%"')


# 7 ---------------------------------------------------------------------------


def test_realization_determinism_and_variation(subaru_chart):
    plan = pipeline.build_plan(subaru_chart, LengthLevel.MODERATE)
    ctx = RealizationContext.for_chart(subaru_chart, 42)
    first = realize(plan, ctx).text
    for _ in range(100):
        assert realize(plan, ctx).text == first

    intros = {
        realize(plan, RealizationContext.for_chart(subaru_chart, seed)).sentences[0]
        for seed in range(100)
    }
    assert "This is a bar chart representing 42 Months in the x axis and Units sold in the y axis." in intros
    assert (
        "This bar chart has 42 columns on the x axis representing Month, and Units sold in each Month on the y axis."
        in intros
    )
    assert "This is a bar chart. It shows Units sold for 42 number of Months." in intros
    _passed("realization determinism (100 repeats) + all three intro variants over seeds 0..99")


# 8 ---------------------------------------------------------------------------


def test_query_answering_multi_value(honduras_chart):
    result = answer(honduras_chart, parse_query("What is the value of 2011?", honduras_chart))
    assert result.spoken_text == (
        "We have found multiple values for Year 2011. "
        "These are, Agriculture is 36.62, Industry is 19.36, Services is 44.02."
    )
    _passed("query answering: exact multi-value sentence for Year 2011")


# 9 ---------------------------------------------------------------------------


def _fact_set(plan):
    out = set()
    for sentence in plan.sentences:
        for m in sentence.messages:
            if m.category is Category.INTRO_ENCODING:
                continue
            out.add((m.category, tuple(sorted((k, str(v)) for k, v in m.params.items()))))
    return out


def test_selection_pipeline(honduras_chart):
    all_points = Selection.cross_series(range(11), 3)
    full_plan = pipeline.build_plan(honduras_chart, LengthLevel.LONG)
    selection_plan = pipeline.build_selection_plan(honduras_chart, all_points, LengthLevel.LONG)
    assert _fact_set(full_plan) == _fact_set(selection_plan)

    years = honduras_chart.categories
    selected = ("2012", "2013", "2014")
    sel = Selection.cross_series([years.index(y) for y in selected], 3)
    unselected = [y for y in years if y not in selected]
    for seed in range(10):
        text = pipeline.summarize_selection(honduras_chart, sel, LengthLevel.LONG, seed).text
        for year in unselected:
            assert year not in text, f"unselected {year} leaked into: {text}"
    _passed("selection pipeline: full selection = full facts; partial references only selected categories")


# 10 --------------------------------------------------------------------------


def test_deconstruction_round_trip():
    rng = random.Random(7)
    for i in range(30):
        n = rng.randint(2, 10)
        categories = [f"c{j}" for j in range(n)]
        values = [float(rng.randint(0, 500)) for _ in range(n)]
        with_labels = rng.random() < 0.5
        if rng.random() < 0.5:
            svg = build_bar_svg(categories, [values], with_labels=with_labels, vmax=500)
        else:
            svg = build_line_svg(categories, [values], with_labels=with_labels, vmax=500, vmin=0)
        spec = deconstruct_svg(svg)
        got = spec.series[0].values
        assert len(got) == n
        span = max(values) - min(values) or 1.0
        for expected, actual in zip(values, got):
            if with_labels:
                assert actual == expected
            else:
                assert abs(actual - expected) <= 0.01 * span

    fig3 = ingest_vegalite(
        json.dumps(
            {
                "mark": "bar",
                "encoding": {
                    "x": {"field": "Country", "type": "nominal"},
                    "y": {"field": "Number of Fighter Jet", "type": "quantitative"},
                },
                "data": {"values": [{"Country": "USA", "Number of Fighter Jet": 2740}]},
            }
        )
    )
    assert fig3.x_axis.label == "Country" and fig3.x_axis.data_type is DataType.NOMINAL
    assert fig3.y_axis.label == "Number of Fighter Jet" and fig3.y_axis.data_type is DataType.QUANTITATIVE
    _passed("deconstruction round-trip: 30 synthesized SVGs within 1% (exact with labels) + declarative ingestion")


# 11 --------------------------------------------------------------------------


def test_service_contract(tmp_path, capsys):
    n = 1000
    spec = make_chart(
        ChartType.BAR,
        [(None, [(f"cat{i}", float((i * 37) % 997)) for i in range(n)])],
        title="Big chart",
        x_label="Bucket",
        y_label="Count",
    )
    path = tmp_path / "big.json"
    path.write_text(to_json(spec))

    assert cli_main(["summarize", str(path), "--length", "moderate", "--seed", "9"]) == EXIT_OK
    cli_text = capsys.readouterr().out.rstrip("\n")

    client = TestClient(create_app())
    response = client.post(
        "/v1/summarize", json={"chart": to_dict(spec), "level": "moderate", "seed": 9}
    )
    assert response.status_code == 200
    assert response.json()["text"] == cli_text

    latencies = []
    for _ in range(20):
        start = time.perf_counter()
        r = client.post("/v1/summarize", json={"chart": to_dict(spec), "level": "long", "seed": 9})
        latencies.append(time.perf_counter() - start)
        assert r.status_code == 200
    latencies.sort()
    p95 = latencies[int(math.ceil(0.95 * len(latencies))) - 1]
    assert p95 < 1.0, f"p95 latency {p95:.3f}s"
    _passed(f"service contract: CLI == HTTP byte-identical; p95 latency {p95 * 1000:.0f}ms at 1000 points")
