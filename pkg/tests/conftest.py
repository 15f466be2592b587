"""Shared fixtures: reference charts with hand-verified facts, plus an SVG
synthesizer that follows highcharts markup conventions for deconstruction
tests."""

from __future__ import annotations

import pytest

from seechart.model import AxisSpec, ChartSpec, ChartType, DataPoint, DataType, Series

# 42 months of car sales, Jul 2016 - Dec 2019. Facts the suite relies on:
# max 829 at "Sep 2018", min 44 at "Aug 2017", sum 10601 (mean 252.4),
# May 2017 == Jan 2018, second highest 740 at "Mar 2018", declining fit.
SUBARU_MONTHS = (
    ["Jul 2016", "Aug 2016", "Sep 2016", "Oct 2016", "Nov 2016", "Dec 2016"]
    + [f"{m} 2017" for m in ["Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"]]
    + [f"{m} 2018" for m in ["Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"]]
    + [f"{m} 2019" for m in ["Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"]]
)
SUBARU_VALUES = [
    290, 150, 520, 280, 240, 210,
    240, 170, 490, 240, 190, 230, 240, 44, 470, 250, 240, 210,
    190, 120, 740, 210, 190, 200, 210, 80, 829, 220, 190, 160,
    130, 90, 370, 150, 120, 140, 150, 70, 330, 160, 140, 708,
]

# 3 employment-share lines over 2009-2019. Means: Services 46.56,
# Agriculture 33.0, Industry 20.38; 2011 values 44.02 / 36.62 / 19.36;
# global min 18.64 at 2010 by Industry; Services max 51.07 at 2016.
HONDURAS_YEARS = [str(y) for y in range(2009, 2020)]
HONDURAS_SERIES = {
    "Agriculture": [36.80, 37.80, 36.62, 35.20, 33.60, 32.20, 30.80, 29.60, 28.80, 29.74, 31.84],
    "Industry": [20.60, 18.64, 19.36, 20.10, 21.10, 22.02, 21.40, 20.50, 20.00, 20.14, 20.32],
    "Services": [42.80, 43.30, 44.02, 44.70, 45.40, 46.30, 47.20, 51.07, 50.10, 49.43, 47.84],
}


def make_series(pairs, name=None) -> Series:
    return Series(tuple(DataPoint(c, float(v)) for c, v in pairs), name)


def make_chart(chart_type, pairs_by_series, title="", x_label="x", y_label="y", x_type=DataType.NOMINAL) -> ChartSpec:
    series = tuple(make_series(pairs, name) for name, pairs in pairs_by_series)
    return ChartSpec(
        chart_type,
        title,
        AxisSpec(x_label, x_type),
        AxisSpec(y_label, DataType.QUANTITATIVE),
        series,
    )


@pytest.fixture
def subaru_chart() -> ChartSpec:
    return make_chart(
        ChartType.BAR,
        [(None, list(zip(SUBARU_MONTHS, SUBARU_VALUES)))],
        title="Subaru car sales in the United Kingdom ( UK ) 2016 to 2019",
        x_label="Month",
        y_label="Units sold",
    )


@pytest.fixture
def honduras_chart() -> ChartSpec:
    return make_chart(
        ChartType.MULTI_LINE,
        [(name, list(zip(HONDURAS_YEARS, values))) for name, values in HONDURAS_SERIES.items()],
        title="Honduras: distribution of employment by economic sector",
        x_label="Year",
        y_label="Share of total employment",
    )


@pytest.fixture
def fighter_jet_vegalite() -> str:
    import json

    return json.dumps(
        {
            "title": "Number of Fighter Jet by Country",
            "mark": "bar",
            "encoding": {
                "x": {"field": "Country", "type": "nominal"},
                "y": {"field": "Number of Fighter Jet", "type": "quantitative"},
            },
            "data": {
                "values": [
                    {"Country": "USA", "Number of Fighter Jet": 2740},
                    {"Country": "Russia", "Number of Fighter Jet": 1319},
                    {"Country": "China", "Number of Fighter Jet": 1571},
                ]
            },
        }
    )


# --- SVG synthesis ----------------------------------------------------------

PLOT_TOP = 50.0
PLOT_BOTTOM = 350.0
PLOT_LEFT = 60.0
PLOT_RIGHT = 560.0


def _pos(value: float, vmin: float, vmax: float) -> float:
    """Pixel y for a data value under a linear axis (SVG y grows downward)."""
    return PLOT_BOTTOM - (value - vmin) / (vmax - vmin) * (PLOT_BOTTOM - PLOT_TOP)


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _axis_blocks(title, x_label, y_label, categories, tick_values, vmin, vmax):
    parts = [f'<text class="highcharts-title" x="300" y="24">{_esc(title)}</text>']
    parts.append(
        f'<g class="highcharts-axis highcharts-xaxis"><text class="highcharts-axis-title" x="300" y="395">{_esc(x_label)}</text></g>'
    )
    parts.append(
        f'<g class="highcharts-axis highcharts-yaxis"><text class="highcharts-axis-title" x="14" y="200">{_esc(y_label)}</text></g>'
    )
    n = len(categories)
    step = (PLOT_RIGHT - PLOT_LEFT) / max(n, 1)
    labels = "".join(
        f'<text x="{PLOT_LEFT + (j + 0.5) * step:.1f}" y="370">{_esc(c)}</text>'
        for j, c in enumerate(categories)
    )
    parts.append(f'<g class="highcharts-axis-labels highcharts-xaxis-labels">{labels}</g>')
    ticks = "".join(
        f'<text x="40" y="{_pos(v, vmin, vmax):.4f}">{v:g}</text>' for v in tick_values
    )
    parts.append(f'<g class="highcharts-axis-labels highcharts-yaxis-labels">{ticks}</g>')
    return parts


def build_bar_svg(
    categories,
    values_by_series,
    title="Chart",
    x_label="Category",
    y_label="Value",
    series_names=None,
    with_labels=True,
    vmax=None,
    tick_count=5,
):
    """Highcharts-convention SVG for a (possibly grouped) vertical bar chart."""
    flat = [v for vs in values_by_series for v in vs]
    vmin = 0.0
    vmax = float(vmax if vmax is not None else max(max(flat), 1))
    ticks = [vmin + (vmax - vmin) * i / (tick_count - 1) for i in range(tick_count)]
    n = len(categories)
    step = (PLOT_RIGHT - PLOT_LEFT) / n
    bar_w = step / (len(values_by_series) + 1)

    parts = ['<svg xmlns="http://www.w3.org/2000/svg" width="600" height="400">']
    parts += _axis_blocks(title, x_label, y_label, categories, ticks, vmin, vmax)

    # series marks live under a translated group to exercise transform handling
    ox, oy = 8.0, 4.0
    series_parts = []
    for s_i, values in enumerate(values_by_series):
        rects = []
        for j, v in enumerate(values):
            x = PLOT_LEFT + j * step + (s_i + 0.5) * bar_w - ox
            top = _pos(v, vmin, vmax) - oy
            height = PLOT_BOTTOM - _pos(v, vmin, vmax)
            rects.append(
                f'<rect x="{x:.4f}" y="{top:.4f}" width="{bar_w:.2f}" height="{height:.4f}"/>'
            )
        series_parts.append(
            f'<g class="highcharts-series highcharts-series-{s_i} highcharts-column-series">{"".join(rects)}</g>'
        )
    parts.append(
        f'<g class="highcharts-series-group" transform="translate({ox:g},{oy:g})">{"".join(series_parts)}</g>'
    )

    if with_labels:
        for s_i, values in enumerate(values_by_series):
            texts = "".join(
                f'<text x="{PLOT_LEFT + j * step + (s_i + 0.5) * bar_w:.1f}" y="{_pos(v, vmin, vmax) - 6:.1f}">{v:g}</text>'
                for j, v in enumerate(values)
            )
            parts.append(f'<g class="highcharts-data-labels highcharts-series-{s_i}">{texts}</g>')

    if series_names:
        items = "".join(
            f'<g class="highcharts-legend-item"><text>{_esc(name)}</text></g>' for name in series_names
        )
        parts.append(f'<g class="highcharts-legend">{items}</g>')

    parts.append("</svg>")
    return "".join(parts)


def build_line_svg(
    categories,
    values_by_series,
    title="Chart",
    x_label="Category",
    y_label="Value",
    series_names=None,
    with_labels=False,
    vmax=None,
    vmin=None,
    tick_count=5,
):
    """Highcharts-convention SVG for a (possibly multi-series) line chart."""
    flat = [v for vs in values_by_series for v in vs]
    vmin = float(vmin if vmin is not None else min(min(flat), 0))
    vmax = float(vmax if vmax is not None else max(max(flat), 1))
    ticks = [vmin + (vmax - vmin) * i / (tick_count - 1) for i in range(tick_count)]
    n = len(categories)
    step = (PLOT_RIGHT - PLOT_LEFT) / max(n - 1, 1)

    parts = ['<svg xmlns="http://www.w3.org/2000/svg" width="600" height="400">']
    parts += _axis_blocks(title, x_label, y_label, categories, ticks, vmin, vmax)

    series_parts = []
    for s_i, values in enumerate(values_by_series):
        coords = " L ".join(
            f"{PLOT_LEFT + j * step:.4f} {_pos(v, vmin, vmax):.4f}" for j, v in enumerate(values)
        )
        series_parts.append(
            f'<g class="highcharts-series highcharts-series-{s_i} highcharts-line-series">'
            f'<path class="highcharts-graph" d="M {coords}" fill="none"/></g>'
        )
    parts.append(f'<g class="highcharts-series-group">{"".join(series_parts)}</g>')

    if with_labels:
        for s_i, values in enumerate(values_by_series):
            texts = "".join(
                f'<text x="{PLOT_LEFT + j * step:.1f}" y="{_pos(v, vmin, vmax) - 6:.1f}">{v:g}</text>'
                for j, v in enumerate(values)
            )
            parts.append(f'<g class="highcharts-data-labels highcharts-series-{s_i}">{texts}</g>')

    if series_names:
        items = "".join(
            f'<g class="highcharts-legend-item"><text>{_esc(name)}</text></g>' for name in series_names
        )
        parts.append(f'<g class="highcharts-legend">{items}</g>')

    parts.append("</svg>")
    return "".join(parts)


def build_pie_svg(slices, title="Chart", y_label="Share"):
    """Pie chart SVG: slice paths plus "Name: value" data labels."""
    paths = "".join(
        '<path d="M 300 200 L 360 200 A 60 60 0 0 1 300 260 Z"/>' for _ in slices
    )
    labels = "".join(
        f'<text x="{420 + 10 * i}" y="{80 + 18 * i}">{_esc(name)}: {value:g}</text>'
        for i, (name, value) in enumerate(slices)
    )
    return (
        '<svg xmlns="http://www.w3.org/2000/svg" width="600" height="400">'
        f'<text class="highcharts-title" x="300" y="24">{_esc(title)}</text>'
        f'<g class="highcharts-series-group"><g class="highcharts-series highcharts-series-0 highcharts-pie-series">{paths}</g></g>'
        f'<g class="highcharts-data-labels highcharts-series-0">{labels}</g>'
        "</svg>"
    )
