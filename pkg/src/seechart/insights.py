"""Statistical insight extraction: turns chart data into structured messages.

Each insight (extrema, comparisons, ranks, derived values, trends, shared
values, overall shape) is emitted as an :class:`InsightMessage` carrying the
parameters its sentence templates will need. Salience stays 0 here; the
planner assigns weights and orders the messages.

Trend characterization works on the per-step slope: the absolute change
from each point to the next, normalized by the largest such change in the
series, so every series maps onto the same [0, 1] salience scale.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from statistics import linear_regression
from typing import Iterable, Mapping

from .model import ChartSpec, ChartType, Series

# Segments whose biggest normalized step falls below this are too flat to report.
LOCAL_TREND_FLOOR = 0.25
# At most this many local-trend messages per series, largest move first.
MAX_LOCAL_TRENDS = 5
# |fitted total change| below this fraction of the value range reads as constant.
CONSTANT_BAND = 0.05
# A series is "zig-zag" when at least this share of steps reverses direction.
ZIGZAG_REVERSAL_RATIO = 0.40


class Category(Enum):
    INTRO_ENCODING = "intro_encoding"
    EXTREMA_MIN_MAX = "extrema_min_max"
    LOCAL_EXTREMA = "local_extrema"
    GLOBAL_EXTREMA = "global_extrema"
    MAX_DIFFERENCE = "max_difference"
    COMPARISON_RELATIVE = "comparison_relative"
    COMPARISON_ABSOLUTE = "comparison_absolute"
    ORDER_RANK = "order_rank"
    TREND_GLOBAL = "trend_global"
    TREND_LOCAL = "trend_local"
    DERIVED_VALUE = "derived_value"
    SAME_VALUE = "same_value"
    SHAPE = "shape"


class Direction(Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    CONSTANT = "constant"


@dataclass(frozen=True)
class InsightMessage:
    """One extracted fact: a category tag plus the slot values its templates use.

    ``salience`` is filled by the ranker (0 until ranked); ``residual`` marks
    messages weighted by the fallback "others" ratio. ``template_key``
    overrides the default template pool for specialized renderings.
    """

    category: Category
    params: Mapping[str, object]
    salience: float = 0.0
    residual: bool = False
    template_key: str | None = None

    def param(self, name: str):
        return self.params[name]


@dataclass(frozen=True)
class TrendSegment:
    """A maximal run of same-direction movement between two point indices."""

    start_index: int
    end_index: int
    direction: Direction
    percent_change: float
    normalized_peak_change: float
    percent_is_absolute_delta: bool = False  # True when the start value is 0


class TooFewPoints(ValueError):
    pass


class KTooLarge(ValueError):
    pass


class CategoryMismatch(ValueError):
    pass


def _fmt_list(items: Iterable[str]) -> str:
    """Join into spoken-English list: "A", "A and B", "A, B, and C"."""
    items = list(items)
    if not items:
        return ""
    if len(items) == 1:
        return items[0]
    if len(items) == 2:
        return f"{items[0]} and {items[1]}"
    return ", ".join(items[:-1]) + f", and {items[-1]}"


def pluralize(label: str) -> str:
    """Naive plural for axis labels ("Month" -> "Months", "Country" -> "Countries")."""
    if not label or label.endswith("s"):
        return label
    if label.endswith("y") and len(label) > 1 and label[-2].lower() not in "aeiou":
        return label[:-1] + "ies"
    return label + "s"


def compute_changes(series: Series) -> list[float]:
    """Normalized per-step change: |v[i+1] - v[i]| divided by the series' largest step.

    Output has length n-1, all entries in [0, 1]; the biggest step maps to
    exactly 1 unless every step is 0 (then all entries are 0).
    """
    values = series.values
    if len(values) < 2:
        raise TooFewPoints("need at least 2 points to compute changes")
    deltas = [abs(values[i + 1] - values[i]) for i in range(len(values) - 1)]
    peak = max(deltas)
    if peak == 0:
        return [0.0] * len(deltas)
    return [d / peak for d in deltas]


def _direction_of(change: float, band: float) -> Direction:
    if abs(change) < band:
        return Direction.CONSTANT
    return Direction.INCREASING if change > 0 else Direction.DECREASING


_DIRECTION_WORDS = {
    Direction.INCREASING: ("increased", "increase", "gradually increasing"),
    Direction.DECREASING: ("decreased", "decrease", "gradually decreasing"),
    Direction.CONSTANT: ("remained roughly constant", "steady run", "roughly constant"),
}


def global_trend(series: Series, value_range: float | None = None) -> InsightMessage:
    """Overall direction of the series from the least-squares slope over point index.

    ``value_range`` is the span the constant band is measured against;
    defaults to the series' own max-min. Multi-series charts pass the
    chart-wide range so near-flat lines read as constant next to the others.
    """
    values = series.values
    n = len(values)
    if n < 2:
        raise TooFewPoints("need at least 2 points for a trend")
    slope, _ = linear_regression(range(n), values)
    fitted_change = slope * (n - 1)
    if value_range is None:
        value_range = max(values) - min(values)
    direction = _direction_of(fitted_change, CONSTANT_BAND * value_range)
    if value_range == 0:
        direction = Direction.CONSTANT
    first, last = values[0], values[-1]
    percent = round((last - first) / abs(first) * 100, 2) if first != 0 else None
    verb, _, gerund = _DIRECTION_WORDS[direction]
    return InsightMessage(
        Category.TREND_GLOBAL,
        {
            "direction": direction.value,
            "direction_verb": verb,
            "direction_gerund": gerund,
            "first_value": first,
            "last_value": last,
            "percent_change": percent if percent is not None else abs(last - first),
            "series_name": series.name or "",
            "scope": "series",
        },
    )


def local_trends(series: Series) -> list[TrendSegment]:
    """Split the series at slope-direction changes into contiguous segments.

    Segments tile [0, n-1]: each starts where the previous one ends. The
    per-segment percent change is end vs start (absolute delta when the
    start value is 0), and ``normalized_peak_change`` is the largest
    normalized step inside the segment.
    """
    values = series.values
    n = len(values)
    if n < 3:
        raise TooFewPoints("need at least 3 points for local trends")
    normalized = compute_changes(series)
    signs = [0 if values[i + 1] == values[i] else (1 if values[i + 1] > values[i] else -1) for i in range(n - 1)]

    segments: list[TrendSegment] = []
    start = 0
    for i in range(1, n):
        last_step = i == n - 1
        if last_step or signs[i] != signs[i - 1]:
            end = i
            v0, v1 = values[start], values[end]
            if v0 != 0:
                percent = round((v1 - v0) / abs(v0) * 100, 2)
                absolute = False
            else:
                percent = round(v1 - v0, 2)
                absolute = True
            sign = signs[start]
            direction = (
                Direction.CONSTANT if sign == 0 else Direction.INCREASING if sign > 0 else Direction.DECREASING
            )
            segments.append(
                TrendSegment(
                    start_index=start,
                    end_index=end,
                    direction=direction,
                    percent_change=percent,
                    normalized_peak_change=max(normalized[start:end]),
                    percent_is_absolute_delta=absolute,
                )
            )
            start = end
    return segments


def local_trend_messages(series: Series) -> list[InsightMessage]:
    """Reportable local trends: segments above the salience floor, biggest move first."""
    segments = [s for s in local_trends(series) if s.normalized_peak_change >= LOCAL_TREND_FLOOR]
    segments.sort(key=lambda s: -s.normalized_peak_change)
    out = []
    for seg in segments[:MAX_LOCAL_TRENDS]:
        verb, noun, _ = _DIRECTION_WORDS[seg.direction]
        out.append(
            InsightMessage(
                Category.TREND_LOCAL,
                {
                    "start_index": seg.start_index,
                    "end_index": seg.end_index,
                    "start_category": series.points[seg.start_index].category,
                    "end_category": series.points[seg.end_index].category,
                    "direction": seg.direction.value,
                    "direction_verb": verb,
                    "direction_noun": noun,
                    "percent_change": seg.percent_change,
                    "percent_is_absolute_delta": seg.percent_is_absolute_delta,
                    "series_name": series.name or "",
                },
            )
        )
    return out


def extrema(series: Series) -> InsightMessage:
    """Maximum and minimum point of the series; ties go to the first occurrence."""
    values = series.values
    max_i = max(range(len(values)), key=lambda i: (values[i], -i))
    min_i = min(range(len(values)), key=lambda i: (values[i], i))
    return InsightMessage(
        Category.EXTREMA_MIN_MAX,
        {
            "max_category": series.points[max_i].category,
            "max_value": values[max_i],
            "min_category": series.points[min_i].category,
            "min_value": values[min_i],
            "single_point": len(values) == 1,
            "series_name": series.name or "",
        },
        template_key="extrema_point" if len(values) == 1 else None,
    )


def max_difference(series: Series) -> InsightMessage:
    """Gap between the series maximum and minimum, with both endpoints."""
    if len(series.points) < 2:
        raise TooFewPoints("need at least 2 points for a difference")
    ex = extrema(series)
    return InsightMessage(
        Category.MAX_DIFFERENCE,
        {
            "difference": ex.param("max_value") - ex.param("min_value"),
            "max_category": ex.param("max_category"),
            "max_value": ex.param("max_value"),
            "min_category": ex.param("min_category"),
            "min_value": ex.param("min_value"),
            "series_name": series.name or "",
        },
    )


def _round_sum(values: tuple[float, ...]) -> float | int:
    total = sum(values)
    if all(float(v).is_integer() for v in values):
        return int(total)
    return round(total, 1)


def derived_values(series: Series) -> InsightMessage:
    """Mean (1 decimal) and sum (integer when the inputs are integers)."""
    values = series.values
    return InsightMessage(
        Category.DERIVED_VALUE,
        {
            "mean": round(sum(values) / len(values), 1),
            "sum": _round_sum(values),
            "count": len(values),
            "series_name": series.name or "",
        },
    )


def order_rank(series: Series, k: int = 3) -> InsightMessage:
    """Top-k categories by value (descending) plus the minimum; ties keep point order."""
    n = len(series.points)
    if k > n:
        raise KTooLarge(f"k={k} exceeds series length {n}")
    order = sorted(range(n), key=lambda i: (-series.values[i], i))
    top = order[:k]
    ex = extrema(series)
    return InsightMessage(
        Category.ORDER_RANK,
        {
            "top_categories": tuple(series.points[i].category for i in top),
            "top_values": tuple(series.values[i] for i in top),
            "top_category": series.points[top[0]].category,
            "top_value": series.values[top[0]],
            "runner_up_list": _fmt_list([series.points[i].category for i in top[1:]]),
            "min_category": ex.param("min_category"),
            "min_value": ex.param("min_value"),
            "series_name": series.name or "",
        },
        template_key="order_rank_single" if k < 2 else None,
    )


def same_values(series: Series) -> InsightMessage | None:
    """Groups of categories sharing exactly the same value; None when all distinct."""
    groups: dict[float, list[str]] = {}
    for p in series.points:
        groups.setdefault(p.value, []).append(p.category)
    shared = [(v, cats) for v, cats in groups.items() if len(cats) >= 2]
    if not shared:
        return None
    # larger groups first, then order of first appearance
    first_seen = {v: series.values.index(v) for v, _ in shared}
    shared.sort(key=lambda item: (-len(item[1]), first_seen[item[0]]))
    return InsightMessage(
        Category.SAME_VALUE,
        {
            "groups": tuple((v, tuple(cats)) for v, cats in shared),
            "group_list": _fmt_list(shared[0][1]),
            "group_value": shared[0][0],
            "group_count": len(shared),
            "series_name": series.name or "",
        },
    )


def shape(series: Series) -> InsightMessage | None:
    """Zig-zag detector: reports when enough consecutive steps reverse direction."""
    values = series.values
    if len(values) < 4:
        return None
    signs = [0 if b == a else (1 if b > a else -1) for a, b in zip(values, values[1:])]
    reversals = sum(1 for a, b in zip(signs, signs[1:]) if a != 0 and b != 0 and a != b)
    if reversals / len(signs) >= ZIGZAG_REVERSAL_RATIO:
        return InsightMessage(Category.SHAPE, {"shape": "zig-zag", "series_name": series.name or ""})
    return None


def comparison_relative(series: Series) -> InsightMessage:
    """How much more the highest point has than the lowest."""
    if len(series.points) < 2:
        raise TooFewPoints("need at least 2 points to compare")
    ex = extrema(series)
    return InsightMessage(
        Category.COMPARISON_RELATIVE,
        {
            "max_category": ex.param("max_category"),
            "max_value": ex.param("max_value"),
            "min_category": ex.param("min_category"),
            "min_value": ex.param("min_value"),
            "difference": ex.param("max_value") - ex.param("min_value"),
            "series_name": series.name or "",
        },
    )


def comparison_absolute(series: Series) -> InsightMessage:
    """The value range itself, stated in absolute terms."""
    if len(series.points) < 2:
        raise TooFewPoints("need at least 2 points to compare")
    ex = extrema(series)
    return InsightMessage(
        Category.COMPARISON_ABSOLUTE,
        {
            "min_value": ex.param("min_value"),
            "max_value": ex.param("max_value"),
            "count": len(series.points),
            "series_name": series.name or "",
        },
    )


def intro_encoding(spec: ChartSpec) -> InsightMessage:
    """Chart-level framing message: type, axis fields, sizes, legend entries."""
    names = [s.name or f"series {i + 1}" for i, s in enumerate(spec.series)]
    return InsightMessage(
        Category.INTRO_ENCODING,
        {
            "chart_type": spec.chart_type.value,
            "chart_type_name": spec.chart_type.display_name.lower(),
            "x_label": spec.x_axis.label,
            "x_label_plural": pluralize(spec.x_axis.label),
            "y_label": spec.y_axis.label,
            "point_count": len(spec.categories),
            "series_count": len(spec.series),
            "series_list": _fmt_list(names),
        },
        template_key=f"intro_{spec.chart_type.value}",
    )


def _check_aligned(spec: ChartSpec) -> None:
    reference = spec.series[0].categories
    for s in spec.series[1:]:
        if s.categories != reference:
            raise CategoryMismatch("series do not share an aligned category list")


def multi_series_insights(spec: ChartSpec) -> list[InsightMessage]:
    """Cross-series facts for grouped bars and multi-line charts.

    Emits the global extrema over all series, a combined trend message with
    per-series directions (plus the per-series trend messages it fuses), the
    series ranked by mean, per-series extrema, the widest in-series gap, and
    for grouped bars the category with the highest mean across groups.
    """
    if len(spec.series) < 2:
        raise CategoryMismatch("multi-series insights need at least 2 series")
    _check_aligned(spec)

    all_values = [v for s in spec.series for v in s.values]
    chart_range = max(all_values) - min(all_values)
    names = [s.name or f"series {i + 1}" for i, s in enumerate(spec.series)]
    out: list[InsightMessage] = []

    # combined trend first, then the per-series messages it summarizes
    per_series_trends = []
    for i, s in enumerate(spec.series):
        trend = global_trend(s, value_range=chart_range)
        per_series_trends.append(replace(trend, params={**trend.params, "series_name": names[i]}))
    trend_clauses = _fmt_list(
        [f"{names[i]} is {m.param('direction_gerund')}" for i, m in enumerate(per_series_trends)]
    )
    out.append(
        InsightMessage(
            Category.TREND_GLOBAL,
            {
                "scope": "chart",
                "series_trends": trend_clauses,
                "direction": "mixed",
                "series_count": len(spec.series),
            },
            template_key="trend_global_multi",
        )
    )
    out.extend(per_series_trends)

    # single global max and min across every (series, category) cell
    flat = [
        (s_i, p_i, p.value)
        for s_i, s in enumerate(spec.series)
        for p_i, p in enumerate(s.points)
    ]
    gmax = max(flat, key=lambda t: (t[2], -t[0], -t[1]))
    gmin = min(flat, key=lambda t: (t[2], t[0], t[1]))
    out.append(
        InsightMessage(
            Category.GLOBAL_EXTREMA,
            {
                "max_series": names[gmax[0]],
                "max_category": spec.series[gmax[0]].points[gmax[1]].category,
                "max_value": gmax[2],
                "min_series": names[gmin[0]],
                "min_category": spec.series[gmin[0]].points[gmin[1]].category,
                "min_value": gmin[2],
                "series_count": len(spec.series),
            },
        )
    )

    # series ranked by their mean value
    means = [round(sum(s.values) / len(s.values), 2) for s in spec.series]
    rank = sorted(range(len(spec.series)), key=lambda i: (-means[i], i))
    ranked_names = [names[i] for i in rank]
    numbered = [f"{pos + 1}. {nm}" for pos, nm in enumerate(ranked_names)]
    if len(numbered) > 1:
        numbered[-1] = "and lastly, " + numbered[-1]
    out.append(
        InsightMessage(
            Category.ORDER_RANK,
            {
                "ranked_series": tuple(ranked_names),
                "ranked_means": tuple(means[i] for i in rank),
                "ranked_list": ", ".join(numbered),
                "series_count": len(spec.series),
            },
            template_key="order_rank_series",
        )
    )

    # per-series extrema with the series mean, in rank order (top line first)
    for pos, i in enumerate(rank):
        ex = extrema(spec.series[i])
        out.append(
            InsightMessage(
                Category.LOCAL_EXTREMA,
                {
                    "series_name": names[i],
                    "mean": means[i],
                    "rank": pos + 1,
                    "max_category": ex.param("max_category"),
                    "max_value": ex.param("max_value"),
                    "min_category": ex.param("min_category"),
                    "min_value": ex.param("min_value"),
                },
            )
        )

    # the series holding the widest internal max-min gap
    gaps = [max(s.values) - min(s.values) for s in spec.series]
    widest = max(range(len(gaps)), key=lambda i: (gaps[i], -i))
    gap_msg = max_difference(spec.series[widest])
    out.append(
        InsightMessage(
            Category.MAX_DIFFERENCE,
            {**gap_msg.params, "series_name": names[widest], "series_count": len(spec.series)},
            template_key="max_difference_series",
        )
    )

    # grouped bars: which category leads on average across the groups
    if spec.chart_type in (ChartType.GROUPED_BAR, ChartType.STACKED_BAR):
        cats = spec.categories
        cat_means = [
            round(sum(s.values[j] for s in spec.series) / len(spec.series), 2) for j in range(len(cats))
        ]
        best = max(range(len(cats)), key=lambda j: (cat_means[j], -j))
        worst = min(range(len(cats)), key=lambda j: (cat_means[j], j))
        out.append(
            InsightMessage(
                Category.COMPARISON_RELATIVE,
                {
                    "best_category": cats[best],
                    "best_mean": cat_means[best],
                    "worst_category": cats[worst],
                    "worst_mean": cat_means[worst],
                    "series_count": len(spec.series),
                    "series_list": _fmt_list(names),
                },
                template_key="comparison_category_mean",
            )
        )

    return out


def analyze(spec: ChartSpec) -> list[InsightMessage]:
    """Run every applicable detector for the chart type, intro message first.

    Emission order matters: the ranker's sort is stable, so equal-weight
    messages keep this order.
    """
    out = [intro_encoding(spec)]
    if spec.chart_type.is_multi_series and len(spec.series) >= 2:
        out.extend(multi_series_insights(spec))
        return out

    series = spec.series[0]
    n = len(series.points)
    out.append(extrema(series))
    if n >= 2:
        out.append(comparison_relative(series))
        out.append(comparison_absolute(series))
        out.append(max_difference(series))
    out.append(order_rank(series, k=min(3, n)))
    if spec.chart_type is not ChartType.PIE and n >= 2:
        out.append(global_trend(series))
        if spec.chart_type is ChartType.LINE and n >= 3:
            out.extend(local_trend_messages(series))
        if spec.chart_type is ChartType.LINE:
            shp = shape(series)
            if shp is not None:
                out.append(shp)
    out.append(derived_values(series))
    sv = same_values(series)
    if sv is not None:
        out.append(sv)
    if spec.chart_type is ChartType.PIE:
        out = [_with_pie_shares(m, series) for m in out]
    return out


def _with_pie_shares(msg: InsightMessage, series: Series) -> InsightMessage:
    """Annotate pie extrema with each slice's share of the total."""
    if msg.category is not Category.EXTREMA_MIN_MAX:
        return msg
    total = sum(series.values)

    def share(v: float) -> float:
        return round(v / total * 100, 2) if total else 0.0

    return replace(
        msg,
        params={
            **msg.params,
            "max_share": share(msg.param("max_value")),
            "min_share": share(msg.param("min_value")),
        },
        template_key="extrema_pie" if not msg.param("single_point") else msg.template_key,
    )
