"""Selection-scoped summarization support and keyword/value queries.

Selections pick point indices (possibly discontinuous, possibly across
every series); :func:`restrict` carves the matching sub-chart out so the
normal summary pipeline can describe just those points. Queries are a
keyword scan over transcribed text: extrema, trend, average, total, axis
labels, or a category-label lookup.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from . import insights
from .insights import Category, InsightMessage, pluralize
from .model import ChartSpec, ChartType, Series
from .realizer import format_value


class SelectionMode(Enum):
    SINGLE_SERIES = "single_series"
    CROSS_SERIES = "cross_series"


class EmptySelection(ValueError):
    pass


class InvalidSelection(ValueError):
    pass


class LabelNotFound(KeyError):
    pass


@dataclass(frozen=True)
class Selection:
    """Chosen point indices per series index; strictly increasing within a series."""

    indices_by_series: tuple[tuple[int, tuple[int, ...]], ...]
    mode: SelectionMode = SelectionMode.CROSS_SERIES

    @classmethod
    def cross_series(cls, indices: Iterable[int], series_count: int) -> "Selection":
        """Select the same category positions on every series (how multi-line selection works)."""
        idx = tuple(sorted(set(indices)))
        return cls(tuple((s, idx) for s in range(series_count)), SelectionMode.CROSS_SERIES)

    @classmethod
    def single_series(cls, series_index: int, indices: Iterable[int]) -> "Selection":
        return cls(((series_index, tuple(sorted(set(indices)))),), SelectionMode.SINGLE_SERIES)

    def indices_for(self, series_index: int) -> tuple[int, ...]:
        for s, idx in self.indices_by_series:
            if s == series_index:
                return idx
        return ()

    @property
    def total_points(self) -> int:
        return sum(len(idx) for _, idx in self.indices_by_series)


def validate_selection(spec: ChartSpec, sel: Selection) -> None:
    if sel.total_points == 0:
        raise EmptySelection("selection contains no points")
    for s, idx in sel.indices_by_series:
        if not (0 <= s < len(spec.series)):
            raise InvalidSelection(f"series index {s} out of range")
        n = len(spec.series[s].points)
        for i in idx:
            if not (0 <= i < n):
                raise InvalidSelection(f"point index {i} out of range for series {s}")
        if list(idx) != sorted(set(idx)):
            raise InvalidSelection("indices within a series must be strictly increasing")


def restrict(spec: ChartSpec, sel: Selection) -> ChartSpec:
    """Sub-chart containing only the selected points, metadata preserved.

    Series left without any selected point are dropped; a multi-series
    chart that collapses to one series downgrades to the single-series
    chart type so the result stays a valid spec.
    """
    validate_selection(spec, sel)
    new_series = []
    for s_i, series in enumerate(spec.series):
        idx = sel.indices_for(s_i)
        if not idx:
            continue
        new_series.append(Series(tuple(series.points[i] for i in idx), series.name))
    chart_type = spec.chart_type
    if len(new_series) == 1 and chart_type.is_multi_series:
        chart_type = {
            ChartType.MULTI_LINE: ChartType.LINE,
            ChartType.GROUPED_BAR: ChartType.BAR,
            ChartType.STACKED_BAR: ChartType.BAR,
        }[chart_type]
    return ChartSpec(chart_type, spec.title, spec.x_axis, spec.y_axis, tuple(new_series))


def _contiguous_ranges(indices: Sequence[int]) -> list[tuple[int, int]]:
    ranges: list[tuple[int, int]] = []
    for i in indices:
        if ranges and i == ranges[-1][1] + 1:
            ranges[-1] = (ranges[-1][0], i)
        else:
            ranges.append((i, i))
    return ranges


def selection_ranges(sel: Selection, spec: ChartSpec) -> list[tuple[int, int]]:
    """Contiguous (start, end) index runs of the selection, in chart order.

    Uses the first selected series; cross-series selections share one
    index set by construction.
    """
    validate_selection(spec, sel)
    for _, idx in sel.indices_by_series:
        if idx:
            return _contiguous_ranges(idx)
    return []


def _range_text(ranges: Sequence[tuple[int, int]], categories: Sequence[str]) -> str:
    parts = []
    for a, b in ranges:
        parts.append(categories[a] if a == b else f"{categories[a]} to {categories[b]}")
    if len(parts) <= 1:
        return parts[0] if parts else ""
    return ", ".join(parts[:-1]) + f", and {parts[-1]}"


def describe_selection(sel: Selection, spec: ChartSpec) -> str:
    """Spoken enumeration of the selected categories, grouped into ranges."""
    ranges = selection_ranges(sel, spec)
    first_series = next(s for s, idx in sel.indices_by_series if idx)
    categories = spec.series[first_series].categories
    text = _range_text(ranges, categories)
    verb = "is" if sum(b - a + 1 for a, b in ranges) == 1 else "are"
    return f"{spec.x_axis.label} {text} {verb} selected."


def selection_intro(spec: ChartSpec, sel: Selection) -> InsightMessage:
    """Intro message for a partial summary: states the selection extent, not the full chart."""
    ranges = selection_ranges(sel, spec)
    first_series = next(s for s, idx in sel.indices_by_series if idx)
    categories = spec.series[first_series].categories
    selected = len(sel.indices_for(first_series))
    involved = sum(1 for _, idx in sel.indices_by_series if idx)
    if involved > 1:
        phrase = f"{selected} selected data points per line"
    else:
        plural = "s" if selected != 1 else ""
        phrase = f"{selected} selected data point{plural}"
    return InsightMessage(
        Category.INTRO_ENCODING,
        {
            "chart_type": spec.chart_type.value,
            "x_label": spec.x_axis.label,
            "x_label_plural": pluralize(spec.x_axis.label),
            "y_label": spec.y_axis.label,
            "selected_count": sel.total_points,
            "selection_phrase": phrase,
            "range_text": _range_text(ranges, categories),
        },
        template_key="intro_selection",
    )


class Intent(Enum):
    MAX = "max"
    MIN = "min"
    TREND = "trend"
    AVERAGE = "average"
    SUM = "sum"
    AXIS_LABEL = "axis_label"
    VALUE_LOOKUP = "value_lookup"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Query:
    raw_text: str
    intent: Intent
    lookup_key: str = ""


@dataclass(frozen=True)
class Answer:
    payload: dict
    spoken_text: str


_KEYWORDS = [
    (Intent.MAX, {"maximum", "highest", "max", "largest", "biggest"}),
    (Intent.MIN, {"minimum", "lowest", "min", "smallest"}),
    (Intent.TREND, {"trend", "trends"}),
    (Intent.AVERAGE, {"average", "mean"}),
    (Intent.SUM, {"total", "sum"}),
    (Intent.AXIS_LABEL, {"labels", "axes"}),
]

_TOKEN_RE = re.compile(r"[^\s,;:!?']+")


def _tokens(text: str) -> list[str]:
    return [t.strip(".-—\"()") for t in _TOKEN_RE.findall(text.casefold())]


def parse_query(text: str, spec: ChartSpec | None = None) -> Query:
    """Keyword scan over transcribed text; totals, never raises.

    Keyword intents win over label lookups; a query with no keyword and no
    token sequence matching a category label comes back Unknown (the answer
    for Unknown is a reprompt with hints).
    """
    raw = text or ""
    folded = raw.casefold().replace("-", " ")
    tokens = _tokens(folded)

    token_set = set(tokens)
    for intent, words in _KEYWORDS:
        if token_set & words:
            return Query(raw, intent)
    if "x axis" in folded or "y axis" in folded:
        return Query(raw, Intent.AXIS_LABEL)

    if spec is not None:
        match = _find_label(tokens, folded, spec)
        if match is not None:
            return Query(raw, Intent.VALUE_LOOKUP, match)
    return Query(raw, Intent.UNKNOWN)


def _find_label(tokens: list[str], folded: str, spec: ChartSpec) -> str | None:
    """Longest category label whose tokenization appears contiguously in the query."""
    best: tuple[int, int, str] | None = None
    for order, category in enumerate(dict.fromkeys(c for s in spec.series for c in s.categories)):
        cat_tokens = _tokens(category.casefold())
        if not cat_tokens:
            continue
        k = len(cat_tokens)
        hit = any(tokens[i : i + k] == cat_tokens for i in range(len(tokens) - k + 1))
        if hit and (best is None or k > best[0]):
            best = (k, order, category)
    return best[2] if best else None


def _series_display(spec: ChartSpec) -> list[str]:
    return [s.name or f"series {i + 1}" for i, s in enumerate(spec.series)]


def answer(spec: ChartSpec, query: Query) -> Answer:
    """Resolve a parsed query against the chart; not-found and unknown are answers, not errors."""
    x_label = spec.x_axis.label
    y_label = spec.y_axis.label

    if query.intent is Intent.VALUE_LOOKUP:
        return _answer_lookup(spec, query.lookup_key)

    if query.intent in (Intent.MAX, Intent.MIN):
        flat = [
            (s.values[p_i], s.points[p_i].category, s.name)
            for s in spec.series
            for p_i in range(len(s.points))
        ]
        want_max = query.intent is Intent.MAX
        pick = flat[0]
        for candidate in flat[1:]:  # first occurrence wins ties
            if (want_max and candidate[0] > pick[0]) or (not want_max and candidate[0] < pick[0]):
                pick = candidate
        kind = "maximum" if want_max else "minimum"
        by = f" by {pick[2]}" if len(spec.series) > 1 and pick[2] else ""
        return Answer(
            {"kind": kind, "value": pick[0], "category": pick[1], "series": pick[2]},
            f"The {kind} {y_label} {format_value(pick[0])} is found at {x_label} {pick[1]}{by}.",
        )

    if query.intent is Intent.AVERAGE or query.intent is Intent.SUM:
        word = "average" if query.intent is Intent.AVERAGE else "total"
        if len(spec.series) == 1:
            msg = insights.derived_values(spec.series[0])
            value = msg.param("mean") if query.intent is Intent.AVERAGE else msg.param("sum")
            return Answer(
                {"kind": word, "value": value},
                f"The {word} {y_label} across all {len(spec.categories)} {pluralize(x_label)} is {format_value(value)}.",
            )
        entries = []
        values = {}
        for name, series in zip(_series_display(spec), spec.series):
            msg = insights.derived_values(series)
            value = msg.param("mean") if query.intent is Intent.AVERAGE else msg.param("sum")
            values[name] = value
            entries.append(f"{name} is {format_value(value)}")
        return Answer({"kind": word, "values": values}, f"The {word} {y_label} per series: {', '.join(entries)}.")

    if query.intent is Intent.TREND:
        if len(spec.series) == 1:
            msg = insights.global_trend(spec.series[0])
            return Answer(
                {"kind": "trend", "direction": msg.param("direction")},
                f"In general {y_label} has {msg.param('direction_verb')} over the {x_label}.",
            )
        parts = []
        directions = {}
        all_values = [v for s in spec.series for v in s.values]
        chart_range = max(all_values) - min(all_values)
        for name, series in zip(_series_display(spec), spec.series):
            msg = insights.global_trend(series, value_range=chart_range)
            directions[name] = msg.param("direction")
            parts.append(f"{name} is {msg.param('direction_gerund')}")
        return Answer({"kind": "trend", "directions": directions}, f"Overall {', '.join(parts)}, throughout the {x_label}.")

    if query.intent is Intent.AXIS_LABEL:
        return Answer(
            {"kind": "axis_label", "x": x_label, "y": y_label},
            f"The x axis shows {x_label} and the y axis shows {y_label}.",
        )

    example = spec.categories[0] if spec.categories else ""
    return Answer(
        {"kind": "unknown"},
        "Sorry, I could not find an answer. You can ask about the maximum, minimum, "
        f"average, total, or trend, or ask for the value of a {x_label} such as {example}.",
    )


def _answer_lookup(spec: ChartSpec, key: str) -> Answer:
    folded = key.strip().casefold()
    x_label = spec.x_axis.label
    y_label = spec.y_axis.label
    hits: list[tuple[str | None, str, float]] = []
    for name, series in zip(_series_display(spec), spec.series):
        for p in series.points:
            if p.category.strip().casefold() == folded:
                hits.append((name, p.category, p.value))
    if not hits:
        return Answer(
            {"kind": "value_lookup", "key": key, "found": False},
            f"We could not find any value for {x_label} {key}.",
        )
    category = hits[0][1]
    if len(spec.series) == 1:
        value = hits[0][2]
        return Answer(
            {"kind": "value_lookup", "key": category, "found": True, "value": value},
            f"In {x_label} {category}, the {y_label} was, {format_value(value)}.",
        )
    listed = ", ".join(f"{name} is {format_value(value)}" for name, _, value in hits)
    return Answer(
        {"kind": "value_lookup", "key": category, "found": True, "values": {name: value for name, _, value in hits}},
        f"We have found multiple values for {x_label} {category}. These are, {listed}.",
    )


def lookup(spec: ChartSpec, key: str) -> Answer:
    """Direct value lookup; raises :class:`LabelNotFound` when the label is absent."""
    result = _answer_lookup(spec, key)
    if not result.payload.get("found"):
        raise LabelNotFound(key)
    return result
