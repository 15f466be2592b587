"""Chart deconstruction: recover a ChartSpec from rendered or declarative charts.

Two front doors:

* :func:`deconstruct_svg` reads SVG documents that follow highcharts markup
  conventions — values come verbatim from ``highcharts-data-labels`` text
  when present, otherwise from mark geometry mapped through the axis scale
  fitted to the y-axis tick labels.
* :func:`ingest_vegalite` reads Vega-Lite-style declarative specs with
  inline data values.

Both emit the canonical chart model; unreadable individual data labels are
dropped with a warning rather than failing the whole chart.
"""

from __future__ import annotations

import json
import math
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from enum import Enum
from statistics import linear_regression
from typing import Iterable, Sequence

from .model import AxisSpec, ChartSpec, ChartType, DataPoint, DataType, Series

# A fitted y scale must explain its own ticks to within this fraction of the value range.
SCALE_FIT_TOLERANCE = 0.005
# Marks mapping beyond the tick range by more than this fraction are rejected.
SCALE_RANGE_TOLERANCE = 0.05


class DeconstructionError(ValueError):
    pass


class NoChartFound(DeconstructionError):
    pass


class UnreadableAxis(DeconstructionError):
    pass


class InconsistentSeries(DeconstructionError):
    pass


class ScaleMismatch(DeconstructionError):
    pass


class UnsupportedMark(DeconstructionError):
    pass


class MissingData(DeconstructionError):
    pass


@dataclass
class SvgElement:
    tag: str
    attrs: dict[str, str]
    text: str
    children: list["SvgElement"] = field(default_factory=list)
    # translate offsets accumulated from ancestors, applied to own coordinates
    offset_x: float = 0.0
    offset_y: float = 0.0

    @property
    def classes(self) -> set[str]:
        return set(self.attrs.get("class", "").split())

    def all_text(self) -> str:
        parts = [self.text]
        for child in self.children:
            parts.append(child.all_text())
        return "".join(parts)

    def iter(self) -> Iterable["SvgElement"]:
        yield self
        for child in self.children:
            yield from child.iter()

    def find_classed(self, token: str) -> list["SvgElement"]:
        return [e for e in self.iter() if token in e.classes]

    def bounding_box(self) -> tuple[float, float, float, float]:
        """(x, y, width, height) in absolute SVG user units."""
        xs: list[float] = []
        ys: list[float] = []
        for e in self.iter():
            for px, py in _own_points(e):
                xs.append(px + e.offset_x)
                ys.append(py + e.offset_y)
        if not xs:
            raise DeconstructionError(f"element <{self.tag}> has no computable bounding box")
        return min(xs), min(ys), max(xs) - min(xs), max(ys) - min(ys)


_TRANSLATE_RE = re.compile(r"translate\(\s*(-?[\d.]+)[,\s]+(-?[\d.]+)\s*\)")
_PATH_NUMBER_RE = re.compile(r"-?\d+(?:\.\d+)?(?:e-?\d+)?", re.IGNORECASE)


def _own_points(e: SvgElement) -> list[tuple[float, float]]:
    a = e.attrs
    try:
        if e.tag == "rect":
            x, y = float(a["x"]), float(a["y"])
            w, h = float(a["width"]), float(a["height"])
            return [(x, y), (x + w, y + h)]
        if e.tag == "circle":
            cx, cy, r = float(a["cx"]), float(a["cy"]), float(a.get("r", 0))
            return [(cx - r, cy - r), (cx + r, cy + r)]
        if e.tag == "text" and ("x" in a or "y" in a):
            return [(float(a.get("x", 0)), float(a.get("y", 0)))]
        if e.tag == "path" and "d" in a:
            nums = [float(n) for n in _PATH_NUMBER_RE.findall(a["d"])]
            return list(zip(nums[0::2], nums[1::2]))
    except (KeyError, ValueError):
        return []
    return []


def path_vertices(e: SvgElement) -> list[tuple[float, float]]:
    """Absolute coordinate pairs of a path element (line graphs use M/L segments)."""
    nums = [float(n) for n in _PATH_NUMBER_RE.findall(e.attrs.get("d", ""))]
    return [(x + e.offset_x, y + e.offset_y) for x, y in zip(nums[0::2], nums[1::2])]


def _strip_ns(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _build(elem: ET.Element, ox: float, oy: float) -> SvgElement:
    m = _TRANSLATE_RE.search(elem.get("transform", "") or "")
    if m:
        ox += float(m.group(1))
        oy += float(m.group(2))
    node = SvgElement(
        tag=_strip_ns(elem.tag),
        attrs=dict(elem.attrib),
        text=elem.text or "",
        offset_x=ox,
        offset_y=oy,
    )
    for child in elem:
        node.children.append(_build(child, ox, oy))
    return node


@dataclass(frozen=True)
class SvgChartDocument:
    """Parsed SVG with class/text/geometry access; parse errors fail fast."""

    raw: str
    root: SvgElement

    @classmethod
    def parse(cls, text: str) -> "SvgChartDocument":
        try:
            tree = ET.fromstring(text)
        except ET.ParseError as e:
            raise DeconstructionError(f"not well-formed XML: {e}") from None
        return cls(text, _build(tree, 0.0, 0.0))


class Orientation(Enum):
    X = "x"
    Y = "y"


@dataclass(frozen=True)
class AxisScale:
    """Linear pixel-to-value mapping fitted to axis tick labels."""

    orientation: Orientation
    tick_positions: tuple[float, ...]
    tick_values: tuple[float, ...]
    value_per_pixel: float  # fitted slope: value units per pixel
    intercept: float

    def value_at(self, pixel: float) -> float:
        return self.intercept + self.value_per_pixel * pixel

    @property
    def decimals(self) -> int:
        """Largest number of decimal places the tick labels displayed."""
        out = 0
        for v in self.tick_values:
            text = format_tick(v)
            if "." in text:
                out = max(out, len(text.split(".")[1]))
        return out


def format_tick(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else repr(float(v))


def fit_scale(
    positions: Sequence[float], values: Sequence[float], orientation: Orientation = Orientation.Y
) -> AxisScale:
    """Least-squares linear fit over all ticks; rejects non-linear or non-monotone axes."""
    if len(positions) < 2 or len(positions) != len(values):
        raise UnreadableAxis(f"need at least 2 parseable ticks, got {len(values)}")
    increasing = all(a < b for a, b in zip(values, values[1:]))
    decreasing = all(a > b for a, b in zip(values, values[1:]))
    if not (increasing or decreasing):
        raise UnreadableAxis("tick values are not strictly monotone")
    slope, intercept = linear_regression(positions, values)
    if slope == 0:
        raise UnreadableAxis("degenerate axis: zero slope")
    value_range = max(values) - min(values)
    worst = max(abs(intercept + slope * p - v) for p, v in zip(positions, values))
    if worst > SCALE_FIT_TOLERANCE * value_range:
        raise UnreadableAxis(f"axis is not linear: fit residual {worst:.4g} exceeds 0.5% of range")
    return AxisScale(orientation, tuple(positions), tuple(values), slope, intercept)


class MarkKind(Enum):
    BAR = "bar"
    LINE_VERTEX = "line_vertex"
    PIE_SLICE = "pie_slice"


@dataclass(frozen=True)
class MarkRecord:
    kind: MarkKind
    bbox: tuple[float, float, float, float]  # x, y, width, height
    series_index: int
    category_index: int


def recover_from_marks(marks: Sequence[MarkRecord], scale: AxisScale) -> list[float]:
    """Map mark geometry back to data values through the fitted axis scale.

    Bars measure from the baseline (the lowest-value tick) to the bar top;
    line vertices map their y coordinate directly. Results round to the
    precision the tick labels displayed.
    """
    vmin, vmax = min(scale.tick_values), max(scale.tick_values)
    value_range = vmax - vmin
    slack = SCALE_RANGE_TOLERANCE * value_range
    # baseline: pixel of the lowest tick value (bottom of the plot area)
    baseline_pixel = scale.tick_positions[scale.tick_values.index(vmin)]
    baseline_value = scale.value_at(baseline_pixel)
    decimals = scale.decimals

    out: list[float] = []
    for mark in marks:
        if mark.kind is MarkKind.PIE_SLICE:
            raise UnsupportedMark("pie slices carry no axis geometry; use data labels")
        x, y, w, h = mark.bbox
        if mark.kind is MarkKind.BAR:
            top = y
            value = (baseline_pixel - top) * -scale.value_per_pixel + baseline_value
        else:
            value = scale.value_at(y)
        if value > vmax + slack or value < vmin - slack:
            raise ScaleMismatch(
                f"mark maps to {value:.4g}, outside the fitted range [{vmin}, {vmax}] by more than 5%"
            )
        out.append(round(value, decimals) if decimals else float(round(value)))
    return out


_NUMERIC_LABEL_RE = re.compile(r"-?[\d,]+(?:\.\d+)?%?$")


def parse_label_number(text: str) -> float | None:
    cleaned = text.strip().replace(" ", " ").strip()
    if not cleaned or not _NUMERIC_LABEL_RE.match(cleaned):
        return None
    try:
        return float(cleaned.rstrip("%").replace(",", ""))
    except ValueError:
        return None


def _texts_in_order(container: SvgElement, axis: str = "x") -> list[SvgElement]:
    texts = [e for e in container.iter() if e.tag == "text"]

    def pos(e: SvgElement) -> float:
        try:
            if axis == "x":
                return float(e.attrs.get("x", 0)) + e.offset_x
            return float(e.attrs.get("y", 0)) + e.offset_y
        except ValueError:
            return 0.0

    texts.sort(key=pos)
    return texts


def _series_kind(classes: set[str]) -> MarkKind | None:
    joined = " ".join(classes)
    if "column-series" in joined or "bar-series" in joined:
        return MarkKind.BAR
    if "line-series" in joined or "spline-series" in joined or "area-series" in joined:
        return MarkKind.LINE_VERTEX
    if "pie-series" in joined:
        return MarkKind.PIE_SLICE
    return None


def _find_axis_title(doc: SvgChartDocument, token: str) -> str:
    for axis in doc.root.find_classed(token):
        if "highcharts-axis-labels" in axis.classes:
            continue
        for e in axis.iter():
            if "highcharts-axis-title" in e.classes:
                return e.all_text().strip()
    return ""


def _find_chart_title(doc: SvgChartDocument) -> str:
    for e in doc.root.iter():
        if "highcharts-title" in e.classes:
            return e.all_text().strip()
    for e in doc.root.iter():
        if e.tag == "title":
            return e.all_text().strip()
    return ""


def _y_axis_scale(doc: SvgChartDocument) -> AxisScale:
    for group in doc.root.find_classed("highcharts-yaxis-labels"):
        positions: list[float] = []
        values: list[float] = []
        for t in _texts_in_order(group, axis="y"):
            value = parse_label_number(t.all_text())
            if value is None:
                continue
            positions.append(float(t.attrs.get("y", 0)) + t.offset_y)
            values.append(value)
        if len(values) >= 2:
            # order by pixel position for the monotonicity check
            paired = sorted(zip(positions, values))
            return fit_scale([p for p, _ in paired], [v for _, v in paired], Orientation.Y)
    raise UnreadableAxis("quantitative axis has fewer than 2 parseable ticks")


def _x_categories(doc: SvgChartDocument) -> list[str]:
    for group in doc.root.find_classed("highcharts-xaxis-labels"):
        labels = [t.all_text().strip() for t in _texts_in_order(group, axis="x")]
        labels = [l for l in labels if l]
        if labels:
            return labels
    return []


def _legend_names(doc: SvgChartDocument) -> list[str]:
    names = []
    for item in doc.root.find_classed("highcharts-legend-item"):
        text = item.all_text().strip()
        if text:
            names.append(text)
    return names


def _data_label_groups(doc: SvgChartDocument) -> list[list[str]]:
    groups = []
    for g in doc.root.find_classed("highcharts-data-labels"):
        labels = [t.all_text().strip() for t in _texts_in_order(g, axis="x")]
        groups.append([l for l in labels if l])
    return groups


def deconstruct_svg(
    doc: SvgChartDocument | str, warnings: list[str] | None = None
) -> ChartSpec:
    """Recover the chart model from a highcharts-convention SVG document.

    Data-label text wins when present; otherwise values come from mark
    geometry via the fitted y scale. ``warnings`` (optional list) collects
    notes about dropped unreadable labels.
    """
    if isinstance(doc, str):
        doc = SvgChartDocument.parse(doc)
    if warnings is None:
        warnings = []

    series_groups = doc.root.find_classed("highcharts-series-group")
    if not series_groups:
        raise NoChartFound("no element classed highcharts-series-group")
    container = series_groups[0]

    series_elements = [
        e for e in container.iter() if "highcharts-series" in e.classes and _series_kind(e.classes)
    ]
    if not series_elements:
        raise NoChartFound("series group contains no recognizable series")
    kinds = [_series_kind(e.classes) for e in series_elements]

    title = _find_chart_title(doc)
    x_label = _find_axis_title(doc, "highcharts-xaxis")
    y_label = _find_axis_title(doc, "highcharts-yaxis")
    categories = _x_categories(doc)
    legend = _legend_names(doc)
    label_groups = _data_label_groups(doc)

    pie = kinds[0] is MarkKind.PIE_SLICE
    if pie:
        return _assemble_pie(doc, title, x_label, y_label, label_groups, warnings)

    all_series: list[Series] = []
    for s_i, (element, kind) in enumerate(zip(series_elements, kinds)):
        if s_i < len(label_groups) and label_groups[s_i]:
            values, cats = _values_from_labels(label_groups[s_i], categories, s_i, warnings)
        else:
            values = _values_from_geometry(element, kind, s_i, doc)
            cats = categories[: len(values)]
            if len(cats) < len(values):
                cats = cats + [f"{i + 1}" for i in range(len(cats), len(values))]
        name = legend[s_i] if s_i < len(legend) else None
        all_series.append(Series(tuple(DataPoint(c, v) for c, v in zip(cats, values)), name))

    counts = {len(s.points) for s in all_series}
    if len(counts) > 1:
        raise InconsistentSeries(f"series disagree on category count: {sorted(counts)}")

    chart_type = _infer_type(kinds, len(all_series))
    return ChartSpec(
        chart_type,
        title,
        AxisSpec(x_label, DataType.NOMINAL),
        AxisSpec(y_label, DataType.QUANTITATIVE),
        tuple(all_series),
    )


def _values_from_labels(
    labels: list[str], categories: list[str], series_index: int, warnings: list[str]
) -> tuple[list[float], list[str]]:
    values: list[float] = []
    cats: list[str] = []
    for i, text in enumerate(labels):
        value = parse_label_number(text)
        category = categories[i] if i < len(categories) else f"{i + 1}"
        if value is None:
            warnings.append(f"series {series_index}: dropped unreadable data label {text!r} at {category!r}")
            continue
        values.append(value)
        cats.append(category)
    return values, cats


def _values_from_geometry(
    element: SvgElement, kind: MarkKind, series_index: int, doc: SvgChartDocument
) -> list[float]:
    scale = _y_axis_scale(doc)
    if kind is MarkKind.BAR:
        rects = [e for e in element.iter() if e.tag == "rect"]
        rects.sort(key=lambda r: float(r.attrs.get("x", 0)) + r.offset_x)
        marks = [
            MarkRecord(MarkKind.BAR, r.bounding_box(), series_index, i) for i, r in enumerate(rects)
        ]
        return recover_from_marks(marks, scale)
    graphs = [e for e in element.iter() if e.tag == "path" and "highcharts-graph" in e.classes]
    if not graphs:
        graphs = [e for e in element.iter() if e.tag == "path"]
    if not graphs:
        return []
    vertices = sorted(path_vertices(graphs[0]))
    marks = [
        MarkRecord(MarkKind.LINE_VERTEX, (x, y, 0.0, 0.0), series_index, i)
        for i, (x, y) in enumerate(vertices)
    ]
    return recover_from_marks(marks, scale)


def _assemble_pie(
    doc: SvgChartDocument,
    title: str,
    x_label: str,
    y_label: str,
    label_groups: list[list[str]],
    warnings: list[str],
) -> ChartSpec:
    # Pie slices carry no axis to fit a scale against, so labels are required;
    # the convention is one "Name: value" label per slice.
    if not label_groups or not label_groups[0]:
        raise UnreadableAxis("pie charts need data labels; no quantitative axis to recover from")
    points = []
    for i, text in enumerate(label_groups[0]):
        if ":" in text:
            name, _, raw = text.partition(":")
            value = parse_label_number(raw)
            category = name.strip()
        else:
            value = parse_label_number(text)
            category = f"slice {i + 1}"
        if value is None:
            warnings.append(f"pie: dropped unreadable data label {text!r}")
            continue
        points.append(DataPoint(category, value))
    return ChartSpec(
        ChartType.PIE,
        title,
        AxisSpec(x_label or "category", DataType.NOMINAL),
        AxisSpec(y_label or "value", DataType.QUANTITATIVE),
        (Series(tuple(points)),),
    )


def _infer_type(kinds: list[MarkKind | None], series_count: int) -> ChartType:
    if kinds[0] is MarkKind.BAR:
        return ChartType.BAR if series_count == 1 else ChartType.GROUPED_BAR
    return ChartType.LINE if series_count == 1 else ChartType.MULTI_LINE


# --- Vega-Lite-style declarative specs -------------------------------------

_VL_TYPE_MAP = {
    "nominal": DataType.NOMINAL,
    "ordinal": DataType.ORDINAL,
    "temporal": DataType.TEMPORAL,
    "quantitative": DataType.QUANTITATIVE,
}


def _encoding_field(encoding: dict, channel: str) -> tuple[str, DataType] | None:
    enc = encoding.get(channel)
    if not isinstance(enc, dict) or "field" not in enc:
        return None
    return enc["field"], _VL_TYPE_MAP.get(enc.get("type", "nominal"), DataType.NOMINAL)


def ingest_vegalite(spec_text: str | dict) -> ChartSpec:
    """Build a ChartSpec from a Vega-Lite-style declarative spec with inline data.

    Supported marks: bar (plus color/column grouping), line (color makes a
    multi-line), and arc (theta + color make a pie). Anything else raises
    :class:`UnsupportedMark`; specs without inline values raise
    :class:`MissingData`.
    """
    if isinstance(spec_text, str):
        try:
            data = json.loads(spec_text)
        except json.JSONDecodeError as e:
            raise DeconstructionError(f"invalid JSON: {e}") from None
    else:
        data = spec_text
    if not isinstance(data, dict):
        raise DeconstructionError("spec must be a JSON object")

    mark = data.get("mark")
    if isinstance(mark, dict):
        mark = mark.get("type")
    if mark not in ("bar", "line", "arc"):
        raise UnsupportedMark(f"mark {mark!r} is not supported (bar, line, arc)")

    values = (data.get("data") or {}).get("values")
    if not isinstance(values, list) or not values:
        raise MissingData("spec carries no inline data values")

    encoding = data.get("encoding") or {}
    title = data.get("title", "")
    if isinstance(title, dict):
        title = title.get("text", "")

    if mark == "arc":
        return _ingest_arc(encoding, values, title)

    x = _encoding_field(encoding, "x")
    y = _encoding_field(encoding, "y")
    if x is None or y is None:
        raise MissingData("bar and line marks need x and y field encodings")
    color = _encoding_field(encoding, "color")
    column = _encoding_field(encoding, "column") or _encoding_field(encoding, "xOffset")

    group = color or column
    if group is None:
        chart_type = ChartType.BAR if mark == "bar" else ChartType.LINE
        series = [_rows_to_series(values, x[0], y[0], None)]
    else:
        group_field = group[0]
        names = list(dict.fromkeys(str(row.get(group_field)) for row in values))
        if mark == "line":
            chart_type = ChartType.MULTI_LINE
        else:
            stack = (encoding.get("y") or {}).get("stack")
            chart_type = ChartType.STACKED_BAR if stack in ("zero", True, "normalize") else ChartType.GROUPED_BAR
        series = [
            _rows_to_series(
                [row for row in values if str(row.get(group_field)) == name], x[0], y[0], name
            )
            for name in names
        ]
        if len(series) == 1:
            chart_type = ChartType.BAR if mark == "bar" else ChartType.LINE

    return ChartSpec(
        chart_type,
        str(title),
        AxisSpec(x[0], x[1]),
        AxisSpec(y[0], y[1]),
        tuple(series),
    )


def _rows_to_series(rows: list[dict], x_field: str, y_field: str, name: str | None) -> Series:
    points = []
    for row in rows:
        if x_field not in row or y_field not in row:
            continue
        y = row[y_field]
        if not isinstance(y, (int, float)) or isinstance(y, bool) or not math.isfinite(y):
            continue
        points.append(DataPoint(str(row[x_field]), float(y)))
    return Series(tuple(points), name)


def _ingest_arc(encoding: dict, values: list[dict], title: str) -> ChartSpec:
    theta = _encoding_field(encoding, "theta")
    color = _encoding_field(encoding, "color")
    if theta is None or color is None:
        raise MissingData("arc marks need theta and color field encodings")
    series = _rows_to_series(values, color[0], theta[0], None)
    return ChartSpec(
        ChartType.PIE,
        str(title),
        AxisSpec(color[0], color[1]),
        AxisSpec(theta[0], theta[1]),
        (series,),
    )


def emit_vegalite(spec: ChartSpec) -> dict:
    """Declarative spec equivalent of a ChartSpec; inverse of :func:`ingest_vegalite`."""
    if spec.chart_type is ChartType.PIE:
        return {
            "title": spec.title,
            "mark": "arc",
            "encoding": {
                "theta": {"field": spec.y_axis.label, "type": spec.y_axis.data_type.value},
                "color": {"field": spec.x_axis.label, "type": spec.x_axis.data_type.value},
            },
            "data": {
                "values": [
                    {spec.x_axis.label: p.category, spec.y_axis.label: p.value}
                    for p in spec.series[0].points
                ]
            },
        }

    mark = "line" if spec.chart_type in (ChartType.LINE, ChartType.MULTI_LINE) else "bar"
    encoding: dict = {
        "x": {"field": spec.x_axis.label, "type": spec.x_axis.data_type.value},
        "y": {"field": spec.y_axis.label, "type": spec.y_axis.data_type.value},
    }
    rows = []
    if spec.chart_type.is_multi_series:
        encoding["color"] = {"field": "series", "type": "nominal"}
        if spec.chart_type is ChartType.STACKED_BAR:
            encoding["y"]["stack"] = "zero"
        elif spec.chart_type is ChartType.GROUPED_BAR:
            encoding["xOffset"] = {"field": "series", "type": "nominal"}
        for i, s in enumerate(spec.series):
            name = s.name or f"series {i + 1}"
            rows.extend(
                {spec.x_axis.label: p.category, spec.y_axis.label: p.value, "series": name}
                for p in s.points
            )
    else:
        rows = [
            {spec.x_axis.label: p.category, spec.y_axis.label: p.value} for p in spec.series[0].points
        ]
    return {"title": spec.title, "mark": mark, "encoding": encoding, "data": {"values": rows}}
