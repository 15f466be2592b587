"""Normalized chart data model and its canonical JSON serialization.

Every other part of the engine works on :class:`ChartSpec`: an immutable
description of a chart as a typed table (one or more series of
category/value points) plus axis metadata. The JSON layout is fixed so
that deconstruction output, stored fixtures, and the HTTP API all speak
the same format.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable


class ChartType(Enum):
    BAR = "bar"
    GROUPED_BAR = "grouped_bar"
    STACKED_BAR = "stacked_bar"
    LINE = "line"
    MULTI_LINE = "multi_line"
    PIE = "pie"

    @property
    def is_multi_series(self) -> bool:
        return self in (ChartType.GROUPED_BAR, ChartType.STACKED_BAR, ChartType.MULTI_LINE)

    @property
    def display_name(self) -> str:
        """Spoken name, e.g. ``Grouped bar``."""
        return self.value.replace("_", " ").capitalize()


class DataType(Enum):
    NOMINAL = "nominal"
    ORDINAL = "ordinal"
    TEMPORAL = "temporal"
    QUANTITATIVE = "quantitative"


@dataclass(frozen=True)
class AxisSpec:
    """One axis: the data field it encodes and that field's type."""

    label: str
    data_type: DataType


@dataclass(frozen=True)
class DataPoint:
    category: str
    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))


@dataclass(frozen=True)
class Series:
    """An ordered run of points; ``name`` is the legend label (None when single-series)."""

    points: tuple[DataPoint, ...]
    name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))

    @property
    def categories(self) -> tuple[str, ...]:
        return tuple(p.category for p in self.points)

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(p.value for p in self.points)


@dataclass(frozen=True)
class ChartSpec:
    """A deconstructed chart: type, title, axes, and the recovered data table.

    Instances are immutable; share them freely across threads. Construction
    never raises on bad data — use :func:`validate` to get a report of
    invariant violations.
    """

    chart_type: ChartType
    title: str
    x_axis: AxisSpec
    y_axis: AxisSpec
    series: tuple[Series, ...]

    def __post_init__(self):
        object.__setattr__(self, "series", tuple(self.series))

    @property
    def categories(self) -> tuple[str, ...]:
        """Category labels of the first series (shared across series when aligned)."""
        return self.series[0].categories if self.series else ()


def chart(
    chart_type: ChartType,
    title: str,
    x_label: str,
    y_label: str,
    series: Iterable[Series],
    x_type: DataType = DataType.NOMINAL,
) -> ChartSpec:
    """Convenience constructor with the usual quantitative y axis."""
    return ChartSpec(
        chart_type=chart_type,
        title=title,
        x_axis=AxisSpec(x_label, x_type),
        y_axis=AxisSpec(y_label, DataType.QUANTITATIVE),
        series=tuple(series),
    )


@dataclass(frozen=True)
class Violation:
    code: str
    path: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> list[str]:
        return [v.code for v in self.violations]


_SINGLE_SERIES_TYPES = (ChartType.BAR, ChartType.LINE, ChartType.PIE)


def validate(spec: ChartSpec) -> ValidationReport:
    """Check every structural invariant; returns all violations, empty when valid.

    Total over arbitrary field contents: a malformed spec yields a report,
    never an exception.
    """
    out: list[Violation] = []

    if not spec.series:
        out.append(Violation("EMPTY_SERIES", "$.series", "chart has no series"))
        return ValidationReport(tuple(out))

    n_series = len(spec.series)
    if spec.chart_type in _SINGLE_SERIES_TYPES and n_series != 1:
        out.append(
            Violation(
                "SERIES_COUNT",
                "$.series",
                f"{spec.chart_type.value} charts need exactly 1 series, got {n_series}",
            )
        )
    if spec.chart_type.is_multi_series and n_series < 2:
        out.append(
            Violation(
                "SERIES_COUNT",
                "$.series",
                f"{spec.chart_type.value} charts need at least 2 series, got {n_series}",
            )
        )

    if spec.y_axis.data_type is not DataType.QUANTITATIVE:
        out.append(
            Violation("Y_AXIS_NOT_QUANTITATIVE", "$.yAxis.dataType", "y axis must be quantitative")
        )

    reference = spec.series[0].categories
    for i, s in enumerate(spec.series):
        path = f"$.series[{i}]"
        if not s.points:
            out.append(Violation("EMPTY_POINTS", f"{path}.points", "series has no points"))
            continue
        seen: set[str] = set()
        for j, p in enumerate(s.points):
            if not isinstance(p.value, (int, float)) or not math.isfinite(p.value):
                out.append(
                    Violation(
                        "NON_FINITE_VALUE", f"{path}.points[{j}].y", f"value {p.value!r} is not finite"
                    )
                )
            elif spec.chart_type is ChartType.PIE and p.value < 0:
                out.append(
                    Violation(
                        "NEGATIVE_PIE_VALUE", f"{path}.points[{j}].y", f"pie value {p.value} is negative"
                    )
                )
            if p.category in seen:
                out.append(
                    Violation(
                        "DUPLICATE_CATEGORY",
                        f"{path}.points[{j}].x",
                        f"category {p.category!r} repeats within the series",
                    )
                )
            seen.add(p.category)
        if spec.chart_type.is_multi_series and s.categories != reference:
            out.append(
                Violation(
                    "CATEGORY_MISMATCH",
                    f"{path}.points",
                    "series do not share the same ordered category list",
                )
            )

    return ValidationReport(tuple(out))


class ChartParseError(ValueError):
    """Raised by :func:`from_json` for malformed input; ``path`` names the bad field."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


def to_dict(spec: ChartSpec) -> dict:
    return {
        "chartType": spec.chart_type.value,
        "title": spec.title,
        "xAxis": {"label": spec.x_axis.label, "dataType": spec.x_axis.data_type.value},
        "yAxis": {"label": spec.y_axis.label, "dataType": spec.y_axis.data_type.value},
        "series": [
            {
                "name": s.name,
                "points": [{"x": p.category, "y": p.value} for p in s.points],
            }
            for s in spec.series
        ],
    }


def to_json(spec: ChartSpec, indent: int | None = None) -> str:
    """Serialize to canonical chart JSON (full number precision)."""
    return json.dumps(to_dict(spec), indent=indent, ensure_ascii=False)


def _require(obj: dict, key: str, kind: type | tuple, path: str):
    if not isinstance(obj, dict):
        raise ChartParseError(path, f"expected object, got {type(obj).__name__}")
    if key not in obj:
        raise ChartParseError(f"{path}.{key}", "missing required field")
    value = obj[key]
    if not isinstance(value, kind):
        raise ChartParseError(f"{path}.{key}", f"expected {kind}, got {type(value).__name__}")
    return value


def _parse_axis(obj: dict, path: str) -> AxisSpec:
    label = _require(obj, "label", str, path)
    raw = _require(obj, "dataType", str, path)
    try:
        data_type = DataType(raw)
    except ValueError:
        raise ChartParseError(f"{path}.dataType", f"unknown data type {raw!r}") from None
    return AxisSpec(label, data_type)


def from_dict(data: dict, path: str = "$") -> ChartSpec:
    raw_type = _require(data, "chartType", str, path)
    try:
        chart_type = ChartType(raw_type)
    except ValueError:
        raise ChartParseError(f"{path}.chartType", f"unknown chart type {raw_type!r}") from None
    title = _require(data, "title", str, path)
    x_axis = _parse_axis(_require(data, "xAxis", dict, path), f"{path}.xAxis")
    y_axis = _parse_axis(_require(data, "yAxis", dict, path), f"{path}.yAxis")
    raw_series = _require(data, "series", list, path)

    series: list[Series] = []
    for i, s in enumerate(raw_series):
        spath = f"{path}.series[{i}]"
        if not isinstance(s, dict):
            raise ChartParseError(spath, "expected object")
        name = s.get("name")
        if name is not None and not isinstance(name, str):
            raise ChartParseError(f"{spath}.name", "expected string or null")
        raw_points = _require(s, "points", list, spath)
        points: list[DataPoint] = []
        for j, p in enumerate(raw_points):
            ppath = f"{spath}.points[{j}]"
            if not isinstance(p, dict):
                raise ChartParseError(ppath, "expected object")
            x = _require(p, "x", str, ppath)
            y = _require(p, "y", (int, float), ppath)
            if isinstance(y, bool) or not math.isfinite(y):
                raise ChartParseError(f"{ppath}.y", "expected a finite number")
            points.append(DataPoint(x, float(y)))
        series.append(Series(tuple(points), name))

    return ChartSpec(chart_type, title, x_axis, y_axis, tuple(series))


def from_json(text: str) -> ChartSpec:
    """Parse canonical chart JSON; raises :class:`ChartParseError` naming the bad path."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ChartParseError("$", f"invalid JSON: {e}") from None
    if not isinstance(data, dict):
        raise ChartParseError("$", "top-level value must be an object")
    return from_dict(data)
