"""seechart: deconstruct charts into data and narrate them for non-visual exploration."""

from .insights import Category, InsightMessage, analyze
from .model import (
    AxisSpec,
    ChartParseError,
    ChartSpec,
    ChartType,
    DataPoint,
    DataType,
    Series,
    chart,
    from_json,
    to_json,
    validate,
)
from .pipeline import summarize, summarize_selection
from .planner import LengthLevel, SummaryPlan, plan, rank
from .query import Answer, Query, Selection, answer, describe_selection, parse_query, restrict
from .realizer import RealizationContext, SummaryText, realize, realize_point, realize_title

__version__ = "0.1.0"

__all__ = [
    "AxisSpec",
    "Answer",
    "Category",
    "ChartParseError",
    "ChartSpec",
    "ChartType",
    "DataPoint",
    "DataType",
    "InsightMessage",
    "LengthLevel",
    "Query",
    "RealizationContext",
    "Selection",
    "Series",
    "SummaryPlan",
    "SummaryText",
    "analyze",
    "answer",
    "chart",
    "describe_selection",
    "from_json",
    "parse_query",
    "plan",
    "rank",
    "realize",
    "realize_point",
    "realize_title",
    "restrict",
    "summarize",
    "summarize_selection",
    "to_json",
    "validate",
]
