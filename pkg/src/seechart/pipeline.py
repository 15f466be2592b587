"""End-to-end orchestration: chart in, ranked/planned/realized summary out.

Both the CLI and the HTTP service call through here so the two surfaces
produce byte-identical text for identical (chart, level, seed, selection).
"""

from __future__ import annotations

from dataclasses import replace

from . import insights, planner, query, realizer
from .insights import Category, InsightMessage
from .model import ChartSpec
from .planner import LengthLevel, SummaryPlan
from .query import Selection
from .realizer import RealizationContext, SummaryText, TemplateRegistry


def analyze_and_rank(spec: ChartSpec) -> list[InsightMessage]:
    return planner.rank(insights.analyze(spec), spec.chart_type)


def build_plan(spec: ChartSpec, level: LengthLevel) -> SummaryPlan:
    return planner.plan(analyze_and_rank(spec), level)


def summarize(
    spec: ChartSpec,
    level: LengthLevel = LengthLevel.MODERATE,
    seed: int = 0,
    registry: TemplateRegistry | None = None,
) -> SummaryText:
    """Full-chart summary at the given length, deterministic in the seed."""
    ctx = RealizationContext.for_chart(spec, seed)
    return realizer.realize(build_plan(spec, level), ctx, registry)


def build_selection_plan(spec: ChartSpec, sel: Selection, level: LengthLevel) -> SummaryPlan:
    """Plan a partial summary: analyze the restricted sub-chart, swap in the selection intro."""
    sub = query.restrict(spec, sel)
    ranked = planner.rank(insights.analyze(sub), sub.chart_type)
    intro = replace(query.selection_intro(spec, sel), salience=1.0)
    rest = [m for m in ranked if m.category is not Category.INTRO_ENCODING]
    return planner.plan_selection([intro, *rest], level)


def summarize_selection(
    spec: ChartSpec,
    sel: Selection,
    level: LengthLevel = LengthLevel.MODERATE,
    seed: int = 0,
    registry: TemplateRegistry | None = None,
) -> SummaryText:
    ctx = RealizationContext.for_chart(spec, seed)
    return realizer.realize(build_selection_plan(spec, sel, level), ctx, registry)


def parse_select_expr(expr: str) -> list[int]:
    """Parse a selection expression like ``0-2,5`` into sorted point indices."""
    out: set[int] = set()
    for part in expr.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part:
            a, _, b = part.partition("-")
            start, end = int(a), int(b)
            if end < start:
                raise ValueError(f"bad range {part!r}")
            out.update(range(start, end + 1))
        else:
            out.add(int(part))
    return sorted(out)
