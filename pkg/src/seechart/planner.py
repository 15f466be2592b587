"""Content selection and document planning for chart summaries.

Stage 2 weights each insight by how often human summary corpora report
that kind of fact for the chart type at hand, then sorts. Stage 3 fuses
related messages (max+min into one sentence, local trends into one
connective-joined sentence, per-series trends into the combined trend
sentence), pins the intro first, and truncates to the requested length.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Sequence

from .insights import Category, InsightMessage
from .model import ChartType


class LengthLevel(Enum):
    SHORT = "short"
    MODERATE = "moderate"
    LONG = "long"


# Non-intro message groups kept after the intro sentence, per level.
GROUPS_PER_LEVEL = {LengthLevel.SHORT: 2, LengthLevel.MODERATE: 4, LengthLevel.LONG: 9}

_OTHERS = "others"

# Occurrence ratios of insight kinds in human-written chart summaries,
# per chart type. Categories without an explicit entry fall back to the
# residual "others" ratio and are only planned when nothing else exists.
_BAR_WEIGHTS = {
    Category.EXTREMA_MIN_MAX: 0.57,
    Category.COMPARISON_RELATIVE: 0.12,
    Category.ORDER_RANK: 0.08,
    Category.TREND_GLOBAL: 0.07,
    Category.DERIVED_VALUE: 0.06,
    Category.COMPARISON_ABSOLUTE: 0.02,
    _OTHERS: 0.04,
}
_LINE_WEIGHTS = {
    Category.TREND_GLOBAL: 0.62,
    Category.TREND_LOCAL: 0.62,  # the corpus "trend" ratio covers both scopes
    Category.EXTREMA_MIN_MAX: 0.22,
    Category.COMPARISON_RELATIVE: 0.10,
    Category.COMPARISON_ABSOLUTE: 0.10,
    Category.MAX_DIFFERENCE: 0.04,
    _OTHERS: 0.02,
}
_GROUPED_BAR_WEIGHTS = {
    Category.GLOBAL_EXTREMA: 0.36,
    Category.TREND_GLOBAL: 0.18,
    Category.COMPARISON_RELATIVE: 0.13,
    Category.MAX_DIFFERENCE: 0.13,
    Category.TREND_LOCAL: 0.07,
    Category.ORDER_RANK: 0.04,
    Category.LOCAL_EXTREMA: 0.02,
    _OTHERS: 0.07,
}
_MULTI_LINE_WEIGHTS = {
    Category.TREND_GLOBAL: 0.48,
    Category.ORDER_RANK: 0.24,
    Category.GLOBAL_EXTREMA: 0.13,
    Category.LOCAL_EXTREMA: 0.05,
    Category.COMPARISON_RELATIVE: 0.02,
    Category.COMPARISON_ABSOLUTE: 0.02,
    _OTHERS: 0.08,
}

SALIENCE_TABLE: dict[ChartType, dict] = {
    ChartType.BAR: _BAR_WEIGHTS,
    ChartType.PIE: _BAR_WEIGHTS,  # no pie column in the corpora; bar ratios apply
    ChartType.LINE: _LINE_WEIGHTS,
    ChartType.GROUPED_BAR: _GROUPED_BAR_WEIGHTS,
    ChartType.STACKED_BAR: _GROUPED_BAR_WEIGHTS,
    ChartType.MULTI_LINE: _MULTI_LINE_WEIGHTS,
}


class UnknownChartType(ValueError):
    pass


class EmptyPlan(ValueError):
    pass


def salience_of(chart_type: ChartType, category: Category) -> tuple[float, bool]:
    """(weight, is_residual) for a category under the given chart type."""
    try:
        table = SALIENCE_TABLE[chart_type]
    except KeyError:
        raise UnknownChartType(f"no salience table for {chart_type!r}") from None
    if category is Category.INTRO_ENCODING:
        return 1.0, False
    if category in table:
        return table[category], False
    return table[_OTHERS], True


def rank(messages: Sequence[InsightMessage], chart_type: ChartType) -> list[InsightMessage]:
    """Assign salience weights and sort descending (stable), intro pinned first."""
    if not messages:
        raise EmptyPlan("no messages to rank")
    weighted = []
    for msg in messages:
        weight, residual = salience_of(chart_type, msg.category)
        weighted.append(replace(msg, salience=weight, residual=residual))
    intro = [m for m in weighted if m.category is Category.INTRO_ENCODING]
    rest = [m for m in weighted if m.category is not Category.INTRO_ENCODING]
    rest.sort(key=lambda m: -m.salience)
    return intro + rest


@dataclass(frozen=True)
class PlannedSentence:
    """One output sentence: a lead message plus any messages fused into it."""

    messages: tuple[InsightMessage, ...]

    @property
    def lead(self) -> InsightMessage:
        return self.messages[0]


@dataclass(frozen=True)
class SummaryPlan:
    length_level: LengthLevel
    sentences: tuple[PlannedSentence, ...]


def _fuse(ranked: Sequence[InsightMessage]) -> list[PlannedSentence]:
    """Group fusable messages; each group becomes exactly one sentence.

    Local-trend messages merge into one connective-joined sentence at the
    first one's rank position. Per-series trend messages fold into the
    combined cross-series trend message when one exists (its sentence
    enumerates every series' direction).
    """
    groups: list[PlannedSentence] = []
    locals_group: list[InsightMessage] = []
    locals_at: int | None = None
    combined_trend_at: int | None = None

    for msg in ranked:
        if msg.category is Category.TREND_LOCAL:
            if locals_at is None:
                locals_at = len(groups)
                groups.append(PlannedSentence(()))  # placeholder, filled below
            locals_group.append(msg)
            continue
        if msg.category is Category.TREND_GLOBAL and msg.params.get("scope") == "chart":
            combined_trend_at = len(groups)
            groups.append(PlannedSentence((msg,)))
            continue
        if (
            msg.category is Category.TREND_GLOBAL
            and msg.params.get("scope") == "series"
            and combined_trend_at is not None
        ):
            old = groups[combined_trend_at]
            groups[combined_trend_at] = PlannedSentence(old.messages + (msg,))
            continue
        groups.append(PlannedSentence((msg,)))

    if locals_at is not None:
        # clauses read in chart order even though ranking is by change size
        locals_group.sort(key=lambda m: m.param("start_index"))
        groups[locals_at] = PlannedSentence(tuple(locals_group))
    return groups


def plan(ranked: Sequence[InsightMessage], level: LengthLevel) -> SummaryPlan:
    """Select and order sentences for the requested length.

    The intro is always the first sentence; the rest follow ranking order.
    Fusion happens before truncation, so a fused group counts as one slot.
    Residual-weight messages are skipped unless fewer than two ranked
    messages exist at all.
    """
    if not ranked:
        raise EmptyPlan("cannot plan an empty message list")
    if ranked[0].category is not Category.INTRO_ENCODING:
        raise EmptyPlan("ranked messages must start with the intro message")
    intro = PlannedSentence((ranked[0],))
    groups = _fuse(ranked[1:])

    eligible = [g for g in groups if not g.lead.residual]
    if len(eligible) < 2:
        eligible = groups
    keep = GROUPS_PER_LEVEL[level]
    return SummaryPlan(level, (intro, *eligible[:keep]))


def plan_selection(messages: Sequence[InsightMessage], level: LengthLevel) -> SummaryPlan:
    """Plan a partial summary over a selection-restricted sub-chart.

    Identical planning rules; the caller supplies an intro message whose
    params state the selection extent (see ``query.selection_intro``).
    """
    if not messages:
        raise EmptyPlan("cannot plan an empty selection")
    return plan(messages, level)
