"""Template-based sentence realization with seeded variant selection.

Each message category owns a pool of sentence templates with named slots;
one is drawn per sentence from a single seeded random sequence, so a
(plan, seed) pair always renders the same text while different seeds vary
the phrasing. Local-trend groups render as one sentence of connective-
joined clauses; the combined cross-series trend renders from its own
merged parameters.
"""

from __future__ import annotations

import json
import os
import random
import string
from dataclasses import dataclass
from importlib import resources
from typing import Mapping

from .insights import Category, InsightMessage
from .model import ChartSpec
from .planner import PlannedSentence, SummaryPlan

TEMPLATES_ENV_VAR = "SEECHART_TEMPLATES"

# Clause connectives for fused local-trend sentences; the final clause
# always gets "and lastly".
CONNECTIVES = ("and", "however", "after that")

_MIN_VARIANTS = 2
_RICH_KEYS_MIN = 3  # intro and extrema pools carry at least three variants


class TemplateRegistryError(ValueError):
    pass


class MissingTemplate(KeyError):
    pass


class UnboundSlot(KeyError):
    pass


class IndexOutOfBounds(IndexError):
    pass


@dataclass(frozen=True)
class Template:
    text: str
    weight: float = 1.0

    def slots(self) -> set[str]:
        return {field for _, field, _, _ in string.Formatter().parse(self.text) if field}


class TemplateRegistry:
    """Immutable pool of sentence templates keyed by message category."""

    def __init__(self, pools: Mapping[str, list[Template]]):
        self._pools = {k: tuple(v) for k, v in pools.items()}
        self._validate()

    def _validate(self) -> None:
        for key, pool in self._pools.items():
            minimum = _RICH_KEYS_MIN if key.startswith("intro") or key == "extrema_min_max" else _MIN_VARIANTS
            if len(pool) < minimum:
                raise TemplateRegistryError(f"category {key!r} needs >= {minimum} templates, has {len(pool)}")

    def has(self, key: str) -> bool:
        return key in self._pools

    def pool(self, key: str) -> tuple[Template, ...]:
        try:
            return self._pools[key]
        except KeyError:
            raise MissingTemplate(f"no templates registered for {key!r}") from None

    def slots(self, key: str) -> set[str]:
        """Every slot any template of this category may reference."""
        out: set[str] = set()
        for t in self.pool(key):
            out |= t.slots()
        return out

    def pick(self, key: str, rng: random.Random) -> Template:
        pool = self.pool(key)
        return rng.choices(pool, weights=[t.weight for t in pool], k=1)[0]

    @classmethod
    def from_mapping(cls, data: Mapping) -> "TemplateRegistry":
        pools: dict[str, list[Template]] = {}
        for key, entries in data.items():
            if not isinstance(entries, list):
                raise TemplateRegistryError(f"category {key!r} must map to a list of templates")
            pool = []
            for e in entries:
                if not isinstance(e, dict) or "text" not in e:
                    raise TemplateRegistryError(f"template entries for {key!r} need a 'text' field")
                pool.append(Template(e["text"], float(e.get("weight", 1))))
            pools[key] = pool
        return cls(pools)


def load_registry(path: str | None = None) -> TemplateRegistry:
    """Load templates from ``path``, $SEECHART_TEMPLATES, or the packaged defaults."""
    path = path or os.environ.get(TEMPLATES_ENV_VAR)
    if path:
        with open(path, encoding="utf-8") as f:
            return TemplateRegistry.from_mapping(json.load(f))
    text = resources.files(__package__).joinpath("templates.json").read_text(encoding="utf-8")
    return TemplateRegistry.from_mapping(json.loads(text))


_default_registry: TemplateRegistry | None = None


def default_registry() -> TemplateRegistry:
    global _default_registry
    if _default_registry is None:
        _default_registry = load_registry()
    return _default_registry


@dataclass(frozen=True)
class RealizationContext:
    """Everything realization depends on besides the plan itself."""

    seed: int
    x_label: str
    y_label: str
    x_label_plural: str

    @classmethod
    def for_chart(cls, spec: ChartSpec, seed: int) -> "RealizationContext":
        from .insights import pluralize

        return cls(
            seed=seed,
            x_label=spec.x_axis.label,
            y_label=spec.y_axis.label,
            x_label_plural=pluralize(spec.x_axis.label),
        )


@dataclass(frozen=True)
class SummaryText:
    sentences: tuple[str, ...]

    @property
    def text(self) -> str:
        return " ".join(self.sentences)


def format_value(value: object) -> str:
    """Spoken rendering of a slot value: integers bare, floats trimmed, no separators."""
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if value.is_integer() and abs(value) < 1e16:
            return str(int(value))
        out = f"{value:.10f}".rstrip("0").rstrip(".")
        return out if out else "0"
    return str(value)


def _fill(template: Template, params: Mapping[str, object]) -> str:
    parts: list[str] = []
    for literal, field, spec, _ in string.Formatter().parse(template.text):
        parts.append(literal)
        if field is None:
            continue
        if field not in params:
            raise UnboundSlot(f"slot {{{field}}} has no value (template: {template.text!r})")
        value = params[field]
        parts.append(format(value, spec) if spec else format_value(value))
    return "".join(parts)


def _tidy(sentence: str) -> str:
    while "  " in sentence:
        sentence = sentence.replace("  ", " ")
    sentence = sentence.strip()
    if sentence and sentence[-1] not in ".?!":
        sentence += "."
    return sentence


def template_key_for(msg: InsightMessage) -> str:
    return msg.template_key or msg.category.value


def _merged_params(msg: InsightMessage, ctx: RealizationContext) -> dict:
    return {
        "x_label": ctx.x_label,
        "y_label": ctx.y_label,
        "x_label_plural": ctx.x_label_plural,
        **msg.params,
    }


def _render_local_trend_group(
    sentence: PlannedSentence, ctx: RealizationContext, rng: random.Random, registry: TemplateRegistry
) -> str:
    clause_template = registry.pick("trend_local_clause", rng)
    abs_template = registry.pick("trend_local_clause_abs", rng)
    offset = rng.randrange(len(CONNECTIVES))
    clauses = []
    for msg in sentence.messages:
        t = abs_template if msg.params.get("percent_is_absolute_delta") else clause_template
        clauses.append(_fill(t, _merged_params(msg, ctx)))
    parts = ["The line ", clauses[0]]
    for i, clause in enumerate(clauses[1:-1]):
        parts.append(f", {CONNECTIVES[(offset + i) % len(CONNECTIVES)]} {clause}")
    parts.append(f", and lastly, {clauses[-1]}")
    return _tidy("".join(parts))


def realize(plan: SummaryPlan, ctx: RealizationContext, registry: TemplateRegistry | None = None) -> SummaryText:
    """Render a plan to sentences. Pure in (plan, ctx.seed, registry)."""
    registry = registry or default_registry()
    rng = random.Random(ctx.seed)
    sentences: list[str] = []
    for planned in plan.sentences:
        lead = planned.lead
        if lead.category is Category.TREND_LOCAL and len(planned.messages) > 1:
            sentences.append(_render_local_trend_group(planned, ctx, rng, registry))
            continue
        template = registry.pick(template_key_for(lead), rng)
        sentences.append(_tidy(_fill(template, _merged_params(lead, ctx))))
    return SummaryText(tuple(sentences))


def realize_title(spec: ChartSpec) -> str:
    """Spoken chart identification: type plus title when one exists."""
    base = f"This is a {spec.chart_type.display_name} chart."
    if spec.title:
        return f"{base} It shows {spec.title}"
    return base


def realize_point(spec: ChartSpec, series_index: int, point_index: int) -> str:
    """Spoken rendering of one data point, prefixed with the series on multi-series charts."""
    if not (0 <= series_index < len(spec.series)):
        raise IndexOutOfBounds(f"series index {series_index} out of range")
    series = spec.series[series_index]
    if not (0 <= point_index < len(series.points)):
        raise IndexOutOfBounds(f"point index {point_index} out of range")
    point = series.points[point_index]
    body = f"n {spec.x_axis.label} {point.category}, the {spec.y_axis.label} was, {format_value(point.value)}."
    if len(spec.series) > 1 and series.name:
        return f"For {series.name}, i{body}"
    return f"I{body}"
