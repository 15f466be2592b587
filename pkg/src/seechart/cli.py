"""Command-line interface: deconstruct, summarize, query, and serve charts.

Exit codes: 0 success, 1 usage error, 2 input error (bad files, malformed
charts, unanswerable selections).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import deconstruct, pipeline, query, realizer
from .deconstruct import DeconstructionError
from .model import ChartParseError, from_json, to_dict
from .planner import LengthLevel
from .query import Selection

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; we reserve that for input errors
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as f:
        return f.read()


def _load_chart(path: str):
    return from_json(_read(path))


def _fail(code: str, message: str) -> int:
    print(f"error[{code}]: {message}", file=sys.stderr)
    return EXIT_INPUT


def _selection_from_args(args, spec) -> Selection | None:
    if not args.select:
        return None
    indices = pipeline.parse_select_expr(args.select)
    if args.series is not None:
        return Selection.single_series(args.series, indices)
    return Selection.cross_series(indices, len(spec.series))


def cmd_deconstruct(args) -> int:
    text = _read(args.input)
    warnings: list[str] = []
    stripped = text.lstrip()
    try:
        if args.format == "svg" or (args.format == "auto" and stripped.startswith("<")):
            spec = deconstruct.deconstruct_svg(text, warnings)
        else:
            spec = deconstruct.ingest_vegalite(text)
    except DeconstructionError as e:
        return _fail(type(e).__name__, str(e))
    print(json.dumps({"chart": to_dict(spec), "warnings": warnings}, indent=2, ensure_ascii=False))
    return EXIT_OK


def cmd_summarize(args) -> int:
    try:
        spec = _load_chart(args.chart)
        registry = realizer.load_registry(args.templates) if args.templates else None
        level = LengthLevel(args.length)
        sel = _selection_from_args(args, spec)
        if sel is not None:
            summary = pipeline.summarize_selection(spec, sel, level, args.seed, registry)
        else:
            summary = pipeline.summarize(spec, level, args.seed, registry)
    except (OSError, ChartParseError, query.EmptySelection, query.InvalidSelection, ValueError) as e:
        return _fail(type(e).__name__, str(e))
    print(summary.text)
    return EXIT_OK


def cmd_insights(args) -> int:
    try:
        spec = _load_chart(args.chart)
        messages = pipeline.analyze_and_rank(spec)
    except (OSError, ChartParseError, ValueError) as e:
        return _fail(type(e).__name__, str(e))
    out = [
        {"category": m.category.value, "salience": m.salience, "params": _jsonable(m.params)}
        for m in messages
    ]
    print(json.dumps(out, indent=2, ensure_ascii=False))
    return EXIT_OK


def cmd_plan(args) -> int:
    try:
        spec = _load_chart(args.chart)
        plan = pipeline.build_plan(spec, LengthLevel(args.length))
    except (OSError, ChartParseError, ValueError) as e:
        return _fail(type(e).__name__, str(e))
    out = {
        "level": plan.length_level.value,
        "sentences": [
            {
                "categories": [m.category.value for m in s.messages],
                "params": [_jsonable(m.params) for m in s.messages],
            }
            for s in plan.sentences
        ],
    }
    print(json.dumps(out, indent=2, ensure_ascii=False))
    return EXIT_OK


def cmd_answer(args) -> int:
    try:
        spec = _load_chart(args.chart)
    except (OSError, ChartParseError) as e:
        return _fail(type(e).__name__, str(e))
    parsed = query.parse_query(args.query, spec)
    result = query.answer(spec, parsed)
    print(result.spoken_text)
    return EXIT_OK


def cmd_serve(args) -> int:
    import logging

    import uvicorn

    from .service import create_app

    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(name)s %(message)s")
    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def _jsonable(params) -> dict:
    out = {}
    for k, v in params.items():
        if isinstance(v, tuple):
            out[k] = [list(e) if isinstance(e, tuple) else e for e in v]
        else:
            out[k] = v
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="seechart", description="Deconstruct charts and narrate them.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("deconstruct", help="SVG or declarative spec to canonical chart JSON")
    p.add_argument("input", help="path to an SVG or Vega-Lite-style JSON file, or - for stdin")
    p.add_argument("--format", choices=["auto", "svg", "vegalite"], default="auto")
    p.set_defaults(func=cmd_deconstruct)

    p = sub.add_parser("summarize", help="chart JSON to natural-language summary")
    p.add_argument("chart", help="path to canonical chart JSON, or - for stdin")
    p.add_argument("--length", choices=[l.value for l in LengthLevel], default="moderate")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--select", help='point indices to summarize, e.g. "0-2,5"')
    p.add_argument("--series", type=int, help="restrict --select to one series index")
    p.add_argument("--templates", help="path to a template registry JSON file")
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("insights", help="dump ranked insight messages as JSON")
    p.add_argument("chart")
    p.set_defaults(func=cmd_insights)

    p = sub.add_parser("plan", help="dump the summary plan as JSON")
    p.add_argument("chart")
    p.add_argument("--length", choices=[l.value for l in LengthLevel], default="moderate")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("answer", help="answer a keyword or value query about a chart")
    p.add_argument("chart")
    p.add_argument("--query", required=True)
    p.set_defaults(func=cmd_answer)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=None)
    p.set_defaults(func=cmd_serve)

    return parser


def cli_main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # argparse exits for usage errors and --help
        return int(e.code or 0)
    if args.command == "serve" and args.port is None:
        import os

        args.port = int(os.environ.get("SEECHART_PORT", "8040"))
    return args.func(args)


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
