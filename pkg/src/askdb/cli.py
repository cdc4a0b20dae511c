"""Command line interface.

    askdb [--config FILE] query "QUESTION" [--trace] [--json]
    askdb [--config FILE] batch FILE
    askdb [--config FILE] serve [--bind HOST:PORT] [--static DIR]
    askdb [--config FILE] validate-config

The configuration file defaults to $NLWIDB_CONFIG, then to the
packaged university database. Exit codes: 1 for a failed question,
2 for a configuration problem.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .catalog import (
    load_builtin_catalog,
    load_catalog_file,
    parse_catalog,
    validate_catalog,
)
from .errors import CatalogError
from .gateway import PipelineError, QueryResponse, answer_question
from .sqlcore import ResultSet

CONFIG_ENV = "NLWIDB_CONFIG"


def render_table(result: ResultSet) -> str:
    columns = [str(c) for c in result.columns]
    rows = [[str(cell) for cell in row] for row in result.rows]
    widths = [len(c) for c in columns]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = [
        "  ".join(c.ljust(widths[i]) for i, c in enumerate(columns)).rstrip(),
        "  ".join("-" * w for w in widths),
    ]
    for row in rows:
        lines.append(
            "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip()
        )
    return "\n".join(lines)


def render_trace(response: QueryResponse) -> str:
    trace = response.trace
    out: list[str] = []
    out.append("Checking Words:")
    out.append(f"  the user question: {trace.question}")
    out.append(f"  after removing value: {trace.remainder}")
    if trace.unknown_words:
        out.append("  words not in the data dictionary: " + ", ".join(trace.unknown_words))
    else:
        out.append("  all words found in the data dictionary")
    out.append("Tokenisation:")
    for i, token in enumerate(trace.raw_tokens or []):
        out.append(f"  the token [{i}]: {token}")
    out.append("Removing Excessive Words:")
    escaped = " ".join(t.word for t in trace.escaped_tokens or [])
    out.append(f"  {escaped}")
    out.append("Mapping Rules:")
    out.append(f"  the string for rule mapping: {escaped}")
    for step in trace.mapping or []:
        if step["kind"] == "trim":
            out.append(f'  the string after removing last word is "{step["text"]}"')
        else:
            out.append(
                f'  the string "{step["text"]}" mapped with rule symbol: '
                f"{step['symbol']}"
            )
    out.append("Identifying SQL Elements:")
    for record in trace.elements or []:
        out.append(f"  {record['category'].capitalize()}: {record['description']}")
    out.append("Mapping SQL Template:")
    out.append("  element counts [attribute, table, and, aggregate, interval, value]")
    out.append(f"  template code: {trace.template}")
    out.append(f"  query builder: {trace.builder}")
    out.append("Constructing SQL Query:")
    for sql in trace.sql or []:
        out.append(f"  {sql}")
    out.append("Organising Result Set:")
    for result in response.results:
        for line in render_table(result).splitlines():
            out.append(f"  {line}")
        out.append("")
    while out and out[-1] == "":
        out.pop()
    return "\n".join(out)


def _load(config: str | None):
    if config is None:
        return load_builtin_catalog()
    return load_catalog_file(config)


def _cmd_query(catalog, args) -> int:
    try:
        response = answer_question(args.question, catalog)
    except PipelineError as err:
        if args.as_json:
            print(json.dumps(err.to_dict()))
        else:
            print(f"error at {err.stage}: {err.message}", file=sys.stderr)
        return 1
    if args.as_json:
        print(json.dumps(response.to_dict()))
        return 0
    if args.trace:
        print(render_trace(response))
        return 0
    print(f"template: {response.template}")
    for sql in response.sql:
        print(f"sql: {sql}")
    for result in response.results:
        print()
        print(render_table(result))
    return 0


def _cmd_batch(catalog, args) -> int:
    try:
        text = open(args.path, encoding="utf-8").read()
    except OSError as err:
        print(f"cannot read {args.path}: {err}", file=sys.stderr)
        return 2
    failures = 0
    for line in text.splitlines():
        question = line.strip()
        if not question:
            continue
        print(f"question: {question}")
        try:
            response = answer_question(question, catalog)
        except PipelineError as err:
            print(f"error[{err.stage}]: {err.message}")
            failures += 1
            print()
            continue
        print(f"template: {response.template}")
        for sql in response.sql:
            print(f"sql: {sql}")
        for result in response.results:
            print(render_table(result))
        print()
    return 1 if failures else 0


def _cmd_validate(args) -> int:
    if args.config is None:
        catalog = load_builtin_catalog()
        problems = validate_catalog(catalog)
    else:
        try:
            text = open(args.config, encoding="utf-8").read()
            document = json.loads(text)
        except OSError as err:
            print(f"cannot read {args.config}: {err}", file=sys.stderr)
            return 2
        except json.JSONDecodeError as err:
            print(f"configuration is not valid JSON: {err}", file=sys.stderr)
            return 2
        try:
            problems = validate_catalog(parse_catalog(document))
        except CatalogError as err:
            print(err.message, file=sys.stderr)
            return 2
    if problems:
        for problem in problems:
            print(problem)
        return 2
    print("ok")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="askdb",
        description="Answer English questions with SQL over an embedded database.",
    )
    parser.add_argument(
        "--config",
        default=os.environ.get(CONFIG_ENV),
        help=f"configuration file (default: ${CONFIG_ENV} or the packaged database)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    query = commands.add_parser("query", help="answer a single question")
    query.add_argument("question")
    query.add_argument("--trace", action="store_true", help="print the staged trace")
    query.add_argument(
        "--json",
        dest="as_json",
        action="store_true",
        help="print the full response as JSON",
    )

    batch = commands.add_parser("batch", help="answer one question per line of a file")
    batch.add_argument("path")

    serve = commands.add_parser("serve", help="run the HTTP API")
    serve.add_argument("--bind", default="127.0.0.1:8000", metavar="HOST:PORT")
    serve.add_argument("--static", default=None, help="console asset directory")

    commands.add_parser("validate-config", help="check the configuration file")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "validate-config":
        return _cmd_validate(args)

    if args.command == "serve":
        from .service import serve

        try:
            serve(config_path=args.config, bind=args.bind, static_dir=args.static)
        except (CatalogError, ValueError) as err:
            print(str(err), file=sys.stderr)
            return 2
        return 0

    try:
        catalog = _load(args.config)
    except CatalogError as err:
        print(err.message, file=sys.stderr)
        return 2

    if args.command == "query":
        return _cmd_query(catalog, args)
    return _cmd_batch(catalog, args)


if __name__ == "__main__":
    sys.exit(main())
