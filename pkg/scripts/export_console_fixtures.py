"""Regenerate the JSON fixtures the browser console tests run against.

    python3 scripts/export_console_fixtures.py [--out DIR]

Each fixture is the exact wire payload the HTTP API would return for
one request, captured from the real pipeline so the console tests stay
honest without a running server.
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from askdb import answer_question, load_builtin_catalog
from askdb.gateway import PipelineError

DEFAULT_OUT = Path(__file__).resolve().parent.parent / "frontend" / "tests" / "fixtures"

QUESTIONS = {
    "worked": (
        "What is the year of establishment of department and code of department "
        'which department name equals "Department of Economics and Management"?'
    ),
    "two_tables": "What are the available departments and faculties?",
    "aggregate": "What is the maximum year of establishment of departments?",
    "unknown_word": "What are the available rockets?",
    "unmappable": "What is the name year?",
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default=str(DEFAULT_OUT))
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    catalog = load_builtin_catalog()

    for name, question in QUESTIONS.items():
        try:
            payload = answer_question(question, catalog).to_dict()
        except PipelineError as err:
            payload = err.to_dict()
        path = out / f"{name}.json"
        path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        print(f"wrote {path}")

    schema = {
        "tables": [
            {
                "name": t.name,
                "attributes": [{"name": a.name, "key": a.key} for a in t.attributes],
                "default_attribute": t.default_attribute,
            }
            for t in catalog.schema.tables
        ]
    }
    path = out / "schema.json"
    path.write_text(json.dumps(schema, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
