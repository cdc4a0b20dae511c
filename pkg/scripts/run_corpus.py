"""Answer every question in a file and summarise what the pipeline did.

    python3 scripts/run_corpus.py [questions.txt] [--config FILE]

Defaults to the sample questions next to this script and the packaged
university database. Prints one block per question: template code,
generated SQL, and row counts; failures print the stage that rejected
the question.
"""

from __future__ import annotations

import argparse
from pathlib import Path

from askdb import answer_question, load_builtin_catalog, load_catalog_file
from askdb.gateway import PipelineError
from askdb.rulemap import build_matcher

DEFAULT_QUESTIONS = Path(__file__).with_name("sample_questions.txt")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("questions", nargs="?", default=str(DEFAULT_QUESTIONS))
    parser.add_argument("--config", default=None)
    args = parser.parse_args()

    catalog = (
        load_builtin_catalog() if args.config is None else load_catalog_file(args.config)
    )
    matcher = build_matcher(catalog.rules)

    failures = 0
    for line in Path(args.questions).read_text(encoding="utf-8").splitlines():
        question = line.strip()
        if not question:
            continue
        print(question)
        try:
            response = answer_question(question, catalog, matcher=matcher)
        except PipelineError as err:
            print(f"  rejected at {err.stage}: {err.message}")
            failures += 1
            continue
        print(f"  template {response.template}")
        for sql, result in zip(response.sql, response.results):
            print(f"  {sql}")
            print(f"    {len(result.rows)} row(s): {result.columns}")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
