"""End-to-end pipeline: English question in, SQL plus result tables out.

answer_question runs every stage in order and records a trace as it
goes. On failure the trace covers everything up to the failing stage
and travels on the raised PipelineError.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catalog import Catalog
from .errors import EngineError, UnknownWordsError, UnmappableError
from .preproc import (
    ExtractedValue,
    Token,
    check_words,
    display_tokens,
    extract_values,
    remove_escape_words,
    tokenize,
)
from .rulemap import (
    Element,
    ElementSequence,
    PhraseTrie,
    attach_values,
    build_matcher,
    match_rules,
)
from .sqlcore import ResultSet, bind, execute, format_headers, render_sql
from .templating import ElementCounts, count_elements, encode_template, match_template


@dataclass
class Trace:
    """Everything the pipeline did for one question, stage by stage."""

    question: str
    values: list[ExtractedValue] | None = None
    remainder: str | None = None
    raw_tokens: list[str] | None = None
    tokens: list[Token] | None = None
    unknown_words: list[str] | None = None
    escaped_tokens: list[Token] | None = None
    mapping: list[dict] | None = None
    elements: list[dict] | None = None
    counts: ElementCounts | None = None
    template: str | None = None
    builder: str | None = None
    sql: list[str] | None = None
    results: list[ResultSet] | None = None

    def to_dict(self) -> dict:
        return {
            "question": self.question,
            "values": None
            if self.values is None
            else [{"text": v.text, "anchor": v.anchor} for v in self.values],
            "remainder": self.remainder,
            "raw_tokens": self.raw_tokens,
            "tokens": _tokens_to_list(self.tokens),
            "unknown_words": self.unknown_words,
            "escaped_tokens": _tokens_to_list(self.escaped_tokens),
            "mapping": self.mapping,
            "elements": self.elements,
            "counts": None if self.counts is None else self.counts.as_dict(),
            "template": self.template,
            "builder": self.builder,
            "sql": self.sql,
            "results": None
            if self.results is None
            else [_result_to_dict(r) for r in self.results],
        }


@dataclass
class QueryResponse:
    sql: list[str]
    template: str
    results: list[ResultSet]
    trace: Trace

    def to_dict(self) -> dict:
        return {
            "sql": self.sql,
            "template": self.template,
            "results": [_result_to_dict(r) for r in self.results],
            "trace": self.trace.to_dict(),
        }


class PipelineError(EngineError):
    """A stage failed; carries the stage name and the partial trace."""

    def __init__(self, stage: str, message: str, detail: dict, trace: Trace):
        super().__init__(message, **detail)
        self.stage = stage
        self.trace = trace

    def to_dict(self) -> dict:
        return {
            "error": {
                "stage": self.stage,
                "message": self.message,
                "detail": self.detail,
            },
            "trace": self.trace.to_dict(),
        }


def _tokens_to_list(tokens: list[Token] | None) -> list[dict] | None:
    if tokens is None:
        return None
    return [{"order": t.order, "word": t.word} for t in tokens]


def _result_to_dict(result: ResultSet) -> dict:
    return {
        "columns": list(result.columns),
        "rows": [list(row) for row in result.rows],
    }


def trimming_steps(
    tokens: list[Token],
    elements: tuple[Element, ...] | list[Element],
    stuck: bool = False,
) -> list[dict]:
    """Reconstruct the last-word trimming attempts behind a greedy match.

    For each element the attempts run from one word shorter than the
    remaining string down to the phrase that matched; a stuck tail
    adds the attempts down to a single word with no closing match.
    """
    words = [t.word for t in tokens]
    steps: list[dict] = []
    pos = 0
    for element in elements:
        remaining = len(words) - pos
        length = len(element.matched_phrase)
        for trial in range(remaining - 1, length - 1, -1):
            steps.append({"kind": "trim", "text": " ".join(words[pos : pos + trial])})
        steps.append(
            {
                "kind": "match",
                "text": " ".join(element.matched_phrase),
                "symbol": element.symbol.label(),
            }
        )
        pos += length
    if stuck and pos < len(words):
        remaining = len(words) - pos
        for trial in range(remaining - 1, 0, -1):
            steps.append({"kind": "trim", "text": " ".join(words[pos : pos + trial])})
    return steps


def element_records(seq: ElementSequence) -> list[dict]:
    records = [
        {
            "category": e.symbol.category.value,
            "symbol": e.symbol.label(),
            "description": e.symbol.description(),
            "phrase": " ".join(e.matched_phrase),
            "start_order": e.start_order,
        }
        for e in seq.elements
    ]
    for av in seq.values:
        records.append(
            {
                "category": "value",
                "symbol": "value",
                "description": av.value.text,
                "interval_index": av.interval_index,
            }
        )
    return records


def answer_question(
    question: str, catalog: Catalog, matcher: PhraseTrie | None = None
) -> QueryResponse:
    """Run the full pipeline for one question.

    Raises PipelineError on any stage failure; the error carries the
    partial trace. A prebuilt matcher may be passed to skip rebuilding
    the trie per call; it must come from the same catalog.
    """
    trace = Trace(question=question)
    try:
        remainder, values = extract_values(question)
        trace.values = values
        trace.remainder = remainder
        trace.raw_tokens = display_tokens(question)

        tokens = tokenize(remainder)
        trace.tokens = tokens

        unknown = check_words(tokens, catalog.dictionary)
        trace.unknown_words = unknown
        if unknown:
            raise UnknownWordsError(unknown)

        escaped = remove_escape_words(tokens, catalog.escape_words)
        trace.escaped_tokens = escaped

        if matcher is None:
            matcher = build_matcher(catalog.rules)
        try:
            seq = match_rules(escaped, matcher)
        except UnmappableError as err:
            trace.mapping = trimming_steps(escaped, err.matched, stuck=True)
            raise
        trace.mapping = trimming_steps(escaped, seq.elements)

        seq = attach_values(seq, values)
        trace.elements = element_records(seq)

        counts = count_elements(seq)
        trace.counts = counts
        code = encode_template(counts)
        trace.template = code

        builder = match_template(counts, catalog.templates)
        trace.builder = builder.value

        queries = bind(seq, builder, catalog.schema)
        sql = [render_sql(q) for q in queries]
        trace.sql = sql

        results = []
        for q in queries:
            raw = execute(q, catalog.data)
            results.append(
                ResultSet(columns=tuple(format_headers(q)), rows=raw.rows)
            )
        trace.results = results

        return QueryResponse(sql=sql, template=code, results=results, trace=trace)
    except PipelineError:
        raise
    except EngineError as err:
        raise PipelineError(
            stage=err.stage, message=err.message, detail=err.detail, trace=trace
        ) from err
