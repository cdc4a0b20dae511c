"""Failure types raised by the question-to-SQL pipeline.

Every error carries the pipeline stage it belongs to, a human-readable
message, and a small ``detail`` dict that survives JSON serialization
unchanged. The gateway republishes these as :class:`PipelineError`
together with the partial trace collected so far.
"""

from __future__ import annotations


class EngineError(Exception):
    """Base class for everything the engine can report."""

    stage = "engine"

    def __init__(self, message: str, **detail):
        super().__init__(message)
        self.message = message
        self.detail = detail


class CatalogError(EngineError):
    """A configuration document failed to parse or validate."""

    stage = "catalog"

    def __init__(self, message: str, violations: list[str] | None = None):
        self.violations = list(violations or [])
        super().__init__(message, violations=self.violations)


class UnbalancedQuoteError(EngineError):
    stage = "value-extract"

    def __init__(self, offset: int):
        self.offset = offset
        super().__init__(
            f"unbalanced double quote at character {offset}", offset=offset
        )


class UnknownWordsError(EngineError):
    stage = "word-check"

    def __init__(self, words: list[str]):
        self.words = list(words)
        listing = ", ".join(self.words)
        super().__init__(
            f"words not found in the data dictionary: {listing}", words=self.words
        )


class UnmappableError(EngineError):
    """No rule phrase matches at some token, even after trimming to one word."""

    stage = "rule-map"

    def __init__(self, word: str, order: int, matched=()):
        self.word = word
        self.order = order
        # elements mapped before the failure, kept so traces can show the attempts
        self.matched = tuple(matched)
        super().__init__(
            f"no rule matches at token '{word}' (order {order})",
            word=word,
            order=order,
        )


class DanglingValueError(EngineError):
    stage = "value-attach"

    def __init__(self, text: str):
        self.text = text
        super().__init__(
            f"value '{text}' has no preceding interval element", text=text
        )


class NoTemplateError(EngineError):
    stage = "template-match"

    def __init__(self, code: str):
        self.code = code
        super().__init__(f"no registered template matches code '{code}'", code=code)


class BindError(EngineError):
    """Raised when a matched template cannot be turned into a runnable query."""

    stage = "bind"


class CrossTableConditionError(BindError):
    def __init__(self, tables: list[str]):
        self.tables = sorted(tables)
        super().__init__(
            "condition attributes span several tables: " + ", ".join(self.tables),
            tables=self.tables,
        )


class UnboundAggregateError(BindError):
    pass


class UnboundIntervalError(BindError):
    def __init__(self, operator: str):
        self.operator = operator
        super().__init__(
            f"interval '{operator}' has no preceding attribute", operator=operator
        )


class ArityMismatchError(BindError):
    def __init__(self, values: int, intervals: int, message: str | None = None):
        self.values = values
        self.intervals = intervals
        super().__init__(
            message or f"{values} value(s) for {intervals} interval condition(s)",
            values=values,
            intervals=intervals,
        )


class ExecutionError(EngineError):
    stage = "execute"
