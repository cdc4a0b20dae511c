"""Question preprocessing: values out, tokens in, noise dropped.

Double-quoted values are pulled out first so the rest of the pipeline
never sees them; everything after that point works on a value-free
token stream.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnbalancedQuoteError

# punctuation stripped from token ends; quotes are consumed by extract_values
PUNCTUATION = "?.,!;:"


@dataclass(frozen=True)
class ExtractedValue:
    """One double-quoted literal removed from the question.

    anchor is the word position in the original question where the
    value began; lead is the number of words of the value-free
    question that precede it. The text keeps its case.
    """

    text: str
    anchor: int
    lead: int


@dataclass(frozen=True)
class Token:
    """A lowercased question word.

    order numbers run 0..n-1 and are renumbered after escape-word
    removal; source is the whitespace-chunk index in the string the
    token came from and survives renumbering.
    """

    order: int
    word: str
    source: int


def extract_values(question: str) -> tuple[str, list[ExtractedValue]]:
    """Remove maximal double-quoted spans, left to right.

    Returns the remainder string and the extracted values in question
    order. An unpaired quote raises UnbalancedQuoteError naming its
    character offset.
    """
    parts: list[str] = []
    values: list[ExtractedValue] = []
    pos = 0
    while True:
        start = question.find('"', pos)
        if start == -1:
            parts.append(question[pos:])
            break
        end = question.find('"', start + 1)
        if end == -1:
            raise UnbalancedQuoteError(start)
        parts.append(question[pos:start])
        values.append(
            ExtractedValue(
                text=question[start + 1 : end],
                anchor=len(question[:start].split()),
                lead=len("".join(parts).split()),
            )
        )
        pos = end + 1
    return "".join(parts), values


def tokenize(text: str) -> list[Token]:
    """Split on whitespace, strip edge punctuation, lowercase.

    Chunks that are pure punctuation vanish; surviving tokens are
    numbered consecutively from zero.
    """
    tokens: list[Token] = []
    for source, chunk in enumerate(text.split()):
        word = chunk.strip(PUNCTUATION).lower()
        if word:
            tokens.append(Token(order=len(tokens), word=word, source=source))
    return tokens


def display_tokens(question: str) -> list[str]:
    """Token view of the raw question for traces: case and quotes kept."""
    out = []
    for chunk in question.split():
        stripped = chunk.strip(PUNCTUATION)
        if stripped:
            out.append(stripped)
    return out


def check_words(tokens: list[Token], dictionary: frozenset[str]) -> list[str]:
    """Distinct words not present in the dictionary, first occurrence first."""
    unknown: list[str] = []
    for t in tokens:
        if t.word not in dictionary and t.word not in unknown:
            unknown.append(t.word)
    return unknown


def remove_escape_words(
    tokens: list[Token], escape_words: frozenset[str]
) -> list[Token]:
    """Drop escape words and renumber the survivors from zero."""
    kept = [t for t in tokens if t.word not in escape_words]
    return [Token(order=i, word=t.word, source=t.source) for i, t in enumerate(kept)]
