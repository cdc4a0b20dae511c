"""Greedy mapping of token streams onto rule phrases.

The matcher walks a word trie, always taking the longest phrase that
starts at the current token, then continues right after it. There is
no backtracking: if some position matches nothing, the whole question
is rejected even when a shorter earlier match would have rescued it.
This mirrors the behaviour of trimming words off the end of the
remaining string until the rule table recognises it.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .catalog import Rule, RuleSymbol, SymbolCategory
from .errors import DanglingValueError, UnmappableError
from .preproc import ExtractedValue, Token


class _Node(dict):
    """Trie node: child word -> node, plus the rule ending here, if any."""

    __slots__ = ("rule",)

    def __init__(self):
        super().__init__()
        self.rule: Rule | None = None


class PhraseTrie:
    def __init__(self):
        self.root = _Node()
        self.size = 0

    def insert(self, rule: Rule) -> None:
        node = self.root
        for word in rule.phrase:
            node = node.setdefault(word, _Node())
        if node.rule is not None:
            raise ValueError(f"duplicate rule phrase '{rule.phrase_text()}'")
        node.rule = rule
        self.size += 1

    def longest_match(self, words: list[str], start: int) -> Rule | None:
        """The longest rule phrase beginning at words[start], if any."""
        node = self.root
        best: Rule | None = None
        for i in range(start, len(words)):
            node = node.get(words[i])
            if node is None:
                break
            if node.rule is not None:
                best = node.rule
        return best


@dataclass(frozen=True)
class Element:
    """One mapped phrase: which symbol it stands for and where it sat."""

    symbol: RuleSymbol
    matched_phrase: tuple[str, ...]
    start_order: int
    source_start: int


@dataclass(frozen=True)
class AttachedValue:
    value: ExtractedValue
    interval_index: int


@dataclass(frozen=True)
class ElementSequence:
    elements: tuple[Element, ...]
    values: tuple[AttachedValue, ...] = ()


def build_matcher(rules: tuple[Rule, ...]) -> PhraseTrie:
    trie = PhraseTrie()
    for rule in rules:
        trie.insert(rule)
    return trie


def match_rules(tokens: list[Token], matcher: PhraseTrie) -> ElementSequence:
    """Map the whole token stream onto elements, greedily, left to right."""
    words = [t.word for t in tokens]
    elements: list[Element] = []
    pos = 0
    while pos < len(words):
        rule = matcher.longest_match(words, pos)
        if rule is None:
            raise UnmappableError(
                word=tokens[pos].word, order=tokens[pos].order, matched=elements
            )
        elements.append(
            Element(
                symbol=rule.symbol,
                matched_phrase=rule.phrase,
                start_order=tokens[pos].order,
                source_start=tokens[pos].source,
            )
        )
        pos += len(rule.phrase)
    return ElementSequence(elements=tuple(elements))


def attach_values(
    seq: ElementSequence, values: list[ExtractedValue]
) -> ElementSequence:
    """Associate each extracted value with its nearest preceding interval.

    A value that no interval element precedes has nowhere to go and
    raises DanglingValueError.
    """
    intervals = [
        (i, e)
        for i, e in enumerate(seq.elements)
        if e.symbol.category is SymbolCategory.INTERVAL
    ]
    attached: list[AttachedValue] = []
    for v in values:
        preceding = [i for i, e in intervals if e.source_start < v.lead]
        if not preceding:
            raise DanglingValueError(v.text)
        attached.append(AttachedValue(value=v, interval_index=preceding[-1]))
    return replace(seq, values=tuple(attached))
