"""Template codes: six element counts squeezed into six characters.

Slot order is attribute, table, and, aggregate, interval, value.
Counts map to '0', '1' and 'm' (two or more). Registry patterns may
also use '+' (one or more) and '*' (anything); the first registered
pattern that accepts every slot wins.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catalog import QueryBuilder, SymbolCategory, TemplateEntry
from .errors import NoTemplateError
from .rulemap import ElementSequence


@dataclass(frozen=True)
class ElementCounts:
    attribute: int = 0
    table: int = 0
    and_: int = 0
    aggregate: int = 0
    interval: int = 0
    value: int = 0

    def as_tuple(self) -> tuple[int, int, int, int, int, int]:
        return (
            self.attribute,
            self.table,
            self.and_,
            self.aggregate,
            self.interval,
            self.value,
        )

    def as_dict(self) -> dict[str, int]:
        return {
            "attribute": self.attribute,
            "table": self.table,
            "and": self.and_,
            "aggregate": self.aggregate,
            "interval": self.interval,
            "value": self.value,
        }


def count_elements(seq: ElementSequence) -> ElementCounts:
    tally = {category: 0 for category in SymbolCategory}
    for element in seq.elements:
        tally[element.symbol.category] += 1
    return ElementCounts(
        attribute=tally[SymbolCategory.ATTRIBUTE],
        table=tally[SymbolCategory.TABLE],
        and_=tally[SymbolCategory.AND],
        aggregate=tally[SymbolCategory.AGGREGATE],
        interval=tally[SymbolCategory.INTERVAL],
        value=len(seq.values),
    )


def _slot_char(count: int) -> str:
    if count == 0:
        return "0"
    if count == 1:
        return "1"
    return "m"


def encode_template(counts: ElementCounts) -> str:
    return "".join(_slot_char(c) for c in counts.as_tuple())


def slot_accepts(pattern_char: str, count: int) -> bool:
    if pattern_char == "*":
        return True
    if pattern_char == "+":
        return count >= 1
    if pattern_char == "0":
        return count == 0
    if pattern_char == "1":
        return count == 1
    return count >= 2


def match_template(
    counts: ElementCounts, templates: tuple[TemplateEntry, ...]
) -> QueryBuilder:
    """First registered pattern accepting the counts, else NoTemplateError."""
    for entry in templates:
        if all(
            slot_accepts(ch, count)
            for ch, count in zip(entry.pattern, counts.as_tuple())
        ):
            return entry.builder
    raise NoTemplateError(encode_template(counts))
