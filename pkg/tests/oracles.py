"""Slow reference implementations used only to cross-check the engine.

Both functions here are deliberately written the literal way: the
matcher trims one word at a time off the remaining string, and the
query evaluator walks plain row dicts with nested loops. They share
no code with the package.
"""

from __future__ import annotations

from askdb.catalog import Rule
from askdb.sqlcore import BoundQuery


def trim_match(
    words: list[str], rules: tuple[Rule, ...]
) -> tuple[list[tuple[Rule, int]], int | None]:
    """Map words by repeatedly trimming the last word until a rule fits.

    Returns (matched, stuck): matched pairs each rule with the position
    its phrase started at; stuck is the position where no rule fit even
    as a single word, or None when the whole input mapped.
    """
    by_phrase = {rule.phrase: rule for rule in rules}
    matched: list[tuple[Rule, int]] = []
    pos = 0
    total = len(words)
    while pos < total:
        length = total - pos
        while length > 0 and tuple(words[pos : pos + length]) not in by_phrase:
            length -= 1
        if length == 0:
            return matched, pos
        matched.append((by_phrase[tuple(words[pos : pos + length])], pos))
        pos += length
    return matched, None


def _int_like(text: str) -> bool:
    if text and text[0] in "+-":
        text = text[1:]
    if not text:
        return False
    for ch in text:
        if ch not in "0123456789":
            return False
    return True


def _ordered(a: str, b: str) -> int:
    if _int_like(a) and _int_like(b):
        left, right = int(a), int(b)
    else:
        left, right = a, b
    if left < right:
        return -1
    if left > right:
        return 1
    return 0


def _row_passes(row: dict[str, str], query: BoundQuery) -> bool:
    for p in query.predicates:
        cell = row[p.attribute]
        if p.operator == "=":
            if cell != p.value:
                return False
        elif p.operator == "<":
            if not _ordered(cell, p.value) < 0:
                return False
        elif p.operator == ">":
            if not _ordered(cell, p.value) > 0:
                return False
        elif p.operator == "<=":
            if not _ordered(cell, p.value) <= 0:
                return False
        elif p.operator == ">=":
            if not _ordered(cell, p.value) >= 0:
                return False
        else:
            raise AssertionError(f"oracle got operator {p.operator}")
    return True


def run_query(
    query: BoundQuery, tables: dict[str, tuple[dict[str, str], ...]]
) -> tuple[tuple[str, ...], list[tuple[str, ...]]]:
    """Evaluate a bound query the slow way; returns (columns, rows)."""
    kept = [row for row in tables[query.table] if _row_passes(row, query)]
    if query.aggregate is not None:
        function, attribute = query.aggregate
        cells = [row[attribute] for row in kept]
        if function == "count":
            value = str(len(cells))
        elif not cells:
            value = ""
        else:
            # comparison mode is decided once over the whole column;
            # ties keep the earliest cell
            numeric = True
            for cell in cells:
                if not _int_like(cell):
                    numeric = False
                    break
            best = cells[0]
            for cell in cells[1:]:
                if numeric:
                    replace = int(cell) > int(best) if function == "max" else int(cell) < int(best)
                else:
                    replace = cell > best if function == "max" else cell < best
                if replace:
                    best = cell
            value = best
        return (f"{function.upper()}({attribute})",), [(value,)]
    rows = [tuple(row[a] for a in query.select) for row in kept]
    if query.distinct:
        unique: list[tuple[str, ...]] = []
        for row in rows:
            if row not in unique:
                unique.append(row)
        rows = unique
    return tuple(query.select), rows
