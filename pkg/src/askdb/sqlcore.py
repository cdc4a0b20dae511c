"""Turning element sequences into runnable queries and running them.

Four builders cover the shipped templates. AttributeSelect and
TableSelect return distinct rows; AggregateSelect and
ConditionalSelect return rows as stored. Rendered SQL follows

    SELECT [DISTINCT] items FROM table [WHERE a = 'v' [AND ...]]

with uppercase keywords, comma-separated items and single-quoted
values (embedded quotes doubled).
"""

from __future__ import annotations

from dataclasses import dataclass

from .catalog import Dataset, QueryBuilder, SchemaCatalog, SymbolCategory
from .errors import (
    ArityMismatchError,
    CrossTableConditionError,
    ExecutionError,
    UnboundAggregateError,
    UnboundIntervalError,
)
from .rulemap import Element, ElementSequence


@dataclass(frozen=True)
class Predicate:
    attribute: str
    operator: str
    value: str


@dataclass(frozen=True)
class BoundQuery:
    table: str
    select: tuple[str, ...] = ()
    aggregate: tuple[str, str] | None = None
    predicates: tuple[Predicate, ...] = ()
    distinct: bool = False


@dataclass(frozen=True)
class ResultSet:
    columns: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]


def _attribute_elements(seq: ElementSequence) -> list[tuple[int, Element]]:
    return [
        (i, e)
        for i, e in enumerate(seq.elements)
        if e.symbol.category is SymbolCategory.ATTRIBUTE
    ]


def _bind_attribute_select(seq: ElementSequence) -> list[BoundQuery]:
    # one query per owning table, tables in first-appearance order
    groups: dict[str, list[str]] = {}
    for _, e in _attribute_elements(seq):
        groups.setdefault(e.symbol.table, []).append(e.symbol.attribute)
    return [
        BoundQuery(table=table, select=tuple(attrs), distinct=True)
        for table, attrs in groups.items()
    ]


def _bind_table_select(
    seq: ElementSequence, schema: SchemaCatalog
) -> list[BoundQuery]:
    tables: list[str] = []
    for e in seq.elements:
        if e.symbol.category is SymbolCategory.TABLE:
            if e.symbol.table not in tables:
                tables.append(e.symbol.table)
    queries = []
    for name in tables:
        meta = schema.table(name)
        if meta is None:
            raise ExecutionError(f"unknown table '{name}'")
        queries.append(
            BoundQuery(table=name, select=(meta.default_attribute,), distinct=True)
        )
    return queries


def _bind_aggregate_select(seq: ElementSequence) -> list[BoundQuery]:
    attributes = _attribute_elements(seq)
    aggregates = [
        (i, e)
        for i, e in enumerate(seq.elements)
        if e.symbol.category is SymbolCategory.AGGREGATE
    ]
    claimed: set[int] = set()
    pairs: list[tuple[Element, Element]] = []
    for ai, agg in aggregates:
        following = [(j, e) for j, e in attributes if j > ai and j not in claimed]
        if not following:
            raise UnboundAggregateError(
                f"aggregate '{agg.symbol.function}' has no following attribute",
                function=agg.symbol.function,
            )
        j, attr = following[0]
        claimed.add(j)
        pairs.append((agg, attr))
    for j, attr in attributes:
        if j not in claimed:
            raise UnboundAggregateError(
                f"attribute '{attr.symbol.attribute}' is not bound to any aggregate",
                attribute=attr.symbol.attribute,
            )
    return [
        BoundQuery(
            table=attr.symbol.table,
            aggregate=(agg.symbol.function, attr.symbol.attribute),
        )
        for agg, attr in pairs
    ]


def _bind_conditional_select(seq: ElementSequence) -> list[BoundQuery]:
    attributes = _attribute_elements(seq)
    intervals = [
        (i, e)
        for i, e in enumerate(seq.elements)
        if e.symbol.category is SymbolCategory.INTERVAL
    ]
    tables = {e.symbol.table for _, e in attributes}
    if len(tables) > 1:
        raise CrossTableConditionError(sorted(tables))

    values_by_interval: dict[int, list[str]] = {}
    for av in seq.values:
        values_by_interval.setdefault(av.interval_index, []).append(av.value.text)

    predicates: list[Predicate] = []
    for ii, interval in intervals:
        preceding = [e for j, e in attributes if j < ii]
        if not preceding:
            raise UnboundIntervalError(interval.symbol.operator)
        bound = values_by_interval.get(ii, [])
        if len(bound) != 1:
            raise ArityMismatchError(
                values=len(seq.values),
                intervals=len(intervals),
                message=(
                    f"{len(seq.values)} value(s) for {len(intervals)} interval "
                    f"condition(s): interval '{interval.symbol.operator}' "
                    f"carries {len(bound)}"
                ),
            )
        predicates.append(
            Predicate(
                attribute=preceding[-1].symbol.attribute,
                operator=interval.symbol.operator,
                value=bound[0],
            )
        )

    select = tuple(e.symbol.attribute for _, e in attributes)
    return [
        BoundQuery(
            table=tables.pop(),
            select=select,
            predicates=tuple(predicates),
        )
    ]


def bind(
    seq: ElementSequence, builder: QueryBuilder, schema: SchemaCatalog
) -> list[BoundQuery]:
    if builder is QueryBuilder.ATTRIBUTE_SELECT:
        return _bind_attribute_select(seq)
    if builder is QueryBuilder.TABLE_SELECT:
        return _bind_table_select(seq, schema)
    if builder is QueryBuilder.AGGREGATE_SELECT:
        return _bind_aggregate_select(seq)
    return _bind_conditional_select(seq)


def render_sql(q: BoundQuery) -> str:
    items = list(q.select)
    if q.aggregate is not None:
        function, attribute = q.aggregate
        items.append(f"{function.upper()}({attribute})")
    sql = "SELECT "
    if q.distinct:
        sql += "DISTINCT "
    sql += ",".join(items)
    sql += f" FROM {q.table}"
    if q.predicates:
        conditions = [
            f"{p.attribute} {p.operator} '" + p.value.replace("'", "''") + "'"
            for p in q.predicates
        ]
        sql += " WHERE " + " AND ".join(conditions)
    return sql


def _parses_as_int(text: str) -> bool:
    # an optional sign followed by ascii digits; nothing looser counts
    body = text[1:] if text[:1] in "+-" else text
    return body.isascii() and body.isdigit()


def _compare(a: str, b: str) -> int:
    """Numeric comparison when both sides are integers, text otherwise."""
    if _parses_as_int(a) and _parses_as_int(b):
        x, y = int(a), int(b)
    else:
        x, y = a, b
    if x < y:
        return -1
    if x > y:
        return 1
    return 0


def _satisfies(cell: str, p: Predicate) -> bool:
    if p.operator == "=":
        return cell == p.value
    if p.operator == "<":
        return _compare(cell, p.value) < 0
    if p.operator == ">":
        return _compare(cell, p.value) > 0
    if p.operator == "<=":
        return _compare(cell, p.value) <= 0
    if p.operator == ">=":
        return _compare(cell, p.value) >= 0
    raise ExecutionError(f"unsupported operator '{p.operator}'")


def _aggregate_cell(function: str, cells: list[str]) -> str:
    if function == "count":
        return str(len(cells))
    if not cells:
        return ""
    if function in ("max", "min"):
        pick = max if function == "max" else min
        if all(_parses_as_int(c) for c in cells):
            return pick(cells, key=int)
        return pick(cells)
    raise ExecutionError(f"unsupported aggregate '{function}'")


def execute(q: BoundQuery, data: Dataset) -> ResultSet:
    """Run a bound query against the in-memory dataset.

    Rows keep their stored order; DISTINCT keeps the first occurrence
    of each projected row. The aggregate over an empty selection is a
    single empty cell (count excepted, which yields '0').
    """
    if q.table not in data.tables:
        raise ExecutionError(f"no data for table '{q.table}'")
    matched = []
    for row in data.rows(q.table):
        try:
            if all(_satisfies(row[p.attribute], p) for p in q.predicates):
                matched.append(row)
        except KeyError as err:
            raise ExecutionError(
                f"row in table '{q.table}' has no cell {err}"
            ) from err
    if q.aggregate is not None:
        function, attribute = q.aggregate
        try:
            cells = [row[attribute] for row in matched]
        except KeyError as err:
            raise ExecutionError(
                f"row in table '{q.table}' has no cell {err}"
            ) from err
        label = f"{function.upper()}({attribute})"
        return ResultSet(columns=(label,), rows=((_aggregate_cell(function, cells),),))
    try:
        projected = [tuple(row[a] for a in q.select) for row in matched]
    except KeyError as err:
        raise ExecutionError(f"row in table '{q.table}' has no cell {err}") from err
    if q.distinct:
        seen: set[tuple[str, ...]] = set()
        unique = []
        for row in projected:
            if row not in seen:
                seen.add(row)
                unique.append(row)
        projected = unique
    return ResultSet(columns=tuple(q.select), rows=tuple(projected))


def _display_name(attribute: str) -> str:
    return " ".join(part.capitalize() for part in attribute.split("-") if part)


def format_headers(q: BoundQuery) -> list[str]:
    """Display headers: hyphens become spaces, every word capitalized."""
    if q.aggregate is not None:
        return [_display_name(q.aggregate[1])]
    return [_display_name(a) for a in q.select]
