"""Catalog: everything the engine knows about one database.

A catalog is loaded from a single JSON document with six sections:

``dictionary``
    Every word the engine accepts, lowercase. Questions containing a
    word outside this list are rejected before any mapping is tried.
``escape_words``
    Words dropped from the token stream before rule mapping. Must be a
    subset of the dictionary.
``rules``
    Ordered list of ``{"phrase", "category", "target"}`` records. The
    phrase is a lowercase word sequence; the category is one of
    ``table``, ``attribute``, ``and``, ``aggregate``, ``interval``.
    The target depends on the category: a table name, a
    ``[table, attribute]`` pair, nothing, an aggregate function name,
    or a comparison operator.
``schema``
    Tables with their attributes, key kinds (``nil``, ``primary``,
    ``foreign``) and the default attribute used when a question names
    a table but no attribute.
``data``
    Rows per table; every cell is text.
``templates``
    Optional override of the template registry: ordered
    ``{"pattern", "builder"}`` records where the pattern is six
    characters over ``0 1 m + *`` and the builder is one of the four
    query builders. When omitted the built-in registry is used.

Catalogs are immutable once loaded; the whole pipeline shares one
instance across threads without locking.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Any, Iterable, Mapping

from .errors import CatalogError

KEY_KINDS = ("nil", "primary", "foreign")

TEMPLATE_SLOTS = ("attribute", "table", "and", "aggregate", "interval", "value")
PATTERN_CHARS = frozenset("01m+*")


class SymbolCategory(str, Enum):
    TABLE = "table"
    ATTRIBUTE = "attribute"
    AND = "and"
    AGGREGATE = "aggregate"
    INTERVAL = "interval"


class QueryBuilder(str, Enum):
    ATTRIBUTE_SELECT = "AttributeSelect"
    TABLE_SELECT = "TableSelect"
    AGGREGATE_SELECT = "AggregateSelect"
    CONDITIONAL_SELECT = "ConditionalSelect"


@dataclass(frozen=True)
class AttributeMeta:
    name: str
    key: str = "nil"


@dataclass(frozen=True)
class TableMeta:
    name: str
    attributes: tuple[AttributeMeta, ...]
    default_attribute: str

    def attribute_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.attributes)


@dataclass(frozen=True)
class SchemaCatalog:
    tables: tuple[TableMeta, ...]

    def table(self, name: str) -> TableMeta | None:
        for t in self.tables:
            if t.name == name:
                return t
        return None

    def has_attribute(self, table: str, attribute: str) -> bool:
        t = self.table(table)
        return t is not None and attribute in t.attribute_names()


@dataclass(frozen=True)
class RuleSymbol:
    """Target of a rule: what a matched phrase stands for."""

    category: SymbolCategory
    table: str | None = None
    attribute: str | None = None
    function: str | None = None
    operator: str | None = None

    def label(self) -> str:
        """Display name used in traces, e.g. ``attribute_department_code``."""
        if self.category is SymbolCategory.TABLE:
            return f"table_{self.table}"
        if self.category is SymbolCategory.ATTRIBUTE:
            return "attribute_" + str(self.attribute).replace("-", "_")
        if self.category is SymbolCategory.AND:
            return "and_s"
        if self.category is SymbolCategory.AGGREGATE:
            return f"aggregate_{self.function}"
        return f"interval_{self.operator}"

    def description(self) -> str:
        """Short payload text shown next to the category in element lists."""
        if self.category is SymbolCategory.TABLE:
            return str(self.table)
        if self.category is SymbolCategory.ATTRIBUTE:
            return str(self.attribute)
        if self.category is SymbolCategory.AND:
            return "s"
        if self.category is SymbolCategory.AGGREGATE:
            return str(self.function)
        return str(self.operator)


@dataclass(frozen=True)
class Rule:
    phrase: tuple[str, ...]
    symbol: RuleSymbol

    def phrase_text(self) -> str:
        return " ".join(self.phrase)


@dataclass(frozen=True)
class TemplateEntry:
    pattern: str
    builder: QueryBuilder


DEFAULT_TEMPLATES: tuple[TemplateEntry, ...] = (
    TemplateEntry("+0*000", QueryBuilder.ATTRIBUTE_SELECT),
    TemplateEntry("0+*000", QueryBuilder.TABLE_SELECT),
    TemplateEntry("+0*+00", QueryBuilder.AGGREGATE_SELECT),
    TemplateEntry("+0*0++", QueryBuilder.CONDITIONAL_SELECT),
)


@dataclass(frozen=True)
class Dataset:
    tables: dict[str, tuple[dict[str, str], ...]] = field(default_factory=dict)

    def rows(self, table: str) -> tuple[dict[str, str], ...]:
        return self.tables.get(table, ())


@dataclass(frozen=True)
class Catalog:
    dictionary: frozenset[str]
    escape_words: frozenset[str]
    rules: tuple[Rule, ...]
    schema: SchemaCatalog
    data: Dataset
    templates: tuple[TemplateEntry, ...] = DEFAULT_TEMPLATES


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise CatalogError(message)


def _parse_rule(index: int, raw: Any) -> Rule:
    _require(isinstance(raw, Mapping), f"rule #{index} is not an object")
    phrase_text = raw.get("phrase")
    _require(
        isinstance(phrase_text, str) and phrase_text.strip() != "",
        f"rule #{index} has no phrase",
    )
    phrase = tuple(phrase_text.split())
    category_text = raw.get("category")
    try:
        category = SymbolCategory(category_text)
    except ValueError:
        raise CatalogError(
            f"rule '{phrase_text}' has unknown category '{category_text}'"
        ) from None
    target = raw.get("target")
    if category is SymbolCategory.TABLE:
        _require(isinstance(target, str), f"rule '{phrase_text}' needs a table target")
        symbol = RuleSymbol(category, table=target)
    elif category is SymbolCategory.ATTRIBUTE:
        ok = (
            isinstance(target, (list, tuple))
            and len(target) == 2
            and all(isinstance(x, str) for x in target)
        )
        _require(ok, f"rule '{phrase_text}' needs a [table, attribute] target")
        symbol = RuleSymbol(category, table=target[0], attribute=target[1])
    elif category is SymbolCategory.AND:
        symbol = RuleSymbol(category)
    elif category is SymbolCategory.AGGREGATE:
        _require(
            isinstance(target, str), f"rule '{phrase_text}' needs a function target"
        )
        symbol = RuleSymbol(category, function=target)
    else:
        _require(
            isinstance(target, str), f"rule '{phrase_text}' needs an operator target"
        )
        symbol = RuleSymbol(category, operator=target)
    return Rule(phrase=phrase, symbol=symbol)


def _parse_table(raw: Any) -> TableMeta:
    _require(isinstance(raw, Mapping), "schema entry is not an object")
    name = raw.get("table")
    _require(isinstance(name, str) and name != "", "schema entry has no table name")
    attributes = []
    for attr in raw.get("attributes", ()):
        _require(
            isinstance(attr, Mapping) and isinstance(attr.get("name"), str),
            f"table '{name}' has a malformed attribute entry",
        )
        key = attr.get("key", "nil")
        _require(
            key in KEY_KINDS,
            f"table '{name}' attribute '{attr['name']}' has unknown key kind '{key}'",
        )
        attributes.append(AttributeMeta(name=attr["name"], key=key))
    default = raw.get("default_attribute", "")
    _require(
        isinstance(default, str),
        f"table '{name}' default_attribute is not a string",
    )
    return TableMeta(name=name, attributes=tuple(attributes), default_attribute=default)


def _parse_templates(raw: Any) -> tuple[TemplateEntry, ...]:
    _require(isinstance(raw, (list, tuple)), "templates is not a list")
    entries = []
    for item in raw:
        _require(isinstance(item, Mapping), "template entry is not an object")
        pattern = item.get("pattern")
        _require(
            isinstance(pattern, str) and len(pattern) == len(TEMPLATE_SLOTS),
            f"template pattern '{pattern}' must have {len(TEMPLATE_SLOTS)} slots",
        )
        bad = set(pattern) - PATTERN_CHARS
        _require(not bad, f"template pattern '{pattern}' uses unknown slot characters")
        try:
            builder = QueryBuilder(item.get("builder"))
        except ValueError:
            raise CatalogError(
                f"template pattern '{pattern}' names unknown builder "
                f"'{item.get('builder')}'"
            ) from None
        entries.append(TemplateEntry(pattern=pattern, builder=builder))
    return tuple(entries)


def _parse_rows(table: str, raw: Any) -> tuple[dict[str, str], ...]:
    _require(isinstance(raw, (list, tuple)), f"data for table '{table}' is not a list")
    rows = []
    for i, row in enumerate(raw):
        _require(
            isinstance(row, Mapping), f"data row {i} for table '{table}' is not an object"
        )
        cells = {}
        for k, v in row.items():
            _require(
                isinstance(k, str),
                f"data row {i} for table '{table}' has a non-text attribute name",
            )
            if isinstance(v, bool):
                v = "true" if v else "false"
            elif isinstance(v, (int, float)):
                v = str(v)
            _require(
                isinstance(v, str),
                f"data row {i} for table '{table}' cell '{k}' is not text",
            )
            cells[k] = v
        rows.append(cells)
    return tuple(rows)


def parse_catalog(document: Mapping) -> Catalog:
    """Build a Catalog from a parsed configuration document.

    Structural problems (wrong types, unknown categories) raise
    CatalogError immediately. Semantic problems are left for
    validate_catalog so callers can collect them all at once.
    """
    _require(isinstance(document, Mapping), "configuration document is not an object")
    words = document.get("dictionary", [])
    _require(isinstance(words, (list, tuple)), "dictionary is not a list")
    _require(
        all(isinstance(w, str) for w in words), "dictionary entries must be text"
    )
    escapes = document.get("escape_words", [])
    _require(isinstance(escapes, (list, tuple)), "escape_words is not a list")
    _require(
        all(isinstance(w, str) for w in escapes), "escape word entries must be text"
    )
    rules = tuple(
        _parse_rule(i, raw) for i, raw in enumerate(document.get("rules", []))
    )
    schema_raw = document.get("schema", [])
    _require(isinstance(schema_raw, (list, tuple)), "schema is not a list")
    schema = SchemaCatalog(tables=tuple(_parse_table(t) for t in schema_raw))
    data_raw = document.get("data", {})
    _require(isinstance(data_raw, Mapping), "data is not an object")
    data = Dataset(
        tables={t: _parse_rows(t, rows) for t, rows in data_raw.items()}
    )
    templates_raw = document.get("templates")
    templates = (
        DEFAULT_TEMPLATES if templates_raw is None else _parse_templates(templates_raw)
    )
    return Catalog(
        dictionary=frozenset(words),
        escape_words=frozenset(escapes),
        rules=rules,
        schema=schema,
        data=data,
        templates=templates,
    )


def validate_catalog(c: Catalog) -> list[str]:
    """Return every invariant violation in the catalog, empty when clean."""
    problems: list[str] = []

    def check_word(owner: str, w: str) -> None:
        if w == "":
            problems.append(f"{owner} contains an empty word")
        elif w != w.lower():
            problems.append(f"{owner} entry '{w}' is not lowercase")
        elif any(ch.isspace() for ch in w):
            problems.append(f"{owner} entry '{w}' contains whitespace")
        elif '"' in w:
            problems.append(f"{owner} entry '{w}' contains a double quote")

    for w in sorted(c.dictionary):
        check_word("dictionary", w)
    for w in sorted(c.escape_words):
        check_word("escape_words", w)
        if w not in c.dictionary:
            problems.append(f"escape word '{w}' is not in the dictionary")

    seen_phrases: set[tuple[str, ...]] = set()
    flagged_dupes: set[tuple[str, ...]] = set()
    for rule in c.rules:
        text = rule.phrase_text()
        if not rule.phrase:
            problems.append("rule with an empty phrase")
            continue
        if rule.phrase in seen_phrases:
            if rule.phrase not in flagged_dupes:
                problems.append(f"duplicate rule phrase '{text}'")
                flagged_dupes.add(rule.phrase)
        seen_phrases.add(rule.phrase)
        for w in rule.phrase:
            if w != w.lower():
                problems.append(f"rule '{text}' word '{w}' is not lowercase")
            elif w not in c.dictionary:
                problems.append(f"rule '{text}' uses word '{w}' not in the dictionary")
        sym = rule.symbol
        if sym.category is SymbolCategory.TABLE:
            if c.schema.table(sym.table) is None:
                problems.append(f"rule '{text}' references unknown table '{sym.table}'")
        elif sym.category is SymbolCategory.ATTRIBUTE:
            if not c.schema.has_attribute(sym.table, sym.attribute):
                problems.append(
                    f"rule '{text}' references unknown attribute "
                    f"'{sym.table}.{sym.attribute}'"
                )

    seen_tables: set[str] = set()
    for t in c.schema.tables:
        if t.name in seen_tables:
            problems.append(f"table '{t.name}' declared more than once")
        seen_tables.add(t.name)
        names = t.attribute_names()
        for name in sorted(set(n for n in names if names.count(n) > 1)):
            problems.append(f"table '{t.name}' repeats attribute '{name}'")
        if t.default_attribute not in names:
            problems.append(
                f"table '{t.name}' default attribute '{t.default_attribute}' "
                "is not one of its attributes"
            )

    registered = {e.builder for e in c.templates}
    for builder in QueryBuilder:
        if builder not in registered:
            problems.append(f"template registry is missing builder '{builder.value}'")

    for table, rows in c.data.tables.items():
        meta = c.schema.table(table)
        if meta is None:
            problems.append(f"data refers to unknown table '{table}'")
            continue
        names = set(meta.attribute_names())
        for i, row in enumerate(rows):
            for missing in sorted(names - set(row)):
                problems.append(
                    f"data row {i} for table '{table}' is missing cell '{missing}'"
                )
            for extra in sorted(set(row) - names):
                problems.append(
                    f"data row {i} for table '{table}' has unexpected cell '{extra}'"
                )

    return problems


def load_catalog(document: Mapping) -> Catalog:
    """Parse and validate a configuration document, raising on any problem."""
    c = parse_catalog(document)
    problems = validate_catalog(c)
    if problems:
        raise CatalogError(
            "invalid configuration: " + "; ".join(problems), violations=problems
        )
    return c


def load_catalog_text(text: str) -> Catalog:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as err:
        raise CatalogError(f"configuration is not valid JSON: {err}") from err
    return load_catalog(document)


def load_catalog_file(path: str | Path) -> Catalog:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise CatalogError(f"cannot read configuration file: {err}") from err
    return load_catalog_text(text)


def builtin_config_text() -> str:
    """The packaged UNIVERSITY configuration as JSON text."""
    return (
        resources.files("askdb").joinpath("data/university.json").read_text("utf-8")
    )


def load_builtin_catalog() -> Catalog:
    return load_catalog_text(builtin_config_text())


def render_catalog(c: Catalog) -> dict:
    """Serialize a catalog back to the configuration document format.

    load_catalog(render_catalog(c)) rebuilds a structurally identical
    catalog; word sets come out sorted.
    """

    def render_rule(rule: Rule) -> dict:
        out: dict[str, Any] = {
            "phrase": rule.phrase_text(),
            "category": rule.symbol.category.value,
        }
        sym = rule.symbol
        if sym.category is SymbolCategory.TABLE:
            out["target"] = sym.table
        elif sym.category is SymbolCategory.ATTRIBUTE:
            out["target"] = [sym.table, sym.attribute]
        elif sym.category is SymbolCategory.AGGREGATE:
            out["target"] = sym.function
        elif sym.category is SymbolCategory.INTERVAL:
            out["target"] = sym.operator
        return out

    return {
        "dictionary": sorted(c.dictionary),
        "escape_words": sorted(c.escape_words),
        "rules": [render_rule(r) for r in c.rules],
        "schema": [
            {
                "table": t.name,
                "attributes": [{"name": a.name, "key": a.key} for a in t.attributes],
                "default_attribute": t.default_attribute,
            }
            for t in c.schema.tables
        ],
        "data": {
            table: [dict(row) for row in rows]
            for table, rows in c.data.tables.items()
        },
        "templates": [
            {"pattern": e.pattern, "builder": e.builder.value} for e in c.templates
        ],
    }
