from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from askdb.catalog import Rule, RuleSymbol, SymbolCategory
from askdb.errors import DanglingValueError, UnmappableError
from askdb.preproc import ExtractedValue, Token, extract_values, remove_escape_words, tokenize
from askdb.rulemap import attach_values, build_matcher, match_rules
from golden import WORKED_QUESTION, WORKED_SYMBOLS

from oracles import trim_match


def tokens_for(words: list[str]) -> list[Token]:
    return [Token(order=i, word=w, source=i) for i, w in enumerate(words)]


def table_rule(phrase: str, table: str = "t") -> Rule:
    return Rule(tuple(phrase.split()), RuleSymbol(SymbolCategory.TABLE, table=table))


def test_matcher_holds_every_builtin_rule(catalog, matcher):
    assert matcher.size == len(catalog.rules) == 35


def test_duplicate_phrase_rejected():
    with pytest.raises(ValueError):
        build_matcher((table_rule("a"), table_rule("a", table="u")))


def test_longest_phrase_wins():
    short = table_rule("a", table="short")
    long = table_rule("a b", table="long")
    trie = build_matcher((short, long))
    seq = match_rules(tokens_for(["a", "b"]), trie)
    assert [e.symbol.table for e in seq.elements] == ["long"]
    seq = match_rules(tokens_for(["a"]), trie)
    assert [e.symbol.table for e in seq.elements] == ["short"]
    seq = match_rules(tokens_for(["a", "b", "a"]), trie)
    assert [e.symbol.table for e in seq.elements] == ["long", "short"]


def test_no_backtracking():
    trie = build_matcher((table_rule("a b"), table_rule("a"), table_rule("b c")))
    # greedy eats "a b", leaving "c" stranded, although "a" + "b c" would cover
    with pytest.raises(UnmappableError) as err:
        match_rules(tokens_for(["a", "b", "c"]), trie)
    assert err.value.word == "c"
    assert err.value.order == 2
    assert len(err.value.matched) == 1


def test_prefix_without_terminal_is_unmappable():
    trie = build_matcher((table_rule("a b"),))
    with pytest.raises(UnmappableError) as err:
        match_rules(tokens_for(["a"]), trie)
    assert err.value.order == 0


def test_worked_question_maps_to_five_symbols(catalog, matcher):
    remainder, _ = extract_values(WORKED_QUESTION)
    escaped = remove_escape_words(tokenize(remainder), catalog.escape_words)
    seq = match_rules(escaped, matcher)
    assert [e.symbol.label() for e in seq.elements] == WORKED_SYMBOLS
    assert [e.start_order for e in seq.elements] == [0, 5, 6, 9, 11]
    flattened = [w for e in seq.elements for w in e.matched_phrase]
    assert flattened == [t.word for t in escaped]


def test_single_table_word(catalog, matcher):
    seq = match_rules(tokens_for(["departments"]), matcher)
    assert [e.symbol.label() for e in seq.elements] == ["table_department"]


def test_attach_value_to_nearest_preceding_interval(catalog, matcher):
    remainder, values = extract_values(WORKED_QUESTION)
    escaped = remove_escape_words(tokenize(remainder), catalog.escape_words)
    seq = attach_values(match_rules(escaped, matcher), values)
    assert len(seq.values) == 1
    attached = seq.values[0]
    assert attached.value.text == values[0].text
    assert seq.elements[attached.interval_index].symbol.category is SymbolCategory.INTERVAL


def test_attach_without_interval_raises(catalog, matcher):
    seq = match_rules(tokens_for(["departments"]), matcher)
    value = ExtractedValue(text="X", anchor=1, lead=1)
    with pytest.raises(DanglingValueError):
        attach_values(seq, [value])


def test_attach_picks_latest_interval():
    rules = (
        Rule(("eq",), RuleSymbol(SymbolCategory.INTERVAL, operator="=")),
        Rule(("lt",), RuleSymbol(SymbolCategory.INTERVAL, operator="<")),
    )
    seq = match_rules(tokens_for(["eq", "lt"]), build_matcher(rules))
    value = ExtractedValue(text="5", anchor=2, lead=2)
    attached = attach_values(seq, [value])
    assert attached.values[0].interval_index == 1


def test_attach_no_values_is_identity(catalog, matcher):
    seq = match_rules(tokens_for(["departments"]), matcher)
    assert attach_values(seq, []) == seq


vocabulary = ["alpha", "beta", "gamma", "delta", "eps"]
phrase_lists = st.lists(
    st.lists(st.sampled_from(vocabulary), min_size=1, max_size=3).map(tuple),
    min_size=1,
    max_size=8,
    unique=True,
)
inputs = st.lists(st.sampled_from(vocabulary + ["zz"]), max_size=12)


def rules_from(phrases) -> tuple[Rule, ...]:
    return tuple(
        Rule(phrase, RuleSymbol(SymbolCategory.TABLE, table=f"t{i}"))
        for i, phrase in enumerate(phrases)
    )


@given(phrase_lists, inputs)
def test_matches_trimming_reference(phrases, words):
    rules = rules_from(phrases)
    trie = build_matcher(rules)
    expected, stuck = trim_match(words, rules)
    try:
        seq = match_rules(tokens_for(words), trie)
    except UnmappableError as err:
        assert stuck == err.order
        assert [(e.symbol, e.matched_phrase) for e in err.matched] == [
            (r.symbol, r.phrase) for r, _ in expected
        ]
    else:
        assert stuck is None
        assert [(e.symbol, e.matched_phrase, e.start_order) for e in seq.elements] == [
            (r.symbol, r.phrase, pos) for r, pos in expected
        ]


@given(phrase_lists, inputs)
def test_greedy_takes_longest_available(phrases, words):
    rules = rules_from(phrases)
    trie = build_matcher(rules)
    known = {r.phrase for r in rules}
    try:
        seq = match_rules(tokens_for(words), trie)
    except UnmappableError:
        return
    for element in seq.elements:
        start = element.start_order
        for longer in range(len(element.matched_phrase) + 1, len(words) - start + 1):
            assert tuple(words[start : start + longer]) not in known


@given(phrase_lists, inputs)
def test_elements_cover_input_exactly(phrases, words):
    trie = build_matcher(rules_from(phrases))
    try:
        seq = match_rules(tokens_for(words), trie)
    except UnmappableError:
        return
    covered = [w for e in seq.elements for w in e.matched_phrase]
    assert covered == words
    starts = [e.start_order for e in seq.elements]
    assert starts == sorted(set(starts))
