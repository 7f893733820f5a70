"""Expression parsing, automaton construction and language agreement."""

from __future__ import annotations

import random
import re

import pytest

from seqmine.regex import (
    NO_ACCEPT,
    PatternDFA,
    RegexError,
    RegexSyntaxError,
    UnknownTokenError,
    compile_regex,
    parse_regex,
)

ABC = {"a": 1, "b": 2, "c": 3}


def dfa(expr, ids=ABC):
    return compile_regex(expr, ids, max(ids.values()))


# -------------------------------------------------------------------- parsing


def test_parse_literal_and_concatenation():
    assert parse_regex("a b", ABC) == ("cat", ("sym", 1), ("sym", 2))


def test_parse_precedence():
    # repetition binds tighter than concatenation, which binds tighter than |
    tree = parse_regex("a b* | c", ABC)
    assert tree == (
        "alt",
        ("cat", ("sym", 1), ("star", ("sym", 2))),
        ("sym", 3),
    )


def test_parse_whitespace_is_insignificant():
    assert parse_regex(" a(b|c) * ", ABC) == parse_regex("a (b | c)*", ABC)


def test_parse_multichar_tokens():
    ids = {"load": 1, "store": 2, "a": 3}
    tree = parse_regex("<load> (<store> | a)+", ids)
    assert tree == ("cat", ("sym", 1), ("plus", ("alt", ("sym", 2), ("sym", 3))))


def test_parse_stacked_repetition():
    assert parse_regex("a*?", ABC) == ("opt", ("star", ("sym", 1)))


@pytest.mark.parametrize(
    "expr, position",
    [
        ("a )", 2),
        ("(a", 2),
        ("a |", 3),
        ("* a", 0),
        ("", 0),
        ("<a", 0),
        ("a <> b", 2),
        ("a > b", 2),
    ],
)
def test_syntax_errors_carry_positions(expr, position):
    with pytest.raises(RegexSyntaxError) as err:
        parse_regex(expr, ABC)
    assert err.value.position == position


def test_unknown_tokens_rejected():
    with pytest.raises(UnknownTokenError):
        parse_regex("a x", ABC)
    with pytest.raises(UnknownTokenError):
        parse_regex("<missing>", ABC)
    assert issubclass(UnknownTokenError, RegexError)


# ------------------------------------------------------------------ automaton


def test_transition_function_is_total():
    m = dfa("a (b|c)* a")
    assert m.state_count >= 1
    for row in m.transitions:
        assert len(row) == 4
        for a in range(1, 4):
            assert 0 <= row[a] < m.state_count


def test_dead_states_absorb():
    m = dfa("a b")
    for q in range(m.state_count):
        if m.is_dead(q):
            for a in range(1, 4):
                assert m.is_dead(m.step(q, a))
            assert not m.is_accepting(q)


def test_min_steps_examples():
    m = dfa("a b c")
    q = m.start
    assert m.min_steps[q] == 3
    q = m.step(q, 1)
    assert m.min_steps[q] == 2
    q = m.step(q, 2)
    assert m.min_steps[q] == 1
    q = m.step(q, 3)
    assert m.min_steps[q] == 0
    assert m.is_accepting(q)
    assert m.min_steps[m.step(m.start, 2)] >= NO_ACCEPT


def test_min_steps_zero_only_at_accepting_states():
    m = dfa("(a|b)+ c?")
    for q in range(m.state_count):
        assert (m.min_steps[q] == 0) == m.is_accepting(q)


def test_accepts_examples():
    m = dfa("a (b|c)* a")
    assert m.accepts([1, 1])
    assert m.accepts([1, 2, 3, 2, 1])
    assert not m.accepts([1])
    assert not m.accepts([1, 2])
    assert not m.accepts([])
    assert dfa("a*").accepts([])
    assert not dfa("a+").accepts([])
    assert dfa("a?").accepts([1])


# ------------------------------------------------- agreement with stdlib re


FIXED_EXPRESSIONS = [
    "a",
    "a b c",
    "a*",
    "a+ b",
    "(a|b)* c",
    "a (b|c)+ a?",
    "((a b)|(c a))* b?",
    "a? b? c?",
    "(a|b|c) (a|b|c) a*",
]


@pytest.mark.parametrize("expr", FIXED_EXPRESSIONS)
def test_language_matches_python_re(expr):
    m = dfa(expr)
    reference = re.compile(expr.replace(" ", ""))
    names = {1: "a", 2: "b", 3: "c"}
    rng = random.Random(hash(expr) & 0xFFFF)
    for _ in range(300):
        word = [rng.randint(1, 3) for _ in range(rng.randint(0, 8))]
        text = "".join(names[a] for a in word)
        assert m.accepts(word) == bool(reference.fullmatch(text)), (expr, text)


def test_large_alphabet_symbols_outside_expression_are_rejected():
    ids = {"a": 1, "b": 2, "c": 3, "d": 4, "e": 5}
    m = compile_regex("a b", ids, 5)
    assert m.accepts([1, 2])
    assert not m.accepts([1, 5])
    assert m.is_dead(m.step(m.start, 4))
