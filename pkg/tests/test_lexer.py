import pytest

from codeweft.errors import (
    InvalidCharacter,
    UnterminatedBacktick,
    UnterminatedString,
)
from codeweft.lexer import tokenize


def kinds(text, keep_newlines=False):
    return [t.kind for t in tokenize(text, keep_newlines=keep_newlines)]


def texts(text):
    return [t.text for t in tokenize(text)]


def test_simple_expression():
    assert texts("x + 1") == ["x", "+", "1"]
    assert kinds("x + 1") == ["name", "op", "num"]


def test_numbers():
    toks = tokenize("1 2.5 1e3 2.5e-2 0x1F 3L .5")
    values = [t.value for t in toks if t.kind == "num"]
    assert values == [
        (1.0, False),
        (2.5, False),
        (1000.0, False),
        (0.025, False),
        (31.0, False),
        (3.0, True),
        (0.5, False),
    ]


def test_string_escapes():
    tok = tokenize(r'"a\"b\n\t\x41é"')[0]
    assert tok.kind == "string"
    assert tok.value == 'a"b\n\tAé'


def test_single_quoted_string():
    tok = tokenize("'hi'")[0]
    assert tok.value == "hi"


def test_string_raw_text_is_kept():
    tok = tokenize('"a\\nb"')[0]
    assert tok.text == '"a\\nb"'


def test_backtick_name():
    tok = tokenize("`my var`")[0]
    assert tok.kind == "name"
    assert tok.text == "my var"
    assert tok.quoted


def test_special_operator_is_one_token():
    assert texts("a %in% b")[1] == "%in%"
    assert texts("a %>% b")[1] == "%>%"
    assert texts("a %custom op% b")[1] == "%custom op%"


def test_longest_match_operators():
    assert texts("a <<- b")[1] == "<<-"
    assert texts("a <- b")[1] == "<-"
    assert texts("a <= b")[1] == "<="
    assert texts("a ->> b")[1] == "->>"
    assert texts("x:::y")[1] == ":::"
    assert texts("x::y")[1] == "::"


def test_double_bracket_token():
    assert texts("x[[1]]") == ["x", "[[", "1", "]", "]"]


def test_comments_dropped():
    assert texts("x # comment\n+ y") == ["x", "+", "y"]


def test_newlines_kept_only_on_request():
    assert "newline" not in kinds("x\ny")
    assert kinds("x\ny", keep_newlines=True) == ["name", "newline", "name"]


def test_newlines_swallowed_inside_parens():
    assert kinds("f(\nx\n)", keep_newlines=True) == ["name", "op", "name", "op"]
    assert kinds("x[\n1\n]", keep_newlines=True) == ["name", "op", "num", "op"]


def test_newlines_kept_inside_braces():
    assert kinds("{\nx\n}", keep_newlines=True) == [
        "op", "newline", "name", "newline", "op",
    ]


def test_keywords():
    assert kinds("if else for while repeat function break next in") == ["keyword"] * 9
    # keyword-prefixed names stay names
    assert kinds("iffy formula") == ["name", "name"]


def test_dots_in_names():
    assert texts("read.csv is.na ..1")[:3] == ["read.csv", "is.na", "..1"]


def test_semicolon():
    assert kinds("x; y") == ["name", "semi", "name"]


def test_spans_are_one_based():
    toks = tokenize("x + y")
    assert (toks[0].span.start_line, toks[0].span.start_col) == (1, 1)
    assert (toks[1].span.start_line, toks[1].span.start_col) == (1, 3)


def test_unterminated_string():
    with pytest.raises(UnterminatedString):
        tokenize('"abc')


def test_unterminated_backtick():
    with pytest.raises(UnterminatedBacktick):
        tokenize("`abc")


def test_invalid_character():
    with pytest.raises(InvalidCharacter):
        tokenize("x \x01 y")


def test_unknown_escape():
    with pytest.raises(InvalidCharacter):
        tokenize(r'"\q"')
