"""
Module responsible for testing the dialect tokenizer and statement splitting.
"""
import pytest

from app.sql.tokens import Position, SqlSyntaxError, TokenKind, split_statements, tokenize


def _kinds(text):
    return [token.kind for token in tokenize(text)]


def test_keywords_are_case_insensitive():
    """ Keywords keep their spelling but carry the upper-case value. """
    tokens = tokenize("sElEcT Name fRoM Student")
    assert tokens[0].is_keyword("SELECT")
    assert tokens[0].text == "sElEcT"
    assert tokens[1].kind == TokenKind.IDENT
    assert tokens[2].is_keyword("FROM")
    assert tokens[-1].kind == TokenKind.EOF


def test_literals():
    """ Each literal kind decodes its value. """
    tokens = tokenize("42 -7 2.5 1e3 'it''s' c'x' TRUE false")
    values = [(token.kind, token.value) for token in tokens[:-1]]
    assert values == [
        (TokenKind.INT, 42),
        (TokenKind.INT, -7),
        (TokenKind.FLOAT, 2.5),
        (TokenKind.FLOAT, 1000.0),
        (TokenKind.STRING, "it's"),
        (TokenKind.CHAR, "x"),
        (TokenKind.BOOL, True),
        (TokenKind.BOOL, False),
    ]


def test_quoted_identifier():
    """ Double quotes turn a keyword into an identifier. """
    token = tokenize('"Order"')[0]
    assert token.kind == TokenKind.IDENT
    assert token.value == "Order"


def test_placeholder_tokens():
    """ `{ x }` yields open, name and close with their own positions. """
    tokens = tokenize("Age = { x }")
    assert _kinds("Age = { x }")[2:5] == [TokenKind.PLACEHOLDER_OPEN, TokenKind.IDENT,
                                         TokenKind.PLACEHOLDER_CLOSE]
    assert tokens[2].position == Position(1, 7)
    assert tokens[3].position == Position(1, 9)
    assert tokens[4].position == Position(1, 11)


def test_positions_across_lines():
    """ Line and column follow newlines and comments. """
    tokens = tokenize("Select -- names\n  Name", 3, 5)
    assert tokens[0].position == Position(3, 5)
    assert tokens[1].position == Position(4, 3)


@pytest.mark.parametrize("text, message", [
    ("'open", "unterminated string literal"),
    ('"open', "unterminated quoted identifier"),
    ("Age != 3", "operator '!=' is not supported, use '<>'"),
    ("{x", "unterminated placeholder"),
    ("{x y}", "placeholder must contain a single identifier: {x y}"),
    ("c'xy'", "character literal must hold exactly one character"),
    ("Age # 3", "illegal character '#'"),
])
def test_lexical_errors(text, message):
    """ Lexical errors are reported as syntax errors. """
    with pytest.raises(SqlSyntaxError) as raised:
        tokenize(text)
    assert raised.value.message == message


def test_split_statements():
    """ Semicolons in literals, placeholders and comments do not split. """
    text = "Select a From T where b = 'x;y';\n\n  Delete From T -- c;\n where a = {p};\nSelect"
    pieces = split_statements(text)
    assert pieces == [
        ("Select a From T where b = 'x;y';", 1, 1),
        ("Delete From T -- c;\n where a = {p};", 3, 3),
        ("Select", 5, 1),
    ]


def test_split_blank_tail():
    """ Trailing blanks and comments are not a statement. """
    assert split_statements("Delete From T;  \n-- done\n") == [("Delete From T;", 1, 1)]
    assert split_statements("") == []
