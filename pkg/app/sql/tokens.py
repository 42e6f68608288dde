"""
Tokenizer for the extended SQL dialect.

Keywords are recognised case-insensitively; identifiers keep their case and may
be written in double quotes when they clash with a keyword. `{name}` marks an
embedded parameter, `c'x'` a character literal and `--` a line comment.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum


class CompileError(Exception):
    """
    Base class of every compile-time error carrying a source position.
    """

    def __init__(self, message, position):
        super(CompileError, self).__init__(message)
        self.message = message
        self.position = position

    def __str__(self):
        return "%s: %s" % (self.position, self.message)


class SqlSyntaxError(CompileError):
    """
    Raised for lexical and syntactic errors. `expected` lists what the parser
    would have accepted at `position`.
    """

    def __init__(self, message, position, expected=()):
        super(SqlSyntaxError, self).__init__(message, position)
        self.expected = tuple(expected)


@dataclass(frozen=True, order=True)
class Position:
    """ 1-based line and column of a token or node. """
    line: int
    column: int

    def __str__(self):
        return "%d:%d" % (self.line, self.column)


class TokenKind(Enum):
    """ Lexical categories. """
    KEYWORD = "keyword"
    IDENT = "identifier"
    INT = "integer literal"
    FLOAT = "float literal"
    STRING = "string literal"
    CHAR = "character literal"
    BOOL = "boolean literal"
    OPERATOR = "operator"
    PUNCT = "punctuation"
    PLACEHOLDER_OPEN = "'{'"
    PLACEHOLDER_CLOSE = "'}'"
    SEMICOLON = "';'"
    EOF = "end of input"


KEYWORDS = frozenset("""
    SELECT ALL DISTINCT FROM AS WHERE AND OR NOT BETWEEN IS NULL SATISFIES
    GROUP ORDER BY ASC DESC LIMIT INSERT INTO VALUES UPDATE SET DELETE
""".split())

BOOLEANS = frozenset(("TRUE", "FALSE"))


@dataclass(frozen=True)
class Token:
    """
    A lexeme with its kind and position. For keywords and booleans `value`
    holds the upper-cased spelling, for literals the decoded value.
    """
    kind: TokenKind
    text: str
    position: Position
    value: object = field(default=None, compare=False)

    def is_keyword(self, *words):
        """ True if the token is one of the given keywords. """
        return self.kind == TokenKind.KEYWORD and self.value in words

    def is_punct(self, text):
        """ True if the token is the punctuation `text`. """
        return self.kind == TokenKind.PUNCT and self.text == text

    def describe(self):
        """ How the token is shown in error messages. """
        if self.kind == TokenKind.EOF:
            return "end of input"
        return "'%s'" % self.text


_PATTERNS = [
    ("space", r"[ \t\r\n]+"),
    ("comment", r"--[^\n]*"),
    ("char", r"[cC]'(?:[^']|'')*'"),
    ("string", r"'(?:[^']|'')*'"),
    ("float", r"-?[0-9]+(?:\.[0-9]+(?:[eE][-+]?[0-9]+)?|[eE][-+]?[0-9]+)"),
    ("int", r"-?[0-9]+"),
    ("quoted", r'"[^"\n]+"'),
    ("word", r"[A-Za-z_][A-Za-z0-9_]*"),
    ("operator", r"<=|>=|<>|=|<|>"),
    ("punct", r"[,.()*]"),
    ("semicolon", r";"),
]
_TOKEN_RE = re.compile("|".join("(?P<%s>%s)" % pair for pair in _PATTERNS))
_PLACEHOLDER_RE = re.compile(r"\{[ \t]*([A-Za-z_][A-Za-z0-9_]*)[ \t]*\}")


class _Cursor(object):
    """ Tracks line and column while scanning. """

    def __init__(self, text, line, column):
        self.text = text
        self.offset = 0
        self.line = line
        self.column = column

    def position(self):
        return Position(self.line, self.column)

    def skip(self, count):
        chunk = self.text[self.offset:self.offset + count]
        newlines = chunk.count("\n")
        if newlines:
            self.line += newlines
            self.column = len(chunk) - chunk.rindex("\n")
        else:
            self.column += len(chunk)
        self.offset += count


def tokenize(text, line=1, column=1):
    """
    Splits statement text into tokens ending with an EOF token. `line` and
    `column` give the position of the first character, so statements cut out
    of a larger file keep their original positions.
    """
    cursor = _Cursor(text, line, column)
    tokens = []
    while cursor.offset < len(text):
        start = cursor.position()
        char = text[cursor.offset]
        if char == "{":
            tokens.extend(_placeholder(cursor))
            continue
        match = _TOKEN_RE.match(text, cursor.offset)
        if match is None:
            raise _lexical_error(text, cursor.offset, start)
        kind, lexeme = match.lastgroup, match.group()
        cursor.skip(len(lexeme))
        if kind in ("space", "comment"):
            continue
        tokens.append(_make_token(kind, lexeme, start))
    tokens.append(Token(TokenKind.EOF, "", cursor.position()))
    return tokens


def _placeholder(cursor):
    start = cursor.position()
    match = _PLACEHOLDER_RE.match(cursor.text, cursor.offset)
    if match is None:
        rest = cursor.text[cursor.offset:]
        closing = rest.find("}")
        if closing < 0 or "\n" in rest[:closing]:
            raise SqlSyntaxError("unterminated placeholder", start, ("'}'",))
        raise SqlSyntaxError("placeholder must contain a single identifier: %s"
                             % rest[:closing + 1], start, (TokenKind.IDENT.value,))
    name = match.group(1)
    cursor.skip(1)
    open_token = Token(TokenKind.PLACEHOLDER_OPEN, "{", start)
    cursor.skip(match.start(1) - cursor.offset)
    name_token = Token(TokenKind.IDENT, name, cursor.position(), name)
    cursor.skip(match.end() - 1 - cursor.offset)
    close_token = Token(TokenKind.PLACEHOLDER_CLOSE, "}", cursor.position())
    cursor.skip(1)
    return [open_token, name_token, close_token]


def _lexical_error(text, offset, position):
    char = text[offset]
    if char == "'" or (char in "cC" and text[offset + 1:offset + 2] == "'"):
        return SqlSyntaxError("unterminated string literal", position)
    if char == '"':
        return SqlSyntaxError("unterminated quoted identifier", position)
    if text.startswith("!=", offset):
        return SqlSyntaxError("operator '!=' is not supported, use '<>'", position,
                              ("'<>'",))
    return SqlSyntaxError("illegal character %r" % char, position)


def _make_token(kind, lexeme, position):
    if kind == "word":
        upper = lexeme.upper()
        if upper in KEYWORDS:
            return Token(TokenKind.KEYWORD, lexeme, position, upper)
        if upper in BOOLEANS:
            return Token(TokenKind.BOOL, lexeme, position, upper == "TRUE")
        return Token(TokenKind.IDENT, lexeme, position, lexeme)
    if kind == "quoted":
        return Token(TokenKind.IDENT, lexeme, position, lexeme[1:-1])
    if kind == "int":
        return Token(TokenKind.INT, lexeme, position, int(lexeme))
    if kind == "float":
        return Token(TokenKind.FLOAT, lexeme, position, float(lexeme))
    if kind == "string":
        return Token(TokenKind.STRING, lexeme, position, lexeme[1:-1].replace("''", "'"))
    if kind == "char":
        value = lexeme[2:-1].replace("''", "'")
        if len(value) != 1:
            raise SqlSyntaxError("character literal must hold exactly one character",
                                 position)
        return Token(TokenKind.CHAR, lexeme, position, value)
    if kind == "operator":
        return Token(TokenKind.OPERATOR, lexeme, position, lexeme)
    if kind == "semicolon":
        return Token(TokenKind.SEMICOLON, lexeme, position)
    return Token(TokenKind.PUNCT, lexeme, position, lexeme)


def split_statements(text):
    """
    Splits a file into statements at top-level semicolons. Returns a list of
    (statement text, line, column) triples; each text keeps its semicolon, and
    text after the last semicolon is returned only if it is not blank.
    Semicolons inside literals, quoted identifiers, placeholders and comments
    do not split.
    """
    pieces = []
    start, line, column = 0, 1, 1
    start_line, start_column = 1, 1
    index = 0
    length = len(text)
    while index < length:
        char = text[index]
        step = 1
        if char in "'\"":
            closing = text.find(char, index + 1)
            while closing >= 0 and char == "'" and text[closing + 1:closing + 2] == "'":
                closing = text.find(char, closing + 2)
            step = (closing - index + 1) if closing >= 0 else length - index
        elif char == "{":
            closing = text.find("}", index + 1)
            step = (closing - index + 1) if closing >= 0 else length - index
        elif text.startswith("--", index):
            closing = text.find("\n", index)
            step = (closing - index) if closing >= 0 else length - index
        chunk = text[index:index + step]
        if char == ";":
            pieces.append((text[start:index + 1], start_line, start_column))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            column = len(chunk) - chunk.rindex("\n")
        else:
            column += len(chunk)
        index += step
        if char == ";":
            start, start_line, start_column = index, line, column
    rest = text[start:]
    if _has_code(rest):
        pieces.append((rest, start_line, start_column))
    return [_trim(piece) for piece in pieces if _has_code(piece[0])]


def _has_code(text):
    stripped = "\n".join(line.split("--", 1)[0] for line in text.split("\n"))
    return bool(stripped.strip())


def _trim(piece):
    text, line, column = piece
    index = 0
    while index < len(text) and text[index] in " \t\r\n":
        if text[index] == "\n":
            line += 1
            column = 1
        else:
            column += 1
        index += 1
    return text[index:], line, column
