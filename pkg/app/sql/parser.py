"""
Recursive-descent parser for the extended SQL dialect (see docs/sql-grammar.ebnf).

Each parse_* method expects the cursor on the first token of its fragment and
leaves it one past the last token.
"""
from __future__ import annotations

from app.db.values import SQLValue
from .ast import (And, Assignment, Between, Cmp, CmpOp, ColumnRef, Const,
                  DeleteStmt, InsertStmt, IsNull, Not, Or, OrderItem,
                  Placeholder, Quantifier, Satisfies, SelectStmt, Star,
                  TableRef, UpdateStmt)
from .tokens import SqlSyntaxError, TokenKind, tokenize

_LITERAL_KINDS = (TokenKind.INT, TokenKind.FLOAT, TokenKind.STRING,
                  TokenKind.CHAR, TokenKind.BOOL)
_VALUE_EXPECTED = ("column", "literal", "placeholder")


def parse_statement(text, line=1, column=1):
    """
    Parses one statement terminated by a semicolon.
    """
    return Parser(tokenize(text, line, column)).parse()


class Parser(object):
    """
    The SQL parser over a token list.
    """

    def __init__(self, tokens):
        self.tokens = tokens
        self.index = 0

    def current(self):
        return self.tokens[self.index]

    def peek(self, offset=1):
        index = min(self.index + offset, len(self.tokens) - 1)
        return self.tokens[index]

    def advance(self):
        token = self.tokens[self.index]
        if token.kind != TokenKind.EOF:
            self.index += 1
        return token

    def error(self, *expected):
        token = self.current()
        if token.kind == TokenKind.EOF:
            message = "unterminated statement, expected %s" % " or ".join(expected)
        else:
            message = "unexpected %s, expected %s" % (token.describe(), " or ".join(expected))
        return SqlSyntaxError(message, token.position, expected)

    def accept_keyword(self, *words):
        if self.current().is_keyword(*words):
            return self.advance()
        return None

    def expect_keyword(self, *words):
        token = self.accept_keyword(*words)
        if token is None:
            raise self.error(*("'%s'" % word.capitalize() for word in words))
        return token

    def accept_punct(self, text):
        if self.current().is_punct(text):
            return self.advance()
        return None

    def expect_punct(self, text):
        token = self.accept_punct(text)
        if token is None:
            raise self.error("'%s'" % text)
        return token

    def expect_ident(self, what):
        token = self.current()
        if token.kind != TokenKind.IDENT:
            raise self.error(what)
        return self.advance()

    def parse(self):
        """
        Parses a complete statement including its semicolon.
        """
        token = self.current()
        if token.is_keyword("SELECT"):
            statement = self.parse_select()
        elif token.is_keyword("INSERT"):
            statement = self.parse_insert()
        elif token.is_keyword("UPDATE"):
            statement = self.parse_update()
        elif token.is_keyword("DELETE"):
            statement = self.parse_delete()
        else:
            raise self.error("'Select'", "'Insert'", "'Update'", "'Delete'")
        if self.current().kind != TokenKind.SEMICOLON:
            raise self.error("';'")
        self.advance()
        if self.current().kind != TokenKind.EOF:
            raise SqlSyntaxError("only one statement is allowed",
                                 self.current().position, ("end of input",))
        return statement

    def parse_select(self):
        start = self.expect_keyword("SELECT")
        quantifier = Quantifier.ALL
        if self.accept_keyword("DISTINCT"):
            quantifier = Quantifier.DISTINCT
        else:
            self.accept_keyword("ALL")
        projection = self.parse_projection()
        self.expect_keyword("FROM")
        tables = [self.parse_table_ref(allow_alias=True)]
        while self.accept_punct(","):
            tables.append(self.parse_table_ref(allow_alias=True))
        where = self.parse_where()
        group_by = ()
        if self.accept_keyword("GROUP"):
            self.expect_keyword("BY")
            group_by = tuple(self.parse_list(self.parse_column_ref))
        order_by = ()
        if self.accept_keyword("ORDER"):
            self.expect_keyword("BY")
            order_by = tuple(self.parse_list(self.parse_order_item))
        limit = None
        if self.accept_keyword("LIMIT"):
            token = self.current()
            if token.kind != TokenKind.INT:
                raise self.error("positive integer")
            if token.value <= 0:
                raise SqlSyntaxError("limit must be a positive integer", token.position,
                                     ("positive integer",))
            limit = self.advance().value
        return SelectStmt(quantifier, tuple(projection), tuple(tables), where,
                          group_by, order_by, limit, start.position)

    def parse_projection(self):
        star = self.accept_punct("*")
        if star is not None:
            return [Star(star.position)]
        if self.current().kind != TokenKind.IDENT:
            raise self.error("column", "'*'")
        return self.parse_list(self.parse_column_ref)

    def parse_list(self, parse_item):
        items = [parse_item()]
        while self.accept_punct(","):
            items.append(parse_item())
        return items

    def parse_table_ref(self, allow_alias=False):
        token = self.expect_ident("table name")
        alias = None
        if allow_alias:
            if self.accept_keyword("AS"):
                alias = self.expect_ident("pseudonym").value
            elif self.current().kind == TokenKind.IDENT:
                alias = self.advance().value
        return TableRef(token.value, alias, token.position)

    def parse_column_ref(self):
        first = self.expect_ident("column")
        if self.accept_punct("."):
            second = self.expect_ident("column")
            return ColumnRef(first.value, second.value, first.position)
        return ColumnRef(None, first.value, first.position)

    def parse_order_item(self):
        column = self.parse_column_ref()
        descending = False
        token = self.accept_keyword("ASC", "DESC")
        if token is not None:
            descending = token.value == "DESC"
        return OrderItem(column, descending)

    def parse_where(self):
        if self.accept_keyword("WHERE"):
            return self.parse_condition()
        return None

    def parse_condition(self):
        first = self.parse_conjunction()
        items = [first]
        while self.accept_keyword("OR"):
            items.append(self.parse_conjunction())
        if len(items) == 1:
            return first
        return Or(tuple(items), first.position)

    def parse_conjunction(self):
        first = self.parse_negation()
        items = [first]
        while self.accept_keyword("AND"):
            items.append(self.parse_negation())
        if len(items) == 1:
            return first
        return And(tuple(items), first.position)

    def parse_negation(self):
        token = self.accept_keyword("NOT")
        if token is not None:
            return Not(self.parse_negation(), token.position)
        return self.parse_predicate()

    def parse_predicate(self):
        token = self.current()
        if self.accept_punct("("):
            inner = self.parse_condition()
            self.expect_punct(")")
            return inner
        if self.accept_keyword("SATISFIES"):
            left = self.expect_ident("table pseudonym")
            relationship = self.expect_ident("relationship name")
            right = self.expect_ident("table pseudonym")
            return Satisfies(left.value, relationship.value, right.value, token.position)
        subject = self.parse_value()
        if self.accept_keyword("IS"):
            negated = self.accept_keyword("NOT") is not None
            self.expect_keyword("NULL")
            if not isinstance(subject, ColumnRef):
                raise SqlSyntaxError("Is Null applies to columns only", subject.position,
                                     ("column",))
            return IsNull(subject, negated, subject.position)
        negated = self.accept_keyword("NOT")
        if negated is not None and self.accept_keyword("NULL"):
            if not isinstance(subject, ColumnRef):
                raise SqlSyntaxError("Not Null applies to columns only", subject.position,
                                     ("column",))
            return IsNull(subject, True, subject.position)
        if negated is not None or self.current().is_keyword("BETWEEN"):
            self.expect_keyword("BETWEEN")
            low = self.parse_value()
            self.expect_keyword("AND")
            high = self.parse_value()
            between = Between(subject, low, high, subject.position)
            return Not(between, negated.position) if negated is not None else between
        operator = self.current()
        if operator.kind != TokenKind.OPERATOR:
            raise self.error("comparison operator", "'Between'", "'Is'")
        self.advance()
        rhs = self.parse_value()
        return Cmp(CmpOp(operator.value), subject, rhs, subject.position)

    def parse_value(self):
        token = self.current()
        if token.kind == TokenKind.IDENT:
            return self.parse_column_ref()
        if token.kind == TokenKind.PLACEHOLDER_OPEN:
            self.advance()
            name = self.expect_ident("placeholder name")
            if self.current().kind != TokenKind.PLACEHOLDER_CLOSE:
                raise self.error("'}'")
            self.advance()
            return Placeholder(name.value, token.position)
        if token.kind in _LITERAL_KINDS or token.is_keyword("NULL"):
            self.advance()
            return Const(_literal_value(token), token.position)
        raise self.error(*_VALUE_EXPECTED)

    def parse_insert(self):
        start = self.expect_keyword("INSERT")
        self.expect_keyword("INTO")
        table = self.parse_table_ref()
        columns = None
        if self.accept_punct("("):
            columns = tuple(self.parse_list(self.parse_column_ref))
            self.expect_punct(")")
        self.expect_keyword("VALUES")
        rows = tuple(self.parse_list(self.parse_row))
        return InsertStmt(table, columns, rows, start.position)

    def parse_row(self):
        self.expect_punct("(")
        values = tuple(self.parse_list(self.parse_value))
        self.expect_punct(")")
        return values

    def parse_update(self):
        start = self.expect_keyword("UPDATE")
        table = self.parse_table_ref()
        self.expect_keyword("SET")
        assignments = tuple(self.parse_list(self.parse_assignment))
        where = self.parse_where()
        return UpdateStmt(table, assignments, where, start.position)

    def parse_assignment(self):
        column = self.parse_column_ref()
        operator = self.current()
        if operator.kind != TokenKind.OPERATOR or operator.value != "=":
            raise self.error("'='")
        self.advance()
        return Assignment(column, self.parse_value())

    def parse_delete(self):
        start = self.expect_keyword("DELETE")
        self.expect_keyword("FROM")
        table = self.parse_table_ref()
        where = self.parse_where()
        return DeleteStmt(table, where, start.position)


def _literal_value(token):
    if token.kind == TokenKind.INT:
        return SQLValue.integer(token.value)
    if token.kind == TokenKind.FLOAT:
        return SQLValue.real(token.value)
    if token.kind == TokenKind.STRING:
        return SQLValue.string(token.value)
    if token.kind == TokenKind.CHAR:
        return SQLValue.char(token.value)
    if token.kind == TokenKind.BOOL:
        return SQLValue.boolean(token.value)
    return SQLValue.null()
