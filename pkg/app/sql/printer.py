"""
Canonical printer for dialect statements. Parsing the printed text yields a tree
equal to the printed one.
"""
from __future__ import annotations

import re

from app.db.values import SQLType
from .ast import (And, Between, Cmp, ColumnRef, Const, DeleteStmt, InsertStmt,
                  IsNull, Not, Or, Placeholder, Quantifier, Satisfies,
                  SelectStmt, Star, UpdateStmt)
from .tokens import BOOLEANS, KEYWORDS

_PLAIN_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def format_identifier(name):
    """ Quotes `name` when it would not read back as an identifier. """
    if _PLAIN_IDENT.match(name) and name.upper() not in KEYWORDS | BOOLEANS:
        return name
    return '"%s"' % name


def format_value(expr):
    """ Renders a value expression. """
    if isinstance(expr, ColumnRef):
        name = format_identifier(expr.name)
        if expr.qualifier:
            return "%s.%s" % (format_identifier(expr.qualifier), name)
        return name
    if isinstance(expr, Placeholder):
        return "{%s}" % expr.name
    return format_literal(expr)


def format_literal(const):
    """ Renders a literal in dialect syntax. """
    value = const.value
    if value.is_null:
        return "null"
    if value.sql_type == SQLType.STRING:
        return "'%s'" % value.payload.replace("'", "''")
    if value.sql_type == SQLType.CHAR:
        return "c'%s'" % value.payload.replace("'", "''")
    if value.sql_type == SQLType.BOOL:
        return "true" if value.payload else "false"
    if value.sql_type == SQLType.FLOAT:
        return repr(value.payload)
    if value.sql_type == SQLType.INT:
        return str(value.payload)
    raise ValueError("%s values have no literal syntax" % value.sql_type)


def format_condition(cond):
    """ Renders a condition; nested connectives are parenthesised. """
    if isinstance(cond, Cmp):
        return "%s %s %s" % (format_value(cond.lhs), cond.op.value, format_value(cond.rhs))
    if isinstance(cond, Between):
        return "%s Between %s And %s" % (format_value(cond.subject), format_value(cond.low),
                                         format_value(cond.high))
    if isinstance(cond, IsNull):
        return "%s Is %sNull" % (format_value(cond.column), "Not " if cond.negated else "")
    if isinstance(cond, Satisfies):
        return "Satisfies %s %s %s" % (format_identifier(cond.left),
                                       format_identifier(cond.relationship),
                                       format_identifier(cond.right))
    if isinstance(cond, Not):
        return "Not (%s)" % format_condition(cond.inner)
    joiner = " And " if isinstance(cond, And) else " Or "
    return joiner.join(_nested(item) for item in cond.items)


def _nested(cond):
    if isinstance(cond, (And, Or)):
        return "(%s)" % format_condition(cond)
    return format_condition(cond)


def _format_table(table):
    text = format_identifier(table.name)
    if table.alias:
        text += " as %s" % format_identifier(table.alias)
    return text


def format_statement(statement):
    """
    Renders a statement in canonical dialect text, including the semicolon.
    """
    if isinstance(statement, SelectStmt):
        parts = ["Select"]
        if statement.quantifier == Quantifier.DISTINCT:
            parts.append("Distinct")
        parts.append(", ".join("*" if isinstance(item, Star) else format_value(item)
                               for item in statement.projection))
        parts.append("From " + ", ".join(_format_table(t) for t in statement.tables))
        if statement.where is not None:
            parts.append("Where " + format_condition(statement.where))
        if statement.group_by:
            parts.append("Group By " + ", ".join(format_value(c) for c in statement.group_by))
        if statement.order_by:
            parts.append("Order By " + ", ".join(
                "%s %s" % (format_value(item.column), "Desc" if item.descending else "Asc")
                for item in statement.order_by))
        if statement.limit is not None:
            parts.append("Limit %d" % statement.limit)
        return " ".join(parts) + ";"
    if isinstance(statement, InsertStmt):
        text = "Insert Into " + format_identifier(statement.table.name)
        if statement.columns is not None:
            text += " (%s)" % ", ".join(format_value(c) for c in statement.columns)
        rows = ", ".join("(%s)" % ", ".join(format_value(v) for v in row)
                         for row in statement.rows)
        return "%s Values %s;" % (text, rows)
    if isinstance(statement, UpdateStmt):
        text = "Update %s Set %s" % (
            format_identifier(statement.table.name),
            ", ".join("%s = %s" % (format_value(a.column), format_value(a.value))
                      for a in statement.assignments))
    elif isinstance(statement, DeleteStmt):
        text = "Delete From " + format_identifier(statement.table.name)
    else:
        raise TypeError("not a statement: %r" % (statement,))
    if statement.where is not None:
        text += " Where " + format_condition(statement.where)
    return text + ";"
