"""
Typer phase: assigns an SQLType to every value expression and infers the type
of each embedded expression `{x}` from the column or literal it meets.

Int and Float never unify. A placeholder used several times must be used at
one type; null may be bound to it only if every use tolerates null.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import List

from app.db.values import SQLType
from app.sql.ast import (Between, Cmp, ColumnRef, Const, InsertStmt, Placeholder,
                         SelectStmt, Star, UpdateStmt, condition_values,
                         map_condition, walk_condition)
from .errors import AnalysisError, Phase


def _error(message, position):
    return AnalysisError(Phase.TYPER, message, position)


@dataclass(frozen=True)
class Parameter:
    """ An embedded expression of a typed statement. """
    name: str
    sql_type: SQLType
    nullable: bool


def describe_operand(expr):
    """ How an operand appears in type error messages, e.g. "Int (Age)". """
    if isinstance(expr, ColumnRef):
        return "%s (%s)" % (expr.sql_type, expr.name)
    return str(expr.sql_type)


class Typer(object):
    """
    Types one consistent statement. `check` collects placeholder uses and
    raises on conflicts; `rewrite` then stamps the final types onto the tree.
    """

    def __init__(self, info):
        self.info = info
        self.slots = {}

    def column_type(self, column):
        return self.info.column_type(column.binding.table, column.name)

    def type_value(self, expr):
        """ Types a column or literal; placeholders stay untyped here. """
        if isinstance(expr, ColumnRef):
            return replace(expr, sql_type=self.column_type(expr))
        if isinstance(expr, Const) and not expr.value.is_null:
            return replace(expr, sql_type=expr.value.sql_type)
        return expr

    def nullable_context(self, expr):
        return isinstance(expr, ColumnRef) and \
            self.info.is_nullable(expr.binding.table, expr.name)

    def use(self, placeholder, sql_type, nullable):
        """ Records one use of `placeholder` at `sql_type`. """
        known = self.slots.get(placeholder.name)
        if known is None:
            self.slots[placeholder.name] = Parameter(placeholder.name, sql_type, nullable)
            return
        if known.sql_type != sql_type:
            raise _error("Type error: embedded expression {%s} is used as %s and as %s."
                         % (placeholder.name, known.sql_type, sql_type), placeholder.position)
        self.slots[placeholder.name] = replace(known, nullable=known.nullable and nullable)

    def unify(self, operands, position):
        """
        Checks that the typed operands of one comparison agree and records the
        placeholders among them.
        """
        anchors = [e for e in operands if not isinstance(e, Placeholder)]
        if not anchors:
            raise _error("Type error: embedded expressions %s cannot be compared."
                         % " and ".join("{%s}" % e.name for e in operands), position)
        anchor = anchors[0]
        for other in anchors[1:]:
            if other.sql_type != anchor.sql_type:
                raise _error("Type error: %s and %s are not compatible."
                             % (describe_operand(anchor), describe_operand(other)), position)
        nullable = any(self.nullable_context(e) for e in anchors)
        for expr in operands:
            if isinstance(expr, Placeholder):
                self.use(expr, anchor.sql_type, nullable)
        return anchor.sql_type

    def check_condition(self, cond):
        for node in walk_condition(cond):
            if isinstance(node, Cmp):
                self.unify([self.type_value(node.lhs), self.type_value(node.rhs)],
                           node.position)
            elif isinstance(node, Between):
                operands = [self.type_value(e) for e in (node.subject, node.low, node.high)]
                sql_type = self.unify(operands, node.position)
                if not sql_type.is_numeric:
                    raise _error("Type error: Between requires a numeric type, found %s."
                                 % describe_operand(operands[0]), node.position)

    def check_target(self, column, value):
        """ Types a value assigned to `column` in Insert or Update. """
        target = replace(column, sql_type=self.column_type(column))
        nullable = self.info.is_nullable(column.binding.table, column.name)
        if isinstance(value, Placeholder):
            self.use(value, target.sql_type, nullable)
            return
        value = self.type_value(value)
        if value.sql_type is not None and value.sql_type != target.sql_type:
            raise _error("Type error: %s and %s are not compatible."
                         % (describe_operand(target), describe_operand(value)),
                         value.position)

    def check(self, statement):
        if isinstance(statement, InsertStmt):
            for row in statement.rows:
                for column, value in zip(statement.columns, row):
                    self.check_target(column, value)
            return
        if isinstance(statement, UpdateStmt):
            for assignment in statement.assignments:
                self.check_target(assignment.column, assignment.value)
        self.check_condition(statement.where)

    def final_value(self, expr, target_type=None):
        """ The typed form of a value expression after all uses are known. """
        if isinstance(expr, Placeholder):
            slot = self.slots[expr.name]
            return replace(expr, sql_type=slot.sql_type, nullable=slot.nullable)
        if isinstance(expr, Const) and expr.value.is_null:
            return replace(expr, sql_type=target_type)
        return self.type_value(expr)

    def rewrite(self, statement):
        if isinstance(statement, SelectStmt):
            projection = tuple(item if isinstance(item, Star) else self.type_value(item)
                               for item in statement.projection)
            return replace(statement, projection=projection,
                           where=map_condition(statement.where, self.final_value),
                           group_by=tuple(self.type_value(c) for c in statement.group_by),
                           order_by=tuple(replace(item, column=self.type_value(item.column))
                                          for item in statement.order_by))
        if isinstance(statement, InsertStmt):
            columns = tuple(self.type_value(c) for c in statement.columns)
            rows = tuple(tuple(self.final_value(v, c.sql_type) for c, v in zip(columns, row))
                         for row in statement.rows)
            return replace(statement, columns=columns, rows=rows)
        where = map_condition(statement.where, self.final_value)
        if isinstance(statement, UpdateStmt):
            assignments = []
            for assignment in statement.assignments:
                column = self.type_value(assignment.column)
                assignments.append(replace(assignment, column=column,
                                           value=self.final_value(assignment.value,
                                                                  column.sql_type)))
            return replace(statement, assignments=tuple(assignments), where=where)
        return replace(statement, where=where)


def infer_types(statement, info):
    """
    Runs the typer, raising AnalysisError(Typer) on failure.
    """
    typer = Typer(info)
    typer.check(statement)
    return typer.rewrite(statement)


def parameters(typed) -> List[Parameter]:
    """
    The distinct embedded expressions of a typed statement in order of first
    occurrence.
    """
    found = {}

    def visit(expr):
        if isinstance(expr, Placeholder) and expr.name not in found:
            found[expr.name] = Parameter(expr.name, expr.sql_type, expr.nullable)

    if isinstance(typed, InsertStmt):
        for row in typed.rows:
            for value in row:
                visit(value)
        return list(found.values())
    if isinstance(typed, UpdateStmt):
        for assignment in typed.assignments:
            visit(assignment.value)
    for node in walk_condition(typed.where):
        for expr in condition_values(node):
            visit(expr)
    return list(found.values())
