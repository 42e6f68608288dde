"""
Consistency phase: every table, column and relationship a statement names
must exist in the model, `Satisfies` must relate the entities its relationship
relates, and null may only appear where the schema permits it.
"""
from __future__ import annotations

from app.erd.model import KEY_COLUMN, RelKind
from app.sql.ast import (And, Between, Cmp, ColumnRef, Const, InsertStmt, Not, Or,
                         Satisfies, SelectStmt, Star, UpdateStmt, condition_values)
from .errors import AnalysisError, Phase


def _error(message, position):
    return AnalysisError(Phase.CONSISTENCY, message, position)


def _is_null(expr):
    return isinstance(expr, Const) and expr.value.is_null


class ConsistencyChecker(object):
    """
    Checks one named statement against a ParserInfo.
    """

    def __init__(self, info):
        self.info = info

    def check_table(self, table):
        if not self.info.has_table(table.name):
            raise _error("unknown table '%s'" % table.name, table.position)

    def check_column(self, column):
        table = column.binding.table
        if not self.info.has_column(table, column.name):
            raise _error("unknown column '%s' in table '%s'" % (column.name, table),
                         column.position)

    def check_value(self, expr):
        if isinstance(expr, ColumnRef):
            self.check_column(expr)

    def check_condition(self, cond, in_select, negated=False, disjunctive=False):
        """
        Walks a condition, tracking whether the current node sits below Not or Or.
        """
        if cond is None:
            return
        if isinstance(cond, Satisfies):
            self.check_satisfies(cond, in_select, negated, disjunctive)
            return
        if isinstance(cond, Not):
            self.check_condition(cond.inner, in_select, True, disjunctive)
            return
        if isinstance(cond, (Cmp, Between)):
            for expr in condition_values(cond):
                if _is_null(expr):
                    raise _error("null is not allowed in conditions, use Is Null or Is Not Null",
                                 expr.position)
        if isinstance(cond, (And, Or)):
            for item in cond.items:
                self.check_condition(item, in_select, negated,
                                     disjunctive or isinstance(cond, Or))
            return
        for expr in condition_values(cond):
            self.check_value(expr)

    def check_satisfies(self, node, in_select, negated, disjunctive):
        if not in_select:
            raise _error("Satisfies is only allowed in Select statements", node.position)
        relation = self.info.relation(node.relationship)
        if relation is None:
            raise _error("unknown relationship '%s'" % node.relationship, node.position)
        if negated:
            raise _error("Satisfies may not appear under Not", node.position)
        if disjunctive and relation.kind == RelKind.MANY_TO_MANY:
            raise _error("Satisfies over the n:m relationship '%s' may not appear under Or"
                         % node.relationship, node.position)
        if (node.left_binding.table, node.right_binding.table) != \
                (relation.entity_a, relation.entity_b):
            raise _error("relationship %s does not relate %s and %s"
                         % (node.relationship, node.left_binding.table,
                            node.right_binding.table), node.position)

    def check(self, statement):
        """
        Returns `statement` unchanged if it is consistent.
        """
        if isinstance(statement, SelectStmt):
            for table in statement.tables:
                self.check_table(table)
            for item in statement.projection:
                if not isinstance(item, Star):
                    self.check_column(item)
            self.check_condition(statement.where, True)
            for column in statement.group_by:
                self.check_column(column)
            for item in statement.order_by:
                self.check_column(item.column)
            return statement
        self.check_table(statement.table)
        if isinstance(statement, InsertStmt):
            self.check_insert(statement)
            return statement
        if isinstance(statement, UpdateStmt):
            self.check_update(statement)
        self.check_condition(statement.where, False)
        return statement

    def check_targets(self, columns):
        seen = set()
        for column in columns:
            self.check_column(column)
            if column.name == KEY_COLUMN:
                raise _error("column '%s' is assigned by the database" % KEY_COLUMN,
                             column.position)
            if column.name in seen:
                raise _error("column '%s' is given more than once" % column.name,
                             column.position)
            seen.add(column.name)

    def check_not_null(self, table, column, value):
        if _is_null(value) and not self.info.is_nullable(table, column.name):
            raise _error("column '%s.%s' is NOT NULL, null is not allowed"
                         % (table, column.name), value.position)

    def check_insert(self, statement):
        table = statement.table.name
        self.check_targets(statement.columns)
        given = set(column.name for column in statement.columns)
        for name in self.info.columns(table):
            if name != KEY_COLUMN and name not in given \
                    and not self.info.is_nullable(table, name):
                raise _error("column '%s.%s' is NOT NULL and must be given a value"
                             % (table, name), statement.table.position)
        for row in statement.rows:
            if len(row) != len(statement.columns):
                raise _error("row has %d values but %d columns are given"
                             % (len(row), len(statement.columns)), row[0].position)
            for column, value in zip(statement.columns, row):
                if isinstance(value, ColumnRef):
                    raise _error("column '%s' cannot be used as a value in Insert"
                                 % value.display, value.position)
                self.check_not_null(table, column, value)

    def check_update(self, statement):
        table = statement.table.name
        self.check_targets([a.column for a in statement.assignments])
        for assignment in statement.assignments:
            self.check_value(assignment.value)
            self.check_not_null(table, assignment.column, assignment.value)


def check_consistency(statement, info):
    """
    Runs the consistency phase, raising AnalysisError(Consistency) on failure.
    """
    return ConsistencyChecker(info).check(statement)
