"""
Namer phase: numbers the table references of a statement and resolves every
pseudonym, qualifier and unqualified column to a (table, number) binding.

Repeated references to one table are numbered 0..k-1 in From-list order.
"""
from __future__ import annotations

from dataclasses import replace

from app.erd.model import KEY_COLUMN
from app.sql.ast import (Assignment, ColumnRef, InsertStmt, OrderItem, SelectStmt,
                         Star, UpdateStmt, map_condition)
from .errors import AnalysisError, Phase


def _error(message, position):
    return AnalysisError(Phase.NAMER, message, position)


class Scope(object):
    """
    The table references visible in a statement, keyed by the name they are
    addressed with: the pseudonym if one was given, otherwise the table name.
    """

    def __init__(self, tables):
        self.tables = []
        self.visible = {}
        self.used = set()
        counters = {}
        for table in tables:
            number = counters.get(table.name, 0)
            counters[table.name] = number + 1
            table = replace(table, number=number)
            name = table.alias or table.name
            if name in self.visible:
                if table.alias:
                    raise _error("pseudonym '%s' is defined for more than one table" % name,
                                 table.position)
                raise _error("table '%s' is referenced more than once without a pseudonym"
                             % name, table.position)
            self.visible[name] = table
            self.tables.append(table)

    def lookup(self, name, position):
        """
        The table reference addressed by `name`; marks a pseudonym as used.
        """
        table = self.visible.get(name)
        if table is not None:
            self.used.add(name)
            return table
        if any(t.name == name and t.alias for t in self.tables):
            raise _error("table '%s' is not visible, use its pseudonym" % name, position)
        raise _error("pseudonym '%s' is not defined" % name, position)

    def use_all(self):
        """ `*` addresses every table. """
        self.used.update(self.visible)

    def unused(self):
        """ The first aliased reference whose pseudonym was never used, or None. """
        for table in self.tables:
            if table.alias and table.alias not in self.used:
                return table
        return None


class Namer(object):
    """
    Resolves the names of one statement against a ParserInfo.
    """

    def __init__(self, info):
        self.info = info
        self.scope = None

    def column(self, column):
        if column.qualifier is not None:
            table = self.scope.lookup(column.qualifier, column.position)
            return replace(column, binding=table.binding)
        owners = [t for t in self.scope.tables
                  if self.info.has_column(t.name, column.name)]
        if len(owners) > 1:
            raise _error("column '%s' is ambiguous, it belongs to %s"
                         % (column.name, " and ".join(t.alias or t.name for t in owners)),
                         column.position)
        if not owners:
            if len(self.scope.tables) > 1:
                raise _error("column '%s' does not belong to any table in From" % column.name,
                             column.position)
            owners = self.scope.tables
        return replace(column, binding=owners[0].binding)

    def value(self, expr):
        if isinstance(expr, ColumnRef):
            return self.column(expr)
        return expr

    def satisfies(self, node):
        left = self.scope.lookup(node.left, node.position)
        right = self.scope.lookup(node.right, node.position)
        return replace(node, left_binding=left.binding, right_binding=right.binding)

    def condition(self, cond):
        return map_condition(cond, self.value, self.satisfies)

    def resolve(self, statement):
        """
        Returns the named statement.
        """
        if isinstance(statement, SelectStmt):
            return self.resolve_select(statement)
        return self.resolve_mutation(statement)

    def resolve_select(self, statement):
        self.scope = Scope(statement.tables)
        projection = []
        for item in statement.projection:
            if isinstance(item, Star):
                self.scope.use_all()
                projection.append(item)
            else:
                projection.append(self.column(item))
        where = self.condition(statement.where)
        group_by = tuple(self.column(c) for c in statement.group_by)
        order_by = tuple(OrderItem(self.column(item.column), item.descending)
                         for item in statement.order_by)
        unused = self.scope.unused()
        if unused is not None:
            raise _error("pseudonym '%s' is defined but not used" % unused.alias,
                         unused.position)
        return replace(statement, projection=tuple(projection),
                       tables=tuple(self.scope.tables), where=where,
                       group_by=group_by, order_by=order_by)

    def target_column(self, column, table):
        if column.qualifier is not None and column.qualifier != table.name:
            raise _error("column '%s' must belong to table '%s'" % (column.display, table.name),
                         column.position)
        return replace(column, qualifier=None, binding=table.binding)

    def resolve_mutation(self, statement):
        self.scope = Scope((statement.table,))
        table = self.scope.tables[0]
        if isinstance(statement, InsertStmt):
            columns = statement.columns
            if columns is None and self.info.has_table(table.name):
                columns = tuple(ColumnRef(None, name, statement.position)
                                for name in self.info.columns(table.name)
                                if name != KEY_COLUMN)
            if columns is not None:
                columns = tuple(self.target_column(c, table) for c in columns)
            return replace(statement, table=table, columns=columns)
        where = self.condition(statement.where)
        if isinstance(statement, UpdateStmt):
            assignments = tuple(Assignment(self.target_column(a.column, table),
                                           self.value(a.value))
                                for a in statement.assignments)
            return replace(statement, table=table, assignments=assignments, where=where)
        return replace(statement, table=table, where=where)


def resolve_names(statement, info):
    """
    Runs the namer over `statement`, raising AnalysisError(Namer) on failure.
    """
    return Namer(info).resolve(statement)
