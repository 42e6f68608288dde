"""
Translates typed statements into query plans.

`Satisfies` is desugared here: a 1:1 or 1:n relationship becomes an equality
between the referenced entity's key and the foreign-key column; an n:m
relationship cross-joins its join table under a fresh reference number and
links it to both endpoints.
"""
from __future__ import annotations

from app.erd.model import KEY_COLUMN, RelKind
from app.sql import ast
from . import plan as p


def typed_column(ref):
    """ The TypedColumn of a bound, typed ColumnRef. """
    return p.TypedColumn(ref.binding.table, ref.binding.number, ref.name, ref.sql_type)


def translate_value(expr):
    """ Turns a typed value expression into a plan value. """
    if isinstance(expr, ast.ColumnRef):
        return p.ColVal(typed_column(expr))
    if isinstance(expr, ast.Placeholder):
        return p.ParamVal(expr.name, expr.sql_type, expr.nullable)
    return p.ConstVal(expr.value, expr.sql_type)


_COMPARE_OPS = {
    ast.CmpOp.EQ: p.CompareOp.EQUAL,
    ast.CmpOp.NE: p.CompareOp.NOT_EQUAL,
    ast.CmpOp.LT: p.CompareOp.LESS,
    ast.CmpOp.LE: p.CompareOp.LESS_EQ,
    ast.CmpOp.GT: p.CompareOp.GREATER,
    ast.CmpOp.GE: p.CompareOp.GREATER_EQ,
}


def _key(info, table, number):
    return p.TypedColumn(table, number, KEY_COLUMN, info.column_type(table, KEY_COLUMN))


def _foreign_key(info, table, number, column):
    return p.TypedColumn(table, number, column, info.column_type(table, column))


def desugar_satisfies(node, info, tables):
    """
    Returns (constraint, amended table clause) for a resolved Satisfies node.
    """
    relation = info.relation(node.relationship)
    left, right = node.left_binding, node.right_binding
    if relation.kind == RelKind.MANY_TO_MANY:
        number = tables.next_number(relation.fk_table)
        column_a, column_b = relation.fk_columns
        constraint = p.And((
            p.Compare(p.CompareOp.EQUAL,
                      p.ColVal(_key(info, left.table, left.number)),
                      p.ColVal(_foreign_key(info, relation.fk_table, number, column_a))),
            p.Compare(p.CompareOp.EQUAL,
                      p.ColVal(_key(info, right.table, right.number)),
                      p.ColVal(_foreign_key(info, relation.fk_table, number, column_b)))))
        return constraint, tables.cross_join(relation.fk_table, number)
    holder, referenced = (left, right) if relation.fk_end == "A" else (right, left)
    constraint = p.Compare(
        p.CompareOp.EQUAL,
        p.ColVal(_key(info, referenced.table, referenced.number)),
        p.ColVal(_foreign_key(info, holder.table, holder.number, relation.fk_columns[0])))
    return constraint, tables


def _flatten(kind, items):
    flat = []
    for item in items:
        if isinstance(item, kind):
            flat.extend(item.items)
        else:
            flat.append(item)
    return tuple(flat)


class Translator(object):
    """
    Builds the plan of one typed statement; the table clause grows as
    `Satisfies` conditions introduce join tables.
    """

    def __init__(self, info):
        self.info = info
        self.tables = None

    def constraint(self, cond):
        if cond is None:
            return p.TruePredicate()
        if isinstance(cond, ast.Cmp):
            return p.Compare(_COMPARE_OPS[cond.op], translate_value(cond.lhs),
                             translate_value(cond.rhs))
        if isinstance(cond, ast.Between):
            return p.Between(translate_value(cond.subject), translate_value(cond.low),
                             translate_value(cond.high))
        if isinstance(cond, ast.IsNull):
            column = typed_column(cond.column)
            return p.IsNotNull(column) if cond.negated else p.IsNull(column)
        if isinstance(cond, ast.Satisfies):
            constraint, self.tables = desugar_satisfies(cond, self.info, self.tables)
            return constraint
        if isinstance(cond, ast.Not):
            return p.Not(self.constraint(cond.inner))
        items = [self.constraint(item) for item in cond.items]
        if isinstance(cond, ast.And):
            return p.And(_flatten(p.And, items))
        return p.Or(_flatten(p.Or, items))

    def projection(self, statement):
        columns = []
        for item in statement.projection:
            if isinstance(item, ast.Star):
                for table in statement.tables:
                    for name in self.info.columns(table.name):
                        columns.append(p.TypedColumn(table.name, table.number, name,
                                                     self.info.column_type(table.name, name)))
            else:
                columns.append(typed_column(item))
        return tuple(columns)

    def select(self, statement):
        head = statement.tables[0]
        self.tables = p.TableClause((head.name, head.number))
        for table in statement.tables[1:]:
            self.tables = self.tables.cross_join(table.name, table.number)
        criteria = self.constraint(statement.where)
        return p.SelectPlan(
            statement.quantifier, self.projection(statement), self.tables, criteria,
            tuple(typed_column(c) for c in statement.group_by),
            tuple(p.OrderSpec(typed_column(item.column), item.descending)
                  for item in statement.order_by),
            statement.limit)

    def translate(self, statement):
        """
        Returns the QueryPlan of `statement`.
        """
        if isinstance(statement, ast.SelectStmt):
            return self.select(statement)
        table = statement.table.name
        if isinstance(statement, ast.InsertStmt):
            return p.InsertPlan(table, tuple(typed_column(c) for c in statement.columns),
                                tuple(tuple(translate_value(v) for v in row)
                                      for row in statement.rows))
        if isinstance(statement, ast.UpdateStmt):
            return p.UpdatePlan(table,
                                tuple((typed_column(a.column), translate_value(a.value))
                                      for a in statement.assignments),
                                self.constraint(statement.where))
        return p.DeletePlan(table, self.constraint(statement.where))


def translate(typed, info):
    """
    Translates a typed statement into its QueryPlan.
    """
    return Translator(info).translate(typed)
