"""
Renders query plans as SQLite text with `?` holes.

No value ever appears in the text: constants, parameters and the limit are all
holes, listed in the order their `?` occurs.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from app.db.values import SQLType, SQLValue
from app.sql.ast import Quantifier
from . import plan as p


@dataclass(frozen=True)
class Hole:
    """
    One `?` of a rendered statement: a named parameter, or a constant whose
    value is bound from the plan.
    """
    sql_type: SQLType
    name: Optional[str] = None
    nullable: bool = False
    value: Optional[SQLValue] = None

    @property
    def is_parameter(self):
        return self.name is not None


@dataclass(frozen=True)
class RenderedQuery:
    """ SQL text and its holes in left-to-right order. """
    sql: str
    holes: Tuple[Hole, ...]

    @property
    def parameters(self):
        """ The holes bound by name. """
        return tuple(hole for hole in self.holes if hole.is_parameter)


def quote_table(table):
    return "'%s'" % table


def quote_identifier(name):
    return '"%s"' % name


def render_column(column):
    """ `"Table"."Column"`, or `"Table#k"."Column"` for reference k > 0. """
    return "%s.%s" % (quote_identifier(column.table_alias), quote_identifier(column.column))


def render_table(table, number):
    if number == 0:
        return quote_table(table)
    return "%s as %s" % (quote_table(table), quote_identifier("%s#%d" % (table, number)))


class Renderer(object):
    """
    Accumulates holes while rendering; every method that emits a `?` appends
    the matching hole, so callers must render fragments in text order.
    """

    def __init__(self):
        self.holes = []

    def value(self, value):
        if isinstance(value, p.ColVal):
            return render_column(value.column)
        if isinstance(value, p.ParamVal):
            self.holes.append(Hole(value.sql_type, value.name, value.nullable))
        else:
            self.holes.append(Hole(value.sql_type, value=value.value))
        return "?"

    def constraint(self, constraint):
        if isinstance(constraint, p.Compare):
            lhs = self.value(constraint.lhs)
            rhs = self.value(constraint.rhs)
            return "(%s) %s %s" % (lhs, constraint.op.value, rhs)
        if isinstance(constraint, p.Between):
            subject = self.value(constraint.subject)
            low = self.value(constraint.low)
            high = self.value(constraint.high)
            return "(%s) between %s and %s" % (subject, low, high)
        if isinstance(constraint, p.IsNull):
            return "(%s) is null" % render_column(constraint.column)
        if isinstance(constraint, p.IsNotNull):
            return "(%s) is not null" % render_column(constraint.column)
        if isinstance(constraint, p.Not):
            return "not (%s)" % self.constraint(constraint.inner)
        joiner = " and " if isinstance(constraint, p.And) else " or "
        return joiner.join("(%s)" % self.constraint(item) for item in constraint.items)

    def where(self, criteria):
        if isinstance(criteria, p.TruePredicate):
            return ""
        if isinstance(criteria, (p.And, p.Or)):
            return " where " + self.constraint(criteria)
        return " where (%s)" % self.constraint(criteria)

    def select(self, plan):
        text = "select "
        if plan.quantifier == Quantifier.DISTINCT:
            text += "Distinct "
        text += ", ".join("(%s)" % render_column(c) for c in plan.projection)
        text += " from " + " cross join ".join(render_table(table, number)
                                               for table, number in plan.tables.references)
        text += self.where(plan.criteria)
        if plan.group_by:
            text += " group by " + ", ".join(render_column(c) for c in plan.group_by)
        if plan.order_by:
            text += " order by " + ", ".join(
                "%s %s" % (render_column(item.column), "desc" if item.descending else "asc")
                for item in plan.order_by)
        if plan.limit is not None:
            text += " limit " + self.value(p.ConstVal(SQLValue.integer(plan.limit), SQLType.INT))
        return text + ";"

    def insert(self, plan):
        columns = ", ".join(quote_identifier(c.column) for c in plan.columns)
        rows = ", ".join("(%s)" % ", ".join(self.value(v) for v in row) for row in plan.rows)
        return "insert into %s (%s) values %s;" % (quote_table(plan.table), columns, rows)

    def update(self, plan):
        assignments = ", ".join("%s = %s" % (quote_identifier(column.column), self.value(value))
                                for column, value in plan.assignments)
        text = "update %s set %s" % (quote_table(plan.table), assignments)
        return text + self.where(plan.criteria) + ";"

    def delete(self, plan):
        return "delete from %s%s;" % (quote_table(plan.table), self.where(plan.criteria))


def render(plan):
    """
    Renders `plan`, returning a RenderedQuery.
    """
    renderer = Renderer()
    if isinstance(plan, p.SelectPlan):
        sql = renderer.select(plan)
    elif isinstance(plan, p.InsertPlan):
        sql = renderer.insert(plan)
    elif isinstance(plan, p.UpdatePlan):
        sql = renderer.update(plan)
    else:
        sql = renderer.delete(plan)
    return RenderedQuery(sql, tuple(renderer.holes))
