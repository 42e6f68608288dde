"""
Typed query plans: the executable form of a checked statement.

A plan never contains source text. Every value is a column, a typed constant
or a named parameter, and every column carries its table number and type.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple, Union

from app.db.values import SQLType, SQLValue
from app.sql.ast import Quantifier


@dataclass(frozen=True)
class TypedColumn:
    """ Column `column` of reference number `number` of `table`. """
    table: str
    number: int
    column: str
    sql_type: SQLType

    @property
    def table_alias(self):
        """ The name the table reference is addressed by in rendered SQL. """
        return self.table if self.number == 0 else "%s#%d" % (self.table, self.number)

    def __str__(self):
        return "%s#%d.%s" % (self.table, self.number, self.column)


@dataclass(frozen=True)
class ConstVal:
    """ A constant; `sql_type` fixes the type of a null constant. """
    value: SQLValue
    sql_type: SQLType


@dataclass(frozen=True)
class ColVal:
    """ A column value. """
    column: TypedColumn

    @property
    def sql_type(self):
        return self.column.sql_type


@dataclass(frozen=True)
class ParamVal:
    """ A named parameter bound at execution time. """
    name: str
    sql_type: SQLType
    nullable: bool = False


Value = Union[ConstVal, ColVal, ParamVal]


class CompareOp(Enum):
    """ Comparison constraints and their SQL operators. """
    EQUAL = "=="
    NOT_EQUAL = "<>"
    LESS = "<"
    LESS_EQ = "<="
    GREATER = ">"
    GREATER_EQ = ">="

    @property
    def label(self):
        """ CamelCase name used in plan descriptions. """
        return "".join(part.capitalize() for part in self.name.split("_"))


@dataclass(frozen=True)
class Compare:
    """ `lhs op rhs`. """
    op: CompareOp
    lhs: Value
    rhs: Value


@dataclass(frozen=True)
class Between:
    """ `subject between low and high`, bounds inclusive. """
    subject: Value
    low: Value
    high: Value


@dataclass(frozen=True)
class IsNull:
    column: TypedColumn


@dataclass(frozen=True)
class IsNotNull:
    column: TypedColumn


@dataclass(frozen=True)
class And:
    items: Tuple["Constraint", ...]


@dataclass(frozen=True)
class Or:
    items: Tuple["Constraint", ...]


@dataclass(frozen=True)
class Not:
    inner: "Constraint"


@dataclass(frozen=True)
class TruePredicate:
    """ The constraint every row satisfies. """


Constraint = Union[Compare, Between, IsNull, IsNotNull, And, Or, Not, TruePredicate]


class JoinKind(Enum):
    CROSS = "cross join"


@dataclass(frozen=True)
class TableClause:
    """ The head table reference followed by its join chain. """
    head: Tuple[str, int]
    joins: Tuple[Tuple[JoinKind, str, int], ...] = ()

    @property
    def references(self):
        """ Every (table, number) pair in clause order. """
        return (self.head,) + tuple((table, number) for _, table, number in self.joins)

    def next_number(self, table):
        """ The first unused reference number of `table`. """
        return sum(1 for name, _ in self.references if name == table)

    def cross_join(self, table, number):
        return TableClause(self.head, self.joins + ((JoinKind.CROSS, table, number),))


@dataclass(frozen=True)
class OrderSpec:
    column: TypedColumn
    descending: bool = False


@dataclass(frozen=True)
class SelectPlan:
    quantifier: Quantifier
    projection: Tuple[TypedColumn, ...]
    tables: TableClause
    criteria: Constraint
    group_by: Tuple[TypedColumn, ...] = ()
    order_by: Tuple[OrderSpec, ...] = ()
    limit: Optional[int] = None

    @property
    def result_types(self):
        """ The SQLType of each result column. """
        return [column.sql_type for column in self.projection]


@dataclass(frozen=True)
class InsertPlan:
    table: str
    columns: Tuple[TypedColumn, ...]
    rows: Tuple[Tuple[Value, ...], ...]


@dataclass(frozen=True)
class UpdatePlan:
    table: str
    assignments: Tuple[Tuple[TypedColumn, Value], ...]
    criteria: Constraint


@dataclass(frozen=True)
class DeletePlan:
    table: str
    criteria: Constraint


QueryPlan = Union[SelectPlan, InsertPlan, UpdatePlan, DeletePlan]


def describe_value(value):
    """ Debug form of a plan value. """
    if isinstance(value, ColVal):
        return str(value.column)
    if isinstance(value, ParamVal):
        return "{%s} : %s%s" % (value.name, value.sql_type,
                                " (nullable)" if value.nullable else "")
    return "%s : %s" % (value.value.display(), value.sql_type)


def _describe_constraint(constraint, depth, lines):
    indent = "  " * depth
    if isinstance(constraint, Compare):
        lines.append("%s%s %s, %s" % (indent, constraint.op.label,
                                      describe_value(constraint.lhs),
                                      describe_value(constraint.rhs)))
    elif isinstance(constraint, Between):
        lines.append("%sBetween %s, %s, %s" % (indent, describe_value(constraint.subject),
                                               describe_value(constraint.low),
                                               describe_value(constraint.high)))
    elif isinstance(constraint, (IsNull, IsNotNull)):
        lines.append("%s%s %s" % (indent, type(constraint).__name__, constraint.column))
    elif isinstance(constraint, Not):
        lines.append(indent + "Not")
        _describe_constraint(constraint.inner, depth + 1, lines)
    elif isinstance(constraint, (And, Or)):
        lines.append(indent + type(constraint).__name__)
        for item in constraint.items:
            _describe_constraint(item, depth + 1, lines)
    else:
        lines.append(indent + "TruePredicate")


def _describe_tables(clause):
    text = "%s#%d" % clause.head
    for kind, table, number in clause.joins:
        text += " %s %s#%d" % (kind.value, table, number)
    return text


def describe_plan(plan):
    """
    Renders the stable, human-readable form of a plan, one item per line.
    """
    lines = []
    if isinstance(plan, SelectPlan):
        lines.append("SelectPlan %s" % plan.quantifier.value)
        lines.append("  projection:")
        lines.extend("    %s : %s" % (column, column.sql_type) for column in plan.projection)
        lines.append("  tables: %s" % _describe_tables(plan.tables))
        lines.append("  criteria:")
        _describe_constraint(plan.criteria, 2, lines)
        if plan.group_by:
            lines.append("  group by: %s" % ", ".join(str(c) for c in plan.group_by))
        if plan.order_by:
            lines.append("  order by: %s" % ", ".join(
                "%s %s" % (item.column, "Desc" if item.descending else "Asc")
                for item in plan.order_by))
        if plan.limit is not None:
            lines.append("  limit: %d" % plan.limit)
    elif isinstance(plan, InsertPlan):
        lines.append("InsertPlan %s" % plan.table)
        lines.append("  columns: %s" % ", ".join(c.column for c in plan.columns))
        for row in plan.rows:
            lines.append("  row: %s" % ", ".join(describe_value(v) for v in row))
    elif isinstance(plan, UpdatePlan):
        lines.append("UpdatePlan %s" % plan.table)
        for column, value in plan.assignments:
            lines.append("  set %s = %s" % (column.column, describe_value(value)))
        lines.append("  criteria:")
        _describe_constraint(plan.criteria, 2, lines)
    else:
        lines.append("DeletePlan %s" % plan.table)
        lines.append("  criteria:")
        _describe_constraint(plan.criteria, 2, lines)
    return "\n".join(lines)
