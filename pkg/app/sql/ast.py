"""
Syntax tree of the extended SQL dialect.

The same node classes serve every compiler phase. The parser fills in the
syntactic fields; the namer fills `binding` on column references, `number` on
table references and the resolved operands of `Satisfies`; the typer fills
`sql_type` on value expressions and `nullable` on placeholders. Positions never
take part in equality.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Tuple, Union

from app.db.values import SQLType, SQLValue
from .tokens import Position

_NOWHERE = Position(0, 0)


class CmpOp(Enum):
    """ Comparison operators. """
    EQ = "="
    NE = "<>"
    LT = "<"
    LE = "<="
    GT = ">"
    GE = ">="


class Quantifier(Enum):
    """ Select quantifier. """
    ALL = "All"
    DISTINCT = "Distinct"


@dataclass(frozen=True)
class TableBinding:
    """ A resolved table reference: the table and its reference number. """
    table: str
    number: int

    def __str__(self):
        return "%s#%d" % (self.table, self.number)


@dataclass(frozen=True)
class ColumnRef:
    """ A column, optionally qualified by a pseudonym or table name. """
    qualifier: Optional[str]
    name: str
    position: Position = field(default=_NOWHERE, compare=False)
    binding: Optional[TableBinding] = None
    sql_type: Optional[SQLType] = None

    @property
    def display(self):
        """ The column as written. """
        return "%s.%s" % (self.qualifier, self.name) if self.qualifier else self.name


@dataclass(frozen=True)
class Const:
    """ A literal value. """
    value: SQLValue
    position: Position = field(default=_NOWHERE, compare=False)
    sql_type: Optional[SQLType] = None


@dataclass(frozen=True)
class Placeholder:
    """ A named parameter `{name}` bound at execution time. """
    name: str
    position: Position = field(default=_NOWHERE, compare=False)
    sql_type: Optional[SQLType] = None
    nullable: bool = False


ValExpr = Union[ColumnRef, Const, Placeholder]


@dataclass(frozen=True)
class Star:
    """ The `*` projection. """
    position: Position = field(default=_NOWHERE, compare=False)


@dataclass(frozen=True)
class Cmp:
    """ A binary comparison. """
    op: CmpOp
    lhs: ValExpr
    rhs: ValExpr
    position: Position = field(default=_NOWHERE, compare=False)


@dataclass(frozen=True)
class Between:
    """ `subject Between lo And hi`. """
    subject: ValExpr
    low: ValExpr
    high: ValExpr
    position: Position = field(default=_NOWHERE, compare=False)


@dataclass(frozen=True)
class IsNull:
    """ `column Is Null`, or `Is Not Null` when negated. """
    column: ColumnRef
    negated: bool = False
    position: Position = field(default=_NOWHERE, compare=False)


@dataclass(frozen=True)
class Satisfies:
    """ `Satisfies left relationship right`. """
    left: str
    relationship: str
    right: str
    position: Position = field(default=_NOWHERE, compare=False)
    left_binding: Optional[TableBinding] = None
    right_binding: Optional[TableBinding] = None


@dataclass(frozen=True)
class And:
    """ Conjunction of two or more conditions. """
    items: Tuple["CondExpr", ...]
    position: Position = field(default=_NOWHERE, compare=False)


@dataclass(frozen=True)
class Or:
    """ Disjunction of two or more conditions. """
    items: Tuple["CondExpr", ...]
    position: Position = field(default=_NOWHERE, compare=False)


@dataclass(frozen=True)
class Not:
    """ Negated condition. """
    inner: "CondExpr"
    position: Position = field(default=_NOWHERE, compare=False)


CondExpr = Union[Cmp, Between, IsNull, Satisfies, And, Or, Not]


@dataclass(frozen=True)
class TableRef:
    """ A table in a From list or the target of a mutation. """
    name: str
    alias: Optional[str] = None
    position: Position = field(default=_NOWHERE, compare=False)
    number: Optional[int] = None

    @property
    def binding(self):
        """ The resolved TableBinding (after naming). """
        return TableBinding(self.name, self.number)


@dataclass(frozen=True)
class OrderItem:
    """ An Order By entry. """
    column: ColumnRef
    descending: bool = False


@dataclass(frozen=True)
class SelectStmt:
    """ A query. """
    quantifier: Quantifier
    projection: Tuple[Union[ColumnRef, Star], ...]
    tables: Tuple[TableRef, ...]
    where: Optional[CondExpr] = None
    group_by: Tuple[ColumnRef, ...] = ()
    order_by: Tuple[OrderItem, ...] = ()
    limit: Optional[int] = None
    position: Position = field(default=_NOWHERE, compare=False)


@dataclass(frozen=True)
class InsertStmt:
    """ An insertion; `columns` is None when the column list was omitted. """
    table: TableRef
    columns: Optional[Tuple[ColumnRef, ...]]
    rows: Tuple[Tuple[ValExpr, ...], ...]
    position: Position = field(default=_NOWHERE, compare=False)


@dataclass(frozen=True)
class Assignment:
    """ `column = value` in an Update. """
    column: ColumnRef
    value: ValExpr


@dataclass(frozen=True)
class UpdateStmt:
    """ An update. """
    table: TableRef
    assignments: Tuple[Assignment, ...]
    where: Optional[CondExpr] = None
    position: Position = field(default=_NOWHERE, compare=False)


@dataclass(frozen=True)
class DeleteStmt:
    """ A deletion. """
    table: TableRef
    where: Optional[CondExpr] = None
    position: Position = field(default=_NOWHERE, compare=False)


Statement = Union[SelectStmt, InsertStmt, UpdateStmt, DeleteStmt]


def table_refs(statement):
    """ The table references of a statement, in order. """
    if isinstance(statement, SelectStmt):
        return statement.tables
    return (statement.table,)


def walk_condition(cond):
    """
    Yields every condition node of `cond` in pre-order.
    """
    if cond is None:
        return
    yield cond
    if isinstance(cond, (And, Or)):
        for item in cond.items:
            for node in walk_condition(item):
                yield node
    elif isinstance(cond, Not):
        for node in walk_condition(cond.inner):
            yield node


def condition_values(cond):
    """
    Yields the value expressions directly under a comparison-like node.
    """
    if isinstance(cond, Cmp):
        return (cond.lhs, cond.rhs)
    if isinstance(cond, Between):
        return (cond.subject, cond.low, cond.high)
    if isinstance(cond, IsNull):
        return (cond.column,)
    return ()


def map_condition(cond, on_value, on_satisfies=None):
    """
    Rebuilds `cond` with every value expression replaced by on_value(expr) and,
    if given, every Satisfies node replaced by on_satisfies(node).
    """
    if cond is None:
        return None
    if isinstance(cond, Cmp):
        return replace(cond, lhs=on_value(cond.lhs), rhs=on_value(cond.rhs))
    if isinstance(cond, Between):
        return replace(cond, subject=on_value(cond.subject), low=on_value(cond.low),
                       high=on_value(cond.high))
    if isinstance(cond, IsNull):
        return replace(cond, column=on_value(cond.column))
    if isinstance(cond, Satisfies):
        return on_satisfies(cond) if on_satisfies is not None else cond
    if isinstance(cond, Not):
        return replace(cond, inner=map_condition(cond.inner, on_value, on_satisfies))
    return replace(cond, items=tuple(map_condition(item, on_value, on_satisfies)
                                     for item in cond.items))
