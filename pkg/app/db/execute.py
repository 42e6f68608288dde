"""
Execution of rendered statements and query plans, and the entity operations
built on them.
"""
from __future__ import annotations

import logging

from app.erd.model import KEY_COLUMN
from app.sql.ast import Quantifier
from app.sql.translate import plan as p
from app.sql.translate.render import render
from .errors import conversion_failed, query_failed
from .values import SQLValue

logger = logging.getLogger(__name__)


def count_holes(sql):
    """
    Counts the `?` holes of `sql` outside quoted literals, quoted identifiers
    and `--` line comments.
    """
    count = 0
    quote = None
    in_comment = False
    for index, char in enumerate(sql):
        if in_comment:
            in_comment = char != "\n"
        elif quote is not None:
            if char == quote:
                quote = None
        elif char in "'\"":
            quote = char
        elif char == "-" and sql.startswith("--", index):
            in_comment = True
        elif char == "?":
            count += 1
    return count


def _check_holes(sql, values):
    holes = count_holes(sql)
    if holes != len(values):
        raise query_failed("statement has %d hole(s) but %d value(s) were given"
                           % (holes, len(values)))


def select_typed(connection, sql, values, result_types):
    """
    Runs a query with `values` bound to its holes and decodes every column of
    every row as the corresponding entry of `result_types`.
    """
    _check_holes(sql, values)
    cursor = connection.execute(sql, [value.to_db() for value in values])
    rows = []
    for raw in cursor.fetchall():
        if len(raw) != len(result_types):
            raise query_failed("query returns %d column(s), %d type(s) were given"
                               % (len(raw), len(result_types)))
        rows.append([SQLValue.from_db(item, sql_type)
                     for item, sql_type in zip(raw, result_types)])
    logger.debug("query returned %d row(s)", len(rows))
    return rows


def execute_typed(connection, sql, values):
    """
    Runs an Insert, Update or Delete and returns the cursor.
    """
    _check_holes(sql, values)
    return connection.execute(sql, [value.to_db() for value in values])


def bind_holes(rendered, bindings):
    """
    The values for the holes of a rendered plan: constants from the plan,
    parameters from `bindings` (name to SQLValue). Raises ConversionFailed for
    a missing or ill-typed binding.
    """
    values = []
    for hole in rendered.holes:
        if not hole.is_parameter:
            values.append(hole.value)
            continue
        if hole.name not in bindings:
            raise conversion_failed("missing parameter: %s" % hole.name)
        value = bindings[hole.name]
        if not value.matches(hole.sql_type, hole.nullable):
            found = "null" if value.is_null else str(value.sql_type)
            raise conversion_failed("parameter %s expects %s, got %s"
                                    % (hole.name, hole.sql_type, found))
        values.append(value)
    return values


def run_plan(connection, plan, bindings=None):
    """
    Renders and executes `plan`. A Select returns its typed rows, a mutation
    its affected-row count. Bindings are checked before the database is used.
    """
    rendered = render(plan)
    values = bind_holes(rendered, bindings or {})
    if isinstance(plan, p.SelectPlan):
        return select_typed(connection, rendered.sql, values, plan.result_types)
    return execute_typed(connection, rendered.sql, values).rowcount


def _entity_columns(description, include_key=True):
    return tuple(p.TypedColumn(description.entity_name, 0, name, sql_type)
                 for name, sql_type in zip(description.columns, description.column_types)
                 if include_key or name != KEY_COLUMN)


def _key_equals(description, key):
    column = p.TypedColumn(description.entity_name, 0, KEY_COLUMN,
                           description.column_types[description.columns.index(KEY_COLUMN)])
    return p.Compare(p.CompareOp.EQUAL, p.ColVal(column),
                     p.ConstVal(SQLValue.integer(key), column.sql_type))


def get_entries(connection, description, quantifier=Quantifier.ALL, criteria=None,
                order_by=(), limit=None):
    """
    Returns the entities of `description` satisfying `criteria` (a plan
    Constraint over the entity's own columns), ordered and limited.
    `order_by` holds OrderSpec items or (column name, descending) pairs.
    """
    columns = _entity_columns(description)
    by_name = dict((column.column, column) for column in columns)
    ordering = tuple(item if isinstance(item, p.OrderSpec)
                     else p.OrderSpec(by_name[item[0]], item[1]) for item in order_by)
    plan = p.SelectPlan(quantifier, columns, p.TableClause((description.entity_name, 0)),
                        criteria or p.TruePredicate(), (), ordering, limit)
    return [description.from_row(row) for row in run_plan(connection, plan)]


def insert_entity(connection, description, entity):
    """
    Inserts `entity` (its Key, if present, is ignored) and returns the key
    assigned by the database.
    """
    columns = _entity_columns(description, include_key=False)
    row = description.to_row(entity)
    values = tuple(p.ConstVal(value, sql_type)
                   for name, sql_type, value in zip(description.columns,
                                                    description.column_types, row)
                   if name != KEY_COLUMN)
    rendered = render(p.InsertPlan(description.entity_name, columns, (values,)))
    cursor = execute_typed(connection, rendered.sql, bind_holes(rendered, {}))
    return cursor.lastrowid


def update_entity(connection, description, entity):
    """
    Writes every column of `entity` to the row with its Key; returns the
    number of rows changed.
    """
    if entity.get(KEY_COLUMN) is None:
        raise conversion_failed("%s entity has no %s" % (description.entity_name, KEY_COLUMN))
    row = description.to_row(entity)
    assignments = tuple((column, p.ConstVal(value, column.sql_type))
                        for column, value in zip(_entity_columns(description), row)
                        if column.column != KEY_COLUMN)
    plan = p.UpdatePlan(description.entity_name, assignments,
                        _key_equals(description, entity[KEY_COLUMN]))
    return run_plan(connection, plan)


def delete_entity(connection, description, key):
    """
    Deletes the row with `key`; returns the number of rows removed.
    """
    return run_plan(connection, p.DeletePlan(description.entity_name,
                                             _key_equals(description, key)))
