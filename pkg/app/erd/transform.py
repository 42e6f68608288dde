"""
Turns a validated ER model into a relational schema and emits its DDL.

Every entity becomes a table with an integer surrogate primary key "Key".
A 1:1 or 1:n relationship adds a foreign-key column to the table on the side
whose rows have at most one partner (for 1:1, the end declared second); an n:m
relationship becomes a join table named after the relationship.
"""
from __future__ import annotations

from app.db.values import SQLType
from .model import (KEY_COLUMN, ColumnDef, ForeignKey, KeyStatus,
                    RelationalSchema, RelKind, TableDef)


def classify_relationship(relationship):
    """
    Derives the relationship kind from the two upper bounds.
    """
    one_a = relationship.end_a.cardinality.at_most_one
    one_b = relationship.end_b.cardinality.at_most_one
    if one_a and one_b:
        return RelKind.ONE_TO_ONE
    if one_a or one_b:
        return RelKind.ONE_TO_MANY
    return RelKind.MANY_TO_MANY


def foreign_key_end(relationship):
    """
    Returns "A" or "B": the end whose table holds the foreign key of a 1:1 or
    1:n relationship, or "join" for n:m.
    """
    kind = classify_relationship(relationship)
    if kind == RelKind.MANY_TO_MANY:
        return "join"
    if kind == RelKind.ONE_TO_ONE:
        return "B"
    return "A" if relationship.end_a.cardinality.at_most_one else "B"


def foreign_key_name(referenced_entity, relationship):
    """
    Name of a column referencing `referenced_entity` through `relationship`,
    e.g. "StudentTakingKey".
    """
    return "%s%s%s" % (referenced_entity, relationship.role_name, KEY_COLUMN)


def join_column_names(relationship):
    """
    The two foreign-key column names of an n:m join table, end A first.
    """
    first = foreign_key_name(relationship.end_a.entity, relationship)
    second = foreign_key_name(relationship.end_b.entity, relationship)
    if first == second:
        second += "2"
    return first, second


def foreign_key_placement(relationship):
    """
    Returns (holding table, [foreign-key column names]) for a relationship.
    """
    end = foreign_key_end(relationship)
    if end == "join":
        return relationship.name, list(join_column_names(relationship))
    holder, referenced = _ends(relationship, end)
    return holder.entity, [foreign_key_name(referenced.entity, relationship)]


def _ends(relationship, end):
    if end == "A":
        return relationship.end_a, relationship.end_b
    return relationship.end_b, relationship.end_a


def _key_column():
    return ColumnDef(KEY_COLUMN, SQLType.INT, not_null=True, primary_key=True)


def _attribute_column(attribute):
    is_key = attribute.key == KeyStatus.PRIMARY_KEY
    return ColumnDef(attribute.name, attribute.domain,
                     not_null=is_key or not attribute.nullable,
                     unique=attribute.key != KeyStatus.NO_KEY)


def transform(model):
    """
    Builds the relational schema of a validated model. Entity tables come
    first in model order, followed by one join table per n:m relationship.
    """
    extra_columns = dict((entity.name, []) for entity in model.entities)
    join_tables = []
    for relationship in model.relationships:
        end = foreign_key_end(relationship)
        if end == "join":
            join_tables.append(_join_table(relationship))
            continue
        holder, referenced = _ends(relationship, end)
        extra_columns[holder.entity].append(ColumnDef(
            foreign_key_name(referenced.entity, relationship), SQLType.INT,
            not_null=holder.cardinality.minimum >= 1,
            unique=classify_relationship(relationship) == RelKind.ONE_TO_ONE,
            foreign_key=ForeignKey(referenced.entity)))

    tables = []
    for entity in model.entities:
        columns = [_key_column()]
        columns.extend(_attribute_column(attribute) for attribute in entity.attributes)
        columns.extend(extra_columns[entity.name])
        tables.append(TableDef(entity.name, tuple(columns)))
    tables.extend(join_tables)
    return RelationalSchema(tuple(tables))


def _join_table(relationship):
    first, second = join_column_names(relationship)
    columns = (
        _key_column(),
        ColumnDef(first, SQLType.INT, not_null=True,
                  foreign_key=ForeignKey(relationship.end_a.entity)),
        ColumnDef(second, SQLType.INT, not_null=True,
                  foreign_key=ForeignKey(relationship.end_b.entity)),
    )
    return TableDef(relationship.name, columns, ((first, second),))


def _quote(name):
    return '"%s"' % name


def _column_ddl(column):
    parts = [_quote(column.name), column.sql_type.storage_class]
    if column.primary_key:
        parts.append("PRIMARY KEY")
    else:
        if column.not_null:
            parts.append("NOT NULL")
        if column.unique:
            parts.append("UNIQUE")
    if column.sql_type == SQLType.BOOL:
        parts.append("CHECK (%s IN (0, 1))" % _quote(column.name))
    elif column.sql_type == SQLType.CHAR:
        parts.append("CHECK (length(%s) = 1)" % _quote(column.name))
    return " ".join(parts)


def emit_ddl(schema):
    """
    Renders CREATE TABLE statements for every table of the schema.
    The output is deterministic; an empty schema yields an empty string.
    """
    statements = []
    for table in schema.tables:
        lines = [_column_ddl(column) for column in table.columns]
        for group in table.unique_together:
            lines.append("UNIQUE (%s)" % ", ".join(_quote(name) for name in group))
        for column in table.columns:
            if column.foreign_key is not None:
                lines.append("FOREIGN KEY (%s) REFERENCES %s (%s)" % (
                    _quote(column.name), _quote(column.foreign_key.table),
                    _quote(column.foreign_key.column)))
        body = ",\n".join("  " + line for line in lines)
        statements.append("CREATE TABLE %s (\n%s\n);\n" % (_quote(table.name), body))
    return "\n".join(statements)
