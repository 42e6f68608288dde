"""
Entity descriptions: the typed bridge between entity values and table rows.

Entity values are dictionaries keyed by column name holding plain payloads
(str, int, float, bool, one-character str, epoch seconds) or None.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .errors import conversion_failed
from .values import SQLType, SQLValue


@dataclass(frozen=True)
class EntityDescription:
    """
    Name, column names and column types of an entity table, with row
    conversion in both directions.
    """
    entity_name: str
    columns: Tuple[str, ...]
    column_types: Tuple[SQLType, ...]

    @classmethod
    def from_info(cls, info, table):
        """ The description of `table` as recorded in a ParserInfo. """
        columns = info.columns(table)
        return cls(table, tuple(columns),
                   tuple(info.column_type(table, column) for column in columns))

    def to_row(self, entity):
        """
        Encodes an entity value as one SQLValue per column. Missing columns
        are null.
        """
        row = []
        for column, sql_type in zip(self.columns, self.column_types):
            payload = entity.get(column)
            if payload is None:
                row.append(SQLValue.null())
                continue
            try:
                if sql_type == SQLType.FLOAT:
                    row.append(SQLValue.real(payload))
                else:
                    row.append(SQLValue(sql_type, payload))
            except ValueError:
                raise conversion_failed("%s.%s expects %s, got %r"
                                        % (self.entity_name, column, sql_type, payload))
        return row

    def from_row(self, row):
        """
        Decodes one row of SQLValues into an entity value.
        """
        if len(row) != len(self.columns):
            raise conversion_failed("%s rows have %d columns, got %d"
                                    % (self.entity_name, len(self.columns), len(row)))
        entity = {}
        for column, sql_type, value in zip(self.columns, self.column_types, row):
            if not value.matches(sql_type, nullable=True):
                raise conversion_failed("%s.%s expects %s, got %s"
                                        % (self.entity_name, column, sql_type, value.sql_type))
            entity[column] = value.payload
        return entity
