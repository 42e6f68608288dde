"""
The typed value universe exchanged with the database.

SQLite has no boolean or date storage class, so Bool travels as INTEGER 0/1 and
Date as INTEGER seconds since the epoch (UTC). The same encodings are used by the
DDL emitted for ER models.
"""
from __future__ import annotations

import datetime
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .errors import conversion_failed


class SQLType(Enum):
    """
    Column and value types known to the compiler and the runtime.
    """
    STRING = "String"
    INT = "Int"
    FLOAT = "Float"
    CHAR = "Char"
    BOOL = "Bool"
    DATE = "Date"

    def __str__(self):
        return self.value

    @property
    def storage_class(self):
        """
        Returns the SQLite column type used to store values of this type.
        """
        return _STORAGE_CLASSES[self]

    @property
    def is_numeric(self):
        """ True for types with a total numeric order. """
        return self in (SQLType.INT, SQLType.FLOAT, SQLType.DATE)

    @classmethod
    def parse(cls, name):
        """
        Returns the type spelled `name` (e.g. "Int"), raising ValueError otherwise.
        """
        for sql_type in cls:
            if sql_type.value == name:
                return sql_type
        raise ValueError("unknown type '%s'" % name)


_STORAGE_CLASSES = {
    SQLType.STRING: "TEXT",
    SQLType.INT: "INTEGER",
    SQLType.FLOAT: "REAL",
    SQLType.CHAR: "TEXT",
    SQLType.BOOL: "INTEGER",
    SQLType.DATE: "INTEGER",
}


def _is_int(payload):
    return isinstance(payload, int) and not isinstance(payload, bool)


_PAYLOAD_CHECKS = {
    SQLType.STRING: lambda p: isinstance(p, str),
    SQLType.INT: _is_int,
    SQLType.FLOAT: lambda p: isinstance(p, float),
    SQLType.CHAR: lambda p: isinstance(p, str) and len(p) == 1,
    SQLType.BOOL: lambda p: isinstance(p, bool),
    SQLType.DATE: _is_int,
}


@dataclass(frozen=True)
class SQLValue:
    """
    A tagged database value. `sql_type` is None for the null value.
    """
    sql_type: Optional[SQLType]
    payload: object = None

    def __post_init__(self):
        if self.sql_type is None:
            if self.payload is not None:
                raise ValueError("null carries no payload")
        elif not _PAYLOAD_CHECKS[self.sql_type](self.payload):
            raise ValueError("%r is not a valid %s payload" % (self.payload, self.sql_type))

    @classmethod
    def string(cls, text):
        """ Builds a String value. """
        return cls(SQLType.STRING, text)

    @classmethod
    def integer(cls, number):
        """ Builds an Int value. """
        return cls(SQLType.INT, number)

    @classmethod
    def real(cls, number):
        """ Builds a Float value; integral arguments are converted. """
        if _is_int(number):
            number = float(number)
        return cls(SQLType.FLOAT, number)

    @classmethod
    def char(cls, character):
        """ Builds a Char value from a one-character string. """
        return cls(SQLType.CHAR, character)

    @classmethod
    def boolean(cls, flag):
        """ Builds a Bool value. """
        return cls(SQLType.BOOL, flag)

    @classmethod
    def date(cls, moment):
        """
        Builds a Date value from epoch seconds or a datetime.
        Naive datetimes are taken as UTC.
        """
        if isinstance(moment, datetime.datetime):
            if moment.tzinfo is None:
                moment = moment.replace(tzinfo=datetime.timezone.utc)
            moment = int(moment.timestamp())
        return cls(SQLType.DATE, moment)

    @classmethod
    def null(cls):
        """ The null value. """
        return cls(None)

    @property
    def is_null(self):
        """ True for the null value. """
        return self.sql_type is None

    def matches(self, sql_type, nullable=False):
        """
        Returns True if this value may fill a slot of `sql_type`.
        """
        if self.is_null:
            return nullable
        return self.sql_type == sql_type

    def to_db(self):
        """
        Encodes the value for parameter binding.
        """
        if self.sql_type == SQLType.BOOL:
            return 1 if self.payload else 0
        return self.payload

    @classmethod
    def from_db(cls, raw, sql_type):
        """
        Decodes a raw engine value as `sql_type`, raising a ConversionFailed
        DBError when the stored value does not fit.
        """
        if raw is None:
            return cls.null()
        if sql_type == SQLType.FLOAT and _is_int(raw):
            raw = float(raw)
        elif sql_type == SQLType.BOOL and raw in (0, 1) and _is_int(raw):
            raw = bool(raw)
        try:
            return cls(sql_type, raw)
        except ValueError:
            raise conversion_failed("cannot read %r as %s" % (raw, sql_type))

    @classmethod
    def coerce(cls, text, sql_type, null_literal="null"):
        """
        Parses command-line text as a value of `sql_type`.
        Raises ValueError with a readable message when the text does not fit.
        """
        if text == null_literal:
            return cls.null()
        if sql_type == SQLType.STRING:
            return cls.string(text)
        if sql_type == SQLType.INT:
            return cls.integer(int(text))
        if sql_type == SQLType.FLOAT:
            return cls.real(float(text))
        if sql_type == SQLType.CHAR:
            if len(text) != 1:
                raise ValueError("'%s' is not a single character" % text)
            return cls.char(text)
        if sql_type == SQLType.BOOL:
            lowered = text.lower()
            if lowered in ("true", "1"):
                return cls.boolean(True)
            if lowered in ("false", "0"):
                return cls.boolean(False)
            raise ValueError("'%s' is not a boolean" % text)
        try:
            return cls.date(int(text))
        except ValueError:
            return cls.date(datetime.datetime.fromisoformat(text))

    def display(self):
        """
        Renders the value for terminal output.
        """
        if self.is_null:
            return "null"
        if self.sql_type == SQLType.BOOL:
            return "true" if self.payload else "false"
        if self.sql_type == SQLType.DATE:
            moment = datetime.datetime.fromtimestamp(self.payload, tz=datetime.timezone.utc)
            return moment.isoformat()
        return str(self.payload)

    def __str__(self):
        if self.sql_type == SQLType.STRING:
            return repr(self.payload)
        return self.display()
