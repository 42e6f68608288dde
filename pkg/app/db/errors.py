"""
Error type shared by every database operation, and the single place where
engine exceptions are translated into it.
"""
from __future__ import annotations

import sqlite3
from enum import Enum


class DBErrorKind(Enum):
    """
    What went wrong while talking to the database.
    """
    CONNECTION_FAILED = "ConnectionFailed"
    QUERY_FAILED = "QueryFailed"
    LOCKED_DB = "LockedDB"
    CONVERSION_FAILED = "ConversionFailed"
    CONSTRAINT_VIOLATED = "ConstraintViolated"

    def __str__(self):
        return self.value


class DBError(Exception):
    """
    A failed database operation. The message is never empty.
    """

    def __init__(self, kind, message):
        if not message:
            message = "unknown database error"
        super(DBError, self).__init__("%s: %s" % (kind, message))
        self.kind = kind
        self.message = message

    def __eq__(self, other):
        return (isinstance(other, DBError) and self.kind == other.kind
                and self.message == other.message)

    def __hash__(self):
        return hash((self.kind, self.message))


def connection_failed(message):
    """ Shorthand for a ConnectionFailed error. """
    return DBError(DBErrorKind.CONNECTION_FAILED, message)


def query_failed(message):
    """ Shorthand for a QueryFailed error. """
    return DBError(DBErrorKind.QUERY_FAILED, message)


def conversion_failed(message):
    """ Shorthand for a ConversionFailed error. """
    return DBError(DBErrorKind.CONVERSION_FAILED, message)


def translate_sqlite_error(exc):
    """
    Maps an exception raised by the sqlite3 module to a DBError.
    """
    message = str(exc) or exc.__class__.__name__
    if isinstance(exc, sqlite3.IntegrityError):
        return DBError(DBErrorKind.CONSTRAINT_VIOLATED, message)
    if isinstance(exc, sqlite3.OperationalError):
        lowered = message.lower()
        if "locked" in lowered or "busy" in lowered:
            return DBError(DBErrorKind.LOCKED_DB, message)
    return DBError(DBErrorKind.QUERY_FAILED, message)
