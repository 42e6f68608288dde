"""
Explicit transactions. Transactions do not nest.
"""
from __future__ import annotations

from .action import DBAction
from .errors import DBError, query_failed


def begin(connection):
    """ Opens a transaction. """
    if connection.in_transaction:
        raise query_failed("a transaction is already open")
    connection.execute("begin")


def commit(connection):
    """ Commits the open transaction. """
    if not connection.in_transaction:
        raise query_failed("no transaction is open")
    connection.execute("commit")


def rollback(connection):
    """ Discards the open transaction. """
    if not connection.in_transaction:
        raise query_failed("no transaction is open")
    connection.execute("rollback")


def transaction(action):
    """
    Wraps `action` in begin and commit; a failing action or a failing commit
    is rolled back and its error returned.
    """
    def step(connection):
        begin(connection)
        try:
            value = action.perform(connection)
            commit(connection)
        except DBError:
            if connection.in_transaction:
                rollback(connection)
            raise
        return value
    return DBAction(step)
