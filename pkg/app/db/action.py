"""
Composable database actions.

A DBAction wraps a step function taking an open Connection. Steps signal
failure by raising DBError; `run` turns the outcome into an SQLResult, so a
failing step stops every step composed after it.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

from .connection import DEFAULT_BUSY_TIMEOUT, connect
from .errors import DBError


@dataclass(frozen=True)
class SQLResult:
    """ Either a value or a DBError. """
    value: Any = None
    error: Optional[DBError] = None

    @classmethod
    def ok(cls, value):
        return cls(value=value)

    @classmethod
    def failure(cls, error):
        return cls(error=error)

    @property
    def is_ok(self):
        return self.error is None

    def unwrap(self):
        """ The value, or raises the error. """
        if self.error is not None:
            raise self.error
        return self.value


class DBAction(object):
    """
    A deferred computation against an open connection.
    """

    def __init__(self, step):
        self.step = step

    @classmethod
    def of(cls, function, *args, **kwargs):
        """ Lifts `function(connection, *args, **kwargs)` into an action. """
        return cls(lambda connection: function(connection, *args, **kwargs))

    @classmethod
    def pure(cls, value):
        """ An action yielding `value` without touching the database. """
        return cls(lambda connection: value)

    @classmethod
    def fail(cls, error):
        """ An action failing with `error`. """
        def step(connection):
            raise error
        return cls(step)

    def perform(self, connection):
        """ Runs the step, raising DBError on failure. """
        return self.step(connection)

    def run(self, connection):
        """ Runs the step and returns its SQLResult. """
        try:
            return SQLResult.ok(self.step(connection))
        except DBError as error:
            return SQLResult.failure(error)

    def bind(self, continuation):
        """ Sequences this action with the action `continuation(result)`. """
        return DBAction(lambda connection:
                        continuation(self.step(connection)).step(connection))

    def then(self, other):
        """ Sequences this action with `other`, keeping only the second result. """
        return self.bind(lambda _: other)

    def map(self, function):
        """ Applies `function` to the result. """
        return DBAction(lambda connection: function(self.step(connection)))


def sequence(actions):
    """
    Runs `actions` in order and yields the list of their results.
    """
    actions = list(actions)

    def step(connection):
        return [action.step(connection) for action in actions]
    return DBAction(step)


def run_with_db(path, action, busy_timeout=DEFAULT_BUSY_TIMEOUT):
    """
    Connects to `path`, runs `action` and disconnects, also on failure.
    """
    try:
        connection = connect(path, busy_timeout)
    except DBError as error:
        return SQLResult.failure(error)
    try:
        return action.run(connection)
    finally:
        connection.close()


class Session(object):
    """
    Keeps one connection open across several actions.

        with Session("uni.db") as session:
            session.run(first)
            session.run(second)
    """

    def __init__(self, path, busy_timeout=DEFAULT_BUSY_TIMEOUT):
        self.path = path
        self.busy_timeout = busy_timeout
        self.connection = None

    def run(self, action):
        """
        Runs `action` on the stored connection, connecting first if needed.
        """
        if self.connection is None:
            try:
                self.connection = connect(self.path, self.busy_timeout)
            except DBError as error:
                return SQLResult.failure(error)
        return action.run(self.connection)

    def close(self):
        """ Closes the stored connection. """
        if self.connection is not None:
            self.connection.close()
            self.connection = None

    def __enter__(self):
        return self

    def __exit__(self, *exc_info):
        self.close()
