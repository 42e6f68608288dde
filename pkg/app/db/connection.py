"""
Connections to SQLite databases.

Connections run in autocommit mode; transactions are opened explicitly with
app.db.transaction. Foreign-key enforcement is switched on for every connection.
"""
from __future__ import annotations

import logging
import os
import sqlite3

from .errors import connection_failed, query_failed, translate_sqlite_error

logger = logging.getLogger(__name__)

DEFAULT_BUSY_TIMEOUT = 5.0


class Connection(object):
    """
    An open database connection. Every engine error surfaces as a DBError.
    """

    def __init__(self, raw, path):
        self.raw = raw
        self.path = path
        self.closed = False

    @property
    def in_transaction(self):
        """ True while an explicit transaction is open. """
        return not self.closed and self.raw.in_transaction

    def execute(self, sql, parameters=()):
        """
        Executes one statement and returns the cursor.
        """
        if self.closed:
            raise query_failed("connection to %s is closed" % self.path)
        logger.debug("executing %s with %d parameter(s)", sql, len(parameters))
        try:
            return self.raw.execute(sql, parameters)
        except (sqlite3.Error, OverflowError) as exc:
            raise translate_sqlite_error(exc)

    def executescript(self, script):
        """
        Executes a script of statements without parameters, e.g. generated DDL.
        """
        if self.closed:
            raise query_failed("connection to %s is closed" % self.path)
        try:
            self.raw.executescript(script)
        except sqlite3.Error as exc:
            raise translate_sqlite_error(exc)

    def table_names(self):
        """ Names of the user tables, sorted. """
        cursor = self.execute("select name from sqlite_master where type = 'table' "
                              "and name not like 'sqlite_%' order by name")
        return [row[0] for row in cursor.fetchall()]

    def close(self):
        """ Closes the connection; closing twice is harmless. """
        if not self.closed:
            self.closed = True
            self.raw.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc_info):
        self.close()


def connect(path, busy_timeout=DEFAULT_BUSY_TIMEOUT):
    """
    Opens the database at `path`, creating the file if it does not exist.
    Raises a ConnectionFailed DBError when the path cannot hold a database.
    """
    path = str(path)
    if os.path.isdir(path):
        raise connection_failed("%s is a directory" % path)
    try:
        raw = sqlite3.connect(path, timeout=busy_timeout, isolation_level=None)
    except sqlite3.Error as exc:
        raise connection_failed("cannot open %s: %s" % (path, exc))
    try:
        raw.execute("PRAGMA foreign_keys = ON")
        raw.execute("select count(*) from sqlite_master").fetchone()
    except sqlite3.Error as exc:
        raw.close()
        raise connection_failed("cannot open %s: %s" % (path, exc))
    logger.debug("connected to %s", path)
    return Connection(raw, path)

