"""
Module responsible for testing connections and database actions.
"""
import sqlite3

import pytest

from app.db.action import DBAction, Session, SQLResult, run_with_db, sequence
from app.db.connection import connect
from app.db.errors import DBError, DBErrorKind, query_failed, translate_sqlite_error
from app.db.transaction import begin, rollback


def test_directory_is_not_a_database(tmp_path):
    """ Connecting to a directory fails cleanly. """
    with pytest.raises(DBError) as raised:
        connect(str(tmp_path))
    assert raised.value.kind == DBErrorKind.CONNECTION_FAILED


def test_use_after_close(uni_db):
    """ A closed connection refuses statements. """
    connection = connect(uni_db)
    connection.close()
    connection.close()
    with pytest.raises(DBError) as raised:
        connection.execute("select 1")
    assert raised.value.kind == DBErrorKind.QUERY_FAILED


def test_engine_errors_are_translated(uni_db):
    """ sqlite3 exceptions surface as DBError. """
    with connect(uni_db) as connection:
        with pytest.raises(DBError) as raised:
            connection.execute("select * from Nowhere")
        assert raised.value.kind == DBErrorKind.QUERY_FAILED
        with pytest.raises(DBError) as raised:
            connection.execute("insert into Result (Attempt, Grade, StudentTakingKey) "
                               "values (1, 1.0, 99)")
        assert raised.value.kind == DBErrorKind.CONSTRAINT_VIOLATED


def test_table_names(uni_db):
    """ Lists the schema's tables. """
    with connect(uni_db) as connection:
        assert connection.table_names() == ["Lecture", "Participation", "Result", "Student"]


def _count(connection, table):
    return connection.execute("select count(*) from %s" % table).fetchone()[0]


def test_action_composition(uni_db):
    """ bind, then, map and sequence thread one connection through. """
    action = DBAction.of(_count, "Student") \
        .bind(lambda students: DBAction.of(_count, "Lecture").map(lambda l: (students, l)))
    assert run_with_db(uni_db, action) == SQLResult.ok((4, 3))
    both = sequence([DBAction.of(_count, "Result"), DBAction.pure("x")])
    assert run_with_db(uni_db, both).unwrap() == [4, "x"]
    assert run_with_db(uni_db, DBAction.pure(1).then(DBAction.pure(2))).value == 2


def test_failure_short_circuits(uni_db):
    """ Steps after a failing step never run. """
    calls = []

    def counted(connection):
        calls.append(1)
        return len(calls)

    error = query_failed("boom")
    action = DBAction.of(counted).then(DBAction.fail(error)).then(DBAction.of(counted))
    result = run_with_db(uni_db, action)
    assert not result.is_ok
    assert result.error == error
    assert calls == [1]
    with pytest.raises(DBError):
        result.unwrap()


def test_run_with_db_reports_connection_failure(tmp_path):
    """ Connection problems become failed results. """
    result = run_with_db(str(tmp_path), DBAction.pure(1))
    assert result.error.kind == DBErrorKind.CONNECTION_FAILED


def test_session_reuses_connection(uni_db):
    """ A session keeps its connection until closed. """
    with Session(uni_db) as session:
        first = session.run(DBAction(lambda connection: connection))
        second = session.run(DBAction(lambda connection: connection))
        assert first.value is second.value
    assert first.value.closed


def test_locked_database(uni_db):
    """ A write blocked by another connection's open transaction is LockedDB. """
    with connect(uni_db) as holder, connect(uni_db, 0) as waiter:
        begin(holder)
        holder.execute("insert into Lecture (Title, Hours) values ('Algebra', 2)")
        with pytest.raises(DBError) as raised:
            waiter.execute("insert into Lecture (Title, Hours) values ('Topology', 2)")
        assert raised.value.kind == DBErrorKind.LOCKED_DB
        rollback(holder)


@pytest.mark.parametrize("exc, kind", [
    (sqlite3.OperationalError("database is locked"), DBErrorKind.LOCKED_DB),
    (sqlite3.OperationalError("database table is busy"), DBErrorKind.LOCKED_DB),
    (sqlite3.OperationalError("no such table: Nowhere"), DBErrorKind.QUERY_FAILED),
    (sqlite3.IntegrityError("UNIQUE constraint failed"), DBErrorKind.CONSTRAINT_VIOLATED),
    (sqlite3.InterfaceError("bad parameter"), DBErrorKind.QUERY_FAILED),
    (OverflowError("Python int too large to convert to SQLite INTEGER"),
     DBErrorKind.QUERY_FAILED),
])
def test_error_translation(exc, kind):
    """ Engine exceptions map to their error kinds. """
    error = translate_sqlite_error(exc)
    assert error.kind == kind
    assert error.message == str(exc)


def test_run_with_db_releases_connection(uni_db):
    """ A failing action leaves the database unlocked and its writes discarded. """
    def insert_then_fail(connection):
        begin(connection)
        connection.execute("insert into Lecture (Title, Hours) values ('Algebra', 2)")
        raise query_failed("boom")

    result = run_with_db(uni_db, DBAction(insert_then_fail))
    assert result.error.message == "boom"
    with connect(uni_db, 0) as connection:
        connection.execute("begin exclusive")
        assert _count(connection, "Lecture") == 3
        connection.execute("rollback")


def test_out_of_range_integer_is_translated(uni_db):
    """ Integers beyond 64 bits fail as QueryFailed instead of escaping. """
    with connect(uni_db) as connection:
        with pytest.raises(DBError) as raised:
            connection.execute("select ?", (2 ** 63,))
    assert raised.value.kind == DBErrorKind.QUERY_FAILED
