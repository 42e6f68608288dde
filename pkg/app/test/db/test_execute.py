"""
Module responsible for testing typed execution of statements and plans.
"""
import pytest

from app.db.connection import connect
from app.db.errors import DBError, DBErrorKind
from app.db.execute import bind_holes, count_holes, run_plan, select_typed
from app.db.values import SQLType, SQLValue
from app.sql.pipeline import compile_statement


def _names(rows):
    return sorted(row[0].payload for row in rows)


def test_count_holes():
    """ Question marks inside quotes or line comments are not holes. """
    assert count_holes("select ? from 'a?' where \"b?\" = ?") == 2
    assert count_holes("select ? -- which one?\nfrom T where a = '-- ?' and b = ?") == 2


def test_select_typed(uni_db):
    """ Rows come back tagged with the requested types. """
    with connect(uni_db) as connection:
        rows = select_typed(connection, "select First, Name from Student where MatNum = ?",
                            [SQLValue.integer(1001)], [SQLType.STRING, SQLType.STRING])
    assert rows == [[SQLValue.string("Joe"), SQLValue.string("Fisher")]]


def test_select_typed_mismatches(uni_db):
    """ Wrong result types and hole counts are reported. """
    with connect(uni_db) as connection:
        with pytest.raises(DBError) as raised:
            select_typed(connection, "select Name from Student", [], [SQLType.INT])
        assert raised.value.kind == DBErrorKind.CONVERSION_FAILED
        with pytest.raises(DBError) as raised:
            select_typed(connection, "select Name from Student where Age = ?", [],
                         [SQLType.STRING])
        assert raised.value.kind == DBErrorKind.QUERY_FAILED
        with pytest.raises(DBError) as raised:
            select_typed(connection, "select Name, Age from Student", [], [SQLType.STRING])
        assert raised.value.kind == DBErrorKind.QUERY_FAILED


def test_stud_names_with_age(uni_db, uni_info):
    """ The compiled query finds the students aged 30. """
    compiled = compile_statement("Select s.Name From Student as s Where s.Age = {x};", uni_info)
    with connect(uni_db) as connection:
        rows = run_plan(connection, compiled.plan, {"x": SQLValue.integer(30)})
    assert _names(rows) == ["Fisher", "Miller"]


def test_stud_good_grades(uni_db, uni_info):
    """ Satisfies joins results to their students. """
    compiled = compile_statement(
        "Select Distinct s.Name, r.Grade From Student as s, Result as r "
        "Where Satisfies s has_a r And r.Grade < 2.0;", uni_info)
    with connect(uni_db) as connection:
        rows = run_plan(connection, compiled.plan)
    assert sorted((name.payload, grade.payload) for name, grade in rows) == \
        [("Fisher", 1.3), ("Smith", 1.0)]


def test_many_to_many_query(uni_db, uni_info):
    """ Satisfies over the join table pairs students and lectures. """
    compiled = compile_statement(
        "Select s.Name, l.Title From Student as s, Lecture as l "
        "Where Satisfies s Participation l And l.Hours > {h} Order By s.Name, l.Title;",
        uni_info)
    with connect(uni_db) as connection:
        rows = run_plan(connection, compiled.plan, {"h": SQLValue.integer(2)})
    assert [(name.payload, title.payload) for name, title in rows] == \
        [("Fisher", "Databases"), ("Miller", "Compilers"), ("Smith", "Databases")]


def test_bindings_are_checked(uni_info):
    """ Missing and ill-typed bindings fail before execution. """
    compiled = compile_statement("Select s.Name From Student as s Where s.Age = {x};", uni_info)
    with pytest.raises(DBError) as raised:
        bind_holes(compiled.rendered, {})
    assert raised.value.message == "missing parameter: x"
    with pytest.raises(DBError) as raised:
        bind_holes(compiled.rendered, {"x": SQLValue.string("30")})
    assert raised.value.kind == DBErrorKind.CONVERSION_FAILED
    assert raised.value.message == "parameter x expects Int, got String"
    with pytest.raises(DBError) as raised:
        bind_holes(compiled.rendered, {"x": SQLValue.null()})
    assert raised.value.message == "parameter x expects Int, got null"


def test_nullable_binding(uni_db, uni_info):
    """ Null may be bound where the column is nullable; it matches nothing. """
    compiled = compile_statement("Select s.Name From Student as s Where s.Email = {e};",
                                 uni_info)
    with connect(uni_db) as connection:
        assert run_plan(connection, compiled.plan, {"e": SQLValue.null()}) == []


def test_mutations(uni_db, uni_info):
    """ Mutations report affected rows. """
    insert = compile_statement("Insert Into Lecture (Title, Hours) Values ({t}, 3), ('B', 1);",
                               uni_info)
    update = compile_statement("Update Lecture Set Hours = Hours Where Title = 'B';", uni_info)
    delete = compile_statement("Delete From Lecture Where Hours < {h};", uni_info)
    with connect(uni_db) as connection:
        assert run_plan(connection, insert.plan, {"t": SQLValue.string("A")}) == 2
        assert run_plan(connection, update.plan) == 1
        assert run_plan(connection, delete.plan, {"h": SQLValue.integer(2)}) == 1


def test_foreign_key_delete(uni_db, uni_info):
    """ Deleting a referenced student violates a constraint. """
    compiled = compile_statement("Delete From Student Where MatNum = 1001;", uni_info)
    with connect(uni_db) as connection:
        with pytest.raises(DBError) as raised:
            run_plan(connection, compiled.plan)
    assert raised.value.kind == DBErrorKind.CONSTRAINT_VIOLATED


def test_injection_payload_is_data(uni_db, uni_info):
    """ A hostile string is stored and read back verbatim; the schema is unchanged. """
    payload = "'; drop table Student; --"
    insert = compile_statement("Insert Into Student (Name, First, MatNum, Age) "
                               "Values ({n}, 'Eve', 2000, 20);", uni_info)
    select = compile_statement("Select s.Name From Student as s Where s.Name = {n};", uni_info)
    with connect(uni_db) as connection:
        before = connection.table_names()
        run_plan(connection, insert.plan, {"n": SQLValue.string(payload)})
        rows = run_plan(connection, select.plan, {"n": SQLValue.string(payload)})
        after = connection.table_names()
    assert rows == [[SQLValue.string(payload)]]
    assert before == after


def test_out_of_range_integer(uni_db, uni_info):
    """ Literals and bindings beyond 64 bits fail as QueryFailed. """
    literal = compile_statement(
        "Select s.Name From Student as s Where s.Age = 9223372036854775808;", uni_info)
    placeholder = compile_statement("Select s.Name From Student as s Where s.Age = {x};",
                                    uni_info)
    with connect(uni_db) as connection:
        with pytest.raises(DBError) as raised:
            run_plan(connection, literal.plan)
        assert raised.value.kind == DBErrorKind.QUERY_FAILED
        with pytest.raises(DBError) as raised:
            run_plan(connection, placeholder.plan, {"x": SQLValue.integer(-2 ** 63 - 1)})
        assert raised.value.kind == DBErrorKind.QUERY_FAILED
