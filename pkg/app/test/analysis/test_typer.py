"""
Module responsible for testing type checking and placeholder inference.
"""
import pytest

from app.db.values import SQLType
from app.sql.analysis import AnalysisError, Parameter, Phase, parameters, run_analysis
from app.sql.parser import parse_statement


def _typed(text, info):
    return run_analysis(parse_statement(text), info)


def _type_error(text, info):
    with pytest.raises(AnalysisError) as raised:
        _typed(text, info)
    assert raised.value.phase == Phase.TYPER
    return raised.value


def test_float_literal_against_int_column(uni_info):
    """ Int and Float do not unify. """
    error = _type_error("Select s.Name From Student as s Where s.Age = 20.5;", uni_info)
    assert error.message == "Type error: Int (Age) and Float are not compatible."
    assert str(error) == "1:39: [Typer] Type error: Int (Age) and Float are not compatible."


def test_placeholder_takes_column_type(uni_info):
    """ A placeholder compared with Age is an Int. """
    typed = _typed("Select s.Name From Student as s Where s.Age = {x};", uni_info)
    assert parameters(typed) == [Parameter("x", SQLType.INT, False)]
    assert typed.where.rhs.sql_type == SQLType.INT
    assert typed.projection[0].sql_type == SQLType.STRING


def test_two_placeholders(uni_info):
    """ Two embedded expressions cannot be compared with each other. """
    error = _type_error("Select s.Name From Student as s Where {x} = {y};", uni_info)
    assert error.message == "Type error: embedded expressions {x} and {y} cannot be compared."


def test_conflicting_placeholder(uni_info):
    """ A placeholder has one type across its uses. """
    error = _type_error("Select s.Name From Student as s "
                        "Where s.Age = {x} Or s.Name = {x};", uni_info)
    assert error.message == "Type error: embedded expression {x} is used as Int and as String."


def test_column_against_column(uni_info):
    """ Columns of different types are incompatible. """
    error = _type_error("Select s.Name From Student as s Where s.Name < s.Age;", uni_info)
    assert error.message == "Type error: String (Name) and Int (Age) are not compatible."


def test_between(uni_info):
    """ Between needs agreeing numeric operands. """
    typed = _typed("Select r.Attempt From Result as r "
                   "Where r.Grade Between {lo} And 3.0;", uni_info)
    assert parameters(typed) == [Parameter("lo", SQLType.FLOAT, False)]
    error = _type_error("Select s.Age From Student as s Where s.Name Between 'a' And 'm';",
                        uni_info)
    assert error.message == "Type error: Between requires a numeric type, found String (Name)."
    error = _type_error("Select s.Age From Student as s Where s.Age Between 1 And 2.0;",
                        uni_info)
    assert error.message == "Type error: Int (Age) and Float are not compatible."


def test_nullable_placeholders(uni_info):
    """ Null may be bound only where every use tolerates it. """
    typed = _typed("Select s.Name From Student as s Where s.Email = {e};", uni_info)
    assert parameters(typed) == [Parameter("e", SQLType.STRING, True)]
    typed = _typed("Select s.Name From Student as s "
                   "Where s.Email = {e} Or s.Name = {e};", uni_info)
    assert parameters(typed) == [Parameter("e", SQLType.STRING, False)]


def test_parameter_order(uni_info):
    """ Parameters are listed once, by first occurrence. """
    typed = _typed("Select s.Name From Student as s "
                   "Where s.Age > {b} And s.Name = {a} And s.Age < {b};", uni_info)
    assert [p.name for p in parameters(typed)] == ["b", "a"]


def test_mutation_targets(uni_info):
    """ Insert and Update values take their target column types. """
    typed = _typed("Insert Into Student (Name, First, MatNum, Email, Age) "
                   "Values ({n}, 'B', {m}, {e}, 20);", uni_info)
    assert parameters(typed) == [Parameter("n", SQLType.STRING, False),
                                 Parameter("m", SQLType.INT, False),
                                 Parameter("e", SQLType.STRING, True)]
    typed = _typed("Update Student Set Email = null, Age = {a} Where Key = {k};", uni_info)
    assert typed.assignments[0].value.sql_type == SQLType.STRING
    assert [p.name for p in parameters(typed)] == ["a", "k"]
    error = _type_error("Update Lecture Set Hours = 'many';", uni_info)
    assert error.message == "Type error: Int (Hours) and String are not compatible."
