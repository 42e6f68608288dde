"""
Module responsible for testing the parser info and its file format.
"""
import random

import pytest

from app.db.values import SQLType
from app.erd.info import (InfoFileError, build_parser_info, format_info, parse_info,
                          read_info, write_info)
from app.erd.model import RelKind
from app.erd.transform import transform
from app.test.support.models import random_model


def test_uni_info(uni_info):
    """ Checks the lookups the compiler relies on. """
    assert uni_info.db_path == "Uni.db"
    assert uni_info.model_name == "Uni"
    assert uni_info.has_table("Participation")
    assert not uni_info.has_table("Exam")
    assert uni_info.has_column("Student", "Key")
    assert not uni_info.has_column("Student", "Grade")
    assert uni_info.columns("Result") == ("Key", "Attempt", "Grade", "StudentTakingKey")
    assert uni_info.column_type("Student", "MatNum") == SQLType.INT
    assert uni_info.is_nullable("Student", "Email")
    assert not uni_info.is_nullable("Student", "Name")


def test_relations(uni_info):
    """ Relationship records name the foreign-key holder and columns. """
    has_a = uni_info.relation("has_a")
    assert has_a.kind == RelKind.ONE_TO_MANY
    assert (has_a.entity_a, has_a.entity_b) == ("Student", "Result")
    assert (has_a.fk_end, has_a.fk_table, has_a.fk_columns) == \
        ("B", "Result", ("StudentTakingKey",))
    participation = uni_info.relation("Participation")
    assert participation.kind == RelKind.MANY_TO_MANY
    assert participation.fk_end == "join"
    assert participation.fk_columns == ("StudentParticipationKey", "LectureParticipationKey")
    assert uni_info.relation("Taking") is None


def test_file_round_trip(tmp_path, uni_info):
    """ Writing and reading an info file preserves it. """
    path = str(tmp_path / "Uni.db.info")
    write_info(uni_info, path)
    assert read_info(path) == uni_info


def test_random_round_trip():
    """ Info of random models survives formatting and parsing. """
    rng = random.Random(11)
    for number in range(50):
        model = random_model(rng)
        info = build_parser_info(model, transform(model), "db%d.sqlite" % number)
        assert parse_info(format_info(info)) == info


def test_with_db_path(uni_info):
    """ Redirecting the database leaves the original untouched. """
    moved = uni_info.with_db_path("/tmp/other.db")
    assert moved.db_path == "/tmp/other.db"
    assert uni_info.db_path == "Uni.db"
    assert moved.attribute_lists == uni_info.attribute_lists


def _lines(info):
    return format_info(info).split("\n")


def _expect_failure(lines, line):
    with pytest.raises(InfoFileError) as raised:
        parse_info("\n".join(lines))
    assert raised.value.line == line
    return raised.value


def test_bad_header(uni_info):
    """ The header must be the first line. """
    lines = _lines(uni_info)
    lines[0] = "ersql-info 9"
    _expect_failure(lines, 1)


def test_bad_records(uni_info):
    """ Malformed records report their own line. """
    lines = _lines(uni_info)
    relation = lines.index("[relations]") + 1
    broken = list(lines)
    broken[relation] = "has_a Student Result OneToMany B Result"
    _expect_failure(broken, relation + 1)

    broken = list(lines)
    broken[relation] = "has_a Student Result Sideways B Result StudentTakingKey"
    assert "unknown relationship kind" in str(_expect_failure(broken, relation + 1))

    flag = lines.index("[nullable]") + 1
    broken = list(lines)
    broken[flag] = broken[flag].rsplit(" ", 1)[0] + " maybe"
    _expect_failure(broken, flag + 1)

    type_line = lines.index("[types]") + 1
    broken = list(lines)
    broken[type_line] = broken[type_line].rsplit(" ", 1)[0] + " Decimal"
    _expect_failure(broken, type_line + 1)


def test_sections_out_of_order(uni_info):
    """ Sections must appear in their fixed order. """
    lines = _lines(uni_info)
    first = lines.index("[nullable]")
    second = lines.index("[attributes]")
    lines[first], lines[second] = lines[second], lines[first]
    _expect_failure(lines, first + 1)


def test_missing_type(uni_info):
    """ Every listed column needs a type. """
    lines = [line for line in _lines(uni_info) if line != "Student.Age Int"]
    with pytest.raises(InfoFileError) as raised:
        parse_info("\n".join(lines))
    assert "Student.Age" in str(raised.value)


def test_truncated():
    """ A file without all sections is rejected. """
    with pytest.raises(InfoFileError):
        parse_info("ersql-info 1\ndb x\nmodel M\n[relations]\n")
