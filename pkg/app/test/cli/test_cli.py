"""
Module responsible for testing the command-line interface end to end.
"""
import os

import pytest

from app.cli import EXIT_COMPILE, EXIT_DB, EXIT_IO, EXIT_OK, main
from app.erd.info import read_info, write_info

STUD_NAMES_WITH_AGE = "Select s.Name From Student as s Where s.Age = {x};"
STUD_GOOD_GRADES = ("Select Distinct s.Name, r.Grade From Student as s, Result as r "
                    "Where Satisfies s has_a r And r.Grade < 2.0;")


@pytest.fixture
def info_path(uni_db, uni_info):
    """ An info file pointing at the filled fixture database. """
    path = uni_db + ".info"
    write_info(uni_info.with_db_path(uni_db), path)
    return path


def run_cli(capsys, *argv):
    """ Runs the CLI and returns (exit code, stdout, stderr). """
    code = main(["--no-color"] + list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_erd_compile(tmp_path, capsys, uni_erd_path):
    """ Compiling the model writes the database and its info file. """
    db_path = str(tmp_path / "Uni.db")
    code, out, _ = run_cli(capsys, "erd-compile", uni_erd_path, "--db", db_path)
    assert code == EXIT_OK
    assert os.path.isfile(db_path)
    info = read_info(db_path + ".info")
    assert info.db_path == db_path
    assert "Participation" in out
    assert "join table Participation" in out

    code, _, err = run_cli(capsys, "erd-compile", uni_erd_path, "--db", db_path)
    assert code == EXIT_IO
    assert "use --force" in err
    code, _, err = run_cli(capsys, "erd-compile", uni_erd_path, "--db", db_path, "--force")
    assert code == EXIT_OK
    assert err == "[INFO] overwriting %s\n" % db_path


def test_erd_compile_errors(tmp_path, capsys):
    """ Model errors are printed with their positions. """
    source = tmp_path / "bad.erd"
    source.write_text("model M\nentity A { X: Int }\nrelationship R { A 0..n  B 1 }\n")
    code, _, err = run_cli(capsys, "erd-compile", str(source), "--db", str(tmp_path / "m.db"))
    assert code == EXIT_COMPILE
    assert "[ERROR] %s:3:26: [ERD] unknown entity 'B'" % source in err
    assert not os.path.exists(str(tmp_path / "m.db"))


def test_check(tmp_path, capsys, info_path):
    """ Check is silent on success and lists every error otherwise. """
    good = tmp_path / "good.sql"
    good.write_text(STUD_NAMES_WITH_AGE + "\n" + STUD_GOOD_GRADES + "\n")
    assert run_cli(capsys, "check", str(good), "--info", info_path) == (EXIT_OK, "", "")

    bad = tmp_path / "bad.sql"
    bad.write_text("Select s.Name From Student as s Where s.Age = 20.5;\n"
                   "Select x.Name From Student as s;\n"
                   "Select Name From;\n")
    code, _, err = run_cli(capsys, "check", str(bad), "--info", info_path)
    assert code == EXIT_COMPILE
    lines = err.splitlines()
    assert lines[0] == ("[ERROR] %s:1:39: [Typer] Type error: Int (Age) and Float "
                        "are not compatible." % bad)
    assert lines[1] == "[ERROR] %s:2:8: [Namer] pseudonym 'x' is not defined" % bad
    assert lines[2].startswith("[ERROR] %s:3:17: [Syntax] " % bad)


def test_translate_golden(capsys, golden, info_path):
    """ Translation output matches the golden files. """
    code, out, _ = run_cli(capsys, "translate", STUD_NAMES_WITH_AGE, "--info", info_path)
    assert code == EXIT_OK
    golden("stud_names_with_age.sql.txt", out)
    code, out, _ = run_cli(capsys, "translate", STUD_GOOD_GRADES, "--info", info_path)
    golden("stud_good_grades.sql.txt", out)
    code, out, _ = run_cli(capsys, "translate", STUD_GOOD_GRADES, "--info", info_path,
                           "--format", "plan")
    golden("stud_good_grades.plan.txt", out)


def test_translate_nullable_parameter(capsys, info_path):
    """ Nullable parameters are marked in the hole listing. """
    code, out, _ = run_cli(capsys, "translate",
                           "Select s.Name From Student as s Where s.Email = {e};",
                           "--info", info_path)
    assert code == EXIT_OK
    assert out.splitlines()[1] == "-- ?1 e : String (nullable)"


def test_run_query(capsys, info_path):
    """ Rows are printed tab-separated. """
    code, out, _ = run_cli(capsys, "run", STUD_NAMES_WITH_AGE, "--info", info_path,
                           "--param", "x=30")
    assert code == EXIT_OK
    assert sorted(out.splitlines()) == ["Fisher", "Miller"]
    code, out, _ = run_cli(capsys, "run", STUD_GOOD_GRADES, "--info", info_path)
    assert sorted(out.splitlines()) == ["Fisher\t1.3", "Smith\t1.0"]


def test_run_mutation(capsys, info_path):
    """ Mutations print their affected-row counts. """
    code, out, _ = run_cli(capsys, "run",
                           "Update Student Set Email = {e} Where Age = 30;", "--info", info_path,
                           "--param", "e=null")
    assert code == EXIT_OK
    assert out == "2 row(s) affected\n"


@pytest.mark.parametrize("params, message", [
    ([], "missing parameter: x"),
    (["x"], "malformed parameter 'x', expected name=value"),
    (["y=1"], "unknown parameter: y"),
    (["x=thirty"], "parameter x: invalid literal for int() with base 10: 'thirty'"),
    (["x=null"], "parameter x expects Int, got null"),
])
def test_run_parameter_errors(capsys, info_path, params, message):
    """ Parameter problems are compile-time failures. """
    argv = ["run", STUD_NAMES_WITH_AGE, "--info", info_path]
    for param in params:
        argv.extend(["--param", param])
    code, out, err = run_cli(capsys, *argv)
    assert code == EXIT_COMPILE
    assert out == ""
    assert err == "[ERROR] %s\n" % message


def test_run_constraint_violation(capsys, info_path):
    """ Database errors exit with the database status. """
    code, _, err = run_cli(capsys, "run", "Delete From Student Where MatNum = 1001;",
                           "--info", info_path)
    assert code == EXIT_DB
    assert "ConstraintViolated" in err


def test_database_overrides(tmp_path, capsys, monkeypatch, uni_db, uni_info):
    """ --db beats the environment variable, which beats the info file. """
    monkeypatch.delenv("ERSQL_DB", raising=False)
    path = str(tmp_path / "moved.info")
    write_info(uni_info.with_db_path(str(tmp_path / "missing" / "Uni.db")), path)
    code, _, _ = run_cli(capsys, "run", "Select Name From Student;", "--info", path)
    assert code == EXIT_DB
    monkeypatch.setenv("ERSQL_DB", uni_db)
    code, out, _ = run_cli(capsys, "run", "Select Name From Student;", "--info", path)
    assert code == EXIT_OK
    assert len(out.splitlines()) == 4
    code, _, _ = run_cli(capsys, "run", "Select Name From Student;", "--info", path,
                         "--db", str(tmp_path))
    assert code == EXIT_DB


def test_io_errors(tmp_path, capsys, info_path):
    """ Unreadable inputs and invalid profiles exit with the I/O status. """
    code, _, _ = run_cli(capsys, "check", str(tmp_path / "none.sql"), "--info", info_path)
    assert code == EXIT_IO
    broken = tmp_path / "broken.info"
    broken.write_text("not an info file\n")
    code, _, err = run_cli(capsys, "translate", STUD_NAMES_WITH_AGE, "--info", str(broken))
    assert code == EXIT_IO
    assert str(broken) in err
    profile = tmp_path / "odd.yml"
    profile.write_text("colour: blue\n")
    code, _, err = run_cli(capsys, "--profile", str(profile), "translate", STUD_NAMES_WITH_AGE,
                           "--info", info_path)
    assert code == EXIT_IO
    assert "Unknown configuration key 'colour'" in err


def test_profile_format(tmp_path, capsys, info_path):
    """ The profile picks the default translate format. """
    profile = tmp_path / "plan.yml"
    profile.write_text("format: plan\n")
    code, out, _ = run_cli(capsys, "--profile", str(profile), "translate", STUD_GOOD_GRADES,
                           "--info", info_path)
    assert code == EXIT_OK
    assert out.startswith("SelectPlan Distinct")


def test_erd_compile_unwritable_target(tmp_path, capsys, uni_erd_path):
    """ A database path in a missing directory is an I/O failure. """
    db_path = str(tmp_path / "no" / "such" / "Uni.db")
    code, _, err = run_cli(capsys, "erd-compile", uni_erd_path, "--db", db_path)
    assert code == EXIT_IO
    assert "ConnectionFailed" in err
    assert not os.path.exists(db_path + ".info")


def test_erd_compile_ddl_failure(tmp_path, capsys, monkeypatch, uni_erd_path):
    """ A rejected schema leaves no database file behind. """
    monkeypatch.setattr("app.cli.emit_ddl", lambda schema: "create table Broken (;")
    db_path = str(tmp_path / "Uni.db")
    code, _, err = run_cli(capsys, "erd-compile", uni_erd_path, "--db", db_path)
    assert code == EXIT_DB
    assert "QueryFailed" in err
    assert not os.path.exists(db_path)
    assert not os.path.exists(db_path + ".info")


def test_run_out_of_range_parameter(capsys, info_path):
    """ An integer beyond 64 bits is reported as a database error. """
    code, out, err = run_cli(capsys, "run", STUD_NAMES_WITH_AGE, "--info", info_path,
                             "--param", "x=9223372036854775808")
    assert code == EXIT_DB
    assert out == ""
    assert err.startswith("[ERROR] QueryFailed: ")


def test_malformed_profile(tmp_path, capsys, info_path):
    """ A profile that is not YAML exits with the I/O status. """
    profile = tmp_path / "broken.yml"
    profile.write_text("format: [sql\n")
    code, _, err = run_cli(capsys, "--profile", str(profile), "translate", STUD_NAMES_WITH_AGE,
                           "--info", info_path)
    assert code == EXIT_IO
    assert "is not valid YAML" in err
