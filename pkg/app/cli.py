""" Command line entry point: compiles ER models and checks, translates and runs statements. """
from __future__ import annotations

import argparse
import logging
import os
import sys

from .db.action import DBAction, Session
from .db.errors import DBError, DBErrorKind
from .db.execute import bind_holes, run_plan
from .db.connection import connect
from .db.values import SQLValue
from .erd.info import build_parser_info, read_info, write_info, InfoFileError
from .erd.model import RelKind
from .erd.parser import ErdErrors, read_erd
from .erd.transform import classify_relationship, emit_ddl, transform
from .sql.analysis import AnalysisError
from .sql.pipeline import compile_script
from .sql.translate import describe_plan
from .util.configure import get_configuration
from .util.textformatter import TextFormatter

EXIT_OK = 0
EXIT_COMPILE = 1
EXIT_IO = 2
EXIT_DB = 3


class CliFailure(Exception):
    """ Ends a command with `exit_code` after its messages were printed. """

    def __init__(self, exit_code, message=None):
        super(CliFailure, self).__init__(message)
        self.exit_code = exit_code
        self.message = message


def main(argv=None):
    """
    Runs the command named on the command line and returns its exit status.
    """
    parsed_args = parse_args(argv)
    if parsed_args.no_color:
        TextFormatter.disable_color()
    if parsed_args.verbose:
        logging.basicConfig(level=logging.DEBUG, format="%(name)s: %(message)s")
    try:
        configuration = get_configuration(parsed_args.config_profile)
    except ValueError:
        return EXIT_IO
    try:
        return parsed_args.command(parsed_args, configuration)
    except CliFailure as failure:
        if failure.message:
            TextFormatter.print_error(failure.message)
        return failure.exit_code


def format_compile_error(path, error):
    """ `path:line:column: [Phase] message` for a syntax or analysis error. """
    phase = error.phase if isinstance(error, AnalysisError) else "Syntax"
    return "%s:%s: [%s] %s" % (path, error.position, phase, error.message)


def read_text(path):
    try:
        with open(path, "r", encoding="utf-8") as source:
            return source.read()
    except OSError as error:
        raise CliFailure(EXIT_IO, "cannot read %s: %s" % (path, error.strerror or error))


def load_info(path, configuration, db_override=None):
    """
    Reads an info file; the database path it records may be overridden by the
    configured environment variable and then by `db_override`.
    """
    try:
        info = read_info(path)
    except OSError as error:
        raise CliFailure(EXIT_IO, "cannot read %s: %s" % (path, error.strerror or error))
    except InfoFileError as error:
        raise CliFailure(EXIT_IO, "%s: %s" % (path, error))
    db_path = db_override or os.environ.get(configuration["db-env-var"])
    return info.with_db_path(db_path) if db_path else info


def statement_source(argument):
    """ (display name, text) of a statement given inline or as a file. """
    if os.path.isfile(argument):
        return argument, read_text(argument)
    return "<statement>", argument


def compile_or_fail(argument, info):
    """
    Compiles every statement of `argument`, printing all errors before failing.
    """
    name, text = statement_source(argument)
    results = compile_script(text, info)
    if not results:
        raise CliFailure(EXIT_COMPILE, "%s: no statement found" % name)
    errors = [error for _, error in results if error is not None]
    for error in errors:
        TextFormatter.print_error(format_compile_error(name, error))
    if errors:
        raise CliFailure(EXIT_COMPILE)
    return [compiled for compiled, _ in results]


def cmd_erd_compile(parsed_args, configuration):
    """
    Compiles an ERD file into a database and its info file.
    """
    try:
        model = read_erd(parsed_args.file)
    except OSError as error:
        raise CliFailure(EXIT_IO, "cannot read %s: %s" % (parsed_args.file,
                                                          error.strerror or error))
    except ErdErrors as failure:
        for error in failure.errors:
            TextFormatter.print_error("%s:%d:%d: [ERD] %s" % (parsed_args.file, error.line,
                                                              error.column, error.message))
        raise CliFailure(EXIT_COMPILE)

    db_path = parsed_args.db
    if os.path.exists(db_path):
        if not parsed_args.force:
            raise CliFailure(EXIT_IO, "%s exists, use --force to overwrite it" % db_path)
        TextFormatter.print_info("overwriting %s" % db_path)
        try:
            os.remove(db_path)
        except OSError as error:
            raise CliFailure(EXIT_IO, "cannot remove %s: %s" % (db_path, error.strerror))

    schema = transform(model)
    try:
        with connect(db_path, configuration["busy-timeout"]) as connection:
            connection.executescript(emit_ddl(schema))
    except DBError as error:
        if os.path.isfile(db_path):
            os.remove(db_path)
        exit_code = EXIT_IO if error.kind == DBErrorKind.CONNECTION_FAILED else EXIT_DB
        raise CliFailure(exit_code, "%s: %s" % (error.kind, error.message))
    info_path = db_path + configuration["info-suffix"]
    try:
        write_info(build_parser_info(model, schema, db_path), info_path)
    except OSError as error:
        raise CliFailure(EXIT_IO, "cannot write %s: %s" % (info_path, error.strerror))

    TextFormatter.print_title("Model %s" % model.name)
    TextFormatter.print_heading("Tables")
    for table in schema.tables:
        TextFormatter.print_pair(table.name, ", ".join(c.name for c in table.columns))
    if model.relationships:
        TextFormatter.print_heading("Relationships")
    for relationship in model.relationships:
        kind = classify_relationship(relationship)
        detail = "%s %s -- %s %s (%s)" % (
            relationship.end_a.entity, relationship.end_a.cardinality,
            relationship.end_b.entity, relationship.end_b.cardinality, kind)
        if kind == RelKind.MANY_TO_MANY:
            detail += ", join table %s" % relationship.name
        TextFormatter.print_pair(relationship.name, detail)
    TextFormatter.print_new_line()
    TextFormatter.print_status("wrote %s and %s" % (db_path, info_path))
    return EXIT_OK


def cmd_check(parsed_args, configuration):
    """
    Checks every statement of a file; prints nothing when all pass.
    """
    info = load_info(parsed_args.info, configuration)
    text = read_text(parsed_args.file)
    failed = False
    for _, error in compile_script(text, info):
        if error is not None:
            failed = True
            TextFormatter.print_error(format_compile_error(parsed_args.file, error))
    return EXIT_COMPILE if failed else EXIT_OK


def format_holes(rendered):
    """ One comment line per hole of a rendered statement. """
    lines = []
    for number, hole in enumerate(rendered.holes, 1):
        if hole.is_parameter:
            lines.append("-- ?%d %s : %s%s" % (number, hole.name, hole.sql_type,
                                              " (nullable)" if hole.nullable else ""))
        else:
            lines.append("-- ?%d = %s : %s" % (number, hole.value, hole.sql_type))
    return lines


def cmd_translate(parsed_args, configuration):
    """
    Prints the SQL (or the plan) of every statement.
    """
    info = load_info(parsed_args.info, configuration)
    output_format = parsed_args.format or configuration["format"]
    blocks = []
    for compiled in compile_or_fail(parsed_args.statement, info):
        if output_format == "plan":
            blocks.append(describe_plan(compiled.plan))
        else:
            blocks.append("\n".join([compiled.rendered.sql] + format_holes(compiled.rendered)))
    print("\n\n".join(blocks))
    return EXIT_OK


def parse_bindings(pairs, compiled_statements, null_literal):
    """
    Turns `name=value` strings into SQLValues typed by the statements'
    parameters. Raises CliFailure(EXIT_COMPILE) on any problem.
    """
    parameters = {}
    for compiled in compiled_statements:
        for parameter in compiled.parameters:
            parameters.setdefault(parameter.name, parameter)
    bindings = {}
    for pair in pairs:
        name, separator, text = pair.partition("=")
        if not separator or not name:
            raise CliFailure(EXIT_COMPILE, "malformed parameter '%s', expected name=value" % pair)
        if name not in parameters:
            raise CliFailure(EXIT_COMPILE, "unknown parameter: %s" % name)
        try:
            bindings[name] = SQLValue.coerce(text, parameters[name].sql_type, null_literal)
        except ValueError as error:
            raise CliFailure(EXIT_COMPILE, "parameter %s: %s" % (name, error))
    for compiled in compiled_statements:
        try:
            bind_holes(compiled.rendered, bindings)
        except DBError as error:
            raise CliFailure(EXIT_COMPILE, error.message)
    return bindings


def cmd_run(parsed_args, configuration):
    """
    Executes every statement, printing rows or affected-row counts.
    """
    info = load_info(parsed_args.info, configuration, parsed_args.db)
    compiled_statements = compile_or_fail(parsed_args.statement, info)
    bindings = parse_bindings(parsed_args.params, compiled_statements,
                              configuration["null-literal"])
    with Session(info.db_path, configuration["busy-timeout"]) as session:
        for compiled in compiled_statements:
            result = session.run(DBAction.of(run_plan, compiled.plan, bindings))
            if not result.is_ok:
                raise CliFailure(EXIT_DB, "%s: %s" % (result.error.kind, result.error.message))
            if isinstance(result.value, list):
                for row in result.value:
                    print("\t".join(value.display() for value in row))
            else:
                print("%d row(s) affected" % result.value)
    return EXIT_OK


def parse_args(argv=None):
    """
    Returns parsed arguments from command line.
    """

    # Opens up an argument parser.
    parser = argparse.ArgumentParser(
        prog="python -m app.cli",
        description="Compiles ER models and type-checks, translates and runs SQL statements.")
    parser.add_argument('--profile', action='store', dest='config_profile', default=None,
                        help='Path to a yml configuration profile.')
    parser.add_argument('--verbose', action='store_true', default=False,
                        help='Logs executed SQL.')
    parser.add_argument('--no-color', action='store_true', default=False, dest='no_color',
                        help='Turns colored output off.')
    commands = parser.add_subparsers(dest='command_name', metavar='command')
    commands.required = True

    erd_compile = commands.add_parser('erd-compile', help='Compile an ERD file.')
    erd_compile.add_argument('file', help='ERD file.')
    erd_compile.add_argument('--db', action='store', required=True,
                             help='Database file to create.')
    erd_compile.add_argument('--force', action='store_true', default=False,
                             help='Overwrite an existing database.')
    erd_compile.set_defaults(command=cmd_erd_compile)

    check = commands.add_parser('check', help='Check the statements of a file.')
    check.add_argument('file', help='File of statements.')
    check.add_argument('--info', action='store', required=True, help='Info file.')
    check.set_defaults(command=cmd_check)

    translate = commands.add_parser('translate', help='Print the SQL of statements.')
    translate.add_argument('statement', help='Statement text or file of statements.')
    translate.add_argument('--info', action='store', required=True, help='Info file.')
    translate.add_argument('--format', action='store', choices=('sql', 'plan'), default=None,
                           help='Output format.')
    translate.set_defaults(command=cmd_translate)

    run = commands.add_parser('run', help='Execute statements.')
    run.add_argument('statement', help='Statement text or file of statements.')
    run.add_argument('--info', action='store', required=True, help='Info file.')
    run.add_argument('--db', action='store', default=None,
                     help='Database file overriding the one recorded in the info file.')
    run.add_argument('--param', action='append', default=[], dest='params',
                     metavar='NAME=VALUE', help='Parameter binding, repeatable.')
    run.set_defaults(command=cmd_run)
    return parser.parse_args(argv)


if __name__ == "__main__":
    sys.exit(main())
