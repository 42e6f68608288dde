"""
The parser info knowledge base: everything the SQL compiler needs to know about
a model's tables, columns, types and relationships, and its on-disk format.

File layout (one record per line, sections in this order):

    ersql-info 1
    db <path>
    model <name>
    [relations]
    <rel> <entityA> <entityB> <kind> <A|B|join> <fkTable> <fkColumn> [<fkColumn>]
    [nullable]
    <Table>.<Column> <true|false>
    [attributes]
    <Table> <Column> <Column> ...
    [types]
    <Table>.<Column> <Type>
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Tuple

from app.db.values import SQLType
from .model import RelKind
from .transform import classify_relationship, foreign_key_end, foreign_key_placement

FORMAT_HEADER = "ersql-info 1"
SECTIONS = ("[relations]", "[nullable]", "[attributes]", "[types]")


class InfoFileError(Exception):
    """
    Raised for a malformed info file; `line` is 1-based (0 for whole-file problems).
    """

    def __init__(self, message, line=0):
        super(InfoFileError, self).__init__("line %d: %s" % (line, message) if line else message)
        self.message = message
        self.line = line


@dataclass(frozen=True)
class RelationInfo:
    """
    What the compiler knows about a relationship. `fk_end` is "A" or "B" for
    the end whose table holds the foreign key, or "join" for n:m, in which
    case `fk_table` is the join table and `fk_columns` reference end A then B.
    """
    entity_a: str
    entity_b: str
    kind: RelKind
    fk_end: str
    fk_table: str
    fk_columns: Tuple[str, ...]


def qualified(table, column):
    """ The "Table.Column" key used by the column-indexed maps. """
    return "%s.%s" % (table, column)


@dataclass
class ParserInfo:
    """
    Compiler knowledge base derived from an ER model.
    """
    db_path: str
    model_name: str
    relation_types: Dict[str, RelationInfo] = field(default_factory=dict)
    nullable_flags: Dict[str, bool] = field(default_factory=dict)
    attribute_lists: Dict[str, Tuple[str, ...]] = field(default_factory=dict)
    attribute_types: Dict[str, SQLType] = field(default_factory=dict)

    def has_table(self, table):
        """ True if `table` is a table of the schema. """
        return table in self.attribute_lists

    def has_column(self, table, column):
        """ True if `table` has a column called `column`. """
        return column in self.attribute_lists.get(table, ())

    def columns(self, table):
        """ Ordered column names of `table`. """
        return self.attribute_lists[table]

    def column_type(self, table, column):
        """ Type of `table.column`. """
        return self.attribute_types[qualified(table, column)]

    def is_nullable(self, table, column):
        """ True when `table.column` may hold null. """
        return self.nullable_flags[qualified(table, column)]

    def relation(self, name):
        """ The RelationInfo of relationship `name`, or None. """
        return self.relation_types.get(name)

    def with_db_path(self, db_path):
        """ A copy of this info pointing at another database file. """
        return ParserInfo(db_path, self.model_name, dict(self.relation_types),
                          dict(self.nullable_flags), dict(self.attribute_lists),
                          dict(self.attribute_types))

    def check(self):
        """
        Verifies the cross-map invariants, raising InfoFileError on a violation.
        """
        for table, columns in self.attribute_lists.items():
            for column in columns:
                key = qualified(table, column)
                if key not in self.attribute_types or key not in self.nullable_flags:
                    raise InfoFileError("column %s lacks a type or nullable flag" % key)
        for name, relation in self.relation_types.items():
            for table in (relation.entity_a, relation.entity_b, relation.fk_table):
                if table not in self.attribute_lists:
                    raise InfoFileError("relationship %s refers to unknown table %s"
                                        % (name, table))


def build_parser_info(model, schema, db_path):
    """
    Collects the knowledge base for `model`, whose schema is `schema`.
    """
    info = ParserInfo(str(db_path), model.name)
    for relationship in model.relationships:
        holder, columns = foreign_key_placement(relationship)
        info.relation_types[relationship.name] = RelationInfo(
            relationship.end_a.entity, relationship.end_b.entity,
            classify_relationship(relationship), foreign_key_end(relationship),
            holder, tuple(columns))
    for table in schema.tables:
        info.attribute_lists[table.name] = tuple(column.name for column in table.columns)
        for column in table.columns:
            key = qualified(table.name, column.name)
            info.nullable_flags[key] = not column.not_null
            info.attribute_types[key] = column.sql_type
    return info


def format_info(info):
    """
    Renders the info file text.
    """
    lines = [FORMAT_HEADER, "db %s" % info.db_path, "model %s" % info.model_name]
    lines.append("[relations]")
    for name, relation in info.relation_types.items():
        lines.append(" ".join((name, relation.entity_a, relation.entity_b,
                               relation.kind.value, relation.fk_end, relation.fk_table)
                              + relation.fk_columns))
    lines.append("[nullable]")
    for key, flag in info.nullable_flags.items():
        lines.append("%s %s" % (key, "true" if flag else "false"))
    lines.append("[attributes]")
    for table, columns in info.attribute_lists.items():
        lines.append(" ".join((table,) + tuple(columns)))
    lines.append("[types]")
    for key, sql_type in info.attribute_types.items():
        lines.append("%s %s" % (key, sql_type.value))
    return "\n".join(lines) + "\n"


def _parse_relation(fields, number):
    if len(fields) not in (7, 8):
        raise InfoFileError("relation record needs 7 or 8 fields", number)
    name, entity_a, entity_b, kind, fk_end, fk_table = fields[:6]
    try:
        rel_kind = RelKind(kind)
    except ValueError:
        raise InfoFileError("unknown relationship kind '%s'" % kind, number)
    expected_columns = 2 if rel_kind == RelKind.MANY_TO_MANY else 1
    if fk_end not in ("A", "B", "join") or len(fields) - 6 != expected_columns \
            or (fk_end == "join") != (rel_kind == RelKind.MANY_TO_MANY):
        raise InfoFileError("inconsistent foreign-key placement", number)
    return name, RelationInfo(entity_a, entity_b, rel_kind, fk_end, fk_table,
                              tuple(fields[6:]))


def _parse_column_record(fields, number):
    if len(fields) != 2 or fields[0].count(".") != 1:
        raise InfoFileError("expected '<Table>.<Column> <value>'", number)
    return fields[0], fields[1]


def parse_info(text):
    """
    Parses info file text, raising InfoFileError with the offending line.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) < 3 + len(SECTIONS):
        raise InfoFileError("truncated info file", len(lines) or 1)
    if lines[0] != FORMAT_HEADER:
        raise InfoFileError("missing header '%s'" % FORMAT_HEADER, 1)
    if not lines[1].startswith("db "):
        raise InfoFileError("expected 'db <path>'", 2)
    if not lines[2].startswith("model ") or not lines[2][6:].strip():
        raise InfoFileError("expected 'model <name>'", 3)
    info = ParserInfo(lines[1][3:], lines[2][6:])

    section_index = -1
    for offset, line in enumerate(lines[3:]):
        number = offset + 4
        if line in SECTIONS:
            if SECTIONS.index(line) != section_index + 1:
                raise InfoFileError("section %s out of order" % line, number)
            section_index += 1
            continue
        if section_index < 0:
            raise InfoFileError("record outside of a section", number)
        fields = line.split()
        if not fields:
            raise InfoFileError("empty record", number)
        section = SECTIONS[section_index]
        if section == "[relations]":
            name, relation = _parse_relation(fields, number)
            info.relation_types[name] = relation
        elif section == "[nullable]":
            key, flag = _parse_column_record(fields, number)
            if flag not in ("true", "false"):
                raise InfoFileError("nullable flag must be true or false", number)
            info.nullable_flags[key] = flag == "true"
        elif section == "[attributes]":
            info.attribute_lists[fields[0]] = tuple(fields[1:])
        else:
            key, type_name = _parse_column_record(fields, number)
            try:
                info.attribute_types[key] = SQLType.parse(type_name)
            except ValueError as exc:
                raise InfoFileError(str(exc), number)
    if section_index != len(SECTIONS) - 1:
        raise InfoFileError("truncated info file: missing %s" % SECTIONS[section_index + 1],
                            len(lines))
    info.check()
    return info


def write_info(info, path):
    """
    Writes `info` to `path`.
    """
    with open(path, "w", encoding="utf-8") as info_file:
        info_file.write(format_info(info))


def read_info(path):
    """
    Reads the info file at `path`.
    """
    with open(path, "r", encoding="utf-8") as info_file:
        return parse_info(info_file.read())
