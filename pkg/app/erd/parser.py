"""
Reads the textual ERD format.

    model Uni

    entity Student {
      Name: String
      Email: String null
      MatNum: Int unique
    }

    relationship has_a as Taking {
      Student 0..n
      Result 1..1
    }

The cardinality written at an end is how many partners one row of that end's
entity has. `#` starts a comment that runs to the end of the line.
"""
from __future__ import annotations

import re
from collections import namedtuple

from app.db.values import SQLType
from .model import (Attribute, Cardinality, Entity, ERModel, KeyStatus,
                    Relationship, RelationshipEnd)
from .validate import validate_model


class ErdError(object):
    """
    A single positioned problem in an ERD source.
    """

    def __init__(self, message, line=0, column=0):
        self.message = message
        self.line = line
        self.column = column

    def __str__(self):
        return "%d:%d: %s" % (self.line, self.column, self.message)

    def __repr__(self):
        return "ErdError(%r, %d, %d)" % (self.message, self.line, self.column)


class ErdErrors(Exception):
    """
    Raised when an ERD source cannot be turned into a valid model.
    """

    def __init__(self, errors):
        super(ErdErrors, self).__init__("\n".join(str(error) for error in errors))
        self.errors = list(errors)


_Token = namedtuple("_Token", "kind text line column")

_TOKEN_PATTERN = re.compile(r"""
    (?P<space>[ \t\r]+)
  | (?P<newline>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<range>\.\.)
  | (?P<int>[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[{}:*])
""", re.VERBOSE)

_UNBOUNDED = ("n", "m", "*")


def tokenize_erd(text):
    """
    Splits ERD source into tokens, raising ErdErrors on an illegal character.
    """
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        match = _TOKEN_PATTERN.match(text, pos)
        if match is None:
            raise ErdErrors([ErdError("illegal character %r" % text[pos],
                                      line, pos - line_start + 1)])
        kind = match.lastgroup
        if kind == "newline":
            line += 1
            line_start = match.end()
        elif kind not in ("space", "comment"):
            tokens.append(_Token(kind, match.group(), line, pos - line_start + 1))
        pos = match.end()
    tokens.append(_Token("eof", "", line, pos - line_start + 1))
    return tokens


class _ErdParser(object):
    """
    Recursive-descent parser over the token list. Records where every named
    element was declared so validation errors can point at it.
    """

    def __init__(self, tokens):
        self.tokens = tokens
        self.index = 0
        self.positions = {}

    def current(self):
        return self.tokens[self.index]

    def advance(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def fail(self, expected):
        token = self.current()
        found = "end of input" if token.kind == "eof" else "'%s'" % token.text
        raise ErdErrors([ErdError("expected %s, found %s" % (expected, found),
                                  token.line, token.column)])

    def at_word(self, word):
        token = self.current()
        return token.kind == "ident" and token.text == word

    def expect_word(self, word):
        if not self.at_word(word):
            self.fail("'%s'" % word)
        return self.advance()

    def expect_punct(self, text):
        token = self.current()
        if token.kind != "punct" or token.text != text:
            self.fail("'%s'" % text)
        return self.advance()

    def expect_ident(self, what):
        if self.current().kind != "ident":
            self.fail(what)
        return self.advance()

    def parse_model(self):
        self.expect_word("model")
        name = self.expect_ident("model name")
        self.positions[("model",)] = (name.line, name.column)
        entities, relationships = [], []
        while self.current().kind != "eof":
            if self.at_word("entity"):
                entities.append(self.parse_entity())
            elif self.at_word("relationship"):
                relationships.append(self.parse_relationship())
            else:
                self.fail("'entity' or 'relationship'")
        return ERModel(name.text, tuple(entities), tuple(relationships))

    def parse_entity(self):
        self.expect_word("entity")
        name = self.expect_ident("entity name")
        self.positions.setdefault(("entity", name.text), (name.line, name.column))
        self.expect_punct("{")
        attributes = [self.parse_attribute(name.text)]
        while not (self.current().kind == "punct" and self.current().text == "}"):
            attributes.append(self.parse_attribute(name.text))
        self.expect_punct("}")
        return Entity(name.text, tuple(attributes))

    def parse_attribute(self, entity_name):
        name = self.expect_ident("attribute name")
        self.positions.setdefault(("attribute", entity_name, name.text),
                                  (name.line, name.column))
        self.expect_punct(":")
        domain_token = self.expect_ident("attribute domain")
        try:
            domain = SQLType.parse(domain_token.text)
        except ValueError:
            raise ErdErrors([ErdError("unknown domain '%s'" % domain_token.text,
                                      domain_token.line, domain_token.column)])
        key = KeyStatus.NO_KEY
        if self.at_word("key"):
            self.advance()
            key = KeyStatus.PRIMARY_KEY
        elif self.at_word("unique"):
            self.advance()
            key = KeyStatus.UNIQUE
        nullable = False
        if self.at_word("null"):
            self.advance()
            nullable = True
        return Attribute(name.text, domain, key, nullable)

    def parse_relationship(self):
        self.expect_word("relationship")
        name = self.expect_ident("relationship name")
        self.positions.setdefault(("relationship", name.text), (name.line, name.column))
        role = None
        if self.at_word("as"):
            self.advance()
            role = self.expect_ident("role name").text
        self.expect_punct("{")
        end_a = self.parse_end(name.text, 0)
        end_b = self.parse_end(name.text, 1)
        self.expect_punct("}")
        return Relationship(name.text, end_a, end_b, role)

    def parse_end(self, relationship_name, index):
        entity = self.expect_ident("entity name")
        self.positions[("end", relationship_name, index)] = (entity.line, entity.column)
        return RelationshipEnd(entity.text, self.parse_cardinality())

    def parse_cardinality(self):
        token = self.current()
        if token.kind != "int":
            self.fail("cardinality")
        minimum = int(self.advance().text)
        if self.current().kind != "range":
            return Cardinality(minimum, minimum)
        self.advance()
        upper = self.current()
        if upper.kind == "int":
            self.advance()
            return Cardinality(minimum, int(upper.text))
        if upper.text in _UNBOUNDED:
            self.advance()
            return Cardinality(minimum, None)
        self.fail("upper bound (a number, 'n', 'm' or '*')")
        return None


def parse_erd(text):
    """
    Parses and validates ERD source text. Returns the ERModel, or raises
    ErdErrors listing every positioned syntax or validation problem.
    """
    parser = _ErdParser(tokenize_erd(text))
    model = parser.parse_model()
    problems = validate_model(model)
    if problems:
        errors = []
        for where, message in problems:
            line, column = parser.positions.get(where, (0, 0))
            errors.append(ErdError(message, line, column))
        raise ErdErrors(errors)
    return model


def render_erd(model):
    """
    Renders a model in canonical ERD text; parse_erd(render_erd(m)) == m.
    """
    lines = ["model %s" % model.name]
    for entity in model.entities:
        lines.append("")
        lines.append("entity %s {" % entity.name)
        for attribute in entity.attributes:
            text = "  %s: %s" % (attribute.name, attribute.domain)
            if attribute.key != KeyStatus.NO_KEY:
                text += " " + attribute.key.value
            if attribute.nullable:
                text += " null"
            lines.append(text)
        lines.append("}")
    for relationship in model.relationships:
        lines.append("")
        header = "relationship %s" % relationship.name
        if relationship.role:
            header += " as %s" % relationship.role
        lines.append(header + " {")
        for end in (relationship.end_a, relationship.end_b):
            lines.append("  %s %s" % (end.entity, end.cardinality))
        lines.append("}")
    return "\n".join(lines) + "\n"


def read_erd(path):
    """
    Reads and parses an ERD file.
    """
    with open(path, "r", encoding="utf-8") as erd_file:
        return parse_erd(erd_file.read())
