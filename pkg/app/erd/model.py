"""
Entity-relationship models and the relational schema derived from them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

from app.db.values import SQLType

#: Name of the surrogate primary key every table carries.
KEY_COLUMN = "Key"


class KeyStatus(Enum):
    """ Key property of an attribute. """
    PRIMARY_KEY = "key"
    UNIQUE = "unique"
    NO_KEY = ""


class RelKind(Enum):
    """ Shape of a relationship, derived from its two cardinalities. """
    ONE_TO_ONE = "OneToOne"
    ONE_TO_MANY = "OneToMany"
    MANY_TO_MANY = "ManyToMany"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Cardinality:
    """
    How many partners one row of an entity has in a relationship.
    `maximum` is None when unbounded.
    """
    minimum: int
    maximum: Optional[int] = None

    @property
    def unbounded(self):
        """ True when there is no upper bound. """
        return self.maximum is None

    @property
    def at_most_one(self):
        """ True when the upper bound is exactly one. """
        return self.maximum == 1

    def __str__(self):
        upper = "n" if self.maximum is None else str(self.maximum)
        return "%d..%s" % (self.minimum, upper)


@dataclass(frozen=True)
class Attribute:
    """ A typed entity attribute. """
    name: str
    domain: SQLType
    key: KeyStatus = KeyStatus.NO_KEY
    nullable: bool = False


@dataclass(frozen=True)
class Entity:
    """ An entity with its ordered attributes. """
    name: str
    attributes: Tuple[Attribute, ...]

    def attribute(self, name):
        """ Returns the attribute called `name`, or None. """
        for attribute in self.attributes:
            if attribute.name == name:
                return attribute
        return None


@dataclass(frozen=True)
class RelationshipEnd:
    """ One side of a relationship. """
    entity: str
    cardinality: Cardinality


@dataclass(frozen=True)
class Relationship:
    """
    A named relationship between two entities. `role` is used when naming
    the generated foreign-key columns and defaults to the relationship name.
    """
    name: str
    end_a: RelationshipEnd
    end_b: RelationshipEnd
    role: Optional[str] = None

    @property
    def role_name(self):
        """ The role used in foreign-key column names. """
        return self.role or self.name


@dataclass(frozen=True)
class ERModel:
    """ A complete entity-relationship model. """
    name: str
    entities: Tuple[Entity, ...] = ()
    relationships: Tuple[Relationship, ...] = ()

    def entity(self, name):
        """ Returns the entity called `name`, or None. """
        for entity in self.entities:
            if entity.name == name:
                return entity
        return None


@dataclass(frozen=True)
class ForeignKey:
    """ Target of a foreign-key column. """
    table: str
    column: str = KEY_COLUMN


@dataclass(frozen=True)
class ColumnDef:
    """ A column of a relational table. """
    name: str
    sql_type: SQLType
    not_null: bool = False
    primary_key: bool = False
    unique: bool = False
    foreign_key: Optional[ForeignKey] = None


@dataclass(frozen=True)
class TableDef:
    """
    A relational table. `unique_together` lists column groups that are unique
    as a whole (used by join tables).
    """
    name: str
    columns: Tuple[ColumnDef, ...]
    unique_together: Tuple[Tuple[str, ...], ...] = ()

    @property
    def primary_key(self):
        """ The primary-key column. """
        return next(column for column in self.columns if column.primary_key)

    def column(self, name):
        """ Returns the column called `name`, or None. """
        for column in self.columns:
            if column.name == name:
                return column
        return None


@dataclass(frozen=True)
class RelationalSchema:
    """ The tables derived from an ER model, in creation order. """
    tables: Tuple[TableDef, ...] = field(default_factory=tuple)

    def table(self, name):
        """ Returns the table called `name`, or None. """
        for table in self.tables:
            if table.name == name:
                return table
        return None
