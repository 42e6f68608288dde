"""
Consistency rules for ER models.
"""
from __future__ import annotations

from .model import KEY_COLUMN, KeyStatus
from .transform import foreign_key_placement


def validate_model(model):
    """
    Checks a model and returns a list of (location, message) pairs, empty when
    the model is valid. Locations are tuples understood by the ERD parser's
    position table, e.g. ("entity", "Student").
    """
    problems = []
    entity_names = set()
    for entity in model.entities:
        where = ("entity", entity.name)
        if entity.name in entity_names:
            problems.append((where, "duplicate entity '%s'" % entity.name))
        entity_names.add(entity.name)
        if not entity.attributes:
            problems.append((where, "entity '%s' has no attributes" % entity.name))
        problems.extend(_check_attributes(entity))

    relationship_names = set()
    for relationship in model.relationships:
        where = ("relationship", relationship.name)
        if relationship.name in relationship_names:
            problems.append((where, "duplicate relationship '%s'" % relationship.name))
        elif relationship.name in entity_names:
            problems.append((where, "relationship '%s' has the name of an entity"
                             % relationship.name))
        relationship_names.add(relationship.name)
        for index, end in enumerate((relationship.end_a, relationship.end_b)):
            end_where = ("end", relationship.name, index)
            if end.entity not in entity_names:
                problems.append((end_where, "unknown entity '%s'" % end.entity))
            cardinality = end.cardinality
            if cardinality.minimum < 0:
                problems.append((end_where, "negative cardinality %s" % cardinality))
            if cardinality.maximum is not None and (
                    cardinality.maximum < 1 or cardinality.minimum > cardinality.maximum):
                problems.append((end_where, "invalid cardinality %s" % cardinality))

    if not problems:
        problems.extend(_check_generated_columns(model))
    return problems


def _check_attributes(entity):
    problems = []
    seen = set()
    for attribute in entity.attributes:
        where = ("attribute", entity.name, attribute.name)
        if attribute.name == KEY_COLUMN:
            problems.append((where, "attribute name '%s' is reserved" % KEY_COLUMN))
        elif attribute.name in seen:
            problems.append((where, "duplicate attribute '%s' in entity '%s'"
                             % (attribute.name, entity.name)))
        seen.add(attribute.name)
        if attribute.key == KeyStatus.PRIMARY_KEY and attribute.nullable:
            problems.append((where, "key attribute '%s.%s' cannot be null"
                             % (entity.name, attribute.name)))
    return problems


def _check_generated_columns(model):
    problems = []
    columns = dict((entity.name, set(a.name for a in entity.attributes))
                   for entity in model.entities)
    for relationship in model.relationships:
        holder, names = foreign_key_placement(relationship)
        if holder not in columns:
            continue
        for name in names:
            if name in columns[holder]:
                problems.append((("relationship", relationship.name),
                                 "foreign-key column '%s.%s' of relationship '%s' "
                                 "clashes with an existing column"
                                 % (holder, name, relationship.name)))
            columns[holder].add(name)
    return problems
