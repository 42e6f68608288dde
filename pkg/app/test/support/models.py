"""
Random generator of valid ER models.
"""
from __future__ import annotations

from app.db.values import SQLType
from app.erd.model import (Attribute, Cardinality, Entity, ERModel, KeyStatus,
                           Relationship, RelationshipEnd)

CARDINALITIES = [
    Cardinality(0, 1),
    Cardinality(1, 1),
    Cardinality(0, None),
    Cardinality(1, None),
    Cardinality(2, 5),
]


def random_attribute(rng, index):
    key = rng.choice([KeyStatus.NO_KEY, KeyStatus.NO_KEY, KeyStatus.UNIQUE,
                      KeyStatus.PRIMARY_KEY])
    nullable = key != KeyStatus.PRIMARY_KEY and rng.random() < 0.3
    return Attribute("A%d" % index, rng.choice(list(SQLType)), key, nullable)


def random_model(rng, max_entities=4, max_relationships=4):
    """
    A valid model with 1..max_entities entities and up to max_relationships
    relationships, self relationships included.
    """
    entities = []
    for number in range(rng.randint(1, max_entities)):
        attributes = tuple(random_attribute(rng, index)
                           for index in range(rng.randint(1, 4)))
        entities.append(Entity("E%d" % number, attributes))
    relationships = []
    for number in range(rng.randint(0, max_relationships)):
        role = "Role%d" % number if rng.random() < 0.3 else None
        relationships.append(Relationship(
            "R%d" % number,
            RelationshipEnd(rng.choice(entities).name, rng.choice(CARDINALITIES)),
            RelationshipEnd(rng.choice(entities).name, rng.choice(CARDINALITIES)),
            role))
    return ERModel("M%d" % rng.randint(0, 999), tuple(entities), tuple(relationships))
