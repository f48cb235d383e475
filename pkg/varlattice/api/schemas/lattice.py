from dataclasses import dataclass
from typing import List, Tuple

from marshmallow import Schema, fields, validate, validates, validates_schema, ValidationError, post_load


@dataclass
class LatticeDocument:
    elements: List[str]
    covers: List[Tuple[str, str]]


class LatticeDocumentSchema(Schema):
    elements = fields.List(
        fields.String(validate=validate.Length(min=1)),
        required=True,
        validate=validate.Length(min=1),
        metadata={
            'title': 'Elements',
            'description': 'Element names of the lattice, pairwise distinct.',
            'example': ['0', 'a', 'b', 'c', '1']
        }
    )
    covers = fields.List(
        fields.List(fields.String(), validate=validate.Length(equal=2)),
        required=True,
        metadata={
            'title': 'Covers',
            'description': 'Cover pairs [lower, upper]; any acyclic relation generating the order works.',
            'example': [['0', 'a'], ['a', '1']]
        }
    )

    @validates('elements')
    def validate_distinct(self, value):
        if len(set(value)) != len(value):
            raise ValidationError("Element names must be pairwise distinct.")

    @validates_schema
    def validate_cover_names(self, data, **kwargs):
        known = set(data.get('elements', []))
        for pair in data.get('covers', []):
            for name in pair:
                if name not in known:
                    raise ValidationError(f"Cover references unknown element {name}.", 'covers')

    @post_load
    def make_document(self, data, **kwargs):
        return LatticeDocument(data['elements'], [tuple(pair) for pair in data['covers']])


class ClassificationSchema(Schema):
    element = fields.String(required=True, metadata={'description': 'Element label.'})
    neutral = fields.Boolean(required=True)
    distributive = fields.Boolean(required=True)
    standard = fields.Boolean(required=True)
    modular = fields.Boolean(required=True)
    cancellable = fields.Boolean(required=True)
