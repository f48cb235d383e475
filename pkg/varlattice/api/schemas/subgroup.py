from marshmallow import Schema, fields, validate, validates_schema, ValidationError, post_load

from varlattice.core.errors import VarLatticeError
from varlattice.services.permgroup_service import Permutation, Subgroup


class SubgroupSchema(Schema):
    n = fields.Integer(
        required=True,
        validate=validate.Range(min=1),
        metadata={
            'title': 'Degree',
            'description': 'The group acts on the points 1..n.',
            'example': 3
        }
    )
    members = fields.List(
        fields.List(fields.Integer()),
        required=True,
        validate=validate.Length(min=1),
        metadata={
            'title': 'Members',
            'description': 'Every permutation of the subgroup as its image list [1p, 2p, ..., np].',
            'example': [[1, 2, 3], [2, 3, 1], [3, 1, 2]]
        }
    )
    label = fields.String(dump_only=True)
    order = fields.Integer(dump_only=True)

    @validates_schema
    def validate_subgroup(self, data, **kwargs):
        try:
            Subgroup.from_members(data['n'], [Permutation(tuple(image)) for image in data['members']])
        except VarLatticeError as e:
            raise ValidationError(e.message, 'members')

    @post_load
    def make_subgroup(self, data, **kwargs):
        return Subgroup.from_members(data['n'], [Permutation(tuple(image)) for image in data['members']])
