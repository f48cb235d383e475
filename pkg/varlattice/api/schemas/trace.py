from marshmallow import Schema, fields, validate


class DeductionStepSchema(Schema):
    word = fields.String(required=True, metadata={'description': 'Word produced by the step; the first entry is the start word.'})
    rule_index = fields.Integer(allow_none=True, metadata={'description': 'Index of the applied rule, null for the start word.'})
    orientation = fields.String(allow_none=True, validate=validate.OneOf(['lr', 'rl']))
    substitution = fields.Dict(keys=fields.String(), values=fields.String())
    left_context = fields.String()
    right_context = fields.String()


class DeductionResultSchema(Schema):
    goal = fields.String(required=True)
    verdict = fields.String(required=True, validate=validate.OneOf(['proved', 'unknown']))
    rules = fields.List(fields.String())
    traces = fields.List(fields.List(fields.Nested(DeductionStepSchema)))
    explored = fields.Integer(allow_none=True)
    reason = fields.String(allow_none=True)
