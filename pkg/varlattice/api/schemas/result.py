from marshmallow import Schema, fields, validate

STATUSES = ['ok', 'violation', 'error']


class CommandResultSchema(Schema):
    status = fields.String(
        required=True,
        validate=validate.OneOf(STATUSES),
        metadata={
            'title': 'Status',
            'description': 'ok, violation for a falsified expectation, or error for bad input.',
            'example': 'ok'
        }
    )
    payload = fields.Raw(required=True, metadata={'description': 'Command specific JSON document.'})
    elapsed = fields.Float(
        required=True,
        metadata={
            'title': 'Elapsed',
            'description': 'Wall time of the command in milliseconds.',
            'example': 12.5
        }
    )


class SuiteReportSchema(Schema):
    suite = fields.String(required=True)
    ok = fields.Boolean(required=True)
    checks = fields.Integer(required=True)
    violations = fields.List(fields.String())
    details = fields.Dict()
