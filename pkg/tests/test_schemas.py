import pytest
from marshmallow import ValidationError

from varlattice.api.schemas.lattice import ClassificationSchema, LatticeDocument, LatticeDocumentSchema
from varlattice.api.schemas.result import CommandResultSchema
from varlattice.api.schemas.subgroup import SubgroupSchema
from varlattice.services.permgroup_service import cyclic


def test_lattice_document_loads():
    document = LatticeDocumentSchema().load({'elements': ['0', 'a', '1'], 'covers': [['0', 'a'], ['a', '1']]})
    assert isinstance(document, LatticeDocument)
    assert document.covers == [('0', 'a'), ('a', '1')]


@pytest.mark.parametrize('raw, field', [
    ({'elements': ['0', '0'], 'covers': []}, 'elements'),
    ({'elements': [], 'covers': []}, 'elements'),
    ({'elements': ['0', '1'], 'covers': [['0', '2']]}, 'covers'),
    ({'elements': ['0', '1'], 'covers': [['0', '1', '1']]}, 'covers'),
    ({'elements': ['0', '1']}, 'covers'),
])
def test_lattice_document_errors(raw, field):
    with pytest.raises(ValidationError) as e:
        LatticeDocumentSchema().load(raw)
    assert field in e.value.messages


def test_classification_dump():
    row = {'element': 'a', 'neutral': False, 'distributive': False, 'standard': False,
           'modular': True, 'cancellable': True}
    assert ClassificationSchema().dump(row) == row


def test_subgroup_schema_roundtrip():
    group = SubgroupSchema().load({'n': 3, 'members': [[1, 2, 3], [2, 3, 1], [3, 1, 2]]})
    assert group == cyclic(3, 1, 2, 3)


def test_subgroup_schema_rejects_non_subgroups():
    with pytest.raises(ValidationError) as e:
        SubgroupSchema().load({'n': 3, 'members': [[1, 2, 3], [2, 3, 1]]})
    assert 'members' in e.value.messages


def test_command_result_schema():
    dumped = CommandResultSchema().dump({'status': 'ok', 'payload': {'x': 1}, 'elapsed': 1.5})
    assert dumped == {'status': 'ok', 'payload': {'x': 1}, 'elapsed': 1.5}
    assert CommandResultSchema().validate({'status': 'maybe', 'payload': {}, 'elapsed': 0.0}) == {
        'status': ['Must be one of: ok, violation, error.']
    }
