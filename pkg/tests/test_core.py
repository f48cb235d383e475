import logging
from logging.handlers import RotatingFileHandler
from types import SimpleNamespace

import pytest

from varlattice.core.config import Config
from varlattice.core.errors import (
    CycleDetected,
    DegreeTooLarge,
    InputError,
    MathematicalError,
    NotALattice,
    SchemaError,
    WordSyntaxError,
)
from varlattice.core.logging import setup_logging


def test_config_defaults():
    assert Config.MAX_SUBGROUP_DEGREE == 5
    assert Config.DEFAULT_DEPTH >= 1
    assert (Config.EXPECTATIONS_DIR / 'sub_s4.yaml').exists()
    assert (Config.TEMPLATE_DIR / 'hasse.dot.j2').exists()


def test_init_app_binds_the_context():
    ctx = SimpleNamespace(obj=None)
    Config.init_app(ctx)
    assert ctx.obj is Config


@pytest.mark.parametrize('error, code', [
    (InputError('bad'), 2),
    (SchemaError('bad document', {'elements': ['missing']}), 2),
    (DegreeTooLarge(7, 5), 2),
    (WordSyntaxError('Unexpected token', 'x )', 2), 2),
    (MathematicalError('no'), 1),
    (NotALattice(('a', 'b'), 'join'), 1),
    (CycleDetected(['a', 'b', 'a']), 1),
])
def test_exit_codes(error, code):
    assert error.exit_code == code


def test_error_payloads():
    assert DegreeTooLarge(7, 5).to_payload() == {
        'error': 'DegreeTooLarge',
        'message': 'Degree 7 exceeds the supported maximum 5',
        'details': {'n': 7, 'limit': 5},
    }
    assert InputError('plain').to_payload() == {'error': 'InputError', 'message': 'plain'}
    payload = NotALattice(('a', 'b'), 'join').to_payload()
    assert payload['details'] == {'pair': ['a', 'b'], 'reason': 'join'}


def test_word_syntax_error_position():
    error = WordSyntaxError('Unexpected token', 'x )', 2)
    assert error.position == 2
    assert str(error) == 'Unexpected token at position 2'


def test_setup_logging_keeps_existing_handlers():
    root = logging.getLogger()
    before = list(root.handlers)
    setup_logging(Config)
    assert root.handlers == before


def test_setup_logging_with_file(tmp_path, monkeypatch):
    root = logging.getLogger()
    monkeypatch.setattr(root, 'handlers', [])
    monkeypatch.setattr(root, 'level', root.level)
    config = SimpleNamespace(LOG_LEVEL='info', LOG_TO_FILE=True, LOG_DIR=str(tmp_path / 'logs'),
                             LOG_FILE='varlattice.log')
    setup_logging(config, verbose=True)
    try:
        assert root.level == logging.DEBUG
        files = [h for h in root.handlers if isinstance(h, RotatingFileHandler)]
        assert len(files) == 1
        assert (tmp_path / 'logs' / 'varlattice.log').exists()
    finally:
        for handler in root.handlers:
            handler.close()
