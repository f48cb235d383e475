from typing import Any, Callable, Optional, Tuple
import json
import logging
import time

import click
from marshmallow import ValidationError

from varlattice.api.schemas.result import CommandResultSchema
from varlattice.core.config import Config
from varlattice.core.errors import SchemaError, VarLatticeError

logger = logging.getLogger(__name__)

Outcome = Tuple[str, Any]


def config_of(ctx: click.Context):
    return ctx.obj or Config


def dumps(document: Any) -> str:
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False)


def write_text(path: str, text: str):
    with open(path, 'w', encoding='utf-8') as f:
        f.write(text)
    logger.info(f"Wrote {path}")


def run(ctx: click.Context, body: Callable[[], Outcome], as_json: bool = False,
        text: Optional[Callable[[Any], str]] = None):
    """Run a command body returning (status, payload); print the result and exit with its code."""
    started = time.perf_counter()
    try:
        status, payload = body()
        code = 0 if status == 'ok' else 1
    except ValidationError as e:
        error = SchemaError("Document failed validation", e.messages)
        logger.error(f"{error.message}: {e.messages}")
        status, payload, code = 'error', error.to_payload(), error.exit_code
    except VarLatticeError as e:
        logger.error(f"{type(e).__name__}: {e.message}")
        status, payload, code = 'error', e.to_payload(), e.exit_code

    elapsed = round((time.perf_counter() - started) * 1000, 3)
    result = CommandResultSchema().dump({'status': status, 'payload': payload, 'elapsed': elapsed})
    if as_json:
        click.echo(dumps(result))
    elif status == 'error':
        click.echo(f"Error: {payload['message']}", err=True)
    else:
        click.echo(text(payload) if text else dumps(payload))
        if status == 'violation':
            click.echo("Violations found", err=True)
    ctx.exit(code)
