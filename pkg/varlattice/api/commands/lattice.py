from pathlib import Path
import json
import logging

import click

from varlattice.api.commands import dumps, run, write_text
from varlattice.api.schemas.lattice import ClassificationSchema, LatticeDocumentSchema
from varlattice.core.errors import SchemaError
from varlattice.services.lattice_service import (
    FiniteLattice,
    build_lattice,
    classify_all,
    is_distributive_lattice,
    verify_neutral_atom_equivalence,
)
from varlattice.services.template_service import TemplateService

logger = logging.getLogger(__name__)


def load_lattice(path: str) -> FiniteLattice:
    """Read a lattice JSON document: {"elements": [...], "covers": [[lower, upper], ...]}."""
    try:
        with open(path, encoding='utf-8') as f:
            raw = json.load(f)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path} is not valid JSON: {e.msg}", {'line': e.lineno})
    document = LatticeDocumentSchema().load(raw)
    return build_lattice(document.covers, document.elements)


def classification_payload(lattice: FiniteLattice):
    rows = [
        {
            'element': lattice.label(flags.element),
            'neutral': flags.neutral,
            'distributive': flags.distributive,
            'standard': flags.standard,
            'modular': flags.modular,
            'cancellable': flags.cancellable,
        }
        for flags in classify_all(lattice)
    ]
    return ClassificationSchema(many=True).dump(rows)


def format_classification(payload) -> str:
    lines = [f"{'element':<12} neutral distributive standard modular cancellable"]
    for row in payload['elements']:
        flags = [row[key] for key in ('neutral', 'distributive', 'standard', 'modular', 'cancellable')]
        lines.append(f"{row['element']:<12} " + ' '.join(f"{'yes' if flag else 'no':<{width}}"
                                                      for flag, width in zip(flags, (7, 12, 8, 7, 11))))
    return '\n'.join(lines)


@click.group('lattice')
def lattice_group():
    """Finite lattices given as JSON documents."""


@lattice_group.command('classify')
@click.argument('input_path', metavar='INPUT', type=click.Path(exists=True, dir_okay=False))
@click.option('--dot', 'dot_path', type=click.Path(dir_okay=False), help='Write the Hasse diagram as DOT.')
@click.option('--json', 'as_json', is_flag=True, help='Machine readable output.')
@click.pass_context
def classify(ctx, input_path, dot_path, as_json):
    """Classify every element as neutral, distributive, standard, modular and cancellable."""
    def body():
        lattice = load_lattice(input_path)
        rows = classification_payload(lattice)
        if dot_path:
            cancellable = [lattice.index_of(row['element']) for row in rows if row['cancellable']]
            write_text(dot_path, TemplateService().render_hasse(lattice, Path(input_path).stem, cancellable))
        return 'ok', {
            'size': lattice.size,
            'distributive': is_distributive_lattice(lattice),
            'elements': rows,
        }

    run(ctx, body, as_json, format_classification)


@lattice_group.command('neutral-atoms')
@click.argument('input_path', metavar='INPUT', type=click.Path(exists=True, dir_okay=False))
@click.option('--json', 'as_json', is_flag=True, help='Machine readable output.')
@click.pass_context
def neutral_atoms(ctx, input_path, as_json):
    """Check the neutral atom equivalence on a lattice."""
    def body():
        lattice = load_lattice(input_path)
        report = verify_neutral_atom_equivalence(lattice)
        payload = {
            'atoms': [lattice.label(a) for a in report.atoms],
            'checked': report.checked,
            'violations': report.violations,
        }
        return ('ok' if report.ok else 'violation'), payload

    run(ctx, body, as_json, dumps)
