import json
import logging

import click

from varlattice.api.commands import config_of, run, write_text
from varlattice.api.commands.lattice import classification_payload, format_classification
from varlattice.api.schemas.subgroup import SubgroupSchema
from varlattice.core.errors import DegreeMismatch, DegreeTooLarge, SchemaError
from varlattice.services.permgroup_service import Subgroup, generating_set, subgroup_lattice, to_cycles
from varlattice.services.template_service import TemplateService
from varlattice.services.verification_service import VerificationService

logger = logging.getLogger(__name__)

FIGURE_DEGREES = (3, 4, 5)


def load_subgroup(path: str) -> Subgroup:
    """Read a subgroup JSON document: {"n": 3, "members": [[1, 2, 3], [2, 3, 1], [3, 1, 2]]}."""
    try:
        with open(path, encoding='utf-8') as f:
            raw = json.load(f)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path} is not valid JSON: {e.msg}", {'line': e.lineno})
    return SubgroupSchema().load(raw)


def format_build(payload) -> str:
    lines = [f"Sub(S_{payload['n']}): {len(payload['nodes'])} subgroups, {len(payload['covers'])} covers"]
    for node in payload['nodes']:
        lines.append(f"  {node['label']:<12} order {node['order']:<4} generated by {' '.join(node['generators']) or '()'}")
    return '\n'.join(lines)


@click.command('subgroups')
@click.argument('n', type=int)
@click.argument('action', type=click.Choice(['build', 'classify', 'figure']))
@click.option('--dot', 'dot_path', type=click.Path(dir_okay=False), help='Write the Hasse diagram as DOT.')
@click.option('--group', 'group_path', type=click.Path(exists=True, dir_okay=False),
              help='With classify: report only the subgroup in this JSON document.')
@click.option('--json', 'as_json', is_flag=True, help='Machine readable output.')
@click.pass_context
def subgroups(ctx, n, action, dot_path, group_path, as_json):
    """Build, classify or check the subgroup lattice of S_N."""
    config = config_of(ctx)

    def body():
        if n > config.MAX_SUBGROUP_DEGREE:
            raise DegreeTooLarge(n, config.MAX_SUBGROUP_DEGREE)
        sub = subgroup_lattice(n)
        lattice = sub.lattice
        highlight = []

        if action == 'build':
            schema = SubgroupSchema()
            nodes = []
            for i, group in enumerate(sub.nodes):
                node = schema.dump({'n': n, 'members': [list(p.image) for p in group.members],
                                    'label': lattice.label(i), 'order': group.order})
                node['generators'] = [to_cycles(g) for g in generating_set(group)]
                nodes.append(node)
            status, payload = 'ok', {
                'n': n,
                'nodes': nodes,
                'covers': [[lattice.label(a), lattice.label(b)] for a, b in lattice.covers()],
            }
        elif action == 'classify':
            rows = classification_payload(lattice)
            if group_path:
                group = load_subgroup(group_path)
                if group.n != n:
                    raise DegreeMismatch(group.n, n)
                label = lattice.label(sub.node_of(group))
                rows = [row for row in rows if row['element'] == label]
            highlight = [lattice.index_of(row['element']) for row in rows if row['cancellable']]
            status, payload = 'ok', {
                'n': n,
                'elements': rows,
                'cancellable': [row['element'] for row in rows if row['cancellable']],
            }
        else:
            if n not in FIGURE_DEGREES:
                raise DegreeTooLarge(n, max(FIGURE_DEGREES))
            report = VerificationService(config).run('subgroups', n=n)
            highlight = [i for i, label in enumerate(lattice.labels) if not label.startswith('G')]
            status, payload = ('ok' if report.ok else 'violation'), report.to_dict()

        if dot_path:
            write_text(dot_path, TemplateService(config.TEMPLATE_DIR).render_hasse(lattice, f"Sub(S_{n})", highlight))
        return status, payload

    text = {'build': format_build, 'classify': format_classification}.get(action)
    run(ctx, body, as_json, text)
