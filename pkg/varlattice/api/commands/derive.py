import logging

import click

from varlattice.api.commands import run
from varlattice.api.schemas.trace import DeductionResultSchema
from varlattice.core.errors import InputError
from varlattice.services.deduction_service import Proved, compile_rules, derive
from varlattice.services.variety_service import basis_of, parse_handle
from varlattice.services.word_service import parse_identity

logger = logging.getLogger(__name__)


def format_result(payload) -> str:
    lines = [f"{payload['goal']}: {payload['verdict']}"]
    for trace in payload.get('traces', []):
        for step in trace:
            rule = '' if step['rule_index'] is None else f"   [rule {step['rule_index']} {step['orientation']}]"
            lines.append(f"  {step['word']}{rule}")
    if payload.get('reason'):
        lines.append(f"  {payload['reason']}")
    return '\n'.join(lines)


@click.command('derive')
@click.argument('goal')
@click.option('--basis', 'basis_texts', multiple=True, help='Basis identity; repeat for each one.')
@click.option('--handle', help='Use the basis of a variety handle instead.')
@click.option('--depth', type=int, help='Depth bound (defaults to the configured depth).')
@click.option('--size', type=int, help='Size bound on intermediate words.')
@click.option('--literal', is_flag=True, help='Expand w = 0 into w z = w and z w = w.')
@click.option('--json', 'as_json', is_flag=True, help='Machine readable output.')
@click.pass_context
def derive_command(ctx, goal, basis_texts, handle, depth, size, literal, as_json):
    """Search for a deduction of GOAL from a finite basis."""
    def body():
        basis = [parse_identity(text) for text in basis_texts]
        if handle:
            basis += list(basis_of(parse_handle(handle)))
        if not basis:
            raise InputError("Give at least one --basis identity or a --handle")
        target = parse_identity(goal)
        verdict = derive(basis, target, depth_bound=depth, size_bound=size, literal=literal)
        payload = {
            'goal': str(target),
            'verdict': verdict.verdict,
            'rules': [str(rule) for rule in compile_rules(basis, literal=literal)],
        }
        if isinstance(verdict, Proved):
            payload['traces'] = [trace.to_list() for trace in verdict.traces]
        else:
            payload['explored'] = verdict.explored
            payload['reason'] = verdict.reason
        return 'ok', DeductionResultSchema().dump(payload)

    run(ctx, body, as_json, format_result)
