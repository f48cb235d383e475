import logging

import click

from varlattice.api.commands import config_of, dumps, run
from varlattice.services.permgroup_service import generating_set, subgroup_labels, subgroup_lattice, to_cycles
from varlattice.services.variety_service import (
    basis_of,
    bounded_theory,
    family_join,
    family_meet,
    free_object,
    holds,
    parse_handle,
    perm_group,
)
from varlattice.services.word_service import parse_identity, render_term

logger = logging.getLogger(__name__)


def group_payload(group, config):
    if group.n <= config.MAX_SUBGROUP_DEGREE:
        sub = subgroup_lattice(group.n)
        label = sub.lattice.label(sub.node_of(group))
    else:
        (label,) = subgroup_labels(group.n, [group])
    return {
        'n': group.n,
        'label': label,
        'order': group.order,
        'generators': [to_cycles(g) for g in generating_set(group)],
    }


@click.group('variety')
def variety_group():
    """Decidable varieties: T, X:m,n, Y:m,n, D:n:<generators>."""


@variety_group.command('check')
@click.argument('handle')
@click.argument('identity')
@click.option('--depth', type=int, help='Depth bound for basis handles.')
@click.option('--size', type=int, help='Size bound for basis handles.')
@click.option('--json', 'as_json', is_flag=True, help='Machine readable output.')
@click.pass_context
def check(ctx, handle, identity, depth, size, as_json):
    """Decide whether HANDLE satisfies IDENTITY."""
    def body():
        variety = parse_handle(handle)
        parsed = parse_identity(identity)
        return 'ok', {'handle': variety.text, 'identity': str(parsed),
                      'holds': holds(variety, parsed, depth_bound=depth, size_bound=size)}

    run(ctx, body, as_json, lambda p: 'true' if p['holds'] else 'false')


@variety_group.command('join')
@click.argument('first')
@click.argument('second')
@click.option('--json', 'as_json', is_flag=True, help='Machine readable output.')
@click.pass_context
def join(ctx, first, second, as_json):
    """Join of two members of the X/Y family."""
    def body():
        result = family_join(parse_handle(first), parse_handle(second))
        return 'ok', {'handle': result.text, 'label': result.label}

    run(ctx, body, as_json, lambda p: p['handle'])


@variety_group.command('meet')
@click.argument('first')
@click.argument('second')
@click.option('--json', 'as_json', is_flag=True, help='Machine readable output.')
@click.pass_context
def meet(ctx, first, second, as_json):
    """Meet of two members of the X/Y family."""
    def body():
        result = family_meet(parse_handle(first), parse_handle(second))
        return 'ok', {'handle': result.text, 'label': result.label}

    run(ctx, body, as_json, lambda p: p['handle'])


@variety_group.command('permgroup')
@click.argument('handle')
@click.argument('k', type=int)
@click.option('--json', 'as_json', is_flag=True, help='Machine readable output.')
@click.pass_context
def permgroup(ctx, handle, k, as_json):
    """Perm_K(HANDLE): the permutations whose identities hold."""
    def body():
        return 'ok', group_payload(perm_group(parse_handle(handle), k), config_of(ctx))

    run(ctx, body, as_json, lambda p: f"{p['label']} (order {p['order']})")


@variety_group.command('free')
@click.argument('handle')
@click.argument('k', type=int)
@click.option('--table', is_flag=True, help='Include the multiplication table.')
@click.option('--json', 'as_json', is_flag=True, help='Machine readable output.')
@click.pass_context
def free(ctx, handle, k, table, as_json):
    """Relatively free object of HANDLE on K generators."""
    def body():
        obj = free_object(parse_handle(handle), k)
        payload = {
            'handle': obj.variety.text,
            'generators': list(obj.generators),
            'elements': [render_term(t) for t in obj.elements],
            'size': len(obj),
        }
        if table:
            payload['table'] = obj.table().tolist()
        return 'ok', payload

    run(ctx, body, as_json, dumps)


@variety_group.command('basis')
@click.argument('handle')
@click.option('--json', 'as_json', is_flag=True, help='Machine readable output.')
@click.pass_context
def basis(ctx, handle, as_json):
    """A finite basis of identities for HANDLE."""
    def body():
        variety = parse_handle(handle)
        return 'ok', {'handle': variety.text, 'basis': [str(identity) for identity in basis_of(variety)]}

    run(ctx, body, as_json, lambda p: '\n'.join(p['basis']))


@variety_group.command('theory')
@click.argument('handle')
@click.option('--max-len', default=3, show_default=True, type=int)
@click.option('--letters', default=2, show_default=True, type=int)
@click.option('--json', 'as_json', is_flag=True, help='Machine readable output.')
@click.pass_context
def theory(ctx, handle, max_len, letters, as_json):
    """Identity classes of HANDLE on words of bounded length."""
    def body():
        variety = parse_handle(handle)
        bounded = bounded_theory(variety, max_len, letters)
        zero = bounded.zero_class
        classes = [
            {'zero': index == zero, 'words': [str(w) for w in words]}
            for index, words in enumerate(bounded.classes())
        ]
        return 'ok', {'handle': variety.text, 'max_len': max_len, 'letters': letters, 'classes': classes}

    run(ctx, body, as_json, dumps)
