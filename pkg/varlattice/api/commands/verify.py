import logging

import click

from varlattice.api.commands import config_of, run, write_text
from varlattice.api.schemas.result import SuiteReportSchema
from varlattice.services.template_service import TemplateService
from varlattice.services.variety_service import family_lattice
from varlattice.services.verification_service import VerificationService

logger = logging.getLogger(__name__)

SUITES = ['subgroups', 'special-elements', 'family-lattice', 'perm-transfer', 'zero-reduced',
          'incomparability', 'oracles', 'unary', 'theory-u']


def suite_options(suite, cap, n, seed, depth, max_len, letters, count):
    """Map the command line flags onto the keyword arguments of one suite."""
    if suite == 'subgroups':
        return {'n': n or 4}
    if suite == 'special-elements':
        return {'seed': seed, 'count': count}
    if suite == 'family-lattice':
        return {'caps': tuple(range(3, cap + 1)) if cap >= 3 else (cap,)}
    if suite == 'perm-transfer':
        return {'n': n, 'depth': depth}
    if suite == 'zero-reduced':
        return {'depth': depth}
    if suite == 'incomparability':
        return {'seed': seed, 'pairs': count}
    if suite == 'oracles':
        return {'max_len': max_len, 'letters': letters, 'depth': depth, 'seed': seed}
    if suite == 'unary':
        return {'seed': seed, 'count': count}
    return {'max_len': max_len, 'letters': letters, 'depth': depth}


def format_report(payload) -> str:
    verdict = 'ok' if payload['ok'] else 'VIOLATION'
    lines = [f"{payload['suite']}: {verdict} ({payload['checks']} checks)"]
    lines += [f"  - {v}" for v in payload['violations']]
    return '\n'.join(lines)


@click.command('verify')
@click.argument('suite', type=click.Choice(SUITES))
@click.option('--cap', default=6, show_default=True, type=int, help='Largest family parameter (family-lattice).')
@click.option('--n', 'n', type=int, help='Degree (subgroups, perm-transfer).')
@click.option('--seed', type=int, help='Seed of randomised suites.')
@click.option('--depth', type=int, help='Deduction depth bound.')
@click.option('--max-len', default=4, show_default=True, type=int, help='Word length bound (oracles, theory-u).')
@click.option('--letters', default=3, show_default=True, type=int, help='Alphabet size (oracles, theory-u).')
@click.option('--count', type=int, help='Number of random samples.')
@click.option('--dot', 'dot_path', type=click.Path(dir_okay=False), help='Write the family lattice as DOT.')
@click.option('--json', 'as_json', is_flag=True, help='Machine readable output.')
@click.pass_context
def verify(ctx, suite, cap, n, seed, depth, max_len, letters, count, dot_path, as_json):
    """Run an acceptance suite; exit 1 on any violated expectation."""
    config = config_of(ctx)

    def body():
        options = suite_options(suite, cap, n, seed, depth, max_len, letters, count)
        report = VerificationService(config).run(suite, **options)
        if dot_path and suite == 'family-lattice':
            lattice = family_lattice(cap)
            write_text(dot_path, TemplateService(config.TEMPLATE_DIR).render_hasse(lattice, f"family_{cap}"))
        payload = SuiteReportSchema().dump(report.to_dict())
        return ('ok' if report.ok else 'violation'), payload

    run(ctx, body, as_json, format_report)
