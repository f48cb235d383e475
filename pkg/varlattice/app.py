import click

from varlattice import __version__
from varlattice.api import setup_commands
from varlattice.core.config import Config
from varlattice.core.logging import setup_logging


@click.group()
@click.option('--verbose', is_flag=True, help='Log at DEBUG level on stderr.')
@click.version_option(__version__, prog_name='varlattice')
@click.pass_context
def cli(ctx, verbose):
    """Cancellable elements in lattices of semigroup varieties."""
    # Setup logging
    setup_logging(Config, verbose)

    # Load configuration
    Config.init_app(ctx)


def create_cli():
    """Create the command line application."""
    setup_commands(cli)
    return cli


def main():
    create_cli()(prog_name='varlattice')


if __name__ == '__main__':
    main()
