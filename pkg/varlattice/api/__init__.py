from varlattice.api.commands.derive import derive_command
from varlattice.api.commands.lattice import lattice_group
from varlattice.api.commands.subgroups import subgroups
from varlattice.api.commands.variety import variety_group
from varlattice.api.commands.verify import verify


def setup_commands(cli):
    """Register all command groups."""

    # Constructions
    cli.add_command(lattice_group)
    cli.add_command(subgroups)
    cli.add_command(variety_group)

    # Deduction and acceptance suites
    cli.add_command(derive_command)
    cli.add_command(verify)
