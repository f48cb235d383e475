import json

from click.testing import CliRunner
from pytest import fixture

from varlattice.app import create_cli
from varlattice.services.permgroup_service import subgroup_lattice
from varlattice.services.verification_service import load_lattice_fixtures


@fixture(scope="session")
def lattices():
    """The stored small lattices, keyed by file stem."""
    return load_lattice_fixtures()


@fixture
def n5(lattices):
    return lattices['n5']


@fixture
def m3(lattices):
    return lattices['m3']


@fixture(scope="session")
def sub_s3():
    return subgroup_lattice(3)


@fixture(scope="session")
def sub_s4():
    return subgroup_lattice(4)


@fixture(scope="session")
def cli():
    return create_cli()


@fixture
def runner():
    return CliRunner()


@fixture
def lattice_file(tmp_path):
    """Write a lattice document to a temporary JSON file and return its path."""
    def write(document, name='lattice.json'):
        path = tmp_path / name
        path.write_text(document if isinstance(document, str) else json.dumps(document))
        return str(path)
    return write
