import pytest

from varlattice.core.errors import InputError
from varlattice.services.lattice_service import boolean_lattice, build_lattice, chain
from varlattice.services.template_service import TemplateService


def test_render_hasse_diagram():
    dot = TemplateService().render_hasse(boolean_lattice(2), "b2", highlight=[0])
    assert dot.startswith('digraph "b2" {')
    assert 'rankdir=BT;' in dot
    assert 'n0 [label="00", shape=box, style=filled, fillcolor=lightgrey];' in dot
    assert 'n3 [label="11"];' in dot
    assert 'n0 -> n1;' in dot
    assert dot.count('->') == 4
    assert '{ rank=same; n1; n2; }' in dot


def test_labels_are_escaped():
    lattice = build_lattice([('a"', 'b')])
    assert 'label="a\\""' in TemplateService().render_hasse(lattice)


def test_missing_template_directory(tmp_path):
    with pytest.raises(InputError):
        TemplateService(tmp_path).render_hasse(chain(2))
