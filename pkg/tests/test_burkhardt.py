"""Tests for the Burkhardt quartic."""
import pytest

from fano_defect.burkhardt import (
    BURKHARDT_EQUATION,
    burkhardt_configuration,
    burkhardt_nodes,
    burkhardt_quartic,
    write_fixture,
)
from fano_defect.fields import FieldMode, parse_node_file
from fano_defect.nodal import (
    betti_bookkeeping,
    defect_lower_bound,
    load_configuration,
    nodal_defect,
    verify_nodes,
    verify_singular_locus,
)


@pytest.fixture(scope='module')
def burkhardt():
    """The 45 nodes with the quartic."""
    return burkhardt_configuration()


def test_node_count():
    """Verify 27 nodes off the hyperplane x0 = 0 and 18 on it."""
    nodes = burkhardt_nodes()
    assert len(nodes) == 45
    assert sum(1 for node in nodes if node[0] == 0) == 18


def test_defect(burkhardt):
    """Verify rank 30 and defect 15."""
    result = nodal_defect(burkhardt)
    assert (result.nodes, result.rank, result.defect) == (45, 30, 15)
    assert defect_lower_bound(45) == result.defect


def test_betti_numbers(burkhardt):
    """Verify b3 = 30 and Weil rank 16."""
    betti = betti_bookkeeping(45, nodal_defect(burkhardt).defect, 1)
    assert (betti.b3, betti.b2_small_resolution, betti.b2_blowup) == (30, 16, 61)


def test_every_node_is_ordinary(burkhardt):
    """Verify all 45 nodes against the quartic."""
    report = verify_nodes(burkhardt)
    assert report.passed
    assert len(report.nodes) == 45


def test_nodes_are_the_whole_singular_locus(burkhardt):
    """Verify with a Groebner basis that f = grad f = 0 has exactly the 45 listed solutions."""
    report = verify_singular_locus(burkhardt)
    assert report.complete
    assert [(count.scheme_length, count.listed) for count in report.charts] == [(27, 27)] + [(36, 36)] * 4


def test_float_mode_agrees(data_dir):
    """Verify the rank through the complex embedding."""
    cfg = load_configuration(data_dir / 'burkhardt.csv', mode=FieldMode.FLOAT)
    assert cfg.mode is FieldMode.FLOAT
    assert nodal_defect(cfg).defect == 15


def test_bundled_files_match(data_dir):
    """Verify that the bundled files hold the generated nodes and the quartic."""
    mode, nodes = parse_node_file((data_dir / 'burkhardt.csv').read_text(encoding='utf-8'))
    assert mode is FieldMode.EISENSTEIN
    assert nodes == burkhardt_nodes()
    assert (data_dir / 'burkhardt.poly').read_text(encoding='utf-8').strip() == BURKHARDT_EQUATION


def test_write_fixture(tmp_path):
    """Verify that the written files load back into the same configuration."""
    nodes_path = write_fixture(tmp_path)
    cfg = load_configuration(nodes_path, tmp_path / 'burkhardt.poly')
    assert list(cfg.nodes) == burkhardt_nodes()
    assert str(cfg.quartic) == str(burkhardt_quartic())
