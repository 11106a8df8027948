"""Shared fixtures for the fano_defect tests."""
import pytest

from fano_defect.burkhardt import DATA_DIR
from fano_defect.published_table import match_solutions
from fano_defect.takeuchi import enumerate_links


@pytest.fixture(scope='session')
def genus3_links():
    """All genus-3 links without the Hodge filter."""
    return enumerate_links(3, False)


@pytest.fixture(scope='session')
def genus3_match(genus3_links):  # pylint: disable=redefined-outer-name
    """Genus-3 links matched against the published rows."""
    return match_solutions(genus3_links)


@pytest.fixture
def data_dir():
    """Directory of the bundled node and quartic files."""
    return DATA_DIR
