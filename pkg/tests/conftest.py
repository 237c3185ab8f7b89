import pytest

from metaplectic.cover import enumerate_cover
from metaplectic.qseries import QSeriesConfig


@pytest.fixture(scope="session")
def cover4():
    """Depth-4 enumeration: enough variety for sampled algebra/analysis tests."""
    return enumerate_cover(4)


@pytest.fixture(scope="session")
def qcfg():
    """Series config used by the certification suite (reduction on)."""
    return QSeriesConfig(tail_tolerance=1e-17, max_terms=2_000_000, min_im=1e-6)


@pytest.fixture(scope="session")
def raw_cfg():
    """Same truncation budget with fundamental-domain reduction disabled."""
    return QSeriesConfig(tail_tolerance=1e-17, max_terms=2_000_000, min_im=1e-6, reduce=False)
