import numpy as np
import pytest

from oris_rsma.channel import ChannelRealization

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def make_realization(cascade0, cascade1, h_d=(0.0, 0.0), g=None):
    """Realization whose per-element products G_j * h_ris,k,j equal the given values."""
    cascade = np.array([cascade0, cascade1], dtype=complex)
    if g is None:
        g = np.ones(cascade.shape[1], dtype=complex)
    g = np.asarray(g, dtype=complex)
    return ChannelRealization(g=g, h_ris=cascade / g[None, :], h_d=np.asarray(h_d, dtype=complex))
