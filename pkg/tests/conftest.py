import pytest

from twisted_hurwitz.matching_seq import matching_seq_from_labels
from twisted_hurwitz.perm_core import parse_permutation


@pytest.fixture
def perm():
    def make(text, n=2):
        return parse_permutation(text, n)

    return make


@pytest.fixture
def ms_projective():
    # n=2, m=2, lambda=(2): one face on a projective plane
    return matching_seq_from_labels(2, ["(1 -1)(2 -2)", "(1 2)(-1 -2)", "(1 -2)(-1 2)"])


@pytest.fixture
def ms_sphere():
    # n=2, m=2, lambda=(1,1)
    return matching_seq_from_labels(2, ["(1 -1)(2 -2)", "(1 2)(-1 -2)", "(1 -1)(2 -2)"])


ACCEPTANCE_LOG: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LOG:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LOG:
            terminalreporter.write_line(line)
