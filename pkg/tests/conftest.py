import pytest
from hypothesis import settings

from pdsreduce.markov import induced_chain
from pdsreduce.pcp import PcpInstance
from pdsreduce.pushdown import QUANTUM
from pdsreduce.reduction import Z_BOTTOM, pair, reduce_instance

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")

# the four-pair stack used throughout: (A,A)(A,•)(•,A)(B,B), top first
WORKED_ALPHA = (pair("A", "A"), pair("A", "•"), pair("•", "A"), pair("B", "B"))


def stack(head, alpha=WORKED_ALPHA):
    return (head,) + tuple(alpha) + (Z_BOTTOM,)


@pytest.fixture(scope="session")
def aa_reduction():
    return reduce_instance(PcpInstance.of(("A", "A")))


@pytest.fixture(scope="session")
def aa_quantum():
    return reduce_instance(PcpInstance.of(("A", "A")), QUANTUM)


@pytest.fixture(scope="session")
def aa_chain(aa_reduction):
    return induced_chain(aa_reduction.system)




_ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request):
    return request.config.stash.setdefault(_ACCEPTANCE_KEY, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
