import pytest

from syzlab.catalog import fermat, one_node_job
from syzlab.field import PrimeField, sample_verification_primes
from syzlab.linalg import PrimePolicy
from syzlab.nodal import chebyshev_hypersurface, chebyshev_node_set


@pytest.fixture(scope="session")
def policy():
    return PrimePolicy()


@pytest.fixture(scope="session")
def big_field():
    return sample_verification_primes(1, seed=11)[0]


@pytest.fixture(scope="session")
def cheb34():
    return chebyshev_hypersurface(3, 4, -1)


@pytest.fixture(scope="session")
def cheb34_nodes():
    F = sample_verification_primes(1, congruence=8)[0]
    return chebyshev_node_set(3, 4, -1, F)


@pytest.fixture(scope="session")
def one_node_surface():
    return one_node_job(3, 3)


@pytest.fixture(scope="session")
def fermat_cubic():
    return fermat(3, 3)


@pytest.fixture(scope="session")
def gf13():
    return PrimeField(13)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(RESULTS, key=lambda k: (int(str(k).rstrip("x")), str(k))):
            terminalreporter.write_line(RESULTS[key])
