import pytest

from rhocert.ledger import build_ledger
from rhocert.primes import build_oracle


def trial_division_is_prime(x: int) -> bool:
    if x < 2:
        return False
    d = 2
    while d * d <= x:
        if x % d == 0:
            return False
        d += 1
    return True


def trial_division_pi(x: int) -> int:
    return sum(1 for y in range(2, x + 1) if trial_division_is_prime(y))


@pytest.fixture(scope="session")
def small_oracle():
    return build_oracle(10**4)


@pytest.fixture(scope="session")
def oracle():
    return build_oracle(10**6)


@pytest.fixture(scope="session")
def ledger(oracle):
    return build_ledger(265, oracle)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, f"rep_{rep.when}", rep)
