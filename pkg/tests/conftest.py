import functools

import pytest

from graphcensus import oracle
from graphcensus.census import Mode, run_census


@functools.lru_cache(maxsize=None)
def census(n, mode, workers=1):
    return run_census(n, Mode(mode), workers=workers)


@functools.lru_cache(maxsize=None)
def oracle_census(n):
    return oracle.full_oracle_census(n)


@pytest.fixture(scope="session")
def engine():
    return census


@pytest.fixture(scope="session")
def truth():
    return oracle_census
