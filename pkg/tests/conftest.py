import mpmath as mp
import pytest


@pytest.fixture
def mp30():
    with mp.workdps(30):
        yield
