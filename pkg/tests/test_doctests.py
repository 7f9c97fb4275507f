import doctest
import importlib

import pytest

MODULES = ["specialfn", "fh_closed", "diffeq", "rational"]


@pytest.mark.parametrize("name", MODULES)
def test_doctests(name):
    mod = importlib.import_module(f"toeplitz_ladder.{name}")
    result = doctest.testmod(mod)
    assert result.failed == 0
