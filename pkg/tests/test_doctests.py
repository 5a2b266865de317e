import doctest

import pytest

import dlq.cohom
import dlq.poly
import dlq.rootsys


@pytest.mark.parametrize("module", [dlq.poly, dlq.rootsys, dlq.cohom])
def test_doctests(module):
    result = doctest.testmod(module)
    assert result.failed == 0 and result.attempted > 0
