"""Run every module's doctests so the examples in docstrings stay honest."""

import doctest

import pytest

import zelmap
from zelmap import (
    cli,
    exact_linalg,
    harness,
    multiplicity,
    quiver,
    representation,
    zelevinsky,
)

MODULES = [
    zelmap,
    cli,
    exact_linalg,
    harness,
    multiplicity,
    quiver,
    representation,
    zelevinsky,
]


@pytest.mark.parametrize("module", MODULES, ids=lambda m: m.__name__)
def test_module_doctests(module):
    result = doctest.testmod(module)
    assert result.failed == 0
    if module in (exact_linalg, quiver):
        assert result.attempted > 0
