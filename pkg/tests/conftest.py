from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mevmatch.instance import parse_instance

# Three single-minded searchers over four transactions; the running
# example used across the tests and the README.
EXAMPLE_DOC = """
{
  "mode": "single_minded",
  "n": 4,
  "searchers": [
    {"id": "s1", "bundle": [0, 1], "bid": "10"},
    {"id": "s2", "bundle": [2, 3], "bid": "9"},
    {"id": "s3", "bundle": [1, 3], "bid": "8"}
  ]
}
"""

EXAMPLE_BUNDLES = [frozenset({0, 1}), frozenset({2, 3}), frozenset({1, 3})]
EXAMPLE_BIDS = [Fraction(10), Fraction(9), Fraction(8)]


@pytest.fixture
def example_instance():
    return parse_instance(EXAMPLE_DOC)


@pytest.fixture
def example_raw():
    return EXAMPLE_BUNDLES, EXAMPLE_BIDS


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo the acceptance-criterion lines, which capture would otherwise hide."""
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "REPORT", None) if mod else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
