"""Runs every acceptance criterion at its stated tolerance and runtime budget."""

import json

import pytest

from conftest import ACCEPTANCE_LINES
from treq.suite import CRITERIA


@pytest.mark.parametrize("crit", CRITERIA, ids=[f"{c.number}-{c.name}" for c in CRITERIA])
def test_criterion(crit):
    r = crit(0)
    status = "PASS" if r.passed else "FAIL"
    line = f"{status}  {r.number}. {r.name}  {r.seconds:.3f}s (budget {r.budget:g}s)"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert r.passed, json.dumps(r.detail, indent=1, default=str)
