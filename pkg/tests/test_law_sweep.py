import sys
from pathlib import Path

import pytest

# Add scripts directory to path
# test file is at tests/test_law_sweep.py
# scripts is at scripts/
scripts_dir = Path(__file__).parents[1] / "scripts"
sys.path.append(str(scripts_dir))

from check_laws import find_law_issues


def test_law_sweep():
    """
    Runs every applicable suite on the standard instances.
    This test will fail if:
    1. Some law has a counterexample on the default window.
    2. A standard instance cannot be built.
    3. A law carries no anchor.
    4. The euler suite accepts an instance with a zero Euler class.
    """
    issues = find_law_issues()

    if issues:
        message = f"Found {len(issues)} law issues:\n" + "\n".join([str(i) for i in issues])
        pytest.fail(message)
