import sys
from pathlib import Path

import pytest
from hypothesis import settings as hypothesis_settings

# Ensure src is in path for the package itself
PROJECT_ROOT = Path(__file__).parents[1]
SRC_ROOT = PROJECT_ROOT / "src"
if str(SRC_ROOT) not in sys.path:
    sys.path.append(str(SRC_ROOT))

from torus_models.instances import gen_standard_instance  # noqa: E402
from torus_models.settings import EngineSettings  # noqa: E402
from torus_models.workbench import Workbench  # noqa: E402

# Lattice and poset properties build sympy matrices; keep example counts small.
hypothesis_settings.register_profile("fast", max_examples=30, deadline=None)
hypothesis_settings.load_profile("fast")


@pytest.fixture(scope="session")
def settings():
    """Default engine settings: window -20..40, denominator bound 8."""
    return EngineSettings()


@pytest.fixture(scope="session")
def rank1(settings):
    """
    The rank-1 instance over {1, C2, C3, T}.
    Built once per session; the diagrams are immutable and the corpus cache is shared.
    """
    return gen_standard_instance(1, "standard", settings)


@pytest.fixture(scope="session")
def rank1_minimal(settings):
    return gen_standard_instance(1, "minimal", settings)


@pytest.fixture(scope="session")
def rank2(settings):
    """The rank-2 instance over the diamond plus C2×1."""
    return gen_standard_instance(2, "standard", settings)


@pytest.fixture(scope="session")
def workbench(settings):
    return Workbench(settings)
