"""
Exact algebra engine and law checker for algebraic models of rational torus-equivariant homotopy.
"""

from .instances import Instance, gen_module, gen_standard_instance
from .settings import EngineSettings
from .workbench import Workbench

__version__ = "0.1.0"

__all__ = ["EngineSettings", "Instance", "Workbench", "gen_module", "gen_standard_instance", "__version__"]
