"""
Law suites run by the workbench, one per family of laws.
"""

from torus_models.suites.adjunctions import AdjunctionsSuite
from torus_models.suites.equivalences import EquivalencesSuite
from torus_models.suites.euler import EulerSuite
from torus_models.suites.gamma_v import GammaVSuite
from torus_models.suites.posets import PosetsSuite
from torus_models.suites.predicates import PredicatesSuite
from torus_models.suites.rank1 import Rank1Suite

__all__ = [
    "AdjunctionsSuite",
    "EquivalencesSuite",
    "EulerSuite",
    "GammaVSuite",
    "PosetsSuite",
    "PredicatesSuite",
    "Rank1Suite",
]
