from torus_models.functors.rank1 import (
    DIAGONAL_UNIT,
    euler_family,
    hand_built_objects,
    rank1_e,
    rank1_model_objects,
    ring_object,
    round_trip_witness,
    square_is_pullback_witness,
    strictness_witness,
)
from torus_models.instances import Instance
from torus_models.workbench_base import Law, SuiteBase


class Rank1Suite(SuiteBase):
    """
    The rank-1 model with the infinite fiber {C_i}, through almost-everywhere families.

    The laws do not depend on the finite instance; they run alongside rank-1 instances.
    """

    name = "rank1"
    ranks = (1,)

    def laws(self, instance: Instance) -> list[Law]:
        return [
            Law("square-pullback", "the square for $N=R$ is a pullback", self._square),
            Law(
                "c-round-trips",
                "$\\cA^p_c(T)=\\{ N\\lra P \\lla V\\st \\cEi N\\cong P \\cong \\cEi R\\tensor_kV\\}$",
                self._c_round_trips,
            ),
            Law("a-round-trips", "$\\kappa$ is the continuity structure", self._a_round_trips),
            Law("strictness", "(c_1,1,1,1,1\\cdots)", self._strictness),
            Law("euler-families", "almost everywhere integral", self._euler_families),
        ]

    def _square(self) -> str | None:
        return square_is_pullback_witness(ring_object())

    def _c_round_trips(self) -> str | None:
        for obj in hand_built_objects(self.settings.rank1_objects):
            witness = round_trip_witness(obj)
            if witness:
                return f"{obj.name}: {witness}"
        return None

    def _a_round_trips(self) -> str | None:
        objects = [rank1_e(obj) for obj in hand_built_objects(self.settings.rank1_objects)]
        objects.append(rank1_model_objects("A_a^p", DIAGONAL_UNIT))
        for obj in objects:
            witness = round_trip_witness(obj)
            if witness:
                return f"{obj.name}: {witness}"
        return None

    def _strictness(self) -> str | None:
        family = strictness_witness()
        if family.is_member:
            return f"{family} was accepted into 𝓔⁻¹∏_i ℚ[c_i]"
        if not family.non_integral_indices():
            return f"{family} has no non-integral component"
        return None

    def _euler_families(self) -> str | None:
        for n in range(1, 7):
            family = euler_family(n)
            if not family.is_member:
                return f"the Euler family of z^{n} is not almost everywhere integral"
        return None
