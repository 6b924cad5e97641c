from torus_models.errors import ConstructionError
from torus_models.functors.euler_adapted import continuity_mismatches
from torus_models.instances import Instance, compare_vertex_values
from torus_models.posets import node_label
from torus_models.rings import (
    EulerSystem,
    euler_class,
    euler_system_standard,
    linear_form,
    same_localization,
    termwise_inflation,
)
from torus_models.subgroups import Character, cyclic, trivial
from torus_models.workbench_base import Law, SuiteBase

VARIANTS = ("RRc", "RRcb-diagonal", "RRcb-componentwise")


def transitivity_witness(system: EulerSystem) -> str | None:
    """The first chain H ⊇ K ⊇ L on which the system is not transitive."""
    sigma = system.sigma
    for l in sigma.nodes:
        for k in [l] + sigma.above(l):
            for h in [k] + sigma.above(k):
                if not system.transitivity_check(h, k, l):
                    return f"{system.variant}: {node_label(h)} ⊇ {node_label(k)} ⊇ {node_label(l)}"
    return None


class EulerSuite(SuiteBase):
    """
    Laws of the Euler systems and the coefficient systems they define.
    """

    name = "euler"

    def laws(self, instance: Instance) -> list[Law]:
        return [
            Law(
                "transitivity",
                "$\\cE_{H/L}=\\langle \\infl_{G/K}^{G/L}\\cE_{H/K} ,\\cE_{K/L} \\rangle$",
                lambda: self._transitivity(instance),
            ),
            Law("regularity", "the Borel-Hsiang-Quillen localization theorem", lambda: self._regularity(instance)),
            Law("euler-class-dichotomy", "c(\\alpha)(\\tH)=c_1(\\alpha^{\\tH})", self._dichotomy),
            Law("variants-localize-alike", "gives the same localization as the", lambda: self._variants(instance)),
            Law("termwise-inflation", "termwise inflation gives an isomorphism", lambda: self._inflation(instance)),
            Law("continuity", "$R^f(F):=\\cEi_{H_0/H_1}\\cEi_{H_1/H_2}\\cdots$", lambda: self._continuity(instance)),
            Law("four-models-vertices", "$(q_!R^s)^f$ and $q_!(R^f)$ are usually different", lambda: self._vertices(instance)),
        ]

    def _transitivity(self, instance: Instance) -> str | None:
        for system in (instance.euler_a, instance.euler_c):
            witness = transitivity_witness(system)
            if witness:
                return witness
        return None

    def _regularity(self, instance: Instance) -> str | None:
        failures = instance.euler_a.regularity_failures() + instance.euler_c.regularity_failures()
        return failures[0] if failures else None

    def _dichotomy(self) -> str | None:
        c = linear_form((1,), 1)
        square = euler_class(Character.of(2), cyclic(2), trivial(1))
        if square != 2 * c:
            return f"c(α²)(C2) = {square}, expected 2c"
        cube = euler_class(Character.of(3), cyclic(2), trivial(1))
        if cube != c.ring.one:
            return f"c(α³)(C2) = {cube}, expected 1"
        return None

    def _variants(self, instance: Instance) -> str | None:
        sigma = instance.sigma_c
        for variant in VARIANTS:
            other = euler_system_standard(instance.rc_s, variant)
            differences = same_localization(instance.euler_c, other)
            if differences:
                return f"{instance.variant} and {variant} differ at {differences[0]}"
            for l in sigma.nodes:
                for k in [l] + sigma.above(l):
                    if instance.euler_c.localized_value(k, l) != other.localized_value(k, l):
                        return f"{instance.variant} and {variant} give different rings at ({node_label(k)} ⊇ {node_label(l)})"
        return None

    def _inflation(self, instance: Instance) -> str | None:
        try:
            termwise_inflation(instance.rc_s)
        except ConstructionError as e:
            return str(e)
        return None

    def _continuity(self, instance: Instance) -> str | None:
        mismatches = continuity_mismatches(instance.rc_f)
        return mismatches[0] if mismatches else None

    def _vertices(self, instance: Instance) -> str | None:
        mismatches = compare_vertex_values(instance)
        return mismatches[0] if mismatches else None
