from torus_models.diagrams import DiagramMap, ModuleDiagram, is_qc, same_diagram
from torus_models.functors.euler_adapted import (
    comparison_pi_shriek_e,
    counit_e_pi_shriek_e,
    pi_shriek_e,
)
from torus_models.functors.multiplicity import (
    comparison_q_shriek_d_e,
    counit_e_q_shriek_d,
    e_q,
    e_q_map,
    q_shriek_d,
)
from torus_models.functors.pushforward import (
    apply_e,
    apply_e_map,
    intersections_witness,
    pi_shriek,
    pi_shriek_ring,
    pi_star,
    sandwich_witness,
    shriek_triangles_witness,
    star_triangles_witness,
)
from torus_models.instances import Instance
from torus_models.settings import EngineSettings
from torus_models.workbench_base import Law, SuiteBase


def map_witness(phi: DiagramMap, settings: EngineSettings, iso: bool = True) -> str | None:
    """Naturality, then (optionally) bijectivity of a map of diagrams."""
    witness = phi.naturality_witness(settings)
    if witness:
        return f"{phi.name} is not natural: {witness}"
    if iso:
        witness = phi.iso_witness(settings)
        if witness:
            return f"{phi.name} is not an isomorphism at {witness}"
    return None


class AdjunctionsSuite(SuiteBase):
    """
    Units, counits and triangle identities of π_* ⊣ e ⊣ π_!, e ⊣ π_!^e and e ⊣ q_!^d,
    with π the dimension map d.
    """

    name = "adjunctions"

    def laws(self, instance: Instance) -> list[Law]:
        return [
            Law("e-pi-shriek-identity", "We find $e\\pi_!=1$", lambda: self._e_pi_shriek(instance)),
            Law("pi-star-sandwich", "lies between the sum and the product", lambda: self._sandwich(instance)),
            Law(
                "pi-star-intersections",
                "$(\\pi_*X)(\\Fb,\\Lb_j)=\\RRbf(\\Fb)\\cdot \\pi_!(\\Lb_j\\lra \\Fb)(X(\\Lb_j))$",
                lambda: self._intersections(instance),
            ),
            Law("pi-star-e-triangles", "We will describe adjoint pairs", lambda: self._star_triangles(instance)),
            Law("e-pi-shriek-triangles", "We will describe adjoint pairs", lambda: self._shriek_triangles(instance)),
            Law("e-pi-shriek-e", "The counit $e\\pes M\\lra M$", lambda: self._pi_shriek_e(instance)),
            Law(
                "e-q-shriek-d",
                "$(q_!^d\\Mt)(K\\supseteq L)=\\cEi_K \\prod_{\\tL}\\Mt(\\tL)$",
                lambda: self._q_shriek_d(instance),
            ),
        ]

    def _samples(self, instance: Instance, model: str = "A_c^f") -> list[ModuleDiagram]:
        return instance.corpus(model)[: self.settings.adjunction_samples]

    def _e_pi_shriek(self, instance: Instance) -> str | None:
        pushed = pi_shriek_ring(instance.rc_f, instance.d, self.settings)
        for m in self._samples(instance):
            witness = same_diagram(apply_e(pi_shriek(m, instance.d, pushed)), m, self.settings)
            if witness:
                return f"eπ_!({m.name}): {witness}"
        return None

    def _sandwich(self, instance: Instance) -> str | None:
        for x in self._samples(instance):
            witness = sandwich_witness(x, pi_star(x, instance.d))
            if witness:
                return f"π_*({x.name}): {witness}"
        return None

    def _intersections(self, instance: Instance) -> str | None:
        for x in self._samples(instance):
            witness = intersections_witness(x, instance.d, self.settings)
            if witness:
                return f"{x.name}: {witness}"
        return None

    def _star_triangles(self, instance: Instance) -> str | None:
        samples = self._samples(instance)
        pushed = pi_shriek_ring(instance.rc_f, instance.d, self.settings)
        for x, other in zip(samples, samples[1:] + samples[:1]):
            xbar = pi_shriek(other, instance.d, pushed)
            witness = star_triangles_witness(x, xbar, instance.d, self.settings)
            if witness:
                return f"({x.name}, {xbar.name}): {witness}"
        return None

    def _shriek_triangles(self, instance: Instance) -> str | None:
        samples = self._samples(instance)
        pushed = pi_shriek_ring(instance.rc_f, instance.d, self.settings)
        for m, other in zip(samples, samples[1:] + samples[:1]):
            mbar = pi_shriek(other, instance.d, pushed)
            witness = shriek_triangles_witness(m, mbar, instance.d, self.settings)
            if witness:
                return f"({m.name}, {mbar.name}): {witness}"
        return None

    def _pi_shriek_e(self, instance: Instance) -> str | None:
        settings, d, rf, rd = self.settings, instance.d, instance.rc_f, instance.rd_f
        for m in self._samples(instance):
            if not is_qc(m, settings).passed:
                continue
            pushed = pi_shriek_e(m, d, ring=rd)
            e_pushed = apply_e(pushed, rf)
            witness = map_witness(counit_e_pi_shriek_e(e_pushed, m), settings)
            if witness:
                return witness
            again = pi_shriek_e(e_pushed, d, ring=rd)
            comparison = comparison_pi_shriek_e(again, pushed)
            witness = map_witness(comparison, settings)
            if witness:
                return witness
            e_again = apply_e(again, rf)
            left = apply_e_map(comparison, e_again, e_pushed)
            right = counit_e_pi_shriek_e(e_again, e_pushed)
            if not left.equals(right, settings):
                return f"{m.name}: e of the comparison is not the counit"
        return None

    def _q_shriek_d(self, instance: Instance) -> str | None:
        settings, system = self.settings, instance.multiplicity
        ra_p, rc_p = instance.ra_p, instance.rc_p
        for n in self._samples(instance, "A_a^p"):
            pushed = q_shriek_d(n, system, rc_p)
            witness = map_witness(counit_e_q_shriek_d(e_q(pushed, system, ra_p), n), settings)
            if witness:
                return witness
        for m in self._samples(instance, "A_c^p"):
            em = e_q(m, system, ra_p)
            pushed = q_shriek_d(em, system, rc_p)
            comparison = comparison_q_shriek_d_e(pushed, m)
            witness = map_witness(comparison, settings)
            if witness:
                return witness
            e_pushed = e_q(pushed, system, ra_p)
            left = e_q_map(comparison, system, e_pushed, em)
            right = counit_e_q_shriek_d(e_pushed, em)
            if not left.equals(right, settings):
                return f"{m.name}: e of the comparison is not the counit"
        return None
