from torus_models.diagrams import DiagramMap, is_extended, is_p_module, is_qce
from torus_models.functors.euler_adapted import counit_e_pi_shriek_e
from torus_models.functors.extended import gamma_d_rank1, gamma_v, hom_bijection_witness
from torus_models.functors.pushforward import apply_e
from torus_models.instances import Instance
from torus_models.modules import ModuleMap
from torus_models.workbench_base import Law, SuiteBase


def scaled(phi: DiagramMap, k: int) -> DiagramMap:
    """k·φ, component by component."""
    components = {}
    for node, mm in phi.components.items():
        images = tuple(tuple(x.scale(x.denominator.ring.one * k) for x in column) for column in mm.images)
        components[node] = ModuleMap(mm.source, mm.target, mm.reindex, images)
    return DiagramMap(f"{k}·{phi.name}", phi.source, phi.target, components)


class GammaVSuite(SuiteBase):
    """
    The extended functor Γ_v with its counit λ, and Γ^f_d in rank 1.
    """

    name = "gamma_v"
    ranks = (1, 2)

    def laws(self, instance: Instance) -> list[Law]:
        laws = [
            Law("output-extended", "in order of increasing codimension", lambda: self._extended(instance)),
            Law("counit-iso-on-extended", "inverse limit of a diagram", lambda: self._counit(instance)),
            Law("hom-bijection", "$k^!(L)=\\ilim$", lambda: self._hom_bijection(instance)),
        ]
        if instance.rank == 1:
            laws.append(Law("gamma-d", "$\\cEi_G M(1)$", lambda: self._gamma_d(instance)))
        return laws

    def _samples(self, instance: Instance, model: str = "A_c^f") -> list:
        return instance.corpus(model)[: self.settings.adjunction_samples]

    def _extended(self, instance: Instance) -> str | None:
        for m in self._samples(instance):
            report = is_extended(gamma_v(m).module, self.settings)
            if not report.passed:
                return f"Γ_v({m.name}): {report.witness}"
        return None

    def _counit(self, instance: Instance) -> str | None:
        settings = self.settings
        for m in self._samples(instance):
            extended = is_extended(m, settings).passed
            iso = gamma_v(m).counit.iso_witness(settings) is None
            if extended != iso:
                state = "extended" if extended else "not extended"
                return f"{m.name} is {state} but λ {'is' if iso else 'is not'} an isomorphism"
        return None

    def _hom_bijection(self, instance: Instance) -> str | None:
        """Lifts k·λ through λ for (Γ_v M, M), k = 1, 2, …; the lift of λ must be the identity."""
        for k, m in enumerate(instance.corpus("A_c^f")[: self.settings.hom_samples], start=1):
            extended = gamma_v(m)
            phi = extended.counit if k == 1 else scaled(extended.counit, k)
            witness = hom_bijection_witness(phi, extended, self.settings)
            if witness:
                return f"(Γ_v({m.name}), {m.name}): {witness}"
        return None

    def _gamma_d(self, instance: Instance) -> str | None:
        """Γ^f_d M is an extended p-module and eΓ^f_d M ≅ Γ_v eM through the counit."""
        settings, rf = self.settings, instance.rc_f
        for m in self._samples(instance, "A_d^f"):
            if not is_qce(m, settings).passed:
                continue
            g = gamma_d_rank1(m, rf, instance.d, settings)
            for report in (is_extended(g, settings), is_p_module(g, settings)):
                if not report.passed:
                    return f"{g.name}: not {report.predicate}: {report.witness}"
            inner = gamma_v(apply_e(m, rf)).module
            witness = counit_e_pi_shriek_e(apply_e(g, rf), inner).iso_witness(settings)
            if witness:
                return f"eΓ^f_d({m.name}) → Γ_v e({m.name}) at {witness}"
        return None
