from torus_models.diagrams import is_middle_independent, is_p_module, is_qce, same_diagram
from torus_models.functors.euler_adapted import (
    comparison_pi_shriek_e,
    comparison_pi_shriek_e_pairs,
    counit_e_pi_shriek_e,
    counit_e_pi_shriek_e_pairs,
    pi_shriek_e,
    pi_shriek_e_pairs,
    pi_shriek_e_pairs_ring,
)
from torus_models.functors.extended import gamma_v
from torus_models.functors.flags_pairs import functor_f, functor_f_map, functor_p, functor_p_map
from torus_models.functors.multiplicity import (
    comparison_q_shriek_d_e,
    counit_e_q_shriek_d,
    e_q,
    e_q_map,
    q_shriek_d,
)
from torus_models.functors.pushforward import apply_e
from torus_models.instances import Instance
from torus_models.suites.adjunctions import map_witness
from torus_models.workbench_base import Law, SuiteBase


class EquivalencesSuite(SuiteBase):
    """
    Round trips of the equivalences between the four models: flags and pairs,
    π_!^e and e on qce modules, and Γ_v q_!^d and e on the finite universe.
    """

    name = "equivalences"

    def laws(self, instance: Instance) -> list[Law]:
        return [
            Law("f-p-round-trips", "identifies $R^p$-modules as the", lambda: self._flags_pairs(instance)),
            Law(
                "pqce-flags",
                "We define a coefficient system $\\pes R$ on $\\flag (\\Sigmab)$",
                lambda: self._pqce_flags(instance),
            ),
            Law("pqce-pairs", "is a pqc-module if", lambda: self._pqce_pairs(instance)),
            Law("gamma-q-shriek-d-e", "If $\\Sigma$ is finite", lambda: self._gamma_round_trips(instance)),
        ]

    def _qce(self, instance: Instance, model: str) -> list:
        samples = instance.corpus(model)[: self.settings.adjunction_samples]
        return [m for m in samples if is_qce(m, self.settings).passed]

    def _flags_pairs(self, instance: Instance) -> str | None:
        settings = self.settings
        rf, rp = instance.rc_f, instance.rc_p
        for m in instance.corpus("A_c^f"):
            if not is_middle_independent(m, settings).passed:
                continue
            witness = same_diagram(functor_f(functor_p(m, rp), rf), m, settings)
            if witness:
                return f"fp({m.name}): {witness}"
        for n in instance.corpus("A_c^p"):
            witness = same_diagram(functor_p(functor_f(n, rf), rp), n, settings)
            if witness:
                return f"pf({n.name}): {witness}"
        for n in instance.corpus("A_a^p")[: settings.adjunction_samples]:
            witness = same_diagram(functor_p(functor_f(n, instance.ra_f), instance.ra_p), n, settings)
            if witness:
                return f"pf({n.name}): {witness}"
        return None

    def _pqce_flags(self, instance: Instance) -> str | None:
        settings, d, rf, rd = self.settings, instance.d, instance.rc_f, instance.rd_f
        for m in self._qce(instance, "A_c^f"):
            pushed = pi_shriek_e(m, d, ring=rd)
            report = is_p_module(pushed, settings)
            if not report.passed:
                return f"{pushed.name}: {report.witness}"
            e_pushed = apply_e(pushed, rf)
            witness = map_witness(counit_e_pi_shriek_e(e_pushed, m), settings)
            if witness:
                return witness
            witness = map_witness(comparison_pi_shriek_e(pi_shriek_e(e_pushed, d, ring=rd), pushed), settings)
            if witness:
                return witness
        return None

    def _pqce_pairs(self, instance: Instance) -> str | None:
        settings, d, rp = self.settings, instance.d, instance.rc_p
        ring = pi_shriek_e_pairs_ring(rp, d, settings)
        for n in self._qce(instance, "A_c^p"):
            pushed = pi_shriek_e_pairs(n, d, ring)
            report = is_p_module(pushed, settings)
            if not report.passed:
                return f"{pushed.name}: {report.witness}"
            e_pushed = apply_e(pushed, rp)
            witness = map_witness(counit_e_pi_shriek_e_pairs(e_pushed, n), settings)
            if witness:
                return witness
            again = pi_shriek_e_pairs(e_pushed, d, ring)
            witness = map_witness(comparison_pi_shriek_e_pairs(again, pushed), settings)
            if witness:
                return witness
        return None

    def _gamma_round_trips(self, instance: Instance) -> str | None:
        """
        e Γ_v f q_!^d N ≅ N through λ and the counit, and Γ_v f q_!^d e p M ≅ M
        through λ and the comparison.
        """
        settings, system = self.settings, instance.multiplicity
        ra_p, rc_p, rc_f = instance.ra_p, instance.rc_p, instance.rc_f
        for n in self._qce(instance, "A_a^p"):
            pushed = q_shriek_d(n, system, rc_p)
            extended = gamma_v(functor_f(pushed, rc_f))
            back = functor_p(extended.module, rc_p)
            lam = functor_p_map(extended.counit, back, pushed)
            e_back, e_pushed = e_q(back, system, ra_p), e_q(pushed, system, ra_p)
            composite = e_q_map(lam, system, e_back, e_pushed).compose(counit_e_q_shriek_d(e_pushed, n))
            witness = composite.iso_witness(settings)
            if witness:
                return f"eΓ_v q_!^d({n.name}) → {n.name} at {witness}"
        for m in self._qce(instance, "A_c^f"):
            pm = functor_p(m, rc_p)
            pushed = q_shriek_d(e_q(pm, system, ra_p), system, rc_p)
            comparison = comparison_q_shriek_d_e(pushed, pm)
            x = functor_f(pushed, rc_f)
            extended = gamma_v(x)
            composite = extended.counit.compose(functor_f_map(comparison, x, m))
            witness = composite.iso_witness(settings)
            if witness:
                return f"Γ_v q_!^d e({m.name}) → {m.name} at {witness}"
        return None
