from torus_models.diagrams import is_extended, is_middle_independent, is_qc, is_qce
from torus_models.instances import Instance, gen_module
from torus_models.workbench_base import Law, SuiteBase


class PredicatesSuite(SuiteBase):
    """
    The qc, e and middle-independence predicates on rings, test modules and the corpus.
    """

    name = "predicates"

    def laws(self, instance: Instance) -> list[Law]:
        return [
            Law("rings-qce", "is a {\\em qce-module} if", lambda: self._rings_qce(instance)),
            Law("torsion-verdicts", "last-determined", lambda: self._torsion_verdicts(instance)),
            Law("qc-middle-independent", "unaffected by omitting middle vertices", lambda: self._corpus(instance)),
        ]

    def _rings_qce(self, instance: Instance) -> str | None:
        for model, m in instance.samples.items():
            report = is_qce(m, self.settings)
            if not report.passed:
                return f"{model}: {report.witness}"
        return None

    def _torsion_verdicts(self, instance: Instance) -> str | None:
        """
        Torsion at a proper vertex dies under every localization, so it is qce;
        a free module at a proper vertex alone is qc but not extended.
        """
        settings = self.settings
        sigma = instance.sigma_c
        for k in sigma.nodes:
            if k == sigma.top:
                continue
            for length in (1, 2):
                m = gen_module("torsion", instance, at=k.name, length=length)
                for report in (is_qc(m, settings), is_extended(m, settings)):
                    if not report.passed:
                        return f"{m.name} should pass {report.predicate}: {report.witness}"
            m = gen_module("vertex", instance, at=k.name)
            if not is_qc(m, settings).passed:
                return f"{m.name} should be qc"
            if is_extended(m, settings).passed:
                return f"{m.name} should not be extended"
        return None

    def _corpus(self, instance: Instance) -> str | None:
        settings = self.settings
        for m in instance.corpus("A_c^f"):
            if not is_qc(m, settings).passed:
                continue
            report = is_middle_independent(m, settings)
            if not report.passed:
                return f"{m.name}: {report.witness}"
        return None
