from itertools import combinations, product

from torus_models.instances import Instance
from torus_models.posets import Flag, Poset, PosetMap, node_label, subflag_over
from torus_models.subgroups import ClosedSubgroup, identity_component, is_cotoral, join_istar
from torus_models.workbench_base import Law, SuiteBase

# box of characters searched by the brute-force cotoral oracle
_BOX = 6


def brute_cotoral(l: ClosedSubgroup, k: ClosedSubgroup) -> bool:
    """
    L ⊆ K with K/L a torus, decided by searching characters.

    L ⊆ K means Λ(K) ⊆ Λ(L); the quotient is a torus when no v ∈ Λ(L) outside
    Λ(K) has a multiple n·v ∈ Λ(K).
    """
    if not all(l.annihilator.contains_vector(row) for row in k.annihilator.basis.entries):
        return False
    r = l.ambient_rank
    for v in product(range(-_BOX, _BOX + 1), repeat=r):
        if not any(v) or not l.annihilator.contains_vector(v) or k.annihilator.contains_vector(v):
            continue
        for n in range(2, _BOX + 1):
            if k.annihilator.contains_vector(tuple(n * x for x in v)):
                return False
    return True


class PosetsSuite(SuiteBase):
    """
    Laws of the subgroup posets, their flags and pairs, and the maps q and d.
    """

    name = "posets"

    def laws(self, instance: Instance) -> list[Law]:
        laws = [
            Law("partial-order", "a countable partially ordered set $\\Sigma$", lambda: self._partial_orders(instance)),
            Law("cotoral-order", "$L$ is normal in $K$ with a torus quotient", lambda: self._cotoral_order(instance)),
            Law("retract", "so that $\\Sigma_c$ is a retract of $\\Sigma_a$", lambda: self._retract(instance)),
            Law("multiplicity-top", "$\\cF /G$ is a singleton", lambda: self._multiplicity_top(instance)),
            Law("join-istar-unique", "$i_*(\\tL):=\\tL \\cdot K$", lambda: self._join_istar(instance)),
            Law("cleavage", "there is a unique $\\Sigma$-subflag", lambda: self._cleavage(instance)),
        ]
        if instance.rank == 1:
            laws.append(Law("rank1-shape", "$\\Sigma_a= \\{ i\\lra T$", lambda: self._rank1_shape(instance)))
        return laws

    def _partial_orders(self, instance: Instance) -> str | None:
        posets: list[Poset] = [instance.sigma_a, instance.sigma_c, instance.sigma_d]
        posets += [r.index for r in (instance.ra_f, instance.rc_f, instance.rd_f, instance.ra_p, instance.rc_p)]
        for poset in posets:
            issues = poset.check_partial_order()
            if issues:
                return f"{poset.name}: {issues[0]}"
        return None

    def _cotoral_order(self, instance: Instance) -> str | None:
        sigma = instance.sigma_a
        for l in sigma.nodes:
            for k in sigma.nodes:
                expected = brute_cotoral(l, k)
                if sigma.leq(l, k) != expected:
                    return f"{l.name} ≤ {k.name} is {sigma.leq(l, k)}, the character search says {expected}"
                if is_cotoral(l, k) != expected:
                    return f"is_cotoral({l.name}, {k.name}) disagrees with the character search"
        return None

    def _retract(self, instance: Instance) -> str | None:
        for h in instance.sigma_a.nodes:
            if h.is_connected and instance.q(h) != h:
                return f"q({h.name}) = {instance.q(h).name}"
            if instance.q(h) != identity_component(h):
                return f"q({h.name}) is not the identity component"
        return None

    def _multiplicity_top(self, instance: Instance) -> str | None:
        system = instance.multiplicity
        top = system.base.top
        if len(system.fibers[top]) != 1:
            return f"𝓕/{node_label(top)} has {len(system.fibers[top])} members"
        for k, fiber in system.fibers.items():
            for a, b in combinations(fiber, 2):
                if instance.sigma_a.leq(a, b) or instance.sigma_a.leq(b, a):
                    return f"𝓕/{node_label(k)} has comparable {a.name}, {b.name}"
        return None

    def _join_istar(self, instance: Instance) -> str | None:
        for lt in instance.universe:
            lt0 = identity_component(lt)
            for k in instance.sigma_c.nodes:
                if not instance.sigma_c.leq(lt0, k):
                    continue
                candidates = [
                    h for h in instance.universe
                    if identity_component(h) == k and is_cotoral(lt, h)
                ]
                joined = join_istar(lt, k)
                if candidates != [joined]:
                    found = ", ".join(h.name for h in candidates) or "none"
                    return f"i_*({lt.name}) into {k.name}: candidates {found}"
        return None

    def _cleavage(self, instance: Instance) -> str | None:
        for pi, domain in ((instance.q, instance.ra_f.index), (instance.d, instance.rc_f.index)):
            witness = cleavage_witness(pi, domain.nodes)
            if witness:
                return f"{pi.name}: {witness}"
        return None

    def _rank1_shape(self, instance: Instance) -> str | None:
        sigma = instance.sigma_a
        for a, b in sigma.covers():
            if b != sigma.top:
                return f"cover {a.name} < {b.name} does not end at T"
        if set(sigma.maximal_proper()) != set(sigma.nodes) - {sigma.top}:
            return "some finite subgroup is not maximal"
        return None


def cleavage_witness(pi: PosetMap, domain_flags) -> str | None:
    """
    For every flag F with strict image F̄ and every subflag Ē of F̄, exactly one
    subflag of F maps onto Ē, and it is the one `subflag_over` returns.
    """
    for f in domain_flags:
        image = tuple(pi(t) for t in f.terms)
        if any(not pi.codomain.lt(a, b) for a, b in zip(image[1:], image[:-1])):
            continue
        fbar = Flag(image)
        for size in range(1, len(fbar.terms) + 1):
            for terms in combinations(fbar.terms, size):
                ebar = Flag(terms)
                over = [
                    Flag(sub) for sub in combinations(f.terms, size) if tuple(pi(t) for t in sub) == terms
                ]
                if len(over) != 1:
                    return f"{len(over)} subflags of {f} map onto {ebar}"
                if subflag_over(f, ebar, pi) != over[0]:
                    return f"subflag_over({f}, {ebar}) is not {over[0]}"
    return None
