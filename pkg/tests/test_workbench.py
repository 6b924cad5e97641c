import pytest

from torus_models.errors import PreconditionError
from torus_models.instances import mutate
from torus_models.workbench import SUITE_NAMES


async def test_all_suites_in_rank_one(workbench, rank1):
    reports = await workbench.run_suite(rank1, "all")
    assert [r.suite for r in reports] == list(SUITE_NAMES)
    for report in reports:
        assert report.passed, report.failures
        assert report.window == (-20, 40)


async def test_rank_one_suites_are_skipped_by_all(workbench, rank2):
    reports = await workbench.run_suite(rank2, ["all"])
    assert [r.suite for r in reports] == ["posets", "euler", "predicates", "adjunctions", "equivalences", "gamma_v"]


async def test_selection_order_and_empty_selection(workbench, rank1):
    assert await workbench.run_suite(rank1, []) == []
    reports = await workbench.run_suite(rank1, ["euler", "posets"])
    assert [r.suite for r in reports] == ["euler", "posets"]
    assert all(law.verdict == "pass-on-window" for r in reports for law in r.laws)


async def test_unknown_suite(workbench, rank1):
    with pytest.raises(PreconditionError, match="unknown suite"):
        await workbench.run_suite(rank1, "bogus")


async def test_rank_one_suite_on_rank_two(workbench, rank2):
    with pytest.raises(PreconditionError, match="rank 1"):
        await workbench.run_suite(rank2, "rank1")


async def test_mutation_is_detected(workbench, rank1):
    mutated = mutate(rank1)
    assert mutated.name.endswith("+mutated")
    (report,) = await workbench.run_suite(mutated, "euler")
    assert not report.passed
    assert all(law.witness for law in report.failures)


async def test_run_many_keeps_instance_order(workbench, rank1, rank1_minimal):
    reports = await workbench.run_many([rank1_minimal, rank1], "posets")
    assert [r.instance for r in reports] == [rank1_minimal.name, rank1.name]
    assert all(r.passed for r in reports)
