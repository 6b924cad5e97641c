import json

import pytest

from torus_models.errors import PreconditionError
from torus_models.export import diagram_json, digest, export, instance_json, poset_dot, report_json
from torus_models.instances import gen_module, gen_standard_instance
from torus_models.models.reports import LawReport, LawResult


def _report(wall_time: float) -> LawReport:
    law = LawResult(name="transitivity", anchor="a", verdict="pass-on-window", wall_time=wall_time)
    return LawReport(suite="euler", instance="rank1-standard", window=(-20, 40), laws=[law])


def test_sigma_a_dot(rank1):
    """Every edge of Σ_a in rank 1 points into T."""
    dot = poset_dot(rank1.sigma_a)
    assert dot.startswith('digraph "sigma_a" {\n\trankdir=BT;')
    edges = [line for line in dot.splitlines() if "->" in line]
    assert len(edges) == 3
    top_id = f"n{rank1.sigma_a.nodes.index(rank1.sigma_a.top)}"
    assert all(line.split("->")[1].strip().startswith(top_id) for line in edges)


def test_pair_category_dot_marks_horizontal_edges(rank1):
    dot = export(rank1, "poset-dot", poset="qp(sigma_c)")
    assert "style=dashed" in dot
    assert "style=solid" in dot


def test_flag_dot_labels_faces(rank1):
    dot = export(rank1, "poset-dot", poset="flag(sigma_c)")
    assert 'label="0"' in dot
    assert 'label="1"' in dot


def test_exports_are_byte_stable(settings):
    first = gen_standard_instance(1, "standard", settings)
    second = gen_standard_instance(1, "standard", settings)
    assert instance_json(first) == instance_json(second)
    assert diagram_json(gen_module("torsion", first, at="1")) == diagram_json(gen_module("torsion", second, at="1"))
    assert digest(first) == digest(second)
    assert len(digest(first)) == 12


def test_instance_json_shape(rank2):
    data = json.loads(instance_json(rank2))
    assert data["name"] == "rank2-standard"
    assert [p["name"] for p in data["posets"]] == ["sigma_a", "sigma_c", "sigma_d"]
    assert data["closure_added"]


def test_report_json_drops_wall_times():
    slow, fast = _report(3.5), _report(0.1)
    assert report_json(slow) == report_json(fast)
    assert "wall_time" not in report_json([slow])
    assert json.loads(report_json(slow, timings=True))["laws"][0]["wall_time"] == 3.5
    assert digest(slow) == digest(fast)


def test_unknown_poset(rank1):
    with pytest.raises(PreconditionError, match="unknown poset"):
        export(rank1, "poset-dot", poset="sigma_b")


def test_report_export_needs_reports(rank1):
    with pytest.raises(PreconditionError):
        export(rank1, "report-json")
