"""
Byte-stable exports: DOT for posets, JSON for instances, module diagrams and reports.

Every export is a pure function of its input. JSON is written with sorted keys
and a fixed indent; DOT lists nodes and edges in the poset's own order.
"""

import hashlib
import json
import logging
from typing import Any, Hashable, Literal

from pydantic import BaseModel

from torus_models.diagrams import ModuleDiagram, RingDiagram
from torus_models.errors import PreconditionError
from torus_models.instances import Instance, compare_vertex_values
from torus_models.models.diagrams import (
    EdgeModel,
    ElementModel,
    InstanceModel,
    ModuleDiagramModel,
    NodeValueModel,
    PieceModel,
    PosetModel,
    RingDiagramModel,
    RingNodeModel,
    StructureMapModel,
    SubgroupModel,
)
from torus_models.models.reports import LawReport
from torus_models.modules import Element
from torus_models.posets import Poset, node_label
from torus_models.subgroups import ClosedSubgroup

logger = logging.getLogger(__name__)

ExportKind = Literal["poset-dot", "diagram-json", "report-json", "instance-json"]

_EDGE_STYLE = {"horizontal": "dashed", "vertical": "solid", "cover": "solid"}


def label_text(label: Hashable) -> str:
    """Printable label of a node or factor; tuples are joined with `/`."""
    if isinstance(label, tuple):
        return "/".join(label_text(x) for x in label)
    return node_label(label)


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def poset_dot(poset: Poset) -> str:
    """
    The poset as a DOT digraph, edges pointing upwards.

    Horizontal edges of pair categories are dashed; face edges carry their
    index as a label.
    """
    ids = {node: f"n{i}" for i, node in enumerate(poset.nodes)}
    lines = [f"digraph {_quote(poset.name)} {{", "\trankdir=BT;", "\tnode [shape=box];"]
    for node in poset.nodes:
        lines.append(f"\t{ids[node]} [label={_quote(label_text(node))}];")
    for a, b, tag in poset.edges:
        if tag.startswith("face:"):
            attrs = f"style=solid, label={_quote(tag.split(':')[1])}"
        else:
            attrs = f"style={_EDGE_STYLE.get(tag, 'solid')}"
        lines.append(f"\t{ids[a]} -> {ids[b]} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def poset_model(poset: Poset) -> PosetModel:
    return PosetModel(
        name=poset.name,
        nodes=[label_text(n) for n in poset.nodes],
        edges=[EdgeModel(source=label_text(a), target=label_text(b), tag=tag) for a, b, tag in poset.edges],
    )


def _element(x: Element) -> ElementModel:
    return ElementModel(numerators=[str(n) for n in x.numerators], denominator=str(x.denominator))


def diagram_model(m: ModuleDiagram) -> ModuleDiagramModel:
    values = []
    for node in m.index.nodes:
        value = m.values[node]
        pieces = [
            PieceModel(
                label=label_text(label),
                ring=piece.ring.describe(),
                degrees=list(piece.degrees),
                relations=[[str(p) for p in rel] for rel in piece.relations],
            )
            for label, piece in zip(value.labels, value.pieces)
        ]
        values.append(NodeValueModel(node=label_text(node), pieces=pieces))
    maps = []
    for a, b, tag in m.index.edges:
        mm = m.maps[(a, b)]
        maps.append(
            StructureMapModel(
                source=label_text(a),
                target=label_text(b),
                tag=tag,
                reindex=list(mm.reindex),
                images=[[_element(x) for x in column] for column in mm.images],
            )
        )
    return ModuleDiagramModel(
        name=m.name,
        ring=m.ring.name,
        flavor=m.ring.flavor,
        index=poset_model(m.index),
        values=values,
        maps=maps,
    )


def ring_model(model: str, r: RingDiagram) -> RingDiagramModel:
    return RingDiagramModel(
        model=model,
        name=r.name,
        flavor=r.flavor,
        index=r.index.name,
        values=[
            RingNodeModel(
                node=label_text(node),
                labels=[label_text(label) for label in r.value(node).labels],
                rings=[c.describe() for c in r.value(node).components],
            )
            for node in r.index.nodes
        ],
    )


def _subgroup_model(h: ClosedSubgroup) -> SubgroupModel:
    return SubgroupModel(
        name=h.name,
        ambient_rank=h.ambient_rank,
        annihilator=[list(row) for row in h.annihilator.basis.entries],
        connected=h.is_connected,
    )


def instance_model(instance: Instance) -> InstanceModel:
    return InstanceModel(
        name=instance.name,
        rank=instance.rank,
        euler_variant=instance.variant,
        universe=[_subgroup_model(h) for h in instance.universe],
        closure_added=[h.name for h in instance.closure_added],
        posets=[poset_model(p) for p in (instance.sigma_a, instance.sigma_c, instance.sigma_d)],
        rings=[ring_model(model, r) for model, r in instance.rings().items()],
        vertex_mismatches=compare_vertex_values(instance),
    )


def _dump(model: BaseModel, exclude: dict | set | None = None) -> str:
    data = model.model_dump(mode="json", exclude=exclude)
    return json.dumps(data, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def diagram_json(m: ModuleDiagram) -> str:
    return _dump(diagram_model(m))


def instance_json(instance: Instance) -> str:
    return _dump(instance_model(instance))


def report_json(report: LawReport | list[LawReport], timings: bool = False) -> str:
    """
    One report, or a list of them, as JSON.

    Wall times are dropped unless `timings` is set, so that equal runs give equal bytes.
    """
    reports = report if isinstance(report, list) else [report]
    exclude = None if timings else {"laws": {"__all__": {"wall_time"}}}
    data = [r.model_dump(mode="json", exclude=exclude) for r in reports]
    payload: Any = data if isinstance(report, list) else data[0]
    return json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def _canonical(obj: Any) -> Any:
    if isinstance(obj, LawReport):
        return obj.model_dump(mode="json", exclude={"laws": {"__all__": {"wall_time"}}})
    if isinstance(obj, BaseModel):
        return obj.model_dump(mode="json")
    if isinstance(obj, ModuleDiagram):
        return diagram_model(obj).model_dump(mode="json")
    if isinstance(obj, RingDiagram):
        return ring_model(obj.flavor, obj).model_dump(mode="json")
    if isinstance(obj, Poset):
        return poset_model(obj).model_dump(mode="json")
    if isinstance(obj, Instance):
        return instance_model(obj).model_dump(mode="json")
    if isinstance(obj, (list, tuple)):
        return [_canonical(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): _canonical(v) for k, v in obj.items()}
    return obj if isinstance(obj, (str, int, float, bool)) or obj is None else str(obj)


def digest(obj: Any, length: int = 12) -> str:
    """Short SHA-256 of the canonical JSON of an exportable object."""
    text = json.dumps(_canonical(obj), ensure_ascii=False, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:length]


def _poset_named(instance: Instance, name: str) -> Poset:
    posets = {
        "sigma_a": instance.sigma_a,
        "sigma_c": instance.sigma_c,
        "sigma_d": instance.sigma_d,
        "flag(sigma_a)": instance.ra_f.index,
        "flag(sigma_c)": instance.rc_f.index,
        "flag(sigma_d)": instance.rd_f.index,
        "qp(sigma_a)": instance.ra_p.index,
        "qp(sigma_c)": instance.rc_p.index,
    }
    if name not in posets:
        raise PreconditionError(f"unknown poset {name!r}; choose from {', '.join(posets)}")
    return posets[name]


def export(
    instance: Instance,
    what: ExportKind,
    *,
    poset: str = "sigma_a",
    module: ModuleDiagram | None = None,
    reports: list[LawReport] | None = None,
) -> str:
    """
    Renders one export of an instance.

    Args:
        instance: The instance.
        what: ``poset-dot``, ``diagram-json``, ``report-json`` or ``instance-json``.
        poset: For DOT: ``sigma_a``, ``sigma_c``, ``sigma_d``, ``flag(…)`` or ``qp(…)``.
        module: For diagram JSON; defaults to ℝ_c^f as a module over itself.
        reports: For report JSON.

    Returns:
        The text to write.
    """
    if what == "poset-dot":
        return poset_dot(_poset_named(instance, poset))
    if what == "diagram-json":
        return diagram_json(module if module is not None else instance.samples["A_c^f"])
    if what == "report-json":
        if reports is None:
            raise PreconditionError("report-json needs the reports to export")
        return report_json(reports)
    if what == "instance-json":
        return instance_json(instance)
    raise PreconditionError(f"unknown export {what!r}")


__all__ = [
    "diagram_json",
    "digest",
    "export",
    "instance_json",
    "poset_dot",
    "report_json",
]
