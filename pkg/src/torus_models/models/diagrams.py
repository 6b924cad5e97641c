from typing import Optional

from pydantic import BaseModel


class EdgeModel(BaseModel):
    """
    A generating edge of an index poset.
    """

    source: str
    """Label of the smaller node."""

    target: str
    """Label of the larger node."""

    tag: str
    """`cover`, `face:i`, `horizontal` or `vertical`."""


class PosetModel(BaseModel):
    """
    A poset with its generating edges, in the deterministic node order.
    """

    name: str
    """Name of the poset, e.g. `sigma_a` or `flag(sigma_c)`."""

    nodes: list[str]
    """Node labels."""

    edges: list[EdgeModel]
    """Generating edges."""


class ElementModel(BaseModel):
    """
    A fraction (n_1, …, n_k)/s in a presented module.
    """

    numerators: list[str]
    """One polynomial per generator, printed by sympy."""

    denominator: str
    """A product of inverted linear forms."""


class PieceModel(BaseModel):
    """
    One factor S⁻¹(A^n / Rel) of a module value.
    """

    label: str
    """The ring factor this piece lives over."""

    ring: str
    """The localized ring, e.g. `Q[c][1/(c)]`."""

    degrees: list[int]
    """Cohomological degrees of the generators."""

    relations: list[list[str]] = []
    """Relation vectors, one polynomial per generator."""


class NodeValueModel(BaseModel):
    """
    The module value at one node.
    """

    node: str
    """Node label."""

    pieces: list[PieceModel]
    """One piece per ring factor."""


class StructureMapModel(BaseModel):
    """
    A module map on a generating edge.
    """

    source: str
    """Label of the source node."""

    target: str
    """Label of the target node."""

    tag: str
    """Tag of the edge."""

    reindex: list[int]
    """Target factor j reads source factor `reindex[j]`."""

    images: list[list[ElementModel]]
    """For target factor j, the images of the generators of source factor `reindex[j]`."""


class ModuleDiagramModel(BaseModel):
    """
    A module diagram over a ring diagram, as written by `torus-models export diagram-json`.
    """

    name: str
    """Name of the module."""

    ring: str
    """Name of the ring diagram."""

    flavor: str
    """`f` for flag diagrams, `p` for pair diagrams."""

    index: PosetModel
    """The index poset."""

    values: list[NodeValueModel]
    """Values in node order."""

    maps: list[StructureMapModel]
    """Structure maps in edge order."""


class RingNodeModel(BaseModel):
    """
    The ring value at one node.
    """

    node: str
    labels: list[str]
    """Factor labels."""

    rings: list[str]
    """Factor rings."""


class RingDiagramModel(BaseModel):
    """
    A ring diagram of one of the four models.
    """

    model: str
    """`A_a^p`, `A_c^p`, `A_c^f` or `A_d^f`."""

    name: str
    flavor: str
    index: str
    """Name of the index poset."""

    values: list[RingNodeModel]


class SubgroupModel(BaseModel):
    """
    A closed subgroup of T^r.
    """

    name: str
    ambient_rank: int
    annihilator: list[list[int]]
    """Hermite normal form basis of the annihilator lattice."""

    connected: bool


class InstanceModel(BaseModel):
    """
    A standard instance: universe, posets and the ring diagrams of the four models.
    """

    name: str
    rank: int
    euler_variant: str
    universe: list[SubgroupModel]
    closure_added: list[str]
    """Names of the members added by the closure."""

    posets: list[PosetModel]
    """Σ_a, Σ_c and Σ_d."""

    rings: list[RingDiagramModel]

    vertex_mismatches: Optional[list[str]] = None
    """Vertices where (dq)_!^e ℝ_a^f and ℝ_d^f differ; empty when they agree."""
