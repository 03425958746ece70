"""Multicommodity flows on a cycle: dominating paths and counterexamples."""

from .model import (
    ArcPath,
    Commodity,
    CycleInstance,
    DomainError,
    FlowAssignment,
    ParseError,
    clockwise_path,
    edge_flows,
    parse_flow,
    parse_instance,
    paths_of,
    serialize_flow,
    serialize_instance,
)
from .dominance import (
    Configuration,
    DominanceWitness,
    SegmentDecomposition,
    SymmetryTransform,
    canonicalize,
    path_dominates,
    witness_constructive,
    witnesses_bruteforce,
)
from .explorer import (
    SearchReport,
    ViolationCertificate,
    check_violation,
    paper_instance_k3,
    search_grid,
    search_random,
)

__version__ = "0.1.0"
