"""Nest bicirculant graphs and the permutation-group tools used to classify
their edge-transitive, core-free members."""

from .perm import Perm, PermGroup, bsgs_build
from .graph import Graph, Partition
from .aut import are_isomorphic, automorphism_group, canonical_form
from .nest import NestParams, build, validate

__version__ = "0.1.0"

__all__ = [
    "Perm", "PermGroup", "bsgs_build", "Graph", "Partition",
    "are_isomorphic", "automorphism_group", "canonical_form",
    "NestParams", "build", "validate",
]
