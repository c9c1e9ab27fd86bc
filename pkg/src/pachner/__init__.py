"""3-manifold triangulations, Pachner moves, and degree-one-edge avoidance."""

from .kernel import (
    CLOSED_ONE_VERTEX,
    IDEAL,
    EdgeRef,
    FaceRef,
    InvalidTriangulation,
    IsoSignature,
    Perm4,
    Triangulation,
    build_skeleton,
    edge_degree,
    is_isomorphic,
    is_orientable,
    iso_signature,
    validate,
)

__all__ = [
    "CLOSED_ONE_VERTEX",
    "IDEAL",
    "EdgeRef",
    "FaceRef",
    "InvalidTriangulation",
    "IsoSignature",
    "Perm4",
    "Triangulation",
    "build_skeleton",
    "edge_degree",
    "is_isomorphic",
    "is_orientable",
    "iso_signature",
    "validate",
]
