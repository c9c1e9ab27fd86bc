"""Composite moves: V-move, mandible rotation, triangular-pillow machinery,
the exceptional stacked lens-space family, and degree-one-avoiding path
rewriting.

Everything here is built from 2-3 and 3-2 moves; each operation returns the
move path realizing it, and the defining guarantee of this module is that no
intermediate state of any emitted path contains a degree-one edge.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Callable, Optional

from .kernel import (
    EDGE_INDEX,
    EDGE_VERTICES,
    CLOSED_ONE_VERTEX,
    EdgeRef,
    FaceRef,
    IsoSignature,
    Perm4,
    SkeletonIndex,
    Triangulation,
    build_skeleton,
    edge_faces,
    is_isomorphic,
    iso_signature,
    validate,
)
from .moves import (
    ElementaryMove,
    MoveError,
    MoveOutcome,
    MovePath,
    _book_data,
    apply_move,
    classify_degree_one_creation,
    move_2_0,
    move23,
    move32,
    pachner_2_3,
    pachner_3_2,
)


class CompositeError(MoveError):
    """A composite move's hypotheses fail; the message names the culprit."""


class L41Exception(CompositeError):
    """The stack walk closed up: the triangulation is in the exceptional
    stacked lens-space family, where no degree-one-free 2-3 move exists."""


class HypothesisViolation(CompositeError):
    """A structural impossibility under the validated mode was discovered,
    e.g. a spherical-link vertex implied by a too-small edge degree."""


@dataclass(frozen=True)
class BirdBeak:
    """Two distinct tetrahedra arranged around a degree-two hinge edge.

    The four outer faces are the mandible faces; `mandible_faces[i]` holds
    the two outer faces of `tets[i]`.
    """
    hinge: int
    tets: tuple[int, int]
    mandible_faces: tuple[tuple[FaceRef, FaceRef], tuple[FaceRef, FaceRef]]


def find_beak(tri: Triangulation, hinge: int,
              sk: Optional[SkeletonIndex] = None) -> BirdBeak:
    """Interpret a degree-two edge class as a bird beak."""
    sk = sk or build_skeleton(tri)
    ec = sk.edge_class(hinge)
    if ec.degree != 2:
        raise CompositeError(f"edge class {hinge} has degree {ec.degree}, not two")
    if ec.book is None:
        raise CompositeError(f"edge class {hinge} is identified with itself in reverse")
    (ta, pa, qa, _ea, _xa), (tb, pb, qb, _eb, _xb) = _book_data(tri, ec)
    if ta == tb:
        raise CompositeError("the two tetrahedra around the hinge are not distinct")
    return BirdBeak(hinge, (ta, tb),
                    ((FaceRef(ta, pa), FaceRef(ta, qa)),
                     (FaceRef(tb, pb), FaceRef(tb, qb))))


# ---------------------------------------------------------------------------
# the V-move
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VMoveResult:
    """Outcome of one V-move: the 4-move path, the created beak, and the
    split bookkeeping for the wrapped edge class."""
    result: Triangulation
    path: MovePath
    outcomes: tuple[MoveOutcome, ...]
    beak: BirdBeak
    wrapped_tet: int           # image of the tetrahedron the beak wraps
    wrapped_labels: Perm4      # original tet labels -> wrapped tet labels
    grip_class: int            # degree-two copy of the wrapped edge ([w, cap])
    ambient_class: int         # the other copy of the wrapped edge
    cap_tet: int               # the beak tet glued onto the wrapped tet
    outer_tet: int             # the beak tet facing the rest of the book


# the three opposite-edge pairs of a tetrahedron, by model edge index
EDGE_PAIRS = ((0, 5), (1, 4), (2, 3))


def v_move(tri: Triangulation, tet: int, edge_pair: int,
           sk: Optional[SkeletonIndex] = None) -> VMoveResult:
    """Wrap a bird beak around two faces of `tet`, as a 2-3,2-3,2-3,3-2 path.

    `edge_pair` selects one of the three opposite-edge pairs; the beak wraps
    the two faces sharing whichever edge of the pair admits a qualifying
    via-triangle (a face on two distinct tetrahedra whose edges all have
    degree at least three).  Either choice yields the same result up to
    isomorphism.
    """
    if not (0 <= tet < tri.n_tets):
        raise CompositeError(f"no tetrahedron {tet}")
    if edge_pair not in (0, 1, 2):
        raise CompositeError("edge_pair must be 0, 1 or 2")
    sk = sk or build_skeleton(tri)
    failures = []
    for hinge_edge in EDGE_PAIRS[edge_pair]:
        for delta_face in edge_faces(hinge_edge):
            try:
                return v_move_at(tri, tet, hinge_edge, delta_face, sk)
            except CompositeError as exc:
                failures.append(f"edge {hinge_edge} via face {delta_face}: {exc}")
    raise CompositeError("no qualifying via-triangle for the V-move; " +
                         "; ".join(failures))


def v_move_at(tri: Triangulation, tet: int, hinge_edge: int, delta_face: int,
              sk: Optional[SkeletonIndex] = None) -> VMoveResult:
    """V-move with an explicit via-triangle: the beak ends up wrapped around
    the two faces of `tet` sharing model edge `hinge_edge`, equivalent to a
    0-2 move splitting that edge's book at the wedge of `tet`.

    The four moves are: 2-3 on the via-triangle, 2-3 joining the two new
    tetrahedra that avoid the hinge, 2-3 pushing the via-tetrahedron's apex
    past the hinge, then 3-2 on the first move's central edge.
    """
    sk = sk or build_skeleton(tri)
    if sk.degree_one_edges():
        raise CompositeError("the triangulation already has a degree-one edge; "
                             "the V-move lemma does not apply")
    c, d = EDGE_VERTICES[hinge_edge]
    if delta_face in (c, d):
        raise CompositeError(f"face {delta_face} does not contain edge {hinge_edge}")
    a = delta_face
    b = next(v for v in range(4) if v not in (a, c, d))

    g = tri.gluing(tet, a)
    if g.tet == tet:
        raise CompositeError(f"the via-triangle {FaceRef(tet, a)} joins the "
                             "tetrahedron to itself")
    low = []
    for (x, y) in ((b, c), (b, d), (c, d)):
        cls = sk.edge_of[EdgeRef(tet, EDGE_INDEX[(x, y)])]
        if sk.edge_classes[cls].degree < 3:
            low.append((x, y, sk.edge_classes[cls].degree))
    if low:
        raise CompositeError("via-triangle edge(s) of degree below three: " +
                             ", ".join(f"({x},{y}) deg {deg}" for x, y, deg in low))

    grip_before = sk.edge_of[EdgeRef(tet, hinge_edge)]

    # move 1: 2-3 on the via-triangle
    m1 = pachner_2_3(tri, FaceRef(tet, a), sk)
    lam = m1.inverse.edge
    tri_vs = sorted(v for v in range(4) if v != a)
    rank = {v: i for i, v in enumerate(tri_vs)}
    g_pq = m1.new_tets[rank[d]]   # contains delta vertices b and c

    def label_in(k: int, v: int) -> int:
        kept = [x for x in range(3) if x != k]
        return 0 if rank[v] == kept[0] else 1

    # move 2: 2-3 on the face of g_pq away from hinge vertex c
    q_label = label_in(rank[d], c)
    p_label = label_in(rank[d], b)
    m2 = pachner_2_3(m1.result, FaceRef(g_pq, q_label))
    lam = m2.edge_map[lam]
    mu = m2.inverse.edge
    face_vs = sorted((p_label, 2, 3))
    rank2 = {v: i for i, v in enumerate(face_vs)}
    h_py = m2.new_tets[rank2[2]]

    h_pu = m2.new_tets[rank2[3]]

    # move 3: 2-3 on the face of h_py away from the non-hinge vertex
    m3 = pachner_2_3(m2.result, FaceRef(h_py, 0))
    lam = m3.edge_map[lam]
    mu = m3.edge_map[mu]
    nu = m3.inverse.edge
    h_pu = m3.tet_map[h_pu]

    # move 4: 3-2 on the first move's central edge, now back at degree three
    m4 = pachner_3_2(m3.result, lam)
    mu = m4.edge_map[mu]
    nu = m4.edge_map[nu]
    h_pu = m4.tet_map[h_pu]

    outcomes = (m1, m2, m3, m4)
    result = m4.result
    sk_new = build_skeleton(result)
    beak = find_beak(result, nu, sk_new)

    # roles: the grip copy (mu) has a two-wedge book [wrapped tet, cap tet];
    # the wrapped tet is the surviving re-creation of `tet`, whose labels
    # carry the points b, a, c, d at positions 0, 1, 2, 3
    grip_book = {w[0] for w in _book_data(result, sk_new.edge_class(mu))}
    cap = next(t for t in beak.tets if t in grip_book)
    outer = next(t for t in beak.tets if t != cap)
    wrapped = h_pu
    assert wrapped in grip_book and wrapped not in beak.tets
    wrapped_labels = Perm4((b, a, c, d)).inverse()
    ambient = _track_class(grip_before, outcomes)
    path = MovePath(tri, tuple(o.move for o in outcomes))
    return VMoveResult(result=result, path=path, outcomes=outcomes, beak=beak,
                       wrapped_tet=wrapped, wrapped_labels=wrapped_labels,
                       grip_class=mu, ambient_class=ambient, cap_tet=cap,
                       outer_tet=outer)


def _track_class(class_id: int, outcomes) -> int:
    for out in outcomes:
        if class_id in out.edge_map:
            class_id = out.edge_map[class_id]
        elif class_id in out.split_edges:
            raise AssertionError("tracked class split unexpectedly")
        else:
            raise AssertionError("tracked class disappeared")
    return class_id


def _track_tet(tet: int, outcomes) -> int:
    for out in outcomes:
        tet = out.tet_map[tet]
    return tet


# ---------------------------------------------------------------------------
# mandible rotation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RotationResult:
    result: Triangulation
    path: MovePath
    outcomes: tuple[MoveOutcome, ...]
    beak: BirdBeak               # the rotated beak in the new state
    moved_tet: int               # image of the tetrahedron that switched books


def rotate_mandible(tri: Triangulation, beak: BirdBeak, mandible: int,
                    direction: int,
                    sk: Optional[SkeletonIndex] = None) -> RotationResult:
    """Rotate one mandible of a bird beak past the adjacent tetrahedron.

    `mandible` picks which beak tetrahedron's face moves (0 or 1) and
    `direction` which of its two outer faces; the tetrahedron glued there
    migrates to the other half-book.  Realized as a 2-3 on the mandible
    triangle followed by a 3-2 on the old hinge.
    """
    sk = sk or build_skeleton(tri)
    fresh = find_beak(tri, beak.hinge, sk)
    if fresh.tets != beak.tets:
        raise CompositeError("stale beak handle: the hinge's tetrahedra changed")
    face = fresh.mandible_faces[mandible][direction]
    g = tri.gluing(*face)
    if g.tet in fresh.tets:
        raise CompositeError("the tetrahedron past the mandible is one of the "
                             "beak's own tetrahedra")

    # Lemma hypothesis: collapsing the beak would not create a degree-one
    # edge; our beaks always collapse since they arise from 0-2-like moves.
    try:
        collapsed = move_2_0(tri, fresh.hinge, sk)
    except MoveError as exc:
        raise CompositeError(f"the beak does not collapse via a 2-0 move "
                             f"({exc}); the rotation lemma does not apply") from exc
    if build_skeleton(collapsed.result).degree_one_edges():
        raise CompositeError("collapsing the beak would create a degree-one "
                             "edge; the rotation lemma does not apply")

    verdict = classify_degree_one_creation(tri, move23(face.tet, face.face), sk)
    if verdict.pattern != "none":
        raise CompositeError("this rotation would close the beak onto itself, "
                             "creating a degree-one edge")
    m1 = pachner_2_3(tri, face, sk)
    hinge_now = m1.edge_map[fresh.hinge]
    verdict2 = classify_degree_one_creation(m1.result, move32(hinge_now))
    if verdict2.pattern != "none":
        raise CompositeError("this rotation would close the beak onto itself, "
                             "creating a degree-one edge")
    m2 = pachner_3_2(m1.result, hinge_now)
    new_hinge = m2.edge_map[m1.inverse.edge]
    result = m2.result
    new_beak = find_beak(result, new_hinge)
    # the 3-2 recreates both the migrated tetrahedron and one beak tet
    moved = next(t for t in m2.new_tets if t not in new_beak.tets)
    return RotationResult(result=result,
                          path=MovePath(tri, (m1.move, m2.move)),
                          outcomes=(m1, m2), beak=new_beak, moved_tet=moved)
