"""Elementary moves on triangulations: 2-3, 3-2, 0-2 and 2-0.

Every move is a pure function from a triangulation to a MoveOutcome holding
the new triangulation together with the bookkeeping callers need: how
tetrahedron indices moved, how edge classes correspond across the move, the
per-class degree changes, and the canonical inverse move.

Index discipline: a move that removes tetrahedra recycles the lowest removed
slots for the new tetrahedra (in creation order) and appends any surplus at
the end of the index space; only indices above a vacated slot shift down.
Growing moves therefore leave every surviving index unchanged, which is what
lets recorded paths replay against a pillow-augmented copy of the same
triangulation.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Callable, Optional, Union

from .kernel import (
    EDGE_INDEX,
    EDGE_VERTICES,
    EdgeClass,
    EdgeRef,
    FaceRef,
    Gluing,
    Perm4,
    SkeletonIndex,
    Triangulation,
    build_skeleton,
)

IDENT = Perm4((0, 1, 2, 3))

OPPOSITE_EDGE_OF: dict[tuple[int, int], int] = {}
for _e, (_a, _b) in enumerate(EDGE_VERTICES):
    _rest = tuple(v for v in range(4) if v not in (_a, _b))
    OPPOSITE_EDGE_OF[(_a, _b)] = EDGE_INDEX[_rest]
    OPPOSITE_EDGE_OF[(_b, _a)] = EDGE_INDEX[_rest]


class MoveError(ValueError):
    """A move's precondition is violated; the message quotes the rule."""


@dataclass(frozen=True)
class ElementaryMove:
    """One of the four elementary moves, addressed combinatorially.

    kind      target
    move23    face: a FaceRef naming the triangle (either side)
    move32    edge: an edge-class id of the current state
    move02    edge + positions: two distinct positions in the edge's book
    move20    edge: an edge-class id of degree two
    """
    kind: str
    face: Optional[FaceRef] = None
    edge: Optional[int] = None
    positions: Optional[tuple[int, int]] = None

    def __post_init__(self):
        if self.kind not in ("move23", "move32", "move02", "move20"):
            raise ValueError(f"unknown move kind {self.kind!r}")
        if self.kind == "move23" and self.face is None:
            raise ValueError("move23 needs a face")
        if self.kind in ("move32", "move20") and self.edge is None:
            raise ValueError(f"{self.kind} needs an edge class id")
        if self.kind == "move02" and (self.edge is None or self.positions is None):
            raise ValueError("move02 needs an edge class id and two book positions")

    def describe(self) -> str:
        if self.kind == "move23":
            return f"23 {self.face.tet} {self.face.face}"
        if self.kind == "move32":
            return f"32 {self.edge}"
        if self.kind == "move02":
            return f"02 {self.edge} {self.positions[0]} {self.positions[1]}"
        return f"20 {self.edge}"


def move23(tet: int, face: int) -> ElementaryMove:
    return ElementaryMove("move23", face=FaceRef(tet, face))


def move32(edge: int) -> ElementaryMove:
    return ElementaryMove("move32", edge=edge)


def move02(edge: int, p: int, q: int) -> ElementaryMove:
    return ElementaryMove("move02", edge=edge, positions=(p, q))


def move20(edge: int) -> ElementaryMove:
    return ElementaryMove("move20", edge=edge)


@dataclass(frozen=True)
class MoveOutcome:
    """Result of one elementary move plus full correspondence bookkeeping."""
    move: ElementaryMove
    result: Triangulation
    tet_map: dict[int, int]                  # surviving old tet -> new tet
    new_tets: tuple[int, ...]                # new tet indices, creation order
    edge_map: dict[int, int]                 # surviving old class -> new class
    degree_deltas: dict[int, int]            # old class -> degree change
    created_edges: tuple[tuple[int, int], ...]   # (new class, degree)
    removed_edges: tuple[int, ...]           # old classes with no image
    split_edges: dict[int, tuple[int, int]]  # 0-2 only: old -> both copies
    merged_edges: dict[tuple[int, int], int]  # 2-0 only: (old, old) -> new
    created_degree_one: tuple[int, ...]      # new classes at degree 1 whose
                                             # preimage (if any) was not
    inverse: ElementaryMove                  # valid on `result`


# ---------------------------------------------------------------------------
# surgery plumbing
# ---------------------------------------------------------------------------

def _final_indices(n_old: int, removed: list[int], k_new: int):
    """Index assignment for one move (see module docstring)."""
    removed = sorted(removed)
    vacated = removed[k_new:]
    tet_map = {}
    removed_set = set(removed)
    for t in range(n_old):
        if t in removed_set:
            continue
        tet_map[t] = t - sum(1 for v in vacated if v < t)
    slots = []
    for j in range(k_new):
        if j < len(removed):
            slots.append(removed[j])
        else:
            slots.append(n_old - len(removed) + j)
    return tet_map, slots


class _Table:
    """Gluing accumulator with write-once consistency checking."""

    def __init__(self, n: int):
        self.n = n
        self.pairs: dict[tuple[int, int], tuple[int, int, Perm4]] = {}

    def record(self, a: tuple[int, int], b: tuple[int, int], perm: Perm4):
        spec = (b[0], b[1], perm)
        old = self.pairs.get(a)
        if old is not None and old != spec:
            raise AssertionError(f"conflicting gluings at {a}: {old} vs {spec}")
        self.pairs[a] = spec

    def record_pair(self, a, b, perm: Perm4):
        self.record(a, b, perm)
        self.record(b, a, perm.inverse())

    def freeze(self) -> Triangulation:
        table = [[None] * 4 for _ in range(self.n)]
        for (t, f), (t2, f2, perm) in self.pairs.items():
            table[t][f] = Gluing(t2, f2, perm)
        for t in range(self.n):
            for f in range(4):
                if table[t][f] is None:
                    raise AssertionError(f"surgery left face {FaceRef(t, f)} unpaired")
        return Triangulation(tuple(tuple(row) for row in table))


def _assemble(tri: Triangulation, removed: list[int], k_new: int,
              internal: list[tuple[tuple[int, int], tuple[int, int], Perm4]],
              boundary: list[tuple[int, int, FaceRef, Perm4]]):
    """Rebuild the gluing table after removing tetrahedra and adding new ones.

    `internal`: gluings among new tetrahedra, ((local, face), (local, face),
    perm) with perm mapping the first tet's labels to the second's.

    `boundary`: one entry per new face that replaces an old face of a removed
    tetrahedron: (local, new_face, replaced_old_face, nu) where nu maps the
    new tet's labels to the replaced tet's labels with nu[new_face] equal to
    the replaced face index.  The new face inherits the replaced face's
    partner; partners that were themselves replaced are redirected.
    """
    n_old = tri.n_tets
    removed = sorted(removed)
    removed_set = set(removed)
    tet_map, slots = _final_indices(n_old, removed, k_new)

    translation: dict[FaceRef, tuple[int, int, Perm4]] = {}
    for (local, new_face, old_face, nu) in boundary:
        assert nu[new_face] == old_face.face, "face map inconsistent"
        assert old_face.tet in removed_set, "replaced face must be on a removed tet"
        if old_face in translation:
            raise AssertionError(f"face {old_face} replaced twice")
        translation[old_face] = (slots[local], new_face, nu.inverse())

    out = _Table(n_old - len(removed) + k_new)

    for t in range(n_old):
        if t in removed_set:
            continue
        for f in range(4):
            g = tri.gluing(t, f)
            if g.tet in removed_set:
                continue  # rewritten when the replacing boundary item runs
            out.record((tet_map[t], f), (tet_map[g.tet], g.face), g.perm)

    for (a_loc, a_face), (b_loc, b_face), perm in internal:
        out.record_pair((slots[a_loc], a_face), (slots[b_loc], b_face), perm)

    for (local, new_face, old_face, nu) in boundary:
        here = (slots[local], new_face)
        partner = tri.gluing(*old_face)
        tau = partner.perm  # replaced tet labels -> partner tet labels
        partner_ref = FaceRef(partner.tet, partner.face)
        if partner_ref in translation:
            dest_tet, dest_face, mu = translation[partner_ref]
            out.record(here, (dest_tet, dest_face), mu * tau * nu)
        else:
            out.record_pair(here, (tet_map[partner.tet], partner.face), tau * nu)

    return out.freeze(), tet_map, slots, translation


def _edge_correspondence(sk_old: SkeletonIndex, result: Triangulation,
                         tet_map: dict[int, int],
                         allow_split: Optional[int] = None,
                         allow_merge: Optional[tuple[int, int]] = None,
                         translation: Optional[dict] = None):
    """Match surviving edge classes across a move via their model edges.

    Representatives on surviving tetrahedra carry over directly; ones on
    removed tetrahedra are traced through the replaced boundary faces.
    Elementary moves never split or merge edge classes except for the
    documented 0-2 split and 2-0 merge, which callers name explicitly; any
    other fan-out is an internal error.
    """
    sk_new = build_skeleton(result)
    by_old_face: dict[FaceRef, tuple[int, int, Perm4]] = translation or {}
    images: dict[int, set[int]] = {}
    for ec in sk_old.edge_classes:
        found = set()
        for (ref, _flag) in ec.reps:
            if ref.tet in tet_map:
                found.add(sk_new.edge_of[EdgeRef(tet_map[ref.tet], ref.edge)])
            else:
                a, b = EDGE_VERTICES[ref.edge]
                for f in range(4):
                    if f in (a, b):
                        continue
                    hit = by_old_face.get(FaceRef(ref.tet, f))
                    if hit is None:
                        continue
                    new_tet, _new_face, mu = hit
                    found.add(sk_new.edge_of[
                        EdgeRef(new_tet, EDGE_INDEX[(mu[a], mu[b])])])
        if found:
            images[ec.index] = found
    edge_map: dict[int, int] = {}
    split: dict[int, tuple[int, int]] = {}
    for old_id, news in images.items():
        if len(news) == 1:
            edge_map[old_id] = next(iter(news))
        elif len(news) == 2 and old_id == allow_split:
            a, b = sorted(news)
            split[old_id] = (a, b)
        else:
            raise AssertionError(f"edge class {old_id} fanned out to {sorted(news)}")
    merged: dict[tuple[int, int], int] = {}
    hit: dict[int, int] = {}
    for old_id, new_id in sorted(edge_map.items()):
        if new_id in hit:
            pair = tuple(sorted((hit[new_id], old_id)))
            if allow_merge is not None and pair == tuple(sorted(allow_merge)):
                merged[pair] = new_id
            else:
                raise AssertionError(
                    f"edge classes {hit[new_id]} and {old_id} merged unexpectedly")
        hit[new_id] = old_id
    return sk_new, edge_map, split, merged


def _finish(move: ElementaryMove, sk_old: SkeletonIndex,
            result: Triangulation, tet_map: dict, new_tets: list[int],
            inverse: ElementaryMove, allow_split=None, allow_merge=None,
            translation=None) -> MoveOutcome:
    sk_new, edge_map, split, merged = _edge_correspondence(
        sk_old, result, tet_map, allow_split, allow_merge, translation)
    deltas = {}
    for old_id, new_id in edge_map.items():
        deltas[old_id] = sk_new.edge_classes[new_id].degree - sk_old.edge_classes[old_id].degree
    imaged = set(edge_map.values())
    for a, b in split.values():
        imaged.update((a, b))
    created = tuple((ec.index, ec.degree) for ec in sk_new.edge_classes
                    if ec.index not in imaged)
    removed_edges = tuple(ec.index for ec in sk_old.edge_classes
                          if ec.index not in edge_map and ec.index not in split)
    old_deg1 = {ec.index for ec in sk_old.edge_classes if ec.degree == 1}
    back = {new: old for old, new in edge_map.items()}
    created_deg1 = tuple(ec.index for ec in sk_new.edge_classes
                         if ec.degree == 1 and back.get(ec.index) not in old_deg1)
    return MoveOutcome(
        move=move, result=result, tet_map=tet_map, new_tets=tuple(new_tets),
        edge_map=edge_map, degree_deltas=deltas, created_edges=created,
        removed_edges=removed_edges, split_edges=split, merged_edges=merged,
        created_degree_one=created_deg1, inverse=inverse)


# ---------------------------------------------------------------------------
# 2-3 move
# ---------------------------------------------------------------------------

def pachner_2_3(tri: Triangulation, face: Union[FaceRef, tuple[int, int]],
                sk: Optional[SkeletonIndex] = None) -> MoveOutcome:
    """Replace the two distinct tetrahedra sharing `face` with three
    tetrahedra arranged around a new degree-three edge."""
    t0, f0 = face
    if not (0 <= t0 < tri.n_tets and 0 <= f0 < 4):
        raise MoveError(f"no such face {FaceRef(t0, f0)}")
    g = tri.gluing(t0, f0)
    t1, f1, sigma = g.tet, g.face, g.perm
    if t1 == t0:
        raise MoveError("a 2-3 move needs a pair of distinct tetrahedra "
                        f"sharing the triangle; face {FaceRef(t0, f0)} joins "
                        "a tetrahedron to itself")
    sk = sk or build_skeleton(tri)
    tri_vs = [v for v in range(4) if v != f0]  # triangle vertices a0<a1<a2

    # new tet N_k omits triangle vertex a_k and is labelled
    #   0 -> a_i, 1 -> a_j (i < j), 2 -> apex of t0, 3 -> apex of t1
    def rho(k: int) -> Perm4:
        i, j = (x for x in range(3) if x != k)
        return Perm4((tri_vs[i], tri_vs[j], f0, tri_vs[k]))

    def rho1(k: int) -> Perm4:
        i, j = (x for x in range(3) if x != k)
        return Perm4((sigma[tri_vs[i]], sigma[tri_vs[j]], sigma[tri_vs[k]], f1))

    def label_in(k: int, x: int) -> int:
        # label of triangle vertex a_x inside N_k (x != k)
        i, j = (y for y in range(3) if y != k)
        return 0 if x == i else 1

    internal = []
    for k in range(3):
        for l in range(k + 1, 3):
            m = next(x for x in range(3) if x not in (k, l))
            image = [None] * 4
            image[label_in(k, m)] = label_in(l, m)
            image[2] = 2
            image[3] = 3
            image[label_in(k, l)] = label_in(l, k)
            internal.append(((k, label_in(k, l)), (l, label_in(l, k)), Perm4(image)))

    boundary = []
    for k in range(3):
        boundary.append((k, 3, FaceRef(t0, tri_vs[k]), rho(k)))
        boundary.append((k, 2, FaceRef(t1, sigma[tri_vs[k]]), rho1(k)))

    result, tet_map, slots, translation = _assemble(tri, [t0, t1], 3, internal, boundary)
    sk_new = build_skeleton(result)
    new_edge = sk_new.edge_of[EdgeRef(slots[0], EDGE_INDEX[(2, 3)])]
    return _finish(move23(t0, f0), sk, result, tet_map, slots,
                   inverse=move32(new_edge), translation=translation)


# ---------------------------------------------------------------------------
# 3-2 move
# ---------------------------------------------------------------------------

def _book_data(tri: Triangulation, ec: EdgeClass):
    """Per-wedge (tet, tail, head, entered-face, exit-face), in book order."""
    out = []
    for (ref, flag), entry in zip(ec.reps, ec.book):
        a, b = EDGE_VERTICES[ref.edge]
        p, q = (a, b) if flag == 1 else (b, a)
        out.append((entry.tet, p, q, entry.faces[0], entry.faces[1]))
    return out


def pachner_3_2(tri: Triangulation, edge: int,
                sk: Optional[SkeletonIndex] = None) -> MoveOutcome:
    """Collapse the three distinct tetrahedra around a degree-three edge onto
    the two sides of their equatorial triangle."""
    sk = sk or build_skeleton(tri)
    ec = sk.edge_class(edge)
    if ec.degree != 3:
        raise MoveError(f"a 3-2 move needs a degree three edge; class {edge} "
                        f"has degree {ec.degree}")
    wedges = _book_data(tri, ec)
    if len({w[0] for w in wedges}) != 3:
        raise MoveError("a 3-2 move needs the three tetrahedra incident to "
                        "the edge to be distinct")

    # new tets: M0 carries the tail of the directed edge, M1 the head;
    # labels 0,1,2 are the equatorial points E_0, E_1, E_2, label 3 the pole.
    # Seen from wedge j, E_{j-1} is the label `exit` and E_j the label
    # `enter` (the third vertex of a face at the edge is the other face).
    internal = [((0, 3), (1, 3), IDENT)]
    boundary = []
    for j, (t, p, q, enter, exit_) in enumerate(wedges):
        m = next(x for x in range(3) if x not in ((j - 1) % 3, j))
        nu0 = [None] * 4
        nu0[(j - 1) % 3] = exit_
        nu0[j] = enter
        nu0[3] = p
        nu0[m] = q
        boundary.append((0, m, FaceRef(t, q), Perm4(nu0)))
        nu1 = list(nu0)
        nu1[3] = q
        nu1[m] = p
        boundary.append((1, m, FaceRef(t, p), Perm4(nu1)))

    result, tet_map, slots, translation = _assemble(
        tri, sorted({w[0] for w in wedges}), 2, internal, boundary)
    return _finish(move32(edge), sk, result, tet_map, slots,
                   inverse=move23(slots[0], 3), translation=translation)


# ---------------------------------------------------------------------------
# 0-2 move
# ---------------------------------------------------------------------------

def book_triangle(tri: Triangulation, ec: EdgeClass, pos: int) -> frozenset:
    """The triangle crossed between book positions pos and pos+1, as its
    unordered pair of model faces."""
    d = ec.degree
    w = _book_data(tri, ec)
    t, p, q, enter, exit_ = w[pos % d]
    t2, p2, q2, enter2, exit2 = w[(pos + 1) % d]
    return frozenset((FaceRef(t, exit_), FaceRef(t2, enter2)))


def move_0_2(tri: Triangulation, edge: int, pos_p: int, pos_q: int,
             sk: Optional[SkeletonIndex] = None) -> MoveOutcome:
    """Unglue two distinct triangles of the book around `edge` and glue a
    bird beak into the hole, splitting the book into two half-books."""
    sk = sk or build_skeleton(tri)
    ec = sk.edge_class(edge)
    if ec.book is None:
        raise MoveError(f"edge class {edge} is identified with itself in "
                        "reverse; its book is not a cycle")
    d = ec.degree
    if not (0 <= pos_p < d and 0 <= pos_q < d) or pos_p == pos_q:
        raise MoveError(f"a 0-2 move needs two distinct book positions in "
                        f"0..{d - 1}, got {pos_p} and {pos_q}")
    p_pos, q_pos = sorted((pos_p, pos_q))
    if book_triangle(tri, ec, p_pos) == book_triangle(tri, ec, q_pos):
        raise MoveError("a 0-2 move needs two distinct triangles of the "
                        "triangulation; the chosen book positions name the "
                        "same triangle")
    wedges = _book_data(tri, ec)

    # The cut at position k runs through the triangle between wedges k and
    # k+1.  Its third vertex is label `enter` seen from wedge k and label
    # `exit` seen from wedge k+1.
    tp, tp_p, tp_q, tp_enter, tp_exit = wedges[p_pos]
    tp1, tp1_p, tp1_q, tp1_enter, tp1_exit = wedges[(p_pos + 1) % d]
    tq, tq_p, tq_q, tq_enter, tq_exit = wedges[q_pos]
    tq1, tq1_p, tq1_q, tq1_enter, tq1_exit = wedges[(q_pos + 1) % d]

    # new tets: A caps the half-book after position p, B the one after q;
    # labels 0 -> edge tail, 1 -> edge head, 2 -> X (cut-p third vertex),
    # 3 -> Y (cut-q third vertex).  Faces 0,1 of A glue to faces 0,1 of B;
    # their common edge {2,3} is the hinge of the new beak.
    internal = [((0, 0), (1, 0), IDENT), ((0, 1), (1, 1), IDENT)]
    reglue = [
        # A face 3 ({P,Q,X}) onto the revealed face of the wedge after cut p
        (0, 3, FaceRef(tp1, tp1_enter), Perm4((tp1_p, tp1_q, tp1_exit, tp1_enter))),
        # A face 2 ({P,Q,Y}) onto the revealed face of the wedge before cut q
        (0, 2, FaceRef(tq, tq_exit), Perm4((tq_p, tq_q, tq_exit, tq_enter))),
        # B face 3 onto the wedge before cut p
        (1, 3, FaceRef(tp, tp_exit), Perm4((tp_p, tp_q, tp_enter, tp_exit))),
        # B face 2 onto the wedge after cut q
        (1, 2, FaceRef(tq1, tq1_enter), Perm4((tq1_p, tq1_q, tq1_enter, tq1_exit))),
    ]

    n_old = tri.n_tets
    tet_map = {t: t for t in range(n_old)}
    slots = [n_old, n_old + 1]
    out = _Table(n_old + 2)
    retargeted = {item[2] for item in reglue}
    for t in range(n_old):
        for f in range(4):
            if FaceRef(t, f) in retargeted:
                continue
            g = tri.gluing(t, f)
            if FaceRef(g.tet, g.face) in retargeted:
                continue
            out.record((t, f), (g.tet, g.face), g.perm)
    for (a_loc, a_face), (b_loc, b_face), perm in internal:
        out.record_pair((slots[a_loc], a_face), (slots[b_loc], b_face), perm)
    for (local, new_face, old_face, nu) in reglue:
        assert nu[new_face] == old_face.face
        out.record_pair((slots[local], new_face), (old_face.tet, old_face.face), nu)
    result = out.freeze()

    sk_new = build_skeleton(result)
    hinge = sk_new.edge_of[EdgeRef(slots[0], EDGE_INDEX[(2, 3)])]
    return _finish(move02(edge, p_pos, q_pos), sk, result, tet_map, slots,
                   inverse=move20(hinge), allow_split=edge)


# ---------------------------------------------------------------------------
# 2-0 move
# ---------------------------------------------------------------------------

def move_2_0(tri: Triangulation, edge: int,
             sk: Optional[SkeletonIndex] = None) -> MoveOutcome:
    """Collapse a bird beak: remove the two distinct tetrahedra around a
    degree-two edge, provided the two opposite edges are not identified."""
    sk = sk or build_skeleton(tri)
    ec = sk.edge_class(edge)
    if ec.degree != 2:
        raise MoveError(f"a 2-0 move needs a degree two edge; class {edge} "
                        f"has degree {ec.degree}")
    if ec.book is None:
        raise MoveError(f"edge class {edge} is identified with itself in reverse")
    (ta, pa, qa, enter_a, exit_a), (tb, pb, qb, enter_b, exit_b) = _book_data(tri, ec)
    if ta == tb:
        raise MoveError("a 2-0 move needs the two tetrahedra incident to the "
                        "degree two edge to be distinct")
    opp_a = sk.edge_of[EdgeRef(ta, OPPOSITE_EDGE_OF[(pa, qa)])]
    opp_b = sk.edge_of[EdgeRef(tb, OPPOSITE_EDGE_OF[(pb, qb)])]
    if opp_a == opp_b:
        raise MoveError("the two edges opposite the degree two edge are "
                        "identified; the 2-0 move does not apply")

    beak_faces = {FaceRef(ta, f) for f in range(4)} | {FaceRef(tb, f) for f in range(4)}
    cross_ab = tri.gluing(ta, exit_a).perm   # ta labels -> tb labels
    cross_ba = tri.gluing(tb, exit_b).perm   # tb labels -> ta labels

    def resolve(start: FaceRef):
        """Partner of an outer beak face, following chains through the beak.

        Returns (surviving face, perm start-tet-labels -> survivor labels)."""
        perm = IDENT
        current = start
        for _ in range(10):
            g = tri.gluing(*current)
            perm = g.perm * perm
            target = FaceRef(g.tet, g.face)
            if target not in beak_faces:
                return target, perm
            crossing = cross_ab if target.tet == ta else cross_ba
            current = FaceRef(tb if target.tet == ta else ta, crossing[target.face])
            perm = crossing * perm
        raise MoveError("collapsing this bird beak would leave nothing on one "
                        "side; the beak is glued only to itself")

    removed = sorted((ta, tb))
    if tri.n_tets - 2 < 1:
        raise MoveError("collapsing this bird beak would leave an empty "
                        "triangulation")
    tet_map, _slots = _final_indices(tri.n_tets, removed, 0)
    out = _Table(tri.n_tets - 2)

    # restore the two triangles the inverse 0-2 move cut: the outer faces of
    # the beak pair up by the hinge endpoint their face index names
    opp_va, opp_vb = (v for v in range(4) if v not in (pa, qa))
    restored: list[tuple[FaceRef, FaceRef, EdgeRef]] = []
    for v in (pa, qa):
        fa = FaceRef(ta, v)
        fb = FaceRef(tb, cross_ab[v])
        left, perm_l = resolve(fa)
        right, perm_r = resolve(fb)
        if left == right:
            raise MoveError("collapsing this bird beak would glue a face to "
                            "itself")
        perm = perm_r * cross_ab * perm_l.inverse()
        pair = frozenset((FaceRef(tet_map[left.tet], left.face),
                          FaceRef(tet_map[right.tet], right.face)))
        if restored and frozenset((restored[0][0], restored[0][1])) == pair:
            raise MoveError("collapsing this bird beak would identify its two "
                            "restored triangles; the configuration is not the "
                            "reverse of any 0-2 move")
        out.record_pair((tet_map[left.tet], left.face),
                        (tet_map[right.tet], right.face), perm)
        # the merged class's model edge on the left side of this seam: the
        # image of the edge opposite the hinge in the collapsed tetrahedron
        seam_model = EdgeRef(tet_map[left.tet],
                             EDGE_INDEX[(perm_l[opp_va], perm_l[opp_vb])])
        restored.append((FaceRef(tet_map[left.tet], left.face),
                         FaceRef(tet_map[right.tet], right.face), seam_model))

    removed_set = set(removed)
    for t in range(tri.n_tets):
        if t in removed_set:
            continue
        for f in range(4):
            if (tet_map[t], f) in out.pairs:
                continue
            g = tri.gluing(t, f)
            if g.tet in removed_set:
                raise AssertionError(f"face {FaceRef(t, f)} still glued to the beak")
            out.record((tet_map[t], f), (tet_map[g.tet], g.face), g.perm)
    result = out.freeze()

    outcome = _finish(move20(edge), sk, result, tet_map, [],
                      inverse=move20(edge),  # placeholder, replaced below
                      allow_merge=(opp_a, opp_b))
    inverse = _inverse_of_2_0(outcome, restored)
    return dataclasses.replace(outcome, inverse=inverse)


def _inverse_of_2_0(outcome: MoveOutcome, restored) -> ElementaryMove:
    """The 0-2 move on the result that re-creates the collapsed beak.

    Each restored seam is pinned down by the exact model edge of the merged
    class on its left side plus the left face itself, which stays unambiguous
    even when the same triangle appears several times around the edge."""
    sk_new = build_skeleton(outcome.result)
    merged_new = None
    if outcome.merged_edges:
        merged_new = next(iter(outcome.merged_edges.values()))
    else:
        merged_new = sk_new.edge_of[restored[0][2]]
    ec = sk_new.edge_class(merged_new)
    wedges = _book_data(outcome.result, ec)
    positions = []
    for (left, _right, seam_model) in restored:
        pos = None
        for j, (t, p, q, enter, exit_) in enumerate(wedges):
            if EdgeRef(t, EDGE_INDEX[(p, q)]) != seam_model:
                continue
            if FaceRef(t, exit_) == left:
                pos = j
            elif FaceRef(t, enter) == left:
                pos = (j - 1) % ec.degree
            break
        if pos is None:
            raise AssertionError("could not locate a restored seam in the "
                                 "merged book")
        positions.append(pos)
    p, q = sorted(positions)
    return move02(merged_new, p, q)


# ---------------------------------------------------------------------------
# dispatch, prediction, classification
# ---------------------------------------------------------------------------

def apply_move(tri: Triangulation, m: ElementaryMove,
               sk: Optional[SkeletonIndex] = None) -> MoveOutcome:
    if m.kind == "move23":
        return pachner_2_3(tri, m.face, sk)
    if m.kind == "move32":
        return pachner_3_2(tri, m.edge, sk)
    if m.kind == "move02":
        return move_0_2(tri, m.edge, m.positions[0], m.positions[1], sk)
    return move_2_0(tri, m.edge, sk)


def predict_deltas(tri: Triangulation, m: ElementaryMove,
                   sk: Optional[SkeletonIndex] = None) -> dict[int, int]:
    """Per-class degree changes implied by the nine-edge accounting: a 2-3
    move drops the three equatorial edges by one and raises the six others by
    one, with multiplicity when classes coincide; a 3-2 move is the mirror
    image.  No triangulation is built."""
    sk = sk or build_skeleton(tri)
    deltas: dict[int, int] = {}

    def add(ref: EdgeRef, amount: int):
        cid = sk.edge_of[ref]
        deltas[cid] = deltas.get(cid, 0) + amount

    if m.kind == "move23":
        t0, f0 = m.face
        g = tri.gluing(t0, f0)
        if g.tet == t0:
            raise MoveError("2-3 move on a self-glued pair is not applicable")
        tri_vs = [v for v in range(4) if v != f0]
        for i in range(3):
            for j in range(i + 1, 3):
                add(EdgeRef(t0, EDGE_INDEX[(tri_vs[i], tri_vs[j])]), -1)
        for v in tri_vs:
            add(EdgeRef(t0, EDGE_INDEX[(f0, v)]), +1)
            add(EdgeRef(g.tet, EDGE_INDEX[(g.face, g.perm[v])]), +1)
        return deltas

    if m.kind == "move32":
        ec = sk.edge_class(m.edge)
        if ec.degree != 3 or len({r.tet for r, _ in ec.reps}) != 3:
            raise MoveError("3-2 move needs a degree three edge with three "
                            "distinct tetrahedra")
        for (t, p, q, enter, exit_) in _book_data(tri, ec):
            add(EdgeRef(t, EDGE_INDEX[(enter, exit_)]), +1)  # equator E_{j-1}E_j
            add(EdgeRef(t, EDGE_INDEX[(p, enter)]), -1)      # side edge tail-E_j
            add(EdgeRef(t, EDGE_INDEX[(q, enter)]), -1)      # side edge head-E_j
        assert m.edge not in deltas
        return deltas

    raise MoveError(f"degree prediction is defined for 2-3 and 3-2 moves, "
                    f"not {m.kind}")


NONE = "none"
VIA_2_3 = "via_2_3"
VIA_3_2 = "via_3_2"


@dataclass(frozen=True)
class DegreeOneCreation:
    pattern: str               # none / via_2_3 / via_3_2
    witnesses: tuple[int, ...]  # degree-two edge classes the move would
                                # reduce to degree one


def classify_degree_one_creation(tri: Triangulation, m: ElementaryMove,
                                 sk: Optional[SkeletonIndex] = None) -> DegreeOneCreation:
    """Predict whether applying `m` creates a degree-one edge.

    Works from the degree-delta accounting alone, without building the moved
    triangulation.  Every witness necessarily has degree exactly two
    beforehand: no single 2-3 or 3-2 move can pull an edge of higher degree
    down to one.
    """
    sk = sk or build_skeleton(tri)
    deltas = predict_deltas(tri, m, sk)
    witnesses = sorted(cid for cid, delta in deltas.items()
                       if sk.edge_classes[cid].degree + delta == 1)
    if not witnesses:
        return DegreeOneCreation(NONE, ())
    pattern = VIA_2_3 if m.kind == "move23" else VIA_3_2
    return DegreeOneCreation(pattern, tuple(witnesses))


# ---------------------------------------------------------------------------
# move paths
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MovePath:
    initial: Triangulation
    moves: tuple[ElementaryMove, ...]

    def __len__(self) -> int:
        return len(self.moves)


class PathReplayError(ValueError):
    def __init__(self, index: int, cause: Exception):
        super().__init__(f"move {index} is not applicable: {cause}")
        self.index = index
        self.cause = cause


def apply_path_outcomes(path: MovePath) -> list[MoveOutcome]:
    outcomes = []
    state = path.initial
    for i, m in enumerate(path.moves):
        try:
            out = apply_move(state, m)
        except (MoveError, KeyError, IndexError) as exc:
            raise PathReplayError(i, exc) from exc
        outcomes.append(out)
        state = out.result
    return outcomes


def apply_path(path: MovePath) -> list[Triangulation]:
    """Replay a path, returning every state including the initial one."""
    states = [path.initial]
    for out in apply_path_outcomes(path):
        states.append(out.result)
    return states


def reverse_path(path: MovePath) -> MovePath:
    """The inverse path: each move's canonical inverse, in reverse order."""
    outcomes = apply_path_outcomes(path)
    final = outcomes[-1].result if outcomes else path.initial
    inv_moves = tuple(out.inverse for out in reversed(outcomes))
    return MovePath(final, inv_moves)


# -- path file format -------------------------------------------------------

def path_to_text(path: MovePath, triangulation_file: str) -> str:
    lines = [f"triangulation {triangulation_file}"]
    lines.extend(m.describe() for m in path.moves)
    return "\n".join(lines) + "\n"


def parse_path_text(text: str, load_triangulation: Callable[[str], Triangulation]) -> MovePath:
    """Parse a path file; `load_triangulation(name)` supplies the initial
    state named by the header line."""
    from .kernel import ParseError

    initial = None
    moves: list[ElementaryMove] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if initial is None:
            if parts[0] != "triangulation" or len(parts) != 2:
                raise ParseError(lineno, "expected header 'triangulation <file>'")
            initial = load_triangulation(parts[1])
            continue
        try:
            if parts[0] == "23" and len(parts) == 3:
                moves.append(move23(int(parts[1]), int(parts[2])))
            elif parts[0] == "32" and len(parts) == 2:
                moves.append(move32(int(parts[1])))
            elif parts[0] == "02" and len(parts) == 4:
                moves.append(move02(int(parts[1]), int(parts[2]), int(parts[3])))
            elif parts[0] == "20" and len(parts) == 2:
                moves.append(move20(int(parts[1])))
            else:
                raise ValueError
        except ValueError:
            raise ParseError(lineno, f"bad move line {line!r}") from None
    if initial is None:
        raise ParseError(1, "empty path file")
    return MovePath(initial, tuple(moves))
