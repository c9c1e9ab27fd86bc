"""Dev scratch: validate the 4-move V-move schema against direct 0-2 surgery."""
import sys
sys.path.insert(0, 'tests')
from test_moves import seeds
from pachner.kernel import (build_skeleton, iso_signature, EdgeRef, EDGE_INDEX,
                            EDGE_VERTICES, FaceRef)
from pachner.moves import (pachner_2_3, pachner_3_2, move_0_2, MoveError,
                           _book_data)

OPP = {}
for e, (a, b) in enumerate(EDGE_VERTICES):
    rest = tuple(v for v in range(4) if v not in (a, b))
    OPP[e] = EDGE_INDEX[rest]


def v_move_schema(tri, w, hinge_edge, delta_face):
    """hinge_edge: model edge index of w; delta_face: face of w containing it."""
    c, d = EDGE_VERTICES[hinge_edge]
    assert delta_face not in (c, d)
    a = delta_face
    b = next(v for v in range(4) if v not in (a, c, d))  # P = non-hinge vertex of delta
    sk = build_skeleton(tri)
    # preconditions: distinct partner; delta's edges all deg >= 3
    g = tri.gluing(w, a)
    if g.tet == w:
        raise MoveError("delta partner not distinct")
    for (x, y) in ((b, c), (b, d), (c, d)):
        deg = sk.edge_classes[sk.edge_of[EdgeRef(w, EDGE_INDEX[(x, y)])]].degree
        if deg < 3:
            raise MoveError(f"delta edge ({x},{y}) degree {deg} < 3")

    # m1: 2-3 at delta
    m1 = pachner_2_3(tri, FaceRef(w, a), sk)
    lam = m1.inverse.edge  # created central edge class id (3-2 target id == class id)
    tri_vs = sorted(v for v in range(4) if v != a)   # delta vertices ascending
    rank = {v: i for i, v in enumerate(tri_vs)}      # rank of delta vertex
    # N_k omits tri_vs[k]; G_PQ contains P=b and Q=c (omits X=d) etc.
    # take Q=c, X=d (hinge endpoints); P=b
    G_PQ = m1.new_tets[rank[d]]
    G_PX = m1.new_tets[rank[c]]
    G_QX = m1.new_tets[rank[b]]

    def label_in(k, v):
        kept = [x for x in range(3) if x != k]
        return 0 if rank[v] == kept[0] else 1

    # m2: 2-3 at face of G_PQ opposite Q (=c)
    q_label = label_in(rank[d], c)
    p_label = label_in(rank[d], b)
    m2 = pachner_2_3(m1.result, FaceRef(G_PQ, q_label))
    lam = m2.edge_map[lam]
    # m2's triangle = G_PQ's face {p_label, 2, 3}; vertices ascending:
    face_vs = sorted([p_label, 2, 3])   # = [p_label, 2, 3] since p_label in {0,1}
    rank2 = {v: i for i, v in enumerate(face_vs)}
    # N'_k omits face_vs[k]: H_PY omits 2 (U); H_YU omits p_label (P)
    H_PY = m2.new_tets[rank2[2]]
    # label of P inside H_PY: kept = ranks != rank2[2]: P has rank2[p_label]=0 -> label 0
    m3 = pachner_2_3(m2.result, FaceRef(H_PY, 0))
    lam = m3.edge_map[lam]
    m4 = pachner_3_2(m3.result, lam)
    return m1, m2, m3, m4


def oracle_0_2(tri, w, hinge_edge):
    sk = build_skeleton(tri)
    cls = sk.edge_class_of(EdgeRef(w, hinge_edge))
    wedges = _book_data(tri, cls)
    # find the wedge at (w, hinge_edge)
    pos = next(j for j, (t, p, q, en, ex) in enumerate(wedges)
               if t == w and EDGE_INDEX[(p, q)] == hinge_edge)
    d = cls.degree
    before = (pos - 1) % d
    return move_0_2(tri, cls.index, min(before, pos), max(before, pos), sk)


checked = 0
agree = 0
pair_agree = 0
for tri in seeds(6):
    for w in range(tri.n_tets):
        for hinge in range(6):
            for df in [f for f in range(4) if f not in EDGE_VERTICES[hinge]]:
                try:
                    m1, m2, m3, m4 = v_move_schema(tri, w, hinge, df)
                except MoveError:
                    continue
                res = m4.result
                assert res.n_tets == tri.n_tets + 2
                # no intermediate degree-one edges
                for state in (m1.result, m2.result, m3.result, res):
                    degs = [e.degree for e in build_skeleton(state).edge_classes]
                    assert 1 not in degs, "degree-one edge appeared!"
                try:
                    oracle = oracle_0_2(tri, w, hinge)
                except MoveError:
                    oracle = None
                if oracle is not None:
                    same = iso_signature(res) == iso_signature(oracle.result)
                    agree += same
                    checked += 1
                    if not same:
                        print("MISMATCH", w, hinge, df)
                        sys.exit(1)
                # opposite-pair symmetry
                try:
                    o1, o2, o3, o4 = v_move_schema(tri, w, OPP[hinge],
                        next(f for f in range(4) if f not in EDGE_VERTICES[OPP[hinge]]
                             and tri.gluing(w, f).tet != w))
                    if iso_signature(o4.result) == iso_signature(res):
                        pair_agree += 1
                except (MoveError, StopIteration):
                    pass
print(f"V-schema vs 0-2 oracle: {agree}/{checked} agree; pair symmetry hits: {pair_agree}")
