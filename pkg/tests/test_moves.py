"""Move tests: round-trips, degree-delta law, classifier vs oracle."""
from __future__ import annotations

import random

import pytest

from pachner.kernel import (
    FaceRef,
    Triangulation,
    build_skeleton,
    is_isomorphic,
    iso_signature,
    validate,
    CLOSED_ONE_VERTEX,
)
from pachner.moves import (
    MoveError,
    MovePath,
    apply_move,
    apply_path,
    classify_degree_one_creation,
    move02,
    move20,
    move23,
    move32,
    move_0_2,
    move_2_0,
    pachner_2_3,
    pachner_3_2,
    parse_path_text,
    path_to_text,
    predict_deltas,
    reverse_path,
)

from helpers import two_tet_closed_vertex_fixtures


def seeds(count=4):
    """Degree-one-free fixtures to exercise moves on."""
    out = []
    for tri in two_tet_closed_vertex_fixtures():
        sk = build_skeleton(tri)
        if sk.min_degree() >= 2 and iso_signature(tri).text not in {iso_signature(t).text for t in out}:
            out.append(tri)
        if len(out) >= count:
            break
    return out


def all_fixture_states(depth: int = 1, max_states: int = 40):
    """Fixture seeds plus everything reachable by a few 2-3 moves."""
    states = list(seeds())
    frontier = list(states)
    for _ in range(depth):
        nxt = []
        for tri in frontier:
            for face in tri.triangles():
                try:
                    out = pachner_2_3(tri, face)
                except MoveError:
                    continue
                nxt.append(out.result)
                if len(states) + len(nxt) >= max_states:
                    break
            if len(states) + len(nxt) >= max_states:
                break
        states.extend(nxt)
        frontier = nxt
    return states[:max_states]



def first_proper_face(tri):
    return next(f for f in tri.triangles() if tri.gluing(*f).tet != f.tet)

def test_2_3_basic_postconditions():
    for tri in seeds():
        for face in tri.triangles():
            if tri.gluing(*face).tet == face.tet:
                continue
            out = pachner_2_3(tri, face)
            assert out.result.n_tets == tri.n_tets + 1
            created = dict(out.created_edges)
            assert len(created) == 1
            assert list(created.values()) == [3]
            # validity is preserved
            assert validate(out.result, CLOSED_ONE_VERTEX).orientable


def test_2_3_rejects_self_gluing():
    # a face joining a tetrahedron to itself exists in some fixture states
    found = False
    for tri in two_tet_closed_vertex_fixtures():
        for t in range(tri.n_tets):
            for f in range(4):
                g = tri.gluing(t, f)
                if g.tet == t:
                    found = True
                    with pytest.raises(MoveError, match="distinct"):
                        pachner_2_3(tri, FaceRef(t, f))
        if found:
            break
    assert found


def test_2_3_then_3_2_roundtrip():
    for tri in seeds():
        for face in tri.triangles()[:4]:
            if tri.gluing(*face).tet == face.tet:
                continue
            out = pachner_2_3(tri, face)
            back = pachner_3_2(out.result, out.inverse.edge)
            assert is_isomorphic(back.result, tri)
            assert iso_signature(back.result) == iso_signature(tri)


def test_3_2_then_2_3_roundtrip():
    for tri in all_fixture_states(depth=1, max_states=12):
        sk = build_skeleton(tri)
        for ec in sk.edge_classes:
            if ec.degree != 3 or len({r.tet for r, _ in ec.reps}) != 3:
                continue
            out = pachner_3_2(tri, ec.index, sk)
            assert out.result.n_tets == tri.n_tets - 1
            back = apply_move(out.result, out.inverse)
            assert iso_signature(back.result) == iso_signature(tri)


def test_3_2_rejects_wrong_degree_and_repeats():
    tri = seeds()[0]
    sk = build_skeleton(tri)
    for ec in sk.edge_classes:
        if ec.degree != 3:
            with pytest.raises(MoveError, match="degree three"):
                pachner_3_2(tri, ec.index, sk)
        elif len({r.tet for r, _ in ec.reps}) != 3:
            with pytest.raises(MoveError, match="distinct"):
                pachner_3_2(tri, ec.index, sk)


def _cut_sides_avoid_edge(tri, sk, ec, pos) -> bool:
    """True when neither side edge of the book triangle at `pos` lies on the
    class itself (the generic situation of the cross-section figure)."""
    from pachner.moves import _book_data
    from pachner.kernel import EDGE_INDEX, EdgeRef

    w = _book_data(tri, ec)
    t, p, q, enter, exit_ = w[pos % ec.degree]
    for side in ((p, enter), (q, enter)):
        if sk.edge_of[EdgeRef(t, EDGE_INDEX[side])] == ec.index:
            return False
    return True


def test_0_2_postconditions_and_split_arithmetic():
    generic_checked = 0
    for tri in seeds(3):
        sk = build_skeleton(tri)
        for ec in sk.edge_classes:
            d = ec.degree
            for p in range(d):
                for q in range(p + 1, d):
                    try:
                        out = move_0_2(tri, ec.index, p, q, sk)
                    except MoveError:
                        continue
                    assert out.result.n_tets == tri.n_tets + 2
                    created = dict(out.created_edges)
                    # exactly one new edge: the hinge, at degree two
                    assert list(created.values()) == [2]
                    (ca, cb) = out.split_edges[ec.index]
                    sk2 = build_skeleton(out.result)
                    degs = sorted((sk2.edge_classes[ca].degree,
                                   sk2.edge_classes[cb].degree))
                    if _cut_sides_avoid_edge(tri, sk, ec, p) and \
                            _cut_sides_avoid_edge(tri, sk, ec, q):
                        # generic site: the book splits into half-books of
                        # (q - p) and d - (q - p) wedges, each gaining one
                        # wedge from its capping tetrahedron
                        arc = q - p
                        assert degs == sorted((arc + 1, d - arc + 1))
                        assert sum(degs) == d + 2
                        generic_checked += 1
    assert generic_checked > 0


def test_0_2_then_2_0_roundtrip():
    for tri in seeds(3):
        sk = build_skeleton(tri)
        done = 0
        for ec in sk.edge_classes:
            for p in range(ec.degree):
                for q in range(p + 1, ec.degree):
                    try:
                        out = move_0_2(tri, ec.index, p, q, sk)
                    except MoveError:
                        continue
                    back = apply_move(out.result, out.inverse)
                    assert iso_signature(back.result) == iso_signature(tri)
                    done += 1
        assert done > 0


def test_2_0_then_0_2_roundtrip():
    # produce beaks via 0-2 first, then collapse an unrelated way around
    tri = seeds()[0]
    sk = build_skeleton(tri)
    ec = next(e for e in sk.edge_classes if e.degree >= 3)
    out = move_0_2(tri, ec.index, 0, 1, sk)
    hinge = out.inverse.edge
    collapsed = move_2_0(out.result, hinge)
    assert collapsed.result.n_tets == tri.n_tets
    assert iso_signature(collapsed.result) == iso_signature(tri)
    # and the recorded inverse of the 2-0 re-creates an isomorphic state
    redo = apply_move(collapsed.result, collapsed.inverse)
    assert iso_signature(redo.result) == iso_signature(out.result)


def test_2_0_rejects_bad_targets():
    tri = seeds()[0]
    sk = build_skeleton(tri)
    for ec in sk.edge_classes:
        if ec.degree != 2:
            with pytest.raises(MoveError, match="degree two"):
                move_2_0(tri, ec.index, sk)


def test_degree_delta_law_exact():
    """Predicted per-class deltas match recomputed skeleton degrees exactly."""
    rng = random.Random(11)
    checked = 0
    for tri in all_fixture_states(depth=1, max_states=20):
        sk = build_skeleton(tri)
        moves = [move23(f.tet, f.face) for f in tri.triangles()
                 if tri.gluing(*f).tet != f.tet]
        moves += [move32(ec.index) for ec in sk.edge_classes
                  if ec.degree == 3 and len({r.tet for r, _ in ec.reps}) == 3]
        for m in moves:
            predicted = predict_deltas(tri, m, sk)
            out = apply_move(tri, m, sk)
            actual = dict(out.degree_deltas)
            for cid in set(predicted) | set(actual):
                assert predicted.get(cid, 0) == actual.get(cid, 0), (m, cid)
            checked += 1
    assert checked >= 50


def test_classifier_agrees_with_apply_and_inspect():
    for tri in all_fixture_states(depth=1, max_states=15):
        sk = build_skeleton(tri)
        moves = [move23(f.tet, f.face) for f in tri.triangles()
                 if tri.gluing(*f).tet != f.tet]
        moves += [move32(ec.index) for ec in sk.edge_classes
                  if ec.degree == 3 and len({r.tet for r, _ in ec.reps}) == 3]
        for m in moves:
            verdict = classify_degree_one_creation(tri, m, sk)
            out = apply_move(tri, m, sk)
            made_one = bool(out.created_degree_one)
            assert (verdict.pattern != "none") == made_one
            # every witness has degree exactly two beforehand
            for w in verdict.witnesses:
                assert sk.edge_classes[w].degree == 2


def test_apply_path_and_reverse():
    tri = seeds()[0]
    face = first_proper_face(tri)
    out1 = pachner_2_3(tri, face)
    path = MovePath(tri, (move23(face.tet, face.face), out1.inverse))
    states = apply_path(path)
    assert len(states) == 3
    assert iso_signature(states[-1]) == iso_signature(tri)
    rev = reverse_path(MovePath(tri, (move23(face.tet, face.face),)))
    assert iso_signature(apply_path(rev)[-1]) == iso_signature(tri)


def test_empty_path():
    tri = seeds()[0]
    assert apply_path(MovePath(tri, ())) == [tri]


def test_path_file_roundtrip(tmp_path):
    tri = seeds()[0]
    face = first_proper_face(tri)
    path = MovePath(tri, (move23(face.tet, face.face),))
    text = path_to_text(path, "seed.tri")
    again = parse_path_text(text, lambda name: tri)
    assert again.moves == path.moves
    states = apply_path(again)
    assert states[-1].n_tets == tri.n_tets + 1
