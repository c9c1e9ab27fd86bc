"""Kernel tests: gluing validation, skeleton, links, signatures."""
from __future__ import annotations

import itertools
import random

import pytest

from pachner.kernel import (
    ALL_PERMS,
    CLOSED_ONE_VERTEX,
    IDEAL,
    EdgeRef,
    InvalidTriangulation,
    ParseError,
    Perm4,
    Triangulation,
    build_skeleton,
    is_isomorphic,
    is_orientable,
    iso_signature,
    parse_gluing_table,
    triangulation_from_signature,
    validate,
)

from helpers import (
    brute_force_isomorphic,
    one_tet_snake,
    two_tet_closed_vertex_fixtures,
)


def test_perm_algebra():
    p = Perm4((1, 2, 0, 3))
    q = Perm4((0, 3, 2, 1))
    assert (p * q).image == tuple(p[q[i]] for i in range(4))
    assert (p * p.inverse()).image == (0, 1, 2, 3)
    assert Perm4((1, 0, 2, 3)).is_odd()
    assert not Perm4((0, 1, 2, 3)).is_odd()
    with pytest.raises(ValueError):
        Perm4((0, 0, 2, 3))


def test_self_gluing_rejected():
    pairs = {
        (0, 0): (0, 0, Perm4((0, 2, 1, 3))),
        (0, 1): (0, 1, Perm4((2, 1, 0, 3))),
        (0, 2): (0, 3, Perm4((0, 1, 3, 2))),
    }
    with pytest.raises(InvalidTriangulation, match="itself"):
        Triangulation.from_pairs(1, pairs)


def test_unpaired_face_rejected():
    # two tetrahedra glued along one face only
    with pytest.raises(InvalidTriangulation, match="unpaired"):
        Triangulation.from_pairs(2, {(0, 0): (1, 0, Perm4((0, 1, 2, 3)))})


def test_face_permutation_must_match_faces():
    p = Perm4((0, 1, 2, 3))  # maps face 0 to face 0, not to face 1
    with pytest.raises(InvalidTriangulation):
        Triangulation.from_pairs(1, {(0, 0): (0, 1, p), (0, 2): (0, 3, Perm4((0, 1, 3, 2)))})


def test_snake_has_degree_one_edge():
    tri = one_tet_snake()
    sk = build_skeleton(tri)
    assert 1 in [ec.degree for ec in sk.edge_classes]
    assert sum(ec.degree for ec in sk.edge_classes) == 6 * tri.n_tets
    rep = validate(tri, CLOSED_ONE_VERTEX)
    assert rep.degree_one_edges


def test_degree_sum_invariant_on_fixtures():
    for tri in two_tet_closed_vertex_fixtures()[:20]:
        sk = build_skeleton(tri)
        assert sum(ec.degree for ec in sk.edge_classes) == 6 * tri.n_tets


def test_books_are_cyclic_and_consistent():
    for tri in two_tet_closed_vertex_fixtures()[:10]:
        sk = build_skeleton(tri)
        for ec in sk.edge_classes:
            assert ec.book is not None
            assert len(ec.book) == ec.degree
            # consecutive book entries share a face pairing
            for i, entry in enumerate(ec.book):
                nxt = ec.book[(i + 1) % ec.degree]
                g = tri.gluing(entry.tet, entry.faces[1])
                assert (g.tet, g.face) == (nxt.tet, nxt.faces[0])


def test_two_tet_fixtures_exist_and_validate():
    fixtures = two_tet_closed_vertex_fixtures()
    assert fixtures
    for tri in fixtures[:5]:
        rep = validate(tri, CLOSED_ONE_VERTEX)
        assert rep.valid
        assert rep.vertex_count == 1
        assert rep.all_links_spheres
        assert is_orientable(tri)


def test_orientability_rejects_mirror_gluing():
    # an even permutation gluing two faces of the same tetrahedron demands
    # that the tetrahedron disagrees with its own sign
    pairs = {
        (0, 0): (0, 1, Perm4((1, 0, 3, 2))),   # even: parity contradiction
        (0, 2): (0, 3, Perm4((0, 1, 3, 2))),
    }
    tri = Triangulation.from_pairs(1, pairs)
    assert not is_orientable(tri)
    rep = validate(tri, CLOSED_ONE_VERTEX)
    assert not rep.orientable and not rep.valid


def test_validate_ideal_mode_finds_torus_link_tables():
    # among all 2-tet tables there are orientable ones whose vertex links are
    # tori (the figure-eight complement lives here); those validate as ideal
    from helpers import enumerate_two_tet_tables

    found = None
    for tri in enumerate_two_tet_tables():
        rep = validate(tri, IDEAL)
        if rep.valid and rep.vertex_count == 1 and rep.links[0][1] == 0:
            found = (tri, rep)
            break
    assert found is not None
    tri, rep = found
    assert rep.no_link_is_sphere
    assert not validate(tri, CLOSED_ONE_VERTEX).valid


def test_text_roundtrip_and_parse_errors():
    tri = two_tet_closed_vertex_fixtures()[0]
    again = parse_gluing_table(tri.to_text())
    assert again.gluings == tri.gluings
    with pytest.raises(ParseError, match="line 1"):
        parse_gluing_table("nonsense\n")
    with pytest.raises(ParseError):
        parse_gluing_table("tets 2\n1:0123 1:0123 1:0123 1:0123\n")
    with pytest.raises(ParseError, match="entry"):
        parse_gluing_table("tets 1\n0:01 0:0132 0:0 x\n")


def test_signature_invariant_under_relabeling():
    rng = random.Random(7)
    for tri in two_tet_closed_vertex_fixtures()[:8]:
        sig = iso_signature(tri)
        for _ in range(5):
            order = list(range(tri.n_tets))
            rng.shuffle(order)
            perms = [rng.choice(ALL_PERMS) for _ in range(tri.n_tets)]
            assert iso_signature(tri.relabeled(order, perms)) == sig


def test_signature_reconstruction():
    for tri in two_tet_closed_vertex_fixtures()[:6]:
        sig = iso_signature(tri)
        rebuilt = triangulation_from_signature(sig)
        assert iso_signature(rebuilt) == sig


def test_signature_agrees_with_brute_force_on_two_tet_census():
    """Signatures must separate exactly the brute-force isomorphism classes."""
    fixtures = two_tet_closed_vertex_fixtures()
    # group by signature
    by_sig: dict[str, list[Triangulation]] = {}
    for tri in fixtures:
        by_sig.setdefault(iso_signature(tri).text, []).append(tri)
    reps = [group[0] for group in by_sig.values()]
    # same signature => brute-force isomorphic
    for group in by_sig.values():
        for other in group[1:3]:
            assert brute_force_isomorphic(group[0], other)
    # different signatures => not brute-force isomorphic
    for a, b in itertools.combinations(reps[:6], 2):
        assert not brute_force_isomorphic(a, b)


def test_is_isomorphic_matches_signature_equality():
    fixtures = two_tet_closed_vertex_fixtures()
    rng = random.Random(3)
    sample = rng.sample(fixtures, min(10, len(fixtures)))
    for a in sample[:5]:
        for b in sample:
            assert is_isomorphic(a, b) == (iso_signature(a) == iso_signature(b))


def test_is_isomorphic_on_relabelings():
    tri = two_tet_closed_vertex_fixtures()[0]
    assert is_isomorphic(tri, tri)
    assert is_isomorphic(tri, tri.relabeled([1, 0], [Perm4((2, 0, 1, 3)), Perm4((0, 3, 1, 2))]))
