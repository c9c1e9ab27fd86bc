"""Shared fixtures and brute-force oracles for the test suite."""
from __future__ import annotations

import itertools
from functools import lru_cache

from pachner.kernel import (
    ALL_PERMS,
    CLOSED_ONE_VERTEX,
    Gluing,
    Perm4,
    Triangulation,
    build_skeleton,
    validate,
)


def one_tet_snake() -> Triangulation:
    """One tetrahedron with faces 2 and 3 glued by closing the book around
    edge {0,1}, giving a degree-one edge, and faces 0, 1 glued to each other."""
    p23 = Perm4((0, 1, 3, 2))
    p01 = Perm4((1, 0, 2, 3))
    return Triangulation.from_pairs(1, {(0, 2): (0, 3, p23), (0, 0): (0, 1, p01)})


def brute_force_isomorphic(a: Triangulation, b: Triangulation) -> bool:
    """Exhaustive relabeling search, used as the independent oracle."""
    if a.n_tets != b.n_tets:
        return False
    n = a.n_tets
    for order in itertools.permutations(range(n)):
        for perms in itertools.product(ALL_PERMS, repeat=n):
            if a.relabeled(list(order), list(perms)).gluings == b.gluings:
                return True
    return False


def enumerate_two_tet_tables():
    """Every involutive gluing table on two tetrahedra (no self-glued faces)."""
    faces = [(t, f) for t in range(2) for f in range(4)]
    for matching in _perfect_matchings(faces):
        # each matched pair needs a permutation sending face to face; the
        # remaining 3 labels may map arbitrarily: 6 perms per pair
        perm_choices = []
        for (t1, f1), (t2, f2) in matching:
            opts = [p for p in ALL_PERMS if p[f1] == f2]
            perm_choices.append(opts)
        for combo in itertools.product(*perm_choices):
            pairs = {}
            for ((t1, f1), (t2, f2)), perm in zip(matching, combo):
                pairs[(t1, f1)] = (t2, f2, perm)
            try:
                yield Triangulation.from_pairs(2, pairs)
            except Exception:
                continue


def _perfect_matchings(items):
    if not items:
        yield []
        return
    first = items[0]
    for i in range(1, len(items)):
        rest = items[1:i] + items[i + 1:]
        for sub in _perfect_matchings(rest):
            yield [(first, items[i])] + sub


def _vertex_orbit_count(tri: Triangulation) -> int:
    seen = {}
    count = 0
    for t in range(tri.n_tets):
        for v in range(4):
            if (t, v) in seen:
                continue
            count += 1
            stack = [(t, v)]
            seen[(t, v)] = count
            while stack:
                ct, cv = stack.pop()
                for f in range(4):
                    if f == cv:
                        continue
                    g = tri.gluing(ct, f)
                    nxt = (g.tet, g.perm[cv])
                    if nxt not in seen:
                        seen[nxt] = count
                        stack.append(nxt)
    return count


@lru_cache(maxsize=1)
def two_tet_closed_vertex_fixtures() -> tuple[Triangulation, ...]:
    """All 2-tet closed orientable one-vertex triangulations, deduplicated by
    gluing table bytes (not by isomorphism)."""
    from pachner.kernel import is_orientable

    out = []
    for tri in enumerate_two_tet_tables():
        if not is_orientable(tri) or _vertex_orbit_count(tri) != 1:
            continue
        rep = validate(tri, CLOSED_ONE_VERTEX)
        if rep.valid:
            out.append(tri)
    return tuple(out)


def min_degree(tri: Triangulation) -> int:
    return build_skeleton(tri).min_degree()
