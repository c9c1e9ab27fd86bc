"""Dev scratch: derive the layered-stack L(4,1) gluing formula by search."""
import itertools, sys
from pachner.kernel import (Triangulation, Perm4, build_skeleton, validate,
                            CLOSED_ONE_VERTEX, iso_signature, ALL_PERMS)
from pachner.moves import pachner_2_3, MoveError, classify_degree_one_creation
from pachner.kernel import FaceRef


def try_build(k, layer, closure):
    """layer: dict face_of_i -> (face_of_i+1, perm); closure likewise k-1 -> 0."""
    pairs = {}
    for i in range(k - 1):
        for f_src, (f_dst, perm) in layer.items():
            pairs[(i, f_src)] = (i + 1, f_dst, perm)
    for f_src, (f_dst, perm) in closure.items():
        pairs[(k - 1, f_src)] = (0, f_dst, perm)
    try:
        return Triangulation.from_pairs(k, pairs)
    except Exception:
        return None


def stack_ok(tri):
    rep = validate(tri, CLOSED_ONE_VERTEX)
    if not rep.valid:
        return False
    degs = sorted(e.degree for e in build_skeleton(tri).edge_classes)
    if 1 in degs or 3 in degs:
        return False
    return True


def all_bad_23(tri):
    """Every applicable 2-3 move introduces a degree one edge."""
    any_move = False
    for f in tri.triangles():
        if tri.gluing(*f).tet == f.tet:
            continue
        any_move = True
        from pachner.moves import move23
        v = classify_degree_one_creation(tri, move23(f.tet, f.face))
        if v.pattern == "none":
            return False
    return any_move


# layer gluing: tet i's faces 2,3 onto tet i+1's faces 0,1 (either matching)
found = []
face_pairs = [((2, 0), (3, 1)), ((2, 1), (3, 0))]
count = 0
for (fa, fb) in face_pairs:
    for pa in ALL_PERMS:
        if pa[fa[0]] != fa[1]:
            continue
        for pb in ALL_PERMS:
            if pb[fb[0]] != fb[1]:
                continue
            layer = {fa[0]: (fa[1], pa), fb[0]: (fb[1], pb)}
            for (ca, cb) in face_pairs:
                for qa in ALL_PERMS:
                    if qa[ca[0]] != ca[1]:
                        continue
                    for qb in ALL_PERMS:
                        if qb[cb[0]] != cb[1]:
                            continue
                        closure = {ca[0]: (ca[1], qa), cb[0]: (cb[1], qb)}
                        tri = try_build(3, layer, closure)
                        count += 1
                        if tri is None or not stack_ok(tri):
                            continue
                        # must also work for k=5 and be the bad-2-3 family
                        tri5 = try_build(5, layer, closure)
                        if tri5 is None or not stack_ok(tri5):
                            continue
                        if not all_bad_23(tri):
                            continue
                        found.append((layer, closure, iso_signature(tri).text))
print("candidates tried:", count, "found:", len(found))
sigs = {}
for layer, closure, sig in found:
    sigs.setdefault(sig, []).append((layer, closure))
print("distinct k=3 signatures:", len(sigs))
for sig, combos in sigs.items():
    layer, closure = combos[0]
    print("sig:", sig[:60], "...")
    print("  layer:", {f: (d, p.image) for f, (d, p) in layer.items()})
    print("  closure:", {f: (d, p.image) for f, (d, p) in closure.items()})
