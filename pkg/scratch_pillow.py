"""Dev scratch: derive the pillow-insertion choreography on depth-0 sites."""
import random
import sys
sys.path.insert(0, 'tests')
from test_moves import seeds
from pachner.kernel import (build_skeleton, iso_signature, EdgeRef, EDGE_INDEX,
                            EDGE_VERTICES, FaceRef, Triangulation,
                            ALL_PERMS)
from pachner.composite import (v_move_at, rotate_mandible, CompositeError,
                               find_beak)
from pachner.moves import _book_data, MoveError, pachner_2_3, move23, MoveError

OPP = {}
for e, (a, b) in enumerate(EDGE_VERTICES):
    rest = tuple(v for v in range(4) if v not in (a, b))
    OPP[e] = EDGE_INDEX[rest]


def grow_states(n=40, max_tets=6, seed=5):
    rng = random.Random(seed)
    pool = list(seeds(6))
    out = []
    while len(out) < n:
        tri = rng.choice(pool)
        faces = [f for f in tri.triangles() if tri.gluing(*f).tet != f.tet]
        if not faces or tri.n_tets >= max_tets:
            continue
        try:
            res = pachner_2_3(tri, rng.choice(faces)).result
        except MoveError:
            continue
        pool.append(res)
        sk = build_skeleton(res)
        if 1 not in [e.degree for e in sk.edge_classes]:
            out.append(res)
    return out


def find_sites(tri):
    sk = build_skeleton(tri)
    sites = []
    for ec in sk.edge_classes:
        if ec.degree != 2 or ec.book is None:
            continue
        (c1, p1, q1, en1, ex1), (c2, *_rest) = _book_data(tri, ec)
        if c1 == c2:
            continue
        e1_cls = sk.edge_of[EdgeRef(c1, EDGE_INDEX[(p1, en1)])]
        e2_cls = sk.edge_of[EdgeRef(c1, EDGE_INDEX[(q1, en1)])]
        if e1_cls == e2_cls or ec.index in (e1_cls, e2_cls):
            continue
        if sk.edge_classes[e1_cls].degree < 3 or sk.edge_classes[e2_cls].degree < 3:
            continue
        f_cls = sk.edge_of[EdgeRef(c1, OPP[EDGE_INDEX[(p1, q1)]])]
        if sk.edge_classes[f_cls].degree < 3:
            continue  # only depth-0 sites here
        # the two via triangles must join distinct tetrahedra
        if tri.gluing(c1, q1).tet == c1 or tri.gluing(c1, p1).tet == c1:
            continue
        sites.append(dict(edge=ec.index, c1=c1, c2=c2, p=p1, q=q1, third=en1,
                          delta_face=ex1))
    return sites


def pillow_check(final, original, pillow_tets):
    P = set(pillow_tets)
    if len(P) != 4:
        return None
    externals = []
    for t in range(final.n_tets):
        if t in P:
            continue
        for f in range(4):
            g = final.gluing(t, f)
            if g.tet in P:
                externals.append((FaceRef(t, f), FaceRef(g.tet, g.face), g.perm))
    if len(externals) != 2:
        return None
    (fa, _pa, _ma), (fb, _pb, _mb) = externals
    survivors = sorted(t for t in range(final.n_tets) if t not in P)
    remap = {t: i for i, t in enumerate(survivors)}
    for perm in ALL_PERMS:
        if perm[fa.face] != fb.face:
            continue
        pairs = {}
        for t in survivors:
            for f in range(4):
                g = final.gluing(t, f)
                if g.tet in P:
                    continue
                pairs[(remap[t], f)] = (remap[g.tet], g.face, g.perm)
        pairs[(remap[fa.tet], fa.face)] = (remap[fb.tet], fb.face, perm)
        try:
            cand = Triangulation.from_pairs(len(survivors), pairs)
        except Exception:
            continue
        if iso_signature(cand) == iso_signature(original):
            return externals
    return None


def attempt(tri, site):
    p, q, third, c1 = site["p"], site["q"], site["third"], site["c1"]
    # first V-move: wrap c1's e' = (p, third) faces, via triangle = face q
    try:
        v1 = v_move_at(tri, c1, EDGE_INDEX[(p, third)], q)
    except CompositeError as exc:
        return ("v1", str(exc))
    lab = v1.wrapped_labels   # original c1 labels -> wrapped labels
    # second V-move on the wrapped tet: wrap e'' = (q, third), via = face p
    hinge2 = EDGE_INDEX[(lab[q], lab[third])]
    via2 = lab[p]
    try:
        v2 = v_move_at(v1.result, v1.wrapped_tet, hinge2, via2)
    except CompositeError as exc:
        return ("v2", str(exc))
    h1 = v1.beak.hinge
    for out in v2.outcomes:
        h1 = out.edge_map[h1]
    state = v2.result
    # beak tets as pillow candidate
    def current_pillow(s, hinge1, hinge2):
        t1 = find_beak(s, hinge1).tets
        t2 = find_beak(s, hinge2).tets
        return set(t1) | set(t2)
    try:
        pil = current_pillow(state, h1, v2.beak.hinge)
        hit = pillow_check(state, tri, pil)
        if hit:
            return ("ok", [], state, pil)
    except CompositeError:
        pass
    # BFS over rotation sequences
    frontier = [(state, h1, v2.beak.hinge, [])]
    seen = {iso_signature(state).text}
    for depth in range(3):
        nxt = []
        for (s, hinge1, hinge2, hist) in frontier:
            sk = build_skeleton(s)
            for tag, hinge in (("b1", hinge1), ("b2", hinge2)):
                try:
                    beak = find_beak(s, hinge, sk)
                except CompositeError:
                    continue
                for mand in range(2):
                    for dirn in range(2):
                        try:
                            rr = rotate_mandible(s, beak, mand, dirn, sk)
                        except CompositeError:
                            continue
                        nh1, nh2 = hinge1, hinge2
                        for out in rr.outcomes:
                            nh1 = out.edge_map.get(nh1, -1)
                            nh2 = out.edge_map.get(nh2, -1)
                        if tag == "b1":
                            nh1 = rr.beak.hinge
                        else:
                            nh2 = rr.beak.hinge
                        if nh1 < 0 or nh2 < 0:
                            continue
                        hist2 = hist + [(tag, mand, dirn)]
                        try:
                            pil = current_pillow(rr.result, nh1, nh2)
                        except CompositeError:
                            continue
                        hit = pillow_check(rr.result, tri, pil)
                        if hit:
                            return ("ok", hist2, rr.result, pil)
                        sig = iso_signature(rr.result).text
                        if sig not in seen:
                            seen.add(sig)
                            nxt.append((rr.result, nh1, nh2, hist2))
        frontier = nxt
    return ("no-closure", None)


random.seed(1)
states = grow_states(30)
print("grown states:", len(states))
hits = []
tried = 0
for tri in states:
    for site in find_sites(tri):
        tried += 1
        res = attempt(tri, site)
        if res[0] == "ok":
            hits.append((tri, site, res[1], res[2], sorted(res[3])))
            print("SUCCESS with closures:", res[1])
            if len(hits) >= 4:
                break
        else:
            print("  miss:", res[0], str(res[1])[:90])
    if len(hits) >= 4:
        break
print("tried", tried, "sites; hits:", len(hits))
if hits:
    tri, site, hist, final, pil = hits[0]
    print("pillow tets:", pil)
    # extract the fragment: the induced partial gluing table of the pillow
    remap = {t: i for i, t in enumerate(pil)}
    lines = []
    for t in pil:
        row = []
        for f in range(4):
            g = final.gluing(t, f)
            if g.tet in remap:
                row.append(f"{remap[g.tet]}:%d%d%d%d" % g.perm.image)
            else:
                row.append("boundary")
        lines.append(" ".join(row))
    print("fragment rows (pillow-internal indices):")
    for ln in lines:
        print("  ", ln)
EOF_MARKER = True
