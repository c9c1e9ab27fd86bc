"""Triangulations of 3-manifolds as face-pairing quotients.

A triangulation is a set of model tetrahedra, labelled 0..n-1 with vertex
labels 0..3, together with a pairing of all 4n model faces.  Face f of a
tetrahedron is the face opposite vertex f.  A gluing carries the full vertex
permutation between the two tetrahedra, so sigma(f) = f' for a gluing of
face f onto face f'.

The derived skeleton (edge classes with their cyclic books, vertex classes
with their link surfaces) is computed here, along with validation of the
closed-one-vertex / ideal hypotheses and a canonical isomorphism signature
used for deduplication.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Optional, Sequence


class InvalidTriangulation(ValueError):
    """A gluing table violates the face-pairing axioms."""


class SkeletonError(ValueError):
    """A request referenced a nonexistent edge or vertex class."""


# ---------------------------------------------------------------------------
# permutations of {0,1,2,3}
# ---------------------------------------------------------------------------

class Perm4:
    """A permutation of the vertex labels 0..3, stored as its image tuple."""

    __slots__ = ("image",)

    def __init__(self, image: Sequence[int]):
        image = tuple(image)
        if sorted(image) != [0, 1, 2, 3]:
            raise ValueError(f"not a permutation of 0..3: {image!r}")
        object.__setattr__(self, "image", image)

    def __getitem__(self, i: int) -> int:
        return self.image[i]

    def __mul__(self, other: "Perm4") -> "Perm4":
        # (self * other)[i] == self[other[i]]
        return Perm4((self.image[other.image[0]], self.image[other.image[1]],
                      self.image[other.image[2]], self.image[other.image[3]]))

    def inverse(self) -> "Perm4":
        inv = [0, 0, 0, 0]
        for i, v in enumerate(self.image):
            inv[v] = i
        return Perm4(inv)

    def is_odd(self) -> bool:
        inv = 0
        im = self.image
        for i in range(4):
            for j in range(i + 1, 4):
                if im[i] > im[j]:
                    inv += 1
        return inv % 2 == 1

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm4) and self.image == other.image

    def __hash__(self) -> int:
        return hash(self.image)

    def __repr__(self) -> str:
        return "Perm4(%d%d%d%d)" % self.image


IDENTITY = Perm4((0, 1, 2, 3))
ALL_PERMS = tuple(Perm4(p) for p in itertools.permutations(range(4)))


class FaceRef(NamedTuple):
    """Model face `face` (opposite vertex `face`) of tetrahedron `tet`."""
    tet: int
    face: int


class EdgeRef(NamedTuple):
    """Model edge `edge` (0..5) of tetrahedron `tet`."""
    tet: int
    edge: int


# Fixed enumeration of the six model edges by their vertex pairs.
EDGE_VERTICES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_INDEX = {}
for _k, (_a, _b) in enumerate(EDGE_VERTICES):
    EDGE_INDEX[(_a, _b)] = _k
    EDGE_INDEX[(_b, _a)] = _k

# The edge disjoint from edge k (opposite edge of the tetrahedron).
OPPOSITE_EDGE = (5, 4, 3, 2, 1, 0)

FACE_VERTICES = tuple(tuple(v for v in range(4) if v != f) for f in range(4))


def edge_faces(edge: int) -> tuple[int, int]:
    """The two faces of a tetrahedron containing model edge `edge`."""
    a, b = EDGE_VERTICES[edge]
    return tuple(v for v in range(4) if v not in (a, b))


class Gluing(NamedTuple):
    tet: int
    face: int
    perm: Perm4


# ---------------------------------------------------------------------------
# the triangulation itself
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Triangulation:
    """An immutable face-pairing quotient of n_tets model tetrahedra.

    `gluings[t][f]` is the Gluing of face (t, f); every face must be paired,
    no face may be paired with itself, and the table must be involutive.
    """

    gluings: tuple[tuple[Gluing, Gluing, Gluing, Gluing], ...]

    def __post_init__(self):
        n = len(self.gluings)
        if n < 1:
            raise InvalidTriangulation("a triangulation needs at least one tetrahedron")
        for t, row in enumerate(self.gluings):
            if len(row) != 4:
                raise InvalidTriangulation(f"tetrahedron {t} does not have 4 faces")
            for f, g in enumerate(row):
                if g is None:
                    raise InvalidTriangulation(f"face {FaceRef(t, f)} is unpaired")
                if not (0 <= g.tet < n) or not (0 <= g.face < 4):
                    raise InvalidTriangulation(f"face {FaceRef(t, f)} glued out of range")
                if (g.tet, g.face) == (t, f):
                    raise InvalidTriangulation(f"face {FaceRef(t, f)} is glued to itself")
                if g.perm[f] != g.face:
                    raise InvalidTriangulation(
                        f"gluing at {FaceRef(t, f)} does not map face {f} to face {g.face}")
                back = self.gluings[g.tet][g.face]
                if back is None or (back.tet, back.face) != (t, f) or back.perm != g.perm.inverse():
                    raise InvalidTriangulation(f"gluing at {FaceRef(t, f)} is not involutive")

    @property
    def n_tets(self) -> int:
        return len(self.gluings)

    def gluing(self, t: int, f: int) -> Gluing:
        return self.gluings[t][f]

    def face_refs(self) -> Iterator[FaceRef]:
        for t in range(self.n_tets):
            for f in range(4):
                yield FaceRef(t, f)

    def triangles(self) -> list[FaceRef]:
        """One canonical FaceRef per glued face pair (the lexicographically
        smaller side)."""
        out = []
        for t in range(self.n_tets):
            for f in range(4):
                g = self.gluings[t][f]
                if (t, f) < (g.tet, g.face):
                    out.append(FaceRef(t, f))
        return out

    @classmethod
    def from_pairs(cls, n_tets: int,
                   pairs: dict[tuple[int, int], tuple[int, int, Perm4]]) -> "Triangulation":
        """Build from one-or-both-sided gluing specs; fills in inverses."""
        table: list[list[Optional[Gluing]]] = [[None] * 4 for _ in range(n_tets)]
        for (t, f), (t2, f2, perm) in pairs.items():
            fwd = Gluing(t2, f2, perm)
            bwd = Gluing(t, f, perm.inverse())
            for (a, fa, g) in ((t, f, fwd), (t2, f2, bwd)):
                if not (0 <= a < n_tets):
                    raise InvalidTriangulation(f"tetrahedron index {a} out of range")
                old = table[a][fa]
                if old is not None and old != g:
                    raise InvalidTriangulation(
                        f"conflicting gluings specified for face {FaceRef(a, fa)}")
                table[a][fa] = g
        for t in range(n_tets):
            for f in range(4):
                if table[t][f] is None:
                    raise InvalidTriangulation(f"face {FaceRef(t, f)} is unpaired")
        return cls(tuple(tuple(row) for row in table))

    def relabeled(self, tet_order: Sequence[int],
                  corner_perms: Sequence[Perm4]) -> "Triangulation":
        """Rename tetrahedra and their corners.

        `tet_order[old]` is the new index of old tetrahedron `old`;
        `corner_perms[old]` maps the old vertex labels to the new ones.
        """
        n = self.n_tets
        pairs = {}
        for t in range(n):
            pt = corner_perms[t]
            for f in range(4):
                g = self.gluings[t][f]
                new_perm = corner_perms[g.tet] * g.perm * pt.inverse()
                pairs[(tet_order[t], pt[f])] = (tet_order[g.tet], corner_perms[g.tet][g.face],
                                                new_perm)
        return Triangulation.from_pairs(n, pairs)

    # -- text format --------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"tets {self.n_tets}"]
        for row in self.gluings:
            lines.append(" ".join("%d:%d%d%d%d" % ((g.tet,) + g.perm.image) for g in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Triangulation":
        return parse_gluing_table(text)

    def __hash__(self) -> int:
        return hash(self.gluings)


class ParseError(ValueError):
    """A gluing-table or path file failed to parse; carries the line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def parse_gluing_table(text: str) -> Triangulation:
    """Parse the `tets N` / `t:abcd` text format, with # comments."""
    rows: list[list[str]] = []
    header: Optional[int] = None
    header_line = 0
    lineno_of_row: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "tets":
                raise ParseError(lineno, "expected header 'tets N'")
            try:
                header = int(parts[1])
            except ValueError:
                raise ParseError(lineno, f"bad tetrahedron count {parts[1]!r}") from None
            header_line = lineno
            continue
        rows.append(line.split())
        lineno_of_row.append(lineno)
    if header is None:
        raise ParseError(1, "empty gluing table")
    if len(rows) != header:
        raise ParseError(header_line, f"expected {header} tetrahedron lines, found {len(rows)}")
    table: list[list[Optional[Gluing]]] = [[None] * 4 for _ in range(header)]
    for t, (parts, lineno) in enumerate(zip(rows, lineno_of_row)):
        if len(parts) != 4:
            raise ParseError(lineno, f"tetrahedron {t}: expected 4 entries, found {len(parts)}")
        for f, entry in enumerate(parts):
            try:
                tet_str, perm_str = entry.split(":", 1)
                t2 = int(tet_str)
                if len(perm_str) != 4:
                    raise ValueError
                perm = Perm4(tuple(int(c) for c in perm_str))
            except ValueError:
                raise ParseError(lineno, f"bad gluing entry {entry!r}") from None
            table[t][f] = Gluing(t2, perm[f], perm)
    for t in range(header):
        for f in range(4):
            g = table[t][f]
            if not (0 <= g.tet < header):
                raise ParseError(lineno_of_row[t], f"face {FaceRef(t, f)} glued to "
                                 f"nonexistent tetrahedron {g.tet}")
    try:
        return Triangulation(tuple(tuple(row) for row in table))
    except InvalidTriangulation as exc:
        raise ParseError(header_line, str(exc)) from None


# ---------------------------------------------------------------------------
# skeleton: edge and vertex classes
# ---------------------------------------------------------------------------

class BookEntry(NamedTuple):
    """One wedge of the cyclic book around an edge: the tetrahedron and the
    (entered-through, left-through) face pair."""
    tet: int
    faces: tuple[int, int]


@dataclass(frozen=True)
class EdgeClass:
    index: int
    reps: tuple[tuple[EdgeRef, int], ...]   # (model edge, +1/-1 direction flag)
    degree: int
    book: Optional[tuple[BookEntry, ...]]   # None when self-identified in reverse
    reversed_identification: bool

    def rep_set(self) -> frozenset[EdgeRef]:
        return frozenset(r for r, _ in self.reps)


@dataclass(frozen=True)
class VertexClass:
    index: int
    corners: tuple[tuple[int, int], ...]    # (tet, vertex) pairs
    link_euler: int
    link_orientable: bool

    @property
    def link_genus_data(self) -> tuple[bool, int]:
        return (self.link_orientable, self.link_euler)

    @property
    def link_is_sphere(self) -> bool:
        # A closed connected surface with Euler characteristic 2 is a sphere;
        # links here are connected by construction.
        return self.link_euler == 2


@dataclass(frozen=True)
class SkeletonIndex:
    edge_classes: tuple[EdgeClass, ...]
    vertex_classes: tuple[VertexClass, ...]
    edge_of: dict[EdgeRef, int] = field(repr=False)
    vertex_of: dict[tuple[int, int], int] = field(repr=False)

    def edge_class(self, index: int) -> EdgeClass:
        if not (0 <= index < len(self.edge_classes)):
            raise SkeletonError(f"no edge class {index}")
        return self.edge_classes[index]

    def edge_class_of(self, ref: EdgeRef) -> EdgeClass:
        return self.edge_classes[self.edge_of[ref]]

    def degree_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for ec in self.edge_classes:
            hist[ec.degree] = hist.get(ec.degree, 0) + 1
        return hist

    def degree_one_edges(self) -> list[int]:
        return [ec.index for ec in self.edge_classes if ec.degree == 1]

    def min_degree(self) -> int:
        return min(ec.degree for ec in self.edge_classes)


def _walk_edge_orbit(tri: Triangulation, start: EdgeRef):
    """Walk the cyclic book around the edge class of `start`.

    Returns (reps, book, reversed_flag).  The walk begins at the
    lexicographically smallest representative in ascending vertex order and
    leaves through the smaller incident face, which fixes both the class
    numbering and the book direction.
    """
    t0, e0 = start
    a0, b0 = EDGE_VERTICES[e0]
    f_lo, f_hi = edge_faces(e0)
    # start state: inside t0 on directed edge (a0, b0), having "entered"
    # through f_hi, about to leave through f_lo.
    state = (t0, a0, b0, f_hi)
    reps: list[tuple[EdgeRef, int]] = []
    book: list[BookEntry] = []
    seen_undirected: set[EdgeRef] = set()
    reversed_flag = False
    while True:
        t, a, b, entered = state
        the_edge = EdgeRef(t, EDGE_INDEX[(a, b)])
        exit_face = next(v for v in range(4) if v not in (a, b, entered))
        if the_edge in seen_undirected:
            reversed_flag = True
        else:
            seen_undirected.add(the_edge)
            reps.append((the_edge, 1 if a < b else -1))
            book.append(BookEntry(t, (entered, exit_face)))
        g = tri.gluing(t, exit_face)
        state = (g.tet, g.perm[a], g.perm[b], g.perm[exit_face])
        if state == (t0, a0, b0, f_hi):
            break
    if reversed_flag:
        return tuple(reps), None, True
    return tuple(reps), tuple(book), False


def build_skeleton(tri: Triangulation) -> SkeletonIndex:
    """Compute the edge and vertex orbits of the identification skeleton.

    Classes are numbered by their lexicographically smallest representative,
    so identical gluing tables always produce identical numbering.
    """
    n = tri.n_tets
    edge_of: dict[EdgeRef, int] = {}
    edge_classes: list[EdgeClass] = []
    for t in range(n):
        for e in range(6):
            ref = EdgeRef(t, e)
            if ref in edge_of:
                continue
            reps, book, rev = _walk_edge_orbit(tri, ref)
            idx = len(edge_classes)
            edge_classes.append(EdgeClass(idx, reps, len(reps), book, rev))
            for r, _ in reps:
                edge_of[r] = idx

    # vertex classes: orbits of corners under the face gluings
    vertex_of: dict[tuple[int, int], int] = {}
    vertex_classes: list[VertexClass] = []
    for t in range(n):
        for v in range(4):
            if (t, v) in vertex_of:
                continue
            idx = len(vertex_classes)
            stack = [(t, v)]
            corners = []
            vertex_of[(t, v)] = idx
            while stack:
                ct, cv = stack.pop()
                corners.append((ct, cv))
                for f in range(4):
                    if f == cv:
                        continue
                    g = tri.gluing(ct, f)
                    nxt = (g.tet, g.perm[cv])
                    if nxt not in vertex_of:
                        vertex_of[nxt] = idx
                        stack.append(nxt)
            corners.sort()
            euler = _link_euler(tri, corners, edge_of)
            orient = _link_orientable(tri, corners)
            vertex_classes.append(VertexClass(idx, tuple(corners), euler, orient))

    return SkeletonIndex(tuple(edge_classes), tuple(vertex_classes), edge_of, vertex_of)


def _link_euler(tri: Triangulation, corners: list[tuple[int, int]],
                edge_of: dict[EdgeRef, int]) -> int:
    """Euler characteristic of the link surface of one vertex class.

    Faces of the link are the corners; edges come in glued pairs across the
    incident model faces; vertices are orbits of edge-ends at the vertex.
    """
    faces = len(corners)
    edges2 = 3 * faces  # each link triangle has 3 sides, glued in pairs
    # orbits of edge-ends (t, edge_index, end_vertex) where end_vertex is a
    # vertex of this class
    seen: set[tuple[int, int, int]] = set()
    verts = 0
    corner_set = set(corners)
    for (t, v) in corners:
        for w in range(4):
            if w == v:
                continue
            key = (t, EDGE_INDEX[(v, w)], v)
            if key in seen:
                continue
            verts += 1
            stack = [(t, v, w)]
            seen.add(key)
            while stack:
                ct, cv, cw = stack.pop()
                for f in range(4):
                    if f == cv or f == cw:
                        continue
                    g = tri.gluing(ct, f)
                    nt, nv, nw = g.tet, g.perm[cv], g.perm[cw]
                    nkey = (nt, EDGE_INDEX[(nv, nw)], nv)
                    if nkey not in seen:
                        seen.add(nkey)
                        stack.append((nt, nv, nw))
    return verts - edges2 // 2 + faces


def _link_orientable(tri: Triangulation, corners: list[tuple[int, int]]) -> bool:
    """2-colorability of the link triangles under edge-gluing coherence."""
    color: dict[tuple[int, int], int] = {}
    for seed in corners:
        if seed in color:
            continue
        color[seed] = 0
        stack = [seed]
        while stack:
            c = stack.pop()
            t, v = c
            labels = [w for w in range(4) if w != v]
            for f in labels:
                g = tri.gluing(t, f)
                d = (g.tet, g.perm[v])
                # direction induced on the link edge {x, y} = labels - {f}
                # by the reference cyclic orientation (w0, w1, w2)
                x, y = (w for w in labels if w != f)
                same = _induced_direction(labels, x, y)
                labels2 = [w for w in range(4) if w != g.perm[v]]
                x2, y2 = g.perm[x], g.perm[y]
                same2 = _induced_direction(labels2, x2, y2)
                # coherent orientations induce opposite directions on a
                # shared edge
                relation = 0 if (same != same2) else 1
                want = color[c] ^ relation
                if d in color:
                    if color[d] != want:
                        return False
                else:
                    color[d] = want
                    stack.append(d)
    return True


def _induced_direction(cycle3: list[int], x: int, y: int) -> bool:
    """True if (x -> y) is a boundary direction of the oriented triangle whose
    vertices are cycle3 in cyclic order."""
    w0, w1, w2 = cycle3
    return (x, y) in ((w0, w1), (w1, w2), (w2, w0))


def is_orientable(tri: Triangulation) -> bool:
    """Whether a consistent orientation assignment exists.

    Each tetrahedron carries the orientation of its vertex order 0123; a
    gluing is orientation-reversing exactly when its permutation is odd.
    Two like-signed tetrahedra must meet through an odd permutation.
    """
    sign: dict[int, int] = {}
    for seed in range(tri.n_tets):
        if seed in sign:
            continue
        sign[seed] = 0
        stack = [seed]
        while stack:
            t = stack.pop()
            for f in range(4):
                g = tri.gluing(t, f)
                want = sign[t] ^ (0 if g.perm.is_odd() else 1)
                if g.tet in sign:
                    if sign[g.tet] != want:
                        return False
                else:
                    sign[g.tet] = want
                    stack.append(g.tet)
    return True


def edge_degree(tri: Triangulation, edge_class_id: int) -> int:
    """Degree of an edge class: the number of model edges identified onto it."""
    return build_skeleton(tri).edge_class(edge_class_id).degree


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

CLOSED_ONE_VERTEX = "closed_one_vertex"
IDEAL = "ideal"


@dataclass(frozen=True)
class ValidationReport:
    mode: str
    n_tets: int
    orientable: bool
    vertex_count: int
    links: tuple[tuple[bool, int], ...]       # (orientable, euler) per class
    degree_one_edges: tuple[int, ...]
    reversed_edges: tuple[int, ...]
    degree_histogram: dict[int, int]

    @property
    def all_links_spheres(self) -> bool:
        return all(e == 2 for _, e in self.links)

    @property
    def no_link_is_sphere(self) -> bool:
        return all(e != 2 for _, e in self.links)

    @property
    def valid(self) -> bool:
        if not self.orientable or self.reversed_edges:
            return False
        if self.mode == CLOSED_ONE_VERTEX:
            return self.vertex_count == 1 and self.all_links_spheres
        return self.no_link_is_sphere

    @property
    def degree_one_free(self) -> bool:
        return not self.degree_one_edges

    def key_values(self) -> list[str]:
        lines = [
            f"mode={self.mode}",
            f"tets={self.n_tets}",
            f"orientable={'yes' if self.orientable else 'no'}",
            f"vertices={self.vertex_count}",
            f"all_links_spheres={'yes' if self.all_links_spheres else 'no'}",
            f"no_link_is_sphere={'yes' if self.no_link_is_sphere else 'no'}",
            f"reversed_edges={','.join(map(str, self.reversed_edges)) or 'none'}",
            f"degree_one_edges={','.join(map(str, self.degree_one_edges)) or 'none'}",
            f"valid={'yes' if self.valid else 'no'}",
        ]
        return lines


def validate(tri: Triangulation, mode: str) -> ValidationReport:
    """Check the hypotheses of the given mode and report all findings."""
    if mode not in (CLOSED_ONE_VERTEX, IDEAL):
        raise ValueError(f"unknown validation mode {mode!r}")
    sk = build_skeleton(tri)
    return ValidationReport(
        mode=mode,
        n_tets=tri.n_tets,
        orientable=is_orientable(tri),
        vertex_count=len(sk.vertex_classes),
        links=tuple((vc.link_orientable, vc.link_euler) for vc in sk.vertex_classes),
        degree_one_edges=tuple(sk.degree_one_edges()),
        reversed_edges=tuple(ec.index for ec in sk.edge_classes
                             if ec.reversed_identification),
        degree_histogram=sk.degree_histogram(),
    )


# ---------------------------------------------------------------------------
# canonical isomorphism signatures
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class IsoSignature:
    text: str


def _canonical_tokens(tri: Triangulation, start: int, start_perm: Perm4) -> tuple:
    """Breadth-first relabeling from (start, start_perm), serialized.

    When a new tetrahedron is first reached, its relabeling is chosen to turn
    that gluing into the identity permutation, so the token stream depends
    only on the isomorphism class and the starting choice.
    """
    n = tri.n_tets
    perm_of: dict[int, Perm4] = {start: start_perm}
    index_of: dict[int, int] = {start: 0}
    order = [start]
    tokens: list[int] = []
    i = 0
    while i < len(order):
        t = order[i]
        m = perm_of[t]
        m_inv = m.inverse()
        for f_new in range(4):
            f_old = m_inv[f_new]
            g = tri.gluing(t, f_old)
            if g.tet not in index_of:
                index_of[g.tet] = len(order)
                perm_of[g.tet] = m * g.perm.inverse()
                order.append(g.tet)
            new_perm = perm_of[g.tet] * g.perm * m_inv
            tokens.append(index_of[g.tet])
            tokens.extend(new_perm.image)
        i += 1
    if len(order) != n:
        # disconnected gluing table: serialize component count to keep the
        # invariant total (not expected for manifold inputs)
        tokens.append(-len(order))
    return tuple(tokens)


def iso_signature(tri: Triangulation) -> IsoSignature:
    """Canonical, relabeling-invariant signature string."""
    best: Optional[tuple] = None
    for start in range(tri.n_tets):
        for perm in ALL_PERMS:
            tok = _canonical_tokens(tri, start, perm)
            if best is None or tok < best:
                best = tok
    body = ".".join(str(x) for x in best)
    return IsoSignature(f"{tri.n_tets}:{body}")


def triangulation_from_signature(sig: IsoSignature) -> Triangulation:
    """Rebuild the canonical representative encoded by a signature."""
    head, body = sig.text.split(":", 1)
    n = int(head)
    tokens = [int(x) for x in body.split(".")]
    pairs = {}
    pos = 0
    for t in range(n):
        for f in range(4):
            dest = tokens[pos]
            perm = Perm4(tokens[pos + 1:pos + 5])
            pairs[(t, f)] = (dest, perm[f], perm)
            pos += 5
    return Triangulation.from_pairs(n, pairs)


def is_isomorphic(a: Triangulation, b: Triangulation) -> bool:
    """Combinatorial isomorphism test by explicit relabeling search.

    Independent of iso_signature: attempts to extend each choice of image for
    tetrahedron 0 of `a` to a full label-preserving bijection.
    """
    if a.n_tets != b.n_tets:
        return False
    n = a.n_tets
    for b_start in range(n):
        for perm in ALL_PERMS:
            # map: tet of a -> (tet of b, Perm4 a-labels -> b-labels)
            assignment: dict[int, tuple[int, Perm4]] = {0: (b_start, perm)}
            image_used = {b_start}
            stack = [0]
            ok = True
            while stack and ok:
                t = stack.pop()
                bt, m = assignment[t]
                for f in range(4):
                    ga = a.gluing(t, f)
                    gb = b.gluing(bt, m[f])
                    want_perm = gb.perm * m * ga.perm.inverse()
                    if ga.tet in assignment:
                        if assignment[ga.tet] != (gb.tet, want_perm):
                            ok = False
                            break
                    else:
                        if gb.tet in image_used:
                            ok = False
                            break
                        assignment[ga.tet] = (gb.tet, want_perm)
                        image_used.add(gb.tet)
                        stack.append(ga.tet)
            if ok and len(assignment) == n:
                return True
    return False
