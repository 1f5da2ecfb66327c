"""Welding graph, doubled blender complex, and zipped quotient.

Two copies of the multi-domain are glued along the desingularized boundary
via the involution S: edge e_a of the double identifies arc a in copy + with
arc S(a) in copy -, matching start(a) with end(S(a)).  The hyperelliptic
involution eta swaps the copies.  Since arcs are pre-split at the S-fixed
interior points, eta has no fixed edges and Fix(eta) is a pure vertex count.

Vertices of the double are the closure of the arc-end identifications: the
singular points of the boundary open up into several vertices, which is
exactly what makes the fixed-point accounting of the welded surface come out
right (the Newton-family parity emerges rather than being hard-coded).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CrosscheckFailed, GluingInconsistency, ZipNotSphere
from .mating_schema import BoundaryComplex


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x, y):
        self.parent[self.find(x)] = self.find(y)

    def classes(self):
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


# -- welding graph --------------------------------------------------------------

@dataclass(frozen=True)
class WeldingGraph:
    """Graph on the formal copies v_i^+/- of the domain faces.

    v_{i1}^- and v_{i2}^+ share an edge iff S carries some boundary arc of
    face i1 into the boundary of face i2.
    """

    num_faces: int
    edges: frozenset       # frozenset of (i1, i2): edge v_{i1}^- ~ v_{i2}^+

    def vertices(self):
        return [(i, sgn) for i in range(self.num_faces) for sgn in (-1, +1)]

    def neighbors(self, v):
        i, sgn = v
        out = []
        for (a, b) in self.edges:
            if sgn < 0 and a == i:
                out.append((b, +1))
            if sgn > 0 and b == i:
                out.append((a, -1))
        return out

    def components(self):
        uf = _UnionFind(self.vertices())
        for (a, b) in self.edges:
            uf.union((a, -1), (b, +1))
        comps = sorted(sorted(vs) for vs in uf.classes().values())
        return comps

    def symmetry_holds(self):
        """Lemma 4.6: (i1-, i2+) is an edge iff (i2-, i1+) is."""
        return all((b, a) in self.edges for (a, b) in self.edges)

    def eta_hat(self, v):
        i, sgn = v
        return (i, -sgn)


def welding_graph(bc: BoundaryComplex) -> WeldingGraph:
    edges = set()
    for a, b in bc.s_action.items():
        edges.add((bc.arc_face[a], bc.arc_face[b]))
    return WeldingGraph(bc.face_count(), frozenset(edges))


# -- welded complex ----------------------------------------------------------------

@dataclass
class WeldedComplex:
    bc: BoundaryComplex
    edges: list              # edge index = arc index; edge e_a = {a^+, S(a)^-}
    vertex_classes: list     # list of frozensets of symbols (arc, end, copy)
    vertex_of: dict          # symbol -> vertex class index
    face_copies: list        # [(face index, copy)] in fixed order
    eta_vertex: dict         # vertex class index -> vertex class index
    eta_edge: dict           # arc index -> arc index (e_a -> e_{S a})
    components: list         # per component: dict of cell sets
    comp_of_face_copy: dict

    def num_components(self):
        return len(self.components)


def _corner_links(bc: BoundaryComplex):
    """Pairs of arc-ends meeting at a domain-face corner.

    A dart is (arc, dir); in a ccw face cycle the corner between consecutive
    darts d1, d2 joins the head end of d1 to the tail end of d2.  Ends are
    ('s'|'e'); dart (a, +1) has tail 's', head 'e'.
    """
    links = []
    for face in bc.faces:
        for cyc in face:
            k = len(cyc)
            for i in range(k):
                a1, d1 = cyc[i]
                a2, d2 = cyc[(i + 1) % k]
                end1 = "e" if d1 > 0 else "s"
                end2 = "s" if d2 > 0 else "e"
                links.append(((a1, end1), (a2, end2)))
    return links


def weld(bc: BoundaryComplex) -> WeldedComplex:
    """Glue two copies of the domain closure along the boundary involution."""
    arcs = bc.arcs
    S = bc.s_action
    # guard hand-built complexes: the gluing needs a fixed-point-free arc
    # involution (fixed points of S are vertices because arcs are pre-split)
    for a in range(len(arcs)):
        if S.get(S.get(a)) != a or S[a] == a:
            raise GluingInconsistency("s_action is not a fixed-point-free involution")
    symbols = [(a.index, end, copy) for a in arcs for end in ("s", "e")
               for copy in (+1, -1)]
    uf = _UnionFind(symbols)

    # gluing: arc a in copy + is arc S(a) in copy -, orientation-reversed
    for a in range(len(arcs)):
        b = S[a]
        uf.union((a, "s", +1), (b, "e", -1))
        uf.union((a, "e", +1), (b, "s", -1))

    # face corners exist in both copies
    for (p, q) in _corner_links(bc):
        for copy in (+1, -1):
            uf.union((p[0], p[1], copy), (q[0], q[1], copy))

    classes = sorted(uf.classes().values())
    vertex_classes = [frozenset(c) for c in classes]
    vertex_of = {}
    for vi, cls in enumerate(vertex_classes):
        for sym in cls:
            vertex_of[sym] = vi

    # eta: swap copies; must map classes to classes
    eta_vertex = {}
    for vi, cls in enumerate(vertex_classes):
        img = {(a, e, -c) for (a, e, c) in cls}
        wi = vertex_of.get(next(iter(img)))
        if wi is None or frozenset(img) != vertex_classes[wi]:
            raise GluingInconsistency("eta does not permute vertex classes")
        eta_vertex[vi] = wi
    eta_edge = dict(S)

    face_copies = [(fi, copy) for fi in range(bc.face_count()) for copy in (+1, -1)]

    # Orientability is structural: edge e_a borders face(a) in copy + (which
    # traverses arc a backward) and face(S a) in copy - (whose walk traverses
    # S a backward, i.e. arc a forward through the orientation-reversing
    # gluing).  Each edge is thus traversed once in each direction, so both
    # copies keep their original orientation and the double is oriented.

    # components via shared cells
    uf2 = _UnionFind([("f", fi, c) for (fi, c) in face_copies])
    for a in range(len(arcs)):
        uf2.union(("f", bc.arc_face[a], +1), ("f", bc.arc_face[S[a]], -1))
    comp_map = {}
    for (fi, c) in face_copies:
        comp_map.setdefault(uf2.find(("f", fi, c)), []).append((fi, c))
    comp_list = [sorted(v) for v in sorted(comp_map.values())]

    components = []
    comp_of_face_copy = {}
    comp_of_edge = {}
    for comp_faces in comp_list:
        fset = set(comp_faces)
        earcs = {a for a in range(len(arcs)) if (bc.arc_face[a], +1) in fset}
        ci = len(components)
        components.append({"faces": comp_faces, "edges": earcs, "vertices": set()})
        for fc in comp_faces:
            comp_of_face_copy[fc] = ci
        for a in earcs:
            comp_of_edge[a] = ci
    # a symbol (a, end, +1) lies on edge e_a; (a, end, -1) lies on e_{S(a)}
    for vi, cls in enumerate(vertex_classes):
        edge_comps = {comp_of_edge[a if c > 0 else S[a]] for (a, e, c) in cls}
        if len(edge_comps) != 1:
            raise GluingInconsistency("vertex class spans several components")
        components[edge_comps.pop()]["vertices"].add(vi)

    return WeldedComplex(bc, list(range(len(arcs))), vertex_classes, vertex_of,
                         face_copies, eta_vertex, eta_edge, components,
                         comp_of_face_copy)


# -- surface report ------------------------------------------------------------------

@dataclass(frozen=True)
class ComponentReport:
    index: int
    faces: tuple
    euler_characteristic: int
    genus: int
    eta_invariant: bool
    fix_eta: int          # eta-fixed vertices on this component (0 if not invariant)
    graph_component: tuple


@dataclass(frozen=True)
class SurfaceReport:
    components: tuple
    welding_graph: WeldingGraph
    zipped: tuple          # per zipped component: {"euler_characteristic": 2, ...}

    def connected(self):
        return len(self.components) == 1

    def total_fix_eta(self):
        return sum(c.fix_eta for c in self.components)


def _face_boundary_cycles(bc: BoundaryComplex, fi: int) -> int:
    return len(bc.faces[fi])


def component_euler(bc: BoundaryComplex, comp) -> int:
    """chi via compactly-supported counts: V - E + sum over face copies (2 - b)."""
    V = len(comp["vertices"])
    E = len(comp["edges"])
    F = sum(2 - _face_boundary_cycles(bc, fi) for (fi, _) in comp["faces"])
    return V - E + F


def surface_report(wc: WeldedComplex) -> SurfaceReport:
    bc = wc.bc
    graph = welding_graph(bc)
    gcomps = graph.components()
    if len(gcomps) != len(wc.components):
        raise CrosscheckFailed(
            f"Lemma 4.7 violated: {len(gcomps)} graph components vs "
            f"{len(wc.components)} surface components")

    # match graph components to surface components by face sets
    reports = []
    used = set()
    for ci, comp in enumerate(wc.components):
        minus = {fi for (fi, c) in comp["faces"] if c == -1}
        plus = {fi for (fi, c) in comp["faces"] if c == +1}
        gmatch = None
        for gi, gc in enumerate(gcomps):
            gminus = {i for (i, sgn) in gc if sgn < 0}
            gplus = {i for (i, sgn) in gc if sgn > 0}
            if gminus == minus and gplus == plus:
                gmatch = gi
                break
        if gmatch is None or gmatch in used:
            raise CrosscheckFailed("graph/surface component mismatch")
        used.add(gmatch)

        chi = component_euler(bc, comp)
        if chi > 2 or chi % 2 != 0:
            raise GluingInconsistency(f"component chi = {chi} not of a closed "
                                      "orientable surface")
        genus = (2 - chi) // 2

        # Lemma 4.8 both ways: graph-level index intersection vs cell-level eta
        inv_graph = bool(minus & plus)
        inv_cells = all(wc.comp_of_face_copy[(fi, -c)] == ci
                        for (fi, c) in comp["faces"])
        if inv_graph != inv_cells:
            raise CrosscheckFailed("Lemma 4.8 violated: graph and cell-level "
                                   "eta-invariance disagree")
        fix = 0
        if inv_cells:
            fix = sum(1 for vi in comp["vertices"] if wc.eta_vertex[vi] == vi)
        reports.append(ComponentReport(ci, tuple(comp["faces"]), chi, genus,
                                       inv_cells, fix, tuple(gcomps[gmatch])))
    zipped = zipped_report(bc)
    return SurfaceReport(tuple(reports), graph, tuple(zipped))


# -- zipped quotient ---------------------------------------------------------------

def zipped_report(bc: BoundaryComplex):
    """One copy of each face, boundary self-glued along a ~ S(a).

    Every component must be a sphere (chi = 2) for schemas in the mating
    class; anything else raises ZipNotSphere.
    """
    S = bc.s_action
    arcs = bc.arcs
    # edges: arc pairs {a, S(a)}
    pair_of = {}
    for a in range(len(arcs)):
        pair_of[a] = min(a, S[a])
    edge_ids = sorted(set(pair_of.values()))

    symbols = [(a.index, end) for a in arcs for end in ("s", "e")]
    uf = _UnionFind(symbols)
    for a in range(len(arcs)):
        uf.union((a, "s"), (S[a], "e"))
        uf.union((a, "e"), (S[a], "s"))
    for (p, q) in _corner_links(bc):
        uf.union(p, q)
    classes = sorted(uf.classes().values())
    vertex_of = {}
    for vi, cls in enumerate(classes):
        for sym in cls:
            vertex_of[sym] = vi

    # components over cells
    uf2 = _UnionFind([("f", fi) for fi in range(bc.face_count())])
    for a in range(len(arcs)):
        uf2.union(("f", bc.arc_face[a]), ("f", bc.arc_face[S[a]]))
    comp_map = {}
    for fi in range(bc.face_count()):
        comp_map.setdefault(uf2.find(("f", fi)), []).append(fi)

    out = []
    for key in sorted(comp_map):
        fis = sorted(comp_map[key])
        earcs = {pair_of[a] for a in range(len(arcs)) if bc.arc_face[a] in fis}
        verts = {vertex_of[(a, end)] for a in range(len(arcs))
                 if bc.arc_face[a] in fis for end in ("s", "e")}
        V, E = len(verts), len(earcs)
        F = sum(2 - _face_boundary_cycles(bc, fi) for fi in fis)
        chi = V - E + F
        if chi != 2:
            raise ZipNotSphere(f"zipped component chi = {chi}")
        out.append({"faces": fis, "euler_characteristic": chi, "sphere": True})
    return out


# -- identities ---------------------------------------------------------------------

def genus_crosscheck(sr: SurfaceReport, bc: BoundaryComplex) -> bool:
    """Prop 4.11 and Cor 4.14 on a connected report.

    g = (#Fix(eta) - 2)/2 must agree with the Euler-characteristic genus,
    and b >= 3 order-2 orbifold points force g >= 1.
    """
    if not sr.connected():
        raise CrosscheckFailed("crosscheck needs a connected surface")
    comp = sr.components[0]
    if not comp.eta_invariant:
        raise CrosscheckFailed("connected surface must be eta-invariant")
    g_fix = (comp.fix_eta - 2) / 2
    if g_fix != comp.genus:
        raise CrosscheckFailed(
            f"(Fix(eta) - 2)/2 = {g_fix} vs chi-genus {comp.genus}")
    b = bc.order2_total()
    if b >= 3 and comp.genus < 1:
        raise CrosscheckFailed(f"b = {b} >= 3 but genus {comp.genus} < 1")
    return True


def euler_additivity_check(wc: WeldedComplex) -> bool:
    """Doubling identity, with the boundary-identification adjustment.

    chi(Sigma) = 2 chi(D closed) - 2 V_boundary + E_boundary + V_Sigma: the
    naive double 2 chi - chi(boundary) is corrected because singular vertex
    classes of the domain boundary open up into several vertices of Sigma.
    """
    bc = wc.bc
    V_b = len(bc.vertices)
    E_b = len(bc.arcs)
    chi_domain_closed = V_b - E_b + sum(2 - len(f) for f in bc.faces)
    chi_sigma = sum(component_euler(bc, c) for c in wc.components)
    V_sigma = len(wc.vertex_classes)
    return chi_sigma == 2 * chi_domain_closed - 2 * V_b + E_b + V_sigma
