"""Combinatorial model of a conformal mating.

A schema is a list of slots (group or Blaschke) plus contact data saying
which hole corners are identified at singular points, with the ccw rotation
order of the hole wedges around each singular point.  Assembly produces the
boundary complex: arcs (hole sides, split at involution-fixed interior
points), vertex classes, the faces of the multi-domain by planar face
tracing, and the arc-level boundary involution.

Holes are stored purely combinatorially; rendering assigns coordinates
separately.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass

from . import fuchsian
from .errors import (BlaschkeHasNoHole, DegenerateInput, DegreeMismatch,
                     InconsistentInvolution, NonPlanar, VerificationFailed)
from .fuchsian import CASE_I, CASE_II

SCHEMA_VERSION = 1


# -- slots -------------------------------------------------------------------

@dataclass(frozen=True)
class Slot:
    kind: str                    # "group" | "blaschke"
    n: int = 0
    p: int = 0
    case: str = CASE_I
    degree: int = 0              # Blaschke degree
    unbounded: bool = False

    @property
    def circle_degree(self) -> int:
        return self.n * self.p - 1 if self.kind == "group" else self.degree

    def validate(self):
        if self.kind == "group":
            if self.n * self.p < 3:
                raise DegenerateInput(f"group slot needs np >= 3, got {self.n * self.p}")
            fuchsian.build_group(self.n, self.p, self.case)  # parameter check
        elif self.kind == "blaschke":
            if self.degree < 2:
                raise DegenerateInput("Blaschke slot needs degree >= 2")
            if self.unbounded:
                raise DegenerateInput("Blaschke slots sit inside the domain")
        else:
            raise DegenerateInput(f"unknown slot kind {self.kind!r}")


def group_slot(n, p, case=CASE_I, unbounded=False) -> Slot:
    s = Slot("group", n=n, p=p, case=case, unbounded=unbounded)
    s.validate()
    return s


def blaschke_slot(degree) -> Slot:
    s = Slot("blaschke", degree=degree)
    s.validate()
    return s


# -- hole boundaries -----------------------------------------------------------

@dataclass(frozen=True)
class HoleBoundary:
    """p-sided hole of a group slot, with its boundary involution data.

    Sides are 1..p, corners 0..p-1; side s runs corner s-1 -> corner s mod p,
    oriented with the hole interior on the left.  The involution sends side s
    to sigma(s) reversing orientation; self-paired sides carry an interior
    fixed point.
    """

    slot_index: int
    p: int
    case: str
    sigma_side: dict
    sigma_corner: dict
    fixed_corners: tuple
    interior_fixed_sides: tuple


def build_hole(slot: Slot, slot_index: int = 0) -> HoleBoundary:
    if slot.kind != "group":
        raise BlaschkeHasNoHole("Blaschke slots contribute no hole boundary")
    p, case = slot.p, slot.case
    return HoleBoundary(
        slot_index, p, case,
        fuchsian.sigma_side(p, case),
        fuchsian.sigma_corner(p, case),
        tuple(fuchsian.fixed_corners(p, case)),
        tuple(fuchsian.self_paired_sides(p, case)),
    )


# -- contact data ---------------------------------------------------------------

@dataclass(frozen=True)
class ContactData:
    """Corner identification classes, each a ccw-ordered tuple of incidences.

    An incidence is a pair (slot_index, corner); the tuple order is the ccw
    rotation order of the hole wedges around the singular point.
    """

    classes: tuple

    def all_incidences(self):
        return [inc for cls in self.classes for inc in cls]


def validate_contact(holes: dict, contact: ContactData):
    """Involution-consistency: identified corners have identified images."""
    seen = {}
    for ci, cls in enumerate(contact.classes):
        for (h, k) in cls:
            if h not in holes:
                raise InconsistentInvolution(f"incidence {(h, k)}: slot {h} has no hole")
            if not (0 <= k < holes[h].p):
                raise InconsistentInvolution(f"incidence {(h, k)}: corner out of range")
            if (h, k) in seen:
                raise InconsistentInvolution(f"corner {(h, k)} identified twice")
            seen[(h, k)] = ci

    def class_of(inc):
        return seen.get(inc, ("single", inc))

    for cls in contact.classes:
        images = {class_of((h, holes[h].sigma_corner[k])) for (h, k) in cls}
        if len(images) != 1:
            raise InconsistentInvolution(
                f"class {cls}: images fall in distinct classes {images}")


# -- boundary complex ------------------------------------------------------------

@dataclass(frozen=True)
class Arc:
    """Directed boundary arc: a hole side or a half of a self-paired side."""
    index: int
    hole: int          # slot index
    side: int          # 1..p
    piece: int         # 0 = whole side; self-paired sides split into 0, 1
    start: int         # vertex id
    end: int           # vertex id


@dataclass
class BoundaryComplex:
    slots: tuple
    holes: dict                  # slot index -> HoleBoundary
    contact: ContactData
    arcs: list                   # Arc
    s_action: dict               # arc index -> arc index (involution)
    vertices: list               # vertex records (dicts)
    faces: list                  # list of faces; each face: list of dart cycles
    arc_face: dict               # arc index -> face index
    hole_face_of: dict           # slot index -> traced hole-interior cycle
    components: int              # connected components of the boundary graph

    def face_count(self):
        return len(self.faces)

    def s_fixed_boundary_points(self):
        """S-fixed points on the desingularized boundary (side-interior only)."""
        return sum(1 for v in self.vertices if v["kind"] == "midpoint")

    def order2_total(self):
        """b of Cor 4.14: order-2 orbifold points across the group slots."""
        return sum(fuchsian.order2_point_count(s.n, s.p, s.case)
                   for s in self.slots if s.kind == "group")

    def face_arcs(self, fi):
        return sorted({d[0] for cyc in self.faces[fi] for d in cyc})


def _rotation_orders(holes, contact):
    """Vertex table: identification classes plus implicit singletons."""
    claimed = {inc for cls in contact.classes for inc in cls}
    classes = [tuple(cls) for cls in contact.classes]
    for h in sorted(holes):
        for k in range(holes[h].p):
            if (h, k) not in claimed:
                classes.append(((h, k),))
    return classes


def assemble(slots, contact: ContactData) -> BoundaryComplex:
    """Build the boundary complex of a mating schema.

    Faces are traced in the planar combinatorial map whose rotation at each
    corner class interleaves, per incidence in ccw order, the outgoing dart
    of side k+1 with the reversed dart of side k (hole wedges alternate with
    domain wedges).  Face tracing follows phi = sigma^{-1} o alpha, which
    walks each face counterclockwise (face on the left).
    """
    slots = tuple(slots)
    for s in slots:
        s.validate()
    if sum(1 for s in slots if s.unbounded) > 1:
        raise DegenerateInput("at most one unbounded slot")
    holes = {i: build_hole(s, i) for i, s in enumerate(slots) if s.kind == "group"}
    if not holes:
        raise DegenerateInput("a schema needs at least one group slot")
    validate_contact(holes, contact)

    corner_classes = _rotation_orders(holes, contact)
    vertex_of_corner = {}
    vertices = []
    for cls in corner_classes:
        vid = len(vertices)
        vertices.append({"kind": "corner", "incidences": cls})
        for inc in cls:
            vertex_of_corner[inc] = vid

    # arcs: split self-paired sides at an interior fixed point
    arcs = []
    arc_of = {}          # (hole, side, piece) -> arc index

    def add_arc(h, side, piece, u, w):
        a = Arc(len(arcs), h, side, piece, u, w)
        arcs.append(a)
        arc_of[(h, side, piece)] = a.index
        return a

    for h in sorted(holes):
        hb = holes[h]
        for s in range(1, hb.p + 1):
            u = vertex_of_corner[(h, s - 1)]
            w = vertex_of_corner[(h, s % hb.p)]
            if s in hb.interior_fixed_sides:
                vid = len(vertices)
                vertices.append({"kind": "midpoint", "incidences": ((h, s),)})
                add_arc(h, s, 0, u, vid)
                add_arc(h, s, 1, vid, w)
            else:
                add_arc(h, s, 0, u, w)

    # boundary involution on arcs
    s_action = {}
    for a in arcs:
        hb = holes[a.hole]
        s2 = hb.sigma_side[a.side]
        if s2 == a.side:
            s_action[a.index] = arc_of[(a.hole, a.side, 1 - a.piece)]
        else:
            split = s2 in hb.interior_fixed_sides
            if split:
                # orientation reversal swaps the halves
                s_action[a.index] = arc_of[(a.hole, s2, 1 - a.piece)]
            else:
                s_action[a.index] = arc_of[(a.hole, s2, 0)]
    for a, b in s_action.items():
        if s_action[b] != a or a == b:
            raise InconsistentInvolution("arc involution is not a fixed-point-free involution")

    faces, arc_face, hole_face_of, components = _trace_faces(
        slots, holes, arcs, arc_of, vertices, corner_classes)

    return BoundaryComplex(slots, holes, contact, arcs, s_action, vertices,
                           faces, arc_face, hole_face_of, components)


def _trace_faces(slots, holes, arcs, arc_of, vertices, corner_classes):
    # darts: (arc index, +1 forward / -1 reverse)
    def first_piece(h, s):
        return arc_of[(h, s, 0)]

    def last_piece(h, s):
        hb = holes[h]
        return arc_of[(h, s, 1 if s in hb.interior_fixed_sides else 0)]

    rotation = {}  # vertex id -> ccw list of out-darts
    for vid, v in enumerate(vertices):
        if v["kind"] == "corner":
            rot = []
            for (h, k) in v["incidences"]:
                p = holes[h].p
                out_side = k + 1
                in_side = k if k > 0 else p
                rot.append((first_piece(h, out_side), +1))
                rot.append((last_piece(h, in_side), -1))
            rotation[vid] = rot
        else:
            (h, s) = v["incidences"][0]
            rotation[vid] = [(arc_of[(h, s, 1)], +1), (arc_of[(h, s, 0)], -1)]

    def tail(d):
        a, dr = d
        return arcs[a].start if dr > 0 else arcs[a].end

    def head(d):
        a, dr = d
        return arcs[a].end if dr > 0 else arcs[a].start

    def alpha(d):
        return (d[0], -d[1])

    pos = {}
    for vid, rot in rotation.items():
        for i, d in enumerate(rot):
            if tail(d) != vid:
                raise InconsistentInvolution("rotation lists a dart at the wrong vertex")
            pos[d] = (vid, i)

    def phi(d):
        vid, i = pos[alpha(d)]
        rot = rotation[vid]
        return rot[(i - 1) % len(rot)]

    # face orbits
    seen = set()
    cycles = []
    for d0 in sorted(pos):
        if d0 in seen:
            continue
        cyc = []
        d = d0
        while True:
            cyc.append(d)
            seen.add(d)
            d = phi(d)
            if d == d0:
                break
        cycles.append(cyc)

    # the hole interiors must come out as full forward cycles
    hole_face_of = {}
    domain_cycles = []
    for cyc in cycles:
        hs = {arcs[a].hole for (a, dr) in cyc}
        if all(dr > 0 for (_, dr) in cyc) and len(hs) == 1:
            h = hs.pop()
            expected = sum(2 if s in holes[h].interior_fixed_sides else 1
                           for s in range(1, holes[h].p + 1))
            if len(cyc) == expected and h not in hole_face_of:
                hole_face_of[h] = cyc
                continue
        domain_cycles.append(cyc)
    if len(hole_face_of) != len(holes):
        raise NonPlanar("some hole interior failed to close up as a face")
    for cyc in domain_cycles:
        if any(dr > 0 for (_, dr) in cyc):
            raise NonPlanar("a domain face uses a forward (hole-side) dart")

    # connected components of the boundary graph, for the Euler check and the
    # merge of outer faces
    parent = list(range(len(vertices)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    for a in arcs:
        union(a.start, a.end)
    comp_ids = {find(v) for v in range(len(vertices))}
    ncomp = len(comp_ids)

    # per-component sphere maps: V - E + F(traced) = 2 per component
    V = len(vertices)
    E = len(arcs)
    F = len(cycles)
    if V - E + F != 2 * ncomp:
        raise NonPlanar(f"V - E + F = {V - E + F}, expected {2 * ncomp}")

    # merge the outer faces of distinct components into multi-boundary faces
    if ncomp == 1:
        faces = [[cyc] for cyc in domain_cycles]
    else:
        by_comp = {}
        for cyc in domain_cycles:
            c = find(tail(cyc[0]))
            by_comp.setdefault(c, []).append(cyc)
        if any(len(v) != 1 for v in by_comp.values()):
            raise NonPlanar("disconnected contact graph needs nesting data "
                            "(a component has several domain faces)")
        faces = [[cyc for v in sorted(by_comp) for cyc in by_comp[v]]]

    arc_face = {}
    for fi, face in enumerate(faces):
        for cyc in face:
            for (a, _) in cyc:
                arc_face[a] = fi
    if len(arc_face) != len(arcs):
        raise NonPlanar("some arc belongs to no domain face")
    return faces, arc_face, hole_face_of, ncomp


# -- degree accounting -----------------------------------------------------------

def validate_degrees(slots):
    """Critically-fixed-polynomial degree report for a schema.

    deg P = sum over bounded slots of (circle degree - 1) plus 1; a group
    slot on the unbounded basin must have circle degree equal to deg P.  The
    uniformizing-map degree d_R = deg P + 1 applies to connected blender
    surfaces.  (Rational schemas, e.g. Newton matings, are outside this
    accounting.)
    """
    slots = tuple(slots)
    unbounded = [s for s in slots if s.unbounded]
    if len(unbounded) > 1:
        raise DegreeMismatch("at most one unbounded slot")
    deg_p = 1 + sum(s.circle_degree - 1 for s in slots if not s.unbounded)
    report = {
        "polynomial_degree": deg_p,
        "uniformizing_degree_if_connected": deg_p + 1,
        "per_slot": [{"kind": s.kind, "circle_degree": s.circle_degree,
                      "unbounded": s.unbounded} for s in slots],
        "note": "polynomial accounting; not applicable to rational (Newton) schemas",
    }
    if unbounded:
        if unbounded[0].circle_degree != deg_p:
            raise DegreeMismatch(
                f"unbounded slot degree {unbounded[0].circle_degree} != deg P = {deg_p}")
    return report


# -- polynomial registry ------------------------------------------------------------

@dataclass(frozen=True)
class PolynomialEntry:
    name: str
    coefficients: tuple          # ascending powers
    critical_points: tuple       # (point, multiplicity)
    fixed_points: tuple

    def degree(self):
        return len(self.coefficients) - 1

    def __call__(self, z):
        acc = 0j
        for c in reversed(self.coefficients):
            acc = acc * z + c
        return acc

    def derivative_coeffs(self, order=1):
        cs = list(self.coefficients)
        for _ in range(order):
            cs = [k * cs[k] for k in range(1, len(cs))]
        return tuple(cs)

    def eval_derivative(self, z, order=1):
        acc = 0j
        for c in reversed(self.derivative_coeffs(order)):
            acc = acc * z + c
        return acc


def verify_polynomial(entry: PolynomialEntry, tol_small: float = 1e-8,
                      tol_big: float = 1e-4):
    """Check each declared critical point is fixed with the declared multiplicity."""
    report = {"name": entry.name, "critical_points": []}
    for (c, mult) in entry.critical_points:
        fix_res = abs(entry(c) - c)
        derivs = [abs(entry.eval_derivative(c, order=k)) for k in range(1, mult + 2)]
        ok = (fix_res < tol_small
              and all(d < tol_small for d in derivs[:mult])
              and derivs[mult] >= tol_big)
        report["critical_points"].append({
            "point": [c.real, c.imag], "multiplicity": mult,
            "fixed_residual": fix_res, "derivative_magnitudes": derivs, "ok": ok,
        })
        if not ok:
            raise VerificationFailed(
                f"{entry.name}: critical point {c} fails (fix residual {fix_res:.2e}, "
                f"derivatives {derivs})")
    total = sum(m for (_, m) in entry.critical_points)
    report["finite_multiplicity_sum"] = total
    report["degree"] = entry.degree()
    return report


def _alpha_degree7(tol: float = 1e-12):
    """First-quadrant root of 15 a + 6 a^7 - 14 a^5 conj(a)^2 = 0.

    The fixed-point condition R(alpha) = alpha for the degree-7 polynomial is
    equivalent to this equation.  Solved as a 2-variable real Newton
    iteration with a numerically differenced Jacobian, polished from a coarse
    first-quadrant grid scan.
    """
    def F(a):
        return 15 * a + 6 * a ** 7 - 14 * a ** 5 * a.conjugate() ** 2

    def polish(a):
        h = 1e-7
        for _ in range(100):
            f0 = F(a)
            if abs(f0) < tol:
                return a
            fx = (F(a + h) - f0) / h
            fy = (F(a + 1j * h) - f0) / h
            # solve [Re fx, Re fy; Im fx, Im fy] (dx, dy) = -(Re f0, Im f0)
            det = fx.real * fy.imag - fy.real * fx.imag
            if abs(det) < 1e-18:
                return None
            dx = (-f0.real * fy.imag + f0.imag * fy.real) / det
            dy = (-fx.real * f0.imag + f0.real * fx.imag) / det
            a = a + complex(dx, dy)
        return a if abs(F(a)) < 1e-10 else None

    starts = sorted(((abs(F((rr / 10.0) * cmath.exp(1j * kk * math.pi / 80.0))),
                      (rr / 10.0) * cmath.exp(1j * kk * math.pi / 80.0))
                     for rr in range(6, 16) for kk in range(1, 40)),
                    key=lambda t: t[0])
    for _, a0 in starts:
        a = polish(a0)
        if a is not None and a.real > 1e-3 and a.imag > 1e-3 and abs(F(a)) < 1e-10:
            return a
    raise VerificationFailed("no first-quadrant root of the alpha equation found")


_REGISTRY_CACHE = {}


def polynomial_registry():
    """Explicit critically fixed polynomials used by the gallery schemas."""
    if _REGISTRY_CACHE:
        return dict(_REGISTRY_CACHE)
    s2 = 1.0 / math.sqrt(2.0)
    cbrt3 = 3.0 ** (1.0 / 3.0)
    entries = [
        PolynomialEntry(
            "cubic_power", (0j, 0j, 0j, 1 + 0j),
            ((0j, 2),), (0j,)),
        PolynomialEntry(
            "cubic_two_basins", (0j, 1.5 + 0j, 0j, 1 + 0j),
            ((1j * s2, 1), (-1j * s2, 1)), (0j, 1j * s2, -1j * s2)),
        PolynomialEntry(
            "quartic_double", (0j, 0j, 0j, 4.0 / 9.0 ** (1.0 / 3.0) + 0j, 1 + 0j),
            ((0j, 2), (-cbrt3 + 0j, 1)), (0j, -cbrt3 + 0j)),
    ]
    alpha = _alpha_degree7()
    a5 = -(7.0 / 5.0) * (alpha ** 2 + alpha.conjugate() ** 2)
    a3 = (7.0 / 3.0) * abs(alpha) ** 4
    entries.append(PolynomialEntry(
        "deg7_symmetric",
        (0j, 0j, 0j, a3, 0j, a5, 0j, 1 + 0j),
        ((0j, 2), (alpha, 1), (alpha.conjugate(), 1), (-alpha, 1),
         (-alpha.conjugate(), 1)),
        (0j, alpha, alpha.conjugate(), -alpha, -alpha.conjugate())))
    for e in entries:
        _REGISTRY_CACHE[e.name] = e
    return dict(_REGISTRY_CACHE)


# -- schema serialization -------------------------------------------------------------

def schema_to_dict(slots, contact: ContactData, polynomial: str | None = None):
    d = {
        "schema_version": SCHEMA_VERSION,
        "slots": [],
        "identifications": [{"corners": [[h, k] for (h, k) in cls]}
                            for cls in contact.classes],
    }
    for s in slots:
        if s.kind == "group":
            d["slots"].append({"kind": "group", "n": s.n, "p": s.p, "case": s.case,
                               "placement": "unbounded" if s.unbounded else "bounded"})
        else:
            d["slots"].append({"kind": "blaschke", "degree": s.degree,
                               "placement": "bounded"})
    if polynomial:
        d["polynomial"] = polynomial
    return d


def schema_from_dict(d):
    if not isinstance(d, dict) or "slots" not in d:
        raise DegenerateInput("schema document needs a 'slots' array")
    slots = []
    for s in d["slots"]:
        if s.get("kind") == "group":
            slots.append(group_slot(s["n"], s["p"], s.get("case", CASE_I),
                                    s.get("placement") == "unbounded"))
        elif s.get("kind") == "blaschke":
            slots.append(blaschke_slot(s["degree"]))
        else:
            raise DegenerateInput(f"unknown slot {s!r}")
    classes = tuple(tuple((int(h), int(k)) for h, k in cls["corners"])
                    for cls in d.get("identifications", []))
    return tuple(slots), ContactData(classes), d.get("polynomial")


def load_schema(path):
    with open(path, "r", encoding="utf-8") as fh:
        return schema_from_dict(json.load(fh))


# -- gallery fixtures ----------------------------------------------------------------

def newton_schema(n: int):
    """n immediate basins each carrying the (3,1) factor map, all teardrop
    corners identified at one point (the image of infinity)."""
    if n < 3:
        raise DegenerateInput("Newton schema needs n >= 3")
    slots = tuple(group_slot(3, 1) for _ in range(n))
    contact = ContactData((tuple((i, 0) for i in range(n)),))
    return slots, contact


def paper_example(name: str):
    """Schema fixtures for the gallery examples (slots, contact, polynomial)."""
    if name == "5.1":
        slots = (group_slot(1, 4, unbounded=True), group_slot(1, 4))
        contact = ContactData(tuple(((0, k), (1, (-k) % 4)) for k in range(4)))
        return slots, contact, "cubic_power"
    if name == "5.2":
        slots = (group_slot(1, 4, unbounded=True), blaschke_slot(2), blaschke_slot(2))
        contact = ContactData((((0, 0), (0, 2)),))
        return slots, contact, "cubic_two_basins"
    if name == "5.3":
        slots = (group_slot(1, 4, unbounded=True), group_slot(3, 1), group_slot(3, 1))
        contact = ContactData((((0, 0), (1, 0), (0, 2), (2, 0)),))
        return slots, contact, "cubic_two_basins"
    if name == "5.4":
        slots = (group_slot(1, 4, CASE_II, unbounded=True), group_slot(3, 1),
                 blaschke_slot(2))
        return slots, ContactData(()), "cubic_two_basins"
    if name == "5.5":
        slots = (group_slot(5, 1, unbounded=True), group_slot(1, 4, CASE_II),
                 group_slot(1, 3))
        return slots, ContactData(()), "quartic_double"
    if name.startswith("5.6"):
        n = int(name.split(":")[1]) if ":" in name else 3
        slots, contact = newton_schema(n)
        return slots, contact, None
    if name == "final":
        slots = (group_slot(4, 1), group_slot(3, 1), group_slot(3, 1),
                 group_slot(3, 1), blaschke_slot(2))
        contact = ContactData((((1, 0), (2, 0), (3, 0)),))
        return slots, contact, "deg7_symmetric"
    raise DegenerateInput(f"unknown example {name!r}")


PAPER_EXAMPLES = ("5.1", "5.2", "5.3", "5.4", "5.5", "final")


# -- randomized schemas -----------------------------------------------------------

_RANDOM_POOL = ((1, 3, CASE_I), (1, 4, CASE_I), (1, 5, CASE_I), (3, 1, CASE_I),
                (4, 1, CASE_I), (5, 1, CASE_I), (3, 2, CASE_I),
                (1, 4, CASE_II), (1, 6, CASE_II))


def random_schema(rng):
    """A random valid schema (slots, contact) for property sweeps.

    Patterns: isolated holes, fixed-corner wedge trees, a Newton-style
    multi-wedge, a fixed-corner pinch inside one hole, and the two-hole full
    corner pairing.  All are planar by construction; assemble() re-validates.
    """
    pattern = rng.choice(["isolated", "tree", "multiwedge", "pinch", "pairing"])
    if pattern == "isolated":
        k = rng.randint(1, 3)
        slots = tuple(group_slot(*_RANDOM_POOL[rng.randrange(len(_RANDOM_POOL))])
                      for _ in range(k))
        slots += tuple(blaschke_slot(rng.randint(2, 4))
                       for _ in range(rng.randint(0, 2)))
        return slots, ContactData(())
    if pattern == "tree":
        # Case I holes wedged at their fixed corner 0 along a random tree
        k = rng.randint(2, 4)
        pool = [ps for ps in _RANDOM_POOL if ps[2] == CASE_I]
        slots = tuple(group_slot(*pool[rng.randrange(len(pool))]) for _ in range(k))
        classes = []
        for child in range(1, k):
            parent = rng.randrange(child)
            # attach child's corner 0 to parent's corner 0 or p/2 (if fixed)
            pc = 0
            if slots[parent].p % 2 == 0 and rng.random() < 0.5:
                pc = slots[parent].p // 2
            classes.append(((parent, pc), (child, 0)))
        merged = _merge_classes(classes)
        return slots, ContactData(merged)
    if pattern == "multiwedge":
        k = rng.randint(3, 6)
        slots = tuple(group_slot(3, 1) if rng.random() < 0.7 else group_slot(4, 1)
                      for _ in range(k))
        contact = ContactData((tuple((i, 0) for i in range(k)),))
        return slots, contact
    if pattern == "pinch":
        p = rng.choice([4, 6])
        slots = (group_slot(1, p),)
        slots += tuple(blaschke_slot(rng.randint(2, 3))
                       for _ in range(rng.randint(0, 2)))
        contact = ContactData((((0, 0), (0, p // 2)),))
        return slots, contact
    p = rng.choice([3, 4, 5])
    slots = (group_slot(1, p, unbounded=True), group_slot(1, p))
    contact = ContactData(tuple(((0, k), (1, (-k) % p)) for k in range(p)))
    return slots, contact


def _merge_classes(classes):
    """Union overlapping identification pairs into classes (tree wedges can
    attach several children at the same parent corner)."""
    out = []
    for cls in classes:
        hit = None
        for existing in out:
            if set(existing) & set(cls):
                hit = existing
                break
        if hit is None:
            out.append(list(cls))
        else:
            hit.extend(inc for inc in cls if inc not in hit)
    return tuple(tuple(cls) for cls in out)
