"""Preset Fuchsian groups from side pairings of regular ideal polygons.

Two pairing cases for the np-gon Pi:

  Case I   g_s = (reflection along C_{1,s}) then (reflection along the
           diameter l joining +-exp(i pi/n)); pairs side s with p+1-s.
  Case II  (p even) same with the common perpendicular l~ of C_{1,1} and
           C_{1,(p+2)/2}; pairs side s with p+2-s mod p.

Only the first-sector generators plus the rotation M_w are stored; the other
sectors are conjugates M_w^{r-1} g_s M_w^{-(r-1)}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import hyperbolic as hyp
from .errors import DegenerateInput, InvalidCase, NonParabolicCycle, PairingViolation
from .hyperbolic import (MobiusMap, TAU, common_perpendicular, geodesic_between,
                         pairing_from_reflections, regular_ideal_polygon)

CASE_I = "I"
CASE_II = "II"


def sigma_side(p: int, case: str):
    """Side-pairing permutation on {1..p}."""
    if case == CASE_I:
        return {s: p + 1 - s for s in range(1, p + 1)}
    return {s: ((p + 1 - s) % p) + 1 for s in range(1, p + 1)}  # p+2-s mod p


def sigma_corner(p: int, case: str):
    """Induced corner permutation on {0..p-1} (corner k between sides k, k+1)."""
    if case == CASE_I:
        return {k: (-k) % p for k in range(p)}
    return {k: (1 - k) % p for k in range(p)}


def self_paired_sides(p: int, case: str):
    sig = sigma_side(p, case)
    return [s for s in range(1, p + 1) if sig[s] == s]


def fixed_corners(p: int, case: str):
    sig = sigma_corner(p, case)
    return [k for k in range(p) if sig[k] == k]


@dataclass(frozen=True)
class GroupPreset:
    n: int
    p: int
    case: str
    polygon: hyp.IdealPolygon
    axis: hyp.Geodesic
    first_sector: tuple          # MobiusMap for s = 1..p (index s-1)
    rotation: MobiusMap          # M_w, identity when n = 1
    sigma: dict                  # side pairing on {1..p}

    def generator(self, r: int, s: int) -> MobiusMap:
        """Side pairing of C_{r,s}; sectors transfer by rotation conjugation."""
        g = self.first_sector[s - 1]
        if r == 1:
            return g
        mw = self.rotation.power(r - 1)
        return mw.compose(g).compose(mw.inverse())

    def side(self, r: int, s: int) -> hyp.Geodesic:
        return self.polygon.sides[self.side_index(r, s)]

    def side_index(self, r: int, s: int) -> int:
        return (r - 1) * self.p + (s - 1)

    def all_side_labels(self):
        return [(r, s) for r in range(1, self.n + 1) for s in range(1, self.p + 1)]

    @property
    def name(self) -> str:
        sup = "2" if self.case == CASE_II else ""
        return f"Gamma{sup}_{{{self.n},{self.p}}}"


def build_group(n: int, p: int, case: str = CASE_I) -> GroupPreset:
    """Construct the preset group Gamma_{n,p} (Case I) or Gamma^2_{n,p} (Case II)."""
    if n < 1 or p < 1 or n * p < 2:
        raise DegenerateInput(f"np = {n * p} < 2")
    if n == 2:
        raise InvalidCase("n = 2 is outside the preset family (use n = 1 or n >= 3)")
    if case not in (CASE_I, CASE_II):
        raise InvalidCase(f"unknown case {case!r}")
    if case == CASE_II and p % 2 != 0:
        raise InvalidCase("Case II needs even p")
    if case == CASE_II and p == 2:
        # sides 1 and (p+2)/2 = 2 are adjacent: no common perpendicular
        raise InvalidCase("Case II needs p >= 4")
    if case == CASE_II and n != 1:
        # reflection in l~ fixes C_{1,1} endpoint-swapping, which forces the
        # corner action k -> 1-k mod p; the wrap k = p -> 0 only closes up
        # when the sector is the whole circle
        raise InvalidCase("Case II side pairings exist only for n = 1")

    polygon = regular_ideal_polygon(n, p)
    if case == CASE_I:
        axis = geodesic_between(math.pi / n, math.pi / n + math.pi)
    else:
        c_a = polygon.sides[0]                     # C_{1,1}
        c_b = polygon.sides[(p + 2) // 2 - 1]      # C_{1,(p+2)/2}
        axis = common_perpendicular(c_a, c_b)

    gens = tuple(pairing_from_reflections(axis, polygon.sides[s - 1])
                 for s in range(1, p + 1))
    rotation = MobiusMap.rotation(TAU / n) if n > 1 else MobiusMap.identity()
    return GroupPreset(n, p, case, polygon, axis, gens, rotation, sigma_side(p, case))


# -- verification ----------------------------------------------------------

def side_pairing_check(preset: GroupPreset, tol: float = 1e-8):
    """Each generator must carry its side's endpoint set onto the paired side's.

    Returns a report dict with the max residual; raises PairingViolation when
    any residual exceeds tol.
    """
    residuals = {}
    for (r, s) in preset.all_side_labels():
        g = preset.generator(r, s)
        src = preset.side(r, s)
        dst = preset.side(r, preset.sigma[s])
        i1, i2 = (g(e) for e in src.endpoints)
        w1, w2 = dst.endpoints
        residuals[(r, s)] = min(max(abs(i1 - w1), abs(i2 - w2)),
                                max(abs(i1 - w2), abs(i2 - w1)))
    worst = max(residuals.values())
    if worst > tol:
        raise PairingViolation(f"max endpoint residual {worst:.3e}")
    return {"max_residual": worst, "per_side": residuals}


def _vertex_action(preset: GroupPreset):
    """Index-level action of each pairing on polygon vertices.

    Side k (0-based full index) spans vertices k, k+1 and is carried to side
    k' in the same sector with the start/end exchanged:
    start(k) -> end(k'), end(k) -> start(k').
    """
    m = preset.n * preset.p
    act = {}
    for (r, s) in preset.all_side_labels():
        k = preset.side_index(r, s)
        k2 = preset.side_index(r, preset.sigma[s])
        act[k] = {k % m: (k2 + 1) % m, (k + 1) % m: k2 % m}
    return act


def vertex_cycles(preset: GroupPreset):
    """Ideal-vertex cycles under the side pairings.

    Cycle detection is purely combinatorial (vertex indices); the Möbius
    arithmetic enters only through the returned cycle transformations.
    """
    m = preset.n * preset.p
    act = _vertex_action(preset)

    def sides_at(v):
        return ((v - 1) % m, v % m)  # side arriving at v, side leaving v

    seen = set()
    cycles = []
    for v0 in range(m):
        e0 = sides_at(v0)[1]
        if (v0, e0) in seen:
            continue
        v, e = v0, e0
        word = []
        cycle_vertices = []
        transform = MobiusMap.identity()
        while True:
            seen.add((v, e))
            cycle_vertices.append(v)
            r, s = e // preset.p + 1, e % preset.p + 1
            g = preset.generator(r, s)
            transform = g.compose(transform)
            word.append((r, s))
            v2 = act[e][v]
            e_img = preset.side_index(r, preset.sigma[s])
            ein, eout = sides_at(v2)
            e2 = eout if e_img == ein else ein
            v, e = v2, e2
            if (v, e) == (v0, e0):
                break
        cycles.append({"vertices": cycle_vertices, "word": word, "transform": transform})
    return cycles


def poincare_check(preset: GroupPreset, tol_parabolic: float = 1e-7,
                   tol_trace: float = 1e-9):
    """Poincaré-polygon sanity report.

    Every ideal-vertex cycle transformation must be parabolic or the identity
    (trace^2 = 4); order-2 generators must have trace 0; M_w must have order
    exactly n.
    """
    report = {"cycles": [], "order2": {}, "rotation_order": None}
    for cyc in vertex_cycles(preset):
        tr2 = (cyc["transform"].trace) ** 2
        res = abs(tr2 - 4.0)
        report["cycles"].append({
            "vertices": cyc["vertices"],
            "trace_sq_residual": res,
            "identity": cyc["transform"].is_identity(1e-8),
        })
        if res > tol_parabolic:
            raise NonParabolicCycle(
                f"cycle through vertices {cyc['vertices']}: |tr^2 - 4| = {res:.3e}")
    for s in self_paired_sides(preset.p, preset.case):
        tr = abs(preset.first_sector[s - 1].trace)
        report["order2"][s] = tr
        if tr > tol_trace:
            raise NonParabolicCycle(f"generator {s} should be order 2, |trace| = {tr:.3e}")
    if preset.n == 1:
        rot_order = 1
    else:
        rot_order = preset.rotation.order(max_order=preset.n + 1)
    report["rotation_order"] = rot_order
    if rot_order != preset.n:
        raise NonParabolicCycle(f"rotation order {rot_order} != n = {preset.n}")
    return report


# -- orbifold signatures ----------------------------------------------------

@dataclass(frozen=True)
class OrbifoldSignature:
    genus: int
    punctures: int
    cone_orders: tuple

    def order2_count(self) -> int:
        return sum(1 for q in self.cone_orders if q == 2)

    def chi_orb(self) -> float:
        return (2 - 2 * self.genus - self.punctures
                - sum(1.0 - 1.0 / q for q in self.cone_orders))


def orbifold_signature(preset: GroupPreset, extended: bool = True) -> OrbifoldSignature:
    """Signature of D/Gamma-hat (extended) or D/Gamma.

    Case n = 1 the two agree.  For n >= 3 the non-extended quotient is the
    n-fold cyclic cover: punctures come from the ideal-vertex cycles, one
    order-2 point per self-paired side in every sector, and no order-n point.
    """
    n, p, case = preset.n, preset.p, preset.case
    if extended or n == 1:
        if case == CASE_I:
            punctures = p // 2 + 1
            cones = [2] * (1 if p % 2 == 1 else 0)
        else:
            punctures = p // 2
            cones = [2, 2]
        if n >= 3:
            cones.append(n)
        return OrbifoldSignature(0, punctures, tuple(sorted(cones)))
    punctures = len(vertex_cycles(preset))
    cones = [2] * (n * len(self_paired_sides(p, case)))
    return OrbifoldSignature(0, punctures, tuple(sorted(cones)))


def order2_point_count(n: int, p: int, case: str) -> int:
    """Order-2 orbifold points of D/Gamma-hat (the count b of Cor. 4.14)."""
    if case == CASE_I:
        return 1 if p % 2 == 1 else 0
    return 2


# -- degree calculator -------------------------------------------------------

@dataclass(frozen=True)
class DegreePlan:
    multiplicities: tuple
    degree: int
    top_multiplicity: int


def legal_presets(n_range=(1, 3, 4, 5), p_range=range(1, 7)):
    """All (n, p, case) triples buildable in the standard test grid."""
    out = []
    for n in n_range:
        for p in p_range:
            if n * p < 3:
                continue
            out.append((n, p, CASE_I))
            if n == 1 and p % 2 == 0 and p >= 4:
                out.append((n, p, CASE_II))
    return out


def degree_plan(multiplicities) -> DegreePlan:
    """Critically fixed polynomial degree realizing given finite multiplicities.

    Adds a fully ramified critical point of multiplicity sum(m_i), so the
    degree is sum(m_i) + 1; the constraints m_i <= d-1, sum = 2d-2 and
    n+1 <= d then hold automatically.
    """
    ms = tuple(int(m) for m in multiplicities)
    if not ms or any(m < 1 for m in ms):
        raise DegenerateInput("need a nonempty sequence of positive integers")
    top = sum(ms)
    d = top + 1
    assert all(m <= d - 1 for m in ms) and top <= d - 1
    assert sum(ms) + top == 2 * d - 2
    assert len(ms) + 1 <= d
    return DegreePlan(ms, d, top)
