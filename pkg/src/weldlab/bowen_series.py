"""Bowen-Series circle maps and their factor quotients.

The map acts on the closed disk minus the open fundamental polygon: in the
pocket bounded by C_{r,s} it is the side pairing of that pocket.  For n >= 3
the circle map is discontinuous at the sector boundaries but commutes with
M_w, so it descends through z -> z^n to the continuous factor map of degree
np - 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import hyperbolic as hyp
from .errors import (AtBreakpoint, DepthTooSmall, InconsistentDegree,
                     MarkovViolation, OutsideDomain, RankLimit)
from .fuchsian import GroupPreset, build_group
from .hyperbolic import TAU, MobiusMap, angle_in_open_arc, ccw_span, norm_angle

BREAK_TOL = 1e-12


@dataclass(frozen=True)
class Pocket:
    r: int
    s: int
    geodesic: hyp.Geodesic
    map: MobiusMap
    arc: tuple  # (lo, hi) ccw boundary arc subtended by the side


@dataclass(frozen=True)
class PocketTable:
    entries: tuple

    def locate(self, theta: float, tol: float = BREAK_TOL):
        """Pocket whose open arc contains theta; AtBreakpoint at arc ends."""
        t = norm_angle(theta)
        for pk in self.entries:
            if angle_in_open_arc(t, pk.arc[0], pk.arc[1]):
                if ccw_span(pk.arc[0], t) < tol or ccw_span(t, pk.arc[1]) < tol:
                    raise AtBreakpoint(f"theta = {theta} is a partition breakpoint")
                return pk
        raise AtBreakpoint(f"theta = {theta} is a partition breakpoint")


def _pocket_table(preset: GroupPreset) -> PocketTable:
    m = preset.n * preset.p
    entries = []
    for r in range(1, preset.n + 1):
        for s in range(1, preset.p + 1):
            k = preset.side_index(r, s)
            entries.append(Pocket(r, s, preset.polygon.sides[k],
                                  preset.generator(r, s),
                                  (TAU * k / m, TAU * (k + 1) / m)))
    return PocketTable(tuple(entries))


@dataclass(frozen=True)
class BowenSeriesMap:
    preset: GroupPreset
    pockets: PocketTable
    factor: bool
    marked_fixed_angle: float

    @property
    def degree(self) -> int:
        return self.preset.n * self.preset.p - 1

    @property
    def name(self) -> str:
        kind = "fBS" if self.factor else "BS"
        return f"A^{kind}_{self.preset.name}"


def bowen_series_map(n: int, p: int, case: str = "I", factor: bool = False) -> BowenSeriesMap:
    preset = build_group(n, p, case)
    return bowen_series_from_preset(preset, factor)


def bowen_series_from_preset(preset: GroupPreset, factor: bool = False) -> BowenSeriesMap:
    if factor and preset.n < 3:
        raise OutsideDomain("factor map needs n >= 3")
    pockets = _pocket_table(preset)
    marked = _marked_fixed_angle(preset, pockets, factor)
    return BowenSeriesMap(preset, pockets, factor, marked)


# -- circle evaluation -------------------------------------------------------

def eval_circle_raw(m: BowenSeriesMap, theta: float) -> float:
    """Unfactored circle action: apply the generator of the pocket at theta."""
    pk = m.pockets.locate(theta)
    return pk.map.boundary_angle(theta)


def eval_circle_raw_one_sided(m: BowenSeriesMap, theta: float, side: int) -> float:
    """One-sided limit at theta: side=+1 uses the arc on the ccw side.

    The pockets subtend the uniform partition at multiples of 2 pi/(np), so
    the arc choice is index arithmetic; the pocket map is then evaluated at
    theta itself (Möbius maps extend continuously to the closed arc).
    """
    k = len(m.pockets.entries)
    t = norm_angle(theta)
    idx = math.floor(t * k / TAU + (1e-7 if side > 0 else -1e-7)) % k
    return m.pockets.entries[idx].map.boundary_angle(t)


def eval_circle(m: BowenSeriesMap, theta: float, lift: int = 0) -> float:
    """Circle action of the map (factor maps evaluated through z -> z^n).

    For the factor map, `lift` selects which n-th root lift to use; all
    choices agree (well-definedness is a tested invariant).
    """
    if not m.factor:
        return eval_circle_raw(m, theta)
    n = m.preset.n
    up = norm_angle(theta) / n + TAU * (lift % n) / n
    return norm_angle(n * eval_circle_raw(m, up))


def eval_circle_one_sided(m: BowenSeriesMap, theta: float, side: int) -> float:
    if not m.factor:
        return eval_circle_raw_one_sided(m, theta, side)
    n = m.preset.n
    up = norm_angle(theta) / n
    return norm_angle(n * eval_circle_raw_one_sided(m, up, side))


def _eval_circle_safe(m: BowenSeriesMap, theta: float) -> float:
    """eval_circle with a one-sided fallback at breakpoints (internal use)."""
    try:
        return eval_circle(m, theta)
    except AtBreakpoint:
        return eval_circle_one_sided(m, theta, +1)


def circle_orbit(m: BowenSeriesMap, theta: float, steps: int):
    out = [norm_angle(theta)]
    for _ in range(steps):
        out.append(eval_circle(m, out[-1]))
    return out


def breakpoints(m: BowenSeriesMap):
    """Partition breakpoints of the circle map (projected for factor maps)."""
    if m.factor:
        p = m.preset.p
        return [TAU * k / p for k in range(p)]
    mm = m.preset.n * m.preset.p
    return [TAU * k / mm for k in range(mm)]


# -- disk evaluation ---------------------------------------------------------

def _locate_pocket_disk(m: BowenSeriesMap, z: complex, tol: float):
    best = None
    for pk in m.pockets.entries:
        d = pk.geodesic.side(z)  # <= 0 on the pocket side of the geodesic
        if d <= tol and (best is None or d < best[0]):
            best = (d, pk)
    if best is None:
        raise OutsideDomain(f"{z} lies in the interior of the polygon")
    return best[1]


def eval_pocket(m: BowenSeriesMap, z: complex, tol: float = 1e-12) -> complex:
    """Disk action on the closure of the pocket union."""
    if abs(z) > 1.0 + 1e-9:
        raise OutsideDomain(f"{z} outside the closed disk")
    if not m.factor:
        pk = _locate_pocket_disk(m, z, tol)
        return pk.map(z)
    n = m.preset.n
    u = _principal_root(z, n)
    pk = _locate_pocket_disk(m, u, tol)
    return pk.map(u) ** n


def _principal_root(z: complex, n: int) -> complex:
    if z == 0:
        return 0j
    r = abs(z) ** (1.0 / n)
    return r * cmath.exp(1j * cmath.phase(z) / n)


# -- degree by preimage counting ----------------------------------------------

def _arc_image(m: BowenSeriesMap, pk: Pocket):
    """One-sided endpoint images of a pocket arc under the unfactored map."""
    lo, hi = pk.arc
    a = pk.map.boundary_angle(lo)
    b = pk.map.boundary_angle(hi)
    return a, b


def count_preimages(m: BowenSeriesMap, target: float) -> int:
    """Number of circle preimages of a generic target angle."""
    y = norm_angle(target)
    if not m.factor:
        total = 0
        for pk in m.pockets.entries:
            a, b = _arc_image(m, pk)
            if angle_in_open_arc(y, a, b):
                total += 1
        return total
    # count upstairs solutions of A(u) in the n-th root lifts of y, then
    # divide by the n-fold redundancy of z -> z^n
    n = m.preset.n
    targets = [y / n + TAU * k / n for k in range(n)]
    total = 0
    for pk in m.pockets.entries:
        a, b = _arc_image(m, pk)
        for t in targets:
            if angle_in_open_arc(t, a, b):
                total += 1
    if total % n != 0:
        raise InconsistentDegree(f"upstairs count {total} not divisible by n = {n}")
    return total // n


def circle_degree(m: BowenSeriesMap, samples: int = 20) -> int:
    """Covering degree via preimage counting at generic angles."""
    counts = set()
    for i in range(samples):
        y = TAU * (i + 0.318309886) / samples  # offset avoids breakpoints
        counts.add(count_preimages(m, y))
    if len(counts) != 1:
        raise InconsistentDegree(f"preimage counts disagree: {sorted(counts)}")
    return counts.pop()


# -- Markov partition ----------------------------------------------------------

@dataclass(frozen=True)
class MarkovPartition:
    breakpoints: tuple
    branch_maps: tuple        # per-arc MobiusMap (upstairs representative)
    transition: tuple         # multiplicity table, row = source arc
    arc_images: tuple         # per-arc (start, rise) of the lifted image


def markov_partition(m: BowenSeriesMap, tol: float = 1e-8) -> MarkovPartition:
    """Partition at the pocket-arc endpoints with the covering verified Markov.

    The image of each arc is computed as a lifted interval (start angle plus
    total rise); the Markov property demands that both ends land on
    breakpoints within tol.
    """
    bps = breakpoints(m)
    k = len(bps)
    arc_len = TAU / k
    rows = []
    images = []
    maps = []
    for i in range(k):
        lo, hi = bps[i], bps[(i + 1) % k]
        start = eval_circle_one_sided(m, lo, +1)
        rise = _lifted_rise(m, lo, hi)
        end = start + rise
        for v in (start, end):
            snap = round(v / arc_len) * arc_len
            if abs(v - snap) > tol:
                raise MarkovViolation(
                    f"arc {i}: image endpoint {v} misses breakpoints by {abs(v - snap):.2e}")
        row = [0] * k
        j0 = round(start / arc_len)
        covered = round(rise / arc_len)
        for j in range(covered):
            row[(j0 + j) % k] += 1
        rows.append(tuple(row))
        images.append((start, rise))
        if not m.factor:
            maps.append(m.pockets.entries[i].map)
        else:
            up = m.pockets.entries[i]
            maps.append(up.map)
    return MarkovPartition(tuple(bps), tuple(maps), tuple(rows), tuple(images))


def _lifted_rise(m: BowenSeriesMap, lo: float, hi: float, grid: int = 64) -> float:
    """Total increase of the lifted circle map across the arc (lo, hi)."""
    span = ccw_span(lo, hi)
    prev = eval_circle_one_sided(m, lo, +1)
    rise = 0.0
    steps = grid
    while True:
        total = 0.0
        prev = eval_circle_one_sided(m, lo, +1)
        ok = True
        for i in range(1, steps + 1):
            t = lo + span * i / steps
            cur = (eval_circle_one_sided(m, hi, -1) if i == steps
                   else _eval_circle_safe(m, norm_angle(t)))
            d = (cur - prev) % TAU
            if d > math.pi:  # step too coarse to lift safely
                ok = False
                break
            total += d
            prev = cur
        if ok:
            return total
        steps *= 2
        if steps > 65536:
            raise MarkovViolation("cannot lift arc image")


# -- topological conjugacy with z^d ------------------------------------------

def _circle_fixed_points(m: BowenSeriesMap, grid: int = 1024):
    """All fixed angles of the circle map.

    The displacement A(t) - t is lifted continuously along each partition arc
    (the principal-value trick alone confuses antipodal crossings with fixed
    points); fixed angles are the crossings of the lifted displacement with
    multiples of 2 pi, refined by bisection.
    """
    out = []
    bps = breakpoints(m)
    k = len(bps)
    for i in range(k):
        lo, hi = bps[i], bps[(i + 1) % k]
        span = ccw_span(lo, hi)

        def val_at(t_off):
            if t_off <= 0.0:
                return eval_circle_one_sided(m, lo, +1)
            if t_off >= span:
                return eval_circle_one_sided(m, hi, -1)
            return _eval_circle_safe(m, norm_angle(lo + t_off))

        v0 = val_at(0.0)
        disp = (v0 - lo + math.pi) % TAU - math.pi
        if abs(disp) < 1e-10:  # fixed arc endpoint (cusp / parabolic case)
            out.append(norm_angle(lo))
        prev_t, prev_v, prev_disp = 0.0, v0, disp
        for j in range(1, grid + 1):
            t = span * j / grid
            v = val_at(t)
            disp = prev_disp + ((v - prev_v) % TAU) - (t - prev_t)
            near = round(disp / TAU) * TAU
            if abs(disp - near) < 1e-10:
                out.append(norm_angle(lo + t))
            else:
                lo_lvl = math.ceil(min(prev_disp, disp) / TAU + 1e-12)
                hi_lvl = math.floor(max(prev_disp, disp) / TAU - 1e-12)
                for lvl in range(lo_lvl, hi_lvl + 1):
                    target = TAU * lvl
                    if not (min(prev_disp, disp) + 1e-11 < target < max(prev_disp, disp) - 1e-11):
                        continue
                    a, b = prev_t, t
                    da, va = prev_disp, prev_v
                    for _ in range(80):
                        mid = 0.5 * (a + b)
                        vm = val_at(mid)
                        dm = da + ((vm - va) % TAU) - (mid - a)
                        if (dm < target) == (da < target):
                            a, da, va = mid, dm, vm
                        else:
                            b = mid
                    out.append(norm_angle(lo + 0.5 * (a + b)))
            prev_t, prev_v, prev_disp = t, v, disp
    verified = [t for t in out
                if hyp.angle_dist(_eval_circle_safe(m, t), t) < 1e-6]
    dedup = []
    for t in sorted(norm_angle(x) for x in verified):
        if all(hyp.angle_dist(t, u) > 1e-6 for u in dedup):
            dedup.append(t)
    return dedup


def _marked_fixed_angle(preset: GroupPreset, pockets: PocketTable, factor: bool) -> float:
    if preset.case == "I":
        return 0.0
    # Case II (n = 1): the smallest positive fixed angle of the circle map;
    # for the regular polygon this is the axis endpoint of g~_2 in pocket 2
    m = BowenSeriesMap(preset, pockets, factor, 0.0)
    fixed = [t for t in _circle_fixed_points(m) if t > 1e-9]
    if not fixed:
        raise MarkovViolation("no circle fixed point found")
    return min(fixed)


def _lifted_targets(y, start, rise):
    """Lifts y + 2 pi j of y lying strictly inside (start, start + rise)."""
    j = math.ceil((start - y) / TAU - 1e-13)
    out = []
    while y + TAU * j < start + rise - 1e-10:
        if y + TAU * j > start + 1e-10:
            out.append(y + TAU * j)
        j += 1
    return out


def _solve_lifted(m: BowenSeriesMap, lo, hi, target, grid: int = 256):
    """x in (lo, hi) with the continuously lifted circle map equal to target.

    Works for arcs whose image winds several times: a fine grid tracks the
    lift, then bisection runs inside one grid cell where the local rise is
    small.
    """
    span = ccw_span(lo, hi)
    while True:
        lifted_prev = eval_circle_one_sided(m, lo, +1)
        t_prev = 0.0
        bracket = None
        max_step = 0.0
        for i in range(1, grid + 1):
            t = span * i / grid
            val = (eval_circle_one_sided(m, hi, -1) if i == grid
                   else _eval_circle_safe(m, norm_angle(lo + t)))
            step = (val - lifted_prev) % TAU
            max_step = max(max_step, step)
            lifted = lifted_prev + step
            if lifted >= target and bracket is None:
                bracket = (t_prev, t, lifted_prev)
            t_prev, lifted_prev = t, lifted
        if bracket is not None and max_step < 0.5 * math.pi:
            break
        grid *= 2
        if grid > 262144:
            raise InconsistentDegree("lift bracketing failed")
    a, b, base_lift = bracket
    val_a = (eval_circle_one_sided(m, lo, +1) if a == 0.0
             else _eval_circle_safe(m, norm_angle(lo + a)))
    for _ in range(80):
        mid = 0.5 * (a + b)
        vm = _eval_circle_safe(m, norm_angle(lo + mid))
        lifted_mid = base_lift + (vm - val_a) % TAU
        if lifted_mid < target:
            a = mid
        else:
            b = mid
    return lo + 0.5 * (a + b)


@dataclass(frozen=True)
class Itinerary:
    symbols: tuple
    depth: int


def power_map_itinerary(theta: float, d: int, depth: int) -> Itinerary:
    """Base-d digit itinerary of theta under t -> d t (arcs cut at 0)."""
    t = norm_angle(theta) / TAU
    syms = []
    for _ in range(depth):
        t = t % 1.0
        syms.append(min(d - 1, int(t * d)))
        t = t * d
    return Itinerary(tuple(syms), depth)


class ConjugacyH:
    """Topological conjugacy h with h(d theta) = A(h(theta)), h(0) = marked.

    h is computed by itinerary matching: the depth-k symbol sequence of theta
    under multiplication by d selects a nested chain of inverse-branch arcs
    for the circle map, cut at the preimages of the marked fixed angle.  The
    value is returned as the midpoint of the depth-k arc together with its
    radius; no exactness beyond the arc width is claimed.

    Inverse branches are evaluated in closed form: each cut arc is divided at
    the partition breakpoints into pieces carrying a single Möbius branch,
    and pulling back is one inverse-matrix application (plus an n-th root
    choice for factor maps).
    """

    def __init__(self, m: BowenSeriesMap):
        if m.preset.n >= 3 and not m.factor:
            raise InconsistentDegree(
                "the unfactored map is discontinuous for n >= 3; "
                "the conjugacy exists for n = 1 or for factor maps")
        self.m = m
        self.d = circle_degree(m)
        self.base = m.marked_fixed_angle
        self.cuts = self._preimages_of_marked()
        self._build_pieces()

    def _preimages_of_marked(self):
        m, d = self.m, self.d
        y = self.base
        cuts = [self.base]
        bps = breakpoints(m)
        k = len(bps)
        part = markov_partition(m)
        for i in range(k):
            lo = bps[i]
            hi = bps[(i + 1) % k]
            start, rise = part.arc_images[i]
            for target in _lifted_targets(y, start, rise):
                cuts.append(norm_angle(_solve_lifted(m, lo, hi, target)))
        dedup = []
        for t in sorted(norm_angle(c - self.base) for c in cuts):
            if (not dedup or t - dedup[-1] > 1e-9) and t < TAU - 1e-9:
                dedup.append(t)
        cuts = [norm_angle(t + self.base) for t in dedup]
        if len(cuts) != self.d:
            raise InconsistentDegree(
                f"marked angle has {len(cuts)} preimages, expected {self.d}")
        return cuts

    def _build_pieces(self):
        m = self.m
        n = m.preset.n if m.factor else 1
        cut_offs = [ccw_span(self.base, c) if i else 0.0
                    for i, c in enumerate(self.cuts)] + [TAU]
        bp_offs = sorted({norm_angle(b - self.base) for b in breakpoints(m)}
                         - {0.0})
        self._jarcs = []
        for j in range(self.d):
            lo, hi = cut_offs[j], cut_offs[j + 1]
            inner = [x for x in bp_offs if lo + 1e-12 < x < hi - 1e-12]
            bounds = [lo] + inner + [hi]
            pieces = []
            u_acc = 0.0
            for i in range(len(bounds) - 1):
                x0, x1 = bounds[i], bounds[i + 1]
                am = norm_angle(self.base + 0.5 * (x0 + x1))
                if m.factor:
                    g = m.pockets.locate(norm_angle(am / n) if abs(am) > 0 else 0.0,
                                         tol=0.0).map
                else:
                    g = m.pockets.locate(am, tol=0.0).map
                a0 = eval_circle_one_sided(m, norm_angle(self.base + x0), +1)
                a1 = eval_circle_one_sided(m, norm_angle(self.base + x1), -1)
                rise = (a1 - a0) % TAU
                if len(bounds) == 2:
                    rise = TAU
                pieces.append({"x0": x0, "x1": x1, "u0": u_acc, "rise": rise,
                               "map_inv": g.inverse()})
                u_acc += rise
            if abs(u_acc - TAU) > 1e-6:
                raise InconsistentDegree(
                    f"cut arc {j} lifts to rise {u_acc}, expected 2 pi")
            # rescale tiny lift error so piece lookup is exact at 2 pi
            scale = TAU / u_acc
            for pc in pieces:
                pc["u0"] *= scale
                pc["rise"] *= scale
            self._jarcs.append(pieces)

    def _pull_back(self, j: int, arc):
        """Inverse branch into the j-th cut arc, applied to a sub-arc.

        Arcs are kept in the coordinate u = ccw offset from the marked angle,
        u in [0, 2 pi].
        """
        pieces = self._jarcs[j]
        lo = pieces[0]["x0"]
        hi = pieces[-1]["x1"]
        out = []
        for u in arc:
            if u <= 0.0:
                out.append(lo)
                continue
            if u >= TAU:
                out.append(hi)
                continue
            out.append(self._invert_piece(pieces, u))
        return tuple(out)

    def _invert_piece(self, pieces, u):
        m = self.m
        pc = pieces[-1]
        for cand in pieces:
            if cand["u0"] <= u <= cand["u0"] + cand["rise"]:
                pc = cand
                break
        t = norm_angle(self.base + u)
        if not m.factor:
            x = pc["map_inv"].boundary_angle(t)
            return pc["x0"] + ccw_span(norm_angle(self.base + pc["x0"]) - 1e-12, x) - 1e-12
        n = m.preset.n
        up_lo = (self.base + pc["x0"]) / n
        up_len = (pc["x1"] - pc["x0"]) / n
        for k in range(n):
            t_up = t / n + TAU * k / n
            x_up = pc["map_inv"].boundary_angle(t_up)
            delta = ccw_span(norm_angle(up_lo) - 1e-12, x_up) - 1e-12
            if -1e-9 <= delta <= up_len + 1e-9:
                return pc["x0"] + n * min(max(delta, 0.0), up_len)
        raise InconsistentDegree("no root lift lands in the branch piece")

    def value(self, theta: float, depth: int, tol: float | None = None):
        """h(theta) as (angle, radius): midpoint and half-width of the arc."""
        if depth < 1:
            raise DepthTooSmall("depth must be >= 1")
        if norm_angle(theta) < BREAK_TOL or TAU - norm_angle(theta) < BREAK_TOL:
            return self.base, 0.0  # normalization: the fixed point 1 maps to the marked angle
        itin = power_map_itinerary(theta, self.d, depth)
        arc = (0.0, TAU)
        for sym in reversed(itin.symbols):
            arc = self._pull_back(sym, arc)
        width = arc[1] - arc[0]
        if tol is not None and width > 2 * tol:
            raise DepthTooSmall(f"arc width {width:.3e} exceeds tolerance")
        mid = norm_angle(self.base + 0.5 * (arc[0] + arc[1]))
        return mid, 0.5 * width


def conjugacy_h(m: BowenSeriesMap, theta: float, depth: int, tol: float | None = None):
    """One-shot h(theta); prefer ConjugacyH for repeated evaluation."""
    return ConjugacyH(m).value(theta, depth, tol)


# -- tiles ---------------------------------------------------------------------

MAX_RANK = 8


@dataclass(frozen=True)
class Tile:
    word: tuple          # pocket labels (r, s), innermost branch first
    map: MobiusMap       # the inverse-branch composition applied to Pi
    vertices: tuple      # image vertices (complex), unfactored


def _tile_children(m: BowenSeriesMap, tile: Tile, tol: float = 1e-9):
    """Valid one-step inverse branches of a tile."""
    out = []
    for pk in m.pockets.entries:
        # branch g_{r,s}^{-1} pulls targets contained in the complement of
        # the open pocket (r, sigma(s))
        tgt = m.pockets.entries[m.preset.side_index(pk.r, m.preset.sigma[pk.s])]
        if all(tgt.geodesic.side(v) >= -tol for v in tile.vertices):
            inv = pk.map.inverse()
            g = inv.compose(tile.map)
            verts = tuple(inv(v) for v in tile.vertices)
            out.append(Tile(((pk.r, pk.s),) + tile.word, g, verts))
    return out


def tiles(m: BowenSeriesMap, rank: int):
    """Rank-k tiles as inverse-branch images of the fundamental polygon.

    Returned per rank as words in the pocket alphabet with vertex lists; for
    factor maps the tiles are the z -> z^n projections, with the n-fold
    M_w-orbit redundancy removed.
    """
    if rank < 0 or rank > MAX_RANK:
        raise RankLimit(f"rank {rank} outside [0, {MAX_RANK}]")
    base = Tile((), MobiusMap.identity(),
                tuple(cmath.exp(1j * t) for t in m.preset.polygon.vertices))
    levels = [[base]]
    for _ in range(rank):
        nxt = []
        for t in levels[-1]:
            nxt.extend(_tile_children(m, t))
        nxt.sort(key=lambda t: t.word)
        levels.append(nxt)
    if not m.factor:
        return levels
    return [_project_tiles(m, lvl) for lvl in levels]


def _project_tiles(m: BowenSeriesMap, level):
    n = m.preset.n
    seen = {}
    for t in level:
        key = tuple(sorted(round(norm_angle(cmath.phase(v ** n)), 6) for v in t.vertices))
        if key not in seen:
            seen[key] = t
    return [seen[k] for k in sorted(seen)]


def tile_counts(m: BowenSeriesMap, rank: int):
    return [len(lvl) for lvl in tiles(m, rank)]
