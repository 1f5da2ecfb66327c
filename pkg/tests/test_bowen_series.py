import cmath
import math
import random

import pytest

import weldlab.bowen_series as bs
from weldlab.errors import AtBreakpoint, OutsideDomain, RankLimit
from weldlab.fuchsian import CASE_I, CASE_II, legal_presets
from weldlab.hyperbolic import TAU, angle_dist, norm_angle

GRID = legal_presets()


def all_maps():
    out = []
    for (n, p, case) in GRID:
        out.append(bs.bowen_series_map(n, p, case))
        if n >= 3:
            out.append(bs.bowen_series_map(n, p, case, factor=True))
    return out


# -- circle evaluation ---------------------------------------------------------

def test_fixed_point_case_i():
    m = bs.bowen_series_map(1, 4)
    assert angle_dist(bs.eval_circle_one_sided(m, m.marked_fixed_angle, +1),
                      m.marked_fixed_angle) < 1e-12


@pytest.mark.parametrize("m", all_maps(), ids=lambda m: m.name)
def test_pocket_arcs_tile_the_circle(m):
    entries = m.pockets.entries
    total = 0.0
    for i, pk in enumerate(entries):
        lo, hi = pk.arc
        total += (hi - lo) % TAU or TAU / len(entries)
        nxt = entries[(i + 1) % len(entries)]
        assert angle_dist(hi % TAU, nxt.arc[0] % TAU) < 1e-12
        # the arc's endpoints are the vertices bounding the side
        assert angle_dist(pk.geodesic.theta1, lo % TAU) < 1e-12
        assert angle_dist(pk.geodesic.theta2, hi % TAU) < 1e-12
    assert abs(total - TAU) < 1e-9


def test_breakpoint_raises():
    m = bs.bowen_series_map(1, 4)
    with pytest.raises(AtBreakpoint):
        bs.eval_circle(m, math.pi / 2)


def test_factor_continuity_at_discontinuity():
    # the one-sided limits of the factor map agree at the projected cusp
    m = bs.bowen_series_map(3, 1, factor=True)
    lo = bs.eval_circle_one_sided(m, 0.0, -1)
    hi = bs.eval_circle_one_sided(m, 0.0, +1)
    assert angle_dist(lo, hi) < 1e-9


def test_unfactored_jump_in_rotation_orbit():
    m = bs.bowen_series_map(3, 1)
    lo = bs.eval_circle_raw_one_sided(m, 0.0, -1)
    hi = bs.eval_circle_raw_one_sided(m, 0.0, +1)
    assert angle_dist(lo, hi) > 0.1
    assert min(abs(((lo - hi) % TAU) - TAU * k / 3) for k in range(3)) < 1e-9


@pytest.mark.parametrize("n,p", [(3, 1), (4, 1), (5, 1), (3, 2)])
def test_factor_well_defined_across_lifts(n, p):
    m = bs.bowen_series_map(n, p, factor=True)
    rng = random.Random(42)
    for _ in range(50):
        th = rng.uniform(1e-3, TAU - 1e-3)
        vals = [bs.eval_circle(m, th, lift=k) for k in range(n)]
        assert max(angle_dist(vals[0], v) for v in vals) < 1e-9


@pytest.mark.parametrize("n,p", [(3, 1), (4, 1), (3, 2)])
def test_equivariance(n, p):
    # A o M_w = M_w o A on the circle
    m = bs.bowen_series_map(n, p)
    rng = random.Random(7)
    rot = TAU / n
    for _ in range(50):
        th = rng.uniform(0, TAU)
        try:
            a = bs.eval_circle_raw(m, norm_angle(th + rot))
            b = norm_angle(bs.eval_circle_raw(m, th) + rot)
        except AtBreakpoint:
            continue
        assert angle_dist(a, b) < 1e-9


# -- degrees ----------------------------------------------------------------------

def test_degrees_examples():
    assert bs.circle_degree(bs.bowen_series_map(1, 4)) == 3
    assert bs.circle_degree(bs.bowen_series_map(3, 1, factor=True)) == 2
    assert bs.circle_degree(bs.bowen_series_map(5, 1, factor=True)) == 4


@pytest.mark.parametrize("m", all_maps(), ids=lambda m: m.name)
def test_degree_is_np_minus_one(m):
    assert bs.circle_degree(m) == m.preset.n * m.preset.p - 1


def test_preimage_count_oracle():
    # grid-crossing brute force agrees with the interval-arithmetic count
    m = bs.bowen_series_map(1, 4)
    y = 1.2345
    grid = 4096
    vals = []
    for i in range(grid):
        t = TAU * (i + 0.5) / grid
        vals.append(bs._eval_circle_safe(m, t))
    crossings = 0
    for i in range(grid):
        a = vals[i]
        b = vals[(i + 1) % grid]
        d1 = (y - a) % TAU
        d2 = (b - a) % TAU
        if 0 < d1 < d2 < math.pi:
            crossings += 1
    assert crossings == bs.count_preimages(m, y) == 3


# -- disk action --------------------------------------------------------------------

@pytest.mark.parametrize("m", all_maps(), ids=lambda m: m.name)
def test_inner_boundary_involution(m):
    rng = random.Random(3)
    pockets = m.pockets.entries
    for _ in range(40):
        pk = pockets[rng.randrange(len(pockets))]
        z = pk.geodesic.point_at(rng.uniform(0.15, 0.85))
        if m.factor:
            z = z ** m.preset.n
        w = bs.eval_pocket(m, z)
        assert abs(bs.eval_pocket(m, w) - z) < 1e-8


def test_pocket_image_on_paired_geodesic():
    m = bs.bowen_series_map(1, 4)
    pk = m.pockets.entries[0]
    z = pk.geodesic.point_at(0.3)
    w = bs.eval_pocket(m, z)
    dst = m.pockets.entries[m.preset.sigma[1] - 1].geodesic
    assert dst.membership_residual(w) < 1e-8


def test_polygon_interior_rejected():
    m = bs.bowen_series_map(1, 4)
    with pytest.raises(OutsideDomain):
        bs.eval_pocket(m, 0j)


def test_factor_critical_structure():
    # local degree n at each preimage of the critical value 0
    for n in (3, 4):
        m = bs.bowen_series_map(n, 1, factor=True)
        g = m.preset.first_sector[0]
        u_c = g(0j)             # critical point upstairs (maps to 0)
        w_c = u_c ** n          # downstairs critical point
        r = 1e-3
        winding = 0.0
        prev = None
        for i in range(257):
            z = w_c + r * cmath.exp(1j * TAU * i / 256)
            img = bs.eval_pocket(m, z)
            ang = cmath.phase(img)
            if prev is not None:
                d = (ang - prev + math.pi) % TAU - math.pi
                winding += d
            prev = ang
        assert round(winding / TAU) == n


# -- Markov partitions ------------------------------------------------------------

def test_markov_1_4():
    part = bs.markov_partition(bs.bowen_series_map(1, 4))
    assert len(part.breakpoints) == 4
    for row in part.transition:
        assert sum(row) == 3
        assert sorted(row) == [0, 1, 1, 1]


@pytest.mark.parametrize("m", all_maps(), ids=lambda m: m.name)
def test_markov_row_sums(m):
    part = bs.markov_partition(m)
    d = m.preset.n * m.preset.p - 1
    for row in part.transition:
        assert sum(row) == d


def test_markov_factor_3_1():
    part = bs.markov_partition(bs.bowen_series_map(3, 1, factor=True))
    assert part.transition == ((2,),)


# -- conjugacy -----------------------------------------------------------------------

def test_h_normalization():
    m = bs.bowen_series_map(1, 4)
    h = bs.ConjugacyH(m)
    val, rad = h.value(0.0, 6)
    assert val == m.marked_fixed_angle and rad == 0.0


def test_h_cut_count_matches_degree():
    # h exists for the continuous maps: n = 1 in either case, or factor maps
    for m in all_maps():
        if m.preset.n >= 3 and not m.factor:
            continue
        h = bs.ConjugacyH(m)
        assert len(h.cuts) == bs.circle_degree(m)


def test_h_rejects_discontinuous_map():
    from weldlab.errors import InconsistentDegree
    with pytest.raises(InconsistentDegree):
        bs.ConjugacyH(bs.bowen_series_map(3, 1))


@pytest.mark.parametrize("n,p,case,factor", [(1, 4, CASE_I, False),
                                             (3, 1, CASE_I, True),
                                             (1, 4, CASE_II, False)])
def test_h_functional_equation_improves(n, p, case, factor):
    m = bs.bowen_series_map(n, p, case, factor=factor)
    h = bs.ConjugacyH(m)
    d = h.d
    rng = random.Random(11)
    sups = {6: 0.0, 12: 0.0}
    for _ in range(200):
        th = rng.uniform(1e-4, TAU - 1e-4)
        for depth in sups:
            hv, _ = h.value(th, depth)
            hd, _ = h.value(norm_angle(d * th), depth)
            res = angle_dist(hd, bs._eval_circle_safe(m, hv))
            sups[depth] = max(sups[depth], res)
    assert sups[12] < sups[6]


def test_h_monotone():
    m = bs.bowen_series_map(1, 4)
    h = bs.ConjugacyH(m)
    rng = random.Random(13)
    thetas = sorted(rng.uniform(0, TAU) for _ in range(300))
    vals = [h.value(t, 10)[0] for t in thetas]
    shift = vals.index(min(vals))
    rot = vals[shift:] + vals[:shift]
    assert all(rot[i] <= rot[i + 1] for i in range(len(rot) - 1))


def test_h_pull_back_inverts_forward():
    for m in (bs.bowen_series_map(1, 4), bs.bowen_series_map(3, 1, factor=True),
              bs.bowen_series_map(1, 4, CASE_II)):
        h = bs.ConjugacyH(m)
        rng = random.Random(5)
        from weldlab.hyperbolic import ccw_span
        for _ in range(60):
            u = rng.uniform(1e-6, TAU - 1e-6)
            j = rng.randrange(h.d)
            x = h._pull_back(j, (u,))[0]
            fwd = bs._eval_circle_safe(m, norm_angle(h.base + x))
            assert abs(ccw_span(h.base, fwd) - u) < 1e-6


# -- tiles ------------------------------------------------------------------------

def test_tile_counts():
    assert bs.tile_counts(bs.bowen_series_map(1, 4), 3) == [1, 4, 12, 36]
    assert bs.tile_counts(bs.bowen_series_map(3, 1), 3) == [1, 3, 6, 12]
    assert bs.tile_counts(bs.bowen_series_map(3, 1, factor=True), 3) == [1, 1, 2, 4]


def test_tile_branching_matches_degree():
    m = bs.bowen_series_map(1, 4)
    counts = bs.tile_counts(m, 3)
    d = bs.circle_degree(m)
    assert counts[2] == d * counts[1]
    assert counts[3] == d * counts[2]


def test_tile_rank_guard():
    with pytest.raises(RankLimit):
        bs.tiles(bs.bowen_series_map(1, 4), 99)


def test_tiles_disjoint_interiors():
    m = bs.bowen_series_map(1, 4)
    levels = bs.tiles(m, 3)
    all_tiles = [t for lv in levels for t in lv]
    polygon = m.preset.polygon

    def inside(tile, z, tol=1e-9):
        w = tile.map.inverse()(z)
        if abs(w) >= 1:
            return False
        return all(s.side(w) > tol for s in polygon.sides)

    # interior sample of each tile: image of interior points of the polygon
    samples = [0j, 0.2 + 0.1j, -0.15 + 0.2j, 0.1 - 0.25j]
    samples = [z for z in samples if all(s.side(z) > 0 for s in polygon.sides)]
    assert samples
    for i, t1 in enumerate(all_tiles):
        pts = [t1.map(z) for z in samples]
        for j, t2 in enumerate(all_tiles):
            if i == j:
                continue
            assert not any(inside(t2, z) for z in pts)


def test_tile_words_deterministic():
    m = bs.bowen_series_map(1, 4)
    l1 = bs.tiles(m, 2)
    l2 = bs.tiles(m, 2)
    assert [[t.word for t in lv] for lv in l1] == [[t.word for t in lv] for lv in l2]
    for lv in l1:
        assert [t.word for t in lv] == sorted(t.word for t in lv)
