import math

import pytest

from weldlab.errors import DegenerateInput, InvalidCase
from weldlab.fuchsian import (CASE_I, CASE_II, build_group, degree_plan,
                              legal_presets, orbifold_signature,
                              poincare_check, side_pairing_check,
                              vertex_cycles)

GRID = legal_presets()


def test_gamma_1_4_pairing():
    g = build_group(1, 4)
    assert g.sigma == {1: 4, 2: 3, 3: 2, 4: 1}
    # g_1 maps endpoints {1, i} onto {-i, 1} as a set
    g1 = g.first_sector[0]
    img = {round(g1(e).real, 9) + 1j * round(g1(e).imag, 9)
           for e in g.side(1, 1).endpoints}
    assert img == {1 + 0j, -0 - 1j} or all(
        min(abs(w - 1), abs(w + 1j)) < 1e-9 for w in img)
    assert side_pairing_check(g)["max_residual"] < 1e-8
    # no order-2 generator
    for s in range(1, 5):
        assert abs(g.first_sector[s - 1].trace) > 1e-3


def test_gamma_3_1_order_two():
    g = build_group(3, 1)
    g1 = g.first_sector[0]
    assert abs(g1.trace) < 1e-9
    assert g1.compose(g1).is_identity()
    # reverses its own side's endpoints
    e1, e2 = g.side(1, 1).endpoints
    assert abs(g1(e1) - e2) < 1e-9 and abs(g1(e2) - e1) < 1e-9


def test_case_ii_order_two_elements():
    g = build_group(1, 4, CASE_II)
    assert g.sigma == {1: 1, 2: 4, 3: 3, 4: 2}
    for s in (1, 3):
        assert abs(g.first_sector[s - 1].trace) < 1e-9
    for s in (2, 4):
        assert abs(g.first_sector[s - 1].trace) > 1e-3


def test_invalid_cases():
    with pytest.raises(InvalidCase):
        build_group(3, 3, CASE_II)   # odd p
    with pytest.raises(InvalidCase):
        build_group(1, 2, CASE_II)   # adjacent sides, no common perpendicular
    with pytest.raises(InvalidCase):
        build_group(3, 4, CASE_II)   # Case II exists only for n = 1
    with pytest.raises(InvalidCase):
        build_group(2, 2)            # n = 2 outside the family
    with pytest.raises(DegenerateInput):
        build_group(1, 1)


@pytest.mark.parametrize("n,p,case", GRID)
def test_grid_pairing(n, p, case):
    assert side_pairing_check(build_group(n, p, case))["max_residual"] < 1e-8


@pytest.mark.parametrize("n,p,case", GRID)
def test_grid_poincare(n, p, case):
    rep = poincare_check(build_group(n, p, case))
    assert rep["rotation_order"] == n
    for c in rep["cycles"]:
        assert c["trace_sq_residual"] < 1e-7


@pytest.mark.parametrize("n,p,case", GRID)
def test_generator_symmetry(n, p, case):
    # the generating set is closed under inversion: g_{sigma(s)} = g_s^{-1}
    g = build_group(n, p, case)
    for s in range(1, p + 1):
        inv = g.first_sector[s - 1].inverse()
        assert inv.dist(g.first_sector[g.sigma[s] - 1]) < 1e-9


@pytest.mark.parametrize("n,p,case", [t for t in GRID if t[0] > 1])
def test_sector_conjugation(n, p, case):
    g = build_group(n, p, case)
    mw = g.rotation
    for r in range(2, n + 1):
        for s in range(1, p + 1):
            lhs = g.generator(r, s)
            rhs = mw.power(r - 1).compose(g.first_sector[s - 1]).compose(
                mw.power(r - 1).inverse())
            assert lhs.dist(rhs) < 1e-9


@pytest.mark.parametrize("n,p,case", [t for t in GRID if t[0] > 1])
def test_extended_group_closure(n, p, case):
    # conjugating any table generator by M_w lands on the table generator of
    # the next sector (index-level statement, wrap included)
    g = build_group(n, p, case)
    mw = g.rotation
    for r in range(1, n + 1):
        for s in range(1, p + 1):
            conj = mw.compose(g.generator(r, s)).compose(mw.inverse())
            r2 = r % n + 1
            assert conj.dist(g.generator(r2, s)) < 1e-9


def test_signatures_examples():
    assert orbifold_signature(build_group(1, 4)) == \
        orbifold_signature(build_group(1, 4), extended=False)
    s = orbifold_signature(build_group(1, 4))
    assert (s.genus, s.punctures, s.cone_orders) == (0, 3, ())
    s = orbifold_signature(build_group(1, 4, CASE_II))
    assert (s.genus, s.punctures, s.cone_orders) == (0, 2, (2, 2))
    s = orbifold_signature(build_group(3, 1))
    assert (s.genus, s.punctures, s.cone_orders) == (0, 1, (2, 3))


@pytest.mark.parametrize("n,p,case", GRID)
def test_signature_class_f(n, p, case):
    s = orbifold_signature(build_group(n, p, case))
    assert s.genus == 0
    assert sum(1 for q in s.cone_orders if q == 2) <= 2
    assert sum(1 for q in s.cone_orders if q >= 3) <= 1


@pytest.mark.parametrize("n,p,case", [t for t in GRID if t[0] > 1])
def test_signature_cover_chi(n, p, case):
    g = build_group(n, p, case)
    ext = orbifold_signature(g, extended=True)
    sub = orbifold_signature(g, extended=False)
    assert abs(sub.chi_orb() - n * ext.chi_orb()) < 1e-12


def test_vertex_cycle_counts_match_punctures():
    # non-extended puncture count = ideal vertex cycles
    for (n, p, case) in GRID:
        g = build_group(n, p, case)
        sig = orbifold_signature(g, extended=False)
        assert sig.punctures == len(vertex_cycles(g))


def test_degree_plans():
    for ms, d, top in [((1, 1), 3, 2), ((1, 2), 4, 3), ((2, 1, 1, 1, 1), 7, 6)]:
        plan = degree_plan(ms)
        assert plan.degree == d and plan.top_multiplicity == top
        assert sum(plan.multiplicities) + plan.top_multiplicity == 2 * d - 2
        assert all(m <= d - 1 for m in plan.multiplicities)
        assert len(plan.multiplicities) + 1 <= d
    with pytest.raises(DegenerateInput):
        degree_plan(())
