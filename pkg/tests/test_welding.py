import random

import pytest

import weldlab.mating_schema as ms
import weldlab.welding as wl
from weldlab.errors import CrosscheckFailed, ZipNotSphere


def surface_of(name):
    slots, contact, _ = ms.paper_example(name)
    bc = ms.assemble(slots, contact)
    wc = wl.weld(bc)
    return bc, wc, wl.surface_report(wc)


# -- golden table --------------------------------------------------------------

GOLDEN = {
    "5.1": dict(comps=4, genera=[0, 0, 0, 0], zipped=2),
    "5.2": dict(comps=2, genera=[0, 0], zipped=1),
    "5.3": dict(comps=1, genera=[0], zipped=1),
    "5.4": dict(comps=1, genera=[1], zipped=1),
    "5.5": dict(comps=1, genera=[2], zipped=1),
    "final": dict(comps=1, genera=[2], zipped=1),
}


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_golden_topology(name):
    bc, wc, sr = surface_of(name)
    want = GOLDEN[name]
    assert len(sr.components) == want["comps"]
    assert sorted(c.genus for c in sr.components) == sorted(want["genera"])
    assert len(sr.zipped) == want["zipped"]
    for z in sr.zipped:
        assert z["euler_characteristic"] == 2


def test_example_5_1_structure():
    bc, wc, sr = surface_of("5.1")
    g = sr.welding_graph
    assert len(g.vertices()) == 8
    assert len(g.components()) == 4
    # eta pairs the four spheres in two 2-cycles
    assert all(not c.eta_invariant for c in sr.components)
    comps = [frozenset(c.faces) for c in sr.components]
    for c in sr.components:
        img = frozenset((fi, -cp) for (fi, cp) in c.faces)
        assert img in comps and img != frozenset(c.faces)


def test_example_5_2_eta_transitive():
    bc, wc, sr = surface_of("5.2")
    assert all(not c.eta_invariant for c in sr.components)
    assert len(sr.zipped) == 1


def test_example_5_3_two_fixed_points():
    bc, wc, sr = surface_of("5.3")
    c = sr.components[0]
    assert c.eta_invariant and c.fix_eta == 2 and c.genus == 0


def test_example_5_4_torus():
    bc, wc, sr = surface_of("5.4")
    c = sr.components[0]
    assert c.euler_characteristic == 0
    assert c.genus == 1
    assert c.fix_eta == 4
    assert bc.order2_total() == 3


def test_example_5_5_genus_two():
    bc, wc, sr = surface_of("5.5")
    c = sr.components[0]
    assert c.euler_characteristic == -2 and c.genus == 2 and c.fix_eta == 6


def test_final_example_genus_two():
    bc, wc, sr = surface_of("final")
    assert sr.components[0].genus == 2


def test_single_disk_doubles_to_sphere():
    # one Case II hole, no identifications: doubling a disk gives a sphere
    slots = (ms.group_slot(1, 4, ms.CASE_II, unbounded=True),)
    bc = ms.assemble(slots, ms.ContactData(()))
    sr = wl.surface_report(wl.weld(bc))
    assert len(sr.components) == 1
    assert sr.components[0].euler_characteristic == 2
    assert sr.components[0].fix_eta == 2


def test_single_odd_hole_doubles_to_sphere():
    # Case I odd p: the fixed corner and the side midpoint give Fix(eta) = 2
    slots = (ms.group_slot(1, 5, unbounded=True),)
    bc = ms.assemble(slots, ms.ContactData(()))
    sr = wl.surface_report(wl.weld(bc))
    c = sr.components[0]
    assert c.euler_characteristic == 2 and c.genus == 0 and c.fix_eta == 2


def test_weld_guards_malformed_involution():
    import copy
    from weldlab.errors import GluingInconsistency
    bc = ms.assemble(*ms.paper_example("5.4")[:2])
    bad = copy.deepcopy(bc)
    k = next(iter(bad.s_action))
    bad.s_action[k] = k
    with pytest.raises(GluingInconsistency):
        wl.weld(bad)


@pytest.mark.parametrize("n", range(3, 11))
def test_newton_genus_law(n):
    slots, contact = ms.newton_schema(n)
    bc = ms.assemble(slots, contact)
    sr = wl.surface_report(wl.weld(bc))
    want = n // 2 - 1 if n % 2 == 0 else (n - 1) // 2
    assert len(sr.components) == 1
    assert sr.components[0].genus == want
    # Fix(eta): n interior fixed points plus the parity contribution of the
    # singular wedge class
    assert sr.components[0].fix_eta == n + (1 if n % 2 else 0)
    wl.genus_crosscheck(sr, bc)


# -- lemma checks --------------------------------------------------------------

def fixtures_and_sweep(count=100, seed=20260809):
    rng = random.Random(seed)
    for name in ms.PAPER_EXAMPLES:
        slots, contact, _ = ms.paper_example(name)
        yield ms.assemble(slots, contact)
    for n in range(3, 8):
        slots, contact = ms.newton_schema(n)
        yield ms.assemble(slots, contact)
    for _ in range(count):
        slots, contact = ms.random_schema(rng)
        yield ms.assemble(slots, contact)


def test_lemma_4_6_edge_symmetry():
    for bc in fixtures_and_sweep():
        assert wl.welding_graph(bc).symmetry_holds()


def test_lemma_4_7_component_bijection():
    for bc in fixtures_and_sweep():
        wc = wl.weld(bc)
        g = wl.welding_graph(bc)
        assert len(g.components()) == len(wc.components)


def test_lemma_4_8_four_way():
    for bc in fixtures_and_sweep():
        wc = wl.weld(bc)
        sr = wl.surface_report(wc)  # raises CrosscheckFailed on mismatch
        for c in sr.components:
            minus = {fi for (fi, cp) in c.faces if cp == -1}
            plus = {fi for (fi, cp) in c.faces if cp == +1}
            graph_inv = minus == plus
            weak_inv = bool(minus & plus)
            assert graph_inv == weak_inv == c.eta_invariant


def test_zipped_spheres_everywhere():
    for bc in fixtures_and_sweep():
        for z in wl.zipped_report(bc):
            assert z["euler_characteristic"] == 2


def test_cor_4_14_sweep():
    for bc in fixtures_and_sweep():
        sr = wl.surface_report(wl.weld(bc))
        if sr.connected() and bc.order2_total() >= 3:
            assert sr.components[0].genus >= 1


def test_theorem_4_10_2():
    for bc in fixtures_and_sweep(count=60):
        sr = wl.surface_report(wl.weld(bc))
        for c in sr.components:
            if c.eta_invariant:
                assert c.fix_eta >= 2 and c.fix_eta % 2 == 0
                assert c.euler_characteristic == 2 - (c.fix_eta - 2)
        chis = {}
        for c in sr.components:
            if not c.eta_invariant:
                key = frozenset(fi for (fi, _) in c.faces)
                chis.setdefault(key, set()).add(c.euler_characteristic)
        for vals in chis.values():
            assert len(vals) == 1


def test_euler_additivity():
    for bc in fixtures_and_sweep(count=60):
        assert wl.euler_additivity_check(wl.weld(bc))


def test_genus_crosscheck_errors():
    bc = ms.assemble(*ms.paper_example("5.1")[:2])
    sr = wl.surface_report(wl.weld(bc))
    with pytest.raises(CrosscheckFailed):
        wl.genus_crosscheck(sr, bc)  # disconnected


def test_eta_fixed_vertices_match_prop_4_11():
    # two independent genus computations on every connected fixture
    for name in ms.PAPER_EXAMPLES:
        slots, contact, _ = ms.paper_example(name)
        bc = ms.assemble(slots, contact)
        sr = wl.surface_report(wl.weld(bc))
        if sr.connected():
            c = sr.components[0]
            assert (c.fix_eta - 2) // 2 == c.genus == (2 - c.euler_characteristic) // 2
