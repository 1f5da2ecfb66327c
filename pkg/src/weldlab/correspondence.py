"""Desk-scale model of the correspondence on the blender surface.

The tiling-set components over a group slot are modeled as D x {1..p}: the
degree-n covering is (w, j) -> w^n and the deck rotation is

    tau(w, j) = (w, j+1)          for j < p,
    tau(w, p) = (exp(2 pi i/n) w, 1),

so tau^{np} = id exactly and every fiber of the covering is a tau-orbit.
Points carry the rotation exponent symbolically, which keeps both identities
tolerance-free.  The involution eta is kept at word/component-permutation
level; the relation orders of the recovered generator words are verified on
the geometric side, where the recovered representation sends the j-th word
to the preset generator g_{1,j} and tau^p to the rotation M_w.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import NotHyperbolic, OverlapDetected, RankLimit, RelationMismatch
from .fuchsian import GroupPreset, build_group, sigma_side
from .hyperbolic import TAU, MobiusMap, norm_angle


# -- model points and maps -----------------------------------------------------

@dataclass(frozen=True)
class ModelPoint:
    """Point of D x {1..p} with the rotation exponent kept symbolic.

    The complex value is w0 * exp(2 pi i e/n); e is an integer mod n so that
    tau^{np} = id holds exactly on representations.
    """

    w0: complex
    e: int
    j: int

    def value(self, n: int) -> complex:
        return self.w0 * cmath.exp(2j * math.pi * (self.e % n) / n)

    def canonical(self, n: int):
        return (self.w0, self.e % n, self.j)


@dataclass(frozen=True)
class ModelMaps:
    n: int
    p: int

    def point(self, w, j=1) -> ModelPoint:
        return ModelPoint(complex(w), 0, j)

    def R(self, pt: ModelPoint) -> complex:
        """The covering (w, j) -> w^n (exponent drops out exactly)."""
        return pt.w0 ** self.n

    def tau(self, pt: ModelPoint) -> ModelPoint:
        if pt.j < self.p:
            return ModelPoint(pt.w0, pt.e, pt.j + 1)
        return ModelPoint(pt.w0, (pt.e + 1) % self.n, 1)

    def tau_inv(self, pt: ModelPoint) -> ModelPoint:
        if pt.j > 1:
            return ModelPoint(pt.w0, pt.e, pt.j - 1)
        return ModelPoint(pt.w0, (pt.e - 1) % self.n, self.p)

    def tau_power(self, pt: ModelPoint, k: int) -> ModelPoint:
        step = self.tau if k >= 0 else self.tau_inv
        for _ in range(abs(k)):
            pt = step(pt)
        return pt


def fiber(m: ModelMaps, pt: ModelPoint):
    """Full covering fiber through pt, as the tau-orbit.

    np points when w != 0 and p points at the critical fiber w = 0.
    """
    seen = {}
    cur = pt
    for _ in range(m.n * m.p):
        key = cur.canonical(m.n) if cur.w0 != 0 else (0j, 0, cur.j)
        if key not in seen:
            seen[key] = cur
        cur = m.tau(cur)
    return list(seen.values())


def fiber_by_roots(m: ModelMaps, pt: ModelPoint):
    """Independent fiber enumeration: all n-th roots of R(pt) in all sheets."""
    target = m.R(pt)
    out = []
    if target == 0:
        return [ModelPoint(0j, 0, j) for j in range(1, m.p + 1)]
    r = abs(target) ** (1.0 / m.n)
    base = cmath.phase(target) / m.n
    for k in range(m.n):
        w = r * cmath.exp(1j * (base + TAU * k / m.n))
        for j in range(1, m.p + 1):
            out.append(ModelPoint(w, 0, j))
    return out


# -- words in eta and tau ---------------------------------------------------------

@dataclass(frozen=True)
class Word:
    """Reduced word in eta and tau: alternating letters, tau powers mod np."""

    letters: tuple          # sequence of ("t", k) and ("e",)

    @staticmethod
    def of(*letters):
        return Word(()).extend(letters)

    def extend(self, letters):
        out = list(self.letters)
        for lt in letters:
            out.append(lt)
            _reduce(out)
        return Word(tuple(out))

    def __mul__(self, other: "Word") -> "Word":
        """self * other = apply other first."""
        return other.extend(self.letters)

    def inverse(self) -> "Word":
        out = []
        for lt in reversed(self.letters):
            out.append(("t", -lt[1]) if lt[0] == "t" else ("e",))
        w = Word(())
        return w.extend(out)

    def is_identity(self):
        return not self.letters

    def __str__(self):
        # letters are stored first-applied-first; print in composition order
        if not self.letters:
            return "1"
        bits = []
        for lt in reversed(self.letters):
            bits.append("eta" if lt[0] == "e" else
                        ("tau" if lt[1] == 1 else f"tau^{lt[1]}"))
        return "*".join(bits)


def _reduce(letters):
    while len(letters) >= 2:
        a, b = letters[-2], letters[-1]
        if a[0] == "t" and b[0] == "t":
            k = a[1] + b[1]
            letters.pop(); letters.pop()
            if k:
                letters.append(("t", k))
            continue
        if a[0] == "e" and b[0] == "e":
            letters.pop(); letters.pop()
            continue
        break


def word_tau(k=1) -> Word:
    return Word.of(("t", k)) if k else Word(())


def word_eta() -> Word:
    return Word.of(("e",))


# -- tiling-set model ---------------------------------------------------------------

@dataclass(frozen=True)
class ModelTilingSet:
    n: int
    p: int
    case: str
    sigma: dict            # side-pairing permutation of {1..p}
    k_exponents: tuple     # k_j, j = 1..p, each in {1..p}

    @property
    def maps(self) -> ModelMaps:
        return ModelMaps(self.n, self.p)


def model_tiling_set(n: int, p: int, case: str = "I") -> ModelTilingSet:
    sig = sigma_side(p, case)
    # f_j = tau^{k_j} o eta stabilizes component j, and eta sends component j
    # to sigma(j); tau steps the component index up by one
    ks = tuple(((j - sig[j] - 1) % p) + 1 for j in range(1, p + 1))
    return ModelTilingSet(n, p, case, sig, ks)


def component_action(m: ModelTilingSet, word: Word, j: int) -> int:
    """Component permutation of a word (eta acts by sigma, tau by +1)."""
    for lt in word.letters:  # stored first-applied-first
        if lt[0] == "e":
            j = m.sigma[j]
        else:
            j = ((j - 1 + lt[1]) % m.p) + 1
    return j


def branch_words(m: ModelTilingSet):
    """Forward branch words tau^k o eta, k = 1..np-1, plus the generator
    identity tau = (tau^2 eta)(tau eta)^{-1}."""
    words = [word_tau(k) * word_eta() for k in range(1, m.n * m.p)]
    t2e = word_tau(2) * word_eta()
    te = word_tau(1) * word_eta()
    identity_ok = (t2e * te.inverse()).letters == word_tau(1).letters
    return words, identity_ok


@dataclass(frozen=True)
class RecoveredGenerator:
    j: int
    k: int
    word: Word
    stabilizes_component_1: bool
    matrix: MobiusMap
    order:  object        # int or None (infinite within the probe bound)


def recover_representation(m: ModelTilingSet, preset: GroupPreset = None):
    """Generator word table of Remark 6.9 with relation-order verification.

    The j-th word tau^{-(j-1)} (tau^{k_j} eta) tau^{j-1} must stabilize
    component 1; its geometric realization is the preset generator g_{1,j}
    (and tau^p realizes M_w), so relation orders are read off the matrices
    and compared with the orbifold signature: sides with sigma(j) = j give
    order-2 words, and tau^p has order exactly n.
    """
    if preset is None:
        preset = build_group(m.n, m.p, m.case)
    table = []
    for j in range(1, m.p + 1):
        f_j = word_tau(m.k_exponents[j - 1]) * word_eta()
        gamma = word_tau(-(j - 1)) * f_j * word_tau(j - 1)
        stab = component_action(m, gamma, 1) == 1
        if not stab:
            raise RelationMismatch(f"word for side {j} moves component 1")
        mat = preset.first_sector[j - 1]
        order = mat.order(max_order=16)
        expect2 = (m.sigma[j] == j)
        if expect2 and order != 2:
            raise RelationMismatch(f"side {j}: expected an order-2 word, got {order}")
        if not expect2 and order is not None and order != 1:
            raise RelationMismatch(f"side {j}: unexpected finite order {order}")
        table.append(RecoveredGenerator(j, m.k_exponents[j - 1], gamma, stab,
                                        mat, order))
    rot_word = word_tau(m.p)
    rot_order = preset.rotation.order(max_order=m.n + 1) if m.n > 1 else 1
    if rot_order != m.n:
        raise RelationMismatch(f"tau^p order {rot_order} != n")
    # eta^2 = 1 at word level and on component indices
    ee = word_eta() * word_eta()
    assert ee.is_identity()
    return {"generators": table, "rotation_word": rot_word, "rotation_order": rot_order}


# -- group tiling (proper discontinuity evidence) --------------------------------------

MAX_WORD_LENGTH = 8


def _pi_hat_contains(preset: GroupPreset, z: complex, shrink: float = 0.0) -> bool:
    """Membership in the fundamental domain of the extended group.

    Pi-hat is the sector 0 <= arg z <= 2 pi/n of the polygon (all of Pi when
    n = 1).  shrink > 0 tests the open interior with a margin.
    """
    if abs(z) >= 1.0 - shrink:
        return False
    if preset.n > 1:
        a = norm_angle(cmath.phase(z)) if abs(z) > 0 else 0.0
        if not (shrink <= a <= TAU / preset.n - shrink):
            return False
    for s in range(1, preset.p + 1):
        if preset.polygon.sides[s - 1].side(z) < shrink:
            return False
    return True


def _pi_hat_samples(preset: GroupPreset, count: int, seed: int = 11):
    """Deterministic interior sample points of Pi-hat (simple LCG rejection)."""
    state = seed
    pts = []
    while len(pts) < count:
        state = (state * 6364136223846793005 + 1442695040888963407) % (1 << 64)
        x = (state >> 11) / float(1 << 53) * 2 - 1
        state = (state * 6364136223846793005 + 1442695040888963407) % (1 << 64)
        y = (state >> 11) / float(1 << 53) * 2 - 1
        z = complex(0.85 * x, 0.85 * y)
        if _pi_hat_contains(preset, z, shrink=1e-6):
            pts.append(z)
    return pts


def group_elements(preset: GroupPreset, max_word_length: int):
    """BFS over the extended group's generators, deduplicated projectively.

    Returns (element, word) pairs in canonical order: breadth-first, ties
    broken lexicographically in the letter alphabet.
    """
    letters = []
    for s in range(1, preset.p + 1):
        g = preset.first_sector[s - 1]
        letters.append((f"g{s}", g))
        if preset.sigma[s] != s:
            letters.append((f"g{s}'", g.inverse()))
    if preset.n > 1:
        letters.append(("m", preset.rotation))
        letters.append(("m'", preset.rotation.inverse()))
    ident = MobiusMap.identity()
    accepted = [((), ident)]
    # rounded keys are only a pre-filter; equality is decided by projective
    # distance (rounding can straddle a representation boundary)
    frontier = [((), ident)]
    for _ in range(max_word_length):
        nxt = []
        for word, mat in frontier:
            for name, gen in letters:
                m2 = gen.compose(mat)
                if all(m2.dist(other) >= 1e-8 for _, other in accepted):
                    entry = (word + (name,), m2)
                    accepted.append(entry)
                    nxt.append(entry)
        frontier = sorted(nxt, key=lambda e: e[0])
    return sorted(accepted, key=lambda e: (len(e[0]), e[0]))


def group_tiling(preset: GroupPreset, max_word_length: int,
                 samples_per_tile: int = 20):
    """Tiles gamma(Pi-hat) for reduced words up to the length bound, with a
    sampled-interior pairwise-disjointness report."""
    if max_word_length > MAX_WORD_LENGTH:
        raise RankLimit(f"word length {max_word_length} > {MAX_WORD_LENGTH}")
    elems = group_elements(preset, max_word_length)
    base_pts = _pi_hat_samples(preset, samples_per_tile)
    tiles = [{"word": w, "map": g} for (w, g) in elems]
    overlaps = 0
    for ti in tiles:
        g = ti["map"]
        pts = [g(z) for z in base_pts]
        for tj in tiles:
            if tj is ti:
                continue
            ginv = tj["map"].inverse()
            for z in pts:
                if _pi_hat_contains(preset, ginv(z), shrink=1e-9):
                    overlaps += 1
                    break
    if overlaps:
        raise OverlapDetected(f"{overlaps} overlapping tile pairs")
    return {"tiles": tiles, "count": len(tiles), "overlaps": 0,
            "samples_per_tile": samples_per_tile}


# -- Blaschke products -----------------------------------------------------------------

@dataclass(frozen=True)
class BlaschkeProduct:
    zeros: tuple
    rotation: complex
    fixed_point: complex
    multiplier: complex

    @property
    def degree(self):
        return len(self.zeros)

    def __call__(self, z: complex) -> complex:
        w = self.rotation
        for a in self.zeros:
            w *= (z - a) / (1.0 - a.conjugate() * z)
        return w

    def derivative(self, z: complex, h: float = 1e-6) -> complex:
        return (self(z + h) - self(z - h)) / (2 * h)


def blaschke(zeros, rotation=1.0 + 0j, max_iter: int = 2000) -> BlaschkeProduct:
    """Construct a hyperbolic Blaschke product; the attracting fixed point is
    located by iteration from 0 (which converges exactly in the hyperbolic
    case and fails loudly otherwise)."""
    zeros = tuple(complex(a) for a in zeros)
    if len(zeros) < 2:
        raise NotHyperbolic("need degree >= 2")
    if any(abs(a) >= 1 for a in zeros):
        raise NotHyperbolic("zeros must lie in the open disk")
    rot = complex(rotation)
    if abs(abs(rot) - 1.0) > 1e-12:
        raise NotHyperbolic("rotation factor must be unimodular")

    def apply(z):
        w = rot
        for a in zeros:
            w *= (z - a) / (1.0 - a.conjugate() * z)
        return w

    z = 0j
    for _ in range(max_iter):
        z2 = apply(z)
        if abs(z2 - z) < 1e-14:
            break
        z = z2
    else:
        raise NotHyperbolic("iteration from 0 did not converge")
    if abs(z) >= 1 - 1e-9:
        raise NotHyperbolic("iteration escaped to the boundary")
    h = 1e-6
    mult = (apply(z + h) - apply(z - h)) / (2 * h)
    if abs(mult) >= 1 - 1e-9:
        raise NotHyperbolic(f"interior fixed point is not attracting (|B'| = {abs(mult):.4f})")
    return BlaschkeProduct(zeros, rot, z, mult)


def blaschke_orbit(b: BlaschkeProduct, z: complex, iterations: int):
    """Forward orbit; in model coordinates this is the forward branch of the
    correspondence on the Blaschke component."""
    out = [complex(z)]
    for _ in range(iterations):
        out.append(b(out[-1]))
    return out


def blaschke_circle_degree(b: BlaschkeProduct, samples: int = 64) -> int:
    """Topological degree of the circle restriction by argument winding."""
    total = 0.0
    prev = cmath.phase(b(cmath.exp(0j)))
    for i in range(1, samples + 1):
        t = TAU * i / samples
        cur = cmath.phase(b(cmath.exp(1j * t)))
        d = (cur - prev) % TAU
        total += d
        prev = cur
    return round(total / TAU)
