"""Double-precision arithmetic for the unit-disk model.

Möbius and anti-Möbius maps are stored as normalized 2x2 complex matrices,
boundary points as angles in [0, 2pi), geodesics by their ideal endpoints
with a derived Euclidean center/radius (or a diameter flag).  Everything is
immutable after construction.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .errors import CoincidentEndpoints, DegenerateInput, NotDisjoint

TAU = 2.0 * math.pi

#: default geometric tolerance; double precision leaves ~6 digits of headroom
#: for composed operations.
DEFAULT_TOL = 1e-9


def norm_angle(theta: float) -> float:
    """Reduce an angle to [0, 2pi)."""
    t = math.fmod(theta, TAU)
    if t < 0.0:
        t += TAU
    if t >= TAU:  # fmod edge case
        t -= TAU
    return t


def angle_dist(a: float, b: float) -> float:
    """Shortest angular distance between two angles."""
    d = abs(norm_angle(a) - norm_angle(b))
    return min(d, TAU - d)


def ccw_span(a: float, b: float) -> float:
    """Length of the counterclockwise arc from a to b, in (0, 2pi]."""
    s = norm_angle(b) - norm_angle(a)
    if s <= 0.0:
        s += TAU
    return s


def angle_in_open_arc(theta: float, lo: float, hi: float, tol: float = 0.0) -> bool:
    """Is theta inside the open ccw arc from lo to hi (with margin tol)?"""
    s = ccw_span(lo, theta)
    return tol < s < ccw_span(lo, hi) - tol


def _canonical_sign(a: complex, b: complex, c: complex, d: complex):
    # first nonzero entry gets argument in (-pi/2, pi/2]; makes map equality
    # testable by plain matrix comparison up to the projective +-1 ambiguity
    for z in (a, b, c, d):
        if abs(z) > 1e-14:
            w = z
            break
    else:
        raise ValueError("zero matrix")
    if w.real < 0 or (abs(w.real) <= 1e-14 and w.imag < 0):
        return -a, -b, -c, -d
    return a, b, c, d


@dataclass(frozen=True)
class MobiusMap:
    """z -> (az + b)/(cz + d), normalized to determinant 1."""

    a: complex
    b: complex
    c: complex
    d: complex

    @staticmethod
    def from_entries(a, b, c, d) -> "MobiusMap":
        det = a * d - b * c
        if abs(det) < 1e-20:
            raise ValueError("singular matrix")
        s = cmath.sqrt(det)
        a, b, c, d = _canonical_sign(a / s, b / s, c / s, d / s)
        return MobiusMap(a, b, c, d)

    @staticmethod
    def identity() -> "MobiusMap":
        return MobiusMap(1.0 + 0j, 0j, 0j, 1.0 + 0j)

    @staticmethod
    def rotation(theta: float) -> "MobiusMap":
        """Rotation of the disk about 0 by angle theta."""
        h = cmath.exp(0.5j * theta)
        return MobiusMap.from_entries(h, 0j, 0j, 1.0 / h)

    def __call__(self, z: complex) -> complex:
        den = self.c * z + self.d
        if abs(den) < 1e-300:
            return complex("inf")
        return (self.a * z + self.b) / den

    def boundary_angle(self, theta: float) -> float:
        """Image angle of a unit-modulus point (for disk-preserving maps)."""
        w = self(cmath.exp(1j * theta))
        return norm_angle(cmath.phase(w))

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        """self after other (matrix product, renormalized)."""
        a = self.a * other.a + self.b * other.c
        b = self.a * other.b + self.b * other.d
        c = self.c * other.a + self.d * other.c
        d = self.c * other.b + self.d * other.d
        return MobiusMap.from_entries(a, b, c, d)

    __matmul__ = compose

    def inverse(self) -> "MobiusMap":
        return MobiusMap.from_entries(self.d, -self.b, -self.c, self.a)

    @property
    def trace(self) -> complex:
        return self.a + self.d

    def det_residual(self) -> float:
        return abs(self.a * self.d - self.b * self.c - 1.0)

    def su11_residual(self) -> float:
        """Distance from SU(1,1) form (d = conj a, c = conj b) up to +-1."""
        r1 = abs(self.d - self.a.conjugate()) + abs(self.c - self.b.conjugate())
        r2 = abs(self.d + self.a.conjugate()) + abs(self.c + self.b.conjugate())
        return min(r1, r2)

    def is_identity(self, tol: float = DEFAULT_TOL) -> bool:
        return self.dist(MobiusMap.identity()) < tol

    def dist(self, other: "MobiusMap") -> float:
        """Projective matrix distance (minimum over the +-1 ambiguity)."""
        dp = (abs(self.a - other.a) + abs(self.b - other.b)
              + abs(self.c - other.c) + abs(self.d - other.d))
        dm = (abs(self.a + other.a) + abs(self.b + other.b)
              + abs(self.c + other.c) + abs(self.d + other.d))
        return min(dp, dm)

    def power(self, k: int) -> "MobiusMap":
        if k < 0:
            return self.inverse().power(-k)
        out = MobiusMap.identity()
        for _ in range(k):
            out = self.compose(out)
        return out

    def order(self, max_order: int = 64, tol: float = DEFAULT_TOL):
        """Smallest k >= 1 with self^k = id, or None if none up to max_order.

        Finite-order disk maps are elliptic and stay bounded; once entries
        grow the element is parabolic/hyperbolic and the search stops.
        """
        g = self
        for k in range(1, max_order + 1):
            if g.is_identity(tol):
                return k
            if max(abs(g.a), abs(g.b), abs(g.c), abs(g.d)) > 1e6:
                return None
            g = self.compose(g)
        return None

@dataclass(frozen=True)
class AntiMobiusMap:
    """z -> m(conj z) for a Möbius map m."""

    m: MobiusMap

    def __call__(self, z: complex) -> complex:
        return self.m(z.conjugate())

    def compose_anti(self, other: "AntiMobiusMap") -> MobiusMap:
        """self after other; two anti maps compose to a Möbius map."""
        om = other.m
        conj_other = MobiusMap.from_entries(om.a.conjugate(), om.b.conjugate(),
                                            om.c.conjugate(), om.d.conjugate())
        return self.m.compose(conj_other)


@dataclass(frozen=True)
class Geodesic:
    """Bi-infinite geodesic with ideal endpoints theta1, theta2.

    Non-diameter geodesics carry the center/radius of the Euclidean circle
    orthogonal to the unit circle; antipodal endpoints get the dedicated
    diameter representation to avoid the infinite-radius blowup.
    """

    theta1: float
    theta2: float
    is_diameter: bool
    center: complex = field(default=0j)
    radius: float = field(default=0.0)

    @property
    def endpoints(self):
        return (cmath.exp(1j * self.theta1), cmath.exp(1j * self.theta2))

    def point_at(self, t: float) -> complex:
        """Point on the geodesic; t in (0,1) runs endpoint 1 -> endpoint 2."""
        z1, z2 = self.endpoints
        if self.is_diameter:
            return (1.0 - t) * z1 + t * z2
        # sweep along the Euclidean circle between the endpoint directions,
        # through the arc inside the disk
        a1 = cmath.phase(z1 - self.center)
        a2 = cmath.phase(z2 - self.center)
        d = a2 - a1
        while d > math.pi:
            d -= TAU
        while d < -math.pi:
            d += TAU
        return self.center + self.radius * cmath.exp(1j * (a1 + t * d))

    def membership_residual(self, z: complex) -> float:
        if self.is_diameter:
            direction = cmath.exp(1j * self.theta1)
            return abs((z * direction.conjugate()).imag)
        return abs(abs(z - self.center) - self.radius)

    def side(self, z: complex) -> float:
        """Signed separation: > 0 on the center-of-disk side, < 0 beyond."""
        if self.is_diameter:
            # sign alone is meaningless for a diameter (0 is on it)
            direction = cmath.exp(1j * self.theta1)
            return (z * direction.conjugate()).imag
        return abs(z - self.center) - self.radius

    def orthogonality_residual(self) -> float:
        if self.is_diameter:
            return 0.0
        return abs(abs(self.center) ** 2 - self.radius ** 2 - 1.0)


def geodesic_between(theta1: float, theta2: float, tol: float = 1e-12) -> Geodesic:
    """Geodesic with the given ideal endpoints."""
    t1, t2 = norm_angle(theta1), norm_angle(theta2)
    if angle_dist(t1, t2) < tol:
        raise CoincidentEndpoints(f"endpoints {t1} and {t2} coincide")
    z1, z2 = cmath.exp(1j * t1), cmath.exp(1j * t2)
    if abs(z1 + z2) < tol:
        return Geodesic(t1, t2, True)
    denom = 1.0 + (z1 * z2.conjugate()).real
    center = (z1 + z2) / denom
    radius = math.sqrt(abs(center) ** 2 - 1.0)
    return Geodesic(t1, t2, False, center, radius)


def reflect(g: Geodesic) -> AntiMobiusMap:
    """Anti-Möbius inversion fixing g pointwise and preserving the disk."""
    if g.is_diameter:
        # reflection in the line at angle t: z -> exp(2it) conj(z)
        rot = cmath.exp(2j * g.theta1)
        m = MobiusMap.from_entries(rot, 0j, 0j, 1.0 + 0j)
        return AntiMobiusMap(m)
    c, r = g.center, g.radius
    # inversion z -> c + r^2/conj(z - c); with |c|^2 = r^2 + 1 the associated
    # matrix [[c, -1], [1, -conj(c)]] has determinant -r^2
    m = MobiusMap.from_entries(c, -1.0 + 0j, 1.0 + 0j, -c.conjugate())
    return AntiMobiusMap(m)


def compose(f: MobiusMap, g: MobiusMap) -> MobiusMap:
    """Matrix product f∘g, renormalized to determinant 1."""
    return f.compose(g)


def pairing_from_reflections(axis: Geodesic, side: Geodesic) -> MobiusMap:
    """Reflection along `side` followed by reflection along `axis`."""
    return reflect(axis).compose_anti(reflect(side))


def common_perpendicular(g1: Geodesic, g2: Geodesic, tol: float = DEFAULT_TOL) -> Geodesic:
    """The unique geodesic orthogonal to two disjoint geodesics.

    A circle (q, rho) orthogonal to the unit circle satisfies |q|^2 = rho^2+1;
    orthogonality to a geodesic circle (c, r) with |c|^2 = r^2+1 reduces to
    the linear condition <q, c> = 1, and orthogonality to a diameter means q
    lies on its line.  Intersecting the two linear conditions gives q.
    """
    rows = []
    rhs = []
    for g in (g1, g2):
        if g.is_diameter:
            n = 1j * cmath.exp(1j * g.theta1)  # normal of the diameter line
            rows.append((n.real, n.imag))
            rhs.append(0.0)
        else:
            rows.append((g.center.real, g.center.imag))
            rhs.append(1.0)
    det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if abs(det) < 1e-13:
        # parallel constraints: the perpendicular is a diameter (or fails)
        return _diameter_perpendicular(g1, g2, tol)
    qx = (rhs[0] * rows[1][1] - rhs[1] * rows[0][1]) / det
    qy = (rows[0][0] * rhs[1] - rows[1][0] * rhs[0]) / det
    q = complex(qx, qy)
    rho_sq = abs(q) ** 2 - 1.0
    if rho_sq <= tol:
        raise NotDisjoint("geodesics cross or share an endpoint")
    # endpoints: unit vectors z with <z, q> = 1
    half = math.acos(max(-1.0, min(1.0, 1.0 / abs(q))))
    base = cmath.phase(q)
    perp = geodesic_between(base - half, base + half)
    _check_perpendicular(perp, g1, g2, tol)
    return perp


def _diameter_perpendicular(g1: Geodesic, g2: Geodesic, tol: float) -> Geodesic:
    # a diameter is orthogonal to (c, r) iff its line passes through c
    cands = []
    for g in (g1, g2):
        if g.is_diameter:
            cands.append(norm_angle(g.theta1 + 0.5 * math.pi))
        else:
            cands.append(cmath.phase(g.center))
    a0 = cands[0]
    for a in cands[1:]:
        if min(angle_dist(a0, a), angle_dist(a0, a + math.pi)) > 1e-7:
            raise NotDisjoint("no common perpendicular exists")
    perp = geodesic_between(a0, a0 + math.pi)
    _check_perpendicular(perp, g1, g2, tol)
    return perp


def perpendicularity_residual(a: Geodesic, b: Geodesic) -> float:
    """0 iff the geodesics meet at a right angle."""
    if a.is_diameter and b.is_diameter:
        d = angle_dist(a.theta1, b.theta1)
        return abs(min(d, abs(math.pi - d)) - 0.5 * math.pi)
    if a.is_diameter or b.is_diameter:
        diam, circ = (a, b) if a.is_diameter else (b, a)
        n = 1j * cmath.exp(1j * diam.theta1)
        return abs((circ.center * n.conjugate()).real)
    return abs(abs(a.center - b.center) ** 2 - (a.radius ** 2 + b.radius ** 2))


def _check_perpendicular(perp: Geodesic, g1: Geodesic, g2: Geodesic, tol: float):
    res = max(perpendicularity_residual(perp, g1), perpendicularity_residual(perp, g2))
    if res > max(tol, 1e-8):
        raise NotDisjoint(f"perpendicularity residual {res:.2e}")


@dataclass(frozen=True)
class IdealPolygon:
    """Ideal polygon given by cyclically ordered boundary angles."""

    vertices: tuple
    sides: tuple

    def __len__(self):
        return len(self.vertices)


def ideal_polygon(vertex_angles) -> IdealPolygon:
    vs = tuple(norm_angle(t) for t in vertex_angles)
    k = len(vs)
    if k < 2:
        raise DegenerateInput("need at least 2 vertices")
    sides = tuple(geodesic_between(vs[i], vs[(i + 1) % k]) for i in range(k))
    return IdealPolygon(vs, sides)


def regular_ideal_polygon(n: int, p: int) -> IdealPolygon:
    """Regular ideal np-gon with vertices at exp(2 pi i k/(np)).

    Side k (0-based) joins vertex k to vertex k+1; in (r, s) indexing it is
    the side C_{r,s} with k = (r-1) p + (s-1).
    """
    if n < 1 or p < 1 or n * p < 2:
        raise DegenerateInput(f"np = {n * p} < 2")
    m = n * p
    return ideal_polygon(TAU * k / m for k in range(m))
