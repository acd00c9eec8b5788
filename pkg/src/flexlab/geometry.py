"""Metric kernel for the three constant-curvature planes.

Canonical models: Cartesian coordinates for E^2, the Poincare unit disk for
H^2 (curvature -1), ambient unit vectors for S^2 (curvature +1).  Lobachevsky
coordinates (H^2) and geographic/stereographic coordinates (S^2) are
conversion targets only.  The Lobachevsky axis is fixed as the positive
x-axis diameter through the origin.

All functions are pure; points and geodesics are immutable values.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Sequence

DEFAULT_TOL = 1e-9
MODEL_TOL = 1e-12


class GeometryError(ValueError):
    pass


class KindMismatchError(GeometryError):
    pass


class DomainError(GeometryError):
    pass


class PointAtInfinityError(GeometryError):
    pass


class NoIntersectionError(GeometryError):
    pass


class InfiniteIntersectionError(GeometryError):
    pass


class AmbiguousGeodesicError(GeometryError):
    pass


class GeometryKind(Enum):
    EUCLIDEAN = "euclidean"
    HYPERBOLIC = "hyperbolic"
    SPHERICAL = "spherical"

    @property
    def dim(self) -> int:
        return 3 if self is GeometryKind.SPHERICAL else 2


#: Coordinate models accepted per geometry (first entry is canonical).
MODELS = {
    GeometryKind.EUCLIDEAN: ("cartesian",),
    GeometryKind.HYPERBOLIC: ("poincare", "lobachevsky"),
    GeometryKind.SPHERICAL: ("ambient", "stereographic", "geographic"),
}


@dataclass(frozen=True)
class Point:
    kind: GeometryKind
    coords: tuple

    def __post_init__(self):
        c = tuple(float(x) for x in self.coords)
        object.__setattr__(self, "coords", c)
        if len(c) != self.kind.dim:
            raise DomainError(f"{self.kind.value} point needs {self.kind.dim} coordinates")
        if self.kind is GeometryKind.HYPERBOLIC:
            if c[0] * c[0] + c[1] * c[1] >= 1.0:
                raise DomainError("hyperbolic point on or outside the unit disk")
        elif self.kind is GeometryKind.SPHERICAL:
            n = math.sqrt(sum(x * x for x in c))
            if abs(n - 1.0) > 1e-9:
                raise DomainError("spherical point too far from the unit sphere")
            if abs(n - 1.0) > MODEL_TOL:
                object.__setattr__(self, "coords", tuple(x / n for x in c))

    @property
    def z(self) -> complex:
        """Planar coordinates as a complex number (E^2 and H^2 only)."""
        return complex(self.coords[0], self.coords[1])


def point(kind: GeometryKind, *coords) -> Point:
    if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
        coords = tuple(coords[0])
    return Point(kind, tuple(coords))


def _check_same_kind(*objs):
    kinds = {o.kind for o in objs}
    if len(kinds) != 1:
        raise KindMismatchError(f"mixed geometry kinds: {sorted(k.value for k in kinds)}")


def _dot3(a: Sequence[float], b: Sequence[float]) -> float:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _cross3(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _norm3(a) -> float:
    return math.sqrt(_dot3(a, a))


def _clamp(x: float, lo: float, hi: float) -> float:
    return lo if x < lo else hi if x > hi else x


# ---------------------------------------------------------------------------
# distances


def distance(kind: GeometryKind, p: Point, q: Point) -> float:
    """Geodesic distance; spherical values lie in [0, pi]."""
    if p.kind is not kind or q.kind is not kind:
        raise KindMismatchError("point kind does not match requested geometry")
    if kind is GeometryKind.EUCLIDEAN:
        return abs(p.z - q.z)
    if kind is GeometryKind.HYPERBOLIC:
        pz, qz = p.z, q.z
        den = (1.0 - abs(pz) ** 2) * (1.0 - abs(qz) ** 2)
        arg = 1.0 + 2.0 * abs(pz - qz) ** 2 / den
        return math.acosh(max(arg, 1.0))
    return math.acos(_clamp(_dot3(p.coords, q.coords), -1.0, 1.0))


def rho(kind: GeometryKind, u: float) -> float:
    """Conformal-model radius of the metric circle with cosh r = u (H^2) or
    cos r = u (S^2)."""
    if kind is GeometryKind.HYPERBOLIC:
        if u < 1.0:
            raise DomainError("rho_H needs u >= 1")
        return math.sqrt((u - 1.0) / (u + 1.0))
    if kind is GeometryKind.SPHERICAL:
        if u > 1.0 or u < -1.0:
            raise DomainError("rho_S needs -1 < u <= 1")
        if u == -1.0:
            raise DomainError("rho_S(-1) is infinite")
        return math.sqrt((1.0 - u) / (1.0 + u))
    raise DomainError("rho is defined for H^2 and S^2 only")


def antipode(p: Point) -> Point:
    if p.kind is not GeometryKind.SPHERICAL:
        raise KindMismatchError("antipode is spherical-only")
    return Point(p.kind, tuple(-x for x in p.coords))


# ---------------------------------------------------------------------------
# model conversions


def convert_point(p: Point, target_model: str) -> tuple:
    """Coordinates of p in the target model (tuple of floats)."""
    models = MODELS[p.kind]
    if target_model not in models:
        raise GeometryError(f"unknown model {target_model!r} for {p.kind.value}")
    if p.kind is GeometryKind.EUCLIDEAN:
        return p.coords
    if p.kind is GeometryKind.HYPERBOLIC:
        if target_model == "poincare":
            return p.coords
        x, y = p.coords
        d = 1.0 - x * x - y * y
        X, Y, Z = 2.0 * x / d, 2.0 * y / d, (1.0 + x * x + y * y) / d
        ly = math.asinh(Y)
        lx = math.asinh(X / math.sqrt(1.0 + Y * Y))
        return (lx, ly)
    if target_model == "ambient":
        return p.coords
    x, y, zc = p.coords
    if target_model == "stereographic":
        if abs(zc - 1.0) < MODEL_TOL:
            raise PointAtInfinityError("stereographic image of the north pole")
        return (x / (1.0 - zc), y / (1.0 - zc))
    lat = math.asin(_clamp(zc, -1.0, 1.0))
    lon = math.atan2(y, x)
    return (lon, lat)


def from_model_coords(kind: GeometryKind, model: str, coords: Sequence[float]) -> Point:
    """Build a canonical-model Point from coordinates in any supported model."""
    if model not in MODELS[kind]:
        raise GeometryError(f"unknown model {model!r} for {kind.value}")
    coords = tuple(float(x) for x in coords)
    if kind is GeometryKind.EUCLIDEAN or model in ("cartesian", "poincare", "ambient"):
        return Point(kind, coords)
    if kind is GeometryKind.HYPERBOLIC:  # lobachevsky (x along the fixed axis)
        lx, ly = coords
        X = math.cosh(ly) * math.sinh(lx)
        Y = math.sinh(ly)
        Z = math.cosh(ly) * math.cosh(lx)
        return Point(kind, (X / (1.0 + Z), Y / (1.0 + Z)))
    if model == "stereographic":
        w2 = coords[0] ** 2 + coords[1] ** 2
        return Point(kind, (2.0 * coords[0] / (w2 + 1.0), 2.0 * coords[1] / (w2 + 1.0),
                            (w2 - 1.0) / (w2 + 1.0)))
    lon, lat = coords
    return Point(kind, (math.cos(lon) * math.cos(lat), math.sin(lon) * math.cos(lat),
                        math.sin(lat)))


# ---------------------------------------------------------------------------
# geodesics


@dataclass(frozen=True)
class Geodesic:
    """E^2: ('line', unit normal, offset); H^2: ('diameter', direction) or
    ('circle', center, radius) orthogonal to the boundary; S^2: ('plane',
    unit normal of the great-circle plane)."""

    kind: GeometryKind
    form: str
    params: tuple

    def minkowski_normal(self) -> tuple:
        """Spacelike unit normal (w_x, w_y, w_z), <w,w> = -1 (H^2 only)."""
        if self.kind is not GeometryKind.HYPERBOLIC:
            raise KindMismatchError("minkowski_normal is hyperbolic-only")
        if self.form == "diameter":
            dx, dy = self.params[0]
            return (-dy, dx, 0.0)
        (cx, cy), radius = self.params
        return (cx / radius, cy / radius, 1.0 / radius)


def _lift(p: Point) -> tuple:
    """Poincare disk -> hyperboloid sheet Z^2 - X^2 - Y^2 = 1, Z > 0."""
    x, y = p.coords
    d = 1.0 - x * x - y * y
    return (2.0 * x / d, 2.0 * y / d, (1.0 + x * x + y * y) / d)


def _unlift(X: float, Y: float, Z: float) -> Point:
    return Point(GeometryKind.HYPERBOLIC, (X / (1.0 + Z), Y / (1.0 + Z)))


def _mink(a, b) -> float:
    return a[2] * b[2] - a[0] * b[0] - a[1] * b[1]


def _hyp_geodesic_from_normal(w) -> Geodesic:
    n = math.sqrt(max(-_mink(w, w), 0.0))
    if n == 0.0:
        raise GeometryError("degenerate (non-spacelike) normal")
    w = (w[0] / n, w[1] / n, w[2] / n)
    if abs(w[2]) < 1e-13:
        return Geodesic(GeometryKind.HYPERBOLIC, "diameter", ((w[1], -w[0]),))
    c = (w[0] / w[2], w[1] / w[2])
    radius = math.sqrt(c[0] * c[0] + c[1] * c[1] - 1.0)
    return Geodesic(GeometryKind.HYPERBOLIC, "circle", (c, radius))


def geodesic_through(kind: GeometryKind, p: Point, q: Point, tol: float = DEFAULT_TOL) -> Geodesic:
    _check_same_kind(p, q)
    if p.kind is not kind:
        raise KindMismatchError("point kind mismatch")
    if kind is GeometryKind.EUCLIDEAN:
        d = q.z - p.z
        if abs(d) <= tol:
            raise GeometryError("coincident points do not determine a line")
        n = complex(-d.imag, d.real) / abs(d)
        return Geodesic(kind, "line", ((n.real, n.imag), n.real * p.coords[0] + n.imag * p.coords[1]))
    if kind is GeometryKind.HYPERBOLIC:
        if abs(p.z - q.z) <= tol:
            raise GeometryError("coincident points do not determine a geodesic")
        P, Q = _lift(p), _lift(q)
        cr = _cross3(P, Q)
        return _hyp_geodesic_from_normal((-cr[0], -cr[1], cr[2]))
    cr = _cross3(p.coords, q.coords)
    n = _norm3(cr)
    if n <= tol:
        raise AmbiguousGeodesicError("coincident or antipodal points on the sphere")
    return Geodesic(kind, "plane", ((cr[0] / n, cr[1] / n, cr[2] / n),))


def point_geodesic_distance(g: Geodesic, p: Point) -> float:
    if p.kind is not g.kind:
        raise KindMismatchError("point/geodesic kind mismatch")
    if g.kind is GeometryKind.EUCLIDEAN:
        (nx, ny), off = g.params
        return abs(nx * p.coords[0] + ny * p.coords[1] - off)
    if g.kind is GeometryKind.HYPERBOLIC:
        return math.asinh(abs(_mink(_lift(p), g.minkowski_normal())))
    (n,) = g.params
    return math.asin(_clamp(abs(_dot3(p.coords, n)), 0.0, 1.0))


def fit_geodesic(points: Sequence[Point], tol: float = DEFAULT_TOL):
    """Geodesic within distance tol of all points, or None.

    Spherical point sets containing an antipodal pair are rejected as
    ambiguous (the geodesic through such a pair is not unique).
    """
    points = list(points)
    if len(points) < 2:
        raise GeometryError("need at least two points")
    _check_same_kind(*points)
    kind = points[0].kind
    if kind is GeometryKind.SPHERICAL:
        for i in range(len(points)):
            for j in range(i + 1, len(points)):
                if distance(kind, points[i], antipode(points[j])) <= tol:
                    raise AmbiguousGeodesicError("antipodal pair does not determine a geodesic")
    best, bi, bj = -1.0, 0, 1
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            d = distance(kind, points[i], points[j])
            if d > best:
                best, bi, bj = d, i, j
    if best <= tol:
        return None
    g = geodesic_through(kind, points[bi], points[bj], tol)
    if all(point_geodesic_distance(g, p) <= tol for p in points):
        return g
    return None


def geodesics_orthogonal(g1: Geodesic, g2: Geodesic, tol: float = DEFAULT_TOL) -> bool:
    """True iff the geodesics meet at right angle (within tol).

    Raises NoIntersectionError for disjoint geodesics in E^2/H^2.
    """
    _check_same_kind(g1, g2)
    if g1.kind is GeometryKind.EUCLIDEAN:
        (n1, _), (n2, _) = g1.params, g2.params
        if abs(n1[0] * n2[1] - n1[1] * n2[0]) <= tol:  # parallel
            raise NoIntersectionError("parallel lines do not intersect")
        return abs(n1[0] * n2[0] + n1[1] * n2[1]) <= tol
    if g1.kind is GeometryKind.HYPERBOLIC:
        w1, w2 = g1.minkowski_normal(), g2.minkowski_normal()
        c = _mink(w1, w2)
        if abs(c) >= 1.0 - tol:
            raise NoIntersectionError("geodesics do not intersect in H^2")
        return abs(c) <= tol
    (n1,), (n2,) = g1.params, g2.params
    return abs(_dot3(n1, n2)) <= tol


def reflect_in_geodesic(g: Geodesic, p: Point) -> Point:
    if p.kind is not g.kind:
        raise KindMismatchError("point/geodesic kind mismatch")
    if g.kind is GeometryKind.EUCLIDEAN:
        (nx, ny), off = g.params
        d = nx * p.coords[0] + ny * p.coords[1] - off
        return Point(p.kind, (p.coords[0] - 2.0 * d * nx, p.coords[1] - 2.0 * d * ny))
    if g.kind is GeometryKind.HYPERBOLIC:
        w = g.minkowski_normal()
        P = _lift(p)
        lam = 2.0 * _mink(P, w)
        return _unlift(P[0] + lam * w[0], P[1] + lam * w[1], P[2] + lam * w[2])
    (n,) = g.params
    d = 2.0 * _dot3(p.coords, n)
    return Point(p.kind, tuple(p.coords[i] - d * n[i] for i in range(3)))


def perpendicular_bisector(kind: GeometryKind, p: Point, q: Point) -> Geodesic:
    """The geodesic of points equidistant from p and q."""
    _check_same_kind(p, q)
    if kind is GeometryKind.EUCLIDEAN:
        d = q.z - p.z
        if abs(d) == 0:
            raise GeometryError("coincident points")
        n = d / abs(d)
        mid = (p.z + q.z) / 2.0
        return Geodesic(kind, "line", ((n.real, n.imag), n.real * mid.real + n.imag * mid.imag))
    if kind is GeometryKind.HYPERBOLIC:
        P, Q = _lift(p), _lift(q)
        return _hyp_geodesic_from_normal((P[0] - Q[0], P[1] - Q[1], P[2] - Q[2]))
    n = tuple(p.coords[i] - q.coords[i] for i in range(3))
    m = _norm3(n)
    if m == 0:
        raise GeometryError("coincident points")
    return Geodesic(kind, "plane", (tuple(x / m for x in n),))


# ---------------------------------------------------------------------------
# circles


@dataclass(frozen=True)
class Circle:
    kind: GeometryKind
    center: Point
    radius: float

    def __post_init__(self):
        if self.center.kind is not self.kind:
            raise KindMismatchError("circle center kind mismatch")
        if self.radius <= 0:
            raise DomainError("circle radius must be positive")
        if self.kind is GeometryKind.SPHERICAL and self.radius >= math.pi:
            raise DomainError("spherical circle radius must be < pi")


def point_on_circle(c: Circle, theta: float) -> Point:
    """The circle point at parameter angle theta."""
    kind = c.kind
    if kind is GeometryKind.EUCLIDEAN:
        z = c.center.z + c.radius * cmath.exp(1j * theta)
        return Point(kind, (z.real, z.imag))
    if kind is GeometryKind.HYPERBOLIC:
        w = rho(kind, math.cosh(c.radius)) * cmath.exp(1j * theta)
        ctr = c.center.z
        z = (w + ctr) / (1.0 + ctr.conjugate() * w)
        return Point(kind, (z.real, z.imag))
    n = c.center.coords
    e1, e2 = _sphere_frame(n)
    cr, sr = math.cos(c.radius), math.sin(c.radius)
    ct, st = math.cos(theta), math.sin(theta)
    return Point(kind, tuple(cr * n[i] + sr * (ct * e1[i] + st * e2[i]) for i in range(3)))


def circle_angle_of(c: Circle, p: Point) -> float:
    """Inverse of point_on_circle (the parameter angle of a circle point)."""
    kind = c.kind
    if kind is GeometryKind.EUCLIDEAN:
        return cmath.phase(p.z - c.center.z)
    if kind is GeometryKind.HYPERBOLIC:
        ctr = c.center.z
        w = (p.z - ctr) / (1.0 - ctr.conjugate() * p.z)
        return cmath.phase(w)
    n = c.center.coords
    e1, e2 = _sphere_frame(n)
    return math.atan2(_dot3(p.coords, e2), _dot3(p.coords, e1))


def _sphere_frame(n) -> tuple:
    """Two unit vectors completing n to an orthonormal frame (deterministic)."""
    pick = (1.0, 0.0, 0.0) if abs(n[0]) <= 0.9 else (0.0, 1.0, 0.0)
    e1 = _cross3(n, pick)
    m = _norm3(e1)
    e1 = (e1[0] / m, e1[1] / m, e1[2] / m)
    e2 = _cross3(n, e1)
    return e1, e2


def point_along_geodesic(kind: GeometryKind, a: Point, b: Point, s: float) -> Point:
    """Point at signed distance s from a along the geodesic towards b."""
    d = distance(kind, a, b)
    if d == 0:
        raise GeometryError("coincident points do not define a direction")
    if kind is GeometryKind.EUCLIDEAN:
        z = a.z + (b.z - a.z) * (s / d)
        return Point(kind, (z.real, z.imag))
    if kind is GeometryKind.HYPERBOLIC:
        A, B = _lift(a), _lift(b)
        sh = math.sinh(d)
        U = tuple((B[i] - math.cosh(d) * A[i]) / sh for i in range(3))
        cs, ss = math.cosh(s), math.sinh(s)
        return _unlift(*(cs * A[i] + ss * U[i] for i in range(3)))
    A, B = a.coords, b.coords
    sd = math.sin(d)
    U = tuple((B[i] - math.cos(d) * A[i]) / sd for i in range(3))
    cs, ss = math.cos(s), math.sin(s)
    return Point(kind, tuple(cs * A[i] + ss * U[i] for i in range(3)))


def _hyp_circle_euclidean(c: Circle) -> tuple:
    """Euclidean (center, radius) of a hyperbolic circle in the disk."""
    ctr = c.center.z
    if abs(ctr) < 1e-300:
        return 0j, rho(GeometryKind.HYPERBOLIC, math.cosh(c.radius))
    d0 = distance(GeometryKind.HYPERBOLIC, c.center,
                  Point(GeometryKind.HYPERBOLIC, (0.0, 0.0)))
    tp = math.tanh((d0 + c.radius) / 2.0)
    tm = math.tanh((d0 - c.radius) / 2.0)
    u = ctr / abs(ctr)
    return u * (tp + tm) / 2.0, (tp - tm) / 2.0


def _euclidean_circle_points(c1: complex, r1: float, c2: complex, r2: float) -> list:
    d = abs(c2 - c1)
    u = (c2 - c1) / d
    aa = (d * d + r1 * r1 - r2 * r2) / (2.0 * d)
    h2 = r1 * r1 - aa * aa
    h = math.sqrt(max(h2, 0.0))
    base = c1 + aa * u
    off = h * complex(-u.imag, u.real)
    return [base + off, base - off]


def circle_intersection(c1: Circle, c2: Circle, tol: float = DEFAULT_TOL) -> list:
    """0, 1 (tangency within tol) or 2 intersection points.

    Raises InfiniteIntersectionError for identical circles.
    """
    _check_same_kind(c1, c2)
    kind = c1.kind
    d = distance(kind, c1.center, c2.center)
    r1, r2 = c1.radius, c2.radius
    if d <= tol and abs(r1 - r2) <= tol:
        raise InfiniteIntersectionError("identical circles")
    if kind is GeometryKind.SPHERICAL:
        if (distance(kind, c1.center, antipode(c2.center)) <= tol
                and abs((math.pi - r1) - r2) <= tol):
            raise InfiniteIntersectionError("identical circles (antipodal representation)")
    # tangency in the intrinsic metric
    if abs(d - (r1 + r2)) <= tol:
        return [point_along_geodesic(kind, c1.center, c2.center, r1)]
    if abs(d - (r1 - r2)) <= tol:
        return [point_along_geodesic(kind, c1.center, c2.center, r1)]
    if abs(d - (r2 - r1)) <= tol:
        return [point_along_geodesic(kind, c1.center, c2.center, -r1)]
    if kind is GeometryKind.SPHERICAL and abs((2.0 * math.pi - (r1 + r2)) - d) <= tol:
        return [point_along_geodesic(kind, c1.center, c2.center, -r1)]
    if d > r1 + r2 or d < abs(r1 - r2):
        if kind is not GeometryKind.SPHERICAL:
            return []
    if kind is GeometryKind.EUCLIDEAN:
        return [Point(kind, (z.real, z.imag))
                for z in _euclidean_circle_points(c1.center.z, r1, c2.center.z, r2)]
    if kind is GeometryKind.HYPERBOLIC:
        e1, er1 = _hyp_circle_euclidean(c1)
        e2, er2 = _hyp_circle_euclidean(c2)
        return [Point(kind, (z.real, z.imag))
                for z in _euclidean_circle_points(e1, er1, e2, er2)]
    n1, n2 = c1.center.coords, c2.center.coords
    h1, h2 = math.cos(r1), math.cos(r2)
    g = _dot3(n1, n2)
    den = 1.0 - g * g
    al = (h1 - h2 * g) / den
    be = (h2 - h1 * g) / den
    base = tuple(al * n1[i] + be * n2[i] for i in range(3))
    n3 = _cross3(n1, n2)
    gamma2 = (1.0 - _dot3(base, base)) / _dot3(n3, n3)
    if gamma2 < 0.0:
        return []
    gm = math.sqrt(gamma2)
    return [Point(kind, tuple(base[i] + gm * n3[i] for i in range(3))),
            Point(kind, tuple(base[i] - gm * n3[i] for i in range(3)))]


# ---------------------------------------------------------------------------
# isometries


def rotate_about(kind: GeometryKind, center: Point, angle: float) -> Callable[[Point], Point]:
    """The isometry rotating by `angle` about `center`."""
    if kind is GeometryKind.EUCLIDEAN:
        rot = cmath.exp(1j * angle)
        c = center.z

        def t_euc(p: Point) -> Point:
            z = c + rot * (p.z - c)
            return Point(kind, (z.real, z.imag))

        return t_euc
    if kind is GeometryKind.HYPERBOLIC:
        rot = cmath.exp(1j * angle)
        c = center.z

        def t_hyp(p: Point) -> Point:
            w = (p.z - c) / (1.0 - c.conjugate() * p.z)
            z = (rot * w + c) / (1.0 + c.conjugate() * rot * w)
            return Point(kind, (z.real, z.imag))

        return t_hyp
    n = center.coords
    e1, e2 = _sphere_frame(n)
    ca, sa = math.cos(angle), math.sin(angle)

    def t_sph(p: Point) -> Point:
        x = p.coords
        a = _dot3(x, e1)
        b = _dot3(x, e2)
        c0 = _dot3(x, n)
        na = a * ca - b * sa
        nb = a * sa + b * ca
        return Point(kind, tuple(c0 * n[i] + na * e1[i] + nb * e2[i] for i in range(3)))

    return t_sph


def frame_transform(kind: GeometryKind, q0: Point, p0: Point):
    """Orientation-preserving isometries (fwd, inv) placing q0 at the model
    base point and p0 on the positive axis.

    Base points: E^2 origin; H^2 disk center; S^2 stereographic origin
    (0,0,-1), with p0 going to the positive-real stereographic axis.
    """
    _check_same_kind(q0, p0)
    d = distance(kind, q0, p0)
    if d <= 0:
        raise GeometryError("coincident pair cannot fix a frame")
    if kind is GeometryKind.EUCLIDEAN:
        phi = cmath.phase(p0.z - q0.z)
        rot = cmath.exp(-1j * phi)
        q0z = q0.z

        def fwd(p: Point) -> Point:
            z = rot * (p.z - q0z)
            return Point(kind, (z.real, z.imag))

        def inv(p: Point) -> Point:
            z = p.z / rot + q0z
            return Point(kind, (z.real, z.imag))

        return fwd, inv
    if kind is GeometryKind.HYPERBOLIC:
        c = q0.z
        w0 = (p0.z - c) / (1.0 - c.conjugate() * p0.z)
        rot = abs(w0) / w0

        def fwd(p: Point) -> Point:
            z = rot * (p.z - c) / (1.0 - c.conjugate() * p.z)
            return Point(kind, (z.real, z.imag))

        def inv(p: Point) -> Point:
            w = p.z / rot
            z = (w + c) / (1.0 + c.conjugate() * w)
            return Point(kind, (z.real, z.imag))

        return fwd, inv
    r3 = tuple(-x for x in q0.coords)
    sd = math.sin(d)
    r1 = tuple((p0.coords[i] - math.cos(d) * q0.coords[i]) / sd for i in range(3))
    r2 = _cross3(r3, r1)

    def fwd(p: Point) -> Point:
        x = p.coords
        return Point(kind, (_dot3(r1, x), _dot3(r2, x), _dot3(r3, x)))

    def inv(p: Point) -> Point:
        a, b, c0 = p.coords
        return Point(kind, tuple(a * r1[i] + b * r2[i] + c0 * r3[i] for i in range(3)))

    return fwd, inv


def align_onto(kind: GeometryKind, src: tuple, dst: tuple) -> Callable[[Point], Point]:
    """The isometry taking the ordered pair src=(a,b) onto dst=(a',b').

    Requires distance(a,b) == distance(a',b') up to roundoff.
    """
    f1, _ = frame_transform(kind, src[0], src[1])
    _, i2 = frame_transform(kind, dst[0], dst[1])
    return lambda p: i2(f1(p))


def random_point(kind: GeometryKind, rng) -> Point:
    """Uniform-ish random point used by the property tests."""
    if kind is GeometryKind.EUCLIDEAN:
        return Point(kind, (rng.uniform(-5, 5), rng.uniform(-5, 5)))
    if kind is GeometryKind.HYPERBOLIC:
        while True:
            x, y = rng.uniform(-0.95, 0.95), rng.uniform(-0.95, 0.95)
            if x * x + y * y < 0.9:
                return Point(kind, (x, y))
    while True:
        v = (rng.gauss(0, 1), rng.gauss(0, 1), rng.gauss(0, 1))
        n = _norm3(v)
        if n > 1e-6:
            return Point(kind, (v[0] / n, v[1] / n, v[2] / n))
