"""Construction of the rod-constraint polynomials f_ij and resultants F_i.

Geometry of the parametrization (Euclidean): the fixed joints sit at
q_0 = (0,0), p_0 = (r,0).  The moving joints run over circles parametrized
by complex numbers with |T_i| = R_i/r and |t_j| = r_j/r, oriented so that
the rod vector from q_j to p_i equals -r(1 + T_i - t_j).  With this choice
the unit-square configuration q_0=(0,0), p_0=(1,0), p_1=(0,1), q_1=(1,1)
has parameters T_1 = t_1 = -i, and f_11 vanishes there in Gaussian-rational
arithmetic (the pinned witness).

Hyperbolic/spherical: q_0 = 0 and p_0 = l in the conformal disk/plane
(l = rho(u)), with p_i(T_i) = l*T_i and q_j(t_j) the image of l*t_j under
the isometry moving 0 to l.  Clearing denominators of the distance equation
cosh/cos d(p_i(T_i), q_j(t_j)) = u_ij and normalizing by 4(u+1)T_i t_j
yields one and the same 72-monomial polynomial in T_i, t_j and the cosh/cos
symbols u, U_i, u_j, u_ij for both geometries.
"""
from __future__ import annotations

from functools import lru_cache

from flexlab.geometry import GeometryKind
from flexlab.polysym.linalg import sylvester_resultant
from flexlab.polysym.poly import MvPoly, PolyRing, PolynomialError

#: Ring for the Euclidean identities.  Length symbols are unsquared; the
#: polynomials f_ij, F_i only contain even powers of them, matching the
#: squared-length coefficient convention used for monomial counts.
EUC_RING = PolyRing(
    ["T", "t1", "t2", "lam", "r", "R1", "R2", "r1", "r2", "r11", "r12", "r21", "r22"])

#: Ring for the hyperbolic/spherical identities (u = cosh/cos of rod lengths).
HYP_RING = PolyRing(
    ["T", "t1", "t2", "lam", "u", "U1", "U2", "u1", "u2", "u11", "u12", "u21", "u22"])

_EUC_LEN = {  # (i, j) -> (R_i symbol, r_j symbol, r_ij symbol)
    (1, 1): ("R1", "r1", "r11"), (1, 2): ("R1", "r2", "r12"),
    (2, 1): ("R2", "r1", "r21"), (2, 2): ("R2", "r2", "r22"),
}
_HYP_LEN = {
    (1, 1): ("U1", "u1", "u11"), (1, 2): ("U1", "u2", "u12"),
    (2, 1): ("U2", "u1", "u21"), (2, 2): ("U2", "u2", "u22"),
}


def euclidean_f(T: MvPoly, t: MvPoly, rr: MvPoly, RR: MvPoly, rrj: MvPoly, rrij: MvPoly) -> MvPoly:
    """The Euclidean rod polynomial from arbitrary squared-length arguments."""
    return (1 + T - t) * (rr * T * t + RR * t - rrj * T) - rrij * T * t


class RatFunc:
    """Fraction of ring elements with exact cross-multiplication, no gcd."""

    __slots__ = ("num", "den")

    def __init__(self, num: MvPoly, den: MvPoly):
        if den.is_zero():
            raise PolynomialError("zero denominator")
        self.num = num
        self.den = den

    @staticmethod
    def of(p: MvPoly) -> "RatFunc":
        return RatFunc(p, p.ring.one())

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, MvPoly):
            return RatFunc.of(other)
        return RatFunc.of(self.num.ring.const(other))

    def __add__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def as_poly(self) -> MvPoly:
        """Exact polynomial value; raises if the denominator does not divide."""
        return self.num.exact_div(self.den)


def _build_f_curved(spherical: bool) -> MvPoly:
    """Numerator construction in the conformal model; see module docstring."""
    work = PolyRing(["T", "t", "u", "U", "v", "w"])
    T, t, u, U, v, w = (RatFunc.of(work.var(n)) for n in work.names)
    one = RatFunc.of(work.one())
    if not spherical:
        lsq = (u - 1) / (u + 1)          # l^2, l = rho_H(u)
        Lsq = (U - 1) / (U + 1)
        vsq = (v - 1) / (v + 1)
        qj = (1 + t) / (lsq * t + 1)     # q_j(t)/l under z -> (z+l)/(lz+1)
        qj_conj = (1 + vsq / (lsq * t)) / (vsq / t + 1)
        prod = (T - qj) * (Lsq / T - lsq * qj_conj)
        qq = lsq * qj * qj_conj
        bracket = 1 + 2 * prod / ((1 - Lsq) * (1 - qq)) - w
    else:
        lsq = (1 - u) / (1 + u)          # l^2, l = rho_S(u)
        Lsq = (1 - U) / (1 + U)
        vsq = (1 - v) / (1 + v)
        qj = (1 + t) / (1 - lsq * t)     # q_j(t)/l under z -> (z+l)/(1-lz)
        qj_conj = (1 + vsq / (lsq * t)) / (1 - vsq / t)
        prod = (T - qj) * (Lsq / T - lsq * qj_conj)
        qq = lsq * qj * qj_conj
        bracket = 1 - 2 * prod / ((1 + Lsq) * (1 + qq)) - w
    f = (4 * (u + 1)) * T * t * bracket + (one - one)
    return f.as_poly()


@lru_cache(maxsize=None)
def _curved_f_template(spherical: bool) -> MvPoly:
    return _build_f_curved(spherical)


@lru_cache(maxsize=None)
def build_f(kind: GeometryKind, i: int, j: int) -> MvPoly:
    """The rod polynomial f_ij(T_i, t_j); see the module docstring.

    Euclidean: bidegree (2,2) in (T, t_j), coefficients in the squared
    lengths.  Hyperbolic and spherical: the identical 72-monomial polynomial
    in T, t_j and the u-symbols.
    """
    if i not in (1, 2) or j not in (1, 2):
        raise ValueError("i and j must be 1 or 2")
    if kind is GeometryKind.EUCLIDEAN:
        ring = EUC_RING
        Rn, rn, rijn = _EUC_LEN[(i, j)]
        T = ring.var("T")
        t = ring.var(f"t{j}")
        sq = lambda n: ring.var(n) ** 2
        return euclidean_f(T, t, sq("r"), sq(Rn), sq(rn), sq(rijn))
    template = _curved_f_template(kind is GeometryKind.SPHERICAL)
    Un, un, uijn = _HYP_LEN[(i, j)]
    return template.map_vars(HYP_RING, {"t": f"t{j}", "U": Un, "v": un, "w": uijn})


def euclidean_F_from_f(fi1: MvPoly, fi2: MvPoly, RRi: MvPoly) -> MvPoly:
    """Res_T(f_i1, f_i2) at formal degrees (2,2), exactly divided by R_i^2."""
    res = sylvester_resultant(fi1, fi2, "T", (2, 2))
    return res.exact_div(RRi)


@lru_cache(maxsize=None)
def build_F(kind: GeometryKind, i: int) -> MvPoly:
    """The transmission curve polynomial F_i(t_1, t_2).

    Euclidean: Res_T(f_i1, f_i2)/R_i^2, 126 monomials, degree 4 in each t_j.
    Hyperbolic/spherical: Res_T(f_i1, f_i2)/(16 (1+u)^4 (1-U_i^2)), 445
    monomials.  The stated divisions are exact; PolynomialError here means
    a broken construction.
    """
    if i not in (1, 2):
        raise ValueError("i must be 1 or 2")
    fi1 = build_f(kind, i, 1)
    fi2 = build_f(kind, i, 2)
    if kind is GeometryKind.EUCLIDEAN:
        return euclidean_F_from_f(fi1, fi2, EUC_RING.var(f"R{i}") ** 2)
    res = sylvester_resultant(fi1, fi2, "T", (2, 2))
    u = HYP_RING.var("u")
    Ui = HYP_RING.var(f"U{i}")
    norm = 16 * (1 + u) ** 4 * (1 - Ui ** 2)
    return res.exact_div(norm)
