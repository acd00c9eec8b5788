"""Formal-degree resultants and discriminants via Sylvester determinants.

The resultant of two polynomials at *formal* degrees (d_p, d_q) is the
determinant of the (d_p+d_q) x (d_p+d_q) Sylvester matrix built from the
coefficient lists padded to those degrees.  This stays meaningful when
leading coefficients vanish, which is the convention used throughout for
the degree-(2,2) and degree-(4,4) eliminations.

Determinants are computed by fraction-free (Bareiss) elimination, so all
intermediate divisions are exact in the polynomial ring.
"""
from __future__ import annotations

from flexlab.polysym.poly import MvPoly, PolyRing, PolynomialError


def coeff_list(p: MvPoly, var: str, formal_degree: int) -> list[MvPoly]:
    """Coefficients [c_0, ..., c_d] of p in var, padded to the formal degree."""
    actual = p.degree_in(var)
    if actual > formal_degree:
        raise PolynomialError(
            f"actual degree {actual} in {var} exceeds formal degree {formal_degree}")
    out = [p.ring.zero() for _ in range(formal_degree + 1)]
    for k, c in p.coeffs_in(var).items():
        out[k] = c
    return out


def sylvester_matrix(p: MvPoly, q: MvPoly, var: str, formal_degrees: tuple[int, int]) -> list[list[MvPoly]]:
    dp, dq = formal_degrees
    pc = coeff_list(p, var, dp)[::-1]  # descending
    qc = coeff_list(q, var, dq)[::-1]
    n = dp + dq
    zero = p.ring.zero()
    rows = []
    for i in range(dq):
        rows.append([zero] * i + pc + [zero] * (dq - 1 - i))
    for i in range(dp):
        rows.append([zero] * i + qc + [zero] * (dp - 1 - i))
    assert all(len(r) == n for r in rows)
    return rows


def bareiss_det(matrix: list[list[MvPoly]]) -> MvPoly:
    """Fraction-free determinant of a square matrix of polynomials."""
    n = len(matrix)
    if n == 0:
        raise PolynomialError("empty matrix")
    ring = matrix[0][0].ring
    m = [row[:] for row in matrix]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return ring.zero()
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                num = pivot * m[i][j] - mik * m[k][j]
                m[i][j] = num.exact_div(prev) if not prev.is_constant() or prev.constant_value() != 1 else num
            m[i][k] = ring.zero()
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def sylvester_resultant(p: MvPoly, q: MvPoly, var: str, formal_degrees: tuple[int, int]) -> MvPoly:
    """Resultant at formal degrees: the padded Sylvester matrix determinant.

    When the actual degrees match the formal ones the value is computed by
    the subresultant PRS (identical result, far fewer ring operations; the
    agreement with bareiss_det is exercised in the test suite); otherwise by
    fraction-free elimination of the padded matrix itself.
    """
    if p.ring != q.ring:
        raise PolynomialError("mixed rings")
    dp, dq = formal_degrees
    if p.degree_in(var) == dp and q.degree_in(var) == dq and dp >= 1 and dq >= 1:
        try:
            return _prs_resultant(p, q, var)
        except PolynomialError:
            pass
    return bareiss_det(sylvester_matrix(p, q, var, formal_degrees))


class _UPoly:
    """Helper view: univariate polynomial with MvPoly coefficients."""

    __slots__ = ("c",)  # dict degree -> nonzero MvPoly

    def __init__(self, c: dict):
        self.c = c

    @property
    def deg(self) -> int:
        return max(self.c) if self.c else -1

    def lc(self) -> MvPoly:
        return self.c[self.deg]

    def scale(self, f: MvPoly) -> "_UPoly":
        return _UPoly({k: v * f for k, v in self.c.items()})

    def quo_ground(self, f: MvPoly) -> "_UPoly":
        return _UPoly({k: v.exact_div(f) for k, v in self.c.items()})

    def prem(self, other: "_UPoly") -> "_UPoly":
        """Pseudo-remainder: lc(other)^(deg self - deg other + 1) * self mod other."""
        db = other.deg
        lb = other.lc()
        r = dict(self.c)
        dr = self.deg
        steps = dr - db + 1
        while r and (dr := max(r)) >= db:
            lr = r.pop(dr)
            shift = dr - db
            nr = {k: v * lb for k, v in r.items()}
            for k, v in other.c.items():
                if k == db:
                    continue
                kk = k + shift
                cur = nr.get(kk)
                acc = -(lr * v) if cur is None else cur - lr * v
                if acc:
                    nr[kk] = acc
                elif cur is not None:
                    del nr[kk]
            r = nr
            steps -= 1
        if steps > 0 and r:
            f = lb ** steps
            r = {k: v * f for k, v in r.items()}
        return _UPoly(r)


def _prs_resultant(p: MvPoly, q: MvPoly, var: str) -> MvPoly:
    """Resultant via the subresultant PRS (actual degrees, Collins' scheme)."""
    ring = p.ring
    f = _UPoly({k: c for k, c in p.coeffs_in(var).items() if c})
    g = _UPoly({k: c for k, c in q.coeffs_in(var).items() if c})
    n, m = f.deg, g.deg
    sign = 1
    if n < m:
        f, g, n, m = g, f, m, n
        if (n * m) % 2:
            sign = -1
    if m < 0:
        return ring.zero()
    if m == 0:
        return sign * g.lc() ** n
    d = n - m
    h = f.prem(g)
    if (d + 1) % 2:  # beta_1 = (-1)^(d+1)
        h = _UPoly({k: -v for k, v in h.c.items()})
    lc = g.lc()
    c = lc ** d
    last_s = c
    c = -c
    while h.c:
        k = h.deg
        f, g, m, d = g, h, k, m - k
        b = -lc * c ** d
        h = f.prem(g)
        h = h.quo_ground(b) if h.c else h
        lc = g.lc()
        if d > 1:
            c = ((-lc) ** d).exact_div(c ** (d - 1))
        else:
            c = -lc
        last_s = -c
    if g.deg > 0:
        return ring.zero()
    return sign * last_s


def derivative(p: MvPoly, var: str) -> MvPoly:
    ring = p.ring
    s = ring.shifts[ring.index[var]]
    mask = (1 << 16) - 1
    out = {}
    for e, c in p.terms.items():
        k = (e >> s) & mask
        if k:
            out[e - (1 << s)] = c * k
    return MvPoly(ring, out)


def formal_discriminant(p: MvPoly, var: str, formal_degree: int) -> MvPoly:
    """Discriminant at a formal degree (b^2-4ac convention for quadratics).

    For degree d the discriminant is (-1)^(d(d-1)/2) Res_{d,d-1}(p, p') / a_d;
    when the leading coefficient vanishes identically the division is carried
    out with a fresh variable added to it, which is then set to zero.
    """
    if formal_degree < 1:
        raise PolynomialError("formal degree must be >= 1")
    d = formal_degree
    if p.degree_in(var) > d:
        raise PolynomialError("actual degree exceeds formal degree")
    if d == 2:
        cs = coeff_list(p, var, 2)
        return cs[1] * cs[1] - 4 * cs[2] * cs[0]
    lc = p.coefficient_of(var, d)
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    if not lc.is_zero():
        res = sylvester_resultant(p, derivative(p, var), var, (d, d - 1))
        return sign * res.exact_div(lc)
    # leading coefficient is identically zero: perturb with a fresh variable
    ring = p.ring
    tmp = PolyRing(ring.names + ("_z",))
    z = tmp.var("_z")
    pz = p.map_vars(tmp) + z * tmp.var(var) ** d
    res = sylvester_resultant(pz, derivative(pz, var), var, (d, d - 1))
    disc = sign * res.exact_div(z)
    disc = disc.substitute({"_z": tmp.zero()})
    return disc.map_vars(ring)
