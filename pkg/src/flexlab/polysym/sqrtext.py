"""Quadratic extensions of a polynomial ring by square roots.

Adjoins symbols s_k with a reduction rule s_k^2 -> D_k for base polynomials
D_k (cosh branch: u_k^2 - 1; cos branch: 1 - u_k^2).  Elements are kept
reduced: degree <= 1 in every adjoined root, stored as a map from root
bitmask to base polynomial component.
"""
from __future__ import annotations

from typing import Mapping, Sequence

from flexlab.polysym.poly import MvPoly, PolyRing, PolynomialError


class SqrtExtension:
    def __init__(self, ring: PolyRing, roots: Mapping[str, MvPoly]):
        self.ring = ring
        self.root_names: tuple[str, ...] = tuple(roots)
        self.squares: tuple[MvPoly, ...] = tuple(roots[n] for n in self.root_names)
        self.bit = {n: 1 << i for i, n in enumerate(self.root_names)}

    def zero(self) -> "SqrtElt":
        return SqrtElt(self, {})

    def one(self) -> "SqrtElt":
        return SqrtElt(self, {0: self.ring.one()})

    def from_poly(self, p: MvPoly) -> "SqrtElt":
        return SqrtElt(self, {0: p} if p else {})

    def root(self, name: str) -> "SqrtElt":
        return SqrtElt(self, {self.bit[name]: self.ring.one()})

    def _mask_product(self, mask: int) -> MvPoly:
        out = self.ring.one()
        for i, d in enumerate(self.squares):
            if mask & (1 << i):
                out = out * d
        return out


class SqrtElt:
    """A reduced element sum_mask comp[mask] * prod_{k in mask} s_k."""

    __slots__ = ("ext", "comps")

    def __init__(self, ext: SqrtExtension, comps: dict):
        self.ext = ext
        self.comps = {m: p for m, p in comps.items() if p}

    def is_zero(self) -> bool:
        return not self.comps

    def __bool__(self):
        return bool(self.comps)

    def __eq__(self, other):
        if isinstance(other, SqrtElt):
            return self.ext is other.ext and self.comps == other.comps
        return NotImplemented

    def _coerce(self, other) -> "SqrtElt":
        if isinstance(other, SqrtElt):
            return other
        if isinstance(other, MvPoly):
            return self.ext.from_poly(other)
        return self.ext.from_poly(self.ext.ring.const(other))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.comps)
        for m, p in other.comps.items():
            q = out.get(m)
            out[m] = p if q is None else q + p
        return SqrtElt(self.ext, out)

    __radd__ = __add__

    def __neg__(self):
        return SqrtElt(self.ext, {m: -p for m, p in self.comps.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        ext = self.ext
        out: dict = {}
        for m1, p1 in self.comps.items():
            for m2, p2 in other.comps.items():
                common = m1 & m2
                mask = m1 ^ m2
                prod = p1 * p2
                if common:
                    prod = prod * ext._mask_product(common)
                q = out.get(mask)
                out[mask] = prod if q is None else q + prod
        return SqrtElt(ext, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = self.ext.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conj(self, root_name: str) -> "SqrtElt":
        """Negate every component containing the given root."""
        b = self.ext.bit[root_name]
        return SqrtElt(self.ext, {m: (-p if m & b else p) for m, p in self.comps.items()})

    def roots_present(self) -> list[str]:
        mask = 0
        for m in self.comps:
            mask |= m
        return [n for n in self.ext.root_names if mask & self.ext.bit[n]]

    def base(self) -> MvPoly:
        """The base-ring component; raises if any root is present."""
        if any(m for m in self.comps):
            raise PolynomialError("element is not in the base ring")
        return self.comps.get(0, self.ext.ring.zero())

    def exact_div(self, den: "SqrtElt") -> "SqrtElt":
        """Exact division; clears roots from the divisor by norm conjugation."""
        den = self._coerce(den)
        if den.is_zero():
            raise PolynomialError("division by zero")
        num = self
        while True:
            roots = den.roots_present()
            if not roots:
                break
            cj = den.conj(roots[0])
            num = num * cj
            den = den * cj
        base = den.base()
        return SqrtElt(self.ext, {m: p.exact_div(base) for m, p in num.comps.items()})

    def __repr__(self):
        if not self.comps:
            return "0"
        names = self.ext.root_names
        bits = []
        for m in sorted(self.comps):
            tag = "*".join(n for i, n in enumerate(names) if m & (1 << i))
            bits.append(f"({self.comps[m]!r})" + (f"*{tag}" if tag else ""))
        return " + ".join(bits)
