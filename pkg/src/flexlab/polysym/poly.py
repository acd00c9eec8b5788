"""Exact sparse multivariate polynomials over the rationals.

Monomials are packed into a single Python int (16 bits per variable, first
ring variable in the most significant field), so monomial multiplication is
integer addition and the packed code order is the lex order.  Coefficients
are kept as int whenever the denominator is 1, falling back to Fraction.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from flexlab.polysym import kernels

_BITS = 16
_FIELD_MASK = (1 << _BITS) - 1
_MAX_EXP = _FIELD_MASK


class PolynomialError(Exception):
    """Raised on invalid polynomial operations (inexact division, overflow)."""


def _norm_coeff(c):
    """Keep coefficients as int when possible, Fraction otherwise."""
    if type(c) is int:
        return c
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return int(c)
        return c
    if isinstance(c, int):
        return int(c)
    raise PolynomialError(f"unsupported coefficient type {type(c)!r}")


class PolyRing:
    """A polynomial ring with a fixed ordered tuple of variable names."""

    def __init__(self, names: Sequence[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise PolynomialError("duplicate variable names")
        if len(names) * _BITS > 4096:
            raise PolynomialError("too many variables")
        self.names = names
        self.nvars = len(names)
        self.index = {n: i for i, n in enumerate(names)}
        self.shifts = tuple(_BITS * (self.nvars - 1 - i) for i in range(self.nvars))
        self.field_masks = tuple(_FIELD_MASK << s for s in self.shifts)

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)})"

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def pack(self, exps: Sequence[int]) -> int:
        code = 0
        for e, s in zip(exps, self.shifts):
            if e < 0 or e > _MAX_EXP:
                raise PolynomialError(f"exponent {e} out of range")
            code |= e << s
        return code

    def unpack(self, code: int) -> tuple:
        return tuple((code >> s) & _FIELD_MASK for s in self.shifts)

    def zero(self) -> "MvPoly":
        return MvPoly(self, {})

    def one(self) -> "MvPoly":
        return MvPoly(self, {0: 1})

    def const(self, c) -> "MvPoly":
        c = _norm_coeff(Fraction(c) if not isinstance(c, (int, Fraction)) else c)
        return MvPoly(self, {0: c} if c else {})

    def var(self, name: str) -> "MvPoly":
        return MvPoly(self, {1 << self.shifts[self.index[name]]: 1})

    def monomial(self, coeff, **exps) -> "MvPoly":
        vec = [0] * self.nvars
        for n, e in exps.items():
            vec[self.index[n]] = e
        c = _norm_coeff(coeff)
        return MvPoly(self, {self.pack(vec): c} if c else {})

    def poly(self, terms: Mapping[Sequence[int], object]) -> "MvPoly":
        out = {}
        for exps, c in terms.items():
            c = _norm_coeff(c)
            if c:
                out[self.pack(exps)] = c
        return MvPoly(self, out)


class MvPoly:
    """Immutable-by-convention sparse polynomial over a PolyRing."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- basics --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self):
        if not self.terms:
            return 0
        if self.is_constant():
            return self.terms[0]
        raise PolynomialError("not a constant polynomial")

    def __eq__(self, other):
        if isinstance(other, MvPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({0: _norm_coeff(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> "MvPoly":
        if isinstance(other, MvPoly):
            if other.ring != self.ring:
                raise PolynomialError("mixed rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        return MvPoly(self.ring, kernels.add_terms(self.terms, other.terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return MvPoly(self.ring, kernels.sub_terms(self.terms, other.terms))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return MvPoly(self.ring, kernels.neg_terms(self.terms))

    def __mul__(self, other):
        if isinstance(other, MvPoly):
            if other.ring != self.ring:
                raise PolynomialError("mixed rings")
            return MvPoly(self.ring, kernels.mul_terms(self.terms, other.terms))
        c = _norm_coeff(other if isinstance(other, (int, Fraction)) else Fraction(other))
        return MvPoly(self.ring, kernels.scale_terms(self.terms, c))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise PolynomialError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- structure -----------------------------------------------------
    def degree_in(self, name: str) -> int:
        s = self.ring.shifts[self.ring.index[name]]
        if not self.terms:
            return -1
        return max((e >> s) & _FIELD_MASK for e in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(self.ring.unpack(e)) for e in self.terms)

    def coeffs_in(self, name: str) -> dict:
        """Decompose as a polynomial in `name`: degree -> MvPoly coefficient."""
        i = self.ring.index[name]
        s = self.ring.shifts[i]
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = (e >> s) & _FIELD_MASK
            out.setdefault(k, {})[e & ~(_FIELD_MASK << s)] = c
        return {k: MvPoly(self.ring, t) for k, t in sorted(out.items())}

    def coefficient_of(self, name: str, k: int) -> "MvPoly":
        i = self.ring.index[name]
        s = self.ring.shifts[i]
        out = {}
        for e, c in self.terms.items():
            if (e >> s) & _FIELD_MASK == k:
                out[e & ~(_FIELD_MASK << s)] = c
        return MvPoly(self.ring, out)

    def monomial_count(self) -> int:
        return len(self.terms)

    def iter_terms(self) -> Iterable[tuple]:
        for e in sorted(self.terms, reverse=True):
            yield self.ring.unpack(e), self.terms[e]

    # -- division ------------------------------------------------------
    def leading(self) -> tuple:
        """Lex-leading (code, coeff)."""
        if not self.terms:
            raise PolynomialError("leading term of zero polynomial")
        e = max(self.terms)
        return e, self.terms[e]

    def exact_div(self, den: "MvPoly") -> "MvPoly":
        """Exact polynomial division; raises PolynomialError on any remainder."""
        den = self._coerce(den)
        if not den.terms:
            raise PolynomialError("division by zero polynomial")
        if not self.terms:
            return self.ring.zero()
        quot = kernels.div_terms(self.terms, den.terms, self.ring.field_masks)
        if quot is None:
            raise PolynomialError("inexact polynomial division")
        return MvPoly(self.ring, quot)

    def divides(self, other: "MvPoly") -> bool:
        try:
            other.exact_div(self)
            return True
        except PolynomialError:
            return False

    def sqrt(self):
        """Exact polynomial square root, or None."""
        if not self.terms:
            return self.ring.zero()
        e, c = self.leading()
        exps = self.ring.unpack(e)
        if any(x % 2 for x in exps):
            return None
        fc = Fraction(c)
        if fc < 0:
            return None
        num_r, den_r = _isqrt_exact(fc.numerator), _isqrt_exact(fc.denominator)
        if num_r is None or den_r is None:
            return None
        g = MvPoly(self.ring, {self.ring.pack([x // 2 for x in exps]): _norm_coeff(Fraction(num_r, den_r))})
        rem = self - g * g
        two = self.ring.const(2)
        while rem:
            re, rc = rem.leading()
            ge, gc = g.leading()
            qe = re - ge
            if qe < 0 or any(((re >> s) & _FIELD_MASK) < ((ge >> s) & _FIELD_MASK) for s in self.ring.shifts):
                return None
            qc = _norm_coeff(Fraction(rc) / (2 * Fraction(gc)))
            t = MvPoly(self.ring, {qe: qc})
            rem = rem - t * (two * g + t)
            g = g + t
        return g

    # -- substitution & evaluation --------------------------------------
    def evaluate(self, values: Mapping[str, object], squares: Mapping[str, object] | None = None):
        """Evaluate at the given assignments.

        `squares` supplies the value of a variable's square; exponents of such
        variables must all be even (used for length symbols whose squares are
        rational while the lengths themselves are not).
        """
        ring = self.ring
        squares = squares or {}
        missing = [n for n in ring.names if n not in values and n not in squares
                   and self.degree_in(n) > 0]
        if missing:
            raise PolynomialError(f"no value for variables {missing}")
        cache: dict[tuple, object] = {}

        def powed(name, val, e):
            key = (name, e)
            hit = cache.get(key)
            if hit is None:
                hit = val ** e
                cache[key] = hit
            return hit

        total = None
        for exps, c in self.iter_terms():
            term = c
            for name, e in zip(ring.names, exps):
                if not e:
                    continue
                if name in squares:
                    if e % 2:
                        raise PolynomialError(f"odd exponent of {name} with square-only value")
                    term = term * powed(name, squares[name], e // 2)
                else:
                    term = term * powed(name, values[name], e)
            total = term if total is None else total + term
        return 0 if total is None else total

    def eval_partial(self, values: Mapping[str, object], squares: Mapping[str, object] | None = None) -> "MvPoly":
        """Substitute rational values for some variables, keeping the rest."""
        ring = self.ring
        squares = squares or {}
        vals = {ring.index[n]: _norm_coeff(v if isinstance(v, (int, Fraction)) else Fraction(v))
                for n, v in values.items()}
        sqs = {ring.index[n]: _norm_coeff(v if isinstance(v, (int, Fraction)) else Fraction(v))
               for n, v in squares.items()}
        out: dict = {}
        for exps, c in self.iter_terms():
            keep = 0
            coeff = c
            for i, e in enumerate(exps):
                if not e:
                    continue
                if i in vals:
                    coeff = coeff * vals[i] ** e
                elif i in sqs:
                    if e % 2:
                        raise PolynomialError("odd exponent with square-only value")
                    coeff = coeff * sqs[i] ** (e // 2)
                else:
                    keep |= e << ring.shifts[i]
            if not coeff:
                continue
            acc = out.get(keep)
            acc = coeff if acc is None else acc + coeff
            if acc:
                out[keep] = _norm_coeff(acc)
            else:
                del out[keep]
        return MvPoly(ring, out)

    def substitute(self, mapping: Mapping[str, "MvPoly"]) -> "MvPoly":
        """Substitute polynomials (of the same ring) for variables."""
        ring = self.ring
        idx = {ring.index[n]: p if isinstance(p, MvPoly) else ring.const(p)
               for n, p in mapping.items()}
        cache: dict[tuple, MvPoly] = {}

        def powed(i, e):
            key = (i, e)
            hit = cache.get(key)
            if hit is None:
                hit = idx[i] ** e
                cache[key] = hit
            return hit

        out = ring.zero()
        for exps, c in self.iter_terms():
            keep = 0
            factor = None
            for i, e in enumerate(exps):
                if not e:
                    continue
                if i in idx:
                    p = powed(i, e)
                    factor = p if factor is None else factor * p
                else:
                    keep |= e << ring.shifts[i]
            term = MvPoly(ring, {keep: c})
            out = out + (term * factor if factor is not None else term)
        return out

    def subs_fraction(self, name: str, num: "MvPoly", den: "MvPoly", formal_degree: int) -> "MvPoly":
        """Evaluate at name = num/den and clear den**formal_degree.

        Returns den**d * P(..., num/den, ...), the numerator of the rational
        substitution at the stated formal degree.
        """
        if self.degree_in(name) > formal_degree:
            raise PolynomialError("actual degree exceeds formal degree")
        out = self.ring.zero()
        for k, coeff in self.coeffs_in(name).items():
            out = out + coeff * num ** k * den ** (formal_degree - k)
        return out

    def map_vars(self, target: PolyRing, rename: Mapping[str, str] | None = None) -> "MvPoly":
        """Re-express in another ring; `rename` maps old names to new ones.

        Distinct old variables may map to the same new one (exponents add).
        """
        rename = rename or {}
        out: dict = {}
        for exps, c in self.iter_terms():
            vec = [0] * target.nvars
            for name, e in zip(self.ring.names, exps):
                if not e:
                    continue
                new = rename.get(name, name)
                vec[target.index[new]] += e
            code = target.pack(vec)
            acc = out.get(code)
            if acc is None:
                out[code] = c
            else:
                acc = acc + c
                if acc:
                    out[code] = acc
                else:
                    del out[code]
        return MvPoly(target, out)

    def content(self) -> Fraction:
        """Positive rational content (gcd of coefficients)."""
        from math import gcd

        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            f = Fraction(c)
            num = gcd(num, f.numerator)
            den = den * f.denominator // gcd(den, f.denominator)
        return Fraction(num, den)

    # -- printing ------------------------------------------------------
    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for exps, c in list(self.iter_terms())[:12]:
            mon = "*".join(f"{n}^{e}" if e > 1 else n
                           for n, e in zip(self.ring.names, exps) if e)
            bits.append(f"{c}" + (f"*{mon}" if mon else ""))
        s = " + ".join(bits)
        if len(self.terms) > 12:
            s += f" + ... ({len(self.terms)} terms)"
        return s


def _isqrt_exact(n: int):
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None
