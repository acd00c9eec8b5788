"""Pure-Python kernels for sparse polynomial term maps.

A polynomial is a dict mapping a packed exponent code (one Python int, each
variable in its own bit field) to a nonzero coefficient (int or Fraction).
Multiplying monomials is then a single integer addition of codes.  These
functions are the inner loops of every resultant computation; a Cython build
of the same interface lives in _kernels_cy.pyx.
"""
from __future__ import annotations

BACKEND = "python"


def add_terms(a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for e, c in b.items():
        acc = out.get(e)
        if acc is None:
            out[e] = c
        else:
            acc = acc + c
            if acc:
                out[e] = acc
            else:
                del out[e]
    return out


def sub_terms(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        acc = out.get(e)
        if acc is None:
            out[e] = -c
        else:
            acc = acc - c
            if acc:
                out[e] = acc
            else:
                del out[e]
    return out


def neg_terms(a: dict) -> dict:
    return {e: -c for e, c in a.items()}


def scale_terms(a: dict, coeff) -> dict:
    if not coeff:
        return {}
    return {e: c * coeff for e, c in a.items()}


def mul_terms(a: dict, b: dict) -> dict:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            acc = get(e)
            if acc is None:
                out[e] = ca * cb
            else:
                acc = acc + ca * cb
                if acc:
                    out[e] = acc
                else:
                    del out[e]
    return out


def addmul_terms(acc: dict, coeff, shift: int, src: dict) -> None:
    """In place: acc += coeff * X^shift * src."""
    get = acc.get
    for e, c in src.items():
        e = e + shift
        cur = get(e)
        if cur is None:
            acc[e] = coeff * c
        else:
            cur = cur + coeff * c
            if cur:
                acc[e] = cur
            else:
                del acc[e]


def div_terms(num: dict, den: dict, field_masks: tuple):
    """Exact division of term maps under lex order (largest code leads).

    Returns the quotient dict or None if the division is not exact.
    field_masks holds one mask per variable field for the borrow check.
    """
    import heapq

    if not den:
        raise ZeroDivisionError("division by zero polynomial")
    if not num:
        return {}
    from fractions import Fraction

    dcode = max(den)
    dc = den[dcode]
    rem = dict(num)
    quot: dict = {}
    heap = [-e for e in rem]
    heapq.heapify(heap)
    while heap:
        e = -heapq.heappop(heap)
        c = rem.get(e)
        if not c:
            continue
        q = e - dcode
        if q < 0:
            return None
        for m in field_masks:
            if (e & m) < (dcode & m):
                return None
        if isinstance(c, int) and isinstance(dc, int):
            qc, r = divmod(c, dc)
            if r:
                qc = Fraction(c, dc)
        else:
            qc = c / dc if isinstance(c, Fraction) else Fraction(c) / dc
        if isinstance(qc, Fraction) and qc.denominator == 1:
            qc = int(qc)
        quot[q] = qc
        del rem[e]
        for de, dv in den.items():
            if de == dcode:
                continue
            ne = q + de
            cur = rem.get(ne)
            if cur is None:
                rem[ne] = -qc * dv
                heapq.heappush(heap, -ne)
            else:
                cur = cur - qc * dv
                if cur:
                    rem[ne] = cur
                else:
                    del rem[ne]
    if rem:
        return None
    return quot
