# cython: language_level=3, boundscheck=False, wraparound=False
"""Cython kernels for sparse polynomial term maps.

Same interface as _kernels_py: dicts map packed exponent codes (Python ints)
to nonzero int/Fraction coefficients.  Coefficients stay arbitrary-precision
Python objects; the win comes from running the dict traversal and hash-map
accumulation loops in C.
"""
from cpython.dict cimport PyDict_GetItem, PyDict_SetItem, PyDict_DelItem, PyDict_Next
from cpython.object cimport PyObject
from cpython.ref cimport Py_INCREF


BACKEND = "cython"


def add_terms(dict a, dict b):
    cdef dict out
    cdef Py_ssize_t pos = 0
    cdef PyObject *key
    cdef PyObject *val
    cdef object e, c, acc
    cdef PyObject *hit
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    while PyDict_Next(b, &pos, &key, &val):
        e = <object>key
        c = <object>val
        hit = PyDict_GetItem(out, e)
        if hit == NULL:
            PyDict_SetItem(out, e, c)
        else:
            acc = (<object>hit) + c
            if acc:
                PyDict_SetItem(out, e, acc)
            else:
                PyDict_DelItem(out, e)
    return out


def sub_terms(dict a, dict b):
    cdef dict out = dict(a)
    cdef Py_ssize_t pos = 0
    cdef PyObject *key
    cdef PyObject *val
    cdef object e, c, acc
    cdef PyObject *hit
    while PyDict_Next(b, &pos, &key, &val):
        e = <object>key
        c = <object>val
        hit = PyDict_GetItem(out, e)
        if hit == NULL:
            PyDict_SetItem(out, e, -c)
        else:
            acc = (<object>hit) - c
            if acc:
                PyDict_SetItem(out, e, acc)
            else:
                PyDict_DelItem(out, e)
    return out


def neg_terms(dict a):
    cdef dict out = {}
    cdef Py_ssize_t pos = 0
    cdef PyObject *key
    cdef PyObject *val
    while PyDict_Next(a, &pos, &key, &val):
        PyDict_SetItem(out, <object>key, -(<object>val))
    return out


def scale_terms(dict a, coeff):
    cdef dict out = {}
    cdef Py_ssize_t pos = 0
    cdef PyObject *key
    cdef PyObject *val
    if not coeff:
        return out
    while PyDict_Next(a, &pos, &key, &val):
        PyDict_SetItem(out, <object>key, (<object>val) * coeff)
    return out


def mul_terms(dict a, dict b):
    cdef dict out = {}
    cdef Py_ssize_t pos_a, pos_b
    cdef PyObject *ka
    cdef PyObject *va
    cdef PyObject *kb
    cdef PyObject *vb
    cdef PyObject *hit
    cdef object e, acc, ea, ca
    if not a or not b:
        return out
    if len(a) > len(b):
        a, b = b, a
    pos_a = 0
    while PyDict_Next(a, &pos_a, &ka, &va):
        ea = <object>ka
        ca = <object>va
        pos_b = 0
        while PyDict_Next(b, &pos_b, &kb, &vb):
            e = ea + (<object>kb)
            hit = PyDict_GetItem(out, e)
            if hit == NULL:
                PyDict_SetItem(out, e, ca * (<object>vb))
            else:
                acc = (<object>hit) + ca * (<object>vb)
                if acc:
                    PyDict_SetItem(out, e, acc)
                else:
                    PyDict_DelItem(out, e)
    return out


def addmul_terms(dict acc, coeff, shift, dict src):
    """In place: acc += coeff * X^shift * src."""
    cdef Py_ssize_t pos = 0
    cdef PyObject *key
    cdef PyObject *val
    cdef PyObject *hit
    cdef object e, cur
    while PyDict_Next(src, &pos, &key, &val):
        e = (<object>key) + shift
        hit = PyDict_GetItem(acc, e)
        if hit == NULL:
            PyDict_SetItem(acc, e, coeff * (<object>val))
        else:
            cur = (<object>hit) + coeff * (<object>val)
            if cur:
                PyDict_SetItem(acc, e, cur)
            else:
                PyDict_DelItem(acc, e)


cdef inline bint _lt(list heap, Py_ssize_t i, Py_ssize_t j):
    # max-heap on Python ints: "greater than" comparison
    return (<object>heap[i]) > (<object>heap[j])


cdef void _heap_push(list heap, object item):
    cdef Py_ssize_t pos = len(heap)
    cdef Py_ssize_t parent
    heap.append(item)
    while pos > 0:
        parent = (pos - 1) >> 1
        if _lt(heap, pos, parent):
            heap[pos], heap[parent] = heap[parent], heap[pos]
            pos = parent
        else:
            break


cdef object _heap_pop(list heap):
    cdef Py_ssize_t n = len(heap) - 1
    cdef Py_ssize_t pos = 0
    cdef Py_ssize_t child
    top = heap[0]
    last = heap.pop()
    if n == 0:
        return top
    heap[0] = last
    while True:
        child = 2 * pos + 1
        if child >= n:
            break
        if child + 1 < n and _lt(heap, child + 1, child):
            child += 1
        if _lt(heap, child, pos):
            heap[pos], heap[child] = heap[child], heap[pos]
            pos = child
        else:
            break
    return top


def div_terms(dict num, dict den, tuple field_masks):
    """Exact division of term maps under lex order; None if not exact."""
    from fractions import Fraction

    cdef dict rem, quot
    cdef list heap
    cdef Py_ssize_t pos
    cdef PyObject *key
    cdef PyObject *val
    cdef PyObject *hit
    cdef object e, c, q, qc, dcode, dc, ne, cur, m, de, dv, r
    if not den:
        raise ZeroDivisionError("division by zero polynomial")
    if not num:
        return {}
    dcode = max(den)
    dc = den[dcode]
    rem = dict(num)
    quot = {}
    heap = list(rem)
    # heapify (max-heap)
    cdef Py_ssize_t i
    for i in range(len(heap) // 2 - 1, -1, -1):
        _sift(heap, i)
    cdef bint dc_int = isinstance(dc, int)
    while heap:
        e = _heap_pop(heap)
        hit = PyDict_GetItem(rem, e)
        if hit == NULL:
            continue
        c = <object>hit
        q = e - dcode
        if q < 0:
            return None
        for m in field_masks:
            if (e & m) < (dcode & m):
                return None
        if dc_int and isinstance(c, int):
            qc, r = divmod(c, dc)
            if r:
                qc = Fraction(c, dc)
        else:
            qc = (c if isinstance(c, Fraction) else Fraction(c)) / dc
        if isinstance(qc, Fraction) and qc.denominator == 1:
            qc = int(qc)
        PyDict_SetItem(quot, q, qc)
        PyDict_DelItem(rem, e)
        pos = 0
        while PyDict_Next(den, &pos, &key, &val):
            de = <object>key
            if de == dcode:
                continue
            ne = q + de
            hit = PyDict_GetItem(rem, ne)
            if hit == NULL:
                PyDict_SetItem(rem, ne, -qc * (<object>val))
                _heap_push(heap, ne)
            else:
                cur = (<object>hit) - qc * (<object>val)
                if cur:
                    PyDict_SetItem(rem, ne, cur)
                else:
                    PyDict_DelItem(rem, ne)
    if rem:
        return None
    return quot


cdef void _sift(list heap, Py_ssize_t pos):
    cdef Py_ssize_t n = len(heap)
    cdef Py_ssize_t child
    while True:
        child = 2 * pos + 1
        if child >= n:
            break
        if child + 1 < n and _lt(heap, child + 1, child):
            child += 1
        if _lt(heap, child, pos):
            heap[pos], heap[child] = heap[child], heap[pos]
            pos = child
        else:
            break
