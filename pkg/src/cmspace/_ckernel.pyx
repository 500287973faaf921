# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sweep kernel; mirrors ``_pykernel`` exactly.

Endpoint comparisons go straight to ``mpq_cmp`` on the gmpy2 payload.
Arithmetic (only needed for measures) stays on Python-level mpq objects
so that no GMP memory is ever allocated outside gmpy2's own allocator.
"""

from cpython.tuple cimport PyTuple_GET_SIZE, PyTuple_GET_ITEM
from gmpy2 cimport mpq, import_gmpy2

cdef extern from "gmp.h":
    int mpq_cmp "__gmpq_cmp" (const void *, const void *)

import_gmpy2()

from gmpy2 import mpq as _mpq

cdef enum:
    UNION = 0
    INTER = 1
    DIFF = 2
    SYMDIFF = 3

_ZERO = _mpq(0)


cdef inline int _cmp(object x, object y):
    return mpq_cmp(<void *>&(<mpq>x).q[0], <void *>&(<mpq>y).q[0])


cdef inline bint _op(int code, bint ina, bint inb):
    if code == UNION:
        return ina or inb
    if code == INTER:
        return ina and inb
    if code == DIFF:
        return ina and not inb
    return ina != inb


def combine(tuple a, tuple b, int code):
    cdef Py_ssize_t la = PyTuple_GET_SIZE(a), lb = PyTuple_GET_SIZE(b)
    cdef Py_ssize_t i = 0, j = 0
    cdef bint ina = False, inb = False, state = False, new
    cdef int c
    cdef object x, y
    cdef list out = []
    while i < la or j < lb:
        if i == la:
            if code == UNION or code == SYMDIFF:
                out.extend(b[j:])
            break
        if j == lb:
            if code != INTER:
                out.extend(a[i:])
            break
        x = <object>PyTuple_GET_ITEM(a, i)
        y = <object>PyTuple_GET_ITEM(b, j)
        c = _cmp(x, y)
        if c < 0:
            ina = not ina
            i += 1
        elif c > 0:
            x = y
            inb = not inb
            j += 1
        else:
            ina = not ina
            inb = not inb
            i += 1
            j += 1
        new = _op(code, ina, inb)
        if new != state:
            out.append(x)
            state = new
    return tuple(out)


def combine_measure(tuple a, tuple b, int code):
    cdef Py_ssize_t la = PyTuple_GET_SIZE(a), lb = PyTuple_GET_SIZE(b)
    cdef Py_ssize_t i = 0, j = 0
    cdef bint ina = False, inb = False, state = False, new
    cdef int c
    cdef object x, y
    cdef object total = _ZERO
    cdef object start = _ZERO
    cdef tuple rest
    while i < la or j < lb:
        if i == la or j == lb:
            rest = b[j:] if i == la else a[i:]
            if state:
                total += rest[0] - start
                rest = rest[1:]
            if code == UNION or code == SYMDIFF or (code == DIFF and j == lb):
                total += measure(rest)
            break
        x = <object>PyTuple_GET_ITEM(a, i)
        y = <object>PyTuple_GET_ITEM(b, j)
        c = _cmp(x, y)
        if c < 0:
            ina = not ina
            i += 1
        elif c > 0:
            x = y
            inb = not inb
            j += 1
        else:
            ina = not ina
            inb = not inb
            i += 1
            j += 1
        new = _op(code, ina, inb)
        if new != state:
            if new:
                start = x
            else:
                total += x - start
            state = new
    return total


def measure(tuple a):
    cdef Py_ssize_t k, n = PyTuple_GET_SIZE(a)
    cdef object total = _ZERO
    for k in range(0, n, 2):
        total += <object>PyTuple_GET_ITEM(a, k + 1) - <object>PyTuple_GET_ITEM(a, k)
    return total


def subset(tuple a, tuple b):
    cdef Py_ssize_t la = PyTuple_GET_SIZE(a), lb = PyTuple_GET_SIZE(b)
    cdef Py_ssize_t j = 0, k
    cdef object lo, hi
    for k in range(0, la, 2):
        lo = <object>PyTuple_GET_ITEM(a, k)
        hi = <object>PyTuple_GET_ITEM(a, k + 1)
        while j < lb and _cmp(<object>PyTuple_GET_ITEM(b, j + 1), lo) <= 0:
            j += 2
        if j == lb:
            return False
        if _cmp(<object>PyTuple_GET_ITEM(b, j), lo) > 0:
            return False
        if _cmp(<object>PyTuple_GET_ITEM(b, j + 1), hi) < 0:
            return False
    return True
