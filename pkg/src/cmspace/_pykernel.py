"""Pure-Python sweep kernel over canonical endpoint tuples.

A Lebesgue ring set is stored flat as ``(x1, x2, ..., x2k)`` with
``x1 < x2 < ... < x2k``, standing for ``[x1,x2) u [x3,x4) u ...``.  Every
function here takes and returns that layout.  Endpoints are ``gmpy2.mpq``.

This module and ``_ckernel.pyx`` must stay behaviourally identical; the
test suite runs both against each other.
"""

from gmpy2 import mpq

UNION, INTER, DIFF, SYMDIFF = 0, 1, 2, 3

_ZERO = mpq(0)


def _op(code, ina, inb):
    if code == UNION:
        return ina or inb
    if code == INTER:
        return ina and inb
    if code == DIFF:
        return ina and not inb
    return ina != inb


def combine(a, b, code):
    """Boolean combination of two canonical endpoint tuples."""
    la, lb = len(a), len(b)
    i = j = 0
    ina = inb = state = False
    out = []
    while i < la or j < lb:
        if i == la:
            if code == UNION or code == SYMDIFF:
                out.extend(b[j:])
            break
        if j == lb:
            if code != INTER:
                out.extend(a[i:])
            break
        x = a[i]
        y = b[j]
        if x < y:
            ina = not ina
            i += 1
        elif y < x:
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


def combine_measure(a, b, code):
    """Measure of ``combine(a, b, code)`` without building it."""
    la, lb = len(a), len(b)
    i = j = 0
    ina = inb = state = False
    total = _ZERO
    start = _ZERO
    while i < la or j < lb:
        if i == la or j == lb:
            # one side is exhausted; the output follows the other side's
            # remaining endpoints, possibly closing an open interval first
            rest = b[j:] if i == la else a[i:]
            if state:
                total += rest[0] - start
                rest = rest[1:]
            if code == UNION or code == SYMDIFF or (code == DIFF and j == lb):
                total += measure(rest)
            break
        x = a[i]
        y = b[j]
        if x < y:
            ina = not ina
            i += 1
        elif y < x:
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


def measure(a):
    total = _ZERO
    for k in range(0, len(a), 2):
        total += a[k + 1] - a[k]
    return total


def subset(a, b):
    """True iff the set coded by ``a`` is contained in the one coded by ``b``."""
    la, lb = len(a), len(b)
    j = 0
    for k in range(0, la, 2):
        lo = a[k]
        hi = a[k + 1]
        # skip intervals of b ending at or before lo
        while j < lb and b[j + 1] <= lo:
            j += 2
        if j == lb or b[j] > lo or b[j + 1] < hi:
            return False
    return True
