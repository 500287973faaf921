"""Descriptors of measurable sets with certified ring approximations.

A scheme stands for a (generally non-ring) set ``A``.  What a name builder
needs from it is:

``local(cs, k, eps)``
    a ring set ``R ⊆ C_k`` with ``μ(R △ (A ∩ C_k)) <= eps``;
``tail_level(cs, eps)``  (finite-measure schemes)
    some ``k`` with ``μ(A - C_k) <= eps``;
``cotail_level(cs, eps)``  (schemes with finite-measure complement)
    some ``k`` with ``μ(A^c - C_k) <= eps``.

``finite`` and ``cofinite`` record whether ``μ(A)`` and ``μ(A^c)`` are
finite.  ``measure()`` returns the analytic value when it is known (None
for infinity) and is only used by tests and diagnostics.
"""

from __future__ import annotations

from gmpy2 import mpq

from .cover import CoverSystem
from .ring import (
    COUNTING,
    LEBESGUE,
    RingSet,
    SpaceInstance,
    exact_measure,
    ring_difference,
    ring_intersection,
    ring_union,
)

INF = None


class SetScheme:
    finite: bool = False
    cofinite: bool = False
    label: str = "scheme"

    def __init__(self, space: SpaceInstance):
        self.space = space

    def local(self, cs: CoverSystem, k: int, eps) -> RingSet:
        raise NotImplementedError

    def tail_level(self, cs: CoverSystem, eps) -> int:
        raise ValueError(f"{self.label} has infinite measure")

    def cotail_level(self, cs: CoverSystem, eps) -> int:
        raise ValueError(f"the complement of {self.label} has infinite measure")

    def measure(self):
        raise NotImplementedError(f"no analytic measure for {self.label}")

    def contains(self, x) -> bool:
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.label}>"


def _window(cs: CoverSystem, k: int):
    """(lo, hi) bounds of C_k."""
    b = cs.C(k).bounds()
    if b is None:
        return mpq(0), mpq(0)
    return b


class Ring(SetScheme):
    finite = True

    def __init__(self, e: RingSet):
        super().__init__(e.space)
        self.e = e
        self.label = str(e)

    def local(self, cs, k, eps):
        return ring_intersection(self.e, cs.C(k))

    def tail_level(self, cs, eps):
        return cs.locate(self.e)

    def measure(self):
        return exact_measure(self.e)

    def contains(self, x):
        return self.e.contains(x)


class Omega(SetScheme):
    cofinite = True
    label = "omega"

    def local(self, cs, k, eps):
        return cs.C(k)

    def cotail_level(self, cs, eps):
        return 1

    def measure(self):
        return INF

    def contains(self, x):
        return True


class Periodic(SetScheme):
    """``⋃_{j>=0} [start + j*period, start + j*period + width)``.

    On the naturals the blocks are sets of consecutive integers and all
    parameters must be integers.
    """

    def __init__(self, space, period, width, start=0, label=None):
        super().__init__(space)
        self.period, self.width, self.start = mpq(period), mpq(width), mpq(start)
        if not 0 < self.width <= self.period:
            raise ValueError("need 0 < width <= period")
        if space is COUNTING:
            if any(v.denominator != 1 for v in (self.period, self.width, self.start)) or self.start < 0:
                raise ValueError("counting blocks need natural parameters")
        self.label = label or f"periodic({self.period},{self.width},{self.start})"
        # a full-width pattern on the naturals leaves only {0..start-1} outside
        self.cofinite = space is COUNTING and self.width == self.period

    def local(self, cs, k, eps):
        lo, hi = _window(cs, k)
        P, w, s = self.period, self.width, self.start
        if self.space is COUNTING:
            P, w, s = int(P), int(w), int(s)
            top = int(hi)
            pts = [x for j0 in range(s, top, P) for x in range(j0, min(j0 + w, top))]
            return ring_intersection(RingSet(COUNTING, tuple(pts)), cs.C(k))
        flat = []
        x = s
        while x < hi:
            flat.extend((x, x + w))
            x += P
        if self.width == self.period and flat:
            flat = [flat[0], flat[-1]]
        return ring_intersection(RingSet(LEBESGUE, tuple(flat)), cs.C(k))

    def cotail_level(self, cs, eps):
        if not self.cofinite:
            return super().cotail_level(cs, eps)
        if self.start == 0:
            return 1
        return cs.locate(RingSet(COUNTING, tuple(range(int(self.start)))))

    def measure(self):
        return INF

    def contains(self, x):
        x = mpq(x)
        if x < self.start:
            return False
        return (x - self.start) % self.period < self.width


class HalfLine(Periodic):
    """``[a, ∞)`` (or ``{a, a+1, ...}``)."""

    def __init__(self, space, a=0):
        super().__init__(space, 1, 1, a, label=f"half-line({mpq(a)})" if a else "half-line")


class MonotoneUnion(SetScheme):
    """``A = ⋃_j stage(j)`` for increasing ring sets with a certified tail.

    ``tail(j)`` must be a nonincreasing rational upper bound on
    ``μ(A - stage(j))`` tending to zero; so ``A`` has finite measure.
    """

    finite = True
    CHECK = 64

    def __init__(self, space, stage, tail, label="monotone-union", value=None):
        super().__init__(space)
        self.stage = stage
        self.tail = tail
        self.label = label
        self._value = value
        prev = None
        for j in range(self.CHECK):
            t = mpq(tail(j))
            if t < 0 or (prev is not None and t > prev):
                raise ValueError(f"tail bound of {label} is not nonincreasing at stage {j}")
            prev = t

    def _stage_for(self, eps) -> int:
        j = 0
        while self.tail(j) > eps:
            j += 1
            if j > 10**6:
                raise RuntimeError(f"tail bound of {self.label} does not reach {eps}")
        return j

    def local(self, cs, k, eps):
        return ring_intersection(self.stage(self._stage_for(eps)), cs.C(k))

    def tail_level(self, cs, eps):
        return cs.locate(self.stage(self._stage_for(eps)))

    def measure(self):
        if self._value is None:
            raise NotImplementedError(self.label)
        return self._value


def geometric_pack(scale=1, step=1, offset=0) -> MonotoneUnion:
    """``⋃_{j>=0} [offset + j*step, offset + j*step + scale * 2**(-j-1))``; measure ``scale``."""
    scale, step, offset = mpq(scale), mpq(step), mpq(offset)
    if not 0 < scale <= step:
        raise ValueError("pieces must not overlap: need 0 < scale <= step")

    def stage(j):
        flat = []
        for i in range(j):
            lo = offset + i * step
            flat.extend((lo, lo + scale / 2 ** (i + 1)))
        return RingSet(LEBESGUE, _merge_adjacent(flat))

    def tail(j):
        return scale / 2**j

    name = "geometric-pack" if (scale, step, offset) == (1, 1, 0) else f"geometric-pack({scale},{step},{offset})"
    gp = MonotoneUnion(LEBESGUE, stage, tail, label=name, value=scale)
    gp.contains = lambda x: _gp_contains(mpq(x), scale, step, offset)
    return gp


def _gp_contains(x, scale, step, offset):
    if x < offset:
        return False
    i = int((x - offset) // step)
    lo = offset + i * step
    return x < lo + scale / 2 ** (i + 1)


def _merge_adjacent(flat):
    out = []
    for i in range(0, len(flat), 2):
        if out and out[-1] == flat[i]:
            out[-1] = flat[i + 1]
        else:
            out.extend((flat[i], flat[i + 1]))
    return tuple(out)


class Complement(SetScheme):
    def __init__(self, inner: SetScheme):
        super().__init__(inner.space)
        self.inner = inner
        self.finite = inner.cofinite
        self.cofinite = inner.finite
        self.label = f"~({inner.label})"

    def local(self, cs, k, eps):
        return ring_difference(cs.C(k), self.inner.local(cs, k, eps))

    def tail_level(self, cs, eps):
        if not self.finite:
            return super().tail_level(cs, eps)
        return self.inner.cotail_level(cs, eps)

    def cotail_level(self, cs, eps):
        if not self.cofinite:
            return super().cotail_level(cs, eps)
        return self.inner.tail_level(cs, eps)

    def measure(self):
        if not self.finite:
            return INF
        raise NotImplementedError(self.label)

    def contains(self, x):
        return not self.inner.contains(x)


class Union(SetScheme):
    def __init__(self, a: SetScheme, b: SetScheme):
        super().__init__(a.space)
        self.a, self.b = a, b
        self.finite = a.finite and b.finite
        self.cofinite = a.cofinite or b.cofinite
        self.label = f"({a.label} | {b.label})"

    def local(self, cs, k, eps):
        return ring_union(self.a.local(cs, k, eps / 2), self.b.local(cs, k, eps / 2))

    def tail_level(self, cs, eps):
        if not self.finite:
            return super().tail_level(cs, eps)
        return max(self.a.tail_level(cs, eps / 2), self.b.tail_level(cs, eps / 2))

    def measure(self):
        if not self.finite:
            return INF
        raise NotImplementedError(self.label)

    def contains(self, x):
        return self.a.contains(x) or self.b.contains(x)


class Intersection(SetScheme):
    def __init__(self, a: SetScheme, b: SetScheme):
        super().__init__(a.space)
        self.a, self.b = a, b
        self.finite = a.finite or b.finite
        self.cofinite = a.cofinite and b.cofinite
        self.label = f"({a.label} & {b.label})"

    def local(self, cs, k, eps):
        return ring_intersection(self.a.local(cs, k, eps / 2), self.b.local(cs, k, eps / 2))

    def tail_level(self, cs, eps):
        if self.a.finite:
            return self.a.tail_level(cs, eps)
        if self.b.finite:
            return self.b.tail_level(cs, eps)
        return super().tail_level(cs, eps)

    def contains(self, x):
        return self.a.contains(x) and self.b.contains(x)


BUILTINS = ("geometric-pack", "evens", "odds", "half-line", "omega", "empty")


def builtin(name: str, space: SpaceInstance) -> SetScheme:
    if name == "omega":
        return Omega(space)
    if name == "empty":
        return Ring(RingSet.empty(space))
    if name == "evens":
        return Periodic(space, 2, 1, 0, label="evens")
    if name == "odds":
        return Periodic(space, 2, 1, 1, label="odds")
    if name == "half-line":
        return HalfLine(space)
    if name == "geometric-pack":
        if space is not LEBESGUE:
            raise ValueError("geometric-pack exists only on the Lebesgue line")
        return geometric_pack()
    raise KeyError(name)
