"""Exhausting covers ``C_1 ⊆ C_2 ⊆ ...`` of the whole space.

Both modes guarantee, for every ``n >= 1``::

    C_n ⊆ C_{n+1},   μ(C_{n+1} - C_n) >= 2**(n+1),   μ(C_1) >= 2,

with ``C_0 = ∅``, ``D_n = C_n - C_{n-1}`` and ``μ(D_n) >= 2**n``.

``generic`` runs the scan construction over the ring enumeration: ``C_1``
is the shortest prefix union of measure at least 2, and ``C_{n+1}`` the
shortest prefix union gaining at least ``2**(n+1)`` over ``C_n``.
``fast`` uses closed forms: ``[-2**n, 2**n)`` on the line and
``{0, ..., 2**(n+1) - 2}`` on the naturals.
"""

from __future__ import annotations

import threading

from gmpy2 import mpq

from . import budget
from .enumeration import enumerate_ring
from .ring import (
    COUNTING,
    LEBESGUE,
    RingSet,
    SpaceInstance,
    SpaceMismatch,
    exact_measure,
    get_space,
    is_subset,
    ring_difference,
    ring_union,
)

MODES = ("fast", "generic")


class CoverDivergence(RuntimeError):
    """The generic scan exceeded its guard; the space seems to have finite measure."""


class CoverSystem:
    def __init__(self, space: SpaceInstance, mode: str = "fast", max_scan: int = 10**7):
        if mode not in MODES:
            raise ValueError(f"unknown cover mode {mode!r}")
        self.space = space
        self.mode = mode
        self.max_scan = max_scan
        self._lock = threading.Lock()
        self._C: list[RingSet] = [RingSet.empty(space)]
        self._D: dict[int, RingSet] = {}
        self._mD: dict[int, mpq] = {}
        # generic scan state
        self._scan_index = 0
        self._scan_union = enumerate_ring(space, 0)
        self._scan_points: set[int] | None = set() if space is COUNTING else None
        self._stop: list[int] = [0]

    @property
    def descriptor(self) -> str:
        return self.mode

    def key(self) -> tuple[str, str]:
        return (self.space.id, self.mode)

    def __repr__(self):
        return f"CoverSystem({self.space.id}, {self.mode})"

    # --- C_n --------------------------------------------------------------

    def C(self, n: int) -> RingSet:
        if n < 0:
            raise ValueError("cover index must be nonnegative")
        if n < len(self._C):
            return self._C[n]
        with self._lock:
            while len(self._C) <= n:
                k = len(self._C)
                self._C.append(self._fast(k) if self.mode == "fast" else self._generic_next(k))
            return self._C[n]

    def D(self, n: int) -> RingSet:
        if n < 1:
            raise ValueError("D_n is defined for n >= 1")
        d = self._D.get(n)
        if d is None:
            d = ring_difference(self.C(n), self.C(n - 1))
            self._D[n] = d
        return d

    def measure_D(self, n: int) -> mpq:
        m = self._mD.get(n)
        if m is None:
            if self.mode == "fast":
                m = mpq(self._fast_D_measure(n))
            else:
                m = exact_measure(self.D(n))
            self._mD[n] = m
        return m

    def measure_C(self, n: int) -> mpq:
        if self.mode == "fast":
            if self.space is LEBESGUE:
                return mpq(2 ** (n + 1)) if n else mpq(0)
            return mpq(2 ** (n + 1) - 1) if n else mpq(0)
        return exact_measure(self.C(n))

    def scan_stop(self, n: int) -> int:
        """Enumeration index at which the generic scan closed ``C_n``."""
        if self.mode != "generic":
            raise ValueError("scan indices exist only for the generic cover")
        self.C(n)
        return self._stop[n]

    def _fast(self, n: int) -> RingSet:
        if n == 0:
            return RingSet.empty(self.space)
        if self.space is LEBESGUE:
            r = mpq(2**n)
            return RingSet(LEBESGUE, (-r, r))
        return RingSet(COUNTING, tuple(range(2 ** (n + 1) - 1)))

    def _fast_D_measure(self, n: int) -> int:
        if self.space is LEBESGUE:
            return 4 if n == 1 else 2**n
        return 3 if n == 1 else 2**n

    def _generic_next(self, n: int) -> RingSet:
        need = mpq(2) if n == 1 else mpq(2**n)
        gain = mpq(0)
        union = self._scan_union
        i = self._scan_index
        points = self._scan_points
        while gain < need:
            i += 1
            if i > self.max_scan:
                raise CoverDivergence(f"no C_{n} within {self.max_scan} enumeration steps")
            budget.charge(1, f"generic cover scan for C_{n}")
            e = enumerate_ring(self.space, i)
            if points is not None:
                # counting: a membership set keeps the scan linear
                fresh = [x for x in e.body if x not in points]
                points.update(fresh)
                gain += len(fresh)
                continue
            fresh = ring_difference(e, union)
            if not fresh.is_empty:
                # union ⊇ C_{n-1}, so fresh is disjoint from C_{n-1}
                gain += exact_measure(fresh)
                union = ring_union(union, fresh)
        if points is not None:
            union = RingSet(COUNTING, tuple(sorted(points)))
        self._scan_index = i
        self._scan_union = union
        self._stop.append(i)
        return union

    # --- locating ring sets -------------------------------------------------

    def locate(self, e: RingSet) -> int:
        """Least ``n >= 1`` with ``e ⊆ C_n``."""
        if e.space is not self.space:
            raise SpaceMismatch("ring set and cover live in different spaces")
        if e.is_empty:
            return 1
        if self.mode == "fast":
            return self._locate_fast(e)
        lo, hi = e.bounds()
        n = 1
        while True:
            c = self.C(n)
            b = c.bounds()
            # the bounds test is a cheap necessary condition
            if b is not None and b[0] <= lo and hi <= b[1] and is_subset(e, c):
                return n
            n += 1

    def _locate_fast(self, e: RingSet) -> int:
        if self.space is COUNTING:
            top = e.body[-1]
            n = 1
            while 2 ** (n + 1) - 2 < top:
                n += 1
            return n
        lo, hi = e.body[0], e.body[-1]
        r = max(-lo, hi)
        n = 1
        while 2**n < r:
            n += 1
        return n


_registry: dict[tuple[str, str], CoverSystem] = {}
_registry_lock = threading.Lock()


def get_cover(space, mode: str = "fast") -> CoverSystem:
    """Shared cover system for ``(space, mode)`` so memoized prefixes are reused."""
    if isinstance(space, str):
        space = get_space(space)
    key = (space.id, mode)
    with _registry_lock:
        cs = _registry.get(key)
        if cs is None:
            cs = _registry[key] = CoverSystem(space, mode)
        return cs


def build_fast(space) -> CoverSystem:
    return get_cover(space, "fast")


def build_generic(space) -> CoverSystem:
    return get_cover(space, "generic")
