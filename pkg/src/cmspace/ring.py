"""The countable generating ring and its notation.

Two concrete measure spaces are provided:

``LEBESGUE``
    The real line with Lebesgue measure.  Ring elements are finite unions
    of half-open intervals ``[lo, hi)`` with rational endpoints.
``COUNTING``
    The naturals with counting measure.  Ring elements are finite sets.

A :class:`RingSet` is always canonical (sorted, disjoint, non-adjacent
intervals; or strictly increasing naturals), so set equality is structural
equality and the notation ``decode`` has a decidable domain.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from gmpy2 import mpq

from . import kernel

Rat = mpq


def rat(x) -> mpq:
    """Coerce ints, Fractions, mpq or ``"p/q"`` strings to an exact mpq."""
    if isinstance(x, str):
        return _parse_rat(x, 0)[0]
    return mpq(x)


def fmt_rat(x) -> str:
    """Render a rational as ``p/q`` (denominator always written)."""
    x = mpq(x)
    return f"{x.numerator}/{x.denominator}"


class SpaceMismatch(ValueError):
    """Operands belong to different space instances."""


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


@dataclass(frozen=True)
class SpaceInstance:
    id: str
    descriptor: str

    def __repr__(self):
        return f"SpaceInstance({self.id})"

    def enumerate(self, n: int) -> "RingSet":
        from .enumeration import enumerate_ring

        return enumerate_ring(self, n)

    def index_of(self, e: "RingSet") -> int:
        from .enumeration import ring_index

        return ring_index(e)


LEBESGUE = SpaceInstance("lebesgue", "lebesgue-line")
COUNTING = SpaceInstance("counting", "counting-naturals")
SPACES = {LEBESGUE.id: LEBESGUE, COUNTING.id: COUNTING}


def get_space(name: str) -> SpaceInstance:
    for sp in SPACES.values():
        if name in (sp.id, sp.descriptor):
            return sp
    raise ValueError(f"unknown space {name!r}")


class Interval(NamedTuple):
    lo: mpq
    hi: mpq

    @classmethod
    def of(cls, lo, hi) -> "Interval":
        lo, hi = rat(lo), rat(hi)
        if not lo < hi:
            raise ValueError(f"empty interval [{lo}, {hi})")
        return cls(lo, hi)

    def __str__(self):
        return f"[{fmt_rat(self.lo)},{fmt_rat(self.hi)})"


class RingSet:
    """An element of the ring: immutable, canonical, exactly measured."""

    __slots__ = ("space", "body", "_hash")

    def __init__(self, space: SpaceInstance, body: tuple):
        # trusted constructor: ``body`` must already be canonical
        self.space = space
        self.body = body
        self._hash = None

    # construction -------------------------------------------------------

    @classmethod
    def empty(cls, space: SpaceInstance = LEBESGUE) -> "RingSet":
        return cls(space, ())

    @classmethod
    def from_intervals(cls, pairs: Iterable[Sequence]) -> "RingSet":
        """Canonical union of ``[lo, hi)`` pairs; empty pairs are rejected."""
        ivs = sorted(Interval.of(lo, hi) for lo, hi in pairs)
        flat: list = []
        for lo, hi in ivs:
            if flat and lo <= flat[-1]:
                if hi > flat[-1]:
                    flat[-1] = hi
            else:
                flat.extend((lo, hi))
        return cls(LEBESGUE, tuple(flat))

    @classmethod
    def from_naturals(cls, items: Iterable[int]) -> "RingSet":
        vals = set()
        for k in items:
            if int(k) != k or k < 0:
                raise ValueError(f"not a natural number: {k!r}")
            vals.add(int(k))
        return cls(COUNTING, tuple(sorted(vals)))

    @classmethod
    def from_endpoints(cls, flat: Sequence) -> "RingSet":
        """Lebesgue set from a flat strictly increasing endpoint sequence."""
        flat = tuple(rat(x) for x in flat)
        if len(flat) % 2 or any(not flat[i] < flat[i + 1] for i in range(len(flat) - 1)):
            raise ValueError("endpoints must be strictly increasing and of even count")
        return cls(LEBESGUE, flat)

    # views ----------------------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return not self.body

    def intervals(self) -> list[Interval]:
        if self.space is COUNTING:
            return [Interval(mpq(k), mpq(k + 1)) for k in self.body]
        b = self.body
        return [Interval(b[i], b[i + 1]) for i in range(0, len(b), 2)]

    def naturals(self) -> tuple[int, ...]:
        if self.space is not COUNTING:
            raise TypeError("naturals() is only defined on the counting instance")
        return self.body

    def __len__(self):
        """Number of components (intervals or points)."""
        return len(self.body) // 2 if self.space is LEBESGUE else len(self.body)

    def bounds(self):
        """(min, sup) of the set as rationals; None when empty."""
        if not self.body:
            return None
        if self.space is COUNTING:
            return mpq(self.body[0]), mpq(self.body[-1] + 1)
        return self.body[0], self.body[-1]

    def __eq__(self, other):
        if not isinstance(other, RingSet):
            return NotImplemented
        return self.space is other.space and self.body == other.body

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.space.id, self.body))
        return self._hash

    def __repr__(self):
        return f"RingSet({encode(self)!r})"

    def __str__(self):
        return encode(self)

    def contains(self, x) -> bool:
        """Pointwise membership (used by brute-force oracles)."""
        if self.space is COUNTING:
            return x in set(self.body)
        x = rat(x)
        b = self.body
        return any(b[i] <= x < b[i + 1] for i in range(0, len(b), 2))

    # operators delegate to the module functions
    def __or__(self, other):
        return ring_union(self, other)

    def __sub__(self, other):
        return ring_difference(self, other)

    def __and__(self, other):
        return ring_intersection(self, other)

    def __xor__(self, other):
        return ring_symdiff(self, other)

    def __le__(self, other):
        return is_subset(self, other)


def _check(a: RingSet, b: RingSet):
    if a.space is not b.space:
        raise SpaceMismatch(f"ring sets from {a.space.id} and {b.space.id} cannot be combined")


def _combine(a: RingSet, b: RingSet, code: int) -> RingSet:
    _check(a, b)
    if a.space is COUNTING:
        x, y = set(a.body), set(b.body)
        if code == kernel.UNION:
            r = x | y
        elif code == kernel.INTER:
            r = x & y
        elif code == kernel.DIFF:
            r = x - y
        else:
            r = x ^ y
        return RingSet(COUNTING, tuple(sorted(r)))
    return RingSet(LEBESGUE, kernel.combine(a.body, b.body, code))


def ring_union(a: RingSet, b: RingSet) -> RingSet:
    return _combine(a, b, kernel.UNION)


def ring_difference(a: RingSet, b: RingSet) -> RingSet:
    return _combine(a, b, kernel.DIFF)


def ring_intersection(a: RingSet, b: RingSet) -> RingSet:
    # same set as a - (a - b); computed in one sweep
    return _combine(a, b, kernel.INTER)


def ring_symdiff(a: RingSet, b: RingSet) -> RingSet:
    return _combine(a, b, kernel.SYMDIFF)


def exact_measure(a: RingSet) -> mpq:
    if a.space is COUNTING:
        return mpq(len(a.body))
    return kernel.measure(a.body)


def _op_measure(a: RingSet, b: RingSet, code: int) -> mpq:
    _check(a, b)
    if a.space is COUNTING:
        return exact_measure(_combine(a, b, code))
    return kernel.combine_measure(a.body, b.body, code)


def measure_difference(a: RingSet, b: RingSet) -> mpq:
    """``exact_measure(a - b)`` without materializing the difference."""
    return _op_measure(a, b, kernel.DIFF)


def measure_intersection(a: RingSet, b: RingSet) -> mpq:
    return _op_measure(a, b, kernel.INTER)


def measure_symdiff(a: RingSet, b: RingSet) -> mpq:
    return _op_measure(a, b, kernel.SYMDIFF)


def is_subset(a: RingSet, b: RingSet) -> bool:
    _check(a, b)
    if a.space is COUNTING:
        return set(a.body) <= set(b.body)
    return kernel.subset(a.body, b.body)


def ring_union_all(sets: Iterable[RingSet], space: SpaceInstance) -> RingSet:
    out = RingSet.empty(space)
    for s in sets:
        out = ring_union(out, s)
    return out


# --- text notation ---------------------------------------------------------

_RAT_RE = re.compile(r"(-?\d+)/(\d+)")
_NAT_RE = re.compile(r"\d+")


def _parse_rat(text: str, pos: int) -> tuple[mpq, int]:
    m = _RAT_RE.match(text, pos)
    if not m:
        raise ParseError("expected rational p/q", text, pos)
    num, den = int(m.group(1)), int(m.group(2))
    if den == 0:
        raise ParseError("zero denominator", text, m.start(2))
    q = mpq(num, den)
    if q.numerator != num or q.denominator != den:
        raise ParseError("rational not in lowest terms", text, pos)
    if m.group(1) != str(num) or m.group(2) != str(den):
        raise ParseError("non-canonical digits", text, pos)
    return q, m.end()


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos] in " \t":
        pos += 1
    return pos


def encode(a: RingSet) -> str:
    if a.space is COUNTING:
        return "N {" + ",".join(str(k) for k in a.body) + "}"
    parts = ["U"]
    b = a.body
    for i in range(0, len(b), 2):
        parts.append(f"[{fmt_rat(b[i])},{fmt_rat(b[i + 1])})")
    return " ".join(parts)


def decode(text: str) -> RingSet:
    """Inverse of :func:`encode`.  Only canonical encodings are accepted."""
    s = text.strip("\n")
    if s.startswith("U"):
        return _decode_lebesgue(s)
    if s.startswith("N"):
        return _decode_counting(s)
    raise ParseError("expected 'U' or 'N'", s, 0)


def parse_intervals(s: str, pos: int) -> tuple[list[Interval], int]:
    """Read ``[p/q,r/s)`` items starting at ``pos`` until none follows."""
    out = []
    pos = _skip_ws(s, pos)
    while pos < len(s) and s[pos] == "[":
        start = pos
        lo, pos = _parse_rat(s, pos + 1)
        pos = _skip_ws(s, pos)
        if pos >= len(s) or s[pos] != ",":
            raise ParseError("expected ','", s, pos)
        pos = _skip_ws(s, pos + 1)
        hi, pos = _parse_rat(s, pos)
        pos = _skip_ws(s, pos)
        if pos >= len(s) or s[pos] != ")":
            raise ParseError("expected ')'", s, pos)
        pos += 1
        if not lo < hi:
            raise ParseError("empty interval (lo >= hi)", s, start)
        out.append(Interval(lo, hi))
        pos = _skip_ws(s, pos)
    return out, pos


def parse_naturals(s: str, pos: int) -> tuple[list[int], int]:
    pos = _skip_ws(s, pos)
    if pos >= len(s) or s[pos] != "{":
        raise ParseError("expected '{'", s, pos)
    pos = _skip_ws(s, pos + 1)
    items: list[int] = []
    if pos < len(s) and s[pos] == "}":
        return items, pos + 1
    while True:
        m = _NAT_RE.match(s, pos)
        if not m:
            raise ParseError("expected natural number", s, pos)
        items.append(int(m.group()))
        pos = _skip_ws(s, m.end())
        if pos < len(s) and s[pos] == ",":
            pos = _skip_ws(s, pos + 1)
            continue
        if pos < len(s) and s[pos] == "}":
            return items, pos + 1
        raise ParseError("expected ',' or '}'", s, pos)


def _decode_lebesgue(s: str) -> RingSet:
    ivs, pos = parse_intervals(s, 1)
    if pos != len(s):
        raise ParseError("trailing input", s, pos)
    flat = []
    for lo, hi in ivs:
        if flat and lo <= flat[-1]:
            raise ParseError("intervals not sorted, disjoint and non-adjacent", s, 0)
        flat.extend((lo, hi))
    return RingSet(LEBESGUE, tuple(flat))


def _decode_counting(s: str) -> RingSet:
    items, pos = parse_naturals(s, 1)
    if _skip_ws(s, pos) != len(s):
        raise ParseError("trailing input", s, pos)
    if any(items[i] >= items[i + 1] for i in range(len(items) - 1)):
        raise ParseError("naturals must be strictly increasing", s, 0)
    return RingSet(COUNTING, tuple(items))
