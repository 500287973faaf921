"""A deterministic bijection between the naturals and the ring.

Index 0 is the empty set.  Odd indices ``2j+1`` list a *growth family*
(unit intervals ``[z, z+1)`` in zigzag order ``0, -1, 1, -2, ...`` on the
line; singletons ``{j}`` on the naturals).  Even indices ``2i+2`` list
every other non-empty ring set in *standard order*, skipping members of the
growth family so the whole map stays injective.

Standard order
--------------
Counting: index ``s >= 1`` is the set of bit positions of ``s``.

Lebesgue: a non-empty canonical set ``[x1,x1+L1) u [x1+L1+g2, ...)`` is
the sequence of pairs ``(x1, L1), (g2, L2), ...`` with ``x1`` rational and
all gaps and lengths positive rationals.  Pairs are folded with the Cantor
pairing ``pi``::

    code(())               = 0
    code((a, b) :: rest)   = 1 + pi(pi(a, b), code(rest))

Positive rationals are indexed by height ``p + q`` then by ``p``
(reduced fractions only); all rationals by ``0, +r0, -r0, +r1, -r1, ...``.

Interleaving the growth family keeps prefix unions growing linearly in
measure, which is what the generic cover construction scans for.
"""

from __future__ import annotations

import bisect
from math import gcd, isqrt

from gmpy2 import mpq

from .ring import COUNTING, LEBESGUE, RingSet, SpaceInstance

# --- pairing ---------------------------------------------------------------


def pair(a: int, b: int) -> int:
    s = a + b
    return s * (s + 1) // 2 + b


def unpair(z: int) -> tuple[int, int]:
    w = (isqrt(8 * z + 1) - 1) // 2
    b = z - w * (w + 1) // 2
    return w - b, b


# --- rationals -------------------------------------------------------------

_phi = [0, 0]  # _phi[h] = Euler phi(h) for h >= 2
_cum = [0, 0]  # _cum[h] = number of positive rationals of height <= h


def _totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _extend_heights(h: int) -> None:
    while len(_cum) <= h:
        k = len(_cum)
        _phi.append(_totient(k))
        _cum.append(_cum[-1] + _phi[k])


def pos_rational(i: int) -> mpq:
    """The ``i``-th positive rational (0-based)."""
    if i < 0:
        raise ValueError("index must be nonnegative")
    while _cum[-1] <= i:
        _extend_heights(2 * len(_cum))
    h = bisect.bisect_right(_cum, i)
    r = i - _cum[h - 1]
    for p in range(1, h):
        if gcd(p, h) == 1:
            if r == 0:
                return mpq(p, h - p)
            r -= 1
    raise AssertionError("unreachable")


def pos_index(q) -> int:
    q = mpq(q)
    if q <= 0:
        raise ValueError("not a positive rational")
    p, d = int(q.numerator), int(q.denominator)
    h = p + d
    _extend_heights(h)
    return _cum[h - 1] + sum(1 for k in range(1, p) if gcd(k, h) == 1)


def rational(i: int) -> mpq:
    if i == 0:
        return mpq(0)
    r = pos_rational((i - 1) // 2)
    return r if i % 2 else -r


def rational_index(q) -> int:
    q = mpq(q)
    if q == 0:
        return 0
    if q > 0:
        return 2 * pos_index(q) + 1
    return 2 * pos_index(-q) + 2


# --- standard order of non-empty ring sets ---------------------------------


def _std_decode_lebesgue(s: int) -> RingSet:
    pairs = []
    code = s
    while code:
        head, code = unpair(code - 1)
        pairs.append(unpair(head))
    flat = []
    a, b = pairs[0]
    x = rational(a)
    flat.extend((x, x + pos_rational(b)))
    for a, b in pairs[1:]:
        x = flat[-1] + pos_rational(a)
        flat.extend((x, x + pos_rational(b)))
    return RingSet(LEBESGUE, tuple(flat))


def _std_encode_lebesgue(e: RingSet) -> int:
    b = e.body
    pairs = [(rational_index(b[0]), pos_index(b[1] - b[0]))]
    for k in range(2, len(b), 2):
        pairs.append((pos_index(b[k] - b[k - 1]), pos_index(b[k + 1] - b[k])))
    code = 0
    for a, c in reversed(pairs):
        code = 1 + pair(pair(a, c), code)
    return code


def _std_decode_counting(s: int) -> RingSet:
    return RingSet(COUNTING, tuple(k for k in range(s.bit_length()) if s >> k & 1))


def _std_encode_counting(e: RingSet) -> int:
    return sum(1 << k for k in e.body)


# --- growth family ---------------------------------------------------------


def _zigzag(j: int) -> int:
    return j // 2 if j % 2 == 0 else -(j + 1) // 2


def _unzigzag(z: int) -> int:
    return 2 * z if z >= 0 else -2 * z - 1


def _family_member(space: SpaceInstance, j: int) -> RingSet:
    if space is COUNTING:
        return RingSet(COUNTING, (j,))
    z = _zigzag(j)
    return RingSet(LEBESGUE, (mpq(z), mpq(z + 1)))


def _family_rank(e: RingSet):
    """Rank of ``e`` within the growth family, or None."""
    if e.space is COUNTING:
        return e.body[0] if len(e.body) == 1 else None
    b = e.body
    if len(b) == 2 and b[0].denominator == 1 and b[1] - b[0] == 1:
        return _unzigzag(int(b[0]))
    return None


def _tri(a: int) -> int:
    return a * (a + 1) // 2


def _family_count(space: SpaceInstance, s: int) -> int:
    """How many growth-family members have standard index <= s."""
    if s < 1:
        return 0
    if space is COUNTING:
        return s.bit_length()
    # the unit interval at z has standard index 1 + T(T(rational_index(z)));
    # invert T twice to get the largest admissible rational index
    bound = _inv_tri(_inv_tri(s - 1))
    # integer k >= 1 has rational index 2*_cum[k+1] - 1, and -k the next one
    count = 1
    k = 1
    while True:
        _extend_heights(k + 1)
        first = 2 * _cum[k + 1] - 1
        if first > bound:
            return count
        count += 2 if first + 1 <= bound else 1
        k += 1


def _inv_tri(x: int) -> int:
    """Largest y with T(y) <= x."""
    return (isqrt(8 * x + 1) - 1) // 2


def _nonfamily_rank(space: SpaceInstance, s: int) -> int:
    """Number of non-family, non-empty sets with standard index in 1..s."""
    return s - _family_count(space, s)


def _nth_nonfamily(space: SpaceInstance, i: int) -> int:
    target = i + 1
    s = target
    while True:
        g = _nonfamily_rank(space, s)
        if g == target:
            return s
        s += target - g


def _std_decode(space: SpaceInstance, s: int) -> RingSet:
    return _std_decode_counting(s) if space is COUNTING else _std_decode_lebesgue(s)


def _std_encode(e: RingSet) -> int:
    return _std_encode_counting(e) if e.space is COUNTING else _std_encode_lebesgue(e)


def enumerate_ring(space: SpaceInstance, n: int) -> RingSet:
    """The ``n``-th ring set of ``space``."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    if n == 0:
        return RingSet.empty(space)
    if n % 2:
        return _family_member(space, (n - 1) // 2)
    return _std_decode(space, _nth_nonfamily(space, n // 2 - 1))


def ring_index(e: RingSet) -> int:
    """Inverse of :func:`enumerate_ring`."""
    if e.is_empty:
        return 0
    j = _family_rank(e)
    if j is not None:
        return 2 * j + 1
    s = _std_encode(e)
    return 2 * _nonfamily_rank(e.space, s)
