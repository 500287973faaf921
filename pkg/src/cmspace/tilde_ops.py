"""The induced probability ``μ̃`` and operations on δ_μ̃ names.

``μ̃(A) = Σ_n μ(A ∩ D_n) / μ(D_n) · 2**-n``.  Since ``μ(D_n) >= 2**n`` this
gives ``μ̃(S) <= μ(S) / 4`` and ``μ̃(Ω - C_m) = 2**-m`` exactly, which is
all the shift constants below rely on.
"""

from __future__ import annotations

from gmpy2 import mpq

from .names import (
    MuName,
    RealStream,
    TildeName,
    mu_tilde_ring,
    same_cover,
    two_pow,
)
from .ring import (
    measure_intersection,
    ring_difference,
    ring_intersection,
    ring_union,
)
from .streams import LazyStream

__all__ = [
    "mu_tilde_ring",
    "mu_tilde_of",
    "mu_restricted",
    "mu_lower",
    "reduce_mu_to_tilde",
    "tilde_union",
    "tilde_intersection",
    "tilde_difference",
    "tilde_complement",
]


def mu_tilde_of(a: TildeName) -> RealStream:
    """Intervals ``[μ̃(A_n) - 2**-n, μ̃(A_n) + 2**-n]`` clipped to ``[0, 1]``."""
    cs = a.cover

    def step(n):
        v, e = mu_tilde_ring(cs, a[n]), two_pow(-n)
        return (max(mpq(0), v - e), min(mpq(1), v + e))

    return RealStream("interval", step)


def _weight(cs, n: int) -> mpq:
    """``Σ_{k<=n} 2**k μ(D_k)``: ``μ(A ∩ C_n)`` is known to ``2**-m`` times this from ``A_m``."""
    return sum((two_pow(k) * cs.measure_D(k) for k in range(1, n + 1)), mpq(0))


def _restricted_depth(cs, n: int, t: int) -> int:
    """Least name depth ``m >= 1`` with ``2**-m * weight(n) <= 2**-t``."""
    w = _weight(cs, n) * two_pow(t)
    m = 1
    while two_pow(m) < w:
        m += 1
    return m


def mu_restricted(a: TildeName, n: int) -> RealStream:
    """Intervals for ``μ(A ∩ C_n)``; term ``t`` has width at most ``2 * 2**-t``.

    ``μ̃(A △ A_m) <= 2**-m`` bounds ``μ((A △ A_m) ∩ D_k)`` by
    ``2**(k-m) μ(D_k)``; summing over ``k <= n`` gives the error.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    cs = a.cover
    cn = cs.C(n)
    top = cs.measure_C(n)
    w = _weight(cs, n)

    def step(t):
        m = _restricted_depth(cs, n, t)
        v = measure_intersection(a[m], cn)
        e = w * two_pow(-m)
        return (max(mpq(0), v - e), min(top, v + e))

    return RealStream("interval", step)


def mu_lower(a: TildeName) -> RealStream:
    """Nondecreasing rationals converging to ``μ(A)`` from below.

    Term ``t`` is the running maximum over ``n <= t`` of
    ``μ(A_t ∩ C_n) - 2**-t · weight(n)``, a lower bound for
    ``μ(A ∩ C_n) <= μ(A)``.  For each fixed ``n`` the error vanishes as
    ``t`` grows and ``μ(A ∩ C_n)`` increases to ``μ(A)``.
    """
    cs = a.cover
    best = [mpq(0)]

    def step(t):
        at, e = a[t], two_pow(-t)
        cur = best[-1]
        for n in range(1, t + 1):
            cur = max(cur, measure_intersection(at, cs.C(n)) - e * _weight(cs, n))
        best.append(cur)
        return cur

    return RealStream("lower", step)


def reduce_mu_to_tilde(a: MuName) -> TildeName:
    """Term ``n`` is ``A_{n+2}``.

    For ``n < m`` the symmetric difference of ``A_{n+2}`` and ``A_{m+2}``
    has measure at most ``2**(-n-1)`` inside ``C_{n+2}`` in either regime,
    worth ``2**(-n-3)`` under ``μ̃``; outside ``C_{n+2}`` at most
    ``μ̃(Ω - C_{n+2}) = 2**(-n-2)``.
    """
    return TildeName(a.cover, LazyStream(lambda n: a[n + 2]), a.label, a.scheme, a.promises)


def _binary(op, sym):
    def build(a: TildeName, b: TildeName) -> TildeName:
        cs = same_cover(a, b)
        return TildeName(cs, LazyStream(lambda n: op(a[n + 1], b[n + 1])),
                         f"({a.label} {sym} {b.label})", None, a.promises | b.promises)

    return build


# μ̃((X_{n+1} ⋄ Y_{n+1}) △ (X ⋄ Y)) <= μ̃(X_{n+1} △ X) + μ̃(Y_{n+1} △ Y) <= 2**-n
tilde_union = _binary(ring_union, "|")
tilde_intersection = _binary(ring_intersection, "&")
tilde_difference = _binary(ring_difference, "\\")
tilde_union.__name__ = "tilde_union"
tilde_intersection.__name__ = "tilde_intersection"
tilde_difference.__name__ = "tilde_difference"


def tilde_complement(a: TildeName) -> TildeName:
    """Term ``n`` is ``C_{n+2} - A_{n+2}``; total, unlike its δ_μ counterpart."""
    cs = a.cover
    return TildeName(cs, LazyStream(lambda n: ring_difference(cs.C(n + 2), a[n + 2])),
                     f"~{a.label}", None, a.promises)

