"""Measure and set operations on δ_μ names.

Union and measure evaluation are total.  Intersection, difference and
complement are partial: they are correct on their promise domains and
otherwise may search forever.  Every search charges a per-term
:class:`~cmspace.budget.StepBudget`, so divergence ends in
:class:`~cmspace.budget.BudgetExhausted` naming the operation; no term is
ever emitted that was not certified.

Schedules (``j``, ``i``, ``p``, ``q``, ``m`` below) are chosen so that each
output stream meets the modulus conditions of its regime; the comments at
each builder give the bound.
"""

from __future__ import annotations

from gmpy2 import mpq

from . import budget
from .budget import DEFAULT_STEPS, StepBudget
from .names import (
    FINITE,
    INFINITE,
    MuName,
    RealStream,
    same_cover,
    two_pow,
)
from .ring import (
    exact_measure,
    measure_difference,
    measure_intersection,
    ring_difference,
    ring_intersection,
    ring_union,
)
from .schemes import Complement, Intersection, Union
from .streams import LazyStream

# promise tags of the partial operations
MEET = "finite-or-inf-meet"
DIFF = "finite-or-inf-diff"
COCO = "finite-or-coco"
PROMISE_TAGS = (MEET, DIFF, COCO)


def _guarded(step, limit: int):
    def run(n):
        with StepBudget(limit):
            return step(n)

    return LazyStream(run)


def _probe(where: str, *sets):
    budget.charge(1 + sum(len(s) for s in sets), where)


def _regime(a: MuName) -> str:
    # the header is redundant with the stream; trust it (validators cross-check)
    return a.regime


def _promises(*names, tag=None):
    out = set()
    for nm in names:
        out |= nm.promises
    if tag:
        out.add(tag)
    return out


def _scheme(kind, *names):
    if any(nm.scheme is None for nm in names):
        return None
    return kind(*(nm.scheme for nm in names))


# --- measure ---------------------------------------------------------------


def mu_of(a: MuName) -> RealStream:
    """Intervals for ``μ(A)``; ``[2**n, ∞]`` escalation for infinite measure.

    Finite: the limit of ``μ(A_n △ A_m) <= 2**-n`` gives
    ``|μ(A_n) - μ(A)| <= 2**-n``.
    """
    if a.regime == FINITE:
        def step(n):
            v, e = exact_measure(a[n]), two_pow(-n)
            return (max(mpq(0), v - e), v + e)
    else:
        def step(n):
            a[n]  # a budget failure must surface before claiming more
            return (two_pow(n), None)
    return RealStream("interval", step)


# --- union -----------------------------------------------------------------


def union(a: MuName, b: MuName, step_budget: int = DEFAULT_STEPS) -> MuName:
    """Term ``n`` is ``A_{n+1} ∪ B_{n+1}``.

    The shift halves each input's modulus, and both the ``-`` and the
    ``∩ C_n -`` conditions are subadditive over ``∪``.
    """
    cs = same_cover(a, b)
    regime = INFINITE if INFINITE in (a.regime, b.regime) else FINITE

    def step(n):
        return ring_union(a[n + 1], b[n + 1])

    return MuName(cs, regime, _guarded(step, step_budget), f"({a.label} | {b.label})",
                  _scheme(Union, a, b), _promises(a, b))


# --- intersection and difference ----------------------------------------------


def _finite_schedule(fin: MuName, other: MuName, n: int):
    """(j, i) with ``μ(T_n △ target) <= 2**(-n-1)`` for ``T_n = F_j ⋄ O_i``.

    ``j = n+2`` bounds the finite side by ``2**(-n-2)``.  Since
    ``F_j ⊆ C_k`` with ``k = locate(F_j)`` and ``i >= k``, the other side only
    matters inside ``C_i``, where it is off by at most ``2 * 2**-i``;
    ``i >= n+3`` makes that ``2**(-n-2)``.
    """
    j = n + 2
    k = fin.cover.locate(fin[j])
    return j, max(j + 1, k)


def intersection(a: MuName, b: MuName, promise: str | None = None,
                 step_budget: int = DEFAULT_STEPS) -> MuName:
    """``A ∩ B`` when ``A`` or ``B`` has finite measure, or ``A ∩ B`` has infinite measure."""
    cs = same_cover(a, b)
    label = f"({a.label} & {b.label})"
    scheme = _scheme(Intersection, a, b)
    proms = _promises(a, b, tag=promise)
    ra, rb = _regime(a), _regime(b)

    if FINITE in (ra, rb):
        fin, oth = (a, b) if ra == FINITE else (b, a)

        def step(n):
            j, i = _finite_schedule(fin, oth, n)
            return ring_intersection(fin[j], oth[i])

        return MuName(cs, FINITE, _guarded(step, step_budget), label, scheme, proms)

    # both infinite: T_n = A_p ∩ B_p with p >= n+1 nondecreasing; each input
    # contributes 2**-p to both modulus conditions, so 2 * 2**-p <= 2**-n
    where = f"intersection {label}"
    last = [1]

    def step_inf(n):
        p = max(n + 1, last[-1])
        need = two_pow(n)
        while True:
            x, y = a[p], b[p]
            _probe(f"{where}, term {n}, probe {p}", x, y)
            if measure_intersection(x, y) >= need:
                last.append(p)
                return ring_intersection(x, y)
            p += 1

    return MuName(cs, INFINITE, _guarded(step_inf, step_budget), label, scheme, proms)


def difference(a: MuName, b: MuName, promise: str | None = None,
               step_budget: int = DEFAULT_STEPS) -> MuName:
    """``A - B`` when ``A`` has finite measure, or ``A - B`` has infinite measure."""
    cs = same_cover(a, b)
    label = f"({a.label} \\ {b.label})"
    scheme = None if a.scheme is None or b.scheme is None else Intersection(a.scheme, Complement(b.scheme))
    proms = _promises(a, b, tag=promise)

    if _regime(a) == FINITE:
        def step(n):
            j, i = _finite_schedule(a, b, n)
            return ring_difference(a[j], b[i])

        return MuName(cs, FINITE, _guarded(step, step_budget), label, scheme, proms)

    # T_n = A_p - B_q, p >= n+1 and q >= max(p, locate(A_p)) both nondecreasing.
    # T_n - T_m ⊆ (A_p - A_p') ∪ (B_q' ∩ C_q - B_q), and
    # T_m ∩ C_n - T_n ⊆ (A_p' ∩ C_p - A_p) ∪ (B_q - B_q'); each piece <= 2**-p.
    where = f"difference {label}"
    state = [(1, 1)]

    def step_inf(n):
        p = max(n + 1, state[-1][0])
        need = two_pow(n)
        while True:
            x = a[p]
            q = max(p, cs.locate(x), state[-1][1])
            y = b[q]
            _probe(f"{where}, term {n}, probe {p}", x, y)
            if measure_difference(x, y) >= need:
                state.append((p, q))
                return ring_difference(x, y)
            p += 1

    return MuName(cs, INFINITE, _guarded(step_inf, step_budget), label, scheme, proms)


# --- complement ---------------------------------------------------------------


def complement(a: MuName, promise: str | None = None,
               step_budget: int = DEFAULT_STEPS) -> MuName:
    """``Ω - A`` when ``A`` has finite measure or ``Ω - A`` has infinite measure.

    Output terms are ``K_n = C_m - A_j`` with ``m >= n``, ``j = max(m, n+1)``,
    both nondecreasing in ``n``.  Then ``K_n - K_m ⊆ A_j' ∩ C_j - A_j`` and
    ``K_m ∩ C_n - K_n ⊆ A_j - A_j'``, each at most ``2**-j <= 2**(-n-1)``.
    """
    cs = a.cover
    label = f"~{a.label}"
    scheme = None if a.scheme is None else Complement(a.scheme)
    proms = _promises(a, tag=promise)
    state = [(1, 1)]

    if _regime(a) == FINITE:
        # μ(A_j) <= μ(A_1) + 1/2, so μ(C_m) >= 2**n + μ(A_1) + 1 forces μ(K_n) >= 2**n
        def step(n):
            need = two_pow(n) + exact_measure(a[1]) + 1
            m = max(n, state[-1][0])
            while cs.measure_C(m) < need:
                m += 1
            j = max(m, n + 1)
            state.append((m, j))
            return ring_difference(cs.C(m), a[j])

        return MuName(cs, INFINITE, _guarded(step, step_budget), label, scheme, proms)

    where = f"complement {label}"

    def step_inf(n):
        m = max(n, state[-1][0])
        need = two_pow(n)
        while True:
            j = max(m, n + 1)
            c, x = cs.C(m), a[j]
            _probe(f"{where}, term {n}, probe {m}", c, x)
            if measure_difference(c, x) >= need:
                state.append((m, j))
                return ring_difference(c, x)
            m += 1

    return MuName(cs, INFINITE, _guarded(step_inf, step_budget), label, scheme, proms)
