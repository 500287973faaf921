import pytest
from gmpy2 import mpq

from cmspace.cover import get_cover
from cmspace.names import (
    from_ring,
    from_ring_tilde,
    name_of_omega,
    name_of_scheme,
    validate_tilde_prefix,
)
from cmspace.ring import COUNTING, LEBESGUE, RingSet
from cmspace.schemes import builtin
from cmspace.tilde_ops import (
    mu_lower,
    mu_restricted,
    mu_tilde_of,
    mu_tilde_ring,
    reduce_mu_to_tilde,
    tilde_complement,
    tilde_difference,
    tilde_intersection,
    tilde_union,
)


def iv(*pairs):
    return RingSet.from_intervals(pairs)


def within(stream, value, depth=10):
    lo, hi = stream[depth]
    return lo <= value <= hi


@pytest.fixture
def T(leb):
    def make(b):
        base = name_of_omega(leb) if b == "omega" else name_of_scheme(builtin(b, LEBESGUE), leb)
        return reduce_mu_to_tilde(base)

    return make


def series_tilde(contains_measure, cs, depth=40):
    """Partial sum of μ̃ over D_1..D_depth; the tail is at most 2^-depth."""
    total = mpq(0)
    for n in range(1, depth + 1):
        total += contains_measure(n) / cs.measure_D(n) / 2**n
    return total, mpq(1, 2**depth)


def test_mu_tilde_ring_examples(leb):
    assert mu_tilde_ring(leb, RingSet.empty()) == 0
    assert mu_tilde_ring(leb, iv((0, 1))) == mpq(1, 8)
    assert mu_tilde_ring(leb, iv((0, 3))) == mpq(5, 16)
    assert mu_tilde_ring(leb, iv((0, 2))) == mpq(1, 4)


def test_probability(any_cover):
    for n in range(1, 11):
        assert mu_tilde_ring(any_cover, any_cover.C(n)) == 1 - mpq(1, 2**n)


def test_mu_tilde_of(leb, T):
    assert all(within(mu_tilde_of(from_ring_tilde(iv((0, 1)), leb)), mpq(1, 8), d) for d in range(1, 12))
    assert within(mu_tilde_of(T("omega")), 1, 20)


def test_evens_against_series(leb, T):
    # evens meets D_1 = [-2,2) in [0,1) and D_n (n >= 2) in 2^(n-2) unit intervals
    value, tail = series_tilde(lambda n: 1 if n == 1 else 2 ** (n - 2), leb)
    assert abs(value - mpq(1, 4)) <= tail
    lo, hi = mu_tilde_of(T("evens"))[20]
    assert lo - tail <= mpq(1, 4) <= hi + tail


class TestRestricted:
    def test_omega(self, leb, T):
        assert within(mu_restricted(T("omega"), 1), 4)

    def test_ring(self, leb):
        assert within(mu_restricted(from_ring_tilde(iv((0, 1)), leb), 3), 1)

    def test_evens(self, T):
        s = mu_restricted(T("evens"), 2)
        assert within(s, 2) and s[10][1] - s[10][0] <= mpq(2, 2**10)


class TestLower:
    def test_omega_unbounded(self, T):
        vals = mu_lower(T("omega")).prefix(14)
        assert vals == sorted(vals) and vals[-1] > 16

    def test_ring(self, leb):
        vals = mu_lower(from_ring_tilde(iv((0, 1)), leb)).prefix(16)
        assert vals == sorted(vals) and all(v <= 1 for v in vals) and vals[-1] > mpq(99, 100)

    def test_empty(self, leb):
        assert all(v <= 0 for v in mu_lower(from_ring_tilde(RingSet.empty(), leb)).prefix(8))

    def test_below_mu_of(self, leb):
        from cmspace.mu_ops import mu_of

        nm = name_of_scheme(builtin("geometric-pack", LEBESGUE), leb)
        lows = mu_lower(reduce_mu_to_tilde(nm)).prefix(12)
        assert max(lows) <= mu_of(nm)[12][1]


class TestReduce:
    def test_constant(self, leb):
        t = reduce_mu_to_tilde(from_ring(iv((0, 1)), leb))
        assert validate_tilde_prefix(t, 10).ok and t[3] == iv((0, 1))

    @pytest.mark.parametrize("b", ["evens", "omega", "geometric-pack", "half-line"])
    def test_validates(self, T, b):
        assert validate_tilde_prefix(T(b), 12).ok


class TestBinary:
    def test_union_disjoint(self, leb):
        t = tilde_union(from_ring_tilde(iv((0, 1)), leb), from_ring_tilde(iv((1, 2)), leb))
        assert within(mu_tilde_of(t), mpq(1, 4))

    def test_self_meet(self, T):
        ev = T("evens")
        a, b = mu_tilde_of(tilde_intersection(ev, ev))[10], mu_tilde_of(ev)[10]
        assert a[0] <= b[1] and b[0] <= a[1]

    def test_self_difference(self, T):
        ev = T("evens")
        assert within(mu_tilde_of(tilde_difference(ev, ev)), 0)

    @pytest.mark.parametrize("op", [tilde_union, tilde_intersection, tilde_difference])
    def test_validates(self, T, op):
        assert validate_tilde_prefix(op(T("evens"), T("geometric-pack")), 12).ok


class TestComplement:
    def test_omega(self, T):
        assert within(mu_tilde_of(tilde_complement(T("omega"))), 0)

    def test_ring(self, leb):
        assert within(mu_tilde_of(tilde_complement(from_ring_tilde(iv((0, 1)), leb))), mpq(7, 8))

    def test_involution(self, T):
        ev = T("evens")
        a, b = mu_tilde_of(tilde_complement(tilde_complement(ev)))[10], mu_tilde_of(ev)[10]
        assert a[0] <= b[1] and b[0] <= a[1]

    def test_validates_counting(self):
        cs = get_cover(COUNTING, "generic")
        t = reduce_mu_to_tilde(name_of_scheme(builtin("odds", COUNTING), cs))
        assert validate_tilde_prefix(tilde_complement(t), 12).ok
