import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from cmspace.ring import (
    COUNTING,
    LEBESGUE,
    ParseError,
    RingSet,
    SpaceMismatch,
    decode,
    encode,
    exact_measure,
    is_subset,
    measure_difference,
    measure_intersection,
    measure_symdiff,
    ring_difference,
    ring_intersection,
    ring_symdiff,
    ring_union,
)

from .conftest import counting_sets, lebesgue_sets, sample_points


def iv(*pairs):
    return RingSet.from_intervals(pairs)


class TestExamples:
    def test_union(self):
        assert ring_union(iv((0, 1)), iv((1, 2))) == iv((0, 2))
        assert ring_union(iv((0, 1)), RingSet.empty()) == iv((0, 1))
        assert ring_union(iv((0, 2)), iv((1, 3))) == iv((0, 3))

    def test_difference(self):
        assert ring_difference(iv((0, 2)), iv((1, 3))) == iv((0, 1))
        assert ring_difference(iv((0, 1)), iv((0, 1))).is_empty
        got = ring_difference(iv((0, 1), (2, 3)), iv((mpq(1, 2), mpq(5, 2))))
        assert got == iv((0, mpq(1, 2)), (mpq(5, 2), 3))

    def test_measure(self):
        assert exact_measure(RingSet.empty()) == 0
        assert exact_measure(iv((0, 1), (2, mpq(5, 2)))) == mpq(3, 2)
        assert exact_measure(RingSet.from_naturals([4, 7, 9])) == 3

    def test_encode(self):
        assert encode(iv((0, 1))) == "U [0/1,1/1)"
        assert decode("U [0/1,1/1)") == iv((0, 1))
        assert decode("N {2,5}") == RingSet.from_naturals([2, 5])
        assert encode(RingSet.empty(COUNTING)) == "N {}"
        assert decode("U") == RingSet.empty()

    @pytest.mark.parametrize("text", [
        "U [1/2,1/3)", "U [0/1,1/1) [1/1,2/1)", "U [2/4,1/1)", "U [0/1,1/1", "N {5,2}",
        "N {2,2}", "X", "U [0/1,1/1) junk", "U [01/1,2/1)", "U [0/0,1/1)",
    ])
    def test_decode_rejects(self, text):
        with pytest.raises(ParseError) as err:
            decode(text)
        assert err.value.pos >= 0

    def test_parse_error_position(self):
        with pytest.raises(ParseError) as err:
            decode("U [0/1,1/1) [3/1,2/1)")
        assert err.value.pos == 12

    def test_space_mismatch(self):
        with pytest.raises(SpaceMismatch):
            ring_union(iv((0, 1)), RingSet.from_naturals([1]))

    def test_empty_interval_rejected(self):
        with pytest.raises(ValueError):
            iv((1, 1))


def _oracle_check(a, b):
    for x in sample_points(a, b, n=1000):
        ia, ib = a.contains(x), b.contains(x)
        assert ring_union(a, b).contains(x) == (ia or ib)
        assert ring_intersection(a, b).contains(x) == (ia and ib)
        assert ring_difference(a, b).contains(x) == (ia and not ib)
        assert ring_symdiff(a, b).contains(x) == (ia != ib)


@settings(max_examples=40, deadline=None)
@given(lebesgue_sets(), lebesgue_sets())
def test_ops_match_membership_oracle(a, b):
    _oracle_check(a, b)


@settings(max_examples=60, deadline=None)
@given(counting_sets, counting_sets)
def test_counting_ops_match_python_sets(a, b):
    x, y = set(a.body), set(b.body)
    assert set(ring_union(a, b).body) == x | y
    assert set(ring_intersection(a, b).body) == x & y
    assert set(ring_difference(a, b).body) == x - y
    assert exact_measure(ring_symdiff(a, b)) == len(x ^ y)


@settings(max_examples=200, deadline=None)
@given(lebesgue_sets(), lebesgue_sets(), lebesgue_sets())
def test_ring_laws(a, b, c):
    assert ring_union(a, b) == ring_union(b, a)
    assert ring_intersection(a, b) == ring_intersection(b, a)
    assert ring_union(ring_union(a, b), c) == ring_union(a, ring_union(b, c))
    assert ring_intersection(a, ring_union(b, c)) == ring_union(ring_intersection(a, b), ring_intersection(a, c))
    assert ring_intersection(a, b) == ring_difference(a, ring_difference(a, b))
    assert ring_symdiff(a, b) == ring_union(ring_difference(a, b), ring_difference(b, a))


@settings(max_examples=200, deadline=None)
@given(lebesgue_sets(), lebesgue_sets())
def test_measures(a, b):
    d = ring_difference(b, a)
    assert exact_measure(ring_union(a, d)) == exact_measure(a) + exact_measure(d)
    assert measure_difference(a, b) == exact_measure(ring_difference(a, b))
    assert measure_intersection(a, b) == exact_measure(ring_intersection(a, b))
    assert measure_symdiff(a, b) == exact_measure(ring_symdiff(a, b))
    assert (measure_symdiff(a, b) == 0) == (a == b)
    assert is_subset(a, b) == ring_difference(a, b).is_empty


@settings(max_examples=200, deadline=None)
@given(st.one_of(lebesgue_sets(), counting_sets))
def test_round_trip(a):
    assert decode(encode(a)) == a
    assert encode(decode(encode(a))) == encode(a)


def test_canonical_form():
    a = RingSet.from_intervals([(2, 3), (0, 1), (1, 2), (mpq(1, 2), mpq(3, 2))])
    assert a == iv((0, 3))
    assert len(a) == 1
    assert a.space is LEBESGUE
