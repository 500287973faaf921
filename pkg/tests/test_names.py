import pytest
from gmpy2 import mpq

from cmspace.cover import get_cover
from cmspace.names import (
    FINITE,
    INFINITE,
    MuName,
    NameFileError,
    TildeName,
    ceil_log2,
    classify,
    dump_prefix,
    from_ring,
    from_ring_tilde,
    load_prefix,
    mu_tilde_ring,
    name_of_omega,
    name_of_scheme,
    validate_mu_prefix,
    validate_tilde_prefix,
)
from cmspace.ring import COUNTING, LEBESGUE, RingSet, exact_measure, ring_symdiff
from cmspace.schemes import MonotoneUnion, Periodic, Ring, builtin, geometric_pack
from cmspace.streams import LazyStream, PrefixExhausted


def iv(*pairs):
    return RingSet.from_intervals(pairs)


def listed(cs, regime, sets, cls=MuName):
    stream = LazyStream.from_list(sets)
    return cls(cs, regime, stream) if cls is MuName else cls(cs, stream)


def test_constant_stream_validates(leb):
    assert validate_mu_prefix(from_ring(iv((0, 1)), leb), 12).ok
    assert validate_tilde_prefix(from_ring_tilde(iv((0, 1)), leb), 12).ok


def test_cover_stream_validates(any_cover):
    nm = name_of_omega(any_cover)
    rep = validate_mu_prefix(nm, 10)
    assert rep.ok and rep.regime_checked
    assert classify(nm) == INFINITE


def test_finite_violation_pinpointed(leb):
    nm = listed(leb, FINITE, [iv((0, 1)), iv((0, 2))])
    rep = validate_mu_prefix(nm, 2)
    assert not rep.ok
    v = rep.violations[0]
    assert (v.n, v.m, v.value, v.bound) == (1, 2, 1, mpq(1, 2))


def test_infinite_violations(leb):
    nm = listed(leb, INFINITE, [iv((0, 1)), leb.C(2)])
    rep = validate_mu_prefix(nm, 2)
    assert not rep.ok and rep.violations[0].condition.startswith("μ(A_n) >=")
    # A_2 loses [-4,-3) from A_1; A_3 adds [1,2) ⊆ C_1 that A_1 lacks
    nm = listed(leb, INFINITE, [iv((-4, -3), (-2, 1)), iv((-3, 4)), leb.C(3)])
    rep = validate_mu_prefix(nm, 3)
    assert {v.condition for v in rep.violations} == {"μ(A_n-A_m) <= 2^-n", "μ(A_m∩C_n-A_n) <= 2^-n"}


def test_header_cross_check(leb):
    # a valid Finite stream declared Infinite fails on measure; a valid
    # Infinite stream declared Finite fails the pairwise bound or the header
    nm = listed(leb, FINITE, [leb.C(n) for n in range(1, 6)])
    assert not validate_mu_prefix(nm, 5).ok


def test_tilde_example(leb):
    assert mu_tilde_ring(leb, ring_symdiff(iv((0, 1)), iv((0, 3)))) == mpq(3, 16)
    nm = listed(leb, None, [iv((0, 1)), iv((0, 3))], cls=TildeName)
    assert validate_tilde_prefix(nm, 2).ok


@pytest.mark.parametrize("measure,expected", [(1, FINITE), (100, FINITE), (2**10, FINITE)])
def test_classify_finite(leb, measure, expected):
    nm = from_ring(iv((0, measure)), leb)
    assert classify(nm) == expected


def test_classify_depths():
    assert ceil_log2(5) == 3 and ceil_log2(4) == 2 and ceil_log2(mpq(1, 3)) == -1
    # μ(C_1) = 4 on the fast line: m = ceil(log2 5) + 1 = 4
    from cmspace.names import classify_depth

    assert classify_depth(iv((-2, 2))) == 4
    assert classify_depth(iv((0, 1))) == 2
    assert classify_depth(iv((0, 100))) == 8


def test_classify_reads_two_terms(leb):
    calls = []
    nm = MuName(leb, INFINITE, LazyStream(lambda n: calls.append(n) or leb.C(n)))
    classify(nm)
    assert calls == [1, 2, 3, 4]  # in-order memo extension up to m = 4
    classify(nm)
    assert calls == [1, 2, 3, 4]


def test_scheme_names(any_cover):
    sp = any_cover.space
    for b in ("evens", "odds", "half-line", "omega", "empty") + (("geometric-pack",) if sp is LEBESGUE else ()):
        s = builtin(b, sp)
        nm = name_of_scheme(s, any_cover)
        assert nm.regime == (FINITE if s.finite else INFINITE)
        rep = validate_mu_prefix(nm, 10)
        assert rep.ok, (b, rep.summary())
        assert classify(nm) == nm.regime


def test_ring_scheme_matches_from_ring(leb):
    e = iv((0, 1), (5, 7))
    assert name_of_scheme(Ring(e), leb).prefix(6) == from_ring(e, leb).prefix(6)


def test_geometric_pack_measure(leb):
    nm = name_of_scheme(geometric_pack(), leb)
    for n in range(1, 12):
        assert abs(exact_measure(nm[n]) - 1) <= mpq(1, 2**n)


def test_monotone_union_rejects_bad_tail():
    with pytest.raises(ValueError):
        MonotoneUnion(LEBESGUE, lambda j: RingSet.empty(), lambda j: mpq(1, j + 1) if j != 3 else 2)


def test_periodic_counting_parameters():
    with pytest.raises(ValueError):
        Periodic(COUNTING, mpq(3, 2), 1)
    assert Periodic(COUNTING, 3, 3, 2).cofinite


def test_memoized_terms_identical(leb):
    nm = name_of_scheme(builtin("evens", LEBESGUE), leb)
    a = nm[7]
    assert nm[7] is a
    assert nm.terms.computed() == 7


def test_prefix_file_round_trip(any_cover):
    nm = name_of_scheme(builtin("evens", any_cover.space), any_cover)
    text = dump_prefix(nm, 6)
    back = load_prefix(text)
    assert dump_prefix(back, 6) == text
    assert back.regime == INFINITE and back.cover is any_cover
    with pytest.raises(PrefixExhausted):
        back[7]
    tn = from_ring_tilde(RingSet.empty(any_cover.space), any_cover)
    assert dump_prefix(load_prefix(dump_prefix(tn, 3)), 3) == dump_prefix(tn, 3)


@pytest.mark.parametrize("text,line", [
    ("", 1),
    ("MUNAME lebesgue fast Maybe\n", 1),
    ("MUNAME nowhere fast Finite\n", 1),
    ("MUNAME lebesgue fast Finite\nU [1/1,0/1)\n", 2),
    ("TILDENAME counting fast\nN {1}\nU [0/1,1/1)\n", 3),
])
def test_prefix_file_errors(text, line):
    with pytest.raises(NameFileError) as err:
        load_prefix(text)
    assert err.value.line == line
