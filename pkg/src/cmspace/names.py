"""Name streams for measurable sets, their validators and builders.

A :class:`MuName` is a stream ``A_1, A_2, ...`` of ring sets together with
a regime.  In the Finite regime every pair ``n < m`` satisfies
``μ(A_n △ A_m) <= 2**-n``.  In the Infinite regime::

    μ(A_n - A_m) <= 2**-n,   μ(A_m ∩ C_n - A_n) <= 2**-n,   μ(A_n) >= 2**n.

A :class:`TildeName` obeys ``μ̃(A_n △ A_m) <= 2**-n`` for the induced
probability ``μ̃``.  Validators inspect finite prefixes exactly; whether a
stream converges to its intended target is certified by the builders.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, TextIO

from gmpy2 import mpq

from .cover import CoverSystem, get_cover
from .ring import (
    RingSet,
    SpaceMismatch,
    decode,
    encode,
    exact_measure,
    get_space,
    measure_difference,
    measure_symdiff,
    ring_intersection,
    ring_symdiff,
)
from .schemes import SetScheme, builtin
from .streams import LazyStream

FINITE = "Finite"
INFINITE = "Infinite"
REGIMES = (FINITE, INFINITE)


def two_pow(e: int) -> mpq:
    return mpq(2) ** e if e >= 0 else mpq(1, 2 ** (-e))


def ceil_log2(x) -> int:
    """Least ``e`` with ``2**e >= x`` for a positive rational ``x``."""
    x = mpq(x)
    if x <= 0:
        raise ValueError("ceil_log2 needs a positive argument")
    e = int(x.numerator).bit_length() - int(x.denominator).bit_length()
    while two_pow(e) < x:
        e += 1
    while two_pow(e - 1) >= x:
        e -= 1
    return e


class _Name:
    def __init__(self, cover: CoverSystem, terms: LazyStream, label: str = "",
                 scheme: SetScheme | None = None, promises: Iterable[str] = ()):
        self.cover = cover
        self.terms = terms
        self.label = label
        self.scheme = scheme
        self.promises = frozenset(promises)

    @property
    def space(self):
        return self.cover.space

    def __getitem__(self, n: int) -> RingSet:
        return self.terms[n]

    def prefix(self, length: int) -> list[RingSet]:
        return self.terms.prefix(length)


class MuName(_Name):
    def __init__(self, cover, regime, terms, label="", scheme=None, promises=()):
        if regime not in REGIMES:
            raise ValueError(f"unknown regime {regime!r}")
        super().__init__(cover, terms, label, scheme, promises)
        self.regime = regime

    @property
    def finite(self) -> bool:
        return self.regime == FINITE

    def header(self) -> str:
        return f"MUNAME {self.space.id} {self.cover.descriptor} {self.regime}"

    def __repr__(self):
        return f"<MuName {self.label or '?'} {self.regime} {self.cover}>"


class TildeName(_Name):
    def header(self) -> str:
        return f"TILDENAME {self.space.id} {self.cover.descriptor}"

    def __repr__(self):
        return f"<TildeName {self.label or '?'} {self.cover}>"


def same_cover(*names: _Name):
    first = names[0].cover
    for nm in names[1:]:
        if nm.cover is not first:
            raise SpaceMismatch(
                f"names built on {first} and {nm.cover} cannot be combined")
    return first


# --- real streams ------------------------------------------------------------


class RealStream:
    """Rational approximations of a real or of ``+∞``.

    ``kind == 'interval'``: term ``n`` is ``(lo, hi)`` with ``hi`` None for
    ``+∞``; finite limits lie in every interval.  ``kind == 'lower'``: term
    ``n`` is a rational and the sequence is nondecreasing.
    """

    def __init__(self, kind: str, step: Callable[[int], object]):
        if kind not in ("interval", "lower"):
            raise ValueError(kind)
        self.kind = kind
        self._terms = LazyStream(step)

    def __getitem__(self, n: int):
        return self._terms[n]

    def prefix(self, length: int) -> list:
        return self._terms.prefix(length)


# --- validation --------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    n: int
    m: int | None
    condition: str
    value: object
    bound: object

    def __str__(self):
        where = f"n={self.n}" if self.m is None else f"n={self.n}, m={self.m}"
        return f"({where}) {self.condition} violated: value {self.value}, bound {self.bound}"


@dataclass
class ValidationReport:
    length: int
    violations: list[Violation] = field(default_factory=list)
    regime_checked: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def summary(self) -> str:
        if self.ok:
            extra = "" if self.regime_checked else " (regime header not checked: prefix too short)"
            return f"ok: {self.length} terms valid{extra}"
        return "\n".join(str(v) for v in self.violations)


def validate_mu_prefix(name: MuName, length: int, first_only: bool = False) -> ValidationReport:
    """Check the modulus conditions on ``A_1..A_length`` exactly."""
    terms = name.prefix(length)
    cs = name.cover
    rep = ValidationReport(length)
    out = rep.violations

    def bad(*args):
        out.append(Violation(*args))
        return first_only

    if name.regime == FINITE:
        for n in range(1, length + 1):
            bound = two_pow(-n)
            for m in range(n + 1, length + 1):
                v = measure_symdiff(terms[n - 1], terms[m - 1])
                if v > bound and bad(n, m, "μ(A_n△A_m) <= 2^-n", v, bound):
                    return rep
    else:
        for n in range(1, length + 1):
            bound = two_pow(-n)
            an = terms[n - 1]
            mu = exact_measure(an)
            if mu < two_pow(n) and bad(n, None, "μ(A_n) >= 2^n", mu, two_pow(n)):
                return rep
            cn = cs.C(n)
            for m in range(n + 1, length + 1):
                am = terms[m - 1]
                v = measure_difference(an, am)
                if v > bound and bad(n, m, "μ(A_n-A_m) <= 2^-n", v, bound):
                    return rep
                v = measure_difference(ring_intersection(am, cn), an)
                if v > bound and bad(n, m, "μ(A_m∩C_n-A_n) <= 2^-n", v, bound):
                    return rep
    if not out:
        _check_regime(name, terms, rep)
    return rep


def _check_regime(name: MuName, terms: list[RingSet], rep: ValidationReport):
    m = classify_depth(terms[0]) if terms else None
    if m is None or m > len(terms):
        return
    rep.regime_checked = True
    got = INFINITE if exact_measure(terms[m - 1]) >= two_pow(m) else FINITE
    if got != name.regime:
        rep.violations.append(Violation(m, None, f"header regime {name.regime} matches stream", got, name.regime))


def mu_tilde_ring(cs: CoverSystem, e: RingSet) -> mpq:
    """``Σ_n μ(e ∩ D_n) / μ(D_n) · 2**-n``; finite since ``e ⊆ C_k``."""
    if e.space is not cs.space:
        raise SpaceMismatch("ring set and cover live in different spaces")
    if e.is_empty:
        return mpq(0)
    k = cs.locate(e)
    total = mpq(0)
    for n in range(1, k + 1):
        part = exact_measure(ring_intersection(e, cs.D(n)))
        if part:
            total += part / cs.measure_D(n) / 2**n
    return total


def validate_tilde_prefix(name: TildeName, length: int, first_only: bool = False) -> ValidationReport:
    terms = name.prefix(length)
    rep = ValidationReport(length, regime_checked=True)
    for n in range(1, length + 1):
        bound = two_pow(-n)
        for m in range(n + 1, length + 1):
            v = mu_tilde_ring(name.cover, ring_symdiff(terms[n - 1], terms[m - 1]))
            if v > bound:
                rep.violations.append(Violation(n, m, "μ̃(A_n△A_m) <= 2^-n", v, bound))
                if first_only:
                    return rep
    return rep


def validate(name, length: int, first_only: bool = False) -> ValidationReport:
    if isinstance(name, MuName):
        return validate_mu_prefix(name, length, first_only)
    return validate_tilde_prefix(name, length, first_only)


# --- classification -----------------------------------------------------------


def classify_depth(a1: RingSet) -> int:
    """Index ``m`` whose term decides the regime, given the first term."""
    r = exact_measure(a1)
    return max(2, ceil_log2(r + 1) + 1)


def classify(terms) -> str:
    """Decide Finite/Infinite from a stream that is a name in some regime.

    Finite names have ``μ(A_m) <= μ(A_1) + 1/2 < 2**m``; Infinite names
    have ``μ(A_m) >= 2**m``.  Reads exactly two terms.
    """
    if isinstance(terms, _Name):
        terms = terms.terms
    m = classify_depth(terms[1])
    return INFINITE if exact_measure(terms[m]) >= two_pow(m) else FINITE


# --- builders -----------------------------------------------------------------


def from_ring(e: RingSet, cs: CoverSystem | None = None) -> MuName:
    cs = cs or get_cover(e.space)
    _same_space(e, cs)
    return MuName(cs, FINITE, LazyStream(lambda n: e), label=str(e), scheme=None)


def from_ring_tilde(e: RingSet, cs: CoverSystem | None = None) -> TildeName:
    cs = cs or get_cover(e.space)
    _same_space(e, cs)
    return TildeName(cs, LazyStream(lambda n: e), label=str(e))


def _same_space(e: RingSet, cs: CoverSystem):
    if e.space is not cs.space:
        raise SpaceMismatch("ring set and cover live in different spaces")


def name_of_omega(cs: CoverSystem) -> MuName:
    return MuName(cs, INFINITE, LazyStream(cs.C), label="omega", scheme=builtin("omega", cs.space))


def name_of_scheme(s: SetScheme, cs: CoverSystem) -> MuName:
    """A name of the scheme's set, in the regime its descriptor implies.

    Finite: ``A_n = local(k, 2**(-n-2))`` with ``k`` past the scheme's tail
    level for the same tolerance, so ``μ(A_n △ A) <= 2**(-n-1)``.
    Infinite: ``A_n = local(k_n, 2**(-n-2))`` with ``k_n >= max(n, k_{n-1})``
    least such that ``μ(A_n) >= 2**n``.  Monotonicity of ``k_n`` and
    ``C_n ⊆ C_{k_n}`` give the other two conditions.
    """
    if s.space is not cs.space:
        raise SpaceMismatch(f"scheme {s.label} does not live in {cs.space.id}")
    if s.finite:
        def step(n):
            eps = two_pow(-n - 2)
            return s.local(cs, max(1, s.tail_level(cs, eps)), eps)

        return MuName(cs, FINITE, LazyStream(step), label=s.label, scheme=s)

    levels = [0]

    def step_inf(n):
        eps = two_pow(-n - 2)
        k = max(n, levels[-1])
        while True:
            r = s.local(cs, k, eps)
            if exact_measure(r) >= two_pow(n):
                levels.append(k)
                return r
            k += 1

    return MuName(cs, INFINITE, LazyStream(step_inf), label=s.label, scheme=s)


# --- prefix files ---------------------------------------------------------------


class NameFileError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def dump_prefix(name, length: int) -> str:
    lines = [name.header()]
    lines.extend(encode(t) for t in name.prefix(length))
    return "\n".join(lines) + "\n"


def write_prefix(name, length: int, fh: TextIO):
    fh.write(dump_prefix(name, length))


def load_prefix(text: str):
    """Parse a name-prefix file into a MuName or TildeName over a finite prefix."""
    lines = text.splitlines()
    if not lines:
        raise NameFileError("empty file", 1)
    head = lines[0].split()
    try:
        if head[:1] == ["MUNAME"] and len(head) == 4:
            kind, regime = "mu", head[3]
            if regime not in REGIMES:
                raise NameFileError(f"unknown regime {regime!r}", 1)
        elif head[:1] == ["TILDENAME"] and len(head) == 3:
            kind, regime = "tilde", None
        else:
            raise NameFileError("expected 'MUNAME <space> <cover> <regime>' or 'TILDENAME <space> <cover>'", 1)
        space = get_space(head[1])
        cs = get_cover(space, head[2])
    except ValueError as exc:
        if isinstance(exc, NameFileError):
            raise
        raise NameFileError(str(exc), 1) from None
    terms = []
    for i, line in enumerate(lines[1:], start=2):
        try:
            e = decode(line)
        except ValueError as exc:
            raise NameFileError(str(exc), i) from None
        if e.space is not space:
            raise NameFileError(f"term is not a {space.id} ring set", i)
        terms.append(e)
    stream = LazyStream.from_list(terms)
    if kind == "mu":
        return MuName(cs, regime, stream, label="file")
    return TildeName(cs, stream, label="file")
