"""Executable names of measurable sets over computable measure spaces."""

__version__ = "0.1.0"

from .budget import BudgetExhausted, StepBudget
from .cover import CoverSystem, build_fast, build_generic, get_cover
from .kernel import BACKEND
from .names import (
    FINITE,
    INFINITE,
    MuName,
    RealStream,
    TildeName,
    ValidationReport,
    classify,
    from_ring,
    from_ring_tilde,
    load_prefix,
    dump_prefix,
    mu_tilde_ring,
    name_of_omega,
    name_of_scheme,
    validate_mu_prefix,
    validate_tilde_prefix,
)
from .ring import (
    COUNTING,
    LEBESGUE,
    ParseError,
    RingSet,
    SpaceMismatch,
    decode,
    encode,
    exact_measure,
    ring_difference,
    ring_intersection,
    ring_symdiff,
    ring_union,
)
from .enumeration import enumerate_ring, ring_index
from .mu_ops import complement, difference, intersection, mu_of, union
from .tilde_ops import (
    mu_lower,
    mu_restricted,
    mu_tilde_of,
    reduce_mu_to_tilde,
    tilde_complement,
    tilde_difference,
    tilde_intersection,
    tilde_union,
)
