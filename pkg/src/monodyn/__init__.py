"""Monomial dynamical systems over finite fields: fixed point system detection."""

from .classify import (
    CharpolyReport,
    ClassificationReport,
    InternalInconsistency,
    Method,
    ScreenResult,
    charpoly_check,
    classify,
    decide_power,
    screen_loop_numbers,
    screen_only_trivial_sccs,
    screen_q1_selfloops,
    screen_q1_within_sccs,
)
from .graph import DependencyGraph, SccPartition, loop_number, recurrently_connected, sccs, walk_count
from .matrix import (
    CountMatrix,
    ExpMatrix,
    ExtExpMatrix,
    count_mul,
    count_pow,
    ext_mat_mul,
    mat_mul,
    mat_pow,
    mred_q,
)
from .reduction import ExtendedSystem, ReductionResult, reduce, reduction_bound
from .semiring import BOTTOM, ContextMismatch, ExpElem, FieldSize, add, ext_add, ext_mul, mul, red_q
from .system import (
    FieldElement,
    MonomialSystem,
    PhaseSpace,
    StateSpaceTooLarge,
    compose,
    evaluate,
    is_fixed_point_system_bruteforce,
    phase_space,
    psi,
    psi_inv,
)

__version__ = "0.1.0"
