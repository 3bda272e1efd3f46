"""Exact quadratic-residue sums, jumps and class numbers h(-p) for primes p = 4n - 1."""

from .arith_core import (
    CompositeModulusError,
    PrimeContext,
    RadicalFloors,
    floor_div,
    is_prime,
    isqrt,
    legendre,
    make_context,
    radical_floors,
    remainder,
)
from .class_number import (
    IDENTITY_IDS,
    ClassNumberResult,
    ConsistencyError,
    IdentityReport,
    h_dirichlet_estimate,
    h_from_residue_sum,
    verify_identity,
)
from .jump_engine import (
    BijectionWitness,
    JumpProfile,
    PropertyViolation,
    SetPartition,
    b_mid_members,
    bijection_A_ge,
    bijection_A_mid,
    classify_sets,
    gamma,
    is_jump,
    jump_profile,
)
from .residue_sums import SumReport, sum_floor_shifted, sum_floor_squares, sum_qr, sum_shifted

__version__ = "0.1.0"
