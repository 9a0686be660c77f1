"""Generalized (c-)Ramanujan primes."""
from .bounds import (
    BoundCertificate,
    constant_A,
    cubic_u_c,
    f_lower,
    rosser_window,
    upper_bound,
    validity_threshold_M,
)
from .errors import InvalidArgumentError, OutOfRangeError, ResourceLimitError
from .generator import (
    RamanujanList,
    generate,
    generate_through,
    interval_count,
    semantics_discrepancy_scan,
    strict_infimum_count,
    verify_definition,
)
from .primes import PrimeTable, RationalC, build_table, floor_mul, integer_in_step

__version__ = "0.1.0"
