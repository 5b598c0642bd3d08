"""Exact prime-characteristic computations: F-purity and splitting witnesses,
bounded tight-closure certificates, and monomial filtration invariants."""

from ._charp import (
    BudgetExceeded,
    InputError,
    Polynomial,
    PreconditionError,
    Ring,
    UnsupportedCharacteristic,
    binom,
    classify,
    fedder_certificate,
    fedder_fpure,
    hilbert,
    integral_closure,
    jacobian_isolated_singularity,
    newton_polyhedron,
    parse_input,
    reduction_number,
    replay,
    run_suite,
    split_test,
    suite_ids,
    tc_certificate,
    verify_split_certificate,
    vv_identity,
)

__all__ = [
    "BudgetExceeded",
    "InputError",
    "Polynomial",
    "PreconditionError",
    "Ring",
    "UnsupportedCharacteristic",
    "binom",
    "classify",
    "fedder_certificate",
    "fedder_fpure",
    "hilbert",
    "integral_closure",
    "jacobian_isolated_singularity",
    "newton_polyhedron",
    "parse_input",
    "reduction_number",
    "replay",
    "run_suite",
    "split_test",
    "suite_ids",
    "tc_certificate",
    "verify_split_certificate",
    "vv_identity",
]
