"""Orthogonal polynomials on the unit circle for Verblunsky sequences with
finitely many coefficients outside the closed unit disk: recurrences, Wall
polynomials, the (pseudo-)Caratheodory function, the signed Szego identity,
and the inverse Schur map."""

from .analysis import (
    AmbiguousRootError,
    MigrationRow,
    MomentReport,
    QuadratureError,
    QuadratureWarning,
    SzegoReport,
    TraceRow,
    boyd_integral,
    circle_quadrature,
    log_split_check,
    moments,
    pole_set,
    re_F_khrushchev,
    szego_lhs,
    szego_rhs,
    szego_verify,
    zero_count_trace,
    zero_migration,
)
from .opuc_core import (
    CrossCheckError,
    GuardViolationError,
    IdentityReport,
    VerblunskySequence,
    WallPair,
    omega,
    omega_log_sign,
    second_kind_polys,
    szego_polys,
    verify_identities,
    wall_polys,
)
from .poly import (
    ComplexPoly,
    RootFindingError,
    count_in_disk,
    from_roots,
    roots,
    series_div,
    split_by_circle,
)
from .schur import (
    PoleEvaluationError,
    RationalFn,
    RecoveryResult,
    SchurStep,
    as_rational_F,
    as_rational_f,
    eval_F,
    eval_f,
    inverse_schur_step,
    recover_coefficients,
    tail_schur,
)

__all__ = [
    "AmbiguousRootError",
    "ComplexPoly",
    "CrossCheckError",
    "GuardViolationError",
    "IdentityReport",
    "MigrationRow",
    "MomentReport",
    "PoleEvaluationError",
    "QuadratureError",
    "QuadratureWarning",
    "RationalFn",
    "RecoveryResult",
    "RootFindingError",
    "SchurStep",
    "SzegoReport",
    "TraceRow",
    "VerblunskySequence",
    "WallPair",
    "as_rational_F",
    "as_rational_f",
    "boyd_integral",
    "circle_quadrature",
    "count_in_disk",
    "eval_F",
    "eval_f",
    "from_roots",
    "inverse_schur_step",
    "log_split_check",
    "moments",
    "omega",
    "omega_log_sign",
    "pole_set",
    "re_F_khrushchev",
    "recover_coefficients",
    "roots",
    "second_kind_polys",
    "series_div",
    "split_by_circle",
    "szego_lhs",
    "szego_polys",
    "szego_rhs",
    "szego_verify",
    "tail_schur",
    "verify_identities",
    "wall_polys",
    "zero_count_trace",
    "zero_migration",
]
