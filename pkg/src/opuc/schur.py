"""Rational Schur machinery: tails, the function F, and coefficient recovery.

The head of a sequence acts on the classical tail through a Moebius map
with Wall-polynomial entries; clearing denominators keeps everything in
exact rational arithmetic.  The inverse direction peels one coefficient
per step,

    f_{n+1}(z) = (1/z) (f_n(z) - f_n(0)) / (1 - conj(f_n(0)) f_n(z)),

where the forced zero of the numerator at the origin is divided out by an
exact coefficient shift, never by numerical division near z = 0.
"""

from __future__ import annotations

import dataclasses
import logging

from .opuc_core import (
    DEFAULT_GUARD_UNIT,
    VerblunskySequence,
    second_kind_polys,
    szego_polys,
    wall_polys,
)
from .poly import ComplexPoly, RootFindingError, roots as poly_roots

logger = logging.getLogger(__name__)

CANCEL_TOL = 1e-9
_POLE_GUARD = 1e-13


class PoleEvaluationError(ArithmeticError):
    """Evaluation was requested at (or numerically at) a pole."""


def _cancel_common_roots(num: ComplexPoly, den: ComplexPoly,
                         tol: float = CANCEL_TOL) -> tuple[ComplexPoly, ComplexPoly]:
    """Cancel numerator/denominator roots closer than ``tol`` pairwise.

    Genuine common zeros cannot occur for the functions built here; a hit
    means a spurious pole/zero pair, so it is logged before removal.
    Root-finding here is best-effort: iterates of the inverse algorithm can
    carry noise-level leading coefficients whose root sets are not
    resolvable to pairing accuracy, and then there is nothing trustworthy
    to cancel.
    """
    if num.degree < 1 or den.degree < 1:
        return num, den
    try:
        nroots = poly_roots(num, tol=1e-10)
        droots = poly_roots(den, tol=1e-10)
    except RootFindingError as exc:
        logger.debug("skipping root cancellation: %s", exc)
        return num, den
    used = [False] * len(nroots)
    kept_den: list[complex] = []
    cancelled: list[tuple[complex, complex]] = []
    for dr in droots:
        best = None
        best_dist = tol
        for i, nr in enumerate(nroots):
            if used[i]:
                continue
            dist = abs(nr - dr)
            if dist <= best_dist:
                best, best_dist = i, dist
        if best is None:
            kept_den.append(dr)
        else:
            used[best] = True
            cancelled.append((nroots[best], dr))
    if not cancelled:
        return num, den
    logger.warning("cancelled %d near-common root pair(s): %s", len(cancelled), cancelled)
    kept_num = [r for i, r in enumerate(nroots) if not used[i]]
    from .poly import from_roots

    return (from_roots(kept_num, num.coeffs[-1]),
            from_roots(kept_den, den.coeffs[-1]))


@dataclasses.dataclass(frozen=True)
class RationalFn:
    """Ratio of two polynomials, normalized so den(0) = 1.

    Near-common roots of numerator and denominator (within CANCEL_TOL) are
    cancelled at construction.
    """

    num: ComplexPoly
    den: ComplexPoly

    def __init__(self, num, den) -> None:
        num = num if isinstance(num, ComplexPoly) else ComplexPoly(num)
        den = den if isinstance(den, ComplexPoly) else ComplexPoly(den)
        num, den = _cancel_common_roots(num, den)
        d0 = den(0)
        if d0 == 0:
            raise ValueError("denominator vanishes at z = 0")
        if d0 != 1:
            num = ComplexPoly([c / d0 for c in num.coeffs], num.formal_degree)
            den = ComplexPoly([c / d0 for c in den.coeffs], den.formal_degree)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __call__(self, z):
        return self.num(z) / self.den(z)

    def value(self, z: complex) -> complex:
        """Evaluate with a pole guard on the denominator."""
        d = self.den(z)
        if abs(d) <= _POLE_GUARD * max(self.den.magnitude_bound(z), 1e-300):
            raise PoleEvaluationError(f"denominator vanishes at z = {z!r}")
        return self.num(z) / d

    def is_zero(self) -> bool:
        return self.num.is_zero()


@dataclasses.dataclass(frozen=True)
class SchurStep:
    """One inverse Schur step: the extracted coefficient and the next iterate.

    ``unimodular`` is the flagged terminal state |alpha| = 1 (within guard):
    the next iterate would have a pole at the origin, so none is built.
    """

    alpha: complex
    next_fn: RationalFn | None
    unimodular: bool


@dataclasses.dataclass(frozen=True)
class RecoveryResult:
    alphas: tuple[complex, ...]
    termination: str | None  # None | "unimodular" | "pole_at_zero"


def tail_schur(seq: VerblunskySequence, N: int) -> RationalFn:
    """The Schur function of the tail alpha_N, alpha_{N+1}, ... as a finite
    Wall ratio (the continuation beyond the stored list is zero).

    Requires the tail to be classical: every stored |alpha_j| < 1 for j >= N.
    Then |B|^2 - |A|^2 > 0 on the circle, so the ratio is strictly Schur.
    """
    if N < 0:
        raise ValueError("tail start must be nonnegative")
    for j in range(N, len(seq)):
        if abs(seq.alpha(j)) >= 1.0:
            raise ValueError(f"tail coefficient at index {j} has modulus >= 1")
    tail = seq.shifted(min(N, len(seq)))
    if len(tail) == 0:
        return RationalFn([0.0], [1.0])
    wp = wall_polys(tail, len(tail) - 1)
    return RationalFn(wp.A, wp.B)


def as_rational_f(seq: VerblunskySequence) -> RationalFn:
    """The function f = f_0 in cleared-denominator form.

    For the canonical split index N this is
    (A_{N-1} B_t + z B*_{N-1} A_t) / (B_{N-1} B_t + z A*_{N-1} A_t)
    with f_N = A_t / B_t; for N = 0 it is the tail itself.
    """
    N = seq.N
    t = tail_schur(seq, N)
    if N == 0:
        return t
    wp = wall_polys(seq, N - 1)
    astar = wp.A.reverse(N - 1)
    bstar = wp.B.reverse(N - 1)
    num = wp.A * t.den + (bstar * t.num).shifted(1)
    den = wp.B * t.den + (astar * t.num).shifted(1)
    return RationalFn(num, den)


def eval_f(seq: VerblunskySequence, z: complex) -> complex:
    """Evaluate f at z; raises PoleEvaluationError at poles of f."""
    return as_rational_f(seq).value(z)


def as_rational_F(seq: VerblunskySequence) -> RationalFn:
    """F = (Psi_N* B_t + z Psi_N A_t) / (Phi_N* B_t - z Phi_N A_t).

    The denominator value at 0 is exactly 1, so no rescaling happens and
    F(0) = 1 holds exactly.
    """
    N = seq.N
    t = tail_schur(seq, N)
    phi, phistar = szego_polys(seq, N)
    psi, psistar = second_kind_polys(seq, N)
    num = psistar * t.den + (psi * t.num).shifted(1)
    den = phistar * t.den - (phi * t.num).shifted(1)
    return RationalFn(num, den)


def eval_F(seq: VerblunskySequence, z: complex) -> complex:
    """Evaluate F at z via the cleared rational form.

    Away from poles this agrees with (1 + z f(z)) / (1 - z f(z)); the test
    suite pins the two routes against each other.
    """
    return as_rational_F(seq).value(z)


def inverse_schur_step(f: RationalFn, guard: float = DEFAULT_GUARD_UNIT) -> SchurStep:
    """Extract alpha = f(0) and build the next iterate by exact rational algebra.

    With f = P/Q and a = P(0) (Q is normalized at construction so Q(0) = 1),
    the next iterate is shift(P - a Q) / (Q - conj(a) P): the Q factors from
    the Moebius quotient cancel symbolically, and the forced zero at the
    origin is removed by dropping the constant coefficient, which is exact.
    """
    a = f.num(0)
    if abs(abs(a) - 1.0) <= guard:
        return SchurStep(alpha=a, next_fn=None, unimodular=True)
    shifted_num = (f.num - a * f.den).coeffs[1:]
    den = f.den - a.conjugate() * f.num
    nxt = RationalFn(ComplexPoly(shifted_num if shifted_num else [0.0]), den)
    return SchurStep(alpha=a, next_fn=nxt, unimodular=False)


def recover_coefficients(fstar: RationalFn, max_n: int,
                         guard: float = DEFAULT_GUARD_UNIT) -> RecoveryResult:
    """Run the inverse Schur algorithm from a rational F_*.

    Seeds with f_0 = (1/z)(F_* - F_*(0)) / (F_* + F_*(0)), which is invariant
    under rescaling F_* by a nonzero constant, then collects f_n(0) for
    n < max_n.  Stops early, with the reason recorded, when an iterate's
    value at 0 is unimodular (within ``guard``) or a pole lands on the origin.
    """
    c = fstar.num(0)
    if abs(c) <= 1e-14 * max(fstar.num.magnitude_bound(1.0), 1e-300):
        raise ValueError("F_*(0) = 0: the Moebius seed is undefined")
    seed_num = (fstar.num - c * fstar.den).coeffs[1:]
    seed_den = fstar.num + c * fstar.den
    f = RationalFn(ComplexPoly(seed_num if seed_num else [0.0]), seed_den)
    alphas: list[complex] = []
    for _ in range(max_n):
        try:
            step = inverse_schur_step(f, guard)
        except ValueError:
            return RecoveryResult(tuple(alphas), "pole_at_zero")
        alphas.append(step.alpha)
        if step.unimodular:
            return RecoveryResult(tuple(alphas), "unimodular")
        f = step.next_fn
    return RecoveryResult(tuple(alphas), None)
