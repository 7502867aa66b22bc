"""Deterministic case generators shared by the test modules.

Random cases are rejection-sampled so that every verification step is
numerically meaningful:

* denominator roots of F keep a fixed margin from the unit circle, so the
  quadrature budget always converges and in-disk classification cannot
  flip (the library itself refuses guard-band roots);
* nonclassical suite cases additionally keep the dominant-pole residue
  weight of Psi*/Phi* inside a window where the root-test growth
  estimator at order 40 sits within its 2% target.  The estimator's
  finite-order bias is |K|**(1/J) with K the residue weight, so extreme
  residues make that pinned demonstration invalid rather than wrong.
"""

from __future__ import annotations

import math

import numpy as np

from opuc import (
    ComplexPoly,
    GuardViolationError,
    VerblunskySequence,
    second_kind_polys,
    szego_polys,
)
from opuc.poly import roots as poly_roots
from opuc.schur import as_rational_F

CLASSICAL_MARGIN = 1e-4
NONCLASSICAL_MARGIN = 1e-3


def draw_head(rng: np.random.Generator, n: int) -> list[complex]:
    """Head entries with modulus in (1.05, 3) or (0.05, 0.95), random phase."""
    out = []
    for _ in range(n):
        m = rng.uniform(1.05, 3.0) if rng.random() < 0.5 else rng.uniform(0.05, 0.95)
        out.append(m * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)))
    return [complex(a) for a in out]


def draw_tail(rng: np.random.Generator, n: int, max_mod: float = 0.8) -> list[complex]:
    return [complex(rng.uniform(0.0, max_mod) * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)))
            for _ in range(n)]


def circle_margin(seq: VerblunskySequence) -> float:
    """Smallest | |root| - 1 | over the denominator roots of F."""
    F = as_rational_F(seq)
    if F.den.degree < 1:
        return math.inf
    return min(abs(abs(r) - 1.0) for r in poly_roots(F.den))


def growth_demo_ok(seq: VerblunskySequence) -> bool:
    """True when the root-test growth estimator is inside its validity window.

    The moment ratio Psi*/Phi* expands into partial fractions over all the
    roots of Phi* (inside and outside the circle), so at order j the root
    test reads rate * |K|**(1/j) * (1 + contamination)**(1/j), with K the
    residue weight of the smallest in-disk root and the contamination the
    combined weight of every other root at the low end of the estimator
    window.  Keeping K in [0.75, 1.15] and the contamination under 0.05
    pins the order-40 bias below ~1%; outside that window the pinned
    (J = 40, 2%) demonstration is invalid rather than wrong.
    """
    L = len(seq)
    _, phistar = szego_polys(seq, L)
    _, psistar = second_kind_polys(seq, L)
    if phistar.degree < 1:
        return False
    rts = poly_roots(phistar)
    inside = sorted((r for r in rts if abs(r) < 1.0), key=abs)
    if not inside:
        return False
    dominant = inside[0]
    dphi = ComplexPoly([k * c for k, c in enumerate(phistar.coeffs)][1:])

    def residue(lam: complex) -> float:
        return abs(psistar(lam) / dphi(lam))

    k1 = residue(dominant) / (2.0 * abs(dominant))
    if not 0.75 <= k1 <= 1.15:
        return False
    base = residue(dominant) * abs(dominant) ** -21
    contamination = sum(residue(lam) * abs(lam) ** -21
                        for lam in rts if lam is not dominant)
    return contamination <= 0.05 * base


def random_classical(rng: np.random.Generator, max_len: int = 8,
                     max_mod: float = 0.9) -> VerblunskySequence:
    while True:
        seq = VerblunskySequence(draw_tail(rng, int(rng.integers(0, max_len + 1)), max_mod))
        if circle_margin(seq) >= CLASSICAL_MARGIN:
            return seq


def random_admissible(rng: np.random.Generator, head_max: int = 6,
                      tail_max: int = 6) -> VerblunskySequence:
    """Any admissible sequence (no conditioning beyond the unit-circle guard)."""
    while True:
        head = draw_head(rng, int(rng.integers(0, head_max + 1)))
        tail = draw_tail(rng, int(rng.integers(0, tail_max + 1)))
        try:
            return VerblunskySequence(head + tail)
        except GuardViolationError:
            continue


def random_nonclassical(rng: np.random.Generator, head_max: int = 5,
                        tail_max: int = 8, require_growth_window: bool = True,
                        ) -> VerblunskySequence:
    """A suite case: at least one head entry outside the closed unit disk."""
    while True:
        head = draw_head(rng, int(rng.integers(1, head_max + 1)))
        if not any(abs(a) > 1.0 for a in head):
            continue
        try:
            seq = VerblunskySequence(head + draw_tail(rng, int(rng.integers(0, tail_max + 1))))
        except GuardViolationError:
            continue
        if circle_margin(seq) < NONCLASSICAL_MARGIN:
            continue
        if require_growth_window and not growth_demo_ok(seq):
            continue
        return seq
