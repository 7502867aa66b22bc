"""Dense complex polynomial arithmetic with explicit formal degrees.

Coefficients are stored constant term first: ``coeffs[k]`` multiplies
``z**k``.  A polynomial also carries a *formal* degree, possibly larger
than the index of its last nonzero coefficient; conjugate reversal is
taken with respect to the formal degree, so trimming trailing zeros
never loses the information needed to reverse.  Only exact zeros are
trimmed -- numerical near-zeros are data and are kept.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

DEFAULT_ROOT_TOL = 1e-12
DEFAULT_DISK_GUARD = 1e-8

_ABERTH_MAX_SWEEPS = 200


class RootFindingError(RuntimeError):
    """Neither Aberth iteration nor the companion fallback met the residual bound."""

    def __init__(self, message: str, residuals: Sequence[float] = ()) -> None:
        super().__init__(message)
        self.residuals = list(residuals)


class ComplexPoly:
    """Immutable dense polynomial with complex coefficients.

    Equality compares coefficient tuples only; the formal degree is
    reversal metadata, not part of the value.
    """

    __slots__ = ("coeffs", "formal_degree")

    coeffs: tuple[complex, ...]
    formal_degree: int

    def __init__(self, coeffs: Iterable[complex], formal_degree: int | None = None) -> None:
        cs = [complex(c) for c in coeffs]
        if not cs:
            cs = [0j]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        degree = -1 if (len(cs) == 1 and cs[0] == 0) else len(cs) - 1
        if formal_degree is None:
            formal_degree = max(degree, 0)
        formal_degree = int(formal_degree)
        if formal_degree < degree:
            raise ValueError(f"formal degree {formal_degree} below actual degree {degree}")
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "formal_degree", formal_degree)

    def __setattr__(self, name: str, value) -> None:
        raise AttributeError("ComplexPoly is immutable")

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient; -1 for the zero polynomial."""
        if len(self.coeffs) == 1 and self.coeffs[0] == 0:
            return -1
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.degree < 0

    def __call__(self, z):
        """Horner evaluation; ``z`` may be a complex scalar or an ndarray."""
        if isinstance(z, np.ndarray):
            acc = np.full(z.shape, self.coeffs[-1], dtype=complex)
            for c in self.coeffs[-2::-1]:
                acc = acc * z + c
            return acc
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def magnitude_bound(self, z) -> float:
        """sum_k |c_k| |z|**k, the natural scale for residual tests at ``z``."""
        az = abs(z)
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * az + abs(c)
        return acc

    def __add__(self, other: "ComplexPoly") -> "ComplexPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return ComplexPoly(out)

    def __sub__(self, other: "ComplexPoly") -> "ComplexPoly":
        out = list(self.coeffs) + [0j] * max(0, len(other.coeffs) - len(self.coeffs))
        for k, c in enumerate(other.coeffs):
            out[k] -= c
        return ComplexPoly(out)

    def __neg__(self) -> "ComplexPoly":
        return ComplexPoly([-c for c in self.coeffs], self.formal_degree)

    def __mul__(self, other):
        if isinstance(other, ComplexPoly):
            if self.is_zero() or other.is_zero():
                return ComplexPoly([0j])
            a, b = self.coeffs, other.coeffs
            out = [0j] * (len(a) + len(b) - 1)
            for i, ca in enumerate(a):
                if ca == 0:
                    continue
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
            return ComplexPoly(out)
        s = complex(other)
        return ComplexPoly([c * s for c in self.coeffs])

    __rmul__ = __mul__

    def shifted(self, k: int) -> "ComplexPoly":
        """Multiply by z**k (coefficient shift; exact)."""
        if k < 0:
            raise ValueError("shift must be nonnegative")
        if self.is_zero():
            return ComplexPoly([0j])
        return ComplexPoly([0j] * k + list(self.coeffs))

    def reverse(self, n: int | None = None) -> "ComplexPoly":
        """Conjugate reversal at degree ``n``: z**n * conj(p(1/conj(z))).

        Coefficientwise ``q[k] = conj(p[n-k])``; the result records ``n``
        as its formal degree so the reversal is an involution.
        """
        if n is None:
            n = self.formal_degree
        if n < self.degree:
            raise ValueError(f"reversal degree {n} below actual degree {self.degree}")
        padded = list(self.coeffs) + [0j] * (n + 1 - len(self.coeffs))
        return ComplexPoly([c.conjugate() for c in reversed(padded)], n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComplexPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"ComplexPoly({list(self.coeffs)!r}, formal_degree={self.formal_degree})"


def from_roots(rts: Iterable[complex], lead: complex = 1.0) -> ComplexPoly:
    """Expand lead * prod (z - r) into dense coefficients."""
    coeffs = [complex(lead)]
    for r in rts:
        r = complex(r)
        nxt = [0j] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c
            nxt[i] -= r * c
        coeffs = nxt
    return ComplexPoly(coeffs)


def _horner(c: np.ndarray, z: np.ndarray) -> np.ndarray:
    acc = np.full(z.shape, c[-1], dtype=complex)
    for ck in c[-2::-1]:
        acc = acc * z + ck
    return acc


def _scaled_residuals(c: np.ndarray, z: np.ndarray) -> np.ndarray:
    vals = np.abs(_horner(c, z))
    scale = _horner(np.abs(c).astype(complex), np.abs(z).astype(complex))
    return vals / np.maximum(np.abs(scale), 1e-300)


def _aberth(c: np.ndarray, tol: float) -> np.ndarray | None:
    """Simultaneous (Aberth-Ehrlich) iteration; None if not converged."""
    n = len(c) - 1
    dc = c[1:] * np.arange(1, n + 1)
    # Fujiwara-style start radius keeps the initial circle near the root annulus.
    radius = 2.0 * max(abs(c[k] / c[-1]) ** (1.0 / (n - k)) for k in range(n))
    radius = min(max(radius, 1e-3), 1e9)
    angles = 2.0 * np.pi * np.arange(n) / n + 0.39
    z = radius * np.exp(1j * angles)
    for _ in range(_ABERTH_MAX_SWEEPS):
        if (_scaled_residuals(c, z) <= tol).all():
            return z
        pv = _horner(c, z)
        dpv = _horner(dc, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            newton = np.where(dpv != 0, pv / np.where(dpv != 0, dpv, 1.0), 1.0)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            repulsion = (1.0 / diff).sum(axis=1)
            corr = newton / (1.0 - newton * repulsion)
        corr = np.where(np.isfinite(corr), corr,
                        np.where(np.isfinite(newton), newton, 0.3 + 0.2j))
        z = z - corr
    if (_scaled_residuals(c, z) <= tol).all():
        return z
    return None


def roots(p: ComplexPoly, tol: float = DEFAULT_ROOT_TOL) -> list[complex]:
    """All complex roots of the trimmed polynomial, with multiplicity.

    Exact zero coefficients at the low end deflate exactly (roots at the
    origin are reported as exactly 0).  Each returned root r satisfies
    ``|p(r)| <= tol * sum_k |c_k| |r|**k``; otherwise RootFindingError is
    raised with the offending residuals.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no well-defined root set")
    cs = list(p.coeffs)
    found: list[complex] = []
    while cs[0] == 0:
        cs.pop(0)
        found.append(0j)
    n = len(cs) - 1
    if n == 0:
        return found
    if n == 1:
        found.append(-cs[0] / cs[1])
        return found
    c = np.asarray(cs, dtype=complex)
    c = c / np.abs(c).max()
    cand = None
    if abs(c[-1]) > 1e-8:  # Aberth stalls when the leading coefficient is tiny
        cand = _aberth(c, tol)
    if cand is None:
        cand = np.roots(c[::-1])
    resid = _scaled_residuals(c, cand)
    if resid.max() > tol:
        fallback = np.roots(c[::-1])
        fb_resid = _scaled_residuals(c, fallback)
        if fb_resid.max() < resid.max():
            cand, resid = fallback, fb_resid
        if resid.max() > tol:
            raise RootFindingError(
                f"root residuals up to {resid.max():.3e} exceed tolerance {tol:.1e}",
                residuals=resid.tolist(),
            )
    found.extend(complex(r) for r in cand)
    return found


def series_div(num: ComplexPoly, den: ComplexPoly, order: int) -> list[complex]:
    """First ``order + 1`` Maclaurin coefficients of num/den by long division."""
    if den(0) == 0:
        raise ValueError("power-series division requires den(0) != 0")
    if order < 0:
        raise ValueError("order must be nonnegative")
    a = num.coeffs
    b = den.coeffs
    out: list[complex] = []
    for k in range(order + 1):
        s = a[k] if k < len(a) else 0j
        for i in range(1, min(k, len(b) - 1) + 1):
            s -= b[i] * out[k - i]
        out.append(s / b[0])
    return out


def split_by_circle(values: Iterable[complex], guard: float = DEFAULT_DISK_GUARD,
                    ) -> tuple[list[complex], list[complex], list[complex]]:
    """Partition points into (inside, ambiguous, outside) relative to the
    unit circle with a guard band of half-width ``guard``."""
    if guard <= 0:
        raise ValueError("guard must be positive")
    inside: list[complex] = []
    ambiguous: list[complex] = []
    outside: list[complex] = []
    for v in values:
        m = abs(v)
        if m <= 1.0 - guard:
            inside.append(v)
        elif m < 1.0 + guard:
            ambiguous.append(v)
        else:
            outside.append(v)
    return inside, ambiguous, outside


def count_in_disk(values: Iterable[complex], guard: float = DEFAULT_DISK_GUARD,
                  ) -> tuple[int, list[complex]]:
    """Count points with ``|v| <= 1 - guard``; the guard band is returned as
    ambiguous data, never silently classified."""
    inside, ambiguous, _ = split_by_circle(values, guard)
    return len(inside), ambiguous
