import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from opuc.poly import (
    ComplexPoly,
    count_in_disk,
    from_roots,
    roots,
    series_div,
    split_by_circle,
)

# ---------------------------------------------------------------------------
# construction / evaluation


def test_eval_constant():
    assert ComplexPoly([1])(5) == 1


def test_eval_quadratic_at_one():
    # z^2 - z - 0.5 at z = 1
    assert ComplexPoly([-0.5, -1, 1])(1) == -0.5


def test_eval_at_i():
    # 1 - 2z at z = i
    assert ComplexPoly([1, -2])(1j) == 1 - 2j


def test_eval_on_array():
    p = ComplexPoly([1, -2])
    zs = np.array([1j, 1.0, 0.0])
    np.testing.assert_allclose(p(zs), [1 - 2j, -1, 1])


def test_trailing_exact_zeros_trimmed_but_near_zeros_kept():
    assert ComplexPoly([1, 2, 0.0]).coeffs == (1, 2)
    assert ComplexPoly([1, 2, 1e-300]).coeffs == (1, 2, 1e-300)


def test_formal_degree_below_actual_rejected():
    with pytest.raises(ValueError):
        ComplexPoly([1, 2, 3], formal_degree=1)


def test_zero_polynomial():
    p = ComplexPoly([])
    assert p.coeffs == (0j,)
    assert p.is_zero() and p.degree == -1


# ---------------------------------------------------------------------------
# reversal


def test_reverse_constant():
    assert ComplexPoly([1]).reverse(0).coeffs == (1,)


def test_reverse_real_linear():
    # z - 2 at degree 1 -> 1 - 2z
    assert ComplexPoly([-2, 1]).reverse(1).coeffs == (1, -2)


def test_reverse_complex_linear():
    # 3 + iz at degree 1 -> conj-flip: -i + 3z
    assert ComplexPoly([3, 1j]).reverse(1).coeffs == (-1j, 3)


def test_reverse_requires_degree_at_least_actual():
    with pytest.raises(ValueError):
        ComplexPoly([1, 2, 3]).reverse(1)


complexes = st.complex_numbers(max_magnitude=3.0, allow_nan=False, allow_infinity=False)


@settings(max_examples=60, deadline=None)
@given(st.lists(complexes, min_size=1, max_size=8), st.integers(0, 4))
def test_reverse_involution(cs, extra):
    p = ComplexPoly(cs)
    n = max(p.degree, 0) + extra
    assert p.reverse(n).reverse(n) == p


@settings(max_examples=60, deadline=None)
@given(st.lists(complexes, min_size=1, max_size=8), st.floats(0, 2 * math.pi))
def test_reverse_preserves_modulus_on_circle(cs, theta):
    p = ComplexPoly(cs)
    z = complex(math.cos(theta), math.sin(theta))
    n = max(p.degree, 0)
    lhs = abs(p.reverse(n)(z))
    rhs = abs(p(z))
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, rhs)


# ---------------------------------------------------------------------------
# arithmetic


def test_mul():
    assert (ComplexPoly([1, 1]) * ComplexPoly([1, -1])).coeffs == (1, 0, -1)


def test_add():
    assert (ComplexPoly([1]) + ComplexPoly([0, 1])).coeffs == (1, 1)


def test_scale():
    assert (ComplexPoly([1, 2]) * -0.5).coeffs == (-0.5, -1)


def test_sub_cancels_exactly():
    p = ComplexPoly([1, 2, 3])
    assert (p - p).is_zero()


def test_shifted():
    assert ComplexPoly([1, 2]).shifted(2).coeffs == (0, 0, 1, 2)


# ---------------------------------------------------------------------------
# roots


def test_roots_quadratic():
    # oracle: quadratic formula for z^2 - z - 0.5 gives (1 +- sqrt(3)) / 2
    expected = sorted([(1 + math.sqrt(3)) / 2, (1 - math.sqrt(3)) / 2])
    got = sorted(r.real for r in roots(ComplexPoly([-0.5, -1, 1])))
    assert np.allclose(got, expected, atol=1e-12)


def test_roots_linear():
    assert roots(ComplexPoly([1, -2])) == [0.5]


def test_roots_deflates_origin_exactly():
    assert roots(ComplexPoly([0, 0, 0, 1])) == [0j, 0j, 0j]


def test_roots_of_zero_poly_rejected():
    with pytest.raises(ValueError):
        roots(ComplexPoly([0]))


def test_roots_residuals_meet_contract():
    rng = np.random.default_rng(3)
    for _ in range(30):
        deg = int(rng.integers(2, 14))
        cs = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
        p = ComplexPoly(cs)
        for r in roots(p):
            assert abs(p(r)) <= 1e-12 * p.magnitude_bound(r)


def test_roots_reconstruction_matches_monic_input():
    # oracle: multiply the monic factors back together with numpy
    rng = np.random.default_rng(11)
    for _ in range(25):
        deg = int(rng.integers(2, 21))
        cs = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
        cs[-1] += 2.0  # keep the leading coefficient well away from zero
        p = ComplexPoly(cs)
        rebuilt = np.poly(np.array(roots(p)))[::-1]  # monic, constant first
        monic = np.array(p.coeffs) / p.coeffs[-1]
        scale = max(1.0, np.abs(monic).max())
        assert np.max(np.abs(rebuilt - monic)) <= 1e-8 * scale


@settings(max_examples=40, deadline=None)
@given(st.lists(complexes, min_size=2, max_size=7),
       st.complex_numbers(min_magnitude=0.3, max_magnitude=2.0,
                          allow_nan=False, allow_infinity=False))
def test_roots_reconstruction_property(cs, lead):
    p = ComplexPoly(list(cs) + [lead])
    rebuilt = np.poly(np.array(roots(p)))[::-1]
    monic = np.array(p.coeffs) / p.coeffs[-1]
    scale = max(1.0, float(np.abs(monic).max()))
    assert np.max(np.abs(rebuilt - monic)) <= 1e-8 * scale


# ---------------------------------------------------------------------------
# power-series division


def test_series_div_geometric():
    # oracle: (1 + 2z)/(1 - 2z) = 1 + 2 * sum (2z)^j = 1 + 4z + 8z^2 + 16z^3 + ...
    got = series_div(ComplexPoly([1, 2]), ComplexPoly([1, -2]), 3)
    assert got == [1, 4, 8, 16]


def test_series_div_trivial():
    assert series_div(ComplexPoly([1]), ComplexPoly([1]), 2) == [1, 0, 0]


def test_series_div_geometric_ones():
    assert series_div(ComplexPoly([1]), ComplexPoly([1, -1]), 3) == [1, 1, 1, 1]


def test_series_div_rejects_zero_constant_denominator():
    with pytest.raises(ValueError):
        series_div(ComplexPoly([1]), ComplexPoly([0, 1]), 2)


@settings(max_examples=60, deadline=None)
@given(st.lists(complexes, min_size=1, max_size=6),
       st.lists(complexes, min_size=0, max_size=5), st.integers(0, 12))
def test_series_div_convolution_recovers_numerator(num_cs, den_tail, order):
    num = ComplexPoly(num_cs)
    den = ComplexPoly([1.0] + den_tail)
    q = series_div(num, den, order)
    conv = np.convolve(q, np.array(den.coeffs))[: order + 1]
    want = np.array(list(num.coeffs) + [0] * (order + 1))[: order + 1]
    scale = max(1.0, float(np.abs(want).max()), float(np.abs(q).max()))
    assert np.max(np.abs(conv - want)) <= 1e-12 * scale


# ---------------------------------------------------------------------------
# disk classification


def test_count_in_disk_plain():
    count, amb = count_in_disk([0.5, 2.0], guard=1e-8)
    assert (count, amb) == (1, [])


def test_count_in_disk_guard_band_is_ambiguous():
    count, amb = count_in_disk([0.99999999 + 0j], guard=1e-6)
    assert count == 0 and amb == [0.99999999 + 0j]


def test_count_in_disk_empty():
    assert count_in_disk([], guard=1e-8) == (0, [])


def test_split_by_circle_requires_positive_guard():
    with pytest.raises(ValueError):
        split_by_circle([1.0], guard=0.0)


def test_from_roots_expands():
    p = from_roots([1.0, -1.0], lead=2.0)
    assert p.coeffs == (-2, 0, 2)
