import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pillowcase.theta import (
    SIGMA,
    GroupElement,
    ThetaSpec,
    check_index_shift,
    check_quasi_periodicity,
    cocycle_eval,
    gram_matrix,
    hermitian_residual,
    inner_product,
    monomial_table,
    section_residual,
    theta_eval,
    theta_norm_sq,
    truncation_radius,
    verify_cocycle,
    zeta_eval,
    zeta_inner_product,
)

SPEC6 = ThetaSpec.for_level(6)
SPEC10 = ThetaSpec.for_level(10)

coords = st.floats(-0.5, 0.5)
points = st.builds(complex, coords, coords)


def naive_theta(j, z, N, terms=40):
    return sum(
        cmath.exp(-math.pi * (N * n * n + 2 * j * n) + 2j * math.pi * z * (j + N * n))
        for n in range(-terms, terms + 1)
    )


def test_theta_at_origin_frozen():
    # 1 + e^{-4 pi} + e^{-8 pi} + ...
    assert theta_eval(1, 0, SPEC6) == pytest.approx(1.0000034873545178, rel=1e-14)
    assert theta_eval(1, 0, SPEC6) == pytest.approx(1 + math.exp(-4 * math.pi) + math.exp(-8 * math.pi), rel=1e-14)


@pytest.mark.parametrize("N", [6, 12, 20])
def test_theta_zero_index_at_origin(N):
    spec = ThetaSpec.for_level(N)
    expected = 1 + 2 * math.exp(-math.pi * N) + 2 * math.exp(-4 * math.pi * N)
    assert theta_eval(0, 0, spec) == pytest.approx(expected, rel=1e-14)


@given(st.integers(-12, 12), points)
def test_theta_matches_naive_series(j, z):
    got = theta_eval(j, z, SPEC6)
    assert got == pytest.approx(naive_theta(j, z, 6), rel=1e-11)


def test_theta_accepts_arrays():
    z = np.array([0.1 + 0.2j, -0.3 + 0.05j])
    vals = theta_eval(2, z, SPEC6)
    assert vals.shape == (2,)
    assert vals[1] == pytest.approx(theta_eval(2, z[1], SPEC6))


def test_large_imaginary_part_widens_series():
    z = 0.2 + 1.7j
    assert theta_eval(3, z, SPEC6) == pytest.approx(naive_theta(3, z, 6), rel=1e-10)


@given(st.integers(-12, 12), points)
def test_theta_reflection(j, z):
    assert theta_eval(-j, -z, SPEC6) == pytest.approx(theta_eval(j, z, SPEC6), rel=1e-10)


@given(st.integers(-12, 12), points)
def test_index_shift(j, z):
    assert check_index_shift(j, z, SPEC6) < 1e-9


@given(st.integers(-6, 6), st.integers(-2, 2), st.integers(-1, 1), points)
def test_quasi_periodicity(j, m, n, z):
    assert check_quasi_periodicity(j, m, n, z, SPEC6) < 1e-9


def test_quasi_periodicity_named_points():
    assert check_quasi_periodicity(1, 1, 0, 0.13 - 0.4j, SPEC6) < 1e-10
    assert check_quasi_periodicity(1, 0, 1, 0.3 + 0.2j, SPEC6) < 1e-9


@given(st.integers(-10, 10), points)
def test_zeta_odd_and_vanishes_at_origin(j, z):
    assert zeta_eval(j, -z, SPEC10) == pytest.approx(-zeta_eval(j, z, SPEC10), abs=1e-12)
    assert abs(zeta_eval(j, 0, SPEC10)) < 1e-12


def cancellation_scale(j, z, spec):
    # size of the two theta terms whose difference forms zeta_j
    c = (spec.N / 2) ** 0.25 * math.exp(-math.pi * j * j / spec.N)
    return c * (abs(theta_eval(j, z, spec)) + abs(theta_eval(-j, z, spec)))


@given(points)
def test_zeta_reduction_rules(z):
    r = SPEC10.r
    assert abs(zeta_eval(r, z, SPEC10)) < 1e-12
    for k in range(1, r):
        # near the imaginary axis zeta is tiny and only rounding residue survives
        def floor(*js):
            return 1e-13 * max(cancellation_scale(j, z, SPEC10) for j in js)

        assert zeta_eval(r + k, z, SPEC10) == pytest.approx(-zeta_eval(r - k, z, SPEC10), rel=1e-9, abs=floor(r + k, r - k))
        assert zeta_eval(-k, z, SPEC10) == pytest.approx(-zeta_eval(k, z, SPEC10), rel=1e-12)
        assert zeta_eval(k + 2 * r, z, SPEC10) == pytest.approx(zeta_eval(k, z, SPEC10), rel=1e-9, abs=floor(k + 2 * r, k))


@pytest.mark.parametrize("N", [6, 10, 20])
def test_gram_matrix_is_identity(N):
    spec = ThetaSpec.for_level(N)
    np.testing.assert_allclose(gram_matrix(spec), np.eye(N // 2 - 1), atol=1e-8)


@pytest.mark.parametrize("N", [6, 14])
def test_theta_norm_closed_form(N):
    spec = ThetaSpec.for_level(N)
    for j in range(N):
        expected = math.exp(2 * math.pi * j * j / N) / math.sqrt(2 * N)
        assert theta_norm_sq(j, spec) == pytest.approx(expected, rel=1e-10)


def test_theta_norm_against_plain_riemann_sum():
    # crude independent quadrature: midpoint rule on a fine grid
    N, j = 6, 2
    n = 600
    x = (np.arange(n) + 0.5) / n
    z = x[None, :] + 1j * x[:, None]
    vals = np.abs(naive_theta_grid(j, z, N)) ** 2 * np.exp(-2 * N * np.pi * x[:, None] ** 2)
    assert vals.mean() == pytest.approx(theta_norm_sq(j, SPEC6), rel=1e-5)


def naive_theta_grid(j, z, N):
    return sum(
        np.exp(-math.pi * (N * n * n + 2 * j * n) + 2j * math.pi * z * (j + N * n)) for n in range(-8, 9)
    )


def test_distinct_thetas_orthogonal():
    spec = SPEC10
    for j in range(spec.N):
        for k in range(spec.N):
            if j != k:
                ip = inner_product(1, j, k, spec)
                scale = math.sqrt(theta_norm_sq(j, spec) * theta_norm_sq(k, spec))
                assert abs(ip) / scale < 1e-10


def test_inner_product_is_hermitian():
    a = inner_product((1, 2), 3, 4, SPEC10)
    b = inner_product((-1, -2), 4, 3, SPEC10)
    assert a == pytest.approx(np.conj(b), rel=1e-12)


def test_monomial_table_agrees_with_pointwise():
    table = monomial_table(2, -1, range(1, 5), SPEC10)
    assert table[2, 0] == pytest.approx(zeta_inner_product((2, -1), 1, 3, SPEC10), abs=1e-13)


def test_quadrature_converges_in_y():
    coarse = ThetaSpec.for_level(8, quad_y=400)
    fine = ThetaSpec.for_level(8, quad_y=800)
    for p, q in [(0, 0), (1, 3), (-2, 5)]:
        a = inner_product((p, q), 1, (1 + p) % 8, coarse)
        b = inner_product((p, q), 1, (1 + p) % 8, fine)
        assert abs(a - b) < 1e-12 * abs(a)


def test_symbol_frequency_limit():
    spec = ThetaSpec.for_level(6, max_freq=2)
    with pytest.raises(ValueError):
        inner_product((5, 0), 0, 5, spec)


def test_truncation_radius_grows_with_tolerance():
    assert truncation_radius(6, 12, 1.0, 1e-10) <= truncation_radius(6, 12, 1.0, 1e-20)
    assert ThetaSpec.for_level(6).M == truncation_radius(6, 12, 1.0, 1e-10)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(N=7, M=10, quad_x=401, quad_y=400, tol=1e-10),
        dict(N=4, M=10, quad_x=401, quad_y=400, tol=1e-10),
        dict(N=6, M=1, quad_x=401, quad_y=400, tol=1e-10),
        dict(N=6, M=10, quad_x=5, quad_y=400, tol=1e-10),
        dict(N=6, M=10, quad_x=401, quad_y=30, tol=1e-10),
        dict(N=6, M=10, quad_x=401, quad_y=400, tol=0),
    ],
)
def test_invalid_spec(kwargs):
    with pytest.raises(ValueError):
        ThetaSpec(**kwargs)


def test_group_composition():
    g, h = GroupElement(1, 2), GroupElement(-1, 0, -1)
    z = 0.3 + 0.1j
    assert g.then(h).act(z) == pytest.approx(h.act(g.act(z)))
    assert SIGMA.then(SIGMA) == GroupElement(0, 0, 1)
    with pytest.raises(ValueError):
        GroupElement(0, 0, 2)


def test_cocycle_named_values():
    z = 0.2 - 0.35j
    expected = -cmath.exp(math.pi * (z * (1 - 1j) + 1))
    assert cocycle_eval(z, GroupElement(1, 1)) == pytest.approx(expected, rel=1e-14)
    assert cocycle_eval(z, SIGMA) == -1
    assert cocycle_eval(z, SIGMA, N=4) == 1


group_elements = st.builds(GroupElement, st.integers(-3, 3), st.integers(-3, 3), st.sampled_from([1, -1]))


@given(points, group_elements, group_elements)
def test_cocycle_condition(z, g, h):
    assert verify_cocycle(z, g, h) < 1e-10
    assert verify_cocycle(z, g, h, N=6) < 1e-10


@given(points, group_elements, group_elements, group_elements)
def test_cocycle_extension_is_associative(z, f, g, h):
    left = f.then(g).then(h)
    right = f.then(g.then(h))
    assert left == right
    assert cocycle_eval(z, left) == pytest.approx(cocycle_eval(z, right), rel=1e-12)


@given(points, group_elements, group_elements)
def test_mu_nu_variant_is_also_a_cocycle(z, g, h):
    assert verify_cocycle(z, g, h, variant="mu-nu") < 1e-10


def test_mu_nu_variant_differs_on_odd_translations():
    z = 0.1 + 0.1j
    g = GroupElement(1, 0)
    assert cocycle_eval(z, g, variant="mu-nu") == pytest.approx(-cocycle_eval(z, g))
    with pytest.raises(ValueError):
        cocycle_eval(z, g, variant="bogus")


@given(points, st.integers(-3, 3), st.integers(-3, 3))
def test_hermitian_compatibility(z, m, n):
    assert hermitian_residual(z, m, n) < 1e-10


@given(st.integers(0, 9), points, st.integers(-1, 1), st.integers(-1, 1))
def test_section_equivariance(j, z, m, n):
    assert section_residual(j, z, m, n, SPEC10) < 1e-9
