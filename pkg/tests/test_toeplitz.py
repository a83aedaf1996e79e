import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from berezin import (DomainError, ResolutionError, SymbolExpr, berezin_from_matrix,
                     berezin_modsq_series, berezin_toeplitz, berezin_toeplitz_covariant,
                     berezin_toeplitz_quad, numerical_range_boundary, required_dimension,
                     toeplitz_matrix)
from berezin.ranges import convex_hull, hull_margin
from berezin.toeplitz import TruncatedOperator, kernel_tail_fraction
from berezin.verify import harmonic_symbols

Z = SymbolExpr.polynomial({(1, 0): 1})
ZBAR = SymbolExpr.polynomial({(0, 1): 1})
RE2 = SymbolExpr.polynomial({(1, 0): 1, (0, 1): 1})
MODSQ = SymbolExpr.modsq()
IND = SymbolExpr.indicator(0.5)

# mpmath (30 digits) sums of the |z|^2 series with Gamma-function coefficients
MODSQ_FROZEN = {(0.5, 0.0): 0.58913865206602834695, (0.5, 1.5): 0.4314570858097049151,
                (0.9, -0.5): 0.89264510420136542225, (0.3, 2.5): 0.28030761714669690476}
# mpmath 2-D integrals of |k_w|^2 dA_gamma over |z| <= 1/2
IND_FROZEN = {(0.4, 0.0): 0.19140625, (0.7, 1.0): 0.10130722862450192782}


def test_quad_examples():
    assert berezin_toeplitz_quad(SymbolExpr.constant(1), 0.7 - 0.2j, 1.3) == pytest.approx(1.0)
    assert berezin_toeplitz_quad(Z, 0.4 + 0.1j, 0.0) == pytest.approx(0.4 + 0.1j, abs=1e-12)
    assert berezin_toeplitz_quad(IND, 0.0, 0.0) == pytest.approx(0.25, abs=1e-14)


def test_covariant_examples():
    assert berezin_toeplitz_covariant(ZBAR, 0.3, 0.0) == pytest.approx(0.3, abs=1e-14)
    assert berezin_toeplitz_covariant(SymbolExpr.constant(2 - 1j), 0.5j, 0.5) == pytest.approx(2 - 1j)
    assert berezin_toeplitz_covariant(MODSQ, 0.0, 0.0) == pytest.approx(0.5, abs=1e-14)


@pytest.mark.parametrize("key", sorted(MODSQ_FROZEN))
def test_modsq_series_frozen(key):
    r, g = key
    assert berezin_modsq_series(r, g) == pytest.approx(MODSQ_FROZEN[key], abs=1e-14)
    assert berezin_toeplitz_quad(MODSQ, r, g) == pytest.approx(MODSQ_FROZEN[key], abs=1e-12)


@pytest.mark.parametrize("key", sorted(IND_FROZEN))
def test_indicator_frozen(key):
    w, g = key
    assert berezin_toeplitz_quad(IND, w, g).real == pytest.approx(IND_FROZEN[key], abs=1e-12)


def test_modsq_series_examples_and_errors():
    for g in (-0.5, 0.0, 1.0, 4.0):
        assert berezin_modsq_series(0.0, g) == pytest.approx(1.0 / (g + 2.0))
    v = berezin_modsq_series(0.5, 0.0)
    assert 0.5 < v < 1.0
    assert abs(v - berezin_toeplitz_quad(MODSQ, 0.5, 0.0)) <= 1e-8
    with pytest.raises(DomainError):
        berezin_modsq_series(1 - 1e-7, 0.0)


@pytest.mark.parametrize("g", [-0.5, 0.0, 1.0])
def test_modsq_series_bounds_and_observed_monotonicity(g):
    r = np.round(np.arange(0.0, 0.951, 0.05), 10)
    v = np.array([berezin_modsq_series(x, g) for x in r])
    assert np.all(v >= 1.0 / (g + 2.0) - 1e-15) and np.all(v < 1.0)
    # observed, not a theorem
    assert np.all(np.diff(v) > 0)


def test_matrix_examples():
    eye = toeplitz_matrix(SymbolExpr.constant(1), 0.0, 5).entries
    assert np.allclose(eye, np.eye(5))
    m = toeplitz_matrix(Z, 0.0, 3).entries
    expected = np.zeros((3, 3))
    expected[1, 0], expected[2, 1] = np.sqrt(1 / 2), np.sqrt(2 / 3)
    assert np.allclose(m, expected, atol=1e-15)
    d = toeplitz_matrix(MODSQ, 0.0, 8).entries
    n = np.arange(8)
    assert np.allclose(d, np.diag((n + 1) / (n + 2)), atol=1e-13)
    with pytest.raises(DomainError):
        toeplitz_matrix(Z, 0.0, 0)


@pytest.mark.parametrize("g", [-0.5, 0.0, 2.0])
def test_catalog_matrix_matches_closed_form(g):
    closed = toeplitz_matrix(SymbolExpr.polynomial({(1, 1): 1}), g, 20).entries
    quad = toeplitz_matrix(MODSQ, g, 20).entries
    assert np.allclose(closed, quad, atol=1e-12)


def test_hermitian_symbol_gives_hermitian_matrix():
    s = SymbolExpr.polynomial({(2, 1): 0.3 + 0.1j, (1, 2): 0.3 - 0.1j, (0, 0): 0.5, (3, 0): 1j,
                               (0, 3): -1j})
    m = toeplitz_matrix(s, 0.7, 30).entries
    assert np.max(np.abs(m - m.conj().T)) <= 1e-10
    ind = toeplitz_matrix(IND, 0.0, 24).entries
    assert np.max(np.abs(ind - ind.conj().T)) <= 1e-10


def test_from_matrix_examples():
    op = TruncatedOperator(np.eye(64, dtype=complex), 0.0)
    assert berezin_from_matrix(op, 0.5j) == pytest.approx(1.0)
    assert berezin_from_matrix(toeplitz_matrix(Z, 0.0, 60), 0.3) == pytest.approx(0.3, abs=1e-8)
    assert berezin_from_matrix(toeplitz_matrix(MODSQ, 1.0, 64), 0.0) == pytest.approx(1 / 3)


def test_resolution_error_recommends_dimension():
    op = toeplitz_matrix(Z, 2.5, 64)
    with pytest.raises(ResolutionError) as info:
        berezin_from_matrix(op, 0.8)
    need = info.value.required
    assert need == required_dimension(0.8, 2.5) and need > 64
    assert kernel_tail_fraction(0.8, 2.5, need) < 1e-10 <= kernel_tail_fraction(0.8, 2.5, need - 1)
    assert berezin_from_matrix(toeplitz_matrix(Z, 2.5, need), 0.8) == pytest.approx(0.8, abs=1e-8)


@pytest.mark.parametrize("g", [-0.5, 0.0, 1.0, 2.5])
def test_three_routes_agree_on_harmonic_symbols(g):
    rng = np.random.default_rng(int(10 * g) + 5)
    w = 0.8 * np.sqrt(rng.random(20)) * np.exp(2j * np.pi * rng.random(20))
    n = required_dimension(0.8, g)
    for s in harmonic_symbols(count=20, seed=99):
        q = berezin_toeplitz(s, w, g, "quad")
        c = berezin_toeplitz(s, w, g, "covariant")
        m = berezin_toeplitz(s, w, g, "matrix", n=n)
        assert np.max(np.abs(q - c)) <= 1e-7
        assert np.max(np.abs(q - m)) <= 1e-7
        assert np.max(np.abs(c - m)) <= 1e-7
        assert np.max(np.abs(q - s(w))) <= 1e-7


def test_values_bounded_by_norm_bound():
    rng = np.random.default_rng(3)
    w = 0.9 * np.sqrt(rng.random(30)) * np.exp(2j * np.pi * rng.random(30))
    s = SymbolExpr.polynomial({(1, 1): 0.5, (2, 0): -0.3j, (0, 0): 0.2})
    v = berezin_toeplitz_quad(s, w, 0.5)
    assert np.all(np.abs(v) <= s.norm_bound + 1e-8)


def test_unknown_method():
    with pytest.raises(DomainError):
        berezin_toeplitz(Z, 0.1, 0.0, method="series")


def test_numerical_range_examples():
    assert np.allclose(numerical_range_boundary(np.eye(3), 16), 1.0)
    pts = numerical_range_boundary(np.diag([0.0, 1.0]), 16)
    assert np.allclose(pts.imag, 0.0, atol=1e-15)
    assert pts.real.min() == pytest.approx(0.0, abs=1e-15)
    assert pts.real.max() == pytest.approx(1.0)
    sa = numerical_range_boundary(toeplitz_matrix(RE2, 0.0, 40), 64)
    assert np.max(np.abs(sa.imag)) <= 1e-8
    with pytest.raises(DomainError):
        numerical_range_boundary(np.eye(2), 4)


def test_numerical_range_of_z_is_nearly_the_disk():
    pts = numerical_range_boundary(toeplitz_matrix(Z, 0.0, 64), 90)
    assert np.all(np.abs(pts) < 1.0)
    assert np.min(np.abs(pts)) > 0.98  # truncation pulls the circle in slightly


@pytest.mark.parametrize("s", [Z, RE2, MODSQ], ids=["z", "z+zbar", "modsq"])
def test_berezin_values_inside_numerical_range(s):
    rng = np.random.default_rng(8)
    w = 0.85 * np.sqrt(rng.random(60)) * np.exp(2j * np.pi * rng.random(60))
    hull = convex_hull(numerical_range_boundary(toeplitz_matrix(s, 0.0, 64), 360))
    assert np.min(hull_margin(berezin_toeplitz_quad(s, w, 0.0), hull)) >= -1e-6


@settings(max_examples=25, deadline=None)
@given(st.floats(-0.9, 3.0), st.floats(0.0, 0.9), st.floats(0, 2 * np.pi))
def test_quad_and_series_agree(g, r, t):
    w = r * np.exp(1j * t)
    assert abs(berezin_toeplitz_quad(MODSQ, w, g) - berezin_modsq_series(w, g)) <= 1e-10
