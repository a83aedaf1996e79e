"""Acceptance criteria 1-11, one test each.

Every test prints a single ``[ACCEPT n] PASS|FAIL ...`` line (shown with
``pytest -s`` and repeated in the terminal summary by ``conftest.py``).
"""

import json
import subprocess
import sys

import numpy as np
import pytest

from berezin import (Automorphism, SymbolExpr, WeylOperator, basis_coeffs, blaschke_berezin_parts,
                     blaschke_fixed_point, boundary_limit_probe, comp_berezin, conjugate_partner,
                     convex_hull, convexity_defect, disk_rule, numerical_range_boundary,
                     polar_grid, sample_range, toeplitz_matrix, weyl_berezin, weyl_berezin_number,
                     weyl_isometry_residual, GridSpec, berezin_modsq_series, berezin_toeplitz,
                     required_dimension)
from berezin.composition import comp_lower_bound, weyl_lower_bound
from berezin.quadrature import adapted_rule
from berezin.ranges import hull_margin
from berezin.verify import (CONVEXITY_GRID, WEYL_TRIPLES, disk_sample, harmonic_symbols,
                            sample_polynomials)

RESULTS = []


def report(n, title, ok, **detail):
    parts = ", ".join(f"{k}={v:.6g}" if isinstance(v, float) else f"{k}={v}"
                      for k, v in detail.items())
    line = f"[ACCEPT {n:>2}] {'PASS' if ok else 'FAIL'} {title}: {parts}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_01_quadrature_exactness():
    worst = 0.0
    for g in (-0.9, -0.5, 0.0, 1.0, 3.0):
        rule = disk_rule(64, 256, g)
        c = basis_coeffs(20, g)
        t = np.abs(rule.points) ** 2
        for n in range(21):
            worst = max(worst, abs(np.dot(rule.weights, t ** n) - 1.0 / c[n]))
    report(1, "quadrature exactness", worst <= 1e-11, max_error=worst)


def test_02_harmonic_identity_three_routes():
    w = disk_sample(200, 0.8)
    symbols = harmonic_symbols(10)
    err, gap = 0.0, 0.0
    for g in (-0.5, 0.0, 1.0, 2.5):
        rule = adapted_rule(0.8, g)
        n = required_dimension(0.8, g)
        for s in symbols:
            exact = s(w)
            vals = [berezin_toeplitz(s, w, g, "quad", rule=rule),
                    berezin_toeplitz(s, w, g, "covariant", rule=rule),
                    berezin_toeplitz(s, w, g, "matrix", n=n)]
            err = max(err, *(float(np.max(np.abs(v - exact))) for v in vals))
            gap = max(gap, *(float(np.max(np.abs(vals[i] - vals[j])))
                             for i, j in ((0, 1), (0, 2), (1, 2))))
    report(2, "Ber(T_phi) = phi(D) for harmonic phi", err <= 1e-7 and gap <= 1e-7,
           max_error=err, max_route_gap=gap)


def test_03_indicator_disjoint():
    spec = GridSpec(40, 64, 0.95)
    radii = np.concatenate(([0.0], spec.r_max * np.arange(1, spec.n_radii + 1) / spec.n_radii))
    angles = np.exp(2j * np.pi * np.array([0, 13, 29, 47]) / spec.n_angles)
    ind = SymbolExpr.indicator(0.5)
    lo, hi, at0, spread = 1.0, 0.0, 0.0, 0.0
    for g in (-0.5, 0.0, 1.0):
        v = berezin_toeplitz(ind, radii[:, None] * angles[None, :], g).real
        spread = max(spread, float(np.max(np.ptp(v, axis=1))))
        lo, hi = min(lo, float(v.min())), max(hi, float(v.max()))
        at0 = max(at0, abs(v[0, 0] - (1.0 - 0.75 ** (g + 1.0))))
    ok = lo > 1e-4 and hi < 1 - 1e-4 and at0 <= 1e-8 and spread <= 1e-12
    report(3, "indicator range inside (delta, 1-delta)", ok, min=lo, max=hi, origin_error=at0,
           rotation_spread=spread)


def test_04_modsq_series():
    m = SymbolExpr.modsq()
    r = np.round(np.arange(0.0, 0.951, 0.05), 10)
    off_axis = r * np.exp(0.7j)
    gap, low, high, at0 = 0.0, np.inf, -np.inf, 0.0
    for g in (-0.5, 0.0, 1.0):
        series = np.array([berezin_modsq_series(x, g) for x in r])
        quad = berezin_toeplitz(m, off_axis, g).real
        gap = max(gap, float(np.max(np.abs(series - quad))))
        low = min(low, float(np.min(np.concatenate((series, quad)) - (1 / (g + 2) - 1e-9))))
        high = max(high, float(np.max(np.concatenate((series, quad)))))
        at0 = max(at0, abs(series[0] - 1 / (g + 2)))
    ok = gap <= 1e-8 and low >= 0 and high < 1 and at0 <= 1e-10
    report(4, "|z|^2 series vs quadrature, range in [1/(g+2), 1)", ok, route_gap=gap,
           max_value=high, origin_error=at0)


def test_05_weyl_unitarity():
    worst = 0.0
    polys = sample_polynomials(10)
    for beta, eta, g in WEYL_TRIPLES:
        rule = disk_rule(64, 256, g)
        op = WeylOperator(beta, eta, g)
        worst = max(worst, max(weyl_isometry_residual(op, f, rule) for f in polys))
    report(5, "Weyl-type operator is isometric", worst <= 1e-8, max_residual=worst)


def test_06_weyl_berezin_number():
    spec = GridSpec(40, 64, 0.99)
    grid = polar_grid(spec)
    cell = spec.r_max / spec.n_radii
    err, far = 0.0, 0.0
    for beta in (0.3, 0.6, 0.8j):
        for g in (0.0, 1.0):
            val, arg = weyl_berezin_number(beta, g, grid)
            err = max(err, abs(val - (1 - abs(beta) ** 2) ** ((g + 2) / 2)))
            far = max(far, abs(arg))
    report(6, "ber = (1-|beta|^2)^((g+2)/2) for eta=1", err <= 1e-6 and far <= cell,
           max_error=err, argmax_distance=far, cell=cell)


def test_07_weyl_eta_minus_one():
    grid = polar_grid(GridSpec(40, 64, 0.999))
    fixed, imag, top, low = 0.0, 0.0, 0.0, np.inf
    for beta in (0.6, 0.3j, -0.5 + 0.5j):
        for g in (0.0, 1.0):
            op = WeylOperator(beta, -1, g)
            fixed = max(fixed, abs(weyl_berezin(op, blaschke_fixed_point(beta)) - 1))
            v = weyl_berezin(op, grid)
            imag = max(imag, float(np.max(np.abs(v.imag))))
            top = max(top, float(v.real.max()))
            low = min(low, float(v.real.min()))
    ok = fixed <= 1e-10 and imag <= 1e-10 and 0 < low and top <= 1 + 1e-10 and low < 0.01
    report(7, "Ber = (0, 1] for eta=-1", ok, fixed_point_error=fixed, max_imag=imag, min=low,
           max=top)


def test_08_zero_exclusion():
    spec = GridSpec(40, 64, 0.999)
    ratio = np.inf
    for beta, eta, g in WEYL_TRIPLES:
        s = sample_range(lambda w: weyl_berezin(WeylOperator(beta, eta, g), w), spec)
        ratio = min(ratio, float(np.min(np.abs(s.values) / weyl_lower_bound(beta, g, s.points))))
        s = sample_range(lambda w: comp_berezin(Automorphism(beta, eta), g, w), spec)
        ratio = min(ratio, float(np.min(np.abs(s.values) / comp_lower_bound(g, s.points))))
    radii = [0.9, 0.99, 0.999]
    tail_comp = abs(boundary_limit_probe(
        lambda w: comp_berezin(Automorphism(0.5, 1), 0.0, w), 1j, radii)[-1])
    tail_weyl = abs(boundary_limit_probe(
        lambda w: weyl_berezin(WeylOperator(0.6, 1, 0.0), w), 1j, radii)[-1])
    ok = ratio > 1 and tail_comp < 1e-2 and tail_weyl < 1e-2
    report(8, "zero excluded, 0 in closure", ok, min_ratio_to_bound=ratio,
           comp_at_0999=float(tail_comp), weyl_at_0999=float(tail_weyl))


CONVEXITY_CASES = [
    ("elliptic-eta-1-point", 0, 1, (0.0,), "degenerate-point"),
    ("elliptic-eta-minus-1-segment", 0, -1, (0.0,), "degenerate-segment"),
    ("elliptic-eta-i-nonconvex", 0, 1j, (0.0,), "non-convex"),
    ("blaschke-beta-0-point", 0, 1, (-0.5, 0.0), "degenerate-point"),
    ("blaschke-beta-0.5-nonconvex", 0.5, 1, (-0.5, 0.0), "non-convex"),
]


def test_09_convexity_verdicts():
    got = {}
    for name, beta, eta, gammas, expected in CONVEXITY_CASES:
        for g in gammas:
            s = sample_range(lambda w: comp_berezin(Automorphism(beta, eta), g, w), CONVEXITY_GRID)
            got[(name, g)] = (convexity_defect(s, 20000, 0).verdict, expected)
    api_ok = all(v == e for v, e in got.values())
    res = subprocess.run([sys.executable, "-m", "berezin", "verify", "convexity"],
                         capture_output=True, text=True, check=False)
    checks = {c["name"]: c["passed"] for c in json.loads(res.stdout)["checks"]}
    cli_ok = res.returncode == 0 and all(checks.get(c[0]) for c in CONVEXITY_CASES)
    report(9, "convexity verdicts (API and `berezin verify convexity`)", api_ok and cli_ok,
           api=f"{sum(v == e for v, e in got.values())}/{len(got)}",
           cli=f"{sum(map(bool, checks.values()))}/{len(CONVEXITY_CASES)}")


def test_10_polar_parts_and_conjugation():
    rng = np.random.default_rng(2024)
    beta = 0.95 * np.sqrt(rng.random(200)) * np.exp(2j * np.pi * rng.random(200))
    w = 0.99 * np.sqrt(rng.random(200)) * np.exp(2j * np.pi * rng.random(200))
    polar, conj = 0.0, 0.0
    for g in (-0.5, 0.0, 1.5):
        for b, x in zip(beta, w):
            a = Automorphism(b, 1)
            direct = comp_berezin(a, g, x)
            polar = max(polar, abs(blaschke_berezin_parts(b, g, x).value - direct))
            conj = max(conj, abs(comp_berezin(a, g, conjugate_partner(b, x)) - np.conj(direct)))
    report(10, "Re/Im polar parts and conjugation symmetry", polar <= 1e-10 and conj <= 1e-12,
           polar_error=polar, conjugation_error=conj)


def test_11_berezin_inside_numerical_range():
    w = polar_grid(GridSpec(10, 16, 0.9))
    margin = np.inf
    for s in (SymbolExpr.polynomial({(1, 0): 1}), SymbolExpr.polynomial({(1, 0): 1, (0, 1): 1}),
              SymbolExpr.modsq()):
        hull = convex_hull(numerical_range_boundary(toeplitz_matrix(s, 0.0, 64), 360))
        margin = min(margin, float(np.min(hull_margin(berezin_toeplitz(s, w, 0.0), hull))))
    report(11, "Berezin range inside numerical range (N=64)", margin >= -1e-6, min_margin=margin)
