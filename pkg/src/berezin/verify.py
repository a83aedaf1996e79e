"""Named theorem checks run by ``berezin verify``.

Every check returns a :class:`Check` with a pass flag and the measured
quantities it was decided on.  Suites are plain lists of check functions.
"""

from dataclasses import asdict, dataclass, field

import numpy as np

from .composition import (WeylOperator, blaschke_berezin_parts, comp_berezin, comp_lower_bound,
                          conjugate_partner, weyl_berezin, weyl_berezin_number,
                          weyl_berezin_squared_form, weyl_isometry_residual, weyl_lower_bound)
from .core import SpaceParams, basis_coeffs
from .quadrature import adapted_rule, disk_rule, gauss_jacobi_rule
from .ranges import (NONCONVEX, POINT, SEGMENT, GridSpec, boundary_limit_probe, convex_hull,
                     convexity_defect, hull_margin, polar_grid, sample_range)
from .symbols import Automorphism, SymbolExpr, blaschke_fixed_point
from .toeplitz import (berezin_from_matrix, berezin_modsq_series, berezin_toeplitz_covariant,
                       berezin_toeplitz_quad, numerical_range_boundary, required_dimension,
                       toeplitz_matrix)

GAMMAS = (-0.5, 0.0, 1.0, 2.5)
CONVEXITY_GRID = GridSpec(160, 128, 0.999)


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        self.passed = bool(self.passed)

    def to_dict(self):
        d = asdict(self)
        d["detail"] = {k: _plain(v) for k, v in self.detail.items()}
        return d


def _plain(v):
    if isinstance(v, (np.floating, np.integer, np.bool_)):
        return v.item()
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {k: _plain(x) for k, x in v.items()}
    return v


def harmonic_symbols(count=10, seed=7, max_degree=4):
    """Random harmonic polynomials ``sum a_m z^m + sum b_n zbar^n`` with ``sum |coef| <= 1``."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        coeffs = {(0, 0): complex(*rng.normal(size=2))}
        for k in range(1, max_degree + 1):
            coeffs[(k, 0)] = complex(*rng.normal(size=2))
            coeffs[(0, k)] = complex(*rng.normal(size=2))
        scale = sum(abs(a) for a in coeffs.values())
        out.append(SymbolExpr.polynomial({k: a / scale for k, a in coeffs.items()}))
    return out


def disk_sample(count=200, r_max=0.8, seed=11):
    """Deterministic points spread over ``|w| <= r_max`` (area-uniform)."""
    rng = np.random.default_rng(seed)
    r = r_max * np.sqrt(rng.random(count))
    return r * np.exp(2j * np.pi * rng.random(count))


# -- toeplitz ----------------------------------------------------------------

def check_quadrature_exactness():
    worst = 0.0
    for g in (-0.9, -0.5, 0.0, 1.0, 3.0):
        c = basis_coeffs(20, g)
        rule = disk_rule(64, 256, g)
        z2 = np.abs(rule.points) ** 2
        for n in range(21):
            worst = max(worst, abs(np.dot(rule.weights, z2 ** n) - 1.0 / c[n]))
    return Check("quadrature-exactness", worst <= 1e-11, {"max_error": worst})


def check_harmonic_identity():
    w = disk_sample()
    worst = 0.0
    worst_pair = 0.0
    for g in GAMMAS:
        p = SpaceParams(g)
        rule = adapted_rule(0.8, p)
        n = required_dimension(0.8, p)
        for s in harmonic_symbols():
            exact = s(w)
            q = berezin_toeplitz_quad(s, w, p, rule)
            cv = berezin_toeplitz_covariant(s, w, p, rule)
            mx = berezin_from_matrix(toeplitz_matrix(s, p, n), w, p)
            worst = max(worst, *(float(np.max(np.abs(v - exact))) for v in (q, cv, mx)))
            worst_pair = max(worst_pair, float(np.max(np.abs(q - cv))),
                             float(np.max(np.abs(q - mx))), float(np.max(np.abs(cv - mx))))
    return Check("thm-2.1-harmonic-identity", worst <= 1e-7 and worst_pair <= 1e-7,
                 {"max_error": worst, "max_route_disagreement": worst_pair})


def check_indicator_example():
    ind = SymbolExpr.indicator(0.5)
    w = polar_grid(GridSpec(19, 8, 0.95))
    lo, hi, at0 = 1.0, 0.0, 0.0
    for g in (-0.5, 0.0, 1.0):
        v = berezin_toeplitz_quad(ind, w, g).real
        lo, hi = min(lo, v.min()), max(hi, v.max())
        at0 = max(at0, abs(v[0] - (1.0 - 0.75 ** (g + 1.0))))
    ok = lo > 1e-4 and hi < 1.0 - 1e-4 and at0 <= 1e-8
    return Check("example-i-indicator-disjoint", ok, {"min": lo, "max": hi, "origin_error": at0})


def check_modsq_example():
    m = SymbolExpr.modsq()
    radii = np.round(np.arange(0.0, 0.951, 0.05), 10)
    disagreement, below, above, at0 = 0.0, -np.inf, -np.inf, 0.0
    for g in (-0.5, 0.0, 1.0):
        series = np.array([berezin_modsq_series(r, g) for r in radii])
        quad = berezin_toeplitz_quad(m, radii, g).real
        disagreement = max(disagreement, float(np.max(np.abs(series - quad))))
        below = max(below, float(np.max(1.0 / (g + 2.0) - 1e-9 - series)))
        above = max(above, float(np.max(series - 1.0)))
        at0 = max(at0, abs(series[0] - 1.0 / (g + 2.0)))
    ok = disagreement <= 1e-8 and below <= 0 and above < 0 and at0 <= 1e-10
    return Check("example-ii-modsq-bounds", ok,
                 {"route_disagreement": disagreement, "origin_error": at0})


def check_numerical_range_containment():
    w = polar_grid(GridSpec(10, 16, 0.8))
    worst = np.inf
    for s in (SymbolExpr.polynomial({(1, 0): 1}),
              SymbolExpr.polynomial({(1, 0): 1, (0, 1): 1}),
              SymbolExpr.modsq()):
        op = toeplitz_matrix(s, 0.0, 64)
        hull = convex_hull(numerical_range_boundary(op, 360))
        worst = min(worst, float(np.min(hull_margin(berezin_toeplitz_quad(s, w, 0.0), hull))))
    return Check("berezin-in-numerical-range", worst >= -1e-6, {"min_margin": worst})


# -- weyl --------------------------------------------------------------------

WEYL_TRIPLES = ((0.5, 1.0, 0.0), (0.3j, 1j, 1.0), (-0.4 + 0.2j, -1.0, -0.5),
                (0.6, np.exp(1j * np.pi / 3), 2.0), (0.2 - 0.5j, -1j, 0.5))


def sample_polynomials(count=10, seed=3, max_degree=6):
    rng = np.random.default_rng(seed)
    out = [[1.0], [0.0, 1.0]]
    while len(out) < count:
        deg = int(rng.integers(2, max_degree + 1))
        out.append(list(rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)))
    return out


def check_unitarity():
    worst = 0.0
    for beta, eta, g in WEYL_TRIPLES:
        op = WeylOperator(beta, eta, g)
        rule = disk_rule(64, 256, g)
        for f in sample_polynomials():
            worst = max(worst, weyl_isometry_residual(op, f, rule))
    return Check("unitarity-residual", worst <= 1e-8, {"max_residual": worst})


def check_weyl_number():
    spec = GridSpec(40, 64, 0.99)
    grid = polar_grid(spec)
    cell = spec.r_max / spec.n_radii
    worst, far = 0.0, 0.0
    for beta in (0.3, 0.6, 0.8j):
        for g in (0.0, 1.0):
            val, arg = weyl_berezin_number(beta, g, grid)
            worst = max(worst, abs(val - (1.0 - abs(beta) ** 2) ** ((g + 2.0) / 2.0)))
            far = max(far, abs(arg))
    return Check("weyl-ber-eta-1", worst <= 1e-6 and far <= cell,
                 {"max_error": worst, "max_argmax_modulus": far, "cell": cell})


def check_weyl_minus_one():
    grid = polar_grid(GridSpec(40, 64, 0.999))
    fixed_err, imag, top, low = 0.0, 0.0, 0.0, 1.0
    for beta in (0.6, 0.3j, -0.5 + 0.5j):
        for g in (0.0, 1.0):
            op = WeylOperator(beta, -1.0, g)
            fixed_err = max(fixed_err, abs(weyl_berezin(op, blaschke_fixed_point(beta)) - 1.0))
            v = weyl_berezin(op, grid)
            imag = max(imag, float(np.max(np.abs(v.imag))))
            top = max(top, float(v.real.max()))
            low = min(low, float(v.real.min()))
    ok = fixed_err <= 1e-10 and imag <= 1e-10 and top <= 1.0 + 1e-10 and 0.0 < low < 0.01
    return Check("weyl-range-eta-minus-1", ok,
                 {"fixed_point_error": fixed_err, "max_imag": imag, "max": top, "min": low})


def check_weyl_branch():
    w = disk_sample(200, 0.95)
    worst = 0.0
    for beta, eta, g in WEYL_TRIPLES:
        op = WeylOperator(beta, eta, g)
        a = np.abs(weyl_berezin(op, w))
        b = np.abs(weyl_berezin_squared_form(op, w))
        worst = max(worst, float(np.max(np.abs(a - b))))
    return Check("weyl-branch-consistency", worst <= 1e-10, {"max_modulus_gap": worst})


def check_zero_exclusion():
    grid = polar_grid(GridSpec(40, 64, 0.999))
    ratio = np.inf
    for beta, eta, g in WEYL_TRIPLES:
        v = np.abs(weyl_berezin(WeylOperator(beta, eta, g), grid))
        ratio = min(ratio, float(np.min(v / weyl_lower_bound(beta, g, grid))))
        v = np.abs(comp_berezin(Automorphism(beta, eta), g, grid))
        ratio = min(ratio, float(np.min(v / comp_lower_bound(g, grid))))
    radii = [0.9, 0.99, 0.999]
    probes = {
        "blaschke": lambda w: comp_berezin(Automorphism(0.5, 1.0), 0.0, w),
        "elliptic": lambda w: comp_berezin(Automorphism(0.0, 1j), 0.0, w),
        "weyl": lambda w: weyl_berezin(WeylOperator(0.6, 1.0, 0.0), w),
    }
    tails = {k: float(np.abs(boundary_limit_probe(f, 1j, radii))[-1]) for k, f in probes.items()}
    ok = ratio > 1.0 and all(t < 1e-2 for t in tails.values())
    return Check("zero-exclusion", ok, {"min_ratio_to_bound": ratio, **tails})


# -- composition -------------------------------------------------------------

def _random_pairs(count=200, seed=5):
    rng = np.random.default_rng(seed)
    beta = 0.95 * np.sqrt(rng.random(count)) * np.exp(2j * np.pi * rng.random(count))
    w = 0.99 * np.sqrt(rng.random(count)) * np.exp(2j * np.pi * rng.random(count))
    return beta, w


def check_polar_parts():
    worst = 0.0
    for g in (-0.5, 0.0, 1.5):
        for b, w in zip(*_random_pairs()):
            parts = blaschke_berezin_parts(b, g, w)
            worst = max(worst, abs(parts.value - comp_berezin(Automorphism(b, 1.0), g, w)))
    return Check("polar-parts-reconstruction", worst <= 1e-10, {"max_error": worst})


def check_conjugation():
    worst = 0.0
    for g in (-0.5, 0.0, 1.5):
        for b, w in zip(*_random_pairs(seed=6)):
            a = Automorphism(b, 1.0)
            lhs = comp_berezin(a, g, conjugate_partner(b, w))
            worst = max(worst, abs(lhs - np.conj(comp_berezin(a, g, w))))
    return Check("conjugation-partner", worst <= 1e-12, {"max_error": worst})


def check_real_segment():
    worst = 0.0
    for beta in (0.5, 0.3j, -0.4 + 0.4j):
        r = np.linspace(-0.9, 0.9, 37) / abs(beta)
        for g in (-0.5, 0.0, 2.0):
            v = comp_berezin(Automorphism(beta, 1.0), g, r * beta)
            worst = max(worst, float(np.max(np.abs(v - (1.0 - r * abs(beta) ** 2) ** (g + 2.0)))))
    return Check("real-segment-formula", worst <= 1e-10, {"max_error": worst})


def check_elliptic_shape():
    grid = polar_grid(GridSpec(40, 64, 0.999))
    diam_one = np.ptp(np.abs(comp_berezin(Automorphism(0, 1.0), 0.0, grid) - 1.0))
    v = comp_berezin(Automorphism(0, np.exp(1j * np.pi / 3)), 0.0, grid)
    diam_rot = float(np.max(np.abs(v[:, None] - v[None, :])))
    im_real = float(np.max(np.abs(comp_berezin(Automorphism(0, -1.0), 0.0, grid).imag)))
    im_i = float(np.max(np.abs(comp_berezin(Automorphism(0, 1j), 0.0, grid).imag)))
    ok = diam_one <= 1e-12 and diam_rot > 0.1 and im_real <= 1e-10 and im_i > 0.05
    return Check("elliptic-range-shape", ok, {"diameter_eta_1": float(diam_one), "diameter_eta_rot": diam_rot,
                                        "max_imag_eta_minus_1": im_real, "max_imag_eta_i": im_i})


# -- convexity ---------------------------------------------------------------

def _verdict(beta, eta, g):
    sample = sample_range(lambda w: comp_berezin(Automorphism(beta, eta), g, w), CONVEXITY_GRID)
    return convexity_defect(sample, n_pairs=20000, seed=0)


def _convexity_check(name, beta, eta, gammas, expected):
    reports = {g: _verdict(beta, eta, g) for g in gammas}
    ok = all(r.verdict == expected for r in reports.values())
    detail = {f"gamma={g}": {"verdict": r.verdict, "defect": r.defect, "threshold": r.threshold}
              for g, r in reports.items()}
    return Check(name, ok, detail)


def check_elliptic_point():
    return _convexity_check("elliptic-eta-1-point", 0, 1.0, (0.0,), POINT)


def check_elliptic_segment():
    return _convexity_check("elliptic-eta-minus-1-segment", 0, -1.0, (0.0,), SEGMENT)


def check_elliptic_nonconvex():
    return _convexity_check("elliptic-eta-i-nonconvex", 0, 1j, (0.0,), NONCONVEX)


def check_blaschke_point():
    return _convexity_check("blaschke-beta-0-point", 0, 1.0, (-0.5, 0.0), POINT)


def check_blaschke_nonconvex():
    return _convexity_check("blaschke-beta-0.5-nonconvex", 0.5, 1.0, (-0.5, 0.0), NONCONVEX)


SUITES = {
    "toeplitz": [check_quadrature_exactness, check_harmonic_identity, check_indicator_example,
                 check_modsq_example, check_numerical_range_containment],
    "weyl": [check_unitarity, check_weyl_number, check_weyl_minus_one, check_weyl_branch,
             check_zero_exclusion],
    "composition": [check_polar_parts, check_conjugation, check_real_segment, check_elliptic_shape],
    "convexity": [check_elliptic_point, check_elliptic_segment, check_elliptic_nonconvex,
                  check_blaschke_point, check_blaschke_nonconvex],
}


def run_suite(name):
    """Run one suite (or ``"all"``) and return the list of :class:`Check`."""
    if name == "all":
        funcs = [f for suite in SUITES.values() for f in suite]
    elif name in SUITES:
        funcs = SUITES[name]
    else:
        raise KeyError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
    return [f() for f in funcs]
