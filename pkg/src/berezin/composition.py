"""Composition operators and Weyl-type weighted composition operators.

The Weyl-type operator attached to an automorphism ``psi_{beta,eta}`` is
``f -> k_beta_hat * (f o psi_{beta,eta})`` with ``k_beta_hat`` the unit-norm
kernel at ``beta``; it is unitary.  Berezin transforms of both families
are available in closed form.
"""

from dataclasses import dataclass

import numpy as np

from .core import as_space, check_disk_array, check_disk_point, normalized_kernel_eval, principal_pow
from .exceptions import DomainError
from .quadrature import integrate
from .symbols import Automorphism


@dataclass(frozen=True)
class WeylOperator:
    """``C f = k_beta_hat (f o psi_{beta, eta})`` on the space with weight ``gamma``."""

    beta: complex = 0j
    eta: complex = 1 + 0j
    gamma: float = 0.0

    def __post_init__(self):
        a = Automorphism(self.beta, self.eta)
        object.__setattr__(self, "beta", a.beta)
        object.__setattr__(self, "eta", a.eta)
        object.__setattr__(self, "gamma", as_space(self.gamma).gamma)

    @property
    def automorphism(self):
        return Automorphism(self.beta, self.eta)

    @property
    def space(self):
        return as_space(self.gamma)


@dataclass(frozen=True)
class PolarParts:
    """Polar decomposition of a Blaschke-factor Berezin value.

    The value equals ``(r c)^(gamma+2) exp(i (gamma+2) theta)``.
    """

    c: float
    r: float
    theta: float
    re: float
    im: float

    @property
    def value(self):
        return complex(self.re, self.im)


def _poly(f):
    coeffs = np.asarray(f, dtype=complex)
    # coefficient list is lowest degree first
    return lambda z: np.polynomial.polynomial.polyval(np.asarray(z), coeffs)


def weyl_apply(op, f, w):
    """``(C f)(w)`` for a polynomial ``f`` given by coefficients ``[a_0, a_1, ...]``."""
    w = check_disk_array(w)
    out = normalized_kernel_eval(op.beta, w, op.space) * _poly(f)(op.automorphism(w))
    return complex(out) if np.ndim(out) == 0 else out


def poly_norm_sq(f, rule):
    """``||f||^2`` of a polynomial by quadrature."""
    return integrate(lambda z: np.abs(_poly(f)(z)) ** 2, rule).real


def weyl_isometry_residual(op, f, rule):
    """``| ||C f||^2 - ||f||^2 |`` with both norms computed by quadrature."""
    image = integrate(lambda z: np.abs(weyl_apply(op, f, z)) ** 2, rule).real
    return abs(image - poly_norm_sq(f, rule))


def weyl_berezin(op, xi):
    """Berezin transform of the Weyl-type operator.

    Each denominator factor ``1 - conj(beta) xi`` and ``1 - conj(xi) psi(xi)``
    has positive real part, so their principal powers are taken separately.
    """
    xi = check_disk_array(xi, "xi")
    g2 = op.space.exponent
    psi = op.automorphism(xi)
    num = (1.0 - abs(op.beta) ** 2) ** (g2 / 2.0) * (1.0 - np.abs(xi) ** 2) ** g2
    out = num / (principal_pow(1.0 - np.conj(op.beta) * xi, g2)
                 * principal_pow(1.0 - np.conj(xi) * psi, g2))
    return complex(out) if np.ndim(out) == 0 else out


def weyl_berezin_squared_form(op, xi):
    """The same transform written as one base squared and raised to ``(gamma+2)/2``.

    Branch-ambiguous in phase for non-integer ``gamma``; use for moduli only.
    """
    xi = np.asarray(xi, dtype=complex)
    b, e = op.beta, op.eta
    g2 = op.space.exponent
    denom = (1.0 - e * np.abs(xi) ** 2) - (xi * np.conj(b) - e * np.conj(xi) * b)
    base = (1.0 - abs(b) ** 2) * (1.0 - np.abs(xi) ** 2) ** 2 / denom ** 2
    return principal_pow(base, g2 / 2.0)


def weyl_lower_bound(beta, p, xi):
    """``(1-|beta|^2)^((g+2)/2) (1-|xi|^2)^(g+2) / 4^(g+2)``, a floor for ``|weyl_berezin|``."""
    g2 = as_space(p).exponent
    return ((1.0 - abs(beta) ** 2) ** (g2 / 2.0) * (1.0 - np.abs(xi) ** 2) ** g2
            / 2.0 ** (2.0 * g2))


def argmax_modulus(points, values, rtol=1e-12):
    """Point of maximal ``|value|``; ties broken toward the smallest ``|point|``."""
    points = np.asarray(points).ravel()
    mod = np.abs(np.asarray(values)).ravel()
    top = mod.max()
    tied = np.flatnonzero(mod >= top * (1.0 - rtol))
    best = tied[np.argmin(np.abs(points[tied]))]
    return float(mod[best]), complex(points[best])


def weyl_berezin_number(beta, p, grid):
    """Grid estimate of the Berezin number for ``eta = 1``.

    Returns ``(value, argmax)``.  The modulus is constant along the line
    through 0 and ``beta``, so the argmax is reported as the tied grid
    point nearest the origin.
    """
    op = WeylOperator(beta, 1.0, as_space(p).gamma)
    grid = check_disk_array(grid, "grid")
    return argmax_modulus(grid, weyl_berezin(op, grid))


def _self_map(a):
    if isinstance(a, Automorphism):
        return a
    if callable(a):
        return a
    raise DomainError("self-map must be an Automorphism or a callable")


def comp_berezin(a, p, w):
    """Berezin transform ``((1 - |w|^2) / (1 - conj(w) psi(w)))^(gamma+2)`` of ``C_psi``."""
    p = as_space(p)
    psi = _self_map(a)
    w = check_disk_array(w)
    image = np.asarray(psi(w), dtype=complex)
    if image.size and np.max(np.abs(image)) >= 1.0:
        raise DomainError("self-map leaves the unit disk")
    out = principal_pow((1.0 - np.abs(w) ** 2) / (1.0 - np.conj(w) * image), p.exponent)
    return complex(out) if np.ndim(out) == 0 else out


def comp_lower_bound(p, w):
    """``(1-|w|^2)^(g+2) / 2^(g+2)``, a floor for ``|comp_berezin|``."""
    g2 = as_space(p).exponent
    return (1.0 - np.abs(w) ** 2) ** g2 / 2.0 ** g2


def blaschke_berezin_parts(beta, p, w):
    """Real/imaginary split of the Blaschke-factor transform in polar form."""
    p = as_space(p)
    beta = check_disk_point(beta, "beta")
    w = check_disk_point(w)
    g2 = p.exponent
    u = np.conj(beta) * w
    x, y = u.real, u.imag
    m = abs(w) ** 2
    c = (1.0 - m) / abs(1.0 - m + 2j * (beta * np.conj(w)).imag) ** 2
    cos_part = (1.0 - m) * (1.0 - x) + 2.0 * y * y
    sin_part = y * (1.0 + m - 2.0 * x)
    if not cos_part > 0.0:
        raise DomainError(f"cosine component is not positive at w={w!r}")
    r = float(np.hypot(cos_part, sin_part))
    theta = float(np.arctan(sin_part / cos_part))
    mod = (r * c) ** g2
    return PolarParts(c=float(c), r=r, theta=theta,
                      re=float(mod * np.cos(g2 * theta)), im=float(mod * np.sin(g2 * theta)))


def conjugate_partner(beta, w):
    """Point whose Blaschke transform is the conjugate of the transform at ``w``.

    With ``beta = rho e^{i theta}`` and ``w = r e^{i phi}`` this is
    ``r e^{i (2 theta - phi)} = e^{2 i theta} conj(w)``.
    """
    beta = check_disk_point(beta, "beta")
    if beta == 0:
        raise DomainError("beta = 0 has no argument")
    w = check_disk_array(w)
    rot = (beta / abs(beta)) ** 2
    out = rot * np.conj(w)
    return complex(out) if np.ndim(out) == 0 else out
