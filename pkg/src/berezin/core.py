"""Weighted Bergman space primitives.

Everything here works on the space of holomorphic functions on the unit
disk that are square integrable against

    dA_gamma(z) = (gamma + 1) (1 - |z|^2)^gamma dA(z),

with ``dA`` the area measure normalised to total mass one.  The monomials
``z**n`` are orthogonal with ``||z**n||^2 = 1 / c_n`` where ``c_n`` are the
power series coefficients of the reproducing kernel.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError

#: Points closer than this to the unit circle are treated as boundary points.
BOUNDARY_EPS = 1e-14


@dataclass(frozen=True)
class SpaceParams:
    """Weight parameter of the space; ``gamma > -1``."""

    gamma: float = 0.0

    def __post_init__(self):
        g = float(self.gamma)
        if not np.isfinite(g) or g <= -1.0:
            raise DomainError(f"gamma must be a finite number > -1, got {self.gamma!r}")
        object.__setattr__(self, "gamma", g)

    @property
    def exponent(self):
        """The kernel exponent ``gamma + 2``."""
        return self.gamma + 2.0


def as_space(p):
    """Accept either a :class:`SpaceParams` or a bare ``gamma``."""
    if isinstance(p, SpaceParams):
        return p
    return SpaceParams(p)


def check_disk_point(w, name="w"):
    """Return ``w`` as a Python complex, rejecting points with ``|w| >= 1``."""
    try:
        z = complex(w)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{name} is not a complex number: {w!r}") from exc
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise DomainError(f"{name} is not finite: {w!r}")
    if abs(z) >= 1.0 - BOUNDARY_EPS:
        raise DomainError(f"{name}={z!r} is not inside the open unit disk")
    return z


def check_disk_array(w, name="w"):
    """Vectorised :func:`check_disk_point`; returns a complex ndarray."""
    z = np.asarray(w, dtype=complex)
    if not np.all(np.isfinite(z)):
        raise DomainError(f"{name} contains non-finite values")
    if z.size and np.max(np.abs(z)) >= 1.0 - BOUNDARY_EPS:
        bad = z.ravel()[np.argmax(np.abs(z).ravel())]
        raise DomainError(f"{name} contains {bad!r}, outside the open unit disk")
    return z


def principal_pow(base, exponent):
    """``exp(exponent * Log(base))`` with the principal logarithm.

    Works elementwise on arrays.  A zero base is a domain error.
    """
    b = np.asarray(base, dtype=complex)
    if np.any(b == 0):
        raise DomainError("principal_pow is undefined at base 0")
    out = np.exp(exponent * np.log(b))
    if out.ndim == 0:
        return complex(out)
    return out


def kernel_eval(xi, w, p):
    """Reproducing kernel ``k_xi(w) = (1 - conj(xi) w)^-(gamma+2)``."""
    p = as_space(p)
    return principal_pow(1.0 - np.conj(xi) * np.asarray(w), -p.exponent)


def normalized_kernel_eval(xi, w, p):
    """Unit-norm kernel ``(1 - |xi|^2)^((gamma+2)/2) k_xi(w)``."""
    p = as_space(p)
    scale = (1.0 - np.abs(xi) ** 2) ** (p.exponent / 2.0)
    return scale * kernel_eval(xi, w, p)


def basis_coeffs(n_max, p):
    """Array ``[c_0, ..., c_n_max]`` of kernel series coefficients.

    ``c_n = Gamma(n + gamma + 2) / (n! Gamma(gamma + 2))``, built from the
    ratio ``c_{n+1} / c_n = (n + gamma + 2) / (n + 1)``.
    """
    p = as_space(p)
    if n_max < 0:
        raise DomainError("n_max must be non-negative")
    n = np.arange(n_max, dtype=float)
    ratios = (n + p.exponent) / (n + 1.0)
    return np.concatenate(([1.0], np.cumprod(ratios)))


def basis_coeff(n, p):
    """Single kernel coefficient ``c_n``; see :func:`basis_coeffs`."""
    if int(n) != n or n < 0:
        raise DomainError(f"n must be a non-negative integer, got {n!r}")
    return float(basis_coeffs(int(n), p)[-1])


def monomial_inner(n, m, p):
    """``<z^n, z^m>`` in the weighted space: ``delta_nm / c_n``."""
    if n != m:
        return 0.0
    return 1.0 / basis_coeff(n, p)


def kernel_norm_sq(w, p):
    """``||k_w||^2 = (1 - |w|^2)^-(gamma+2)``."""
    p = as_space(p)
    return (1.0 - np.abs(w) ** 2) ** (-p.exponent)
