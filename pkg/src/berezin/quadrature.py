"""Quadrature for the weighted area measure on the unit disk.

The disk integral is split into polar coordinates with the substitution
``t = r**2``, under which ``dA_gamma`` becomes the probability measure
``(gamma + 1) (1 - t)^gamma dt d(theta) / (2 pi)`` on ``[0, 1] x [0, 2 pi)``.
The radial factor is a Jacobi weight and is integrated with a Gauss rule
obtained by the Golub-Welsch procedure; the angular factor uses the
trapezoidal rule, which is spectrally accurate for periodic integrands.
"""

from dataclasses import dataclass, field
import math

import numpy as np
from scipy import linalg

from .core import as_space
from .exceptions import DomainError, NumericError

DEFAULT_N_R = 64
DEFAULT_N_THETA = 256


@dataclass(frozen=True)
class RadialRule:
    """Nodes ``t = r**2`` in (0, 1) and positive weights summing to one."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.shape != weights.shape or nodes.ndim != 1 or nodes.size == 0:
            raise DomainError("nodes and weights must be equal-length 1-D arrays")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return self.nodes.size

    def integrate(self, f):
        """Integrate a function of ``t`` against the radial measure."""
        return np.dot(self.weights, f(self.nodes))


@dataclass(frozen=True)
class DiskRule:
    """Tensor product of a :class:`RadialRule` with ``n_theta`` equispaced angles."""

    radial: RadialRule
    n_theta: int
    _z: np.ndarray = field(init=False, repr=False, compare=False)
    _w: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n_theta < 1:
            raise DomainError("n_theta must be positive")
        theta = 2.0 * np.pi * np.arange(self.n_theta) / self.n_theta
        r = np.sqrt(self.radial.nodes)
        z = (r[:, None] * np.exp(1j * theta)[None, :]).ravel()
        w = np.repeat(self.radial.weights / self.n_theta, self.n_theta)
        z.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "_z", z)
        object.__setattr__(self, "_w", w)

    @property
    def points(self):
        """Flattened complex nodes, radial index major."""
        return self._z

    @property
    def weights(self):
        """Flattened weights matching :attr:`points`."""
        return self._w

    @property
    def n_r(self):
        return len(self.radial)


def _jacobi_recurrence(n, a, b):
    """Diagonal and off-diagonal of the Jacobi matrix for weight (1-x)^a (1+x)^b."""
    k = np.arange(n, dtype=float)
    s = 2.0 * k + a + b
    diag = np.empty(n)
    with np.errstate(divide="ignore", invalid="ignore"):
        diag[:] = (b * b - a * a) / (s * (s + 2.0))
    diag[0] = (b - a) / (a + b + 2.0)

    kk = np.arange(1, n, dtype=float)
    ss = 2.0 * kk + a + b
    with np.errstate(divide="ignore", invalid="ignore"):
        off_sq = (4.0 * kk * (kk + a) * (kk + b) * (kk + a + b)
                  / (ss * ss * (ss + 1.0) * (ss - 1.0)))
    if n > 1:
        # k = 1 has a removable 0/0 when a + b = -1
        off_sq[0] = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) ** 2 * (3.0 + a + b))
    return diag, np.sqrt(off_sq)


def _gauss_jacobi_unit(n, gamma):
    """Gauss nodes/weights on [0, 1] for the normalised weight (1-t)^gamma."""
    if int(n) != n or n < 1:
        raise DomainError(f"number of radial nodes must be a positive integer, got {n!r}")
    n = int(n)
    diag, off = _jacobi_recurrence(n, gamma, 0.0)
    try:
        x, vecs = linalg.eigh_tridiagonal(diag, off)
    except (linalg.LinAlgError, ValueError) as exc:
        raise NumericError(f"Golub-Welsch eigenproblem failed: {exc}", module="disk-quadrature") from exc
    weights = vecs[0, :] ** 2
    weights /= weights.sum()
    return 0.5 * (x + 1.0), weights


def gauss_jacobi_rule(n, p):
    """Gauss rule for ``(gamma+1)(1-t)^gamma dt`` on [0, 1].

    Exact for polynomials in ``t`` of degree ``<= 2n - 1``.
    """
    p = as_space(p)
    nodes, weights = _gauss_jacobi_unit(n, p.gamma)
    return RadialRule(nodes, weights)


def split_radial_rule(n, p, t_split):
    """Radial rule built from two Gauss pieces meeting at ``t_split``.

    Used when the integrand jumps at ``|z|**2 = t_split``.  The inner piece
    is Gauss-Legendre against the (smooth there) Jacobi density; the outer
    piece maps ``[t_split, 1]`` onto ``[0, 1]`` and keeps the Jacobi weight.
    Each piece carries ``n`` nodes.
    """
    p = as_space(p)
    g = p.gamma
    if not 0.0 < t_split < 1.0:
        raise DomainError("t_split must lie in (0, 1)")
    inner_mass = 1.0 - (1.0 - t_split) ** (g + 1.0)

    x, wl = np.polynomial.legendre.leggauss(int(n))
    t_in = 0.5 * t_split * (x + 1.0)
    w_in = 0.5 * t_split * wl * (g + 1.0) * (1.0 - t_in) ** g

    s, ws = _gauss_jacobi_unit(n, g)
    t_out = t_split + (1.0 - t_split) * s
    w_out = (1.0 - inner_mass) * ws

    nodes = np.concatenate((t_in, t_out))
    weights = np.concatenate((w_in, w_out))
    return RadialRule(nodes, weights)


def disk_rule(n_r=DEFAULT_N_R, n_theta=DEFAULT_N_THETA, p=0.0, split=None):
    """Tensor rule for ``dA_gamma``.

    ``split`` is an optional radius at which the integrand is discontinuous;
    the radial rule then uses :func:`split_radial_rule`.
    """
    if int(n_r) != n_r or n_r < 1:
        raise DomainError(f"n_r must be a positive integer, got {n_r!r}")
    if int(n_theta) != n_theta or n_theta < 4:
        raise DomainError(f"n_theta must be an integer >= 4, got {n_theta!r}")
    if split is None:
        radial = gauss_jacobi_rule(int(n_r), p)
    else:
        radial = split_radial_rule(int(n_r), p, float(split) ** 2)
    return DiskRule(radial, int(n_theta))


def adapted_rule(r_max, p, n_r=DEFAULT_N_R, n_theta=DEFAULT_N_THETA, split=None):
    """Disk rule resolved for kernels centred at points with ``|w| <= r_max``.

    Kernel integrands have Fourier modes decaying like ``|w|**m``, so the
    angular count grows like ``1 / (1 - |w|)``; the radial count grows more
    slowly because the radial singularity sits at ``t = 1 / |w|**2``.
    """
    r_max = float(r_max)
    if r_max >= 1.0:
        raise DomainError("r_max must be < 1")
    gap = max(1.0 - r_max, 1e-6)
    need_theta = 2 ** math.ceil(math.log2(max(n_theta, 36.0 / gap)))
    need_r = max(int(n_r), math.ceil(0.2 / gap))
    return disk_rule(need_r, need_theta, p, split=split)


def integrate(f, rule):
    """``sum_j w_j f(z_j)`` over the nodes of ``rule``.

    ``f`` is called once with the full node array and must be vectorised.
    A non-finite value raises :class:`NumericError` naming the node.
    """
    values = np.asarray(f(rule.points))
    if values.shape != rule.points.shape:
        values = np.broadcast_to(values, rule.points.shape)
    bad = ~np.isfinite(values)
    if np.any(bad):
        node = complex(rule.points[np.argmax(bad)])
        raise NumericError(f"integrand is not finite at node {node!r}", where=node,
                           module="disk-quadrature")
    return complex(np.dot(rule.weights, values))


def integrate_batch(values, rule):
    """Contract a ``(..., n_nodes)`` array of integrand values with the rule weights."""
    values = np.asarray(values)
    bad = ~np.isfinite(values)
    if np.any(bad):
        idx = np.unravel_index(np.argmax(bad), values.shape)
        node = complex(rule.points[idx[-1]])
        raise NumericError(f"integrand is not finite at node {node!r}", where=node,
                           module="disk-quadrature")
    return values @ rule.weights
