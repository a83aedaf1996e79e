"""Berezin transforms of Toeplitz operators.

Three independent routes are provided:

* ``quad`` integrates ``phi |k_w|^2 dA_gamma`` directly;
* ``covariant`` integrates ``phi o phi_w dA_gamma`` after the Mobius change
  of variables;
* ``matrix`` forms the Rayleigh quotient of the kernel coefficient vector
  against a truncated matrix of ``T_phi`` in the orthonormal monomial basis
  ``e_n = sqrt(c_n) z**n``.

For ``phi = |z|^2`` the transform also has a closed power series.
"""

from dataclasses import dataclass

import numpy as np

from .core import as_space, basis_coeffs, check_disk_array
from .exceptions import DomainError, NumericError, ResolutionError
from .quadrature import DEFAULT_N_R, DEFAULT_N_THETA, adapted_rule, disk_rule, integrate_batch
from .symbols import INDICATOR, covariant_mobius, eval_symbol

DEFAULT_DIM = 64
TAIL_RTOL = 1e-10
_CHUNK = 262144


def _scalar_or_array(values, shape):
    values = np.asarray(values).reshape(shape)
    if values.ndim == 0:
        return complex(values)
    return values


def _default_rule(s, w, p):
    r_max = float(np.max(np.abs(w))) if np.size(w) else 0.0
    split = s.radius if s.catalog == INDICATOR else None
    return adapted_rule(r_max, p, split=split)


def _chunks(n_points, n_nodes):
    step = max(1, _CHUNK // max(n_nodes, 1))
    for start in range(0, n_points, step):
        yield slice(start, min(start + step, n_points))


def kernel_density(w, z, p):
    """``|k_w(z)|^2`` normalised, i.e. ``(1-|w|^2)^(g+2) / |1 - conj(w) z|^(2(g+2))``.

    ``w`` and ``z`` broadcast against each other.
    """
    p = as_space(p)
    w = np.asarray(w)
    denom = np.abs(1.0 - np.conj(w) * z) ** 2
    return np.exp(p.exponent * (np.log1p(-np.abs(w) ** 2) - np.log(denom)))


def berezin_toeplitz_quad(s, w, p, rule=None):
    """Berezin transform of ``T_phi`` by direct quadrature of ``phi |k_w|^2``."""
    p = as_space(p)
    w_arr = check_disk_array(w)
    flat = w_arr.ravel()
    if rule is None:
        rule = _default_rule(s, flat, p)
    z = rule.points
    phi = eval_symbol(s, z)
    out = np.empty(flat.shape, dtype=complex)
    for sl in _chunks(flat.size, z.size):
        dens = kernel_density(flat[sl, None], z[None, :], p)
        out[sl] = integrate_batch(dens * phi[None, :], rule)
    return _scalar_or_array(out, w_arr.shape)


def berezin_toeplitz_covariant(s, w, p, rule=None):
    """Berezin transform of ``T_phi`` as the ``dA_gamma`` mean of ``phi o phi_w``."""
    p = as_space(p)
    w_arr = check_disk_array(w)
    flat = w_arr.ravel()
    if rule is None:
        rule = _default_rule(s, flat, p)
    z = rule.points
    out = np.empty(flat.shape, dtype=complex)
    for sl in _chunks(flat.size, z.size):
        moved = covariant_mobius(flat[sl, None], z[None, :])
        out[sl] = integrate_batch(eval_symbol(s, moved), rule)
    return _scalar_or_array(out, w_arr.shape)


def berezin_modsq_series(w, p, tol=1e-15, max_terms=1_000_000):
    """Berezin transform of ``T_{|z|^2}`` from its power series in ``|w|^2``.

    Terms are ``(n+1) c_n / (n+gamma+2) |w|^(2n)``, scaled by
    ``(1-|w|^2)^(gamma+2)``.  Summation stops once the term ratio is below
    one and the geometric bound on the remaining tail is below ``tol``.
    """
    p = as_space(p)
    g2 = p.exponent
    x = abs(complex(w)) ** 2
    if x > (1.0 - 1e-6) ** 2:
        raise DomainError(f"|w| must be <= 1 - 1e-6, got {abs(complex(w))!r}")
    scale = (1.0 - x) ** g2
    if x == 0.0:
        return 1.0 / g2
    total = 0.0
    c = 1.0
    xn = 1.0
    for n in range(max_terms):
        term = scale * (n + 1.0) * c / (n + g2) * xn
        total += term
        ratio = (n + 2.0) / (n + 1.0) * (n + g2) / (n + 1.0) * (n + g2) / (n + g2 + 1.0) * x
        if ratio < 1.0 and term * ratio / (1.0 - ratio) < tol:
            return total
        c *= (n + g2) / (n + 1.0)
        xn *= x
    raise NumericError(f"series did not converge within {max_terms} terms", where=complex(w),
                       module="toeplitz")


@dataclass(frozen=True)
class TruncatedOperator:
    """``N x N`` matrix ``M[p, q] = <T e_q, e_p>`` in the basis ``e_n = sqrt(c_n) z^n``."""

    entries: np.ndarray
    gamma: float

    @property
    def dim(self):
        return self.entries.shape[0]


def _closed_form_matrix(s, p, n):
    c = basis_coeffs(n + max((m for (m, _), _ in s.terms), default=0) + 1, p)
    root = np.sqrt(c[:n])
    mat = np.zeros((n, n), dtype=complex)
    idx = np.arange(n)
    for (m, k), a in s.terms:
        # <z^m zbar^k e_q, e_p> is nonzero only when q + m = p + k
        shift = m - k
        q = idx[(idx + shift >= 0) & (idx + shift < n)]
        pp = q + shift
        mat[pp, q] += a * root[pp] * root[q] / c[q + m]
    return mat


def toeplitz_matrix(s, p, n=DEFAULT_DIM, rule=None):
    """Truncated matrix of ``T_phi``.

    Polynomial symbols use closed-form monomial inner products; catalog
    symbols are integrated with a rule exact for the basis products.
    """
    p = as_space(p)
    if int(n) != n or n < 1:
        raise DomainError(f"dimension must be a positive integer, got {n!r}")
    n = int(n)
    if not s.is_catalog:
        return TruncatedOperator(_closed_form_matrix(s, p, n), p.gamma)
    if rule is None:
        split = s.radius if s.catalog == INDICATOR else None
        rule = disk_rule(max(DEFAULT_N_R, n // 2 + 2), max(DEFAULT_N_THETA, 2 * n + 2), p,
                         split=split)
    z = rule.points
    c = basis_coeffs(n - 1, p)
    basis = np.sqrt(c)[None, :] * z[:, None] ** np.arange(n)[None, :]
    weighted = (rule.weights * eval_symbol(s, z))[:, None] * basis
    mat = basis.conj().T @ weighted
    if not np.all(np.isfinite(mat)):
        raise NumericError("non-finite entry in truncated matrix", module="toeplitz")
    return TruncatedOperator(mat, p.gamma)


def kernel_tail_fraction(w, p, n):
    """``sum_{k>=n} c_k |w|^(2k)`` relative to the full kernel norm ``||k_w||^2``."""
    p = as_space(p)
    x = np.abs(np.asarray(w)) ** 2
    c = basis_coeffs(n - 1, p)
    powers = x[..., None] ** np.arange(n)
    partial = powers @ c
    total = (1.0 - x) ** (-p.exponent)
    return np.maximum(1.0 - partial / total, 0.0)


def required_dimension(r, p, rtol=TAIL_RTOL, n_max=100_000):
    """Smallest truncation ``N`` whose kernel tail at ``|w| = r`` is below ``rtol``."""
    p = as_space(p)
    x = float(r) ** 2
    if x == 0.0:
        return 1
    total = (1.0 - x) ** (-p.exponent)
    partial = 0.0
    term = 1.0
    for n in range(n_max):
        partial += term
        if 1.0 - partial / total < rtol:
            return n + 1
        term *= (n + p.exponent) / (n + 1.0) * x
    raise ResolutionError(f"no truncation below {n_max} resolves |w|={r}", required=n_max)


def berezin_from_matrix(op, w, p=None, rtol=TAIL_RTOL):
    """Rayleigh quotient ``v^H M v / v^H v`` with ``v_n = sqrt(c_n) conj(w)^n``."""
    p = as_space(op.gamma if p is None else p)
    w_arr = check_disk_array(w)
    flat = w_arr.ravel()
    n = op.dim
    tail = kernel_tail_fraction(flat, p, n)
    if np.any(tail >= rtol):
        worst = flat[np.argmax(tail)]
        need = required_dimension(abs(worst), p, rtol)
        raise ResolutionError(
            f"truncation N={n} leaves kernel tail {tail.max():.2e} at w={complex(worst)!r}; "
            f"use N >= {need}", required=need)
    c = basis_coeffs(n - 1, p)
    v = np.sqrt(c)[None, :] * np.conj(flat)[:, None] ** np.arange(n)[None, :]
    num = np.einsum("ip,pq,iq->i", v.conj(), op.entries, v)
    den = np.einsum("ip,ip->i", v.conj(), v).real
    return _scalar_or_array(num / den, w_arr.shape)


def numerical_range_boundary(op, n_angles=360):
    """Support points of the numerical range of the truncated matrix.

    For each direction ``theta`` the top eigenvector ``u`` of the Hermitian
    part of ``exp(i theta) M`` is a boundary point ``u^H M u``.
    """
    if n_angles < 8:
        raise DomainError("n_angles must be >= 8")
    m = np.asarray(op.entries if isinstance(op, TruncatedOperator) else op, dtype=complex)
    out = np.empty(n_angles, dtype=complex)
    for k in range(n_angles):
        rot = np.exp(2j * np.pi * k / n_angles)
        herm = 0.5 * (rot * m + np.conj(rot) * m.conj().T)
        try:
            _, vecs = np.linalg.eigh(herm)
        except np.linalg.LinAlgError as exc:
            raise NumericError(f"eigensolver failed at direction {k}: {exc}", module="toeplitz") from exc
        u = vecs[:, -1]
        out[k] = u.conj() @ m @ u
    return out


def berezin_toeplitz(s, w, p, method="quad", n=None, rule=None):
    """Dispatch to one of the three routes by name."""
    if method == "quad":
        return berezin_toeplitz_quad(s, w, p, rule)
    if method == "covariant":
        return berezin_toeplitz_covariant(s, w, p, rule)
    if method == "matrix":
        p = as_space(p)
        if n is None:
            r = float(np.max(np.abs(w))) if np.size(w) else 0.0
            n = max(DEFAULT_DIM, required_dimension(r, p))
        return berezin_from_matrix(toeplitz_matrix(s, p, n, rule), w, p)
    raise DomainError(f"unknown method {method!r}; expected quad, covariant or matrix")
