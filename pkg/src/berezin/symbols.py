"""Symbols on the disk and disk automorphisms.

A symbol is either a finite sum ``sum a_mn z**m conj(z)**n`` or one of two
catalog entries: the indicator of a centred sub-disk and ``|z|**2``.
"""

from dataclasses import dataclass
import json

import numpy as np

from .core import check_disk_point
from .exceptions import DomainError

INDICATOR = "indicator"
MODSQ = "modsq"
_CATALOG = (INDICATOR, MODSQ)


@dataclass(frozen=True)
class SymbolExpr:
    """A bounded symbol ``phi`` on the disk.

    Build with :meth:`polynomial`, :meth:`indicator` or :meth:`modsq`.
    ``terms`` is a tuple of ``((m, n), coefficient)`` pairs.
    """

    terms: tuple = ()
    catalog: str | None = None
    radius: float | None = None

    def __post_init__(self):
        if self.catalog is None:
            merged = {}
            for (m, n), a in self.terms:
                m, n = int(m), int(n)
                if m < 0 or n < 0:
                    raise DomainError(f"negative exponent in term ({m}, {n})")
                merged[(m, n)] = merged.get((m, n), 0.0) + complex(a)
            cleaned = tuple(sorted((k, v) for k, v in merged.items() if v != 0))
            object.__setattr__(self, "terms", cleaned)
        else:
            if self.catalog not in _CATALOG:
                raise DomainError(f"unknown catalog symbol {self.catalog!r}")
            if self.terms:
                raise DomainError("a catalog symbol carries no polynomial terms")
            if self.catalog == INDICATOR:
                if self.radius is None or not 0.0 < float(self.radius) < 1.0:
                    raise DomainError("indicator radius must lie in (0, 1)")
                object.__setattr__(self, "radius", float(self.radius))

    @classmethod
    def polynomial(cls, coeffs):
        """From a mapping ``{(m, n): a_mn}``."""
        return cls(terms=tuple(dict(coeffs).items()))

    @classmethod
    def constant(cls, c):
        return cls.polynomial({(0, 0): c})

    @classmethod
    def indicator(cls, radius):
        """1 on ``|z| <= radius``, 0 elsewhere."""
        return cls(catalog=INDICATOR, radius=radius)

    @classmethod
    def modsq(cls):
        """``|z|**2``."""
        return cls(catalog=MODSQ)

    @property
    def is_catalog(self):
        return self.catalog is not None

    @property
    def coeffs(self):
        return dict(self.terms)

    @property
    def norm_bound(self):
        """``sum |a_mn|`` (1 for catalog entries); an upper bound for ``sup |phi|``."""
        if self.is_catalog:
            return 1.0
        return float(sum(abs(a) for _, a in self.terms))

    @property
    def is_hermitian(self):
        """True when ``phi`` is real valued, i.e. ``a_mn = conj(a_nm)``."""
        if self.is_catalog:
            return True
        c = self.coeffs
        return all(np.isclose(a, np.conj(c.get((n, m), 0.0)), rtol=0, atol=1e-15)
                   for (m, n), a in c.items())

    def __call__(self, z):
        return eval_symbol(self, z)

    # CLI literal format

    @classmethod
    def from_json(cls, text):
        obj = json.loads(text) if isinstance(text, str) else dict(text)
        if "catalog" in obj:
            name = obj["catalog"]
            if name == INDICATOR:
                return cls.indicator(obj.get("radius", 0.5))
            if name == MODSQ:
                return cls.modsq()
            raise DomainError(f"unknown catalog symbol {name!r}")
        if "terms" in obj:
            coeffs = {}
            for entry in obj["terms"]:
                if len(entry) not in (3, 4):
                    raise DomainError(f"term must be [m, n, re] or [m, n, re, im]: {entry!r}")
                m, n, re = entry[:3]
                im = entry[3] if len(entry) == 4 else 0.0
                if int(m) != m or int(n) != n:
                    raise DomainError(f"exponents must be integers: {entry!r}")
                coeffs[(int(m), int(n))] = coeffs.get((int(m), int(n)), 0.0) + complex(re, im)
            return cls.polynomial(coeffs)
        raise DomainError("symbol literal needs a 'terms' or 'catalog' key")

    def to_json(self):
        if self.catalog == INDICATOR:
            return {"catalog": INDICATOR, "radius": self.radius}
        if self.catalog == MODSQ:
            return {"catalog": MODSQ}
        return {"terms": [[m, n, a.real, a.imag] for (m, n), a in self.terms]}


def eval_symbol(s, z):
    """Evaluate ``s`` at ``z`` (scalar or array)."""
    zz = np.asarray(z, dtype=complex)
    if s.catalog == INDICATOR:
        out = (np.abs(zz) <= s.radius).astype(float) + 0j
    elif s.catalog == MODSQ:
        out = np.abs(zz) ** 2 + 0j
    else:
        out = _horner2(s.terms, zz)
    if out.ndim == 0:
        return complex(out)
    return out


def _horner2(terms, z):
    """``sum a_mn z^m zbar^n`` as nested Horner: outer in ``zbar``, inner in ``z``."""
    rows = {}
    for (m, n), a in terms:
        rows.setdefault(n, {})[m] = a
    out = np.zeros(z.shape, dtype=complex)
    if not rows:
        return out
    zc = np.conj(z) if max(rows) > 0 else None
    for n in range(max(rows), -1, -1):
        if n != max(rows):
            out *= zc
        row = rows.get(n)
        if not row:
            continue
        top = max(row)
        if top == 0:
            out += row[0]
            continue
        inner = np.full(z.shape, row[top], dtype=complex)
        for m in range(top - 1, -1, -1):
            inner *= z
            if m in row:
                inner += row[m]
        out += inner
    return out


def is_harmonic(s):
    """Exact harmonicity test: no mixed ``z**m conj(z)**n`` term with ``m, n >= 1``.

    Catalog entries are not harmonic.
    """
    if s.is_catalog:
        return False
    return all(m == 0 or n == 0 for (m, n), _ in s.terms)


def laplacian(s, z):
    """Exact Laplacian ``4 d/dz d/dzbar`` of a polynomial symbol."""
    if s.is_catalog:
        if s.catalog == MODSQ:
            return 4.0 + 0j * np.asarray(z)
        raise DomainError("the indicator symbol has no pointwise Laplacian")
    zz = np.asarray(z, dtype=complex)
    out = np.zeros_like(zz)
    for (m, n), a in s.terms:
        if m and n:
            out = out + 4.0 * m * n * a * zz ** (m - 1) * np.conj(zz) ** (n - 1)
    return out


@dataclass(frozen=True)
class Automorphism:
    """``psi(w) = eta (w - beta) / (1 - conj(beta) w)`` with ``|beta| < 1``, ``|eta| = 1``."""

    beta: complex = 0j
    eta: complex = 1 + 0j

    def __post_init__(self):
        beta = check_disk_point(self.beta, "beta")
        eta = complex(self.eta)
        if abs(abs(eta) - 1.0) > 1e-14:
            raise DomainError(f"eta must be unimodular, got |eta|={abs(eta)!r}")
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "eta", eta)

    def __call__(self, w):
        return apply_automorphism(self, w)

    def inverse(self):
        """The automorphism undoing this one: ``beta' = -eta beta``, ``eta' = conj(eta)``."""
        return Automorphism(-self.eta * self.beta, np.conj(self.eta))

    @property
    def is_identity(self):
        return self.beta == 0 and self.eta == 1


def apply_automorphism(a, w):
    w = np.asarray(w, dtype=complex)
    out = a.eta * (w - a.beta) / (1.0 - np.conj(a.beta) * w)
    if out.ndim == 0:
        return complex(out)
    return out


def covariant_mobius(w, z):
    """The involution ``phi_w(z) = (w - z) / (1 - conj(w) z)`` swapping 0 and ``w``."""
    z = np.asarray(z, dtype=complex)
    out = (w - z) / (1.0 - np.conj(w) * z)
    if out.ndim == 0:
        return complex(out)
    return out


def blaschke_fixed_point(beta):
    """Interior fixed point ``(1 - sqrt(1 - |beta|^2)) / conj(beta)`` of ``psi_{beta,-1}``."""
    beta = check_disk_point(beta, "beta")
    if beta == 0:
        raise DomainError("the fixed point formula is singular at beta = 0")
    return complex((1.0 - np.sqrt(1.0 - abs(beta) ** 2)) / np.conj(beta))
