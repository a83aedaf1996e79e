"""scikit-learn compatible front end.

Each transformer maps disk points to Berezin transform values.  Inputs are
``(n, 2)`` arrays of ``(re, im)`` rows or complex vectors; outputs are
``(n, 2)`` float arrays ``[Re, Im]`` so the transformers compose with
pipelines and column tools.

>>> from berezin.estimators import CompositionBerezin
>>> CompositionBerezin(beta=0.0, eta=-1.0).fit_transform([[0.0, 0.0]])
array([[1., 0.]])
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin, clone
from sklearn.utils.validation import check_is_fitted

from .composition import WeylOperator, comp_berezin, weyl_berezin
from .core import SpaceParams
from .quadrature import DEFAULT_N_R, DEFAULT_N_THETA, adapted_rule
from .ranges import GridSpec, convexity_defect, polar_grid, RangeSample
from .symbols import INDICATOR, Automorphism, SymbolExpr
from .toeplitz import (DEFAULT_DIM, berezin_from_matrix, berezin_toeplitz_covariant,
                       berezin_toeplitz_quad, required_dimension, toeplitz_matrix)
from .validation import as_columns, check_points

_FEATURES = np.array(["berezin_re", "berezin_im"], dtype=object)


class _BerezinTransformer(TransformerMixin, BaseEstimator):
    """Shared plumbing: validation, column output, Berezin number."""

    def _fit_common(self, X):
        self.space_ = SpaceParams(self.gamma)
        if X is not None:
            pts = check_points(X)
            self.r_max_ = float(np.max(np.abs(pts))) if pts.size else 0.0
        else:
            self.r_max_ = 0.0
        self.n_features_in_ = 2
        return self

    def _values(self, pts):
        raise NotImplementedError

    def transform(self, X):
        check_is_fitted(self, "space_")
        return as_columns(self._values(check_points(X)))

    def berezin_values(self, X):
        """Complex transform values at ``X``."""
        check_is_fitted(self, "space_")
        return self._values(check_points(X))

    def berezin_number(self, X):
        """``max |value|`` over the points of ``X``."""
        return float(np.max(np.abs(self.berezin_values(X))))

    def get_feature_names_out(self, input_features=None):
        return _FEATURES.copy()


class ToeplitzBerezin(_BerezinTransformer):
    """Berezin transform of ``T_phi``.

    Parameters
    ----------
    symbol : SymbolExpr, dict or str, default None
        The symbol; ``None`` means ``phi(z) = z``.  Dicts and strings use
        the JSON literal format of :meth:`SymbolExpr.from_json`.
    gamma : float, default 0.0
        Weight parameter, ``> -1``.
    method : {"quad", "covariant", "matrix"}
        Evaluation route.
    n_r, n_theta : int
        Base quadrature resolution; refined automatically near the boundary.
    n_dim : int or None
        Truncation for ``method="matrix"``; ``None`` picks the smallest
        dimension resolving the fitted points (at least 64).
    """

    def __init__(self, symbol=None, gamma=0.0, method="quad", n_r=DEFAULT_N_R,
                 n_theta=DEFAULT_N_THETA, n_dim=None):
        self.symbol = symbol
        self.gamma = gamma
        self.method = method
        self.n_r = n_r
        self.n_theta = n_theta
        self.n_dim = n_dim

    def fit(self, X=None, y=None):
        self._fit_common(X)
        s = self.symbol
        if s is None:
            s = SymbolExpr.polynomial({(1, 0): 1.0})
        elif not isinstance(s, SymbolExpr):
            s = SymbolExpr.from_json(s)
        self.symbol_ = s
        if self.method not in ("quad", "covariant", "matrix"):
            raise ValueError(f"unknown method {self.method!r}")
        self.matrix_ = None
        if self.method == "matrix":
            n = self.n_dim or max(DEFAULT_DIM, required_dimension(self.r_max_, self.space_))
            self.matrix_ = toeplitz_matrix(s, self.space_, n)
        return self

    def _rule(self, pts):
        r = max(self.r_max_, float(np.max(np.abs(pts))) if pts.size else 0.0)
        split = self.symbol_.radius if self.symbol_.catalog == INDICATOR else None
        return adapted_rule(r, self.space_, self.n_r, self.n_theta, split=split)

    def _values(self, pts):
        if self.method == "matrix":
            return berezin_from_matrix(self.matrix_, pts, self.space_)
        route = berezin_toeplitz_quad if self.method == "quad" else berezin_toeplitz_covariant
        return route(self.symbol_, pts, self.space_, self._rule(pts))


class WeylBerezin(_BerezinTransformer):
    """Berezin transform of the Weyl-type operator ``k_beta_hat (f o psi_{beta,eta})``."""

    def __init__(self, beta=0.0, eta=1.0, gamma=0.0):
        self.beta = beta
        self.eta = eta
        self.gamma = gamma

    def fit(self, X=None, y=None):
        self._fit_common(X)
        self.operator_ = WeylOperator(self.beta, self.eta, self.space_.gamma)
        return self

    def _values(self, pts):
        return np.atleast_1d(weyl_berezin(self.operator_, pts))


class CompositionBerezin(_BerezinTransformer):
    """Berezin transform of ``C_psi``; ``psi`` is ``psi_{beta,eta}`` or a callable self-map."""

    def __init__(self, beta=0.0, eta=1.0, gamma=0.0, self_map=None):
        self.beta = beta
        self.eta = eta
        self.gamma = gamma
        self.self_map = self_map

    def fit(self, X=None, y=None):
        self._fit_common(X)
        self.map_ = self.self_map if self.self_map is not None else Automorphism(self.beta, self.eta)
        return self

    def _values(self, pts):
        return np.atleast_1d(comp_berezin(self.map_, self.space_, pts))


class BerezinRange(BaseEstimator):
    """Samples a fitted Berezin transformer on a polar grid and reports its geometry.

    The transformer is cloned and fitted on the grid.  After :meth:`fit`,
    ``sample_`` holds the :class:`RangeSample` and ``report_`` the
    :class:`ConvexityReport`.
    """

    def __init__(self, transformer=None, n_radii=40, n_angles=64, r_max=0.95,
                 n_pairs=20000, seed=0):
        self.transformer = transformer
        self.n_radii = n_radii
        self.n_angles = n_angles
        self.r_max = r_max
        self.n_pairs = n_pairs
        self.seed = seed

    def fit(self, X=None, y=None):
        spec = GridSpec(self.n_radii, self.n_angles, self.r_max)
        pts = polar_grid(spec)
        base = self.transformer if self.transformer is not None else CompositionBerezin()
        self.transformer_ = clone(base).fit(pts)
        self.sample_ = RangeSample(pts, self.transformer_.berezin_values(pts), spec)
        self.report_ = convexity_defect(self.sample_, self.n_pairs, self.seed)
        return self

    @property
    def verdict_(self):
        check_is_fitted(self, "report_")
        return self.report_.verdict
