"""Input validation for the estimator front end."""

import numpy as np
from sklearn.utils.validation import check_array

from .core import check_disk_array


def check_points(X):
    """Coerce ``X`` to a 1-D complex array of interior disk points.

    Accepts a complex vector, a real ``(n, 2)`` array of ``(re, im)`` rows,
    or a scalar.
    """
    arr = np.asarray(X)
    if np.iscomplexobj(arr):
        if arr.ndim == 2 and arr.shape[1] == 1:
            arr = arr[:, 0]
        if arr.ndim > 1:
            raise ValueError(f"complex input must be 1-D, got shape {arr.shape}")
        return check_disk_array(np.atleast_1d(arr), "X")
    if arr.ndim <= 1:
        return check_disk_array(np.atleast_1d(arr).astype(complex), "X")
    arr = check_array(arr, dtype=float, ensure_min_features=2)
    if arr.shape[1] != 2:
        raise ValueError(f"expected (n_samples, 2) rows of (re, im), got shape {arr.shape}")
    return check_disk_array(arr[:, 0] + 1j * arr[:, 1], "X")


def as_columns(values):
    """Complex vector -> ``(n, 2)`` float array of (re, im)."""
    v = np.asarray(values, dtype=complex).ravel()
    return np.column_stack((v.real, v.imag))


def parse_complex(text):
    """``"0.3"``, ``"0.3,0.1"`` or ``"0.3+0.1j"`` -> complex."""
    if isinstance(text, (int, float, complex)):
        return complex(text)
    s = str(text).strip()
    if "," in s:
        re, im = s.split(",", 1)
        return complex(float(re), float(im))
    return complex(s.replace(" ", ""))
