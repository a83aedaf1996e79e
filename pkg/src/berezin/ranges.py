"""Sampled Berezin ranges and their geometry.

A :class:`RangeSample` holds transform values on a polar grid.  The
geometric diagnostics (hull, diameter, collinearity, midpoint convexity
defect) are computed on the sampled value cloud; they are resolution
dependent by nature, so every report carries the numbers behind its
verdict.
"""

import csv
from dataclasses import asdict, dataclass, field
import json

import numpy as np
from scipy.spatial import cKDTree

from .core import check_disk_array
from .exceptions import DomainError, NumericError

POINT = "degenerate-point"
SEGMENT = "degenerate-segment"
NONCONVEX = "non-convex"
CONVEX = "convex-at-resolution"

POINT_DIAMETER = 1e-10
COLLINEAR_TOL = 1e-9
DEFECT_FACTOR = 10.0


@dataclass(frozen=True)
class GridSpec:
    n_radii: int = 40
    n_angles: int = 64
    r_max: float = 0.95

    def __post_init__(self):
        if int(self.n_radii) != self.n_radii or self.n_radii < 1:
            raise DomainError("n_radii must be a positive integer")
        if int(self.n_angles) != self.n_angles or self.n_angles < 1:
            raise DomainError("n_angles must be a positive integer")
        if not 0.0 < float(self.r_max) < 1.0:
            raise DomainError("r_max must lie in (0, 1)")
        object.__setattr__(self, "n_radii", int(self.n_radii))
        object.__setattr__(self, "n_angles", int(self.n_angles))
        object.__setattr__(self, "r_max", float(self.r_max))


def polar_grid(spec):
    """``w = 0`` followed by ``r_k e^{i theta_j}``, ``r_k = r_max k / n_radii``."""
    spec = spec if isinstance(spec, GridSpec) else GridSpec(*spec)
    r = spec.r_max * np.arange(1, spec.n_radii + 1) / spec.n_radii
    theta = 2.0 * np.pi * np.arange(spec.n_angles) / spec.n_angles
    ring = (r[:, None] * np.exp(1j * theta)[None, :]).ravel()
    return np.concatenate(([0j], ring))


@dataclass
class RangeSample:
    points: np.ndarray
    values: np.ndarray
    grid_spec: GridSpec | None = None

    def __post_init__(self):
        self.points = check_disk_array(self.points, "points").ravel()
        self.values = np.asarray(self.values, dtype=complex).ravel()
        if self.points.shape != self.values.shape:
            raise DomainError("points and values differ in length")

    def __len__(self):
        return self.points.size

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["w_re", "w_im", "val_re", "val_im"])
            for w, v in zip(self.points, self.values):
                writer.writerow([repr(float(w.real)), repr(float(w.imag)),
                                 repr(float(v.real)), repr(float(v.imag))])

    @classmethod
    def from_csv(cls, path, grid_spec=None):
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            rows = [(complex(float(r["w_re"]), float(r["w_im"])),
                     complex(float(r["val_re"]), float(r["val_im"]))) for r in reader]
        pts = np.array([r[0] for r in rows], dtype=complex)
        vals = np.array([r[1] for r in rows], dtype=complex)
        return cls(pts, vals, grid_spec)


def sample_range(transform, grid_spec):
    """Evaluate a vectorised transform on the polar grid of ``grid_spec``."""
    spec = grid_spec if isinstance(grid_spec, GridSpec) else GridSpec(*grid_spec)
    pts = polar_grid(spec)
    try:
        vals = np.asarray(transform(pts), dtype=complex)
    except NumericError:
        raise
    except Exception:
        vals = None
    if vals is None or vals.shape != pts.shape or not np.all(np.isfinite(vals)):
        vals = np.empty(pts.shape, dtype=complex)
        for i, w in enumerate(pts):
            try:
                v = np.asarray(transform(w), dtype=complex).item()
            except Exception as exc:
                raise NumericError(f"transform failed at w={w!r}: {exc}", where=w,
                                   module=getattr(exc, "module", None) or "ranges") from exc
            if not np.isfinite(v):
                raise NumericError(f"transform is not finite at w={w!r}", where=w, module="ranges")
            vals[i] = v
    return RangeSample(pts, vals, spec)


# -- planar geometry ---------------------------------------------------------

def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(values):
    """Andrew's monotone chain; counter-clockwise hull vertices as complex numbers.

    Collinear boundary points are dropped.  Degenerate inputs return one or
    two vertices.
    """
    pts = sorted(set((float(v.real), float(v.imag)) for v in np.asarray(values, dtype=complex).ravel()))
    if len(pts) <= 2:
        return np.array([complex(*q) for q in pts], dtype=complex)

    lower = []
    for q in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], q) <= 0:
            lower.pop()
        lower.append(q)
    upper = []
    for q in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], q) <= 0:
            upper.pop()
        upper.append(q)
    hull = lower[:-1] + upper[:-1]
    return np.array([complex(*q) for q in hull], dtype=complex)


def polygon_area(vertices):
    v = np.asarray(vertices, dtype=complex)
    if v.size < 3:
        return 0.0
    x, y = v.real, v.imag
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def diameter(values):
    """Largest pairwise distance, computed over hull vertices."""
    hull = convex_hull(values)
    if hull.size < 2:
        return 0.0
    return float(np.max(np.abs(hull[:, None] - hull[None, :])))


def _segment_distance(p, a, b):
    ab = b - a
    if ab == 0:
        return np.abs(p - a)
    t = np.clip(((p - a) * np.conj(ab)).real / abs(ab) ** 2, 0.0, 1.0)
    return np.abs(p - (a + t * ab))


def hull_margin(points, hull):
    """Signed distance of each point to the hull boundary, positive inside.

    For a hull with fewer than three vertices the margin is minus the
    distance to the point or segment.
    """
    p = np.atleast_1d(np.asarray(points, dtype=complex))
    h = np.asarray(hull, dtype=complex)
    if h.size == 0:
        raise DomainError("empty hull")
    if h.size == 1:
        return -np.abs(p - h[0])
    if h.size == 2:
        return -_segment_distance(p, h[0], h[1])
    edges = list(zip(h, np.roll(h, -1)))
    dist = np.min([_segment_distance(p, a, b) for a, b in edges], axis=0)
    inside = np.ones(p.shape, dtype=bool)
    for a, b in edges:
        e = b - a
        inside &= (np.conj(e) * (p - a)).imag >= 0.0
    return np.where(inside, dist, -dist)


def collinear_residual(values):
    """Largest perpendicular distance to the total-least-squares line."""
    v = np.asarray(values, dtype=complex).ravel()
    if v.size <= 2:
        return 0.0
    xy = np.column_stack((v.real, v.imag))
    xy = xy - xy.mean(axis=0)
    _, _, vt = np.linalg.svd(xy, full_matrices=False)
    normal = vt[-1]
    return float(np.max(np.abs(xy @ normal)))


def collinearity(sample, tol=COLLINEAR_TOL):
    """True when all sampled values lie within ``tol`` of one straight line."""
    values = sample.values if isinstance(sample, RangeSample) else sample
    if np.size(values) < 2:
        raise DomainError("collinearity needs at least two points")
    return collinear_residual(values) <= tol


@dataclass
class ConvexityReport:
    defect: float
    threshold: float
    spacing: float
    hull_area: float
    diameter: float
    collinear: bool
    min_modulus: float
    verdict: str
    n_pairs: int
    seed: int
    extra: dict = field(default_factory=dict)

    def to_dict(self):
        return asdict(self)

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)


def _unique_values(values, decimals=12):
    v = np.asarray(values, dtype=complex).ravel()
    _, idx = np.unique(np.round(np.column_stack((v.real, v.imag)), decimals), axis=0, return_index=True)
    return v[np.sort(idx)]


def nn_spacing(values):
    """Median nearest-neighbour distance among the distinct sampled values."""
    u = _unique_values(values)
    if u.size < 2:
        return 0.0
    tree = cKDTree(np.column_stack((u.real, u.imag)))
    dist, _ = tree.query(np.column_stack((u.real, u.imag)), k=2)
    return float(np.median(dist[:, 1]))


def convexity_defect(sample, n_pairs=20000, seed=0):
    """Midpoint convexity test of a sampled range.

    ``defect`` is the largest distance from the midpoint of a random pair of
    sampled values to the value cloud.  Verdicts, in order: a point if the
    diameter is below ``1e-10``; a segment if the values are collinear;
    non-convex if ``defect`` exceeds ten times the median nearest-neighbour
    spacing; otherwise convex at the sampled resolution.
    """
    values = sample.values if isinstance(sample, RangeSample) else np.asarray(sample, dtype=complex)
    if values.size < 3:
        raise DomainError("convexity_defect needs at least three sampled values")
    u = _unique_values(values)
    hull = convex_hull(u)
    diam = diameter(u)
    collinear = collinear_residual(u) <= COLLINEAR_TOL * max(1.0, diam)
    spacing = nn_spacing(u)
    threshold = DEFECT_FACTOR * spacing

    if u.size >= 2:
        rng = np.random.default_rng(seed)
        i = rng.integers(0, u.size, size=n_pairs)
        j = rng.integers(0, u.size, size=n_pairs)
        mids = 0.5 * (u[i] + u[j])
        tree = cKDTree(np.column_stack((u.real, u.imag)))
        dist, _ = tree.query(np.column_stack((mids.real, mids.imag)))
        defect = float(dist.max())
    else:
        defect = 0.0

    if diam <= POINT_DIAMETER:
        verdict = POINT
    elif collinear:
        verdict = SEGMENT
    elif defect > threshold:
        verdict = NONCONVEX
    else:
        verdict = CONVEX
    return ConvexityReport(defect=defect, threshold=threshold, spacing=spacing,
                           hull_area=polygon_area(hull), diameter=diam, collinear=bool(collinear),
                           min_modulus=float(np.min(np.abs(values))), verdict=verdict,
                           n_pairs=int(n_pairs), seed=int(seed))


def boundary_limit_probe(transform, direction, radii):
    """Transform values along the ray ``w = r * direction``."""
    direction = complex(direction)
    if abs(abs(direction) - 1.0) > 1e-12:
        raise DomainError("direction must be unimodular")
    radii = np.asarray(radii, dtype=float)
    if np.any(radii <= 0) or np.any(radii >= 1) or np.any(np.diff(radii) <= 0):
        raise DomainError("radii must be increasing inside (0, 1)")
    return np.asarray(transform(radii * direction), dtype=complex)


def min_modulus(sample):
    values = sample.values if isinstance(sample, RangeSample) else np.asarray(sample)
    if np.size(values) == 0:
        raise DomainError("empty sample")
    return float(np.min(np.abs(values)))
