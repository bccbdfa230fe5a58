"""n-ball geometry: volumes, two-ball intersection (lens) volumes and bounds.

The central object is A(r, r_d, x), the volume of the intersection of two
n-balls with radii r and r_d whose centers are x apart:

* x >= r + r_d          -> 0 (disjoint)
* x <= |r - r_d|        -> v_n * min(r, r_d)^n (containment)
* otherwise             -> sum of the two hyperspherical caps cut by the
                           radical hyperplane, which sits at distance
                           c1 = (x^2 + r^2 - r_d^2) / (2x) from the r-center.

Cap volumes use the regularized incomplete beta representation; a cap taller
than its radius is evaluated as ball minus the complementary cap, and the
half-ball value is returned exactly at height == radius to avoid
cancellation.  Two closed-form bounds on the lens volume are provided for
separations inside the open lens regime: a circumscribing hyperrectangle
(upper) and an inscribed ball of diameter r + r_d - x (lower).

All functions broadcast over numpy arrays in the separation argument(s).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit, vectorize

from .special import _reg_inc_beta

__all__ = [
    "LensGeometry",
    "unit_ball_volume",
    "cap_volume",
    "intersection_volume",
    "intersection_volume_1d",
    "intersection_volume_2d",
    "intersection_volume_derivative_r",
    "intersection_upper_bound",
    "intersection_lower_bound",
]


# ---------------------------------------------------------------------------
# scalar kernels
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def _unit_ball_volume(n: int) -> float:
    return math.pi ** (0.5 * n) / math.gamma(0.5 * n + 1.0)


@njit(cache=True, nogil=True)
def _cap_volume(n: int, radius: float, height: float) -> float:
    """Volume of the cap of height `height` of an n-ball of radius `radius`."""
    if height <= 0.0:
        return 0.0
    full = _unit_ball_volume(n) * radius ** n
    if height >= 2.0 * radius:
        return full
    if height == radius:
        return 0.5 * full
    if height > radius:
        return full - _cap_volume(n, radius, 2.0 * radius - height)
    # height < radius: cut plane at distance radius - height from the center
    y = height * (2.0 * radius - height) / (radius * radius)
    return 0.5 * full * _reg_inc_beta(0.5 * (n + 1.0), 0.5, y)


@njit(cache=True, nogil=True)
def _lens_volume(n: int, r: float, r_d: float, x: float) -> float:
    if r <= 0.0:
        return 0.0
    small = min(r, r_d)
    if x >= r + r_d:
        return 0.0
    if x <= abs(r - r_d):
        return _unit_ball_volume(n) * small ** n
    c1 = (x * x + r * r - r_d * r_d) / (2.0 * x)
    h1 = r - c1
    h2 = r_d - (x - c1)
    # FP guard: the open-lens branch can land microscopically outside [0, 2R]
    if h1 < 0.0:
        h1 = 0.0
    elif h1 > 2.0 * r:
        h1 = 2.0 * r
    if h2 < 0.0:
        h2 = 0.0
    elif h2 > 2.0 * r_d:
        h2 = 2.0 * r_d
    return _cap_volume(n, r, h1) + _cap_volume(n, r_d, h2)


@njit(cache=True, nogil=True)
def _lens_dvolume_dr(n: int, r: float, r_d: float, x: float) -> float:
    """d A(r, r_d, x) / d r: the (n-1)-measure of the r-sphere inside the r_d ball."""
    if r <= 0.0:
        return 0.0
    sphere = n * _unit_ball_volume(n) * r ** (n - 1)
    if x >= r + r_d:
        return 0.0
    if x + r <= r_d:
        return sphere  # whole r-sphere inside the r_d ball
    if x + r_d <= r:
        return 0.0  # r_d ball strictly inside: the r-sphere is outside it
    # open lens regime: spherical cap of colatitude theta*, cos(theta*) = t
    t = (r * r + x * x - r_d * r_d) / (2.0 * r * x)
    if t > 1.0:
        t = 1.0
    elif t < -1.0:
        t = -1.0
    if n == 1:
        return 1.0  # exactly one of the two endpoints lies inside
    frac = 0.5 * _reg_inc_beta(0.5 * (n - 1.0), 0.5, 1.0 - t * t)
    if t < 0.0:
        frac = 1.0 - frac
    return sphere * frac


@njit(cache=True, nogil=True)
def _lens_upper_bound(n: int, r: float, r_d: float, x: float) -> float:
    # circumscribing hyperrectangle: (r + r_d - x) by (2 min(r, r_d))^(n-1)
    return (r + r_d - x) * (2.0 * min(r, r_d)) ** (n - 1)


@njit(cache=True, nogil=True)
def _lens_lower_bound(n: int, r: float, r_d: float, x: float) -> float:
    # inscribed ball of diameter r + r_d - x
    return _unit_ball_volume(n) * (0.5 * (r + r_d - x)) ** n


@vectorize(["float64(int64, float64, float64)"], cache=True, nopython=True)
def _cap_volume_u(n, radius, height):
    return _cap_volume(n, radius, height)


@vectorize(["float64(int64, float64, float64, float64)"], cache=True, nopython=True)
def _lens_volume_u(n, r, r_d, x):
    return _lens_volume(n, r, r_d, x)


@vectorize(["float64(int64, float64, float64, float64)"], cache=True, nopython=True)
def _lens_dvolume_dr_u(n, r, r_d, x):
    return _lens_dvolume_dr(n, r, r_d, x)


@vectorize(["float64(int64, float64, float64, float64)"], cache=True, nopython=True)
def _lens_upper_bound_u(n, r, r_d, x):
    return _lens_upper_bound(n, r, r_d, x)


@vectorize(["float64(int64, float64, float64, float64)"], cache=True, nopython=True)
def _lens_lower_bound_u(n, r, r_d, x):
    return _lens_lower_bound(n, r, r_d, x)


# ---------------------------------------------------------------------------
# public API
# ---------------------------------------------------------------------------

def _check_dimension(n) -> int:
    if n != int(n) or int(n) < 1:
        raise ValueError(f"dimension must be an integer >= 1, got {n!r}")
    return int(n)


def _maybe_scalar(out, *inputs):
    if all(np.ndim(v) == 0 for v in inputs):
        return float(out)
    return out


@dataclass(frozen=True)
class LensGeometry:
    """Two intersecting n-balls: radii (r, r_d) at center separation x."""

    n: int
    r: float
    r_d: float
    x: float

    def __post_init__(self):
        _check_dimension(self.n)
        if self.r < 0.0:
            raise ValueError("r must be >= 0")
        if self.r_d <= 0.0:
            raise ValueError("r_d must be > 0")
        if self.x < 0.0:
            raise ValueError("x must be >= 0")

    def volume(self) -> float:
        return intersection_volume(self.n, self.r, self.r_d, self.x)

    def volume_derivative_r(self) -> float:
        return intersection_volume_derivative_r(self.n, self.r, self.r_d, self.x)

    def upper_bound(self) -> float:
        return intersection_upper_bound(self.n, self.r, self.r_d, self.x)

    def lower_bound(self) -> float:
        return intersection_lower_bound(self.n, self.r, self.r_d, self.x)


def unit_ball_volume(n) -> float:
    """v_n = pi^(n/2) / Gamma(n/2 + 1), the volume of the unit n-ball."""
    return _unit_ball_volume(_check_dimension(n))


def cap_volume(n, radius, height):
    """Volume of the hyperspherical cap of height `height`, 0 <= height <= 2*radius."""
    n = _check_dimension(n)
    radius_arr = np.asarray(radius, dtype=float)
    height_arr = np.asarray(height, dtype=float)
    if np.any(radius_arr <= 0.0):
        raise ValueError("cap_volume requires radius > 0")
    if np.any(height_arr < 0.0) or np.any(height_arr > 2.0 * radius_arr):
        raise ValueError("cap_volume requires 0 <= height <= 2*radius")
    return _maybe_scalar(_cap_volume_u(n, radius_arr, height_arr), radius, height)


def _validated_lens_args(n, r, r_d, x):
    n = _check_dimension(n)
    r_arr = np.asarray(r, dtype=float)
    r_d_arr = np.asarray(r_d, dtype=float)
    x_arr = np.asarray(x, dtype=float)
    if np.any(r_arr < 0.0):
        raise ValueError("r must be >= 0")
    if np.any(r_d_arr <= 0.0):
        raise ValueError("r_d must be > 0")
    if np.any(x_arr < 0.0):
        raise ValueError("x must be >= 0")
    return n, r_arr, r_d_arr, x_arr


def intersection_volume(n, r, r_d, x):
    """A(r, r_d, x): volume of the intersection of two n-balls, any separation."""
    n, r_arr, r_d_arr, x_arr = _validated_lens_args(n, r, r_d, x)
    return _maybe_scalar(_lens_volume_u(n, r_arr, r_d_arr, x_arr), r, r_d, x)


def intersection_volume_1d(r, r_d, x):
    """1-D overlap length: max(0, min(r + r_d - x, 2*min(r, r_d)))."""
    _, r_arr, r_d_arr, x_arr = _validated_lens_args(1, r, r_d, x)
    overlap = np.minimum(r_arr + r_d_arr - x_arr, 2.0 * np.minimum(r_arr, r_d_arr))
    return _maybe_scalar(np.maximum(0.0, overlap), r, r_d, x)


def intersection_volume_2d(r, r_d, x):
    """Explicit 2-D lens area (circular segments), with containment/disjoint regimes."""
    _, r_arr, r_d_arr, x_arr = _validated_lens_args(2, r, r_d, x)
    r_arr, r_d_arr, x_arr = np.broadcast_arrays(r_arr, r_d_arr, x_arr)
    out = np.zeros(r_arr.shape, dtype=float)

    contained = (x_arr <= np.abs(r_arr - r_d_arr)) & (r_arr > 0.0)
    small = np.minimum(r_arr, r_d_arr)
    out[contained] = math.pi * small[contained] ** 2

    lens = (x_arr > np.abs(r_arr - r_d_arr)) & (x_arr < r_arr + r_d_arr)
    if np.any(lens):
        rl, dl, xl = r_arr[lens], r_d_arr[lens], x_arr[lens]
        cos_d = np.clip((xl**2 + dl**2 - rl**2) / (2.0 * xl * dl), -1.0, 1.0)
        cos_r = np.clip((xl**2 + rl**2 - dl**2) / (2.0 * xl * rl), -1.0, 1.0)
        area = dl**2 * np.arccos(cos_d) + rl**2 * np.arccos(cos_r)
        area -= 0.5 * np.sqrt(
            np.maximum(((dl + rl) ** 2 - xl**2) * (xl**2 - (dl - rl) ** 2), 0.0)
        )
        out[lens] = area
    return _maybe_scalar(out, r, r_d, x)


def intersection_volume_derivative_r(n, r, r_d, x):
    """dA/dr: (n-1)-measure of the part of the r-sphere inside the r_d ball.

    At the regime junctions x = |r - r_d| and x = r + r_d the one-sided value
    from the open lens regime is returned (it agrees with the adjacent regime
    at every junction except that the whole-sphere value n*v_n*r^(n-1) is kept
    at x = r_d - r).
    """
    n, r_arr, r_d_arr, x_arr = _validated_lens_args(n, r, r_d, x)
    return _maybe_scalar(_lens_dvolume_dr_u(n, r_arr, r_d_arr, x_arr), r, r_d, x)


def _validated_lens_regime(n, r, r_d, x):
    n, r_arr, r_d_arr, x_arr = _validated_lens_args(n, r, r_d, x)
    lo = np.abs(r_arr - r_d_arr)
    hi = r_arr + r_d_arr
    if np.any(x_arr < lo) or np.any(x_arr > hi):
        raise ValueError(
            "bound is only defined in the lens regime |r - r_d| <= x <= r + r_d"
        )
    return n, r_arr, r_d_arr, x_arr


def intersection_upper_bound(n, r, r_d, x):
    """(r + r_d - x) * (2*min(r, r_d))^(n-1), for |r - r_d| <= x <= r + r_d."""
    n, r_arr, r_d_arr, x_arr = _validated_lens_regime(n, r, r_d, x)
    return _maybe_scalar(_lens_upper_bound_u(n, r_arr, r_d_arr, x_arr), r, r_d, x)


def intersection_lower_bound(n, r, r_d, x):
    """v_n * ((r + r_d - x)/2)^n, for |r - r_d| <= x <= r + r_d."""
    n, r_arr, r_d_arr, x_arr = _validated_lens_regime(n, r, r_d, x)
    return _maybe_scalar(_lens_lower_bound_u(n, r_arr, r_d_arr, x_arr), r, r_d, x)
