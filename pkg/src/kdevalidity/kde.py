"""Univariate Gaussian kernel density estimation and KDE mode finding.

Mode search scans an equally spaced grid over ``[min(sample), max(sample)]``
(augmented with the sample points themselves, so that very narrow kernels
are not missed between grid nodes) and refines the best candidate by
bisection on the sign of the density slope, falling back to golden-section
search when the bracket around the candidate holds no sign change.  The
batched routine :func:`estimate_modes` is what the validity indices use;
:func:`estimate_mode` is the single-sample front.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientSample, InvalidBandwidth

SQRT_2PI = math.sqrt(2.0 * math.pi)
SILVERMAN_FACTOR = 1.06
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
# Upper bound on the number of float64 cells materialized per KDE block.
_BLOCK_CELLS = 2_000_000
_MAX_REFINE = 200


@dataclass(frozen=True)
class KdeConfig:
    """Bandwidth rule and mode-search settings.

    ``alpha`` is the exponent in ``h = 1.06 * sd * n ** (-1 / alpha)``;
    ``sigma_scope`` selects whether ``sd`` and ``n`` come from the sample
    being smoothed (``"per_sample"``) or from all pairwise distances of the
    dataset (``"global"``).  ``refine_tolerance`` is relative to the sample
    range.
    """

    alpha: float = 5.0
    sigma_scope: str = "per_sample"
    grid_points: int = 512
    refine_tolerance: float = 1e-9

    def __post_init__(self):
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if self.sigma_scope not in ("per_sample", "global"):
            raise ValueError(f"unknown sigma_scope {self.sigma_scope!r}")
        if self.grid_points < 2:
            raise ValueError("grid_points must be >= 2")
        if not self.refine_tolerance > 0:
            raise ValueError("refine_tolerance must be positive")


def gaussian_kernel(x):
    """Standard normal density; accepts scalars or arrays."""
    x = np.asarray(x, dtype=float)
    out = np.exp(-0.5 * x * x) / SQRT_2PI
    return float(out) if out.ndim == 0 else out


def _as_sample(sample, min_size=1):
    arr = np.asarray(sample, dtype=float).ravel()
    if arr.size < min_size:
        raise InsufficientSample(f"need at least {min_size} values, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("sample contains non-finite values")
    return arr


def silverman_bandwidth(sample, alpha: float = 5.0) -> float:
    """Rule-of-thumb bandwidth ``1.06 * sd * n ** (-1/alpha)``, sd with ddof=1."""
    arr = _as_sample(sample, min_size=2)
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    if np.all(arr == arr[0]):
        return 0.0
    return SILVERMAN_FACTOR * float(np.std(arr, ddof=1)) * arr.size ** (-1.0 / alpha)


def silverman_bandwidths(samples: np.ndarray, alpha: float = 5.0) -> np.ndarray:
    """Row-wise :func:`silverman_bandwidth` for a 2-D array of samples."""
    samples = np.asarray(samples, dtype=float)
    s = samples.shape[1]
    if s < 2:
        raise InsufficientSample("need at least 2 values per sample")
    sd = np.std(samples, axis=1, ddof=1)
    const = np.all(samples == samples[:, :1], axis=1)
    h = SILVERMAN_FACTOR * sd * s ** (-1.0 / alpha)
    h[const] = 0.0
    return h


def kde_evaluate(sample, h: float, x):
    """Gaussian KDE of ``sample`` with bandwidth ``h`` at ``x`` (scalar or array)."""
    arr = _as_sample(sample)
    if not h > 0:
        raise InvalidBandwidth(f"bandwidth must be positive, got {h}")
    xs = np.asarray(x, dtype=float)
    u = (xs[..., None] - arr) / h
    out = np.exp(-0.5 * u * u).sum(axis=-1) / (arr.size * h * SQRT_2PI)
    return float(out) if out.ndim == 0 else out


def _density_rows(points: np.ndarray, samples: np.ndarray, h: np.ndarray) -> np.ndarray:
    # points (B, P), samples (B, s), h (B,) -> densities (B, P)
    u = (points[:, :, None] - samples[:, None, :]) / h[:, None, None]
    return np.exp(-0.5 * u * u).sum(axis=2) / (samples.shape[1] * h * SQRT_2PI)[:, None]


def _modes_block(samples, h, config):
    lo = samples.min(axis=1)
    hi = samples.max(axis=1)
    width = hi - lo
    modes = lo.copy()
    live = (width > 0) & (h > 0)
    if not np.any(live):
        return modes
    S, hl, lo_l, w = samples[live], h[live], lo[live], width[live]

    g = config.grid_points
    grid = lo_l[:, None] + w[:, None] * np.linspace(0.0, 1.0, g)
    cand = np.concatenate([grid, S], axis=1)
    dens = _density_rows(cand, S, hl)
    fmax = dens.max(axis=1, keepdims=True)
    best = np.where(dens == fmax, cand, np.inf).min(axis=1)
    fbest = fmax[:, 0]

    # a peak narrower than the grid spacing sits within a few bandwidths
    radius = np.minimum(w / (g - 1), 4.0 * hl)
    a = np.maximum(lo_l, best - radius)
    b = np.minimum(lo_l + w, best + radius)
    # cannot resolve below a few ulps of the magnitude
    scale = np.maximum(np.abs(a), np.abs(b))
    tol = np.maximum(config.refine_tolerance * w, 8 * np.finfo(float).eps * scale)
    slope_a = _slope_rows(a, S, hl)
    slope_b = _slope_rows(b, S, hl)
    sign_change = (slope_a > 0) & (slope_b < 0)
    refined = np.where(
        sign_change,
        _bisect_slope(a, b, S, hl, tol),
        _golden(a, b, S, hl, tol),
    )
    fref = _density_rows(refined[:, None], S, hl)[:, 0]
    modes[live] = np.where(fref >= fbest, refined, best)
    return modes


def _slope_rows(x, samples, h):
    # sign-preserving multiple of the KDE derivative at x (one point per row)
    u = (samples - x[:, None]) / h[:, None]
    return (u * np.exp(-0.5 * u * u)).sum(axis=1)


def _bisect_slope(a, b, samples, h, tol):
    a, b = a.copy(), b.copy()
    for _ in range(_MAX_REFINE):
        if not np.any(b - a > tol):
            break
        mid = 0.5 * (a + b)
        up = _slope_rows(mid, samples, h) > 0
        a = np.where(up, mid, a)
        b = np.where(up, b, mid)
    return 0.5 * (a + b)


def _golden(a, b, samples, h, tol):
    a, b = a.copy(), b.copy()
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc = _density_rows(c[:, None], samples, h)[:, 0]
    fd = _density_rows(d[:, None], samples, h)[:, 0]
    for _ in range(_MAX_REFINE):
        if not np.any(b - a > tol):
            break
        left = fc >= fd
        # left: maximum lies in [a, d]; otherwise in [c, b]
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        nc = np.where(left, b - _INV_PHI * (b - a), d)
        nd = np.where(left, c, a + _INV_PHI * (b - a))
        fnew = _density_rows(np.where(left, nc, nd)[:, None], samples, h)[:, 0]
        fc, fd = np.where(left, fnew, fd), np.where(left, fc, fnew)
        c, d = nc, nd
    return 0.5 * (a + b)


def estimate_modes(samples, h, config: KdeConfig | None = None) -> np.ndarray:
    """KDE modes of each row of ``samples`` with per-row bandwidths ``h``.

    Rows with zero bandwidth or zero range return their minimum (the common
    value for constant rows).
    """
    config = config or KdeConfig()
    samples = np.asarray(samples, dtype=float)
    if samples.ndim != 2 or samples.shape[1] < 1:
        raise InsufficientSample("samples must be a non-empty 2-D array")
    h = np.broadcast_to(np.asarray(h, dtype=float), (samples.shape[0],)).copy()
    if np.any(h < 0):
        raise InvalidBandwidth("negative bandwidth")
    width = samples.max(axis=1) - samples.min(axis=1) if samples.size else np.zeros(0)
    if np.any((h == 0) & (width > 0)):
        raise InvalidBandwidth("zero bandwidth for a non-constant sample")
    B, s = samples.shape
    per_row = (config.grid_points + s) * s
    rows = max(1, _BLOCK_CELLS // per_row)
    out = np.empty(B)
    for start in range(0, B, rows):
        sl = slice(start, start + rows)
        out[sl] = _modes_block(samples[sl], h[sl], config)
    return out


def estimate_mode(sample, config: KdeConfig | None = None, h: float | None = None) -> float:
    """Mode of the Gaussian KDE of ``sample``.

    The bandwidth defaults to :func:`silverman_bandwidth` with
    ``config.alpha``; pass ``h`` to fix it explicitly.
    """
    config = config or KdeConfig()
    arr = _as_sample(sample)
    if arr.size == 1:
        return float(arr[0])
    if h is None:
        h = silverman_bandwidth(arr, config.alpha)
    if h == 0:
        if np.all(arr == arr[0]):
            return float(arr[0])
        raise InvalidBandwidth("zero bandwidth for a non-constant sample")
    if h < 0:
        raise InvalidBandwidth(f"bandwidth must be positive, got {h}")
    return float(estimate_modes(arr[None, :], np.array([h]), config)[0])
