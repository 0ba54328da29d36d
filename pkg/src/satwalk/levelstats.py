"""Nearest-neighbor spacing statistics of eigenphases on the circle.

Spacings include the wraparound gap, so n phases give n spacings summing to
2*pi; normalization divides by the mean. Goodness of fit against the
circular-orthogonal-ensemble surmise P(s) = (pi/2) s exp(-pi s^2 / 4) is a
Kolmogorov-Smirnov distance, and the unfolding-free cross-check is the mean
consecutive-spacing ratio (about 0.53 for that ensemble, about 0.39 for
Poisson phases).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .config import DEFAULTS
from .errors import ValidationError


@dataclass(frozen=True)
class SpacingSample:
    """Normalized spacings: all entries >= 0 with mean exactly 1."""

    spacings: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.spacings, dtype=float)
        if s.size == 0:
            raise ValidationError("empty spacing sample")
        if np.any(s < 0):
            raise ValidationError("spacings must be nonnegative")
        if abs(s.mean() - 1.0) > 1e-12:
            raise ValidationError(f"spacings must have unit mean, got {s.mean()!r}")
        object.__setattr__(self, "spacings", s)

    @property
    def count(self) -> int:
        return len(self.spacings)


def _sorted_circle(phases: np.ndarray, minimum: int) -> np.ndarray:
    ph = np.sort(np.asarray(phases, dtype=float))
    if len(ph) < minimum:
        raise ValidationError(f"need at least {minimum} phases")
    if ph[0] <= -np.pi - 1e-12 or ph[-1] > np.pi + 1e-12:
        raise ValidationError("phases must lie in (-pi, pi]")
    return ph


def circle_spacings(phases: np.ndarray) -> SpacingSample:
    """Consecutive gaps of sorted phases in (-pi, pi], wraparound included."""
    ph = _sorted_circle(phases, minimum=3)
    raw = np.append(np.diff(ph), ph[0] + 2 * np.pi - ph[-1])
    return SpacingSample(raw / raw.mean())


def coe_spacing_pdf(s):
    s = np.asarray(s, dtype=float)
    return (np.pi / 2) * s * np.exp(-np.pi * s**2 / 4)


def coe_spacing_cdf(s):
    s = np.asarray(s, dtype=float)
    return 1.0 - np.exp(-np.pi * s**2 / 4)


def sample_coe_spacings(count: int, rng: np.random.Generator) -> np.ndarray:
    """Inverse-CDF draws from the spacing surmise (unit mean in expectation)."""
    u = rng.uniform(size=count)
    return np.sqrt(-4.0 * np.log1p(-u) / np.pi)


def ks_distance_coe(sample: SpacingSample) -> float:
    """Kolmogorov-Smirnov distance between the empirical CDF and the surmise CDF."""
    x = np.sort(sample.spacings)
    n = len(x)
    f = coe_spacing_cdf(x)
    upper = np.abs(np.arange(1, n + 1) / n - f).max()
    lower = np.abs(np.arange(0, n) / n - f).max()
    return float(max(upper, lower))


def mean_r_statistic(phases: np.ndarray) -> float:
    """Mean min/max ratio of cyclically consecutive circle spacings.

    A pair containing a zero spacing contributes r = 0.
    """
    ph = _sorted_circle(phases, minimum=4)
    s = np.append(np.diff(ph), ph[0] + 2 * np.pi - ph[-1])
    nxt = np.roll(s, -1)
    hi = np.maximum(s, nxt)
    lo = np.minimum(s, nxt)
    r = np.where(hi > 0, lo / np.where(hi > 0, hi, 1.0), 0.0)
    return float(r.mean())


def spacing_histogram(
    sample: SpacingSample,
    bin_width: float = DEFAULTS.hist_bin_width,
    s_max: float = DEFAULTS.hist_s_max,
):
    """(centers, empirical density, surmise density) over [0, s_max]."""
    nbins = int(round(s_max / bin_width))
    density, edges = np.histogram(sample.spacings, bins=nbins, range=(0.0, s_max), density=True)
    centers = (edges[:-1] + edges[1:]) / 2
    return centers, density, coe_spacing_pdf(centers)


def write_histogram_csv(sample: SpacingSample, path: str | Path, **kwargs) -> None:
    centers, emp, coe = spacing_histogram(sample, **kwargs)
    with open(path, "w") as fh:
        fh.write("s,P_empirical,P_coe\n")
        for c, e, p in zip(centers, emp, coe):
            fh.write(f"{float(c)!r},{float(e)!r},{float(p)!r}\n")


def write_stats_json(phases: np.ndarray, path: str | Path) -> dict:
    sample = circle_spacings(phases)
    report = {
        "ks": ks_distance_coe(sample),
        "mean_r": mean_r_statistic(phases),
        "count": sample.count,
    }
    Path(path).write_text(json.dumps(report, indent=2) + "\n")
    return report
