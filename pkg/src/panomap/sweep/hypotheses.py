"""Inverse-depth hypothesis spacing for the sweeping spheres."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class HypothesisSet:
    """Uniformly spaced inverse depths rho_n = (n / (N-1)) / min_depth.

    rho_0 = 0 is the sphere at infinity; rho_{N-1} = 1/min_depth is the
    nearest sweeping sphere.
    """

    count: int
    min_depth: float

    def __post_init__(self):
        if self.count < 2:
            raise ValueError("need at least 2 hypotheses")
        if self.min_depth <= 0:
            raise ValueError("min_depth must be positive")

    @property
    def inverse_depths(self) -> np.ndarray:
        return np.arange(self.count) / ((self.count - 1) * self.min_depth)

    def rho(self, n):
        """Inverse depth at (possibly fractional) index n."""
        return np.asarray(n, dtype=float) / ((self.count - 1) * self.min_depth)

    def depth(self, n, far_cap: float = 1000.0):
        """Metric depth at fractional index n, capped instead of infinite."""
        rho = self.rho(n)
        with np.errstate(divide="ignore"):
            d = np.where(rho > 0, 1.0 / np.maximum(rho, 1e-300), np.inf)
        return np.minimum(d, far_cap)

    def index_from_depth(self, depth):
        """Fractional index whose hypothesis sphere passes через the given depth."""
        depth = np.asarray(depth, dtype=float)
        return (self.count - 1) * self.min_depth / depth
