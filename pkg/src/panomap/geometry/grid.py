"""Equirectangular sphere grid and its ray parameterization.

Grid conventions (fixed): pixel-center sampling, azimuth
``theta(i) = -pi + (i + 0.5) * 2*pi / W`` increasing with column, elevation
``phi(j) = phi_min + (j + 0.5) * (phi_max - phi_min) / H``. The sphere
direction for (theta, phi) is
``(cos(phi)*cos(theta), sin(phi), cos(phi)*sin(theta))`` so the rig +y axis
is the phi = pi/2 pole.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .se3 import SE3


@dataclass(frozen=True)
class SphereGrid:
    width: int
    height: int
    phi_min: float = -np.pi / 4
    phi_max: float = np.pi / 4
    num_hypotheses: int = 192
    min_depth: float = 0.55

    def __post_init__(self):
        if self.width < 1 or self.height < 1 or self.num_hypotheses < 1:
            raise ValueError("grid dimensions and hypothesis count must be >= 1")
        if not self.phi_min < self.phi_max:
            raise ValueError("phi_min must be < phi_max")
        if self.min_depth <= 0:
            raise ValueError("min_depth must be positive")

    @property
    def shape(self) -> tuple:
        """(height, width) raster shape used for depth/index maps."""
        return (self.height, self.width)

    def theta(self, i) -> np.ndarray:
        return -np.pi + (np.asarray(i, dtype=float) + 0.5) * (2.0 * np.pi / self.width)

    def phi(self, j) -> np.ndarray:
        return self.phi_min + (np.asarray(j, dtype=float) + 0.5) * (
            (self.phi_max - self.phi_min) / self.height
        )

    def ray(self, i: int, j: int) -> np.ndarray:
        """Unit direction for grid cell (column i, row j)."""
        if not (0 <= i < self.width and 0 <= j < self.height):
            raise ValueError(f"grid index ({i}, {j}) out of range")
        th = float(self.theta(i))
        ph = float(self.phi(j))
        return np.array([np.cos(ph) * np.cos(th), np.sin(ph), np.cos(ph) * np.sin(th)])

    def rays(self) -> np.ndarray:
        """All unit directions as an (H, W, 3) array."""
        th = self.theta(np.arange(self.width))
        ph = self.phi(np.arange(self.height))
        cth, sth = np.cos(th)[None, :], np.sin(th)[None, :]
        cph, sph = np.cos(ph)[:, None], np.sin(ph)[:, None]
        return np.stack(
            [cph * cth, np.broadcast_to(sph, (self.height, self.width)).copy(), cph * sth],
            axis=-1,
        )

    def direction_to_grid(self, dirs: np.ndarray) -> np.ndarray:
        """Fractional (i, j) grid coordinates of (N,3) directions.

        j is unbounded when the elevation leaves [phi_min, phi_max]; the
        caller masks. i wraps cyclically in theta.
        """
        d = np.atleast_2d(np.asarray(dirs, dtype=float))
        n = d / np.linalg.norm(d, axis=1, keepdims=True)
        theta = np.arctan2(n[:, 2], n[:, 0])
        phi = np.arcsin(np.clip(n[:, 1], -1.0, 1.0))
        i = (theta + np.pi) * self.width / (2.0 * np.pi) - 0.5
        j = (phi - self.phi_min) * self.height / (self.phi_max - self.phi_min) - 0.5
        return np.stack([i, j], axis=1)


def depth_to_pointcloud(depth: np.ndarray, grid: SphereGrid, rig_pose: SE3) -> np.ndarray:
    """Lift a per-cell metric depth map into world points.

    Cells with non-finite or non-positive depth are skipped. Returns an
    (N,3) array of ``rig_pose * (depth * ray)``.
    """
    depth = np.asarray(depth, dtype=float)
    if depth.shape != grid.shape:
        raise ValueError(f"depth shape {depth.shape} does not match grid {grid.shape}")
    valid = np.isfinite(depth) & (depth > 0)
    rays = grid.rays()[valid]
    pts = rays * depth[valid][:, None]
    return rig_pose.apply(pts)
