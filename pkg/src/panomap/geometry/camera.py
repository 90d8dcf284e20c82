"""Ultra-wide fisheye camera model and the four-camera rig.

The lens maps incidence angle ``a`` (radians off the +z optical axis) to a
radial image distance ``r(a) = k1*a + k2*a^3 + k3*a^5 + k4*a^7`` in pixels.
Odd powers keep the polynomial monotone-invertible out to the 110-degree
half FOV of a 220-degree lens. Pixels are ``principal_point + affine @
(r*cos(psi), r*sin(psi))`` with ``psi`` the azimuth of the point in the
image plane.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .se3 import SE3


class OutOfFovError(ValueError):
    """Pixel or direction falls outside the lens field of view."""


_LUT_SIZE = 2048


@dataclass(frozen=True)
class FisheyeCamera:
    image_width: int
    image_height: int
    principal_point: np.ndarray  # (u0, v0) pixels
    radial_poly: np.ndarray  # (k1, k2, k3, k4)
    affine: np.ndarray  # 2x2 stretch/skew
    fov_half_angle: float  # radians, <= pi
    cam_to_rig: SE3 = field(default_factory=SE3.identity)

    def __post_init__(self):
        pp = np.asarray(self.principal_point, dtype=float).reshape(2)
        k = np.asarray(self.radial_poly, dtype=float).reshape(4)
        A = np.asarray(self.affine, dtype=float).reshape(2, 2)
        object.__setattr__(self, "principal_point", pp)
        object.__setattr__(self, "radial_poly", k)
        object.__setattr__(self, "affine", A)
        if not (0.0 < self.fov_half_angle <= np.pi):
            raise ValueError("fov_half_angle must lie in (0, pi]")
        if abs(np.linalg.det(A)) < 1e-12:
            raise ValueError("affine matrix must be invertible")
        alphas = np.linspace(0.0, self.fov_half_angle, 256)
        if np.any(self._r_prime(alphas[1:]) <= 0.0):
            raise ValueError("radial polynomial must be strictly increasing inside the FOV")
        # dense alpha->r samples seed the vectorized inversion
        lut_a = np.linspace(0.0, self.fov_half_angle, _LUT_SIZE)
        object.__setattr__(self, "_lut_alpha", lut_a)
        object.__setattr__(self, "_lut_r", self.r_of_alpha(lut_a))

    def r_of_alpha(self, alpha):
        """Radial distance in pixels for incidence angle alpha."""
        a = np.asarray(alpha, dtype=float)
        a2 = a * a
        k1, k2, k3, k4 = self.radial_poly
        return a * (k1 + a2 * (k2 + a2 * (k3 + a2 * k4)))

    def _r_prime(self, alpha):
        a2 = np.asarray(alpha, dtype=float) ** 2
        k1, k2, k3, k4 = self.radial_poly
        return k1 + a2 * (3 * k2 + a2 * (5 * k3 + a2 * 7 * k4))

    @property
    def max_radius(self) -> float:
        """r at the FOV edge; pixels beyond it do not unproject."""
        return float(self._lut_r[-1])

    def alpha_of_r(self, r, tol: float = 1e-10, max_iter: int = 50):
        """Invert the radial polynomial (LUT-seeded Newton on the monotone map)."""
        r_in = np.asarray(r, dtype=float)
        a = np.interp(r_in, self._lut_r, self._lut_alpha)
        for _ in range(max_iter):
            step = (self.r_of_alpha(a) - r_in) / self._r_prime(a)
            a = np.clip(a - step, 0.0, self.fov_half_angle)
            if np.all(np.abs(step) < tol):
                break
        return a if a.shape else float(a)

    def project(self, point_cam: np.ndarray):
        """Project one camera-frame point; returns ((u, v), valid)."""
        uv, valid = self.project_many(np.asarray(point_cam, dtype=float).reshape(1, 3))
        return uv[0], bool(valid[0])

    def project_many(self, points_cam: np.ndarray):
        """Project (N,3) camera-frame points; returns ((N,2) pixels, (N,) valid).

        Pixels are computed wherever the direction is defined; ``valid`` is
        False outside the half FOV. Zero-length points raise.
        """
        p = np.asarray(points_cam, dtype=float)
        norms = np.linalg.norm(p, axis=1)
        if np.any(norms < 1e-15):
            raise ValueError("cannot project a zero-length point")
        rho = np.hypot(p[:, 0], p[:, 1])
        alpha = np.arctan2(rho, p[:, 2])
        valid = alpha <= self.fov_half_angle
        r = self.r_of_alpha(np.minimum(alpha, self.fov_half_angle))
        psi = np.arctan2(p[:, 1], p[:, 0])
        d = np.stack([r * np.cos(psi), r * np.sin(psi)], axis=1)
        uv = d @ self.affine.T + self.principal_point
        return uv, valid

    def unproject(self, pixel: np.ndarray) -> np.ndarray:
        """Pixel to unit bearing in the camera frame; raises OutOfFovError."""
        bearings, valid = self.unproject_many(np.asarray(pixel, dtype=float).reshape(1, 2))
        if not valid[0]:
            raise OutOfFovError(f"pixel {np.asarray(pixel).tolist()} outside lens radius")
        return bearings[0]

    def unproject_many(self, pixels: np.ndarray, tol: float = 1e-10):
        """Unproject (N,2) pixels; returns ((N,3) unit bearings, (N,) valid)."""
        px = np.asarray(pixels, dtype=float)
        d = (px - self.principal_point) @ np.linalg.inv(self.affine).T
        r = np.hypot(d[:, 0], d[:, 1])
        valid = r <= self.max_radius * (1.0 + 1e-9)
        alpha = self.alpha_of_r(np.minimum(r, self.max_radius), tol=tol)
        alpha = np.atleast_1d(alpha)
        psi = np.arctan2(d[:, 1], d[:, 0])
        sa = np.sin(alpha)
        bearings = np.stack([sa * np.cos(psi), sa * np.sin(psi), np.cos(alpha)], axis=1)
        return bearings, valid

    def contains_pixel(self, uv: np.ndarray, margin: float = 0.0) -> np.ndarray:
        """In-bounds test for (N,2) pixel coordinates (bilinear-safe with margin)."""
        uv = np.atleast_2d(uv)
        return (
            (uv[:, 0] >= margin)
            & (uv[:, 0] <= self.image_width - 1 - margin)
            & (uv[:, 1] >= margin)
            & (uv[:, 1] <= self.image_height - 1 - margin)
        )


@dataclass(frozen=True)
class Rig:
    """Rigid assembly of exactly four fisheye cameras (cyclic cardinal order)."""

    cameras: tuple

    def __post_init__(self):
        cams = tuple(self.cameras)
        if len(cams) != 4:
            raise ValueError(f"rig requires exactly 4 cameras, got {len(cams)}")
        object.__setattr__(self, "cameras", cams)

    def __len__(self) -> int:
        return 4

    def __getitem__(self, c: int) -> FisheyeCamera:
        return self.cameras[c]

    def rig_to_cam(self, c: int) -> SE3:
        return self.cameras[c].cam_to_rig.inverse()


def make_cardinal_rig(
    baseline: float = 0.3,
    image_size: int = 320,
    k1: float | None = None,
    fov_half_angle: float = np.deg2rad(110.0),
) -> Rig:
    """Build a square rig: four cameras at the corners looking outward.

    Camera c sits at ``baseline/2`` along its optical axis from the rig
    origin and yaws by ``c * 90`` degrees. ``k1`` defaults to a polynomial
    filling the image circle at the half FOV.
    """
    half = baseline / 2.0
    if k1 is None:
        k1 = (image_size / 2.0 - 2.0) / fov_half_angle
    cams = []
    for c in range(4):
        yaw = c * np.pi / 2.0
        # camera axes in the rig frame: +z outward, +x image-right, +y image-down
        z_axis = np.array([np.cos(yaw), 0.0, np.sin(yaw)])
        y_axis = np.array([0.0, -1.0, 0.0])
        x_axis = np.cross(y_axis, z_axis)
        R = np.column_stack([x_axis, y_axis, z_axis])
        t = half * z_axis
        cams.append(
            FisheyeCamera(
                image_width=image_size,
                image_height=image_size,
                principal_point=np.array([(image_size - 1) / 2.0, (image_size - 1) / 2.0]),
                radial_poly=np.array([k1, 0.0, 0.0, 0.0]),
                affine=np.eye(2),
                fov_half_angle=fov_half_angle,
                cam_to_rig=SE3.from_rotation_translation(R, t),
            )
        )
    return Rig(tuple(cams))
