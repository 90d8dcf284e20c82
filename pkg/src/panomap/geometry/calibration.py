"""Plain-text rig calibration files.

One stanza per camera::

    camera 0
    model poly_odd7
    size 1600 1532
    principal 800.0 766.0
    radial 300.0 0.0 0.0 0.0
    affine 1.0 0.0 0.0 1.0
    fov_deg 110.0
    cam_to_rig 1 0 0 0.15  0 1 0 0  0 0 1 0  0 0 0 1

``affine`` is row-major 2x2, ``cam_to_rig`` row-major 4x4. Lines starting
with ``#`` and blank lines are ignored. Only the ``poly_odd7`` model (odd
powers of the incidence angle up to degree 7) is understood; unknown model
names are rejected so other lens families can be added explicitly.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .camera import FisheyeCamera, Rig
from .se3 import SE3

KNOWN_MODELS = ("poly_odd7",)

_REQUIRED = ("model", "size", "principal", "radial", "affine", "fov_deg", "cam_to_rig")


def _build_camera(stanza: dict, index: int) -> FisheyeCamera:
    for key in _REQUIRED:
        if key not in stanza:
            raise ValueError(f"camera {index}: missing '{key}' line")
    if stanza["model"][0] not in KNOWN_MODELS:
        raise ValueError(f"camera {index}: unknown model name '{stanza['model'][0]}'")
    width, height = (int(v) for v in stanza["size"][:2])
    T = np.array([float(v) for v in stanza["cam_to_rig"]], dtype=float)
    if T.size != 16:
        raise ValueError(f"camera {index}: cam_to_rig needs 16 values, got {T.size}")
    return FisheyeCamera(
        image_width=width,
        image_height=height,
        principal_point=np.array([float(v) for v in stanza["principal"][:2]]),
        radial_poly=np.array([float(v) for v in stanza["radial"][:4]]),
        affine=np.array([float(v) for v in stanza["affine"][:4]]).reshape(2, 2),
        fov_half_angle=np.deg2rad(float(stanza["fov_deg"][0])),
        cam_to_rig=SE3.from_matrix(T.reshape(4, 4)),
    )


def load_rig_calibration(path) -> Rig:
    """Parse a calibration file into a four-camera rig."""
    stanzas: list[dict] = []
    current: dict | None = None
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        key, values = tokens[0], tokens[1:]
        if key == "camera":
            current = {}
            stanzas.append(current)
            continue
        if current is None:
            raise ValueError(f"{path}:{lineno}: '{key}' before any 'camera' stanza")
        current[key] = values
    cameras = tuple(_build_camera(s, i) for i, s in enumerate(stanzas))
    return Rig(cameras)


def save_rig_calibration(rig: Rig, path) -> None:
    lines = ["# panomap rig calibration"]
    for c, cam in enumerate(rig.cameras):
        lines.append(f"camera {c}")
        lines.append("model poly_odd7")
        lines.append(f"size {cam.image_width} {cam.image_height}")
        lines.append("principal " + " ".join(f"{v:.10g}" for v in cam.principal_point))
        lines.append("radial " + " ".join(f"{v:.10g}" for v in cam.radial_poly))
        lines.append("affine " + " ".join(f"{v:.10g}" for v in cam.affine.ravel()))
        lines.append(f"fov_deg {np.rad2deg(cam.fov_half_angle):.10g}")
        T = cam.cam_to_rig.matrix().ravel()
        lines.append("cam_to_rig " + " ".join(f"{v:.12g}" for v in T))
        lines.append("")
    Path(path).write_text("\n".join(lines))
