"""Camera model, rig extrinsics, spherical grid, and SE(3) utilities."""

from .se3 import SE3
from .camera import FisheyeCamera, Rig, OutOfFovError
from .grid import SphereGrid, depth_to_pointcloud
from .calibration import load_rig_calibration, save_rig_calibration

__all__ = [
    "SE3",
    "FisheyeCamera",
    "Rig",
    "OutOfFovError",
    "SphereGrid",
    "depth_to_pointcloud",
    "load_rig_calibration",
    "save_rig_calibration",
]
