"""Omnidirectional multi-view stereo by spherical sweeping.

Warp tables map every (grid ray, inverse-depth hypothesis) pair to sample
coordinates in each fisheye image; photometric matching costs over those
samples form a cost volume; soft-argmin regression turns the volume into a
fractional inverse-depth index per ray.
"""

from .hypotheses import HypothesisSet
from .table import SweepTable, build_sweep_table
from .cost import CostVolume, compute_cost_volume, box_smooth_cost_volume
from .regress import InverseDepthMap, regress_inverse_depth, index_to_depth
from .pfm import read_pfm, write_pfm, load_index_map, save_index_map

__all__ = [
    "HypothesisSet",
    "SweepTable",
    "build_sweep_table",
    "CostVolume",
    "compute_cost_volume",
    "box_smooth_cost_volume",
    "InverseDepthMap",
    "regress_inverse_depth",
    "index_to_depth",
    "read_pfm",
    "write_pfm",
    "load_index_map",
    "save_index_map",
]
