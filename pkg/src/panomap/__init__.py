"""Omnidirectional localization and dense mapping for a four-fisheye rig.

Spherical-sweeping stereo produces 360-degree inverse-depth maps, a
depth-integrated odometry and loop-closing module produces rig poses, and
a TSDF volume fuses both into a triangle-mesh map.
"""

__version__ = "0.1.0"
