"""Rigid transforms as unit quaternion + translation, with se(3) exp/log.

Twist convention: 6-vectors are ordered (wx, wy, wz, vx, vy, vz), rotation
first. exp((0,0,pi/2,0,0,0)) rotates (1,0,0) onto (0,1,0) (right-handed
rotation about +z).
"""

from __future__ import annotations

import numpy as np

_EPS = 1e-12


def _quat_normalize(q: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(q)
    if n < _EPS:
        raise ValueError("zero-norm quaternion")
    q = q / n
    # canonical sign: non-negative scalar part keeps log() branch stable
    if q[0] < 0:
        q = -q
    return q


def quat_multiply(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    aw, ax, ay, az = a
    bw, bx, by, bz = b
    return np.array(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ]
    )


def quat_to_matrix(q: np.ndarray) -> np.ndarray:
    w, x, y, z = q
    xx, yy, zz = x * x, y * y, z * z
    wx, wy, wz = w * x, w * y, w * z
    xy, xz, yz = x * y, x * z, y * z
    return np.array(
        [
            [1 - 2 * (yy + zz), 2 * (xy - wz), 2 * (xz + wy)],
            [2 * (xy + wz), 1 - 2 * (xx + zz), 2 * (yz - wx)],
            [2 * (xz - wy), 2 * (yz + wx), 1 - 2 * (xx + yy)],
        ]
    )


def matrix_to_quat(R: np.ndarray) -> np.ndarray:
    """Rotation matrix to (w,x,y,z) quaternion, stable for all traces."""
    t = np.trace(R)
    if t > 0:
        s = np.sqrt(t + 1.0) * 2
        q = np.array(
            [0.25 * s, (R[2, 1] - R[1, 2]) / s, (R[0, 2] - R[2, 0]) / s, (R[1, 0] - R[0, 1]) / s]
        )
    else:
        i = int(np.argmax(np.diag(R)))
        if i == 0:
            s = np.sqrt(1.0 + R[0, 0] - R[1, 1] - R[2, 2]) * 2
            q = np.array(
                [(R[2, 1] - R[1, 2]) / s, 0.25 * s, (R[0, 1] + R[1, 0]) / s, (R[0, 2] + R[2, 0]) / s]
            )
        elif i == 1:
            s = np.sqrt(1.0 - R[0, 0] + R[1, 1] - R[2, 2]) * 2
            q = np.array(
                [(R[0, 2] - R[2, 0]) / s, (R[0, 1] + R[1, 0]) / s, 0.25 * s, (R[1, 2] + R[2, 1]) / s]
            )
        else:
            s = np.sqrt(1.0 - R[0, 0] - R[1, 1] + R[2, 2]) * 2
            q = np.array(
                [(R[1, 0] - R[0, 1]) / s, (R[0, 2] + R[2, 0]) / s, (R[1, 2] + R[2, 1]) / s, 0.25 * s]
            )
    return _quat_normalize(q)


def _skew(w: np.ndarray) -> np.ndarray:
    return np.array([[0, -w[2], w[1]], [w[2], 0, -w[0]], [-w[1], w[0], 0]], dtype=float)


def _so3_exp(w: np.ndarray) -> np.ndarray:
    theta = np.linalg.norm(w)
    K = _skew(w)
    if theta < 1e-8:
        # 2nd-order Taylor keeps exp/log round-trips tight near identity
        return np.eye(3) + K + 0.5 * (K @ K)
    return np.eye(3) + (np.sin(theta) / theta) * K + ((1 - np.cos(theta)) / theta**2) * (K @ K)


def _so3_left_jacobian(w: np.ndarray) -> np.ndarray:
    theta = np.linalg.norm(w)
    K = _skew(w)
    if theta < 1e-8:
        return np.eye(3) + 0.5 * K + (K @ K) / 6.0
    A = (1 - np.cos(theta)) / theta**2
    B = (theta - np.sin(theta)) / theta**3
    return np.eye(3) + A * K + B * (K @ K)


class SE3:
    """Immutable rigid transform (unit quaternion ``q`` wxyz + translation ``t``)."""

    __slots__ = ("q", "t")

    def __init__(self, q=None, t=None):
        q = np.array([1.0, 0.0, 0.0, 0.0]) if q is None else np.asarray(q, dtype=float)
        t = np.zeros(3) if t is None else np.asarray(t, dtype=float)
        if q.shape != (4,) or t.shape != (3,):
            raise ValueError("SE3 expects quaternion (4,) and translation (3,)")
        object.__setattr__(self, "q", _quat_normalize(q))
        object.__setattr__(self, "t", t.copy())
        self.q.setflags(write=False)
        self.t.setflags(write=False)

    def __setattr__(self, name, value):
        raise AttributeError("SE3 is immutable")

    @staticmethod
    def identity() -> "SE3":
        return SE3()

    @staticmethod
    def from_rotation_translation(R: np.ndarray, t: np.ndarray) -> "SE3":
        return SE3(matrix_to_quat(np.asarray(R, dtype=float)), t)

    @staticmethod
    def from_matrix(T: np.ndarray) -> "SE3":
        T = np.asarray(T, dtype=float)
        if T.shape != (4, 4):
            raise ValueError("expected 4x4 matrix")
        return SE3.from_rotation_translation(T[:3, :3], T[:3, 3])

    @property
    def R(self) -> np.ndarray:
        return quat_to_matrix(self.q)

    def matrix(self) -> np.ndarray:
        T = np.eye(4)
        T[:3, :3] = self.R
        T[:3, 3] = self.t
        return T

    def compose(self, other: "SE3") -> "SE3":
        return SE3(quat_multiply(self.q, other.q), self.R @ other.t + self.t)

    def __matmul__(self, other: "SE3") -> "SE3":
        return self.compose(other)

    def inverse(self) -> "SE3":
        w, x, y, z = self.q
        q_inv = np.array([w, -x, -y, -z])
        return SE3(q_inv, -(quat_to_matrix(q_inv) @ self.t))

    def apply(self, points: np.ndarray) -> np.ndarray:
        """Transform one (3,) point or an (N,3) array of points."""
        p = np.asarray(points, dtype=float)
        if p.ndim == 1:
            return self.R @ p + self.t
        return p @ self.R.T + self.t

    def rotate(self, vectors: np.ndarray) -> np.ndarray:
        """Rotate directions (no translation)."""
        v = np.asarray(vectors, dtype=float)
        if v.ndim == 1:
            return self.R @ v
        return v @ self.R.T

    @staticmethod
    def exp(twist: np.ndarray) -> "SE3":
        """se(3) exponential of a (wx,wy,wz,vx,vy,vz) twist."""
        xi = np.asarray(twist, dtype=float)
        if xi.shape != (6,):
            raise ValueError("twist must be a 6-vector")
        w, v = xi[:3], xi[3:]
        R = _so3_exp(w)
        t = _so3_left_jacobian(w) @ v
        return SE3.from_rotation_translation(R, t)

    def log(self) -> np.ndarray:
        """Inverse of exp; valid for rotation angles below pi."""
        w_q = np.clip(self.q[0], -1.0, 1.0)
        vec = self.q[1:]
        s = np.linalg.norm(vec)
        theta = 2.0 * np.arctan2(s, w_q)
        if s < 1e-10:
            w = 2.0 * vec  # small-angle: q ~ (1, w/2)
        else:
            w = (theta / s) * vec
        J_inv = np.linalg.inv(_so3_left_jacobian(w))
        return np.concatenate([w, J_inv @ self.t])

    def angle_to(self, other: "SE3") -> float:
        """Rotation angle (radians) between the two transforms."""
        dq = quat_multiply(self.inverse().q, other.q)
        return 2.0 * np.arctan2(np.linalg.norm(dq[1:]), abs(dq[0]))

    def __repr__(self) -> str:
        return f"SE3(q={np.round(self.q, 6).tolist()}, t={np.round(self.t, 6).tolist()})"
