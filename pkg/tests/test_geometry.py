import numpy as np
import pytest

from panomap.geometry import (
    FisheyeCamera,
    OutOfFovError,
    SE3,
    SphereGrid,
    depth_to_pointcloud,
    load_rig_calibration,
    save_rig_calibration,
)
from panomap.geometry.camera import make_cardinal_rig


def _simple_camera(k=(300.0, 0.0, 0.0, 0.0), fov_deg=110.0):
    return FisheyeCamera(
        image_width=1600,
        image_height=1532,
        principal_point=np.array([800.0, 766.0]),
        radial_poly=np.array(k),
        affine=np.eye(2),
        fov_half_angle=np.deg2rad(fov_deg),
    )


class TestSphereGrid:
    def test_cardinal_rays(self):
        # grids whose single pixel center lands exactly on the target angle
        g = SphereGrid(width=1, height=1, phi_min=-np.pi / 4, phi_max=np.pi / 4)
        assert np.allclose(g.ray(0, 0), [1, 0, 0], atol=1e-15)  # theta=0, phi=0
        g = SphereGrid(width=2, height=1, phi_min=-np.pi / 4, phi_max=np.pi / 4)
        assert np.allclose(g.ray(1, 0), [0, 0, 1], atol=1e-15)  # theta=pi/2
        g = SphereGrid(width=1, height=1, phi_min=np.pi / 4, phi_max=3 * np.pi / 4)
        assert np.allclose(g.ray(0, 0), [0, 1, 0], atol=1e-15)  # phi=pi/2

    def test_rays_unit_norm(self):
        g = SphereGrid(width=64, height=32)
        norms = np.linalg.norm(g.rays(), axis=-1)
        assert np.max(np.abs(norms - 1.0)) < 1e-12

    def test_out_of_range_index(self):
        g = SphereGrid(width=8, height=4)
        with pytest.raises(ValueError):
            g.ray(8, 0)
        with pytest.raises(ValueError):
            g.ray(0, -1)

    def test_direction_to_grid_round_trip(self):
        g = SphereGrid(width=96, height=48)
        ij = g.direction_to_grid(g.rays().reshape(-1, 3))
        jj, ii = np.meshgrid(np.arange(48), np.arange(96), indexing="ij")
        assert np.allclose(ij[:, 0], ii.ravel(), atol=1e-9)
        assert np.allclose(ij[:, 1], jj.ravel(), atol=1e-9)

    def test_invalid_params(self):
        with pytest.raises(ValueError):
            SphereGrid(width=0, height=4)
        with pytest.raises(ValueError):
            SphereGrid(width=4, height=4, phi_min=0.5, phi_max=0.5)


class TestFisheyeProjection:
    def test_on_axis_point_hits_principal_point(self):
        cam = _simple_camera()
        uv, valid = cam.project(np.array([0.0, 0.0, 1.0]))
        assert valid
        assert np.allclose(uv, cam.principal_point, atol=1e-12)

    def test_fov_cutoff(self):
        cam = _simple_camera()
        a = cam.fov_half_angle + 0.01
        point = np.array([np.sin(a), 0.0, np.cos(a)])
        _, valid = cam.project(point)
        assert not valid

    def test_forty_five_degree_point(self):
        # alpha = pi/4, psi = 0 with k1-only polynomial: u = u0 + 300*pi/4
        cam = _simple_camera()
        uv, valid = cam.project(np.array([1.0, 0.0, 1.0]))
        assert valid
        assert np.allclose(uv, [800.0 + 300.0 * np.pi / 4, 766.0], atol=1e-9)

    def test_zero_point_raises(self):
        cam = _simple_camera()
        with pytest.raises(ValueError):
            cam.project(np.zeros(3))

    def test_unproject_center(self):
        cam = _simple_camera()
        bearing = cam.unproject(cam.principal_point)
        assert np.allclose(bearing, [0, 0, 1], atol=1e-12)

    def test_unproject_outside_radius_raises(self):
        cam = _simple_camera()
        bad = cam.principal_point + np.array([cam.max_radius + 5.0, 0.0])
        with pytest.raises(OutOfFovError):
            cam.unproject(bad)

    def test_project_unproject_round_trip(self):
        # mutual inverses over 1e4 random in-FOV samples
        cam = _simple_camera(k=(290.0, 12.0, -3.0, 0.5))
        rng = np.random.default_rng(42)
        n = 10_000
        alpha = rng.uniform(0.0, cam.fov_half_angle * 0.999, size=n)
        psi = rng.uniform(-np.pi, np.pi, size=n)
        bearings = np.stack(
            [np.sin(alpha) * np.cos(psi), np.sin(alpha) * np.sin(psi), np.cos(alpha)], axis=1
        )
        uv, valid = cam.project_many(bearings * rng.uniform(0.5, 20.0, size=(n, 1)))
        assert valid.all()
        back, bvalid = cam.unproject_many(uv)
        assert bvalid.all()
        uv2, _ = cam.project_many(back)
        assert np.max(np.abs(uv2 - uv)) < 1e-6
        # chord-based angle is accurate near zero where arccos(dot) is not
        ang = 2 * np.arcsin(0.5 * np.linalg.norm(back - bearings, axis=1))
        assert np.max(ang) < 1e-8

    def test_affine_skew_round_trip(self):
        cam = FisheyeCamera(
            image_width=800,
            image_height=800,
            principal_point=np.array([400.0, 400.0]),
            radial_poly=np.array([200.0, 5.0, 0.0, 0.0]),
            affine=np.array([[1.02, 0.01], [-0.005, 0.98]]),
            fov_half_angle=np.deg2rad(100.0),
        )
        rng = np.random.default_rng(1)
        pts = rng.normal(size=(500, 3))
        pts[:, 2] = np.abs(pts[:, 2]) + 0.8
        uv, valid = cam.project_many(pts)
        back, _ = cam.unproject_many(uv[valid])
        uv2, _ = cam.project_many(back)
        assert np.max(np.abs(uv2 - uv[valid])) < 1e-6

    def test_non_monotone_polynomial_rejected(self):
        with pytest.raises(ValueError):
            _simple_camera(k=(300.0, -80.0, 0.0, 0.0))


class TestDepthToPointcloud:
    def test_unit_depth_identity_pose(self):
        g = SphereGrid(width=32, height=16)
        pts = depth_to_pointcloud(np.ones(g.shape), g, SE3.identity())
        assert np.allclose(pts, g.rays().reshape(-1, 3), atol=1e-15)

    def test_translation_linearity(self):
        g = SphereGrid(width=16, height=8)
        t = np.array([1.0, -2.0, 0.5])
        d = 3.5
        pts = depth_to_pointcloud(np.full(g.shape, d), g, SE3(t=t))
        assert np.allclose(pts, d * g.rays().reshape(-1, 3) + t, atol=1e-12)

    def test_sphere_room_radii(self):
        g = SphereGrid(width=64, height=32)
        pts = depth_to_pointcloud(np.full(g.shape, 10.0), g, SE3.identity())
        assert np.max(np.abs(np.linalg.norm(pts, axis=1) - 10.0)) < 1e-9

    def test_invalid_pixels_skipped(self):
        g = SphereGrid(width=8, height=4)
        depth = np.ones(g.shape)
        depth[0, 0] = np.nan
        depth[1, 1] = -2.0
        pts = depth_to_pointcloud(depth, g, SE3.identity())
        assert pts.shape == (8 * 4 - 2, 3)

    def test_pose_equivariance(self):
        rng = np.random.default_rng(8)
        g = SphereGrid(width=24, height=12)
        depth = rng.uniform(1.0, 9.0, size=g.shape)
        T = SE3.exp(rng.normal(size=6))
        G = SE3.exp(rng.normal(size=6))
        lhs = depth_to_pointcloud(depth, g, G @ T)
        rhs = G.apply(depth_to_pointcloud(depth, g, T))
        assert np.max(np.abs(lhs - rhs)) < 1e-9


class TestCalibrationIO:
    def test_round_trip(self, tmp_path):
        rig = make_cardinal_rig(baseline=0.3, image_size=512)
        path = tmp_path / "rig.calib"
        save_rig_calibration(rig, path)
        loaded = load_rig_calibration(path)
        for a, b in zip(rig.cameras, loaded.cameras):
            assert a.image_width == b.image_width
            assert np.allclose(a.principal_point, b.principal_point)
            assert np.allclose(a.radial_poly, b.radial_poly)
            assert np.allclose(a.affine, b.affine)
            assert abs(a.fov_half_angle - b.fov_half_angle) < 1e-9
            assert np.allclose(a.cam_to_rig.matrix(), b.cam_to_rig.matrix(), atol=1e-9)

    def test_unknown_model_rejected(self, tmp_path):
        rig = make_cardinal_rig()
        path = tmp_path / "rig.calib"
        save_rig_calibration(rig, path)
        text = path.read_text().replace("poly_odd7", "kannala_brandt")
        path.write_text(text)
        with pytest.raises(ValueError, match="unknown model"):
            load_rig_calibration(path)

    def test_rig_requires_four_cameras(self):
        cams = make_cardinal_rig().cameras
        from panomap.geometry import Rig

        with pytest.raises(ValueError):
            Rig(cams[:3])
