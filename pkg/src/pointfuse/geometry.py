"""Pinhole projection of 3D points into calibrated views, plus the
visibility, occlusion, and range filters applied before feature lookup.

Conventions: world-to-camera extrinsics T (4x4), intrinsics K (3x3) with
K[2,2] = 1, image frame with u right / v down in pixels, camera frame with
z forward. A point is in-frustum iff its camera depth z > 0, u in [0, W)
and v in [0, H).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DataError

# Depths at or below this are treated as "behind the camera": u = x/z blows
# up catastrophically for z this small, so such points are never visible.
MIN_DEPTH = 1e-12

# Reserved depth-map value for pixels where no surface was rendered.
NO_SURFACE = -1.0


@dataclass(eq=False)
class CameraView:
    """One calibrated camera: intrinsics, world-to-camera pose, image and
    patch dimensions, optional rendered depth map, and a timestamp used by
    temporally-equidistant view selection."""

    intrinsics: np.ndarray  # (3, 3), pixels
    extrinsics: np.ndarray  # (4, 4), world -> camera, meters
    width: int
    height: int
    patch_size: int
    depth_map: np.ndarray | None = None  # (H, W) meters, NO_SURFACE sentinel
    timestamp: float = 0.0

    def __post_init__(self):
        self.intrinsics = np.asarray(self.intrinsics, dtype=np.float64)
        self.extrinsics = np.asarray(self.extrinsics, dtype=np.float64)
        if self.intrinsics.shape != (3, 3):
            raise ConfigError("intrinsics must be 3x3")
        if self.extrinsics.shape != (4, 4):
            raise ConfigError("extrinsics must be 4x4")
        if abs(self.intrinsics[2, 2] - 1.0) > 1e-12:
            raise ConfigError("intrinsics[2][2] must be 1")
        if np.max(np.abs(self.extrinsics[3] - np.array([0.0, 0.0, 0.0, 1.0]))) > 1e-12:
            raise ConfigError("extrinsics bottom row must be (0, 0, 0, 1)")
        rot = self.extrinsics[:3, :3]
        if np.max(np.abs(rot.T @ rot - np.eye(3))) > 1e-6:
            raise ConfigError("extrinsics rotation block is not orthonormal")
        if self.width <= 0 or self.height <= 0 or self.patch_size < 1:
            raise ConfigError("width/height/patch_size must be positive")
        if self.depth_map is not None:
            self.depth_map = np.asarray(self.depth_map, dtype=np.float64)
            if self.depth_map.shape != (self.height, self.width):
                raise ConfigError("depth map shape must be (height, width)")
            bad = ~((self.depth_map >= 0.0) | (self.depth_map == NO_SURFACE))
            if bad.any():
                raise ConfigError("depth map must be nonnegative or NO_SURFACE")

    @property
    def patch_grid(self) -> tuple[int, int]:
        """(rows, cols) of the patch grid covering the image."""
        return self.height // self.patch_size, self.width // self.patch_size


@dataclass(frozen=True)
class PixelProjection:
    """A point's image of itself in one view: continuous pixel coordinates,
    camera depth, and the patch cell containing the pixel."""

    u: float
    v: float
    depth: float
    patch_u: int
    patch_v: int
    view_index: int = 0


def patch_index(u: float, v: float, patch_size: int) -> tuple[int, int]:
    """Patch cell containing pixel (u, v): (floor(u/P), floor(v/P))."""
    return int(math.floor(u / patch_size)), int(math.floor(v / patch_size))


def project_point(point, view: CameraView, view_index: int = 0) -> PixelProjection | None:
    """Project one world point; None if it falls outside the view frustum."""
    p = np.asarray(point, dtype=np.float64)
    if p.shape != (3,):
        raise DataError(f"point must be a 3-vector, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise DataError("point coordinates must be finite")
    q = view.extrinsics[:3, :3] @ p + view.extrinsics[:3, 3]
    xyz = view.intrinsics @ q
    z = xyz[2]
    if z <= MIN_DEPTH:
        return None
    u = xyz[0] / z
    v = xyz[1] / z
    if not (0.0 <= u < view.width and 0.0 <= v < view.height):
        return None
    pu, pv = patch_index(u, v, view.patch_size)
    return PixelProjection(u=u, v=v, depth=z, patch_u=pu, patch_v=pv, view_index=view_index)


def project_points(points: np.ndarray, view: CameraView):
    """Vectorised projection of an (n, 3) array.

    Returns (uv (n, 2), depth (n,), visible (n,) bool). uv and depth are
    only meaningful where visible is True. Results are identical to calling
    project_point per row.
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 3:
        raise DataError(f"points must be (n, 3), got {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise DataError("point coordinates must be finite")
    q = pts @ view.extrinsics[:3, :3].T + view.extrinsics[:3, 3]
    xyz = q @ view.intrinsics.T
    z = xyz[:, 2]
    front = z > MIN_DEPTH
    safe_z = np.where(front, z, 1.0)
    u = xyz[:, 0] / safe_z
    v = xyz[:, 1] / safe_z
    visible = front & (u >= 0.0) & (u < view.width) & (v >= 0.0) & (v < view.height)
    return np.stack([u, v], axis=1), z, visible


def occlusion_filter(projection: PixelProjection, view: CameraView, margin: float) -> bool:
    """Keep a projection iff its depth agrees with the view's rendered depth.

    Looks up the depth map at the integer pixel containing (u, v); rejects
    when the pixel has no rendered surface or the depth difference exceeds
    the margin.
    """
    if view.depth_map is None:
        raise ConfigError(
            f"occlusion filter needs a depth map, view {projection.view_index} has none"
        )
    d = view.depth_map[int(math.floor(projection.v)), int(math.floor(projection.u))]
    return d >= 0.0 and abs(projection.depth - d) <= margin


def occlusion_mask(uv: np.ndarray, depth: np.ndarray, view: CameraView, margin: float,
                   view_index: int = 0) -> np.ndarray:
    """Vectorised occlusion_filter over projections known to be in-frustum."""
    if view.depth_map is None:
        raise ConfigError(f"occlusion filter needs a depth map, view {view_index} has none")
    px = np.floor(uv[:, 0]).astype(np.intp)
    py = np.floor(uv[:, 1]).astype(np.intp)
    d = view.depth_map[py, px]
    return (d >= 0.0) & (np.abs(depth - d) <= margin)


def range_filter(projection: PixelProjection, near: float, far: float) -> bool:
    """Keep a projection iff its depth lies in the closed band [near, far]."""
    if not (0.0 < near < far):
        raise ConfigError("range band requires 0 < near < far")
    return near <= projection.depth <= far


def range_mask(depth: np.ndarray, near: float, far: float) -> np.ndarray:
    """Vectorised range_filter."""
    if not (0.0 < near < far):
        raise ConfigError("range band requires 0 < near < far")
    return (depth >= near) & (depth <= far)
