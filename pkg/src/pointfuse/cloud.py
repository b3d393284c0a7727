"""Point-cloud storage, voxel-grid sampling, and the multi-level pooling
hierarchy shared by the network and the 2D-feature pyramid.

Cell ids are floor((p - min_corner) / grid) per axis; translating by the
cloud's minimum corner keeps negative coordinates from straddling cell
boundaries inconsistently. Each occupied cell keeps the raw point with the
lowest original index as its representative, so raw attributes (color,
label) stay attached to a real point and ties break deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import DataError

IGNORE_LABEL = -1


@dataclass(eq=False)
class PointCloud:
    positions: np.ndarray  # (n, 3) meters
    colors: np.ndarray | None = None  # (n, 3) in [0, 1]
    labels: np.ndarray | None = None  # (n,) class ids, IGNORE_LABEL allowed
    dataset_id: int = 0

    def __post_init__(self):
        self.positions = np.asarray(self.positions, dtype=np.float64)
        if self.positions.ndim != 2 or self.positions.shape[1] != 3 or len(self.positions) < 1:
            raise DataError(f"positions must be (n>=1, 3), got {self.positions.shape}")
        if not np.all(np.isfinite(self.positions)):
            raise DataError("positions must be finite")
        if self.colors is not None:
            self.colors = np.asarray(self.colors, dtype=np.float64)
            if self.colors.shape != self.positions.shape:
                raise DataError("colors must match positions shape")
        if self.labels is not None:
            self.labels = np.asarray(self.labels, dtype=np.int64)
            if self.labels.shape != (len(self.positions),):
                raise DataError("labels must be (n,)")

    def __len__(self) -> int:
        return len(self.positions)


@dataclass(eq=False)
class VoxelizedCloud:
    """Deduplicated voxel representatives plus both index maps.

    raw_to_voxel[i] is the voxel of raw point i; voxel_to_raw[j] is the raw
    index of voxel j's representative, and composing the two is the identity
    on voxels.
    """

    positions: np.ndarray  # (m, 3)
    raw_to_voxel: np.ndarray  # (n,)
    voxel_to_raw: np.ndarray  # (m,)
    grid_size: float
    colors: np.ndarray | None = None  # representative attributes, if present
    labels: np.ndarray | None = None
    dataset_id: int = 0

    def __len__(self) -> int:
        return len(self.positions)


@dataclass(eq=False)
class PoolingHierarchy:
    """Per-level parent maps: parent[l-1] sends level-l rows to level-(l+1)
    rows, for l = 1..L-1. level_positions[0] is the voxelized cloud."""

    level_sizes: list[int]
    parent: list[np.ndarray]
    level_positions: list[np.ndarray]

    @property
    def levels(self) -> int:
        return len(self.level_sizes)


def cell_ids(positions: np.ndarray, grid_size: float) -> np.ndarray:
    """Integer cell triple per point, translated by the minimum corner."""
    shifted = positions - positions.min(axis=0)
    return np.floor(shifted / grid_size).astype(np.int64)


def _group_cells(positions: np.ndarray, grid_size: float):
    """(inverse (n,), representative raw indices (m,)) for one grid level."""
    cells = cell_ids(positions, grid_size)
    _, inverse = np.unique(cells, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1).astype(np.int64)
    m = int(inverse.max()) + 1
    reps = np.full(m, len(positions), dtype=np.int64)
    np.minimum.at(reps, inverse, np.arange(len(positions), dtype=np.int64))
    return inverse, reps


def grid_sample(cloud: PointCloud, grid_size: float) -> VoxelizedCloud:
    """Keep one representative point per occupied grid cell."""
    if grid_size <= 0:
        raise DataError("grid_size must be positive")
    inverse, reps = _group_cells(cloud.positions, grid_size)
    return VoxelizedCloud(
        positions=cloud.positions[reps],
        raw_to_voxel=inverse,
        voxel_to_raw=reps,
        grid_size=float(grid_size),
        colors=None if cloud.colors is None else cloud.colors[reps],
        labels=None if cloud.labels is None else cloud.labels[reps],
        dataset_id=cloud.dataset_id,
    )


def build_hierarchy(voxelized: VoxelizedCloud, levels: int) -> PoolingHierarchy:
    """Coarsen the voxelized cloud level by level, doubling the grid size.

    Level 1 is the voxelized cloud itself; level l+1 regroups level-l
    representatives at grid 2^l * grid_size. A level collapsing to a single
    point is allowed.
    """
    if levels < 1:
        raise DataError("levels must be >= 1")
    level_positions = [voxelized.positions]
    level_sizes = [len(voxelized)]
    parents: list[np.ndarray] = []
    grid = voxelized.grid_size
    for _ in range(1, levels):
        grid *= 2.0
        pos = level_positions[-1]
        inverse, reps = _group_cells(pos, grid)
        parents.append(inverse)
        level_positions.append(pos[reps])
        level_sizes.append(len(reps))
    return PoolingHierarchy(level_sizes=level_sizes, parent=parents,
                            level_positions=level_positions)


def max_pool(features: np.ndarray, hierarchy: PoolingHierarchy, level: int) -> np.ndarray:
    """Componentwise max over each parent's children, level -> level+1."""
    out, _ = max_pool_with_argmax(features, hierarchy, level)
    return out


def max_pool_with_argmax(features: np.ndarray, hierarchy: PoolingHierarchy, level: int):
    """max_pool plus the child row index that won each (parent, column)."""
    if not 1 <= level < hierarchy.levels:
        raise DataError(f"level must be in [1, {hierarchy.levels - 1}], got {level}")
    features = np.asarray(features, dtype=np.float64)
    if features.shape[0] != hierarchy.level_sizes[level - 1]:
        raise DataError(
            f"expected {hierarchy.level_sizes[level - 1]} rows at level {level}, "
            f"got {features.shape[0]}"
        )
    return backend.segment_max(features, hierarchy.parent[level - 1],
                               hierarchy.level_sizes[level])


def unpool(features: np.ndarray, hierarchy: PoolingHierarchy, level: int) -> np.ndarray:
    """Copy each parent's feature down to its children, level+1 -> level."""
    if not 1 <= level < hierarchy.levels:
        raise DataError(f"level must be in [1, {hierarchy.levels - 1}], got {level}")
    features = np.asarray(features, dtype=np.float64)
    if features.shape[0] != hierarchy.level_sizes[level]:
        raise DataError(
            f"expected {hierarchy.level_sizes[level]} rows at level {level + 1}, "
            f"got {features.shape[0]}"
        )
    return features[hierarchy.parent[level - 1]]
