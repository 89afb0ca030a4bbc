"""Frequency-domain projection of USM coordinates.

Binning the per-position coordinates on a 2^k-per-dimension grid yields the
k-mer count table (FCGR); counting neighbours inside a Chebyshev ball of
radius 2^-k instead allows non-integer k. Cells are half-open intervals
[c * 2^-k, (c+1) * 2^-k) with the top boundary clamped into the last cell,
since convergent seeding can place coordinates exactly on 1.0.
"""

from dataclasses import dataclass

import numpy as np

from ._backend import get_kernels
from .errors import GridTooLargeError, UsmError

DEFAULT_CELL_CAP = 2 ** 30


@dataclass(frozen=True)
class DensityGrid:
    """Integer count grid over the unit hypercube.

    counts is a flat array of 2^(k*h) cells indexed by concatenating the
    per-dimension cell indices, first dimension most significant.
    """

    k: int
    h: int
    counts: np.ndarray
    total: int
    direction: str

    def cell_index(self, cells):
        """Flat index of a per-dimension cell-index vector."""
        idx = 0
        for c in cells:
            idx = (idx << self.k) | int(c)
        return idx


def bin_map(usm_map, direction="forward", k=8, cell_cap=DEFAULT_CELL_CAP):
    """Bin one direction of a UsmMap into a DensityGrid at resolution k."""
    if k < 1:
        raise UsmError("k must be >= 1")
    h = usm_map.h
    cells = 1 << (k * h)
    if cells > cell_cap:
        raise GridTooLargeError(
            f"grid too large: 2^({k}*{h}) = {cells} cells exceeds the cap of {cell_cap}")
    coords = usm_map.coords(direction)
    counts = np.zeros(cells, dtype=np.int64)
    get_kernels().bin_counts(coords, k, counts)
    return DensityGrid(k=k, h=h, counts=counts, total=int(counts.sum()),
                       direction=direction)


def density_at(usm_map, direction, query, k_real):
    """Number of positions within Chebyshev distance < 2^-k_real of query."""
    if k_real <= 0:
        raise UsmError("k_real must be > 0")
    query = np.asarray(query, dtype=np.float64)
    if query.shape != (usm_map.h,):
        raise UsmError(f"query must have length h={usm_map.h}")
    if np.any((query < 0.0) | (query > 1.0)):
        raise UsmError("query must lie in [0, 1]^h")
    coords = usm_map.coords(direction)
    radius = 2.0 ** (-float(k_real))
    dist = np.max(np.abs(coords - query), axis=1)
    return int(np.count_nonzero(dist < radius))


def grid_to_csv(grid):
    """CSV export: header `cell_index,count`, one row per cell, LF endings."""
    lines = ["cell_index,count"]
    lines.extend(f"{i},{c}" for i, c in enumerate(grid.counts.tolist()))
    return ("\n".join(lines) + "\n").encode("ascii")


def grid_to_pgm(grid):
    """Binary PGM (P5) export of a planar (h=2) grid.

    Pixels are round(255 * count / max_count); an all-zero grid maps to an
    all-zero image. Row 0 of the image is the top band of the unit square
    (y-cell 2^k - 1): origin bottom-left.
    """
    if grid.h != 2:
        raise UsmError(f"pgm export requires h=2, got h={grid.h}")
    side = 1 << grid.k
    img = grid.counts.reshape(side, side)  # [x_cell, y_cell]
    maxc = int(img.max())
    if maxc == 0:
        pixels = np.zeros((side, side), dtype=np.uint8)
    else:
        pixels = np.floor(img * (255.0 / maxc) + 0.5).astype(np.uint8)
    # image rows top-down: row r holds y-cell side-1-r, columns are x-cells
    raster = pixels.T[::-1, :]
    header = f"P5\n{side} {side}\n255\n".encode("ascii")
    return header + raster.tobytes()


def export_grid(grid, fmt):
    """Serialize a grid as 'csv' or 'pgm' bytes."""
    if fmt == "csv":
        return grid_to_csv(grid)
    if fmt == "pgm":
        return grid_to_pgm(grid)
    raise UsmError(f"unknown grid format {fmt!r} (expected 'csv' or 'pgm')")
