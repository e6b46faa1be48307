"""Grid-rasterization measure oracle, independent of the library.

Counts cell centers on a fixed lattice of pitch 1e-3.  For corner
rectangles whose coordinates are multiples of the pitch, the count is
exact: a center (k + 0.5) * pitch is inside [0, m * pitch) iff k < m,
so each axis contributes exactly m cells.
"""

import numpy as np

PITCH = 1e-3


def raster_measure_2d(base_corner, subtracted_corners, extent=2.5):
    """Lebesgue measure of [0, base] minus the union of [0, c_i] in the
    plane, by counting lattice cell centers."""
    n_cells = int(round(extent / PITCH))
    centers = (np.arange(n_cells) + 0.5) * PITCH
    x = centers[:, None]
    y = centers[None, :]
    inside = (x < base_corner[0]) & (y < base_corner[1])
    for cx, cy in subtracted_corners:
        inside &= ~((x < cx) & (y < cy))
    return float(inside.sum()) * PITCH * PITCH


def raster_measure_1d(base, subtracted, extent=2.5):
    n_cells = int(round(extent / PITCH))
    centers = (np.arange(n_cells) + 0.5) * PITCH
    inside = centers < base
    for c in subtracted:
        inside &= ~(centers < c)
    return float(inside.sum()) * PITCH
