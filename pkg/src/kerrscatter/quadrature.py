"""Quadrature on uniform grids (thin wrappers over scipy.integrate)."""

import numpy as np
from scipy.integrate import cumulative_simpson, simpson


def uniform_grid(L, grid_size):
    """Nodes x_0 = 0, ..., x_N = L with N = grid_size intervals."""
    return np.linspace(0.0, L, int(grid_size) + 1)


def integrate(values, grid):
    """Composite Simpson rule over the whole grid."""
    return simpson(values, x=grid)


def cumulative(values, grid):
    """Running integral from grid[0]; the first entry is 0."""
    values = np.asarray(values)
    if np.iscomplexobj(values):
        # cumulative_simpson drops imaginary parts
        return cumulative(values.real, grid) + 1j * cumulative(values.imag, grid)
    return cumulative_simpson(values, x=grid, initial=0.0)


def fourier_transform(values, grid, q):
    """int exp(-i q x) values(x) dx over the grid (values vanish elsewhere)."""
    return integrate(np.exp(-1j * q * grid) * values, grid)
