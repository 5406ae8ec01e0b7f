"""Uniform 1D grids on a bounded interval with implied zero exterior extension.

A grid function stores values at the interior nodes x_i = a + i*h,
i = 1..n_interior, with h = (b - a)/(n_interior + 1).  The endpoints a, b and
everything outside (a, b) carry the value 0; this encodes the homogeneous
exterior condition of the nonlocal problem.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Grid:
    a: float
    b: float
    n_interior: int

    def __post_init__(self):
        if not self.b > self.a:
            raise ValueError(f"empty interval: need b > a, got a={self.a}, b={self.b}")
        if self.n_interior < 1:
            raise ValueError(f"need n_interior >= 1, got {self.n_interior}")

    @property
    def h(self) -> float:
        return (self.b - self.a) / (self.n_interior + 1)

    @property
    def nodes(self) -> np.ndarray:
        """Interior nodes only."""
        return self.a + self.h * np.arange(1, self.n_interior + 1)

    @property
    def nodes_closed(self) -> np.ndarray:
        """Nodes including the zero-valued endpoints a and b."""
        return self.a + self.h * np.arange(0, self.n_interior + 2)


def build_grid(a: float, b: float, n_interior: int) -> Grid:
    """Uniform grid on (a, b) with n_interior strictly interior nodes."""
    return Grid(float(a), float(b), int(n_interior))


@dataclass
class GridFunction:
    """Values at the interior nodes; zero on the exterior by convention."""

    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.grid.n_interior,):
            raise ValueError(
                f"values must have length {self.grid.n_interior}, "
                f"got shape {self.values.shape}"
            )

    @classmethod
    def zeros(cls, grid: Grid) -> "GridFunction":
        return cls(grid, np.zeros(grid.n_interior))

    @classmethod
    def from_callable(cls, grid: Grid, fn) -> "GridFunction":
        return cls(grid, np.asarray([fn(x) for x in grid.nodes], dtype=float))

    def copy(self) -> "GridFunction":
        return GridFunction(self.grid, self.values.copy())

    def with_values(self, values: np.ndarray) -> "GridFunction":
        return GridFunction(self.grid, np.asarray(values, dtype=float))

    @property
    def values_closed(self) -> np.ndarray:
        """Values on grid.nodes_closed, i.e. padded with the boundary zeros."""
        return np.concatenate(([0.0], self.values, [0.0]))

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0

    def interpolate(self, x) -> np.ndarray:
        """Piecewise-linear reconstruction, zero outside (a, b)."""
        return np.interp(x, self.grid.nodes_closed, self.values_closed,
                         left=0.0, right=0.0)


def check_same_grid(u: GridFunction, v: GridFunction) -> Grid:
    if u.grid != v.grid:
        raise ValueError("grid functions live on different grids")
    return u.grid


def lp_norm(u: GridFunction, q: float) -> float:
    """L^q(Omega) norm of the grid function by trapezoidal quadrature.

    The boundary values vanish, so the composite trapezoid rule reduces to
    h * sum(|u_i|^q).
    """
    if q < 1:
        raise ValueError(f"need q >= 1, got {q}")
    h = u.grid.h
    return float((h * np.sum(np.abs(u.values) ** q)) ** (1.0 / q))
