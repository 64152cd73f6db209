"""Iterated-difference transform mod p**E and truncated-series evaluation.

A value grid over [0, n)**D becomes the coefficient grid of the product
binomial basis prod_d C(x_d, l_d) by running, one axis after another, the
in-place forward-difference triangle along every 1-d line.  The closed
1-d form

    c_i = sum_{j <= i} (-1)**(i - j) * C(i, j) * f(j)   (mod p**E)

is kept alongside as an independent route to the same coefficients; tests
use it to cross-check the transform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .padic import BinomialTable, LearningParams


@dataclass(frozen=True, eq=False)
class ResidueGrid:
    """Cube-shaped D-dimensional array of residues mod p**E.

    The same container stores value grids (extent M, indexed by grid
    points) and coefficient grids (indexed by basis multi-indices).
    """

    params: LearningParams
    data: np.ndarray

    def __post_init__(self):
        data = np.ascontiguousarray(self.data, dtype=np.int64)
        if data.ndim != self.params.D:
            raise ValueError(f"grid has {data.ndim} axes, expected D = {self.params.D}")
        extent = data.shape[0]
        if extent < 1:
            raise ValueError("grid extent must be at least 1")
        if any(side != extent for side in data.shape):
            raise ValueError(f"grid must be a cube, got shape {data.shape}")
        if int(data.min()) < 0 or int(data.max()) >= self.params.modulus:
            raise ValueError(f"grid entries must lie in [0, {self.params.modulus})")
        object.__setattr__(self, "data", data)

    @property
    def extent(self) -> int:
        return self.data.shape[0]


# A coefficient grid is a ResidueGrid read against basis multi-indices.
MahlerCoefficients = ResidueGrid


def mahler_transform(grid: ResidueGrid) -> ResidueGrid:
    """Difference-transform a value grid into its coefficient grid.

    Axis by axis, every 1-d line is replaced by its iterated forward
    differences; afterwards entry l holds the coefficient of
    prod_d C(x_d, l_d).  The per-axis passes commute, so axis order does
    not matter.  The input grid is left untouched.
    """
    mod = grid.params.modulus
    out = grid.data.copy()
    n = grid.extent
    for axis in range(out.ndim):
        lines = np.moveaxis(out, axis, 0)
        for k in range(n - 1):
            # matches the descending-index update: the shifted slice on the
            # right reads only values from before this pass
            lines[k + 1 :] = (lines[k + 1 :] - lines[k:-1]) % mod
    return ResidueGrid(grid.params, out)


def mahler_coeffs_1d(values, params: LearningParams) -> np.ndarray:
    """Closed-form 1-d coefficients via the alternating binomial sum.

    Exact integer arithmetic throughout, reduced mod p**E only at the
    end; the route shares nothing with mahler_transform or the Pascal
    table, which is what makes it a useful oracle.
    """
    vals = [int(v) for v in np.atleast_1d(np.asarray(values)).tolist()]
    if not vals:
        raise ValueError("need at least one value")
    mod = params.modulus
    out = np.empty(len(vals), dtype=np.int64)
    for i in range(len(vals)):
        acc = 0
        for j in range(i + 1):
            term = math.comb(i, j) * vals[j]
            acc += -term if (i - j) % 2 else term
        out[i] = acc % mod
    return out


def _check_axes(coeffs: ResidueGrid, axes, table: BinomialTable):
    params = coeffs.params
    if table.kmax < coeffs.extent - 1:
        raise ValueError(
            f"binomial table covers k <= {table.kmax}, need k <= {coeffs.extent - 1}"
        )
    if len(axes) != params.D:
        raise ValueError(f"got {len(axes)} axes, expected D = {params.D}")
    checked = []
    for a in axes:
        arr = np.asarray(a, dtype=np.int64).reshape(-1)
        if arr.size and (arr.min() < 0 or arr.max() > table.nmax):
            raise ValueError(f"axis values must lie in [0, {table.nmax}]")
        checked.append(arr)
    return checked


def evaluate_on_grid(coeffs: ResidueGrid, axes, table: BinomialTable) -> np.ndarray:
    """Truncated-series values over a product grid of query coordinates.

    axes is a D-sequence of 1-d integer arrays; the result has shape
    (len(axes[0]), ..., len(axes[D-1])).  One tensor contraction per axis
    replaces the per-point sum, which is what makes exhaustive plane
    sweeps affordable.
    """
    axes = _check_axes(coeffs, axes, table)
    mod = coeffs.params.modulus
    acc = coeffs.data
    for d in range(coeffs.params.D):
        rows = table.data[axes[d]][:, : coeffs.extent]
        # contracting the leading axis each round cycles the result axes
        # into query order by the time all D rounds are done
        acc = np.tensordot(acc, rows, axes=([0], [1])) % mod
    return acc


def evaluate(coeffs: ResidueGrid, point, table: BinomialTable) -> int:
    """Sum of c_l * prod_d C(x_d, l_d) over the whole coefficient grid."""
    coords = np.atleast_1d(np.asarray(point, dtype=np.int64))
    if coords.shape != (coeffs.params.D,):
        raise ValueError(f"point must have D = {coeffs.params.D} coordinates")
    singleton_axes = [coords[d : d + 1] for d in range(coeffs.params.D)]
    return int(evaluate_on_grid(coeffs, singleton_axes, table).reshape(()))


def write_coefficient_rows(fh, data: np.ndarray):
    """One decimal line per entry, row-major: `l_0 ... l_{D-1} value`."""
    idx = np.indices(data.shape).reshape(data.ndim, -1)
    cols = np.vstack([idx, data.reshape(1, -1)]).T
    np.savetxt(fh, cols, fmt="%d")


def read_coefficient_rows(fh, D: int, extent: int, modulus: int) -> np.ndarray:
    """Parse the row block written by write_coefficient_rows."""
    rows = np.loadtxt(fh, dtype=np.int64, ndmin=2)
    expected = extent**D
    if rows.shape != (expected, D + 1):
        raise ValueError(
            f"expected {expected} rows of {D + 1} integers, got shape {rows.shape}"
        )
    want_idx = np.indices((extent,) * D).reshape(D, -1).T
    if not np.array_equal(rows[:, :D], want_idx):
        raise ValueError("coefficient rows are not in row-major multi-index order")
    values = rows[:, D]
    if values.min() < 0 or values.max() >= modulus:
        raise ValueError(f"coefficient values must lie in [0, {modulus})")
    return values.reshape((extent,) * D)


def dump_coefficients(coeffs: ResidueGrid, path):
    """Write a coefficient grid: header `p E D extent`, then the rows."""
    params = coeffs.params
    with open(path, "w") as fh:
        fh.write(f"{params.p} {params.E} {params.D} {coeffs.extent}\n")
        write_coefficient_rows(fh, coeffs.data)
