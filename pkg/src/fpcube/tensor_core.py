"""Dense 3D/4D float64 tensors and the BLAS-1 style primitives built on them.

Cubes are plain C-contiguous ``numpy.ndarray`` objects of shape ``(I, J, M)``
so that each pixel fiber ``cube[i, j, :]`` is contiguous in memory.  Dual
fields have shape ``(I, J, K, 2)`` with the gradient direction fastest.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError

__all__ = [
    "SpectralCube",
    "InterferogramCube",
    "as_cube3",
    "as_field4",
    "contract_mode3",
    "inner",
    "axpy",
    "scale",
    "norm2",
    "flat_index",
    "unflat_index",
]


def as_cube3(x, name="cube"):
    """Return `x` as a C-contiguous float64 array of rank 3."""
    arr = np.ascontiguousarray(x, dtype=np.float64)
    if arr.ndim != 3 or min(arr.shape) < 1:
        raise ShapeError(f"{name} must be a non-empty rank-3 tensor, got shape {arr.shape}")
    return arr


def as_field4(t, name="field"):
    """Return `t` as a C-contiguous float64 array of shape (I, J, K, 2)."""
    arr = np.ascontiguousarray(t, dtype=np.float64)
    if arr.ndim != 4 or arr.shape[-1] != 2 or min(arr.shape) < 1:
        raise ShapeError(f"{name} must have shape (I, J, K, 2), got {arr.shape}")
    return arr


def contract_mode3(matrix, cube):
    """Multiply `matrix` (L x K) along the third mode of `cube` (I x J x K).

    Returns the (I, J, L) cube ``out[i, j, l] = sum_k matrix[l, k] * cube[i, j, k]``.
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    cube = as_cube3(cube)
    if matrix.ndim != 2 or matrix.shape[1] != cube.shape[2]:
        raise ShapeError(
            f"cannot contract matrix of shape {matrix.shape} with cube of shape {cube.shape}"
        )
    # single GEMM over the (I*J, K) view keeps the per-fiber reduction order fixed
    out = cube.reshape(-1, cube.shape[2]) @ matrix.T
    return out.reshape(cube.shape[0], cube.shape[1], matrix.shape[0])


def _check_same(a, b):
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch: {a.shape} vs {b.shape}")


def inner(a, b):
    """Euclidean inner product of two equally shaped tensors."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    _check_same(a, b)
    return float(np.dot(a.ravel(), b.ravel()))


def axpy(alpha, x, y):
    """Return ``alpha * x + y``."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    _check_same(x, y)
    return alpha * x + y


def scale(alpha, x):
    return alpha * np.asarray(x, dtype=np.float64)


def norm2(x):
    x = np.asarray(x, dtype=np.float64).ravel()
    return float(np.sqrt(np.dot(x, x)))


def flat_index(index, dims):
    """Flat offset of a multi-index in the C (last mode fastest) layout."""
    return int(np.ravel_multi_index(index, dims))


def unflat_index(offset, dims):
    return tuple(int(i) for i in np.unravel_index(offset, dims))


@dataclass
class SpectralCube:
    """Hyperspectral cube on a regular wavenumber grid (um^-1)."""

    data: np.ndarray
    wn_start: float = 0.0
    wn_step: float = 1.0

    def __post_init__(self):
        self.data = as_cube3(self.data, "spectral cube")

    @property
    def shape(self):
        return self.data.shape

    @property
    def wavenumbers(self):
        return self.wn_start + self.wn_step * np.arange(self.data.shape[2])


@dataclass
class InterferogramCube:
    """Interferometric acquisition on a regular OPD grid (um), with the
    reflectivity of the cavity that produced it."""

    data: np.ndarray
    opd_start: float = 0.0
    opd_step: float = 1.0
    reflectivity: float = 0.0

    def __post_init__(self):
        self.data = as_cube3(self.data, "interferogram cube")

    @property
    def shape(self):
        return self.data.shape

    @property
    def opd(self):
        return self.opd_start + self.opd_step * np.arange(self.data.shape[2])
