"""Synthetic reference scenes: a grid of color patches with geometric targets.

Every region carries one smooth reflectance spectrum (a mixture of one to
three Gaussians over wavenumber), so the cube is piecewise constant in space
and smooth along the spectral mode.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .tensor_core import SpectralCube

__all__ = [
    "Target",
    "SceneSpec",
    "DEFAULT_TARGETS",
    "default_wavenumber_axis",
    "region_map",
    "region_spectra",
    "generate_scene",
]

SHAPES = ("disk", "square", "triangle")


@dataclass(frozen=True)
class Target:
    """Geometric target; center and size are fractions of the image extent."""

    shape: str
    center_row: float
    center_col: float
    size: float

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise ParameterError(f"unknown target shape {self.shape!r}, expected one of {SHAPES}")
        if not self.size > 0.0:
            raise ParameterError(f"target size must be positive, got {self.size}")

    def mask(self, rows, cols):
        r = (np.arange(rows)[:, None] + 0.5) / rows - self.center_row
        c = (np.arange(cols)[None, :] + 0.5) / cols - self.center_col
        s = self.size
        if self.shape == "disk":
            return r * r + c * c <= s * s
        if self.shape == "square":
            return (np.abs(r) <= s) & (np.abs(c) <= s)
        # apex up, base at r = +s
        return (r >= -s) & (r <= s) & (np.abs(c) <= 0.5 * (r + s))


DEFAULT_TARGETS = (
    Target("disk", 0.30, 0.30, 0.13),
    Target("square", 0.72, 0.22, 0.10),
    Target("triangle", 0.55, 0.72, 0.16),
)


@dataclass(frozen=True)
class SceneSpec:
    width: int = 96
    height: int = 96
    wn_min: float = 1.4
    wn_max: float = 2.5
    wn_count: int = 366
    patch_rows: int = 4
    patch_cols: int = 6
    targets: tuple = DEFAULT_TARGETS
    seed: int = 1
    amplitude: float = 1.0

    def __post_init__(self):
        if self.wn_count < 2:
            raise ParameterError(f"wn_count must be >= 2, got {self.wn_count}")
        if not self.wn_min < self.wn_max:
            raise ParameterError("need wn_min < wn_max")
        if self.patch_rows < 1 or self.patch_cols < 1:
            raise ParameterError("patch grid must be at least 1x1")
        if self.patch_rows > self.width or self.patch_cols > self.height:
            raise ParameterError(
                f"{self.patch_rows}x{self.patch_cols} patches do not fit a "
                f"{self.width}x{self.height} image"
            )
        if not 0.0 <= self.amplitude <= 1.0:
            raise ParameterError(f"amplitude must lie in [0, 1], got {self.amplitude}")

    @property
    def wavenumbers(self):
        return np.linspace(self.wn_min, self.wn_max, self.wn_count)


def default_wavenumber_axis():
    """366 wavenumbers from 1.4 to 2.5 um^-1 inclusive."""
    return np.linspace(1.4, 2.5, 366)


def region_map(spec):
    """Integer label per pixel, shape ``(width, height)``.

    Labels ``0 .. P-1`` are the patches of the grid in row-major order;
    label ``P + t`` is target ``t``.  Later targets paint over earlier ones.
    """
    rows, cols = spec.width, spec.height
    row_edges = np.linspace(0, rows, spec.patch_rows + 1).round().astype(int)
    col_edges = np.linspace(0, cols, spec.patch_cols + 1).round().astype(int)
    row_id = np.searchsorted(row_edges, np.arange(rows), side="right") - 1
    col_id = np.searchsorted(col_edges, np.arange(cols), side="right") - 1
    labels = row_id[:, None] * spec.patch_cols + col_id[None, :]
    n_patches = spec.patch_rows * spec.patch_cols
    for t, target in enumerate(spec.targets):
        labels[target.mask(rows, cols)] = n_patches + t
    return labels


def region_spectra(spec):
    """One reflectance spectrum per region label, shape ``(n_regions, K)``."""
    rng = np.random.default_rng(spec.seed)
    wn = spec.wavenumbers
    span = spec.wn_max - spec.wn_min
    n_regions = spec.patch_rows * spec.patch_cols + len(spec.targets)
    spectra = np.zeros((n_regions, wn.size))
    for n in range(n_regions):
        n_comp = int(rng.integers(1, 4))
        centers = rng.uniform(spec.wn_min, spec.wn_max, n_comp)
        widths = rng.uniform(0.05, 0.3, n_comp) * span
        # weights sum to at most 0.95 and each Gaussian peaks at 1
        weights = rng.dirichlet(np.ones(n_comp)) * rng.uniform(0.3, 0.95) * spec.amplitude
        for w, c, s in zip(weights, centers, widths):
            spectra[n] += w * np.exp(-0.5 * ((wn - c) / s) ** 2)
    return spectra


def generate_scene(spec=None):
    """Render the reference cube described by `spec` (defaults if omitted)."""
    spec = SceneSpec() if spec is None else spec
    labels = region_map(spec)
    cube = region_spectra(spec)[labels]
    return SpectralCube(cube, spec.wn_min, (spec.wn_max - spec.wn_min) / (spec.wn_count - 1))
