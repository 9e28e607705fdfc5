"""Fabry-Perot acquisition operator: Airy transmittance, adjoint, noise.

Wavenumbers are in um^-1 and optical path differences in um, so the phase
``2 * pi * sigma * delta`` needs no unit conversion.
"""

from dataclasses import dataclass
import logging

import numpy as np

from .errors import ParameterError
from .tensor_core import as_cube3, contract_mode3

logger = logging.getLogger(__name__)

__all__ = [
    "TransmittanceSpec",
    "MatrixOperator",
    "TransmittanceMatrix",
    "airy_transmittance",
    "build_transmittance",
    "apply",
    "adjoint",
    "operator_norm",
    "matrix_norm",
    "add_noise",
    "measured_snr_db",
]


@dataclass(frozen=True)
class TransmittanceSpec:
    """Instrument and sampling parameters.

    Attributes
    ----------
    reflectivity : float
        Mirror reflectivity R, ``0 <= R < 1``.
    opd_start, opd_step : float
        First OPD sample and OPD spacing, in um.
    opd_count : int
        Number L of OPD samples.
    wn_min, wn_max : float
        Wavenumber range in um^-1, both endpoints included.
    wn_count : int
        Number K of wavenumber samples.
    """

    reflectivity: float = 0.255
    opd_start: float = 0.0
    opd_step: float = 0.025
    opd_count: int = 319
    wn_min: float = 1.4
    wn_max: float = 2.5
    wn_count: int = 366

    def __post_init__(self):
        if not 0.0 <= self.reflectivity < 1.0:
            raise ParameterError(f"reflectivity must lie in [0, 1), got {self.reflectivity}")
        if not self.opd_step > 0.0:
            raise ParameterError(f"opd_step must be positive, got {self.opd_step}")
        if self.opd_start < 0.0:
            raise ParameterError(f"opd_start must be non-negative, got {self.opd_start}")
        if self.opd_count < 1:
            raise ParameterError(f"opd_count must be >= 1, got {self.opd_count}")
        if self.wn_count < 2:
            raise ParameterError(f"wn_count must be >= 2, got {self.wn_count}")
        if not self.wn_min < self.wn_max:
            raise ParameterError(f"need wn_min < wn_max, got {self.wn_min}, {self.wn_max}")

    @property
    def opd(self):
        return self.opd_start + self.opd_step * np.arange(self.opd_count)

    @property
    def wavenumbers(self):
        return np.linspace(self.wn_min, self.wn_max, self.wn_count)

    @property
    def wn_step(self):
        return (self.wn_max - self.wn_min) / (self.wn_count - 1)


def airy_transmittance(reflectivity, wavenumbers, opd):
    """Airy transmittance matrix of shape ``(len(opd), len(wavenumbers))``."""
    r = float(reflectivity)
    phase = 2.0 * np.pi * np.outer(opd, wavenumbers)
    return (1.0 - r) ** 2 / (1.0 + r * r - 2.0 * r * np.cos(phase))


def operator_norm(apply_fn, adjoint_fn, shape, tol=1e-9, max_iter=1000, seed=0):
    """Largest singular value of a linear operator by power iteration.

    Iterates on the normal operator ``adjoint_fn(apply_fn(x))`` from a seeded
    Gaussian start vector of the given `shape` until the relative change of
    the eigenvalue estimate falls below `tol`, or `max_iter` is reached.
    Returns 0 for the zero operator.
    """
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(shape)
    x /= np.linalg.norm(x)
    lam_old = 0.0
    lam = 0.0
    for it in range(max_iter):
        y = adjoint_fn(apply_fn(x))
        lam = float(np.linalg.norm(y))
        if lam == 0.0:
            return 0.0
        x = y / lam
        if abs(lam - lam_old) < tol * lam:
            break
        lam_old = lam
    else:
        logger.debug("power iteration stopped at max_iter=%d", max_iter)
    return float(np.sqrt(lam))


def matrix_norm(a, **kwargs):
    """Spectral norm of a dense matrix via :func:`operator_norm`."""
    a = np.asarray(a, dtype=np.float64)
    return operator_norm(lambda v: a @ v, lambda w: a.T @ w, (a.shape[1],), **kwargs)


class MatrixOperator:
    """Per-pixel linear map ``X -> a x_3 X`` with a cached operator norm.

    The norm of the cube operator equals the spectral norm of `a`, since the
    same matrix acts independently on every pixel fiber.
    """

    def __init__(self, a, op_norm=None):
        self.a = np.ascontiguousarray(a, dtype=np.float64)
        if self.a.ndim != 2:
            raise ParameterError(f"forward matrix must be 2D, got shape {self.a.shape}")
        self.op_norm = matrix_norm(self.a) if op_norm is None else float(op_norm)

    @property
    def n_out(self):
        return self.a.shape[0]

    @property
    def n_in(self):
        return self.a.shape[1]

    def apply(self, x):
        return contract_mode3(self.a, x)

    def adjoint(self, y):
        return contract_mode3(self.a.T, y)


class TransmittanceMatrix(MatrixOperator):
    """Airy transmittance of a Fabry-Perot interferometer."""

    def __init__(self, spec, a=None, op_norm=None):
        self.spec = spec
        if a is None:
            a = airy_transmittance(spec.reflectivity, spec.wavenumbers, spec.opd)
        super().__init__(a, op_norm)


def build_transmittance(spec):
    """Build the L x K Airy transmittance matrix for `spec`."""
    return TransmittanceMatrix(spec)


def apply(A, x):
    return A.apply(x)


def adjoint(A, y):
    return A.adjoint(y)


def add_noise(y, snr_db, seed):
    """Add white Gaussian noise at a given SNR (dB).

    The noise variance is ``var(y) / 10**(snr_db / 10)``, where ``var(y)``
    is the variance of all entries about their global mean.  Uses numpy's
    PCG64 generator seeded with `seed`, drawing one standard normal per
    entry in C order.
    """
    y = as_cube3(y, "acquisition")
    sigma = np.sqrt(y.var() / 10.0 ** (snr_db / 10.0))
    rng = np.random.Generator(np.random.PCG64(seed))
    return y + sigma * rng.standard_normal(y.shape)


def measured_snr_db(clean, noisy):
    """SNR in dB of ``noisy`` relative to ``clean``, mean-centered."""
    clean = np.asarray(clean, dtype=np.float64)
    noise = np.asarray(noisy, dtype=np.float64) - clean
    return float(10.0 * np.log10(clean.var() / noise.var()))
