"""Regularization operators: spectral DCT, spatial TV and their cascade.

The TV operator uses forward differences with a Neumann boundary: the
difference leaving the last row (or column) is zero.  Component 0 of the
fourth mode differences along rows (axis 0), component 1 along columns.
"""

from enum import Enum

import numpy as np

from .errors import ParameterError, ShapeError
from .forward_model import matrix_norm, operator_norm
from .proximal import l1_norm, l1112_norm, prox_conj_l1, prox_conj_l2_groups
from .tensor_core import as_cube3, as_field4, contract_mode3

__all__ = [
    "RegularizerChoice",
    "dct_matrix",
    "DctOperator",
    "dct_apply",
    "dct_adjoint",
    "tv_apply",
    "tv_adjoint",
    "ctv_apply",
    "ctv_adjoint",
    "tv_operator_norm",
    "ctv_operator_norm",
    "Regularizer",
]


class RegularizerChoice(str, Enum):
    DCT = "dct"
    TV = "tv"
    CTV = "ctv"


def dct_matrix(k):
    """K x K type-II DCT matrix with a uniform ``sqrt(2/K)`` scaling.

    Entry ``[i, j]`` (0-based) is ``sqrt(2/K) cos(pi/K (j + 1/2) i)``; rows
    are mutually orthogonal, row 0 has norm sqrt(2) and the others norm 1.
    """
    if k < 1:
        raise ParameterError(f"DCT size must be >= 1, got {k}")
    i = np.arange(k)[:, None]
    j = np.arange(k)[None, :]
    return np.sqrt(2.0 / k) * np.cos(np.pi / k * (j + 0.5) * i)


class DctOperator:
    def __init__(self, k):
        self.k = int(k)
        self.w = dct_matrix(self.k)
        self._norm = None

    @property
    def op_norm(self):
        if self._norm is None:
            self._norm = matrix_norm(self.w)
        return self._norm

    def _check(self, x):
        x = as_cube3(x)
        if x.shape[2] != self.k:
            raise ShapeError(f"DCT of size {self.k} cannot act on cube of shape {x.shape}")
        return x

    def apply(self, x):
        return contract_mode3(self.w, self._check(x))

    def adjoint(self, z):
        return contract_mode3(self.w.T, self._check(z))


def dct_apply(op, x):
    return op.apply(x)


def dct_adjoint(op, z):
    return op.adjoint(z)


def tv_apply(x):
    """Forward differences along rows and columns, stacked on a new last mode."""
    x = as_cube3(x)
    t = np.zeros(x.shape + (2,))
    t[:-1, :, :, 0] = x[1:] - x[:-1]
    t[:, :-1, :, 1] = x[:, 1:] - x[:, :-1]
    return t


def tv_adjoint(t):
    """Exact adjoint of :func:`tv_apply` (a negative divergence)."""
    t = as_field4(t)
    p = t[..., 0]
    q = t[..., 1]
    out = np.zeros(t.shape[:3])
    out[1:] += p[:-1]
    out[:-1] -= p[:-1]
    out[:, 1:] += q[:, :-1]
    out[:, :-1] -= q[:, :-1]
    return out


def ctv_apply(dct, x):
    return tv_apply(dct.apply(x))


def ctv_adjoint(dct, t):
    return dct.adjoint(tv_adjoint(t))


def tv_operator_norm(rows, cols, **kwargs):
    """Operator norm of the TV map on a single-channel ``rows x cols`` image."""
    return operator_norm(tv_apply, tv_adjoint, (rows, cols, 1), **kwargs)


def ctv_operator_norm(dct, shape, choice=RegularizerChoice.CTV):
    """Operator norm of the chosen regularization operator on cubes of `shape`.

    TV acts on space and the DCT on the spectral mode, so the cascade is a
    Kronecker product and its norm is the product of the two factor norms.
    Each factor is estimated separately by power iteration.
    """
    choice = RegularizerChoice(choice)
    rows, cols, k = shape
    if choice is RegularizerChoice.DCT:
        return dct.op_norm
    tv = tv_operator_norm(rows, cols)
    if choice is RegularizerChoice.TV:
        return tv
    return tv * dct.op_norm


class Regularizer:
    """The linear operator of the penalty together with its norm and conjugate prox.

    Parameters
    ----------
    choice : RegularizerChoice or str
        ``"dct"`` (l1 on DCT coefficients), ``"tv"`` (collaborative l1,1,1,2
        on spatial gradients) or ``"ctv"`` (the same norm on the gradients
        of the DCT-transformed cube).
    shape : tuple
        ``(I, J, K)`` of the primal cubes.
    """

    def __init__(self, choice, shape):
        self.choice = RegularizerChoice(choice)
        self.shape = tuple(int(s) for s in shape)
        self.dct = DctOperator(self.shape[2]) if self.choice is not RegularizerChoice.TV else None
        self._norm = None

    @property
    def op_norm(self):
        if self._norm is None:
            self._norm = ctv_operator_norm(self.dct, self.shape, self.choice)
        return self._norm

    def apply(self, x):
        if self.choice is RegularizerChoice.DCT:
            return self.dct.apply(x)
        if self.choice is RegularizerChoice.TV:
            return tv_apply(x)
        return ctv_apply(self.dct, x)

    def adjoint(self, u):
        if self.choice is RegularizerChoice.DCT:
            return self.dct.adjoint(u)
        if self.choice is RegularizerChoice.TV:
            return tv_adjoint(u)
        return ctv_adjoint(self.dct, u)

    def prox_conj(self, u, lam):
        if self.choice is RegularizerChoice.DCT:
            return prox_conj_l1(u, lam)
        return prox_conj_l2_groups(u, lam)

    def norm(self, u):
        """Penalty ``g`` evaluated on an output of :meth:`apply`."""
        if self.choice is RegularizerChoice.DCT:
            return l1_norm(u)
        return l1112_norm(u)

    def value(self, x):
        return self.norm(self.apply(x))
