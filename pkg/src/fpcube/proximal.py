"""Conjugate proximal operators used by the dual update, and the norms they
stem from.

For a norm scaled by ``lam``, the Fenchel conjugate is the indicator of the
dual-norm ball of radius ``lam``, so its prox (for any step) is a projection.
"""

import numpy as np

from .errors import ParameterError

__all__ = [
    "check_lambda",
    "prox_conj_l2_groups",
    "prox_conj_l1",
    "group_shrink",
    "l1_norm",
    "l1112_norm",
]


def check_lambda(lam):
    lam = float(lam)
    if not (np.isfinite(lam) and lam > 0.0):
        raise ParameterError(f"lambda must be finite and positive, got {lam}")
    return lam


def _group_norms(t):
    return np.sqrt(np.einsum("...i,...i->...", t, t))


def prox_conj_l2_groups(t, lam):
    """Project every group ``t[..., :]`` onto the l2 ball of radius `lam`.

    Groups with norm exactly `lam` take the identity branch.
    """
    lam = check_lambda(lam)
    t = np.asarray(t, dtype=np.float64)
    # lam / max(norm, lam) is exactly 1 inside the ball and lam / norm outside
    factor = lam / np.maximum(_group_norms(t), lam)
    return t * factor[..., None]


def prox_conj_l1(z, lam):
    """Entrywise clamp to ``[-lam, lam]`` (groups of size one)."""
    lam = check_lambda(lam)
    return np.clip(np.asarray(z, dtype=np.float64), -lam, lam)


def group_shrink(t, lam):
    """Prox of ``lam * sum ||t[..., :]||_2``: group soft-thresholding."""
    lam = check_lambda(lam)
    t = np.asarray(t, dtype=np.float64)
    factor = 1.0 - lam / np.maximum(_group_norms(t), lam)
    return t * factor[..., None]


def l1_norm(z):
    return float(np.sum(np.abs(z)))


def l1112_norm(t):
    """l2 over the last mode, l1 over the remaining three."""
    return float(np.sum(_group_norms(np.asarray(t, dtype=np.float64))))
