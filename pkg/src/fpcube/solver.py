"""Over-relaxed Loris-Verhoeven primal-dual iteration.

Minimizes ``0.5 ||Y - A X||^2 + lam * g(L X)`` for a per-pixel forward
matrix ``A`` and one of the regularizers of :mod:`fpcube.regularizers`.
"""

import csv
from dataclasses import dataclass, field
import logging
import time

import numpy as np

from .errors import DivergenceError, ParameterError, ShapeError
from .proximal import check_lambda
from .regularizers import Regularizer, RegularizerChoice
from .tensor_core import InterferogramCube, SpectralCube, as_cube3, norm2

logger = logging.getLogger(__name__)

__all__ = ["SolverConfig", "IterationRecord", "SolverTrace", "objective", "reconstruct"]

INIT_MODES = ("scaled", "adjoint")


@dataclass
class SolverConfig:
    lam: float
    max_iters: int = 100
    rho: float = 1.9
    tau_safety: float = 0.99
    stop_rtol: float = 0.0
    regularizer: RegularizerChoice = RegularizerChoice.CTV
    # "scaled": X0 = A^T Y / ||A||^2 ; "adjoint": X0 = A^T Y
    init: str = "scaled"

    def __post_init__(self):
        self.lam = check_lambda(self.lam)
        self.regularizer = RegularizerChoice(self.regularizer)
        if self.init not in INIT_MODES:
            raise ParameterError(f"init must be one of {INIT_MODES}, got {self.init!r}")
        if self.max_iters < 1:
            raise ParameterError(f"max_iters must be >= 1, got {self.max_iters}")
        if not 0.0 < self.rho < 2.0:
            raise ParameterError(f"rho must lie in (0, 2), got {self.rho}")
        if not self.tau_safety > 0.0:
            raise ParameterError(f"tau_safety must be positive, got {self.tau_safety}")
        if self.stop_rtol < 0.0:
            raise ParameterError(f"stop_rtol must be >= 0, got {self.stop_rtol}")

    def step_sizes(self, a_norm, l_norm):
        """Return ``(tau, eta)`` for the given operator norms."""
        tau = self.tau_safety / a_norm**2
        eta = 1.0 / (tau * l_norm**2) if l_norm > 0.0 else 0.0
        return tau, eta


@dataclass
class IterationRecord:
    iteration: int
    objective: float
    fidelity: float
    rel_change: float
    seconds: float


@dataclass
class SolverTrace:
    tau: float
    eta: float
    rho: float
    lam: float
    a_norm: float
    l_norm: float
    regularizer: str
    stop_rtol: float
    init: str = "scaled"
    records: list = field(default_factory=list)
    stop_reason: str = ""

    def __len__(self):
        return len(self.records)

    @property
    def objectives(self):
        return np.array([r.objective for r in self.records])

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["iter", "objective", "fidelity", "rel_change", "seconds"])
            for r in self.records:
                writer.writerow(
                    [r.iteration, repr(r.objective), repr(r.fidelity), repr(r.rel_change), repr(r.seconds)]
                )


def _as_regularizer(reg, shape):
    if isinstance(reg, Regularizer):
        if reg.shape != tuple(shape):
            raise ShapeError(f"regularizer built for {reg.shape}, cube has shape {tuple(shape)}")
        return reg
    return Regularizer(reg, shape)


def objective(x, y, A, reg, lam):
    """Data fidelity ``0.5 ||y - A x||^2`` plus ``lam * g(L x)``."""
    x = as_cube3(x)
    y = as_cube3(y)
    r = A.apply(x) - y
    reg = _as_regularizer(reg, x.shape)
    return 0.5 * float(np.vdot(r, r)) + lam * reg.value(x)


def reconstruct(y, A, cfg, regularizer=None):
    """Reconstruct a spectral cube from an acquisition.

    Parameters
    ----------
    y : InterferogramCube or ndarray
        Acquisition of shape (I, J, L).
    A : MatrixOperator
        Forward operator with ``apply``, ``adjoint`` and ``op_norm``.
    cfg : SolverConfig
    regularizer : Regularizer, optional
        Prebuilt regularizer matching ``cfg.regularizer``; lets callers reuse
        its cached operator norm across runs.

    Returns
    -------
    cube : SpectralCube
        Final primal iterate.  Carries the wavenumber grid of ``A.spec`` when
        the operator has one.
    trace : SolverTrace
    """
    data = y.data if isinstance(y, InterferogramCube) else as_cube3(y, "acquisition")
    if data.shape[2] != A.n_out:
        raise ShapeError(f"acquisition has {data.shape[2]} samples, operator expects {A.n_out}")
    shape = data.shape[:2] + (A.n_in,)
    if regularizer is None:
        regularizer = Regularizer(cfg.regularizer, shape)
    else:
        regularizer = _as_regularizer(regularizer, shape)
        if regularizer.choice is not cfg.regularizer:
            raise ParameterError(
                f"regularizer {regularizer.choice.value} does not match config {cfg.regularizer.value}"
            )
    L = regularizer
    lam = cfg.lam
    rho = cfg.rho
    tau, eta = cfg.step_sizes(A.op_norm, L.op_norm)
    trace = SolverTrace(
        tau=tau, eta=eta, rho=rho, lam=lam, a_norm=A.op_norm, l_norm=L.op_norm,
        regularizer=L.choice.value, stop_rtol=cfg.stop_rtol, init=cfg.init,
    )
    logger.info("LV %s: tau=%.4g eta=%.4g rho=%g lam=%g", L.choice.value, tau, eta, rho, lam)

    x = A.adjoint(data)
    if cfg.init == "scaled":
        # keeps X0 on the scale of the spectra; the raw adjoint is ||A||^2 too large
        x /= A.op_norm**2
    u = L.apply(x)
    r = A.apply(x) - data
    trace.stop_reason = "max_iters"
    for q in range(cfg.max_iters):
        t0 = time.perf_counter()
        v = A.adjoint(r)
        x_half = x - tau * (v + L.adjoint(u))
        u_half = L.prox_conj(u + eta * L.apply(x_half), lam)
        step = v + L.adjoint(u_half)
        x_norm = norm2(x)
        x = x - (rho * tau) * step
        u = u + rho * (u_half - u)

        dx = rho * tau * norm2(step)
        if x_norm > 0.0:
            rel = dx / x_norm
        else:
            rel = 0.0 if dx == 0.0 else np.inf
        r = A.apply(x) - data
        fidelity = 0.5 * float(np.vdot(r, r))
        obj = fidelity + lam * L.value(x)
        if not (np.isfinite(obj) and np.isfinite(dx) and np.isfinite(u.sum())):
            raise DivergenceError(q + 1)
        trace.records.append(
            IterationRecord(q + 1, obj, fidelity, float(rel), time.perf_counter() - t0)
        )
        if rel < cfg.stop_rtol:
            trace.stop_reason = "stop_rtol"
            break

    spec = getattr(A, "spec", None)
    if spec is not None:
        cube = SpectralCube(x, spec.wn_min, spec.wn_step)
    else:
        cube = SpectralCube(x)
    return cube, trace
