"""Comparison of the three LV regularizers with a per-method lambda search."""

from dataclasses import asdict, dataclass, field
import time

import numpy as np

from .errors import ParameterError
from .forward_model import TransmittanceSpec, build_transmittance
from .metrics import rmse, ssim
from .regularizers import Regularizer, RegularizerChoice
from .solver import SolverConfig, reconstruct

__all__ = [
    "METHODS",
    "BenchmarkRow",
    "BenchmarkReport",
    "parse_lambda_grid",
    "transmittance_for",
    "run_benchmark",
]

METHODS = {
    "lv-dct": RegularizerChoice.DCT,
    "lv-tv": RegularizerChoice.TV,
    "lv-ctv": RegularizerChoice.CTV,
}


def parse_lambda_grid(text):
    """Parse ``"lo:hi:n"`` into `n` log-spaced values from `lo` to `hi`."""
    try:
        lo, hi, n = text.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError:
        raise ParameterError(f"lambda grid must look like 'lo:hi:n', got {text!r}") from None
    if n < 1 or lo <= 0.0 or hi <= 0.0:
        raise ParameterError(f"invalid lambda grid {text!r}")
    if n == 1:
        return np.array([lo])
    return np.logspace(np.log10(lo), np.log10(hi), n)


def transmittance_for(acq, wn_min, wn_max, wn_count):
    """Rebuild the forward operator from an acquisition header and a spectral grid."""
    spec = TransmittanceSpec(
        reflectivity=acq.reflectivity,
        opd_start=acq.opd_start,
        opd_step=acq.opd_step,
        opd_count=acq.shape[2],
        wn_min=wn_min,
        wn_max=wn_max,
        wn_count=wn_count,
    )
    return build_transmittance(spec)


@dataclass
class BenchmarkRow:
    method: str
    lam: float
    rmse: float
    ssim: float
    iterations: int
    seconds: float


@dataclass
class BenchmarkReport:
    rows: list
    grid: list = field(default_factory=list)

    def row(self, method):
        return next(r for r in self.rows if r.method == method)

    def to_dict(self):
        return {"rows": [asdict(r) for r in self.rows], "grid": [asdict(r) for r in self.grid]}

    def to_text(self):
        lines = [
            f"{'Method':<8} {'lambda':>10} {'RMSE[1e-2]':>11} {'SSIM':>7} {'iters':>6} {'time[s]':>8}"
        ]
        for r in self.rows:
            lines.append(
                f"{r.method:<8} {r.lam:>10.4g} {100 * r.rmse:>11.3f} {r.ssim:>7.4f} "
                f"{r.iterations:>6d} {r.seconds:>8.1f}"
            )
        return "\n".join(lines)


def run_benchmark(ref, acq, lambdas, iters=100, init="scaled", progress=None):
    """Reconstruct with every method and lambda; keep the lowest-RMSE run per method.

    Ties in RMSE keep the earlier (smaller) lambda.  `progress`, if given,
    is called with each :class:`BenchmarkRow` as it completes.
    """
    k = ref.shape[2]
    wn_max = ref.wn_start + (k - 1) * ref.wn_step
    A = transmittance_for(acq, ref.wn_start, wn_max, k)
    best = {}
    grid = []
    for name, choice in METHODS.items():
        reg = Regularizer(choice, ref.shape)
        for lam in lambdas:
            cfg = SolverConfig(lam=float(lam), max_iters=iters, regularizer=choice, init=init)
            t0 = time.perf_counter()
            rec, trace = reconstruct(acq, A, cfg, regularizer=reg)
            row = BenchmarkRow(
                name, float(lam), rmse(ref, rec), ssim(ref, rec), len(trace),
                time.perf_counter() - t0,
            )
            grid.append(row)
            if progress is not None:
                progress(row)
            if name not in best or row.rmse < best[name].rmse:
                best[name] = row
    return BenchmarkReport(rows=[best[name] for name in METHODS], grid=grid)
