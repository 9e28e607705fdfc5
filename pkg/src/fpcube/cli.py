"""Command line interface: ``fpcube {generate-scene,simulate,reconstruct,evaluate,benchmark}``."""

import argparse
import json
import logging
import sys

from . import cubefile
from .benchmark import parse_lambda_grid, run_benchmark, transmittance_for
from .errors import CubeFileError, DivergenceError, ParameterError, ShapeError
from .forward_model import TransmittanceSpec, add_noise, build_transmittance
from .metrics import quality_report
from .scenes import SceneSpec, generate_scene
from .solver import INIT_MODES, SolverConfig, reconstruct
from .tensor_core import InterferogramCube

logger = logging.getLogger("fpcube")


def _patches(text):
    try:
        rows, cols = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected ROWSxCOLS, got {text!r}") from None
    return rows, cols


def _snr(text):
    if text.lower() == "none":
        return None
    return float(text)


def cmd_generate_scene(args):
    rows, cols = args.patches
    spec = SceneSpec(
        width=args.width, height=args.height, wn_min=args.wn_min, wn_max=args.wn_max,
        wn_count=args.channels, patch_rows=rows, patch_cols=cols, seed=args.seed,
    )
    cube = generate_scene(spec)
    cubefile.write_cube(args.out, cube)
    logger.info("wrote %s cube to %s", "x".join(map(str, cube.shape)), args.out)


def cmd_simulate(args):
    ref = cubefile.read_cube(args.reference, kind=cubefile.KIND_SPECTRAL)
    k = ref.shape[2]
    spec = TransmittanceSpec(
        reflectivity=args.reflectivity,
        opd_start=args.opd_start * 1e6,
        opd_step=args.opd_step_nm * 1e-3,
        opd_count=args.opd_count,
        wn_min=ref.wn_start,
        wn_max=ref.wn_start + (k - 1) * ref.wn_step,
        wn_count=k,
    )
    A = build_transmittance(spec)
    y = A.apply(ref.data)
    if args.snr_db is not None:
        y = add_noise(y, args.snr_db, args.seed)
    acq = InterferogramCube(y, spec.opd_start, spec.opd_step, spec.reflectivity)
    cubefile.write_cube(args.out, acq)
    logger.info("wrote %s acquisition to %s", "x".join(map(str, acq.shape)), args.out)


def cmd_reconstruct(args):
    acq = cubefile.read_cube(args.acq, kind=cubefile.KIND_INTERFEROGRAM)
    A = transmittance_for(acq, args.wn_min, args.wn_max, args.channels)
    cfg = SolverConfig(
        lam=args.lam, max_iters=args.iters, stop_rtol=args.stop_rtol,
        regularizer=args.regularizer, init=args.init,
    )
    rec, trace = reconstruct(acq, A, cfg)
    cubefile.write_cube(args.out, rec)
    if args.trace:
        trace.to_csv(args.trace)
    logger.info("%d iterations (%s), final objective %.6g",
                len(trace), trace.stop_reason, trace.records[-1].objective)


def cmd_evaluate(args):
    ref = cubefile.read_cube(args.ref, kind=cubefile.KIND_SPECTRAL)
    rec = cubefile.read_cube(args.rec, kind=cubefile.KIND_SPECTRAL)
    report = quality_report(ref, rec, window=args.window)
    json.dump(report.to_dict(), sys.stdout)
    sys.stdout.write("\n")


def cmd_benchmark(args):
    ref = cubefile.read_cube(args.ref, kind=cubefile.KIND_SPECTRAL)
    acq = cubefile.read_cube(args.acq, kind=cubefile.KIND_INTERFEROGRAM)
    lambdas = parse_lambda_grid(args.lambda_grid)

    def progress(row):
        logger.info("%s lambda=%.4g rmse=%.5f ssim=%.4f (%.1fs)",
                    row.method, row.lam, row.rmse, row.ssim, row.seconds)

    report = run_benchmark(ref, acq, lambdas, iters=args.iters, init=args.init, progress=progress)
    print(report.to_text())
    if args.out_json:
        with open(args.out_json, "w") as fh:
            json.dump(report.to_dict(), fh, indent=2)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fpcube",
        description="Hyperspectral reconstruction from Fabry-Perot interferograms.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate-scene", help="write a synthetic reference cube")
    p.add_argument("--width", type=int, default=96)
    p.add_argument("--height", type=int, default=96)
    p.add_argument("--channels", type=int, default=366)
    p.add_argument("--wn-min", type=float, default=1.4, help="um^-1")
    p.add_argument("--wn-max", type=float, default=2.5, help="um^-1")
    p.add_argument("--patches", type=_patches, default=(4, 6), help="ROWSxCOLS (default 4x6)")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate_scene)

    p = sub.add_parser("simulate", help="simulate a noisy interferometric acquisition")
    p.add_argument("--reference", required=True)
    p.add_argument("--reflectivity", type=float, default=0.255)
    p.add_argument("--opd-start", type=float, default=0.0, help="first OPD in meters")
    p.add_argument("--opd-step-nm", type=float, default=25.0)
    p.add_argument("--opd-count", type=int, default=319)
    p.add_argument("--snr-db", type=_snr, default=10.0, help='dB, or "none" for noiseless')
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("reconstruct", help="run the Loris-Verhoeven solver")
    p.add_argument("--acq", required=True)
    p.add_argument("--regularizer", choices=["dct", "tv", "ctv"], default="ctv")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--iters", type=int, default=100)
    p.add_argument("--wn-min", type=float, default=1.4)
    p.add_argument("--wn-max", type=float, default=2.5)
    p.add_argument("--channels", type=int, default=366)
    p.add_argument("--stop-rtol", type=float, default=0.0)
    p.add_argument("--init", choices=INIT_MODES, default="scaled")
    p.add_argument("--trace", help="per-iteration CSV output")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("evaluate", help="print RMSE/SSIM as JSON")
    p.add_argument("--ref", required=True)
    p.add_argument("--rec", required=True)
    p.add_argument("--window", type=int, default=11, help="SSIM Gaussian window size")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("benchmark", help="compare lv-dct, lv-tv and lv-ctv")
    p.add_argument("--ref", required=True)
    p.add_argument("--acq", required=True)
    p.add_argument("--iters", type=int, default=100)
    p.add_argument("--lambda-grid", default="1e-4:1e-1:7", help="lo:hi:n, log-spaced")
    p.add_argument("--init", choices=INIT_MODES, default="scaled")
    p.add_argument("--out-json")
    p.set_defaults(func=cmd_benchmark)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        args.func(args)
    except (CubeFileError, ParameterError, ShapeError, DivergenceError, OSError) as exc:
        print(f"fpcube: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
