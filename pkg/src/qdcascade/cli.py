"""Command-line entry points: simulate, fidelity, distribution, fit, synth.

Exit codes: 0 success, 1 configuration error, 2 data error,
3 fit non-convergence.
"""

import argparse
import sys

import numpy as np

from . import csvio
from .config import ConfigError, load_reference_config, parse_config
from .csvio import DataError
from .emission import convolve_correlations, fidelity_trace, g2_traces
from .finestructure import splitting_pdf
from .fitting import FITTABLE, FitSpec, fit, format_report, synth_histogram

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATA = 2
EXIT_NOCONVERGE = 3


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="qdcascade",
        description="Entangled photon-pair emission from a quantum dot with "
                    "a fluctuating nuclear field: simulation and fitting.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", metavar="PATH",
                       help="parameter file (default: built-in "
                            "salter2010_assumed profile)")
        p.add_argument("--out", metavar="PATH",
                       help="output file (default: stdout)")

    p = sub.add_parser("simulate", help="write the six g2 traces as CSV")
    add_common(p)
    p.add_argument("--no-nuclear", action="store_true",
                   help="disable nuclear-field averaging (sigma = 0)")
    p.add_argument("--no-jitter", action="store_true",
                   help="skip the detector-response convolution")

    p = sub.add_parser("fidelity", help="write the Bell-state fidelity curve")
    add_common(p)
    p.add_argument("--no-nuclear", action="store_true")
    p.add_argument("--no-jitter", action="store_true")

    p = sub.add_parser("distribution",
                       help="splitting-magnitude distribution (s/sigma, pdf)")
    add_common(p)
    p.add_argument("--sr-over-sigma", default="0",
                   help="comma-separated list of s_r/sigma ratios")

    p = sub.add_parser("fit", help="fit free parameters to a counts CSV")
    add_common(p)
    p.add_argument("data", metavar="DATA_CSV")
    p.add_argument("--free", default="k,sigma,gamma_s",
                   help=f"comma-separated subset of {','.join(FITTABLE)}")

    p = sub.add_parser("synth", help="generate a synthetic counts CSV")
    add_common(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exposure", type=float, default=1e4,
                   help="expected counts per bin at g2 = 1")
    return parser


def _load_config(path):
    if path is None:
        return load_reference_config()
    with open(path) as fh:
        return parse_config(fh.read())


def _write_out(text, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _scenario_params(config, no_nuclear):
    params = config.emission_params()
    if no_nuclear:
        from .fitting import apply_overrides
        params = apply_overrides(params, {"sigma": 0.0})
    return params


def run(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA if args.command == "fit" else EXIT_CONFIG
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA


def _dispatch(args):
    if args.command == "simulate":
        config = _load_config(args.config)
        params = _scenario_params(config, args.no_nuclear)
        corr = g2_traces(params, config.tau_grid())
        if not args.no_jitter and params.irf_fwhm > 0.0:
            corr = convolve_correlations(corr, params.irf_fwhm)
        _write_out(csvio.write_correlations_csv(corr), args.out)
        return EXIT_OK

    if args.command == "fidelity":
        config = _load_config(args.config)
        params = _scenario_params(config, args.no_nuclear)
        corr = g2_traces(params, config.tau_grid())
        if not args.no_jitter and params.irf_fwhm > 0.0:
            corr = convolve_correlations(corr, params.irf_fwhm)
        trace = fidelity_trace(corr)
        _write_out(csvio.write_fidelity_csv(trace), args.out)
        print(f"peak fidelity {trace.peak_f:.4f} at tau = "
              f"{trace.peak_tau:.3f} ns; duration above 0.5: "
              f"{trace.duration_above_half:.3f} ns", file=sys.stderr)
        return EXIT_OK

    if args.command == "distribution":
        try:
            ratios = [float(r) for r in args.sr_over_sigma.split(",")]
        except ValueError:
            raise ConfigError(
                f"bad --sr-over-sigma value {args.sr_over_sigma!r}") from None
        if any(r < 0 for r in ratios):
            raise ConfigError("--sr-over-sigma ratios must be >= 0")
        step = 0.01
        x_max = max(ratios) + 5.0
        # half-step offset keeps every ratio's singularity at s = s_r off-grid
        x = step / 2.0 + step * np.arange(int(round(x_max / step)))
        pdfs = [splitting_pdf(r, 1.0, x) for r in ratios]
        labels = [f"{r:g}" for r in ratios]
        _write_out(csvio.write_distribution_csv(x, pdfs, labels), args.out)
        return EXIT_OK

    if args.command == "fit":
        config = _load_config(args.config)
        free = tuple(s.strip() for s in args.free.split(",") if s.strip())
        for name in free:
            if name not in FITTABLE:
                raise ConfigError(f"unknown fit parameter {name!r}")
        with open(args.data) as fh:
            data = csvio.load_csv(fh.read())
        if data.counts is None:
            raise DataError("fit requires counts columns (suffix _counts)")
        spec = FitSpec(free=free, fixed=config.emission_params())
        result = fit(data, spec)
        _write_out(format_report(result, spec), args.out)
        return EXIT_OK if result.converged else EXIT_NOCONVERGE

    if args.command == "synth":
        config = _load_config(args.config)
        if args.exposure <= 0:
            raise ConfigError("--exposure must be > 0")
        data = synth_histogram(config.emission_params(), config.tau_grid(),
                               args.exposure, args.seed)
        _write_out(csvio.write_correlations_csv(data), args.out)
        return EXIT_OK

    raise AssertionError(f"unhandled command {args.command}")


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
