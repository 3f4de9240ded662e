"""Command-line interface: ``lebesgue-quad <command> [options]``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import formats
from .christoffel import christoffel_weights
from .clustering import build_clusters, cluster_measure, rn_classify, rn_interpolate
from .errors import LebesgueError
from .formats import ColumnSpec, Spectrum
from .moments import x_matrix
from .pipeline import FMode, run_pipeline
from .quadrature import christoffel_function
from .radon_nikodym import rn_gamma, rn_nevai

EXIT_USAGE = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _columns(text):
    try:
        return ColumnSpec.parse(text)
    except LebesgueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _add_sample_options(p, need_n=True):
    p.add_argument("--input", required=True, help="delimiter-separated sample file")
    p.add_argument("--output", required=True)
    p.add_argument("--columns", type=_columns, default=ColumnSpec(2, 0, 1),
                   help="TOTAL:X:F[:W], 0-based (default 2:0:1)")
    if need_n:
        p.add_argument("--n", type=_positive_int, required=True, help="basis size")
    p.add_argument("--basis", default="chebyshev",
                   help="chebyshev, legendre, legendreshifted, hermitee, laguerre or monomial")
    p.add_argument("--f-mode", default=FMode.COLUMN.value, choices=[m.value for m in FMode])


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lebesgue-quad", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen-two-stage", help="piecewise linear two-stage degradation curve")
    p.add_argument("--output", required=True)
    p.add_argument("--M", type=_positive_int, default=10000, help="number of samples")
    p.add_argument("--N-total", type=float, default=1000.0)
    p.add_argument("--N-break", type=float, default=800.0)
    p.add_argument("--slope1", type=float, default=1e-4)
    p.add_argument("--slope2", type=float, default=5e-4)
    p.add_argument("--noise", type=float, default=0.0, help="uniform noise amplitude")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("gen-runge", help="Runge dataset on [-1, 1], 10001 rows")
    p.add_argument("--output", required=True)

    p = sub.add_parser("quadrature", help="spectrum file: index, lambda, x_psi, w, w_K")
    _add_sample_options(p)

    p = sub.add_parser("christoffel", help="spectrum of the K(x) pencil")
    _add_sample_options(p)
    p.add_argument("--f-output", help="also write the f-pencil spectrum with its w_K")

    p = sub.add_parser("rn-eval", help="per-sample K(x) and Radon-Nikodym estimates")
    _add_sample_options(p)
    p.add_argument("--gamma", type=float, default=0.0, help="exponent in [-1, 1]")

    p = sub.add_parser("cluster", help="D-point clustering of the value-nodes")
    _add_sample_options(p)
    p.add_argument("--D", type=_positive_int, required=True)
    p.add_argument("--rho", choices=["pure", "christoffel"], default="pure",
                   help="pure: Lebesgue weights and |1><1|; christoffel: w_K and rho_K")
    p.add_argument("--samples-output", help="per-sample x, f, f_RN, f_RNW")

    p = sub.add_parser("cluster-spectrum", help="D-point clustering of a spectrum file")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--D", type=_positive_int, required=True)
    p.add_argument("--weights", choices=["w", "w_K"], default="w")

    p = sub.add_parser("histogram", help="equal-width weighted histogram")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--columns", type=_columns, default=ColumnSpec(5, 1, 1, 3),
                   help="TOTAL:V:V[:W]; values from V, weights from W (default 5:1:1:3)")
    p.add_argument("--bins", type=_positive_int, default=25)
    return parser


def _pipeline(args):
    table = formats.read_table(args.input, args.columns)
    return run_pipeline(table, args.n, args.basis, args.f_mode)


def cmd_gen_two_stage(args):
    formats.generate_two_stage(args.output, args.M, args.N_total, args.N_break,
                               args.slope1, args.slope2, args.noise, args.seed)


def cmd_gen_runge(args):
    formats.generate_runge(args.output)


def cmd_quadrature(args):
    formats.write_spectrum(args.output, _pipeline(args).spectrum)


def cmd_christoffel(args):
    result = _pipeline(args)
    K = result.christoffel.decomposition
    lam = K.eigenvalues
    x_psi = K.matrix_elements(x_matrix(result.moments)) if result.moments.mu_next is not None \
        else np.full(lam.size, np.nan)
    means = K.means()
    formats.write_spectrum(args.output, Spectrum(lam, x_psi, means * means, christoffel_weights(K, result.christoffel)))
    if args.f_output:
        formats.write_spectrum(args.f_output, result.spectrum)


def cmd_rn_eval(args):
    result = _pipeline(args)
    s = result.samples
    decomp = result.decomposition
    K = christoffel_function(decomp.gram, result.basis, s.x)
    header = ("x", "f", "w", "K", "nevai", f"gamma={args.gamma:g}")
    formats.write_columns(args.output, header,
                          [s.x, s.f, s.weight, K, rn_nevai(decomp, s.x), rn_gamma(decomp, s.x, args.gamma)])


def cmd_cluster(args):
    result = _pipeline(args)
    decomp = result.decomposition
    if args.rho == "pure":
        model = build_clusters(decomp, result.spectrum.weights, args.D)
    else:
        model = build_clusters(decomp, result.spectrum.christoffel_weights, args.D, result.christoffel.rho_K)
    formats.write_cluster_report(args.output, model.cluster_values, model.cluster_weights)
    if args.samples_output:
        s = result.samples
        formats.write_columns(args.samples_output, ("x", "f", "f_RN", "f_RNW"),
                              [s.x, s.f, rn_interpolate(model, s.x), rn_classify(model, s.x)])


def cmd_cluster_spectrum(args):
    spectrum = formats.read_spectrum(args.input)
    weights = spectrum.weights if args.weights == "w" else spectrum.christoffel_weights
    quad = cluster_measure(spectrum.eigenvalues, weights, args.D)
    formats.write_cluster_report(args.output, quad.nodes, quad.weights)


def cmd_histogram(args):
    table = formats.read_table(args.input, args.columns)
    formats.write_histogram(args.output, formats.histogram(table.x, table.weight, args.bins))


COMMANDS = {
    "gen-two-stage": cmd_gen_two_stage,
    "gen-runge": cmd_gen_runge,
    "quadrature": cmd_quadrature,
    "christoffel": cmd_christoffel,
    "rn-eval": cmd_rn_eval,
    "cluster": cmd_cluster,
    "cluster-spectrum": cmd_cluster_spectrum,
    "histogram": cmd_histogram,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except LebesgueError as exc:
        print(f"lebesgue-quad {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"lebesgue-quad {args.command}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
