"""CLI argument parser."""

import argparse
from typing import Any, Optional

from ..utils.constants import Constants


class CLIParser:
    """Handles command line argument parsing.

    Every value flag defaults to None so that RunConfig can tell a flag that
    was given from one that was not (flags > config file > defaults).
    """

    def __init__(self):
        """Initialize the CLI parser."""
        self.parser = self._create_parser()

    def _create_parser(self) -> argparse.ArgumentParser:
        """Create the argument parser."""
        parser = argparse.ArgumentParser(
            prog="gfbbm",
            description="gfbbm-lab - solitary waves of the generalized fractional BBM equation",
            formatter_class=argparse.RawDescriptionHelpFormatter,
            epilog="""
Examples:
  %(prog)s solve --alpha 2 --p 1 --c 1.5              Solve for a solitary wave
  %(prog)s classify --p 1 --resolution 0.01           Region map over (alpha, c)
  %(prog)s classify --alpha 0.6 --p 1 --c 1.1         Verdict at a single point
  %(prog)s evolve --alpha 0.6 --p 1 --c 1.1 --gamma 1.1
  %(prog)s spectrum --alpha 2 --p 1 --c 1.5           Eigenvalue counts and index
  %(prog)s sweep --points-file points.csv --kind stability --workers 4
  %(prog)s roots --p 2                                Critical speeds c1(alpha), c2(alpha)
            """,
        )
        common = self._common_parent()
        subparsers = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND")
        subparsers.required = True

        solve = subparsers.add_parser("solve", parents=[common], help="Petviashvili solve")
        self._add_model(solve)
        self._add_grid(solve)
        self._add_solver(solve)

        classify = subparsers.add_parser("classify", parents=[common], help="analytic verdicts")
        self._add_model(classify)
        classify.add_argument("--alpha-min", type=float, help="Lower alpha of the lattice")
        classify.add_argument("--alpha-max", type=float, help="Upper alpha of the lattice")
        classify.add_argument("--c-min", type=float, help="Lower wave speed of the lattice")
        classify.add_argument("--c-max", type=float, help="Upper wave speed of the lattice")
        classify.add_argument("--resolution", type=float, help="Lattice spacing (default: 0.01)")

        evolve = subparsers.add_parser("evolve", parents=[common], help="perturbed-wave run")
        self._add_model(evolve)
        self._add_grid(evolve)
        self._add_solver(evolve)
        evolve.add_argument("--dt", type=float, help="RK4 time step (default: 5e-4)")
        evolve.add_argument("--t-final", type=float, help="Final time (default: 50)")
        evolve.add_argument("--gamma", type=float, help="Perturbation factor u0 = gamma*Q (default: 1.1)")
        evolve.add_argument("--sample-interval", type=float, help="Trace sampling interval (default: 0.5)")
        evolve.add_argument("--snapshots", action="store_true", default=None,
                            help="Also write full-field binary snapshots")
        evolve.add_argument("--wave-input", help="Profile CSV from a previous solve")

        spectrum = subparsers.add_parser("spectrum", parents=[common], help="dense eigen report")
        self._add_model(spectrum)
        self._add_dense(spectrum)

        sweep = subparsers.add_parser("sweep", parents=[common], help="batch over a point list")
        sweep.add_argument("--points-file", help="CSV with columns alpha,p,c")
        sweep.add_argument("--kind", dest="sweep_kind", choices=Constants.SWEEP_KINDS,
                           help="stability (analyze each point) or profiles (solve each point)")
        sweep.add_argument("--workers", type=int, help="Worker processes (default: 1)")
        self._add_dense(sweep)

        roots = subparsers.add_parser("roots", parents=[common], help="critical-speed curves")
        roots.add_argument("--p", type=int, help="Nonlinearity exponent")
        roots.add_argument("--alpha-min", type=float, help="Lower alpha")
        roots.add_argument("--alpha-max", type=float, help="Upper alpha")
        roots.add_argument("--resolution", type=float, help="Alpha spacing (default: 0.01)")

        return parser

    @staticmethod
    def _common_parent() -> argparse.ArgumentParser:
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument("--config", help="JSON config file (flags override its keys)")
        common.add_argument("--output", help="Output directory (default: output)")
        common.add_argument("--label", help="Stem for output file names")
        common.add_argument("-v", "--verbose", action="count", default=0,
                            help="More log output (-vv for debug)")
        common.add_argument("--quiet", action="store_true", help="Only warnings and errors")
        common.add_argument("--output-format", choices=["table", "json"], default="table",
                            help="Console output format (default: table)")
        return common

    @staticmethod
    def _add_model(parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--alpha", type=float, help="Dispersion order in (0, 2]")
        parser.add_argument("--p", type=int, help="Nonlinearity exponent (positive integer)")
        parser.add_argument("--c", type=float, help="Wave speed")

    @staticmethod
    def _add_grid(parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--L", dest="half_length", type=float,
                            help="Half-length of [-L, L) (default: 512)")
        parser.add_argument("--N", dest="n_points", type=int,
                            help="Grid points, a power of two (default: 8192)")

    @staticmethod
    def _add_solver(parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--tolerance", type=float, help="Petviashvili tolerance (default: 1e-12)")
        parser.add_argument("--max-iterations", type=int, help="Iteration cap (default: 500)")

    @staticmethod
    def _add_dense(parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--N", dest="n_points", type=int,
                            help="Eigen grid points (default: 1024)")
        parser.add_argument("--dense-cap", type=int, help="Largest N for dense assembly (default: 4096)")
        parser.add_argument("--dc", type=float, help="Central-difference step in c (default: 1e-3)")
        parser.add_argument("--normalized-half-length", type=float,
                            help="theta * L of the stability grid (default: 48)")

    def parse_args(self, args: Optional[list] = None) -> Any:
        """Parse command line arguments."""
        return self.parser.parse_args(args)

    def print_help(self):
        """Print help message."""
        self.parser.print_help()
