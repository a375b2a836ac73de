"""
Command-line entry point: ``euler-stability {class,ensemble,convergence,density,verify}``.
"""

import argparse
import json
import logging
import sys
import time
from datetime import datetime
from typing import List, Optional

from .. import __version__
from ..errors import (AdmissibilityError, ClassificationError, ConsistencyError, DegenerateClassError,
                      EigensolverError, VerificationError)
from ..density import PRESETS
from ..lattice import TruncationKind
from ..spectra import DEFAULT_TOL_REL, eigenvalue_table, leader_type_table
from .config import RunConfig, int_list_arg, lattice_vector_arg
from .reports import (build_manifest, output_path, run_class, run_convergence, run_density, run_ensemble,
                      write_csv, write_json)
from .verify import run_verify, summary

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_VERIFICATION = 4


def _add_common(parser: argparse.ArgumentParser, needs_grid: bool = True):
    parser.add_argument("--p", type=lattice_vector_arg, help="equilibrium wave vector X,Y")
    parser.add_argument("--gamma", type=float, default=0.5, help="equilibrium amplitude Γ (default 0.5)")
    parser.add_argument("--kind", choices=[k.value for k in TruncationKind], default=TruncationKind.ZEITLIN.value)
    parser.add_argument("--tol", dest="tolerance", type=float, default=DEFAULT_TOL_REL,
                        help="classification tolerance relative to the spectral radius")
    parser.add_argument("--strict-admissible", dest="strict_admissible", action="store_true",
                        help="reject Zeitlin grid sizes outside the admissible sequence")
    parser.add_argument("--out", help="output directory (JSON goes to stdout when omitted)")
    parser.add_argument("--format", dest="fmt", choices=["json", "csv"], default="json")
    if needs_grid:
        grid = parser.add_mutually_exclusive_group()
        grid.add_argument("--N", type=int, help="grid size N of the domain [-N, N]²")
        grid.add_argument("--n-tilde", dest="n_tilde", type=int, help="index ñ of the admissible Zeitlin sequence")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="euler-stability",
        description="Linear stability of Kolmogorov-type equilibria of truncated 2D Euler flow on the torus.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings only")
    commands = parser.add_subparsers(dest="command", required=True)

    class_parser = commands.add_parser("class", help="analyse the class led by one mode")
    _add_common(class_parser)
    class_parser.add_argument("--a", type=lattice_vector_arg, help="class leader X,Y")

    ensemble = commands.add_parser("ensemble", help="sweep all classes of a domain")
    _add_common(ensemble)
    ensemble.add_argument("--fast", action="store_true", help="skip dense solves of Stable classes")
    ensemble.add_argument("--threads", type=int, default=1, help="worker threads for the dense solves")

    convergence = commands.add_parser("convergence", help="largest real eigenvalue against N")
    _add_common(convergence, needs_grid=False)
    convergence.add_argument("--a", type=lattice_vector_arg, help="class leader X,Y")
    convergence.add_argument("--Ns", type=int_list_arg, default=[], help="comma-separated grid sizes")
    convergence.add_argument("--threads", type=int, default=1, help="worker threads for the dense solves")

    density = commands.add_parser("density", help="imaginary-part histogram against the limiting density")
    _add_common(density)
    density.add_argument("--a", type=lattice_vector_arg, help="class leader X,Y")
    density.add_argument("--bins", type=int, default=40)
    density.add_argument("--preset", choices=sorted(PRESETS), help="named (p, a) pair")

    verify = commands.add_parser("verify", help="run the verification suite")
    verify.add_argument("--level", choices=["quick", "full"], default="quick")
    verify.add_argument("--seed", type=int, default=2024)
    return parser


def configure_logging(verbose: bool = False, quiet: bool = False):
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def _emit(config: RunConfig, name: str, data, manifest=None):
    if config.out:
        write_json(data, output_path(config, name))
    else:
        if manifest is not None:
            data = {**data, 'manifest': manifest()}
        json.dump(data, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")


def _emit_table(config: RunConfig, name: str, table):
    if config.out:
        write_csv(table, output_path(config, name))
    elif config.fmt == "csv":
        table.to_csv(sys.stdout, index=False, float_format="%.17g")
    else:
        json.dump(json.loads(table.to_json(orient="records")), sys.stdout, indent=2)
        sys.stdout.write("\n")


def execute(config: RunConfig) -> int:
    """
    Run one validated configuration and write its outputs.

    With `--out` the provenance record goes to manifest.json. On stdout, JSON objects carry it
    under a `manifest` key; tables and verification summaries log it instead.
    """
    started = datetime.now().astimezone()
    start = time.perf_counter()

    def manifest():
        return build_manifest(config.command, config, started, time.perf_counter() - start)

    embedded = False
    if config.command == "verify":
        outcomes = run_verify(config.level, config.seed, raise_on_failure=False)
        print(summary(outcomes))
        failures = [o.name for o in outcomes if not o.passed]
        if failures:
            raise VerificationError(failures)
    elif config.command == "class":
        record, _ = run_class(config)
        _emit(config, "class.json", record, manifest)
        embedded = True
    elif config.command == "ensemble":
        report, spectra = run_ensemble(config)
        if config.out:
            write_json(report.to_dict(), output_path(config, "ensemble.json"))
            write_csv(eigenvalue_table(spectra), output_path(config, "eigenvalues.csv"))
            write_csv(leader_type_table(spectra), output_path(config, "leader_types.csv"))
        elif config.fmt == "csv":
            _emit_table(config, "eigenvalues.csv", eigenvalue_table(spectra))
        else:
            _emit(config, "ensemble.json", report.to_dict(), manifest)
            embedded = True
    elif config.command == "convergence":
        _emit_table(config, "convergence.csv", run_convergence(config))
    elif config.command == "density":
        table, metadata = run_density(config)
        _emit_table(config, "density.csv", table)
        if config.out:
            write_json(metadata, output_path(config, "density.json"))
        else:
            logger.info("Density metadata: %s", metadata)

    if config.out:
        write_json(manifest(), output_path(config, "manifest.json"))
    elif not embedded:
        logger.info("Run manifest: %s", json.dumps(manifest(), sort_keys=True))
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, run the subcommand and map failures to exit codes.

    Returns:
        0 on success, 2 for usage errors, 3 for numerical failures, 4 for failed verification
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    configure_logging(args.verbose, args.quiet)

    config = RunConfig.from_args(args)
    is_valid, message = config.validate()
    if not is_valid:
        logger.error("Invalid arguments: %s", message)
        return EXIT_USAGE

    try:
        return execute(config)
    except VerificationError as exc:
        logger.error("%s", exc)
        return EXIT_VERIFICATION
    except (EigensolverError, ClassificationError, ConsistencyError, DegenerateClassError) as exc:
        logger.error("Numerical failure: %s", exc)
        return EXIT_NUMERICAL
    except (AdmissibilityError, ValueError) as exc:
        logger.error("Invalid arguments: %s", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
