"""
Command-line surface: build families, run verification suites, and move
polynomials and certificates through JSON files.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from . import __version__
from .config import (
    DEFAULT_CONFIG,
    DEFAULT_SURVEY_DEGREES,
    ArtifactKind,
    CheckKind,
    DynirrConfig,
    EmitFormat,
    Family,
)
from .errors import DynirrError
from .logger import setup_logging
from .parsers import ArtifactParserFactory, dump_certificate, dump_polynomial
from .runner import JobRunner, JobSpec, RunOutcome
from .validator import ValidationResult, Validator

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_INTERRUPTED = 130


def create_parser() -> argparse.ArgumentParser:
    """Create argument parser."""
    parser = argparse.ArgumentParser(
        prog="dynirr",
        description="Exact construction and irreducibility certification of dynamical curve polynomials",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Structure, Eisenstein and oracle checks for the cubic family
  %(prog)s cubic --k 2..5 --check all --out out/

  # Unicritical certificates for D = 8
  %(prog)s uni --D 8 --k 2..4 --n 3 --d 2,4,8 --check resultant,modp,eisenstein

  # Irreducibility survey of R_n mod p
  %(prog)s uni --survey --D 2,3,4,8,9,16,27 --n 2..4

  # Write s_2 and its certificate, then re-verify
  %(prog)s export cubic --k 2 --out s2.json --certificate s2.cert.json
  %(prog)s verify-cert s2.cert.json
        """,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    subparsers = parser.add_subparsers(dest="command", help="Command")

    cubic = subparsers.add_parser("cubic", help="Cubic family z^3 - 3a^2 z + 2a^3 + b")
    quad = subparsers.add_parser("quadrat", help="Quadratic rational family G_{a,b}")
    uni = subparsers.add_parser("uni", help="Unicritical family a z^D + 1")
    for sub in (cubic, quad, uni):
        sub.add_argument("--k", default="2", help="Preperiods, e.g. 2..5 or 2,3 (default: 2)")
        sub.add_argument(
            "--check",
            default="all",
            help="Comma-separated checks: " + ", ".join(c.value for c in CheckKind) + " (default: all)",
        )
        sub.add_argument("--out", help="Output directory for the manifest and certificates")
        sub.add_argument("--tol", type=float, default=DEFAULT_CONFIG.oracle.tolerance,
                         help="Oracle confirmation tolerance (default: 1e-8)")
        sub.add_argument("--jobs", type=int, default=1, help="Parallel worker processes (default: 1)")
        sub.add_argument("--emit", choices=[e.value for e in EmitFormat], default=EmitFormat.TEXT.value,
                         help="Summary format on stdout (default: text)")
    uni.add_argument("--D", default=None, help="Degrees D, e.g. 2,3,8")
    uni.add_argument("--n", default="1", help="Periods, e.g. 1..3 (default: 1)")
    uni.add_argument("--d", default=None, help="Divisors d of D (default: every d >= 2 dividing D)")
    uni.add_argument("--survey", action="store_true", help="Run the F_p irreducibility survey")

    verify = subparsers.add_parser("verify-cert", help="Re-verify a certificate file")
    verify.add_argument("file", help="Certificate JSON file")

    export = subparsers.add_parser("export", help="Write a family polynomial (and certificate) to JSON")
    export.add_argument("family", choices=[f.value for f in Family])
    export.add_argument("--k", type=int, required=True)
    export.add_argument("--D", type=int, default=2)
    export.add_argument("--n", type=int, default=1)
    export.add_argument("--d", type=int, default=None)
    export.add_argument("--out", required=True, help="Polynomial JSON file")
    export.add_argument("--certificate", help="Also write the irreducibility certificate here")

    show = subparsers.add_parser("import", help="Read a polynomial or certificate file and print it")
    show.add_argument("file")
    show.add_argument("--kind", choices=[k.value for k in ArtifactKind], default=ArtifactKind.POLYNOMIAL.value)

    for sub in (cubic, quad, uni, verify, export, show):
        sub.add_argument("--budget", type=int, default=DEFAULT_CONFIG.budget.max_degree,
                         help="Degree budget for exact constructions (default: $DYNIRR_BUDGET or 5000)")
        sub.add_argument("--seed", type=int, default=0, help="Seed for spot checks and root finding")
        sub.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], default="WARNING",
                         help="Logging level (default: WARNING)")
        sub.add_argument("--log-file", help="Log to file")

    return parser


def _report_invalid(logger, result: ValidationResult) -> int:
    logger.error("Invalid job specification:")
    for error in result.errors:
        logger.error(f"  - {error}")
        print(f"error: {error}", file=sys.stderr)
    return EXIT_USAGE


def build_job_spec(args: argparse.Namespace, validator: Validator) -> ValidationResult:
    """Turn parsed arguments into a validated JobSpec."""
    errors: List[str] = []
    warnings: List[str] = []
    family = Family(args.command)
    survey = bool(getattr(args, "survey", False))

    checks: List[CheckKind] = []
    for name in str(args.check).split(","):
        try:
            checks.append(CheckKind(name.strip()))
        except ValueError:
            errors.append(f"unknown check '{name.strip()}'")

    def take(result: ValidationResult, default):
        errors.extend(result.errors)
        warnings.extend(result.warnings)
        return result.sanitized_value if result.is_valid else default

    k_values = [] if survey else take(validator.validate_k_values(args.k), [])
    D_values: List[int] = []
    n_values = [1]
    d_values: List[int] = []
    if family == Family.UNI:
        D_text = args.D if args.D is not None else (
            ",".join(map(str, DEFAULT_SURVEY_DEGREES)) if survey else None
        )
        if D_text is None:
            errors.append("uni needs --D")
        else:
            D_values = take(validator.validate_D_values(D_text, require_prime_power=survey), [])
        n_values = take(validator.validate_n_values(args.n), [1])
        if args.d is not None:
            d_values = take(validator.validate_int_list(args.d, "d", 2), [])

    if errors:
        return ValidationResult(False, errors, warnings)

    spec = JobSpec(
        family=family,
        k_values=k_values,
        D_values=D_values,
        n_values=n_values,
        d_values=d_values,
        checks=checks,
        survey=survey,
        output_directory=args.out,
        tolerance=args.tol,
        budget=args.budget,
        jobs=args.jobs,
        seed=args.seed,
    )
    result = validator.validate_job_spec(spec)
    result.warnings = warnings + result.warnings
    return result


def emit_outcome(outcome: RunOutcome, emit: EmitFormat) -> None:
    """Print the run summary, and every failing witness, to stdout."""
    if emit == EmitFormat.JSON:
        print(json.dumps(outcome.manifest, indent=2, sort_keys=True))
        return
    for result in outcome.results:
        mark = "ok  " if result.passed else "FAIL"
        print(f"{mark} {result.task.label:<40} {result.verdict.value}")
    summary = outcome.manifest["summary"]
    print(
        f"{summary['passed']}/{summary['tasks']} tasks passed"
        + (f", {summary['refused']} refused by budget" if summary["refused"] else "")
    )
    for failure in outcome.failures():
        print(f"\nfailing witness for {failure.task.label}:")
        print(json.dumps(failure.to_dict(), indent=2, sort_keys=True))
    if outcome.manifest_path:
        print(f"manifest: {outcome.manifest_path}")


def _verify_cert(args, validator: Validator, logger) -> int:
    from .certify import verify_certificate

    parser = ArtifactParserFactory.create_parser(ArtifactKind.CERTIFICATE, validator)
    result = parser.parse(args.file)
    if not result.is_valid:
        for error in result.errors:
            print(f"error: {error}", file=sys.stderr)
        return EXIT_USAGE
    cert = result.sanitized_value
    ok = verify_certificate(cert)
    logger.log_check_result("verify-cert", "pass" if ok else "fail", {"file": args.file})
    print(f"{args.file}: {cert.variant} at p={cert.p}, verdict {cert.verdict.value}, "
          f"{'verified' if ok else 'NOT verified'}")
    return EXIT_OK if ok else EXIT_FAILED


def _export(args, logger) -> int:
    from .certify import theorem_pipeline
    from . import cubicfam, quadfam
    from .unifam import UnicriticalContext

    family = Family(args.family)
    if family == Family.CUBIC:
        inst = cubicfam.build(args.k, args.budget)
        poly, label = inst.s, f"s_{args.k}"
        cert = cubicfam.certify_s(inst, strict=False) if args.certificate else None
    elif family == Family.QUADRAT:
        inst = quadfam.build(args.k, args.budget)
        poly, label = inst.r, f"r_{args.k}"
        cert = quadfam.certify_r(inst, strict=False) if args.certificate else None
    else:
        d = args.d if args.d is not None else args.D
        if args.D % d:
            print(f"error: d={d} does not divide D={args.D}", file=sys.stderr)
            return EXIT_USAGE
        ctx = UnicriticalContext(args.D, args.budget)
        poly, label = ctx.preperiodic_factor(args.k, args.n, d).poly, f"R_{args.k}_{args.n}_{d} (D={args.D})"
        cert = theorem_pipeline(args.D, args.k, args.n, d, ctx).certificate if args.certificate else None

    path = dump_polynomial(poly, args.out, label)
    print(f"wrote {label} (degree {poly.degree}) to {path}")
    if args.certificate:
        if cert is None:
            print("no certificate: the instance is outside the certification hypotheses", file=sys.stderr)
            return EXIT_FAILED
        cert_path = dump_certificate(cert, args.certificate, label)
        print(f"wrote certificate ({cert.verdict.value}) to {cert_path}")
    logger.info(f"Exported {label}")
    return EXIT_OK


def _import(args, validator: Validator) -> int:
    parser = ArtifactParserFactory.create_parser(ArtifactKind(args.kind), validator)
    result = parser.parse(args.file)
    if not result.is_valid:
        for error in result.errors:
            print(f"error: {error}", file=sys.stderr)
        return EXIT_USAGE
    value = result.sanitized_value
    if hasattr(value, "to_dict"):
        print(json.dumps(value.to_dict(), indent=2, sort_keys=True))
    else:
        print(repr(value) if not isinstance(value, list) else json.dumps(value, indent=2, sort_keys=True))
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit status."""
    parser = create_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return EXIT_USAGE

    config = DynirrConfig()
    config.logging.level = args.log_level
    config.logging.file_path = args.log_file
    logger = setup_logging(config.logging)
    logger.set_context(command=args.command)

    try:
        validator = Validator(config.validation)
        budget = validator.validate_budget(args.budget)
        if not budget.is_valid:
            return _report_invalid(logger, budget)

        if args.command == "verify-cert":
            return _verify_cert(args, validator, logger)
        if args.command == "export":
            return _export(args, logger)
        if args.command == "import":
            return _import(args, validator)

        spec_result = build_job_spec(args, validator)
        if not spec_result.is_valid:
            return _report_invalid(logger, spec_result)
        for warning in spec_result.warnings:
            logger.warning(warning)

        spec = spec_result.sanitized_value
        config.budget.max_degree = spec.budget
        config.jobs = spec.jobs
        config.emit = EmitFormat(args.emit)
        if spec.output_directory:
            config.output_directory = spec.output_directory
            Path(spec.output_directory).mkdir(parents=True, exist_ok=True)

        outcome = JobRunner(spec, config).run()
        emit_outcome(outcome, config.emit)

        metrics = logger.get_metrics()
        if metrics:
            logger.debug("Metrics:")
            for key, value in metrics.items():
                logger.debug(f"  {key}: {value}")
        return outcome.exit_code

    except KeyboardInterrupt:
        logger.warning("Operation cancelled by user")
        return EXIT_INTERRUPTED

    except DynirrError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED

    except Exception as e:
        logger.critical(f"Unexpected error: {e}", exc_info=True)
        return EXIT_FAILED
