"""Command-line interface for radinv."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Optional, Sequence

from pydantic import ValidationError

from radinv import config
from radinv import io as io_utils
from radinv.dualmat import (
    KINDS,
    DualMatrix,
    dual_generalized_inverse,
    radical_split,
    regularity_certificate,
    verify_dual_inverse,
)
from radinv.errors import BudgetError, EquivalenceError, InputError, NonexistenceError, RadinvError
from radinv.finite_ring import THEOREMS, RingSpec, campaign
from radinv.matrices import Matrix
from radinv.models import CampaignParams, CertificateModel

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    """Construct and return the top-level CLI parser."""
    parser = argparse.ArgumentParser(
        prog="radinv",
        description="Compute and certify generalized inverses of dual matrices and run theorem campaigns.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Log progress at INFO level.")
    subparsers = parser.add_subparsers(dest="command", metavar="<command>")

    _add_compute_parser(subparsers)
    _add_verify_parser(subparsers)
    _add_campaign_parser(subparsers)
    _add_split_parser(subparsers)
    return parser


def _add_compute_parser(subparsers: argparse._SubParsersAction[argparse.ArgumentParser]) -> None:
    """Register the `compute` subcommand."""
    compute_parser = subparsers.add_parser(
        "compute",
        help="Compute a generalized inverse of a dual matrix and write its certificate.",
    )
    compute_parser.add_argument("--kind", choices=KINDS, required=True, help="Which inverse to compute.")
    compute_parser.add_argument("--a", type=Path, required=True, help="Matrix or DualMatrix JSON for Â.")
    compute_parser.add_argument("--b", type=Path, help="Prescription B̂ for bc and outer.")
    compute_parser.add_argument("--c", type=Path, help="Prescription Ĉ for bc and outer.")
    compute_parser.add_argument("--d", type=Path, help="Prescription D̂ for along (defaults to --b).")
    compute_parser.add_argument("--l", type=int, help="Starting exponent for the Drazin route.")
    compute_parser.add_argument("--a-plus", type=Path, dest="a_plus", help="Reflexive inverse of the real part of Â.")
    compute_parser.add_argument("--b-plus", type=Path, dest="b_plus", help="Reflexive inverse of the real part of B̂.")
    compute_parser.add_argument("--c-plus", type=Path, dest="c_plus", help="Reflexive inverse of the real part of Ĉ.")
    compute_parser.add_argument(
        "-o",
        "--out",
        type=Path,
        default=Path("radinv_certificate.json"),
        help="Destination certificate path (default: ./radinv_certificate.json).",
    )
    compute_parser.set_defaults(handler=_handle_compute)


def _add_verify_parser(subparsers: argparse._SubParsersAction[argparse.ArgumentParser]) -> None:
    """Register the `verify` subcommand."""
    verify_parser = subparsers.add_parser("verify", help="Re-check a certificate written by `compute`.")
    verify_parser.add_argument("--certificate", type=Path, required=True, help="Certificate JSON to check.")
    verify_parser.set_defaults(handler=_handle_verify)


def _add_campaign_parser(subparsers: argparse._SubParsersAction[argparse.ArgumentParser]) -> None:
    """Register the `campaign` subcommand."""
    campaign_parser = subparsers.add_parser(
        "campaign",
        help="Check a theorem against brute force over a small finite ring.",
    )
    campaign_parser.add_argument("--theorem", choices=sorted(THEOREMS), required=True)
    campaign_parser.add_argument("--ring", required=True, help="Ring spec such as zn:4, t2z:2, m2z:2, dual:3, series:2:3.")
    campaign_parser.add_argument("--trials", type=int, help="Sample this many tuples instead of walking all of them.")
    campaign_parser.add_argument("--seed", type=int, help=f"Sampling seed (default: {config.DEFAULT_SEED}).")
    campaign_parser.add_argument(
        "--budget",
        type=int,
        default=config.EXHAUSTIVE_LIMIT,
        help=f"Largest tuple space walked exhaustively (default: {config.EXHAUSTIVE_LIMIT}).",
    )
    campaign_parser.add_argument(
        "-o",
        "--out",
        type=Path,
        default=Path("radinv_campaign.json"),
        help="Destination report path (default: ./radinv_campaign.json).",
    )
    campaign_parser.set_defaults(handler=_handle_campaign)


def _add_split_parser(subparsers: argparse._SubParsersAction[argparse.ArgumentParser]) -> None:
    """Register the `split` subcommand."""
    split_parser = subparsers.add_parser(
        "split",
        help="Write the canonical radical split Â = (I + εA1) A (I + εA2).",
    )
    split_parser.add_argument("--a", type=Path, required=True, help="Matrix or DualMatrix JSON for Â.")
    split_parser.add_argument("--a-plus", type=Path, dest="a_plus", help="Reflexive inverse of the real part of Â.")
    split_parser.add_argument("-o", "--out", type=Path, default=Path("radinv_split.json"))
    split_parser.set_defaults(handler=_handle_split)


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point for console_scripts."""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    handler: Callable[[argparse.Namespace], int] | None = getattr(args, "handler", None)
    if handler is None:
        parser.print_help()
        return EXIT_INPUT

    try:
        return handler(args)
    except KeyboardInterrupt:
        print("Aborted by user.", file=sys.stderr)
        return 130
    except (InputError, BudgetError, ValidationError) as exc:
        print(f"Input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NonexistenceError as exc:
        print(f"Does not exist: {exc.reason}", file=sys.stderr)
        return EXIT_NEGATIVE
    except EquivalenceError as exc:
        logger.error(f"internal consistency check failed: {exc}")
        print(f"Internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except RadinvError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE


def _optional_dual(path: Optional[Path]) -> Optional[DualMatrix]:
    return None if path is None else io_utils.load_dual_matrix(path.expanduser())


def _optional_matrix(path: Optional[Path]) -> Optional[Matrix]:
    return None if path is None else io_utils.load_matrix(path.expanduser())


def _handle_compute(args: argparse.Namespace) -> int:
    """Implementation for the `radinv compute` command."""
    A = io_utils.load_dual_matrix(args.a.expanduser())
    cert = dual_generalized_inverse(
        args.kind,
        A,
        B=_optional_dual(args.b),
        C=_optional_dual(args.c),
        D=_optional_dual(args.d),
        l=args.l,
        a_plus=_optional_matrix(args.a_plus),
        b_plus=_optional_matrix(args.b_plus),
        c_plus=_optional_matrix(args.c_plus),
    )
    output_path = args.out.expanduser().resolve()
    io_utils.save_json(output_path, io_utils.certificate_to_model(cert))
    if cert.exists:
        print(f"{args.kind} inverse exists; certificate written to {output_path}")
        return EXIT_OK
    print(f"{args.kind} inverse does not exist ({cert.reason}); certificate written to {output_path}")
    return EXIT_NEGATIVE


def _handle_verify(args: argparse.Namespace) -> int:
    """Implementation for the `radinv verify` command."""
    model = io_utils.load_model(args.certificate.expanduser(), CertificateModel)
    A = io_utils.dual_from_model(model.input)
    B = None if model.b is None else io_utils.dual_from_model(model.b)
    C = None if model.c is None else io_utils.dual_from_model(model.c)

    if not model.exists:
        return _verify_nonexistence(model, A, B, C)

    X = io_utils.dual_from_model(model.witness)  # type: ignore[arg-type]
    if X.shape != (A.shape[1], A.shape[0]):
        print(f"Witness shape {X.shape} does not match input shape {A.shape}", file=sys.stderr)
        return EXIT_NEGATIVE
    full = X
    if model.padded_witness is not None:
        full = io_utils.dual_from_model(model.padded_witness)
        N = max(A.shape)
        if full.shape != (N, N) or full.crop(*X.shape) != X:
            print(f"Padded witness {full.shape} does not crop to the witness", file=sys.stderr)
            return EXIT_NEGATIVE
    report, _ = verify_dual_inverse(model.kind, A, full, B, C, model.index)
    if not report.passed:
        print(f"Verification failed: {report.first_failure}", file=sys.stderr)
        return EXIT_NEGATIVE
    print(f"{model.kind} certificate verified: all residuals are zero")
    return EXIT_OK


def _verify_nonexistence(model: CertificateModel, A: DualMatrix, B: Optional[DualMatrix], C: Optional[DualMatrix]) -> int:
    cert = dual_generalized_inverse(
        model.kind,
        A,
        B=B,
        C=C,
        l=model.l,
        a_plus=None if model.a_plus is None else io_utils.matrix_from_model(model.a_plus),
        b_plus=None if model.b_plus is None else io_utils.matrix_from_model(model.b_plus),
        c_plus=None if model.c_plus is None else io_utils.matrix_from_model(model.c_plus),
        closed_form=False,
    )
    if cert.exists:
        print(f"Certificate claims nonexistence but a {model.kind} inverse exists", file=sys.stderr)
        return EXIT_NEGATIVE
    recorded = None if model.residual is None else io_utils.dual_from_model(model.residual)
    if recorded != cert.residual:
        print("Recorded residual does not match the recomputed one", file=sys.stderr)
        return EXIT_NEGATIVE
    print(f"nonexistence of the {model.kind} inverse verified ({cert.reason})")
    return EXIT_OK


def _handle_campaign(args: argparse.Namespace) -> int:
    """Implementation for the `radinv campaign` command."""
    params = CampaignParams(
        theorem=args.theorem,
        ring=args.ring,
        budget=args.budget,
        trials=args.trials,
        seed=args.seed,
    )
    spec = RingSpec.parse(params.ring)
    report = campaign(params.theorem, spec, budget=params.budget, trials=params.trials, seed=params.seed)
    output_path = args.out.expanduser().resolve()
    io_utils.save_json(output_path, io_utils.campaign_to_model(report))
    print(
        f"{report.theorem_id} on {spec.label}: {report.mode}, {report.tuples_tested} tuple(s) tested, "
        f"{len(report.counterexamples)} counterexample(s); report written to {output_path}"
    )
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def _handle_split(args: argparse.Namespace) -> int:
    """Implementation for the `radinv split` command."""
    A = io_utils.load_dual_matrix(args.a.expanduser())
    a_plus = _optional_matrix(args.a_plus)
    cert = regularity_certificate(A, a_plus)
    split = radical_split(A, cert.a_plus) if cert.regular else None
    output_path = args.out.expanduser().resolve()
    io_utils.save_json(output_path, io_utils.split_to_model(A, cert, split))
    if split is None:
        print(f"dual matrix is not regular; residual written to {output_path}")
        return EXIT_NEGATIVE
    print(f"radical split written to {output_path}")
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
