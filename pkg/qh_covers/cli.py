# Command line front end: qh-covers build | domdim | hn | ext | verify-qh | paper-check.
#
# Exit codes: 0 success, 1 expectation failure, 2 input error.

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Sequence

from .config import Settings, configure_logging
from .Core.algebra import Representation, regular_module
from .Core.exceptions import DomainMismatchError, InvalidInputError, NotProjectiveError, QHCoversError
from .Core.homology import ext
from .Core.qh_structure import HeredityChain, standard_module, verify_split_qh
from .Core.ring_arith import CoefficientDomain
from .Core.serialization import (AlgebraBundle, bundle_sidecar, load_bundle, read_json, representation_from_json,
                                 save_bundle)
from .Covers.cover import CoverSpec
from .Covers.dimensions import domdim_algebra, hn_dim_proj, hn_dim_standard, inf_domdim_standards
from .fixture_check import SUITES, run_suite
from .Schur.schur_algebra import schur_algebra, schur_heredity_chain
from .Schur.symmetric_group import hecke_algebra, symmetric_group_algebra

logger = logging.getLogger(__name__)

FAMILIES = ("schur", "qschur", "symgroup", "hecke")
CATEGORIES = ("proj", "standard")

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


def _emit(obj: Any) -> None:
    print(json.dumps(obj, indent=1, sort_keys=True, default=str))


def cmd_build(args: argparse.Namespace, settings: Settings) -> int:
    domain = CoefficientDomain.parse(args.ring)
    u = domain.element(args.u)
    if args.family in ("schur", "qschur"):
        n = args.n if args.n is not None else args.d
        if args.family == "schur" and u != domain.element(1):
            raise InvalidInputError("the classical Schur algebra takes u = 1; use qschur")
        data = schur_algebra(n, args.d, domain, u, family=args.family)
        algebra = data.algebra
        side = bundle_sidecar(args.family, n, args.d, domain.format_element(u), data.idempotent, algebra,
                              schur_heredity_chain(data))
    else:
        if args.family == "symgroup":
            algebra = symmetric_group_algebra(args.d, domain)
        else:
            algebra = hecke_algebra(args.d, u, domain)
        # the cover (A, A) with the trivial chain
        chain = HeredityChain(algebra, ("1",), (algebra.unit,))
        side = bundle_sidecar(args.family, None, args.d, domain.format_element(u), algebra.unit, algebra, chain)
    path, side_path = save_bundle(args.output, algebra, side)
    print(f"wrote {algebra.name} (rank {algebra.rank}) to {path} and {side_path}")
    return EXIT_OK


def _cover(bundle: AlgebraBundle) -> CoverSpec:
    if bundle.idempotent is None:
        raise InvalidInputError(f"{bundle.algebra.name} has no idempotent_e in its sidecar")
    return CoverSpec.from_idempotent(bundle.algebra, bundle.idempotent, chain=bundle.chain)


def _chain(bundle: AlgebraBundle) -> HeredityChain:
    if bundle.chain is None:
        raise InvalidInputError(f"{bundle.algebra.name} has no heredity chain in its sidecar")
    return bundle.chain


def cmd_domdim(args: argparse.Namespace, settings: Settings) -> int:
    bundle = load_bundle(args.algebra)
    cover = _cover(bundle)
    if args.standards:
        report = inf_domdim_standards(cover.algebra, cover, _chain(bundle), args.cap, settings.workers)
    else:
        report = domdim_algebra(cover, args.cap)
    _emit(report.to_json())
    return EXIT_OK


def cmd_hn(args: argparse.Namespace, settings: Settings) -> int:
    bundle = load_bundle(args.algebra)
    cover = _cover(bundle)
    if args.category == "proj":
        report = hn_dim_proj(cover, args.cap)
    else:
        report = hn_dim_standard(cover, _chain(bundle), args.cap, settings.workers)
    _emit(report.to_json())
    return EXIT_OK


def _module(spec: str, bundle: AlgebraBundle) -> Representation:
    """"regular", "delta:<weight>" or the path of a module file."""
    if spec == "regular":
        return regular_module(bundle.algebra)
    if spec.startswith("delta:"):
        chain = _chain(bundle)
        return standard_module(chain, chain.index(spec.split(":", 1)[1])).module
    return representation_from_json(read_json(spec), bundle.algebra, Path(spec).stem)


def cmd_ext(args: argparse.Namespace, settings: Settings) -> int:
    bundle = load_bundle(args.algebra)
    m, n = _module(args.source, bundle), _module(args.target, bundle)
    groups = ext(m, n, args.cap)
    _emit({"kind": "ext", "source": args.source, "target": args.target, "cap": args.cap,
           "groups": [g.evidence() for g in groups]})
    return EXIT_OK


def cmd_verify_qh(args: argparse.Namespace, settings: Settings) -> int:
    bundle = load_bundle(args.algebra)
    verdict = verify_split_qh(_chain(bundle))
    _emit({"passed": verdict.passed, "axioms": verdict.axioms, "evidence": verdict.evidence})
    return EXIT_OK if verdict.passed else EXIT_FAILED


def cmd_paper_check(args: argparse.Namespace, settings: Settings) -> int:
    result = run_suite(args.suite, args.cap, settings, include_d4=args.include_d4)
    if args.json == "-":
        print(result.dumps())
    else:
        print(result.frame().to_string(index=False))
        print(f"\n{args.suite}: {'PASSED' if result.passed else 'FAILED'}")
        if args.json:
            Path(args.json).write_text(result.dumps() + "\n")
            logger.info("wrote %s", args.json)
    return EXIT_OK if result.passed else EXIT_FAILED


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qh-covers",
                                     description="Dominant and Hemmer-Nakano dimensions of covers of algebras.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    parser.add_argument("--workers", type=int, default=None, help="worker threads (default QHC_WORKERS)")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_cap(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("--cap", type=int, default=settings.cap, help="degree cap (default QHC_CAP or 8)")
        return p

    p = sub.add_parser("build", help="write an algebra file and its sidecar")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("output", help="path of the algebra JSON file")
    p.add_argument("--n", type=int, default=None, help="defaults to --d")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--ring", required=True, help="f<p>, zloc<p> or q")
    p.add_argument("--u", default="1", help="deformation parameter (q = u^-2)")
    p.set_defaults(func=cmd_build)

    p = with_cap(sub.add_parser("domdim", help="relative dominant dimension of an algebra file"))
    p.add_argument("algebra")
    p.add_argument("--standards", action="store_true", help="inf over the standard modules instead")
    p.set_defaults(func=cmd_domdim)

    p = with_cap(sub.add_parser("hn", help="Hemmer-Nakano dimension of an algebra file"))
    p.add_argument("algebra")
    p.add_argument("--category", choices=CATEGORIES, default="proj")
    p.set_defaults(func=cmd_hn)

    p = with_cap(sub.add_parser("ext", help="Ext groups between two modules"))
    p.add_argument("algebra")
    p.add_argument("source", help='"regular", "delta:<weight>" or a module file')
    p.add_argument("target", help='"regular", "delta:<weight>" or a module file')
    p.set_defaults(func=cmd_ext)

    p = sub.add_parser("verify-qh", help="check the split quasi-hereditary axioms of the sidecar chain")
    p.add_argument("algebra")
    p.set_defaults(func=cmd_verify_qh)

    p = with_cap(sub.add_parser("paper-check", help="run the fixture suite"))
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--include-d4", action="store_true", help="also run the opt-in d = 4 rows")
    p.add_argument("--json", default=None, help='write the JSON report to a file ("-" for standard output)')
    p.set_defaults(func=cmd_paper_check)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        settings = Settings.from_env()
    except InvalidInputError as exc:
        print(f"qh-covers: {exc}", file=sys.stderr)
        return EXIT_INPUT
    args = build_parser(settings).parse_args(argv)
    configure_logging(settings, args.verbose)
    settings = settings.override(workers=args.workers)
    if getattr(args, "cap", 2) < 2 or settings.workers < 1:
        print("qh-covers: --cap must be at least 2 and --workers at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return int(args.func(args, settings))
    except (InvalidInputError, DomainMismatchError, NotProjectiveError, OSError) as exc:
        print(f"qh-covers: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except QHCoversError as exc:
        logger.error("%s", exc)
        print(f"qh-covers: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
