"""Command line: ``qrlab verify``, ``qrlab prime``, ``qrlab conjectures``."""

from __future__ import annotations

import argparse
import logging
import sys

from .arith_core import CompositeModulusError
from .class_number import IDENTITY_IDS
from .scan_harness import EXIT_USAGE, ScanConfig, conjecture_table, prime_report, scan


def _ids(text: str) -> tuple[str, ...]:
    ids = tuple(s.strip() for s in text.split(",") if s.strip())
    unknown = [i for i in ids if i not in IDENTITY_IDS]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown identity ids: {', '.join(unknown)}")
    return ids


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qrlab", description="Quadratic residues and h(-p) for primes p = 4n - 1.")
    ap.add_argument("-v", "--verbose", action="store_true", help="log warnings and progress")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check every identity for each prime 4n-1 in a range of n")
    v.add_argument("--n-min", type=int, required=True)
    v.add_argument("--n-max", type=int, required=True)
    v.add_argument("--ids", type=_ids, default=IDENTITY_IDS, help="comma-separated subset, e.g. I01,I11,C1")
    v.add_argument("--format", choices=("csv", "json", "human"), default="csv")
    v.add_argument("--out", help="write the report here instead of stdout")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--dirichlet", action="store_true", help="also cross-check h against the Dirichlet series")
    v.add_argument("--max-terms", type=int, default=None, help="series terms per prime (default 50p)")

    pr = sub.add_parser("prime", help="dossier for a single prime 4n-1")
    pr.add_argument("--n", type=int, required=True)

    c = sub.add_parser("conjectures", help="J_n/n and radical-floor ratio table")
    c.add_argument("--n-min", type=int, required=True)
    c.add_argument("--n-max", type=int, required=True)
    c.add_argument("--out")
    c.add_argument("--jobs", type=int, default=1)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(message)s")

    if args.command == "verify":
        cfg = ScanConfig(args.n_min, args.n_max, args.ids, args.format, args.out, args.jobs,
                         args.dirichlet, args.max_terms)
        return scan(cfg)
    if args.command == "conjectures":
        cfg = ScanConfig(args.n_min, args.n_max, output_path=args.out, parallelism=args.jobs)
        return conjecture_table(cfg)
    try:
        sys.stdout.write(prime_report(args.n))
    except (CompositeModulusError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
