#!/usr/bin/env python3
"""Build and verify the E7 construction from a Fano labeling of quaternion algebras."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

# Add the parent directory to Python path so we can import the toolkit package
sys.path.insert(0, str(Path(__file__).parent.parent))

from e7forge import E7Pipeline, build_golden, load_pipeline_config


def parse_cli_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(description=__doc__)
    subparsers = parser.add_subparsers(dest="action", required=True)

    run = subparsers.add_parser("run", help="Run build/verify commands and write JSON reports")
    run.add_argument(
        "--config",
        type=Path,
        required=True,
        help="Pipeline JSON ({labeling, commands, ...}) or a bare labeling file",
    )
    run.add_argument("--seed", type=int, default=None, help="Override the seed recorded in every report")
    run.add_argument(
        "--primes",
        type=int,
        default=None,
        help="Number of primes above 2**20 used for modular certificates (default: 8)",
    )
    run.add_argument("--out", type=Path, default=None, help="Directory for the reports (default: reports/)")

    golden = subparsers.add_parser("golden", help="Write the structure constants of the assembled algebra")
    golden.add_argument("--config", type=Path, required=True, help="Pipeline JSON or bare labeling file")
    golden.add_argument("--out", type=Path, required=True, help="Path of the golden JSON file")
    golden.add_argument("--seed", type=int, default=None, help="Override the seed")
    return parser.parse_args(argv)


def main(argv: Optional[List[str]] = None) -> int:
    args = parse_cli_args(argv)

    try:
        config = load_pipeline_config(
            args.config,
            seed=args.seed,
            prime_count=getattr(args, "primes", None),
            output_dir=getattr(args, "out", None) if args.action == "run" else None,
        )
        if args.action == "golden":
            build_golden(config, args.out)
            return 0
        pipeline = E7Pipeline(config)
    except KeyboardInterrupt:
        print("\nScript interrupted by user")
        return 1
    except (OSError, ValueError) as exc:
        print(f"Configuration error: {exc}")
        return 1

    try:
        return pipeline.run()
    except KeyboardInterrupt:
        print("\nScript interrupted by user")
        return 1


if __name__ == "__main__":
    sys.exit(main())
