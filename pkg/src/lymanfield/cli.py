"""Command-line entry point; science parameters come from the config file."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import ConfigError, parse_config
from .runner import run

__all__ = ["main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lymanfield",
        description=(
            "Decay amplitudes, photon energy density and far-field tails of "
            "the hydrogen Lyman-alpha single-photon emission"
        ),
    )
    parser.add_argument("--config", required=True, help="path to the run config")
    parser.add_argument("--out", default=None, help="output CSV path")
    parser.add_argument("--cache", default=None, help="scalar result cache (JSON)")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker processes for scans")
    parser.add_argument("--verbose", action="store_true")
    parser.add_argument("--no-plot", action="store_true",
                        help="skip the PNG figure next to the CSV")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        text = Path(args.config).read_text()
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 2
    try:
        cfg = parse_config(text)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    return run(
        cfg,
        out=args.out,
        cache_path=args.cache,
        threads=args.threads,
        verbose=args.verbose,
        plot=not args.no_plot,
    )


if __name__ == "__main__":
    raise SystemExit(main())
