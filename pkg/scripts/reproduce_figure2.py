#!/usr/bin/env python3
"""Emit the deviation-vs-cycles curve for the 50S-51P reference scenario.

Writes figure2.csv next to this script unless an output path is given.
"""

import argparse
import sys
from pathlib import Path

from gravatom.cli import main as gravatom_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--strain", default="1e-20")
    parser.add_argument("--omega", default="47kHz")
    parser.add_argument("--cycles", default="1000")
    parser.add_argument(
        "--output", default=str(Path(__file__).resolve().parent / "figure2.csv")
    )
    args = parser.parse_args()
    return gravatom_main([
        "figure2",
        "--lower", "50s", "--upper", "51p",
        "--strain", args.strain,
        "--omega", args.omega,
        "--cycles", args.cycles,
        "--output", args.output,
    ])


if __name__ == "__main__":
    sys.exit(main())
