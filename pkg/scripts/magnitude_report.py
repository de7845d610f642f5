#!/usr/bin/env python3
"""Print the magnitude-claims comparison report (informational).

Compares the computed detuning enhancement, Rabi-deviation ratio and H110-alpha
wavelength shift against their published reference magnitudes, with the
assumptions spelled out in the note column.
"""

import sys

from gravatom.cli import main as gravatom_main

if __name__ == "__main__":
    sys.exit(gravatom_main(["verify", "--suite", "claims", *sys.argv[1:]]))
