#!/usr/bin/env python3
"""Sweep the three decomposition routes over strain for one source state.

Prints, per strain, the dominant same-n Delta-l = 2 coefficient from the
numeric oracle, the series route and the closed form, plus the oracle/closed
ratio -- the approximation audit in one table.
"""

import argparse
import sys

from gravatom import (
    AtomicState,
    QuadratureSpec,
    Strain,
    closed_form_coefficients,
    overlap_numeric,
    series_decomposition,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=3)
    parser.add_argument("--strains", type=float, nargs="+",
                        default=[1e-3, 1e-4, 1e-5])
    parser.add_argument("--k-max", type=int, default=3)
    args = parser.parse_args()

    source = AtomicState(args.n, 0)
    target = AtomicState(args.n, 2)
    quad = QuadratureSpec()
    print("strain,numeric,series,closed_form,numeric_over_closed")
    for sp in args.strains:
        strain = Strain(sp)
        numeric = overlap_numeric(target, source, strain, quad)
        series = series_decomposition(source, strain, args.k_max).coefficient(target)
        closed = closed_form_coefficients(source, strain).c_plus2.at(sp)
        print(f"{sp!r},{numeric!r},{series!r},{closed!r},{numeric / closed!r}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
