#!/usr/bin/env python3
"""Sweep the QFI and Bures metric of the diagonal families.

Writes classical_bit_scan.csv and trig_scan.csv; at every regular point
the four_g_minus_qfi column should sit at numerical zero, which is the
quickest visual check that metric and information agree away from the
critical parameter values.
"""

import argparse
from pathlib import Path

from qfidisc import cli


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--output-dir", default="results", type=Path)
    args = parser.parse_args()
    args.output_dir.mkdir(parents=True, exist_ok=True)

    jobs = [
        ("classical_bit_scan.csv", ["qfi-scan", "--model", "classical-bit", "--grid", "0.02:0.98:49"]),
        ("trig_scan.csv", ["qfi-scan", "--model", "trig", "--grid", "0.01:1.56:78"]),
    ]
    for filename, argv in jobs:
        out = args.output_dir / filename
        code = cli.main(argv + ["--output", str(out)])
        print(f"{out}: exit {code}")


if __name__ == "__main__":
    main()
