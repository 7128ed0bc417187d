#!/usr/bin/env python3
"""Monte Carlo Cramér-Rao experiments: violations and a regular baseline.

At every rank-change point of the built-in models the replicate variance
comes out exactly zero while the fixed-rank bound stays positive (or
becomes inapplicable), so the bound is violated.  A regular point of the
classical bit is included to show the bound holding at the usual 1/(M Q)
scale.
"""

import argparse
import json
import math
from pathlib import Path

from qfidisc import estimation, models


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--output-dir", default="results", type=Path)
    parser.add_argument("--samples", type=int, default=100)
    parser.add_argument("--replicates", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=1234)
    args = parser.parse_args()
    args.output_dir.mkdir(parents=True, exist_ok=True)

    cases = [
        ("classical_bit_p0", models.make_model("classical-bit"), 0.0),
        ("classical_bit_p1", models.make_model("classical-bit"), 1.0),
        ("trig_theta0", models.make_model("trig"), 0.0),
        ("trig_theta_pi_half", models.make_model("trig"), math.pi / 2),
        ("transverse_t1", models.make_model("transverse-qubit", kappa=1.0, t=1.0), 0.0),
        ("classical_bit_regular_p03", models.make_model("classical-bit"), 0.3),
    ]
    for tag, model, theta in cases:
        n_samples = args.samples if "regular" not in tag else 10**4
        report = estimation.run_cr_experiment(
            model, theta, n_samples=n_samples, n_replicates=args.replicates, seed=args.seed
        )
        out = args.output_dir / f"cr_experiment_{tag}.json"
        out.write_text(json.dumps(report.to_json(), indent=2) + "\n", encoding="utf-8")
        bound = "inf" if math.isinf(report.cr_bound) else f"{report.cr_bound:.4g}"
        print(
            f"{tag}: variance={report.sample_variance:.4g} bound={bound} "
            f"violated={report.violated}"
        )


if __name__ == "__main__":
    main()
