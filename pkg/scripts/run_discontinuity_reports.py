#!/usr/bin/env python3
"""Classify every built-in rank-change point and print the reports.

Covers the second-kind point of the classical bit, the jump points of the
trig family, and the transverse-noise qubit at several evolution times.
"""

import argparse
import json
import math
from pathlib import Path

from qfidisc import discontinuity, models


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--output-dir", default="results", type=Path)
    args = parser.parse_args()
    args.output_dir.mkdir(parents=True, exist_ok=True)

    cases = [
        ("classical_bit_p0", models.make_model("classical-bit"), 0.0),
        ("classical_bit_p1", models.make_model("classical-bit"), 1.0),
        ("trig_theta0", models.make_model("trig"), 0.0),
        ("trig_theta_pi_half", models.make_model("trig"), math.pi / 2),
    ]
    for t in (0.5, 1.0, 2.0):
        cases.append(
            (f"transverse_t{t}", models.make_model("transverse-qubit", kappa=1.0, t=t), 0.0)
        )

    for tag, model, theta_bar in cases:
        report = discontinuity.classify(model, theta_bar)
        payload = report.to_json()
        out = args.output_dir / f"discontinuity_{tag}.json"
        out.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        print(
            f"{tag}: kind={report.kind} speed={report.speed:.3e} "
            f"accel={report.acceleration:.6f} delta_q={payload['delta_q_measured']}"
        )


if __name__ == "__main__":
    main()
