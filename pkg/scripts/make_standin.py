"""Regenerate data/credit_standin.csv, the synthetic credit-ratio cloud.

A stand-in for a proprietary firm-fundamentals panel: 3605 firms, five
accounting ratios, and a rare binary failure flag concentrated in the
low-liquidity / negative-earnings corner of the cloud. Everything is drawn
from a fixed seed, so rerunning this script reproduces the shipped file
byte for byte.

Usage: python3 scripts/make_standin.py [output_path]
"""

from __future__ import annotations

import csv
import sys
from pathlib import Path

import numpy as np

N_FIRMS = 3605
SEED = 20240315
COLUMNS = ("wc_ta", "re_ta", "ebit_ta", "mve_tl", "sales_ta")


def make_table(rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Ratio matrix (n, 5) and 0/1 failure flags (n,)."""
    n_distressed = 420
    n_healthy = N_FIRMS - n_distressed

    # Healthy block: positive working capital, accumulated earnings,
    # modest profitability, comfortable market-value cover.
    healthy = np.column_stack([
        rng.normal(0.28, 0.16, n_healthy),       # wc_ta
        rng.normal(0.32, 0.20, n_healthy),       # re_ta
        rng.normal(0.09, 0.06, n_healthy),       # ebit_ta
        rng.lognormal(0.5, 0.55, n_healthy),     # mve_tl
        rng.normal(1.15, 0.45, n_healthy),       # sales_ta
    ])

    # Distressed corner: eroded liquidity, losses, thin market cover.
    distressed = np.column_stack([
        rng.normal(-0.06, 0.10, n_distressed),
        rng.normal(-0.28, 0.18, n_distressed),
        rng.normal(-0.07, 0.05, n_distressed),
        rng.lognormal(-1.0, 0.45, n_distressed),
        rng.normal(0.85, 0.40, n_distressed),
    ])

    ratios = np.vstack([healthy, distressed])
    ratios[:, 4] = np.abs(ratios[:, 4])  # turnover cannot go negative

    # Failure is a noisy function of the classic weighted score, so flags
    # cluster in the distressed corner without tracing a clean boundary.
    score = (1.2 * ratios[:, 0] + 1.4 * ratios[:, 1] + 3.3 * ratios[:, 2]
             + 0.6 * ratios[:, 3] + 1.0 * ratios[:, 4])
    p_fail = 1.0 / (1.0 + np.exp(4.0 * (score - 0.55)))
    fail = (rng.random(N_FIRMS) < p_fail).astype(int)

    order = rng.permutation(N_FIRMS)
    return ratios[order], fail[order]


def main(argv: list[str]) -> int:
    out = Path(argv[1]) if len(argv) > 1 else (
        Path(__file__).resolve().parents[1] / "data" / "credit_standin.csv")
    out.parent.mkdir(parents=True, exist_ok=True)

    ratios, fail = make_table(np.random.default_rng(SEED))
    with out.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["firm_id", *COLUMNS, "fail"])
        for i in range(N_FIRMS):
            writer.writerow([f"F{i + 1:04d}",
                             *(f"{v:.6f}" for v in ratios[i]),
                             fail[i]])
    print(f"wrote {out} ({N_FIRMS} firms, {int(fail.sum())} failures)")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
