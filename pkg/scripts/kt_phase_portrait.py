#!/usr/bin/env python3
"""Export flow trajectories over a (j_perp, jz) grid for phase-portrait plots.

The grid spans the localized wedge (jz < -j_perp), both separatrices and the
runaway region, matching the classic two-phase picture.  Output is plot-ready
CSV: trajectory_id, l, j_perp, j_z, terminal_label, separatrix.
"""
import argparse
import csv

from codebath.rg_flow import FlowOptions
from codebath.sweeps import emit_phase_portrait


def build_grid():
    grid = []
    for j_perp in (0.25, 0.75, 1.25, 1.75, 2.25):
        for jz in (-3.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0):
            grid.append((j_perp, jz))
    # separatrix starts, labelled in the output
    for j_perp in (0.5, 1.0, 1.5):
        grid.append((j_perp, -j_perp))
        grid.append((j_perp, j_perp))
    return grid


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="kt_portrait.csv")
    parser.add_argument("--l-max", type=float, default=30.0)
    args = parser.parse_args()

    opts = FlowOptions(j_max=4.0, l_max=args.l_max)
    rows = emit_phase_portrait(build_grid(), opts)
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["trajectory_id", "l", "j_perp", "j_z", "terminal_label", "separatrix"])
        writer.writerows(rows)
    labels = {}
    for row in rows:
        labels[row[0]] = row[4]
    print(f"wrote {args.out}: {len(labels)} trajectories, {len(rows)} samples")
    for kind in ("StrongCoupling", "Localized", "CutoffReached"):
        print(f"  {kind}: {sum(1 for v in labels.values() if v == kind)}")


if __name__ == "__main__":
    main()
