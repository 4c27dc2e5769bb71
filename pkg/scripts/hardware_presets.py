#!/usr/bin/env python3
"""Print both hardware preset reports: the neutral-atom light-cone budget and
the superconducting critical-coupling curves."""
import argparse

from codebath.lifetimes import preset_report


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--preset", choices=["neutral_atom", "superconducting", "both"],
                        default="both")
    args = parser.parse_args()

    names = ["neutral_atom", "superconducting"] if args.preset == "both" else [args.preset]
    for name in names:
        rep = preset_report(name)
        print(f"== {name}")
        for key, value in rep.check_values.items():
            print(f"  {key} = {value!r}")
        if rep.report is not None:
            print(f"  j(L=100) = {rep.report.j_L!r}")
            print(f"  t_K/tau  = {rep.report.t_K_over_tau!r}")
        if rep.lambda_critical_curve is not None:
            for z, L, lam_c in rep.lambda_critical_curve:
                print(f"  lambda_c[z={z:g}, L={L}] = {lam_c!r}")


if __name__ == "__main__":
    main()
