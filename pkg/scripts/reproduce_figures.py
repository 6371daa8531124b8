"""Recompute the Lorenz curves behind the state-grid figures and write them as CSV.

Usage: python scripts/reproduce_figures.py [output_dir]

One CSV per scenario in ``scenarios/`` (same layout as ``majur lorenz``),
plus a summary line per state giving the area between the bound curve
and the state's curve.
"""

import sys
from pathlib import Path

from majur.bounds import verify_mur
from majur.cli import lorenz_csv
from majur.scenario import load_scenario

ROOT = Path(__file__).resolve().parent.parent


def area_between(curve, bound):
    # trapezoid rule on unit knots, exact for the piecewise-linear curves
    n = max(len(curve.points), len(bound.points)) - 1
    gaps = [bound.height_at(k) - curve.height_at(k) for k in range(n + 1)]
    return sum(gaps) - 0.5 * (gaps[0] + gaps[-1])


def main(out_dir):
    out_dir.mkdir(parents=True, exist_ok=True)
    for path in sorted((ROOT / "scenarios").glob("fig*.json")):
        scenario = load_scenario(path)
        setting = scenario.setting()
        bound = setting.bound()
        flat = f"F({bound.label})"
        curves = []
        print(f"{path.stem}: {flat} = " + ", ".join(f"{v:.4f}" for v in bound.flattened))
        for spec, state in zip(scenario.states, scenario.build_states()):
            verdict = verify_mur(state, setting, bound)
            curves.append((spec.label, verdict.curves["joint"]))
            area = area_between(verdict.curves["joint"], verdict.curves[flat])
            print(f"  {spec.label:<20} holds={verdict.holds}  area below bound {area:.4f}")
        curves.append((flat, verdict.curves[flat]))
        target = out_dir / f"{path.stem}.csv"
        target.write_text(lorenz_csv(curves), newline="\n")
        print(f"  -> {target}")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else ROOT / "results")
