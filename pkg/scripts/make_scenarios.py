"""Write the scenario files for the figure grids into ``scenarios/``."""

import json
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "scenarios"
STEPS = list(range(0, 91, 10))


def grid(theta=None, phi=None):
    if theta is None:
        return [{"theta_deg": t, "phi_deg": phi} for t in STEPS]
    return [{"theta_deg": theta, "phi_deg": p} for p in STEPS]


SCENARIOS = {
    "fig3a_dp_phi.json": {"kind": "DP", "measurements": ["A", "B"], "states": grid(theta=45)},
    "fig3b_ds_phi.json": {"kind": "DS", "measurements": ["A", "B"], "lambda": 0.5,
                          "states": grid(theta=45)},
    "fig3c_dp_theta.json": {"kind": "DP", "measurements": ["A", "B"], "states": grid(phi=45)},
    "fig3d_ds_theta.json": {"kind": "DS", "measurements": ["A", "B"], "lambda": 0.5,
                            "states": grid(phi=45)},
    "fig4a_dp_multi.json": {"kind": "DP_MULTI", "measurements": ["C1", "C2", "C3"],
                            "states": [{"theta_deg": 180, "phi_deg": p} for p in range(0, 41, 10)]},
    "fig4b_ds_multi.json": {"kind": "DS_MULTI", "measurements": ["C1", "C2", "C3"],
                            "weights": [1 / 3, 1 / 3, 1 / 3],
                            "states": [{"theta_deg": 180, "phi_deg": p} for p in range(0, 41, 10)]},
    "ab_dp.json": {"kind": "DP", "measurements": ["A", "B"],
                   "states": [{"amplitudes": [[1, 0], [0, 0], [0, 0], [0, 0]]}]},
}

if __name__ == "__main__":
    OUT.mkdir(exist_ok=True)
    for name, body in SCENARIOS.items():
        (OUT / name).write_text(json.dumps({"dimension": 4, **body}, indent=2) + "\n")
        print("wrote", OUT / name)
