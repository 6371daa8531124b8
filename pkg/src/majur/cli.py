"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 subset
budget exceeded, 4 output I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .bounds import BoundVector, SubsetBudget, verify_mur
from .errors import BudgetExceeded, MajurError
from .game import GameConfig, simulate
from .lattice import LorenzCurve, WeightVector, lorenz_curve
from .measures import entropy_sum, shannon_entropy
from .reference import reference_checks
from .scenario import Scenario, ScenarioError, load_scenario

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_BUDGET, EXIT_IO = 0, 1, 2, 3, 4
UNLIMITED = 10**15


class OutputError(Exception):
    pass


def _jobs(args) -> int:
    if args.jobs is not None:
        return args.jobs
    try:
        return int(os.environ.get("MAJUR_JOBS", "1"))
    except ValueError:
        raise ScenarioError("MAJUR_JOBS", "expected an integer")


def _budget(args) -> SubsetBudget:
    return SubsetBudget(UNLIMITED if args.force_budget else SubsetBudget().max_evaluations)


def _fmt(values) -> str:
    return "(" + ", ".join(f"{v:.4f}" for v in values) + ")"


def _full(values) -> str:
    return "[" + ", ".join(repr(float(v)) for v in values) + "]"


def _bound_curves(bound: BoundVector) -> list[tuple[str, LorenzCurve]]:
    return [(bound.label, lorenz_curve(WeightVector(bound.raw))),
            (f"F({bound.label})", lorenz_curve(bound.flattened))]


def lorenz_csv(curves: Sequence[tuple[str, LorenzCurve]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "k", "height"])
    for label, curve in curves:
        for k, h in curve.points:
            w.writerow([label, k, f"{h:.15g}"])
    return buf.getvalue()


def _write(path: str, text: str):
    try:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc.strerror}") from exc


def _state_curves(scenario: Scenario, bound: BoundVector):
    setting = scenario.setting()
    rows = []
    for spec, state in zip(scenario.states, scenario.build_states()):
        verdict = verify_mur(state, setting, bound)
        rows.append((spec, verdict))
    return rows


def _bound_record(bound: BoundVector) -> dict:
    return {
        "kind": bound.kind,
        "raw": [float(x) for x in bound.raw],
        "flattened": [float(x) for x in bound.flattened],
        "cumulative": [float(x) for x in bound.cumulative.partial_sums],
        "evaluations": bound.evaluations,
    }


def cmd_bounds(args) -> int:
    scenario = load_scenario(args.scenario)
    if args.dump_scenario:
        _write(args.dump_scenario, scenario.dumps() + "\n")
    bound = scenario.setting().bound(_budget(args), _jobs(args))
    names = ", ".join(m.display for m in scenario.measurements)
    print(f"kind {scenario.kind} over ({names})")
    print(f"{bound.label} = {_fmt(bound.raw)}")
    print(f"F({bound.label}) = {_fmt(bound.flattened)}")
    print(f"{bound.label} (full) = {_full(bound.raw)}")
    print(f"F({bound.label}) (full) = {_full(bound.flattened)}")
    rows = _state_curves(scenario, bound)
    for spec, verdict in rows:
        chain = "; ".join(f"{a} < {b}: {'ok' if ok else 'VIOLATED'}" for a, b, ok in verdict.chain)
        print(f"  {spec.label}: {chain}")
    if args.json:
        report = {
            "scenario": scenario.to_dict(),
            "bound": _bound_record(bound),
            "states": [{
                "label": spec.label,
                "joint": [float(x) for x in verdict.joint],
                "chain": [{"lhs": a, "rhs": b, "holds": ok} for a, b, ok in verdict.chain],
            } for spec, verdict in rows],
        }
        _write(args.json, json.dumps(report, indent=2) + "\n")
    if args.emit_lorenz:
        curves = [(spec.label, verdict.curves["joint"]) for spec, verdict in rows]
        _write(args.emit_lorenz, lorenz_csv(curves + _bound_curves(bound)))
    return EXIT_OK if all(v.holds for _, v in rows) else EXIT_VERIFY


def cmd_verify_paper(args) -> int:
    checks = reference_checks(tol=args.tol)
    width = max(len(c.name) for c in checks)
    print(f"{'check':<{width}}  {'max error':>10}  {'tolerance':>9}  verdict")
    for c in checks:
        # trailing entries where both sides vanish carry no information
        shown = len(c.target)
        while shown > 1 and abs(c.target[shown - 1]) < 1e-15 and abs(c.computed[shown - 1]) < 1e-15:
            shown -= 1
        tail = ", ..." if shown < len(c.target) else ""
        print(f"{c.name:<{width}}  {c.error:10.3e}  {c.tol:9.1e}  {'PASS' if c.passed else 'FAIL'}")
        print(f"{'':<{width}}    computed {_fmt(c.computed[:shown])[:-1]}{tail})")
        print(f"{'':<{width}}    target   {_fmt(c.target[:shown])[:-1]}{tail})")
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_VERIFY


def cmd_simulate_game(args) -> int:
    scenario = load_scenario(args.scenario)
    if scenario.kind not in ("DP", "DS"):
        raise ScenarioError("kind", "guessing games are defined for DP and DS scenarios")
    if not scenario.states:
        raise ScenarioError("states", "at least one state is needed to play")
    ms = scenario.build_measurements()
    lam = scenario.lam if scenario.lam is not None else 0.5
    n_outcomes = (ms[0].n_outcomes * ms[1].n_outcomes if scenario.kind == "DP"
                  else ms[0].n_outcomes + ms[1].n_outcomes)
    if not 1 <= args.k <= n_outcomes:
        raise ScenarioError("--k", f"k={args.k} outside 1..{n_outcomes}")
    if args.trials < 1:
        raise ScenarioError("--trials", "must be >= 1")
    width = max(24, max(len(s.label) for s in scenario.states))
    print(f"{'state':<{width}} {'k':>3} {'empirical':>10} {'exact':>10} {'bound':>10} {'sigma':>10}")
    for spec, state in zip(scenario.states, scenario.build_states()):
        cfg = GameConfig(scenario.kind, state, (ms[0], ms[1]), k=args.k, trials=args.trials,
                         seed=args.seed, lam=lam)
        r = simulate(cfg)
        print(f"{spec.label:<{width}} {args.k:>3} {r.empirical_top_k:10.6f} {r.exact_top_k:10.6f} "
              f"{r.bound_value:10.6f} {r.std_error:10.2e}")
    return EXIT_OK


def cmd_lorenz(args) -> int:
    scenario = load_scenario(args.scenario)
    bound = scenario.setting().bound(_budget(args), _jobs(args))
    rows = _state_curves(scenario, bound)
    curves = [(spec.label, verdict.curves["joint"]) for spec, verdict in rows]
    _write(args.output, lorenz_csv(curves + _bound_curves(bound)))
    print(f"wrote {len(curves) + 2} curves to {args.output}")
    return EXIT_OK


def cmd_entropy(args) -> int:
    scenario = load_scenario(args.scenario)
    setting = scenario.setting()
    bound = setting.bound(_budget(args), _jobs(args))
    print(f"H(F({bound.label})) = {shannon_entropy(bound.flattened):.6f}")
    # with uniform mixing, n F(s) bounds the unnormalized direct sum of the distributions
    n = len(setting.measurements)
    uniform = (scenario.kind == "DS" and setting.lam == 0.5) or (
        scenario.kind == "DS_MULTI" and max(setting.weights) - min(setting.weights) < 1e-12)
    if uniform:
        print(f"H({n} F({bound.label})) = {shannon_entropy(bound.flattened.scaled(n)):.6f}")
    ms = setting.measurements
    for spec, state in zip(scenario.states, scenario.build_states()):
        h_sum = entropy_sum(state, ms)
        h_joint = shannon_entropy(setting.joint_uncertainty(state))
        print(f"  {spec.label}: sum_i H(M_i) = {h_sum:.6f}  H(joint) = {h_joint:.6f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="majur", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_budget=True):
        p.add_argument("--scenario", required=True, help="scenario JSON file")
        if with_budget:
            p.add_argument("--jobs", type=int, default=None,
                           help="worker processes for subset enumeration (default $MAJUR_JOBS or 1)")
            p.add_argument("--force-budget", action="store_true",
                           help="lift the eigenvalue-evaluation budget")

    p = sub.add_parser("bounds", help="compute raw and flattened bounds")
    common(p)
    p.add_argument("--json", help="write a JSON report here")
    p.add_argument("--emit-lorenz", help="write Lorenz curves as CSV here")
    p.add_argument("--dump-scenario", help="write the parsed scenario back out as JSON")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify-paper", help="recompute every published value")
    p.add_argument("--tol", type=float, default=None, help="override every tolerance")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("simulate-game", help="Monte Carlo guessing game")
    common(p, with_budget=False)
    p.add_argument("--trials", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--k", type=int, default=1)
    p.set_defaults(func=cmd_simulate_game)

    p = sub.add_parser("lorenz", help="Lorenz curves for every state and the bounds")
    common(p)
    p.add_argument("output", help="CSV output file")
    p.set_defaults(func=cmd_lorenz)

    p = sub.add_parser("entropy", help="entropic uncertainty of each state against the bound")
    common(p)
    p.set_defaults(func=cmd_entropy)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OutputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except MajurError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
