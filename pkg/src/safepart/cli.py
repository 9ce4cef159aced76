"""Command-line interface.

Exit codes: 0 success / solvable / SOLVED, 1 unsolvable / infeasible /
verification or safety failure, 2 no verdict (UNKNOWN, enumeration over cap),
3 usage or input errors.  All artifacts are JSON with sorted keys so repeated
runs produce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import game, model, oracle, rds, simulate, synthesis
from .graph import build_induced
from .labeling import check_degree_conditions, verify_labeling
from .model import ValidationError

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 3


def _oracle_cap(args) -> int:
    if getattr(args, "oracle_cap", None) is not None:
        return args.oracle_cap
    return int(os.environ.get("RP_ORACLE_CAP", oracle.DEFAULT_CAP))


def _echo(obj: dict) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def cmd_validate(args) -> int:
    inst = model.load_instance(args.instance)
    _echo(
        {
            "valid": True,
            "n": inst.n,
            "controls": len(inst.controls),
            "m": inst.m,
            "safe_set_size": len(inst.safe),
        }
    )
    return EXIT_OK


def _load_partition(path, inst) -> model.Partition:
    labels = model.load_labeling(path)
    partition = model.labeling_to_partition(labels, inst.m)
    model.check_partition(partition, inst.controls, inst.m)
    return partition


def cmd_solve(args) -> int:
    inst = model.load_instance(args.instance)
    partition = _load_partition(args.partition, inst)
    solver = game.solve_fixpoint if args.solver == "fixpoint" else game.solve_attractor
    result = solver(inst, partition)
    _echo(
        {
            "solvable": result.solvable,
            "winning_set_size": len(result.winning_set),
        }
    )
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        model.dump_json(game.policy_to_json(result), out / "policy.json")
    return EXIT_OK if result.solvable else EXIT_NEGATIVE


def cmd_synthesize(args) -> int:
    inst = model.load_instance(args.instance)
    config = synthesis.SynthesisConfig(
        seeds=args.seeds, seed_base=args.seed, oracle_cap=_oracle_cap(args)
    )
    outcome = synthesis.synthesize(inst, config)
    summary = {
        "status": outcome.status,
        "method": outcome.method,
        "shat_size": len(outcome.shat) if outcome.shat is not None else None,
        "condition_report": outcome.report.to_json() if outcome.report else None,
    }
    _echo(summary)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        report = dict(summary)
        report["shat"] = (
            [list(p) for p in sorted(outcome.shat)] if outcome.shat is not None else None
        )
        report["estimator_totals"] = outcome.estimator_totals
        if outcome.certificate is not None:
            report["certificate"] = {
                "solvable": outcome.certificate.solvable,
                "restricted_to_shat": outcome.certificate_restricted,
                "winning_set": [list(p) for p in sorted(outcome.certificate.winning_set)],
            }
        model.dump_json(report, out / "report.json")
        if outcome.status == synthesis.SOLVED:
            model.save_labeling(outcome.labeling, out / "partition.json")
            model.dump_json(game.policy_to_json(outcome.policy), out / "policy.json")
        if not args.no_figures:
            from . import report as fig

            if outcome.estimator_totals:
                fig.estimator_figure(outcome.estimator_totals, out / "estimator.png")
            if outcome.status == synthesis.SOLVED and inst.n <= 2:
                g = build_induced(outcome.shat, inst.controls)
                fig.labeling_figure(inst, g, outcome.labeling, out / "labeling.png")
    if outcome.status == synthesis.SOLVED:
        return EXIT_OK
    if outcome.status == synthesis.INFEASIBLE_PROVEN:
        return EXIT_NEGATIVE
    return EXIT_UNKNOWN


def cmd_verify(args) -> int:
    inst = model.load_instance(args.instance)
    report: dict = {"instance_valid": True}
    ok = True

    partition = None
    if args.partition:
        labels = model.load_labeling(args.partition)
        missing = [u for u in inst.controls if u not in labels]
        if missing:
            report["labeling_total"] = False
            ok = False
        else:
            report["labeling_total"] = True
            partition = model.labeling_to_partition(labels, inst.m, inst.controls)
            result = game.solve_attractor(inst, partition)
            report["solvable"] = result.solvable
            report["winning_set_size"] = len(result.winning_set)
            if result.winning_set:
                g = build_induced(result.winning_set, inst.controls)
                report["condition_report"] = check_degree_conditions(g, inst.m).to_json()
                check = verify_labeling(g, labels, inst.x0, inst.m)
                report["label_cover_on_winning_set"] = check.ok
            ok = ok and result.solvable

    if args.policy:
        loaded = game.policy_from_json(model.load_json(args.policy), x0=inst.x0)
        issues = []
        if not loaded.winning_set <= inst.safe.points:
            issues.append("states outside the safe set")
        expected_keys = {(x, d) for x in loaded.winning_set for d in range(1, inst.m + 1)}
        if set(loaded.policy) != expected_keys:
            issues.append("policy not defined exactly on states x labels")
        for (x, d), k in loaded.policy.items():
            if not 0 <= k < len(inst.controls):
                issues.append(f"bad control index {k}")
                break
            u = inst.controls[k]
            if partition is not None and u not in partition[d - 1]:
                issues.append(f"control {u} not in cell {d}")
                break
            if model.add(x, u) not in loaded.winning_set:
                issues.append(f"policy leaves the stored winning set at {x} label {d}")
                break
        report["policy_issues"] = issues
        report["policy_states"] = len(loaded.winning_set)
        ok = ok and not issues

    report["ok"] = ok
    _echo(report)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_simulate(args) -> int:
    inst = model.load_instance(args.instance)
    partition = _load_partition(args.partition, inst) if args.partition else None
    loaded = game.policy_from_json(model.load_json(args.policy), x0=inst.x0)
    adversary = simulate.make_adversary(
        args.adversary, inst.m, inst, policy=loaded.policy, seed=args.seed
    )
    traj = simulate.run_policy(inst, partition, loaded.policy, adversary, args.steps)

    lines = []
    for t, state in enumerate(traj.states):
        entry: dict = {"t": t, "state": list(state)}
        if t > 0:
            d, u = traj.inputs[t - 1]
            entry["d"] = d
            entry["u"] = list(u)
        lines.append(json.dumps(entry, sort_keys=True))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "trajectory.jsonl").write_text("\n".join(lines) + "\n")
        if not args.no_figures:
            from . import report as fig

            fig.trajectory_figure(traj.states, inst, out / "trajectory.png")
    else:
        for line in lines:
            print(line)
    print(
        f"steps={len(traj.states) - 1} safe={traj.safe} "
        f"first_violation={traj.first_violation}",
        file=sys.stderr,
    )
    return EXIT_OK if traj.safe else EXIT_NEGATIVE


def cmd_oracle(args) -> int:
    inst = model.load_instance(args.instance)
    try:
        verdict = oracle.exhaustive_search(inst, cap=_oracle_cap(args))
    except oracle.CapExceeded as exc:
        print(f"no verdict: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    if verdict.solvable:
        _echo({"solvable": True, **model.labeling_to_json(verdict.labeling)})
        return EXIT_OK
    _echo({"solvable": False})
    return EXIT_NEGATIVE


def cmd_rds_design(args) -> int:
    config = synthesis.SynthesisConfig(
        seeds=args.seeds, seed_base=args.seed, oracle_cap=_oracle_cap(args)
    )
    try:
        design = rds.design_code(args.n, args.m, args.k, config)
    except rds.DesignNotFound as exc:
        print(f"design not found: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE if exc.status == synthesis.INFEASIBLE_PROVEN else EXIT_UNKNOWN
    model.dump_json(rds.design_to_json(design), args.out)
    print(f"wrote {args.out}: n={design.n} m={design.m} k={design.k} "
          f"states={len(design.shat)}", file=sys.stderr)
    if args.figures:
        from . import report as fig

        if design.n <= 2:
            figdir = Path(args.figures)
            figdir.mkdir(parents=True, exist_ok=True)
            inst = rds.rds_instance(design.n, design.m, design.k)
            g = build_induced(design.shat, inst.controls)
            fig.labeling_figure(inst, g, design.labels, figdir / "code_labeling.png")
    return EXIT_OK


def _read_tokens(arg_value: str | None) -> list[str]:
    if arg_value is not None:
        return arg_value.split()
    return sys.stdin.read().split()


def cmd_rds_encode(args) -> int:
    design = rds.design_from_json(model.load_json(args.code))
    messages = [int(tok) for tok in _read_tokens(args.messages)]
    for u in rds.encode_stream(design, messages):
        print(rds.codeword_to_bits(u))
    return EXIT_OK


def cmd_rds_decode(args) -> int:
    design = rds.design_from_json(model.load_json(args.code))
    words = [rds.bits_to_codeword(tok) for tok in _read_tokens(args.words)]
    for msg in rds.decode_stream(design, words):
        print(msg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="safepart",
        description="Partition a control set so safety survives adversarial "
        "restriction to one cell per step.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_instance(p):
        p.add_argument("-i", "--instance", required=True, help="instance JSON file")

    p = sub.add_parser("validate", help="check an instance file")
    add_instance(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("solve", help="decide safety for a fixed partition")
    add_instance(p)
    p.add_argument("-p", "--partition", required=True, help="labeling/partition JSON")
    p.add_argument("--solver", choices=["attractor", "fixpoint"], default="attractor")
    p.add_argument("--out", help="directory for policy.json")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("synthesize", help="search for a safe partition")
    add_instance(p)
    p.add_argument("--seeds", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oracle-cap", type=int, default=None)
    p.add_argument("--out", help="directory for partition/policy/report artifacts")
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("verify", help="re-check written artifacts against an instance")
    add_instance(p)
    p.add_argument("-p", "--partition", help="labeling/partition JSON")
    p.add_argument("--policy", help="policy JSON")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="replay a policy against an adversary")
    add_instance(p)
    p.add_argument("-p", "--partition", help="labeling/partition JSON")
    p.add_argument("--policy", required=True, help="policy JSON")
    p.add_argument("--adversary", default="uniform",
                   help="constant:<d> | uniform | greedy | scripted:<d,d,...> | interactive")
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="directory for trajectory.jsonl and figure")
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("oracle", help="exhaustively decide partition existence")
    add_instance(p)
    p.add_argument("--oracle-cap", type=int, default=None)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("rds", help="bounded running-digital-sum codes")
    rds_sub = p.add_subparsers(dest="rds_command", required=True)

    q = rds_sub.add_parser("design", help="design an encoder")
    q.add_argument("--n", type=int, required=True, help="codeword length")
    q.add_argument("--m", type=int, required=True, help="message count")
    q.add_argument("--k", type=int, default=2, help="max-norm bound on the RDS")
    q.add_argument("--out", required=True, help="output code JSON")
    q.add_argument("--seeds", type=int, default=32)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--oracle-cap", type=int, default=None)
    q.add_argument("--figures", help="directory for the labeling figure")
    q.set_defaults(func=cmd_rds_design)

    q = rds_sub.add_parser("encode", help="encode messages (stdin or --messages)")
    q.add_argument("--code", required=True)
    q.add_argument("--messages", help="whitespace-separated messages in 1..m")
    q.set_defaults(func=cmd_rds_encode)

    q = rds_sub.add_parser("decode", help="decode bit-strings (stdin or --words)")
    q.add_argument("--code", required=True)
    q.add_argument("--words", help="whitespace-separated codeword bit-strings")
    q.set_defaults(func=cmd_rds_decode)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; remap onto our usage code
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (ValidationError, rds.DecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
