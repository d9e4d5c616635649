"""Command-line interface: solve games, predict outcomes, run suites.

Exit codes: 0 on success, 1 on input or usage errors, 2 when computed
results contradict an expectation (a failed verification or a scenario
mismatch). Standard output carries only the requested data; warnings
and other diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import ValidationError
from .game_core import (
    EquilibriumResult,
    MixedStrategy,
    enumerate_mixed_equilibria,
    enumerate_pure_equilibria,
    load_game,
)
from .governance import (
    Chain,
    ForkRisk,
    GovernanceParams,
    Mode,
    PredictionResult,
    Regime,
    predict_outcome,
    prediction_to_dict,
)
from .rationals import approx, format_rational, parse_rational
from .scenario_runner import (
    CheckStatus,
    ScenarioResult,
    load_scenarios,
    results_to_csv,
    results_to_json,
    run_ethereum_case_study,
    run_scenario,
    run_table1_suite,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2

REGIME_DISPLAY = {
    Regime.UNANIMOUS_ACCEPT: "UnanimousAccept",
    Regime.MAJORITY_ACCEPT: "MajorityAccept",
    Regime.MAJORITY_REJECT: "MajorityReject",
    Regime.TIE: "Tie",
}
CHAIN_DISPLAY = {
    Chain.UPGRADED: "Upgraded",
    Chain.ORIGINAL: "Original",
    Chain.SPLIT_50_50: "Split5050",
}
RISK_DISPLAY = {
    ForkRisk.NONE: "None",
    ForkRisk.REDUCED: "Reduced",
    ForkRisk.PRESENT: "Present",
    ForkRisk.HIGH: "High",
}


class _Parser(argparse.ArgumentParser):
    """argparse variant whose usage failures exit with code 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(parser: argparse.ArgumentParser, root: bool = False) -> None:
    # Subcommands declare the same flags with SUPPRESS defaults so a
    # value given before the subcommand is not overwritten.
    parser.add_argument(
        "--format",
        choices=["table", "json", "csv"],
        default="table" if root else argparse.SUPPRESS,
        help="output format (default table)",
    )
    parser.add_argument(
        "--quiet",
        action="store_true",
        default=False if root else argparse.SUPPRESS,
        help="suppress warnings on standard error",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="govgame",
        description=(
            "Exact Nash solver and hard-fork predictor for protocol-upgrade "
            "voting games."
        ),
    )
    _add_common(parser, root=True)
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("solve", help="enumerate Nash equilibria of a game file")
    _add_common(p)
    p.add_argument("game_file", help="path to a game interchange JSON file")
    p.add_argument(
        "--pure-only",
        action="store_true",
        help="skip support enumeration and list only pure equilibria",
    )
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser(
        "predict", help="predict regime, destination chain, and fork risk"
    )
    _add_common(p)
    p.add_argument(
        "--mode",
        choices=[mode.value for mode in Mode],
        default=Mode.OFF_CHAIN.value,
        help="governance mode (default off_chain)",
    )
    p.add_argument("--beta", help="proportion voting yes, e.g. 27/50 or 0.54")
    p.add_argument("--gamma", required=True, help="proportion moving to the upgraded chain")
    p.add_argument(
        "--gamma-prime",
        help="post-consultation upgraded-chain proportion (on_chain rejections)",
    )
    p.add_argument("--k", type=int, default=1, help="voter count (default 1)")
    p.add_argument("--n", type=int, default=1, help="community size (default 1)")
    p.add_argument("--sv", default="1", help="per-voter payoff unit (default 1)")
    p.add_argument("--sc", default="1", help="per-community-member payoff unit (default 1)")
    p.add_argument(
        "--tie-break",
        choices=["accept", "reject"],
        help="force a side when beta is exactly 1/2",
    )
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("table1", help="run the nine built-in simulations")
    _add_common(p)
    p.add_argument(
        "--verify",
        action="store_true",
        help="exit 2 unless every simulation matches its published values",
    )
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("casestudy", help="replay the Ethereum DAO-fork vote")
    _add_common(p)
    p.add_argument("--beta", help="override the recorded 27/50 yes share")
    p.add_argument("--gamma", help="override the assumed 7/10 upgraded share")
    p.set_defaults(func=cmd_casestudy)

    p = sub.add_parser("run", help="run scenarios from a file")
    _add_common(p)
    p.add_argument("scenario_file", help="path to a scenario JSON file")
    p.set_defaults(func=cmd_run)

    return parser


def _diag(args: argparse.Namespace, message: str) -> None:
    if not args.quiet:
        print(message, file=sys.stderr)


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from None


def _print_grid(header: list[str], rows: list[list[str]]) -> None:
    widths = [len(cell) for cell in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    print("  ".join(cell.ljust(w) for cell, w in zip(header, widths)).rstrip())
    for row in rows:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())


def _payoff_text(value: Fraction) -> str:
    return f"{format_rational(value)} ({approx(value)})"


def _strategy_text(labels: tuple[str, ...], mix: MixedStrategy) -> str:
    if mix.is_pure:
        return labels[mix.support[0]]
    return " ".join(
        f"{label}:{format_rational(p)}" for label, p in zip(labels, mix.probs)
    )


def _generic_equilibrium_dict(eq: EquilibriumResult) -> dict:
    return {
        "kind": eq.kind.value,
        "row_strategy": [format_rational(p) for p in eq.profile.sigma1.probs],
        "col_strategy": [format_rational(p) for p in eq.profile.sigma2.probs],
        "payoff1": format_rational(eq.payoffs[0]),
        "payoff2": format_rational(eq.payoffs[1]),
    }


def cmd_solve(args: argparse.Namespace) -> int:
    text = _read_file(args.game_file)
    try:
        game = load_game(text)
    except ValidationError as exc:
        raise ValidationError(f"{args.game_file}: {exc}") from None
    if args.pure_only:
        equilibria = enumerate_pure_equilibria(game)
    else:
        equilibria = enumerate_mixed_equilibria(game)
    degenerate = any(eq.degenerate_game for eq in equilibria)
    if degenerate:
        _diag(
            args,
            "warning: degenerate game, the equilibrium continuum is reported "
            "by its vertex equilibria",
        )
    if args.format == "json":
        payload = {
            "row_labels": list(game.row_labels),
            "col_labels": list(game.col_labels),
            "degenerate_game": degenerate,
            "equilibria": [_generic_equilibrium_dict(eq) for eq in equilibria],
        }
        print(json.dumps(payload, indent=2))
    elif args.format == "csv":
        header = (
            ["equilibrium_index", "kind"]
            + list(game.row_labels)
            + list(game.col_labels)
            + ["payoff1", "payoff2"]
        )
        print(",".join(header))
        for idx, eq in enumerate(equilibria, start=1):
            cells = (
                [str(idx), eq.kind.value]
                + [format_rational(p) for p in eq.profile.sigma1.probs]
                + [format_rational(p) for p in eq.profile.sigma2.probs]
                + [format_rational(eq.payoffs[0]), format_rational(eq.payoffs[1])]
            )
            print(",".join(cells))
    else:
        if not equilibria:
            print("no equilibria")
        else:
            header = ["#", "kind", "row strategy", "col strategy", "payoff1", "payoff2"]
            rows = [
                [
                    str(idx),
                    eq.kind.value,
                    _strategy_text(game.row_labels, eq.profile.sigma1),
                    _strategy_text(game.col_labels, eq.profile.sigma2),
                    _payoff_text(eq.payoffs[0]),
                    _payoff_text(eq.payoffs[1]),
                ]
                for idx, eq in enumerate(equilibria, start=1)
            ]
            _print_grid(header, rows)
    return EXIT_OK


def cmd_predict(args: argparse.Namespace) -> int:
    mode = Mode(args.mode)
    if args.beta is None:
        if mode is not Mode.NO_GOVERNANCE:
            raise ValidationError("beta is required unless mode is 'none'")
        # Without governance no vote takes place; an even split is the
        # neutral stand-in so the voter-side fields stay defined.
        beta = Fraction(1, 2)
    else:
        beta = parse_rational(args.beta, "beta")
    params = GovernanceParams(
        beta=beta,
        gamma=parse_rational(args.gamma, "gamma"),
        gamma_prime=(
            None
            if args.gamma_prime is None
            else parse_rational(args.gamma_prime, "gamma_prime")
        ),
        k=args.k,
        n=args.n,
        s_v=parse_rational(args.sv, "sv"),
        s_c=parse_rational(args.sc, "sc"),
        mode=mode,
    )
    for warning in params.warnings:
        _diag(args, f"warning: {warning}")
    prediction = predict_outcome(params, tie_break=args.tie_break)
    if args.format == "json":
        print(json.dumps(prediction_to_dict(prediction), indent=2))
    elif args.format == "csv":
        surplus = prediction.surplus
        print(
            "regime,majority_chain,fork_risk,s_yes,s_no,s_u,s_o,"
            "surplus_v,surplus_c,total"
        )
        print(
            ",".join(
                [
                    prediction.regime.value,
                    prediction.majority_chain.value,
                    prediction.fork_risk.value,
                    format_rational(surplus.s_yes),
                    format_rational(surplus.s_no),
                    format_rational(surplus.s_u),
                    format_rational(surplus.s_o),
                    format_rational(surplus.surplus_v),
                    format_rational(surplus.surplus_c),
                    format_rational(surplus.total),
                ]
            )
        )
    else:
        _print_prediction_table(prediction)
    return EXIT_OK


def _print_prediction_table(prediction: PredictionResult) -> None:
    print(
        f"{REGIME_DISPLAY[prediction.regime]} / "
        f"{CHAIN_DISPLAY[prediction.majority_chain]} / "
        f"{RISK_DISPLAY[prediction.fork_risk]}"
    )
    surplus = prediction.surplus
    print(f"  s_yes     = {_payoff_text(surplus.s_yes)}")
    print(f"  s_no      = {_payoff_text(surplus.s_no)}")
    print(f"  s_u       = {_payoff_text(surplus.s_u)}")
    print(f"  s_o       = {_payoff_text(surplus.s_o)}")
    print(f"  surplus_v = {_payoff_text(surplus.surplus_v)}")
    print(f"  surplus_c = {_payoff_text(surplus.surplus_c)}")
    print(f"  total     = {_payoff_text(surplus.total)}")
    for note in prediction.notes:
        print(f"note: {note}")


def _print_result_table(results: list[ScenarioResult]) -> None:
    header = [
        "simulation",
        "beta",
        "gamma",
        "eq",
        "yes",
        "no",
        "upgraded",
        "original",
        "v_payoff",
        "c_payoff",
        "status",
    ]
    rows = []
    for result in results:
        for idx, eq in enumerate(result.equilibria, start=1):
            first = idx == 1
            rows.append(
                [
                    result.name if first else "",
                    format_rational(result.params.beta) if first else "",
                    format_rational(result.params.gamma) if first else "",
                    str(idx),
                    format_rational(eq.profile.sigma1.probs[0]),
                    format_rational(eq.profile.sigma1.probs[1]),
                    format_rational(eq.profile.sigma2.probs[0]),
                    format_rational(eq.profile.sigma2.probs[1]),
                    format_rational(eq.payoffs[0]),
                    format_rational(eq.payoffs[1]),
                    result.expectation_check.status.value if first else "",
                ]
            )
    _print_grid(header, rows)
    print()
    print("predictions:")
    for result in results:
        prediction = result.prediction
        print(
            f"  {result.name}: {REGIME_DISPLAY[prediction.regime]} / "
            f"{CHAIN_DISPLAY[prediction.majority_chain]} / "
            f"{RISK_DISPLAY[prediction.fork_risk]}"
        )


def _emit_results(args: argparse.Namespace, results: list[ScenarioResult]) -> None:
    if args.format == "json":
        print(results_to_json(results))
    elif args.format == "csv":
        sys.stdout.write(results_to_csv(results))
    else:
        _print_result_table(results)


def _report_mismatches(results: list[ScenarioResult]) -> None:
    for result in results:
        if result.expectation_check.status is CheckStatus.MISMATCH:
            for detail in result.expectation_check.details:
                print(f"mismatch in {result.name!r}: {detail}", file=sys.stderr)


def cmd_table1(args: argparse.Namespace) -> int:
    results = run_table1_suite()
    _emit_results(args, results)
    mismatched = any(
        r.expectation_check.status is CheckStatus.MISMATCH for r in results
    )
    if args.verify:
        if mismatched:
            _report_mismatches(results)
            return EXIT_MISMATCH
        _diag(args, "all 9 simulations match their published values")
    return EXIT_OK


def cmd_casestudy(args: argparse.Namespace) -> int:
    result = run_ethereum_case_study(
        beta=None if args.beta is None else parse_rational(args.beta, "beta"),
        gamma=None if args.gamma is None else parse_rational(args.gamma, "gamma"),
    )
    if args.format == "json":
        print(results_to_json([result]))
    elif args.format == "csv":
        sys.stdout.write(results_to_csv([result]))
        for note in result.notes:
            _diag(args, f"note: {note}")
    else:
        prediction = result.prediction
        print(
            f"{REGIME_DISPLAY[prediction.regime]} / "
            f"{CHAIN_DISPLAY[prediction.majority_chain]} / "
            f"{RISK_DISPLAY[prediction.fork_risk]}"
        )
        print(f"beta  = {format_rational(result.params.beta)} ({approx(result.params.beta)})")
        gamma_assumed = args.gamma is None
        suffix = " [assumed; no measured value exists]" if gamma_assumed else ""
        print(
            f"gamma = {format_rational(result.params.gamma)} "
            f"({approx(result.params.gamma)}){suffix}"
        )
        surplus = prediction.surplus
        print(f"surplus_v = {_payoff_text(surplus.surplus_v)}")
        print(f"surplus_c = {_payoff_text(surplus.surplus_c)}")
        print(f"total     = {_payoff_text(surplus.total)}")
        print(f"historical comparison: {result.expectation_check.status.value}")
        for note in result.notes:
            print(f"note: {note}")
    if result.expectation_check.status is CheckStatus.MISMATCH:
        _report_mismatches([result])
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    text = _read_file(args.scenario_file)
    try:
        scenarios = load_scenarios(text)
    except ValidationError as exc:
        raise ValidationError(f"{args.scenario_file}: {exc}") from None
    results = [run_scenario(scenario) for scenario in scenarios]
    _emit_results(args, results)
    for result in results:
        for warning in result.params.warnings:
            _diag(args, f"warning: scenario {result.name!r}: {warning}")
    if any(r.expectation_check.status is CheckStatus.MISMATCH for r in results):
        _report_mismatches(results)
        return EXIT_MISMATCH
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
