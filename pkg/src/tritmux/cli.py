"""Command line front end.

Exit codes: 0 success, 1 a check ran and found problems, 2 usage or input
errors. Requested data goes to stdout, diagnostics to stderr, and output is
deterministic for a given invocation.
"""

from __future__ import annotations

import argparse
import sys

from . import circuits, metrics, refnets, ripple, tnl
from .levels import level_to_voltage, voltage_to_level
from .switchsim import IllegalInputVoltageError, OscillationError, SupplyMode, solve

CIRCUIT_IDS = tuple(circuits.BUILDERS)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _supply(value: str) -> SupplyMode:
    return SupplyMode.TWO if value == "two" else SupplyMode.ONE


def cmd_verify(args: argparse.Namespace) -> int:
    circuit = circuits.build_circuit(args.circuit)
    report = circuits.exhaustive_verify(circuit)
    print(f"{report.circuit}: {report.cases_checked} cases, {len(report.mismatches)} mismatches")
    for miss in report.mismatches:
        ins = " ".join(
            f"{name}={value}" for name, value in zip(circuit.input_names, miss.inputs)
        )
        outs = " ".join(
            f"{name}={value}" for name, value in zip(circuit.output_names, miss.actual)
        )
        expect = " ".join(
            f"{name}={value}" for name, value in zip(circuit.output_names, miss.expected)
        )
        print(f"  {ins}: got {outs}, expected {expect}")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_table(args: argparse.Namespace) -> int:
    circuit = circuits.build_circuit(args.circuit)
    table = circuits.exhaustive_table(circuit)
    if args.format == "csv":
        sys.stdout.write(circuits.table_to_csv(table))
        return EXIT_OK
    names = table.input_names + table.output_names
    widths = [max(len(n), 4) for n in names]
    header = "  ".join(name.ljust(width) for name, width in zip(names, widths))
    print(header)
    print("-" * len(header))
    for ins, outs in table.rows:
        cells = [str(v) for v in ins + outs]
        print("  ".join(cell.ljust(width) for cell, width in zip(cells, widths)))
    return EXIT_OK


def cmd_count(args: argparse.Namespace) -> int:
    circuit = circuits.build_circuit(args.circuit)
    breakdown = metrics.count_transistors(circuit, _supply(args.supply))
    print(f"circuit: {breakdown.circuit}")
    print(f"supply: {breakdown.supply.value}")
    for row in breakdown.rows:
        label = f"{row.section}:{row.component}" if row.section else row.component
        print(f"{label} {row.count}")
    if breakdown.discrepancy:
        print(f"row sum: {breakdown.row_sum}")
        print(
            f"note: published total {breakdown.printed_total} differs from row sum"
            f" {breakdown.row_sum}; keeping the published value",
            file=sys.stderr,
        )
    print(f"total: {breakdown.total}")
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    report = metrics.ratio_report()
    print(f"information ratio (bits per trit): {report.information_ratio:.4f}")
    for row in report.rows:
        marker = "yes" if row.exceeds_information_ratio() else "no"
        print(
            f"{row.ternary} vs {row.binary}: {row.ternary_count}/{row.binary_count}"
            f" = {row.ratio_display} (exceeds information ratio: {marker})"
        )
    word = ripple.word_comparison(args.bits, _supply(args.supply), args.fa_version)
    print(
        f"{word.bits}-bit binary adder: {word.binary_total} transistors;"
        f" {word.trits}-trit ternary adder: {word.ternary_total} transistors"
    )
    if word.trits_covering != word.trits:
        print(
            f"note: covering the full {word.bits}-bit range takes {word.trits_covering} trits"
        )
    print(f"word ratio: {word.ratio_display}")
    return EXIT_OK


def _parse_inputs(pairs: list[str]) -> dict[str, object]:
    values: dict[str, object] = {}
    for pair in pairs:
        name, eq, raw = pair.partition("=")
        if not eq or not name:
            raise ValueError(f"--in takes name=level, got {pair!r}")
        try:
            level = int(raw)
        except ValueError:
            raise ValueError(f"--in {name}: level must be 0, 1 or 2, got {raw!r}") from None
        if level not in (0, 1, 2):
            raise ValueError(f"--in {name}: level must be 0, 1 or 2, got {level}")
        values[name] = level_to_voltage(level)
    return values


def cmd_simulate(args: argparse.Namespace) -> int:
    try:
        document = tnl.load_file(args.file)
    except tnl.NetlistError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    diagnostics = tnl.validate(document)
    fatal = False
    for diag in diagnostics:
        print(f"{args.file}:{diag.line}: {diag.severity}: {diag.message}", file=sys.stderr)
        fatal = fatal or diag.severity == "error"
    if fatal:
        return EXIT_USAGE
    try:
        inputs = _parse_inputs(args.inputs or [])
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    try:
        result = solve(document.netlist, inputs)
    except IllegalInputVoltageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except OscillationError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAIL
    failed = False
    for name in document.netlist.outputs:
        state = result.states[name]
        if state.is_resolved:
            level = _level_or_voltage(state.voltage)
            suffix = " (static power)" if name in result.static_power_nodes else ""
            print(f"{name} = {level}{suffix}")
        else:
            failed = True
            print(f"{name} = {state.kind.value}")
    if result.static_power_nodes:
        nodes = " ".join(sorted(result.static_power_nodes))
        print(f"static power nodes: {nodes}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def _level_or_voltage(voltage) -> str:
    try:
        return str(voltage_to_level(voltage))
    except Exception:
        return str(voltage)


def cmd_sweep(args: argparse.Namespace) -> int:
    try:
        document = tnl.load_file(args.file)
    except (tnl.NetlistError, OSError) as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    plan = refnets.oracle_plan(args.oracle)
    try:
        report = refnets.equivalence_sweep(document.netlist, plan)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    print(
        f"{report.netlist} vs {report.oracle}: {report.cases_checked} cases,"
        f" {len(report.mismatches)} mismatches, {len(report.anomalies)} anomalies"
    )
    for issue in report.mismatches + report.anomalies:
        assignment = " ".join(f"{k}={v}" for k, v in issue.assignment)
        print(f"  {assignment}: {issue.node}: {issue.detail}")
    return EXIT_OK if report.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tritmux",
        description="Simulate, verify and cost MUX-based ternary and binary adders.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="exhaustively check a circuit against addition")
    p_verify.add_argument("circuit", choices=CIRCUIT_IDS)
    p_verify.set_defaults(func=cmd_verify)

    p_table = sub.add_parser("table", help="print a circuit's truth table")
    p_table.add_argument("circuit", choices=CIRCUIT_IDS)
    p_table.add_argument("--format", choices=("text", "csv"), default="text")
    p_table.set_defaults(func=cmd_table)

    p_count = sub.add_parser("count", help="print a circuit's transistor budget")
    p_count.add_argument("circuit", choices=CIRCUIT_IDS)
    p_count.add_argument("--supply", choices=("two", "one"), default="two")
    p_count.set_defaults(func=cmd_count)

    p_compare = sub.add_parser("compare", help="ternary versus binary cost ratios")
    p_compare.add_argument("--bits", type=int, default=8)
    p_compare.add_argument("--supply", choices=("two", "one"), default="two")
    p_compare.add_argument("--fa-version", choices=("v1", "v2"), default="v2")
    p_compare.set_defaults(func=cmd_compare)

    p_sim = sub.add_parser("simulate", help="solve a .tnl netlist at one input point")
    p_sim.add_argument("file")
    p_sim.add_argument(
        "--in",
        dest="inputs",
        action="append",
        metavar="NAME=LEVEL",
        help="input level (0, 1 or 2); repeat per input",
    )
    p_sim.set_defaults(func=cmd_simulate)

    p_sweep = sub.add_parser("sweep", help="sweep a .tnl netlist against its oracle")
    p_sweep.add_argument("file")
    p_sweep.add_argument("--oracle", required=True, choices=tuple(refnets.ORACLES))
    p_sweep.set_defaults(func=cmd_sweep)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        return EXIT_FAIL
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
