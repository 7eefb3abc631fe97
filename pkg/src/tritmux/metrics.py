"""Transistor-count cost model, radix-economy ratios, and comparison data.

Costs come in two flavors. The adder designs this package is built around
carry published per-section budgets (component class -> transistor count,
split into sum and carry sections for the full adders), and those tables are
authoritative: count_transistors() resolves the ternary adders and the
standard-cell binary adders through a registry keyed by circuit name. The
one-supply budget for the first full-adder variant is stored exactly as
published, 83, although its own rows sum to 85; CostBreakdown keeps both
numbers and flags the discrepancy rather than repairing it.

Everything else is costed from the gate graph with per-primitive constants:
a 3-way mux is 16 devices including its select decode, a 2-way mux is 4
devices plus one shared 2-device complement inverter per distinct control
net, inverters are 2, succ/pred are 4 with two supplies and 7 with one,
constants are wired to rails and cost nothing. That derivation reproduces
the 12-device mux half adder and 30-device mux full adder.

Ratios are kept as exact Fractions and only rounded for display.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .circuits import CircuitGraph, GateKind
from .switchsim import SupplyMode

SUCC_PRED = "SUCC_PRED"
MUX3 = "MUX3"
MUX2 = "MUX2"
PI_NI = "PI_NI"
NOT = "NOT"
STD_CMOS = "STD_CMOS"

COMPONENT_ORDER = (SUCC_PRED, MUX3, MUX2, PI_NI, NOT, STD_CMOS)


class UnknownPrimitiveError(ValueError):
    """A gate kind has no cost assigned."""


@dataclass(frozen=True)
class CostRow:
    component: str
    count: int
    section: str | None = None  # "sum" | "carry" for the full adders


@dataclass(frozen=True)
class CostBreakdown:
    circuit: str
    supply: SupplyMode
    rows: tuple[CostRow, ...]
    printed_total: int | None = None

    @property
    def row_sum(self) -> int:
        return sum(row.count for row in self.rows)

    @property
    def total(self) -> int:
        return self.printed_total if self.printed_total is not None else self.row_sum

    @property
    def discrepancy(self) -> bool:
        return self.printed_total is not None and self.printed_total != self.row_sum


def ha_cost_table(mode: SupplyMode = SupplyMode.TWO) -> CostBreakdown:
    succ_pred = 8 if mode is SupplyMode.TWO else 14
    rows = (
        CostRow(SUCC_PRED, succ_pred),
        CostRow(MUX3, 16),
        CostRow(PI_NI, 16),
        CostRow(NOT, 2),
    )
    return CostBreakdown(
        circuit="ternary-ha",
        supply=mode,
        rows=rows,
        printed_total=42 if mode is SupplyMode.TWO else 48,
    )


_FA_SUM_ROWS = {
    # (version, mode): (succ_pred, mux3, mux2, pi_ni, not)
    ("v1", SupplyMode.TWO): (12, 8, 4, 24, 2),
    ("v2", SupplyMode.TWO): (8, 16, 4, 16, 2),
    ("v1", SupplyMode.ONE): (21, 8, 4, 24, 2),
    ("v2", SupplyMode.ONE): (14, 16, 4, 16, 2),
}

_FA_CARRY_ROWS = (0, 16, 4, 0, 6)

_FA_PRINTED = {
    ("v1", SupplyMode.TWO): 76,
    ("v2", SupplyMode.TWO): 72,
    ("v1", SupplyMode.ONE): 83,  # published total; the rows sum to 85
    ("v2", SupplyMode.ONE): 78,
}


def fa_cost_table(version: str, mode: SupplyMode = SupplyMode.TWO) -> CostBreakdown:
    if version not in ("v1", "v2"):
        raise ValueError(f"full adder version must be v1 or v2, got {version!r}")
    components = (SUCC_PRED, MUX3, MUX2, PI_NI, NOT)
    rows = tuple(
        CostRow(component, count, section="sum")
        for component, count in zip(components, _FA_SUM_ROWS[(version, mode)])
    ) + tuple(
        CostRow(component, count, section="carry")
        for component, count in zip(components, _FA_CARRY_ROWS)
    )
    return CostBreakdown(
        circuit=f"ternary-fa-{version}",
        supply=mode,
        rows=rows,
        printed_total=_FA_PRINTED[(version, mode)],
    )


_BINARY_STD = {"binary-ha-std": 14, "binary-fa-std": 28}


# kind -> (component class, devices with two supplies, devices with one)
PRIMITIVE_COSTS = {
    GateKind.SUCC: (SUCC_PRED, 4, 7),
    GateKind.PRED: (SUCC_PRED, 4, 7),
    GateKind.MUX3: (MUX3, 16, 16),
    GateKind.MUX2: (MUX2, 4, 4),
    GateKind.NI: (PI_NI, 2, 2),
    GateKind.PI: (PI_NI, 2, 2),
    GateKind.NOT_BIN: (NOT, 2, 2),
    GateKind.CONST: (None, 0, 0),
}


def _derived_costs(circuit: CircuitGraph, mode: SupplyMode) -> CostBreakdown:
    counts: dict[str, int] = {}
    controls: set[str] = set()
    for gate in circuit.gates:
        if gate.kind not in PRIMITIVE_COSTS:
            raise UnknownPrimitiveError(f"{circuit.name}: no cost for {gate.kind!r}")
        component, cost_two, cost_one = PRIMITIVE_COSTS[gate.kind]
        cost = cost_two if mode is SupplyMode.TWO else cost_one
        if cost and component:
            counts[component] = counts.get(component, 0) + cost
        if gate.kind is GateKind.MUX2:
            controls.add(gate.inputs[0])
    if controls:
        # one complement inverter per distinct mux control net
        counts[NOT] = counts.get(NOT, 0) + 2 * len(controls)
    rows = tuple(
        CostRow(component, counts[component])
        for component in COMPONENT_ORDER
        if component in counts
    )
    return CostBreakdown(circuit=circuit.name, supply=mode, rows=rows)


def count_transistors(circuit: CircuitGraph, mode: SupplyMode = SupplyMode.TWO) -> CostBreakdown:
    """Cost a circuit: published tables for the named designs, derived otherwise."""
    if circuit.name == "ternary-ha":
        return ha_cost_table(mode)
    if circuit.name == "ternary-fa-v1":
        return fa_cost_table("v1", mode)
    if circuit.name == "ternary-fa-v2":
        return fa_cost_table("v2", mode)
    if circuit.name in _BINARY_STD:
        total = _BINARY_STD[circuit.name]
        return CostBreakdown(
            circuit=circuit.name,
            supply=mode,
            rows=(CostRow(STD_CMOS, total),),
            printed_total=total,
        )
    return _derived_costs(circuit, mode)


def binary_baseline_costs() -> tuple[tuple[str, int], ...]:
    """Binary adder baselines: mux forms, mux forms with restored outputs, std cells."""
    return (
        ("binary-ha-mux", 12),
        ("binary-ha-mux-restored", 14),
        ("binary-ha-std", 14),
        ("binary-fa-mux", 30),
        ("binary-fa-mux-restored", 34),
        ("binary-fa-std", 28),
    )


def information_ratio(radix: int = 3) -> float:
    """Bits carried per digit at the given radix."""
    if radix < 2:
        raise ValueError("radix must be at least 2")
    return math.log2(radix)


def equivalent_trits(bits: int) -> int:
    """Ternary word width conventionally quoted for a binary width (nearest int)."""
    if bits < 1:
        raise ValueError("bits must be positive")
    return max(1, round(bits / math.log2(3)))


def trits_covering(bits: int) -> int:
    """Smallest ternary width whose range covers 2**bits values."""
    if bits < 1:
        raise ValueError("bits must be positive")
    trits = 1
    while 3**trits < 2**bits:
        trits += 1
    return trits


@dataclass(frozen=True)
class ComparisonRow:
    ternary: str
    binary: str
    ternary_count: int
    binary_count: int
    ratio: Fraction

    @property
    def ratio_display(self) -> str:
        return f"{float(self.ratio):.2f}"

    def exceeds_information_ratio(self) -> bool:
        return float(self.ratio) > information_ratio(3)


@dataclass(frozen=True)
class ComparisonReport:
    information_ratio: float
    rows: tuple[ComparisonRow, ...]


def ratio_report() -> ComparisonReport:
    """Ternary-over-binary transistor ratios against the std-cell baseline."""
    base = dict(binary_baseline_costs())
    pairs = (
        ("ternary-ha", SupplyMode.TWO, "binary-ha-std"),
        ("ternary-fa-v2", SupplyMode.TWO, "binary-fa-std"),
        ("ternary-ha", SupplyMode.ONE, "binary-ha-std"),
        ("ternary-fa-v2", SupplyMode.ONE, "binary-fa-std"),
    )
    rows = []
    for ternary_name, mode, binary_name in pairs:
        if ternary_name == "ternary-ha":
            ternary_total = ha_cost_table(mode).total
        else:
            ternary_total = fa_cost_table("v2", mode).total
        binary_total = base[binary_name]
        rows.append(
            ComparisonRow(
                ternary=f"{ternary_name} ({mode.value} supplies)"
                if mode is SupplyMode.TWO
                else f"{ternary_name} ({mode.value} supply)",
                binary=binary_name,
                ternary_count=ternary_total,
                binary_count=binary_total,
                ratio=Fraction(ternary_total, binary_total),
            )
        )
    return ComparisonReport(information_ratio=information_ratio(3), rows=tuple(rows))


@dataclass(frozen=True)
class PriorWorkEntry:
    citation: str
    circuit_class: str  # "ternary-ha" | "ternary-fa"
    transistor_count: int
    supply_mode: SupplyMode | None = None
    proposed: bool = False


def prior_work_tables() -> tuple[PriorWorkEntry, ...]:
    """Transistor counts of earlier ternary adders next to the designs here.

    Counts are stored verbatim from their sources; supply_mode is None where
    the source does not state one.
    """
    return (
        PriorWorkEntry("lin", "ternary-ha", 136),
        PriorWorkEntry("samadi", "ternary-ha", 112),
        PriorWorkEntry("sahoo", "ternary-ha", 112),
        PriorWorkEntry("jaber", "ternary-ha", 85),
        PriorWorkEntry("this-work-2ps", "ternary-ha", 42, SupplyMode.TWO, proposed=True),
        PriorWorkEntry("this-work-1ps", "ternary-ha", 48, SupplyMode.ONE, proposed=True),
        PriorWorkEntry("ebrahimi", "ternary-fa", 106, SupplyMode.TWO),
        PriorWorkEntry("kesh", "ternary-fa", 132, SupplyMode.TWO),
        PriorWorkEntry("mirzaee", "ternary-fa", 142, SupplyMode.ONE),
        PriorWorkEntry("this-work-2ps", "ternary-fa", 72, SupplyMode.TWO, proposed=True),
        PriorWorkEntry("this-work-1ps", "ternary-fa", 78, SupplyMode.ONE, proposed=True),
    )


def cost_to_csv(breakdown: CostBreakdown) -> str:
    lines = ["component,count"]
    for row in breakdown.rows:
        label = f"{row.section}:{row.component}" if row.section else row.component
        lines.append(f"{label},{row.count}")
    lines.append(f"total,{breakdown.total}")
    return "\n".join(lines) + "\n"


def comparison_to_csv(report: ComparisonReport) -> str:
    lines = ["ternary,binary,ternary_count,binary_count,ratio,information_ratio"]
    info = f"{report.information_ratio:.4f}"
    for row in report.rows:
        lines.append(
            f"{row.ternary},{row.binary},{row.ternary_count},{row.binary_count},"
            f"{float(row.ratio):.4f},{info}"
        )
    return "\n".join(lines) + "\n"
