"""Reference transistor netlists for the ternary primitives, plus sweeps.

The inverters are two complementary devices whose common absolute threshold
picks the function: 1/4 gives the negative inverter (only 0 reads as low),
3/4 the positive one (0 and 1 read as low), 1/2 the plain binary inverter.

succ and pred cores take the four decoded signals a, b, c, d (a = NI(y),
b = PI(y), c = NOT a, d = NOT b) as external inputs, so the two-supply cores
are 4 devices and the one-supply ones 7. Exactly one pull path is on for
each input level. The two-supply cores pass the half rail straight through;
the one-supply ones synthesize the middle level with a gated divider: two
always-on resistive devices framing the output, enabled at both ends by the
same decoded signal, so the node splits Vdd against ground exactly when that
level is selected, and burns static power there. Series chains are ordered
so the shared internal node always sees a conducting neighbor on legal
inputs and never floats.

The *_full variants bolt the NI/PI decode onto the core so the whole thing
is driven by the single ternary input y; those are what ships as .tnl files
for interactive simulation.

An OraclePlan ties a netlist family to its behavioral function: it knows the
logical inputs, how to encode an assignment as node voltages (including the
decoded or complemented forms a particular netlist may want), and the
expected output level. equivalence_sweep() runs a netlist against a plan
over the full input domain; static_power_scan() records which assignments
light up divider nodes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import levels
from .levels import V_HALF, level_to_voltage
from .switchsim import (
    Device,
    OscillationError,
    Rail,
    StateKind,
    SupplyMode,
    SwitchNetlist,
    solve,
)

_V = Fraction
_Q1 = _V(1, 4)
_Q2 = _V(1, 2)
_Q3 = _V(3, 4)

RAIL_VDD = Rail("vdd", _V(1))
RAIL_GND = Rail("gnd", _V(0))
RAIL_HALF = Rail("half", V_HALF)


def netlist_inverter(kind: str) -> SwitchNetlist:
    """Two-device inverter; kind is "ni", "pi" or "not"."""
    try:
        vth = {"ni": _Q1, "pi": _Q3, "not": _Q2}[kind]
    except KeyError:
        raise ValueError(f"unknown inverter kind: {kind!r}") from None
    return SwitchNetlist(
        name=kind,
        supply=SupplyMode.TWO,
        rails=(RAIL_VDD, RAIL_GND),
        inputs=("x",),
        outputs=("out",),
        internal=(),
        devices=(
            Device("pu", "P", gate="x", a="vdd", b="out", vth=vth),
            Device("pd", "N", gate="x", a="out", b="gnd", vth=vth),
        ),
    )


def netlist_mux2() -> SwitchNetlist:
    """Two transmission gates; the control and its complement are both inputs."""
    return SwitchNetlist(
        name="mux2",
        supply=SupplyMode.TWO,
        rails=(),
        inputs=("c", "cbar", "a0", "a1"),
        outputs=("out",),
        internal=(),
        devices=(
            Device("t0n", "N", gate="cbar", a="a0", b="out", vth=_Q2),
            Device("t0p", "P", gate="c", a="a0", b="out", vth=_Q2),
            Device("t1n", "N", gate="c", a="a1", b="out", vth=_Q2),
            Device("t1p", "P", gate="cbar", a="a1", b="out", vth=_Q2),
        ),
    )


def netlist_mux3() -> SwitchNetlist:
    """16 devices: on-board NI/PI decode of the select plus three pass legs.

    The middle leg is two transmission gates in series so that it only
    connects a1 when the select sits exactly at the middle level.
    """
    decode = (
        Device("ni_p", "P", gate="s", a="vdd", b="na", vth=_Q1),
        Device("ni_n", "N", gate="s", a="na", b="gnd", vth=_Q1),
        Device("pi_p", "P", gate="s", a="vdd", b="pa", vth=_Q3),
        Device("pi_n", "N", gate="s", a="pa", b="gnd", vth=_Q3),
        Device("nni_p", "P", gate="na", a="vdd", b="nna", vth=_Q2),
        Device("nni_n", "N", gate="na", a="nna", b="gnd", vth=_Q2),
        Device("npi_p", "P", gate="pa", a="vdd", b="npa", vth=_Q2),
        Device("npi_n", "N", gate="pa", a="npa", b="gnd", vth=_Q2),
    )
    legs = (
        Device("t0n", "N", gate="na", a="a0", b="out", vth=_Q2),
        Device("t0p", "P", gate="nna", a="a0", b="out", vth=_Q2),
        Device("t1an", "N", gate="pa", a="a1", b="mid", vth=_Q2),
        Device("t1ap", "P", gate="npa", a="a1", b="mid", vth=_Q2),
        Device("t1bn", "N", gate="nna", a="mid", b="out", vth=_Q2),
        Device("t1bp", "P", gate="na", a="mid", b="out", vth=_Q2),
        Device("t2n", "N", gate="npa", a="a2", b="out", vth=_Q2),
        Device("t2p", "P", gate="pa", a="a2", b="out", vth=_Q2),
    )
    return SwitchNetlist(
        name="mux3",
        supply=SupplyMode.TWO,
        rails=(RAIL_VDD, RAIL_GND),
        inputs=("s", "a0", "a1", "a2"),
        outputs=("out",),
        internal=("na", "pa", "nna", "npa", "mid"),
        devices=decode + legs,
    )


def _succ_core(mode: SupplyMode) -> tuple[Rail, ...]:
    if mode is SupplyMode.TWO:
        return (RAIL_VDD, RAIL_GND, RAIL_HALF)
    return (RAIL_VDD, RAIL_GND)


def netlist_succ(mode: SupplyMode = SupplyMode.TWO) -> SwitchNetlist:
    """Increment core over decoded inputs: 4 devices with two supplies, 7 with one."""
    common = (
        # y=1 (b high, c high): vdd through the series chain
        Device("sv1", "N", gate="b", a="vdd", b="m", vth=_Q2),
        Device("sv2", "N", gate="c", a="m", b="out", vth=_Q2),
        # y=2 (d high): ground
        Device("sg", "N", gate="d", a="gnd", b="out", vth=_Q2),
    )
    if mode is SupplyMode.TWO:
        devices = common + (
            # y=0 (c low): the half rail
            Device("sh", "P", gate="c", a="half", b="out", vth=_Q2),
        )
        internal = ("m",)
    else:
        devices = common + (
            # y=0 (a high): gated divider makes the middle level
            Device("dv1", "N", gate="a", a="vdd", b="t", vth=_Q2),
            Device("dv2", "N", gate="vdd", a="t", b="out", vth=_Q2, resistive=True),
            Device("dv3", "N", gate="vdd", a="out", b="u", vth=_Q2, resistive=True),
            Device("dv4", "N", gate="a", a="u", b="gnd", vth=_Q2),
        )
        internal = ("m", "t", "u")
    return SwitchNetlist(
        name=f"succ_{_mode_tag(mode)}",
        supply=mode,
        rails=_succ_core(mode),
        inputs=("a", "b", "c", "d"),
        outputs=("out",),
        internal=internal,
        devices=devices,
    )


def netlist_pred(mode: SupplyMode = SupplyMode.TWO) -> SwitchNetlist:
    """Decrement core over decoded inputs: 4 devices with two supplies, 7 with one."""
    common = (
        # y=0 (c low): vdd
        Device("pv", "P", gate="c", a="vdd", b="out", vth=_Q2),
        # y=1 (c high, b high): ground through the series chain
        Device("pg1", "N", gate="c", a="gnd", b="m", vth=_Q2),
        Device("pg2", "N", gate="b", a="m", b="out", vth=_Q2),
    )
    if mode is SupplyMode.TWO:
        devices = common + (
            # y=2 (d high): the half rail
            Device("ph", "N", gate="d", a="half", b="out", vth=_Q2),
        )
        internal = ("m",)
    else:
        devices = common + (
            # y=2 (d high): gated divider makes the middle level
            Device("dv1", "N", gate="d", a="vdd", b="t", vth=_Q2),
            Device("dv2", "N", gate="vdd", a="t", b="out", vth=_Q2, resistive=True),
            Device("dv3", "N", gate="vdd", a="out", b="u", vth=_Q2, resistive=True),
            Device("dv4", "N", gate="d", a="u", b="gnd", vth=_Q2),
        )
        internal = ("m", "t", "u")
    return SwitchNetlist(
        name=f"pred_{_mode_tag(mode)}",
        supply=mode,
        rails=_succ_core(mode),
        inputs=("a", "b", "c", "d"),
        outputs=("out",),
        internal=internal,
        devices=devices,
    )


_DECODE = (
    Device("ni_p", "P", gate="y", a="vdd", b="a", vth=_Q1),
    Device("ni_n", "N", gate="y", a="a", b="gnd", vth=_Q1),
    Device("pi_p", "P", gate="y", a="vdd", b="b", vth=_Q3),
    Device("pi_n", "N", gate="y", a="b", b="gnd", vth=_Q3),
    Device("na_p", "P", gate="a", a="vdd", b="c", vth=_Q2),
    Device("na_n", "N", gate="a", a="c", b="gnd", vth=_Q2),
    Device("nb_p", "P", gate="b", a="vdd", b="d", vth=_Q2),
    Device("nb_n", "N", gate="b", a="d", b="gnd", vth=_Q2),
)


def _with_decode(core: SwitchNetlist) -> SwitchNetlist:
    rails = set(core.rails) | {RAIL_VDD, RAIL_GND}
    return SwitchNetlist(
        name=core.name + "_full",
        supply=core.supply,
        rails=tuple(rails),
        inputs=("y",),
        outputs=core.outputs,
        internal=core.internal + ("a", "b", "c", "d"),
        devices=core.devices + _DECODE,
    )


def netlist_succ_full(mode: SupplyMode = SupplyMode.TWO) -> SwitchNetlist:
    """Self-contained increment: decode on board, driven by the ternary input y."""
    return _with_decode(netlist_succ(mode))


def netlist_pred_full(mode: SupplyMode = SupplyMode.TWO) -> SwitchNetlist:
    """Self-contained decrement: decode on board, driven by the ternary input y."""
    return _with_decode(netlist_pred(mode))


def _mode_tag(mode: SupplyMode) -> str:
    return "2ps" if mode is SupplyMode.TWO else "1ps"


def reference_netlists() -> tuple[SwitchNetlist, ...]:
    """Every netlist this package ships, cores and full variants alike."""
    return (
        netlist_inverter("ni"),
        netlist_inverter("pi"),
        netlist_inverter("not"),
        netlist_mux2(),
        netlist_mux3(),
        netlist_succ(SupplyMode.TWO),
        netlist_succ(SupplyMode.ONE),
        netlist_pred(SupplyMode.TWO),
        netlist_pred(SupplyMode.ONE),
        netlist_succ_full(SupplyMode.TWO),
        netlist_succ_full(SupplyMode.ONE),
        netlist_pred_full(SupplyMode.TWO),
        netlist_pred_full(SupplyMode.ONE),
    )


# ---------------------------------------------------------------------------
# oracle plans


@dataclass(frozen=True)
class OraclePlan:
    """Behavioral reference for a netlist family.

    provide() returns every node voltage the plan knows how to derive from a
    logical assignment; a sweep keeps only the ones a given netlist declares
    as inputs, so cores (decoded inputs) and full variants (single ternary
    input) share one plan.
    """

    name: str
    logical_inputs: tuple[tuple[str, str], ...]  # (name, "ternary" | "binary")
    expected: Callable[..., int]
    provide: Callable[..., dict[str, Fraction]]

    def assignments(self):
        domains = [
            levels.TERNARY_LEVELS if domain == "ternary" else levels.BINARY_LEVELS
            for _, domain in self.logical_inputs
        ]
        names = [n for n, _ in self.logical_inputs]
        for combo in itertools.product(*domains):
            yield dict(zip(names, combo))


def _provide_inverter(x: int) -> dict[str, Fraction]:
    return {"x": level_to_voltage(x)}


def _provide_unary(y: int) -> dict[str, Fraction]:
    a = levels.ni(y)
    b = levels.pi(y)
    return {
        "y": level_to_voltage(y),
        "a": level_to_voltage(a),
        "b": level_to_voltage(b),
        "c": level_to_voltage(levels.not_bin(a)),
        "d": level_to_voltage(levels.not_bin(b)),
    }


def _provide_mux2(c: int, a0: int, a1: int) -> dict[str, Fraction]:
    return {
        "c": level_to_voltage(c),
        "cbar": level_to_voltage(levels.not_bin(c)),
        "a0": level_to_voltage(a0),
        "a1": level_to_voltage(a1),
    }


def _provide_mux3(s: int, a0: int, a1: int, a2: int) -> dict[str, Fraction]:
    out = {
        "s": level_to_voltage(s),
        "a0": level_to_voltage(a0),
        "a1": level_to_voltage(a1),
        "a2": level_to_voltage(a2),
    }
    # decoded forms, in case a selector-decoded mux core wants them
    out["na"] = level_to_voltage(levels.ni(s))
    out["pa"] = level_to_voltage(levels.pi(s))
    out["nna"] = level_to_voltage(levels.not_bin(levels.ni(s)))
    out["npa"] = level_to_voltage(levels.not_bin(levels.pi(s)))
    return out


ORACLES: dict[str, OraclePlan] = {
    "ni": OraclePlan("ni", (("x", "ternary"),), levels.ni, _provide_inverter),
    "pi": OraclePlan("pi", (("x", "ternary"),), levels.pi, _provide_inverter),
    "not": OraclePlan("not", (("x", "binary"),), levels.not_bin, _provide_inverter),
    "succ": OraclePlan("succ", (("y", "ternary"),), levels.succ, _provide_unary),
    "pred": OraclePlan("pred", (("y", "ternary"),), levels.pred, _provide_unary),
    "mux2": OraclePlan(
        "mux2",
        (("c", "binary"), ("a0", "ternary"), ("a1", "ternary")),
        levels.mux2,
        _provide_mux2,
    ),
    "mux3": OraclePlan(
        "mux3",
        (("s", "ternary"), ("a0", "ternary"), ("a1", "ternary"), ("a2", "ternary")),
        levels.mux3,
        _provide_mux3,
    ),
}


def oracle_plan(name: str) -> OraclePlan:
    try:
        return ORACLES[name]
    except KeyError:
        raise KeyError(f"unknown oracle: {name!r}") from None


def oracle_for_netlist(netlist_name: str) -> str:
    base = netlist_name.removesuffix("_full")
    for tag in ("_2ps", "_1ps"):
        base = base.removesuffix(tag)
    if base in ORACLES:
        return base
    raise KeyError(f"no oracle matches netlist {netlist_name!r}")


@dataclass(frozen=True)
class SweepCaseIssue:
    assignment: tuple[tuple[str, int], ...]
    node: str
    detail: str


@dataclass(frozen=True)
class SweepReport:
    netlist: str
    oracle: str
    cases_checked: int
    mismatches: tuple[SweepCaseIssue, ...]
    anomalies: tuple[SweepCaseIssue, ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.anomalies


@dataclass(frozen=True)
class StaticPowerReport:
    netlist: str
    oracle: str
    rows: tuple[tuple[tuple[tuple[str, int], ...], tuple[str, ...]], ...]

    @property
    def flagged(self) -> tuple[tuple[tuple[str, int], ...], ...]:
        return tuple(assignment for assignment, nodes in self.rows if nodes)


def _plan_inputs(netlist: SwitchNetlist, plan: OraclePlan, assignment: dict[str, int]):
    provided = plan.provide(**assignment)
    missing = [n for n in netlist.inputs if n not in provided]
    if missing:
        raise ValueError(
            f"oracle {plan.name} cannot drive inputs {missing} of netlist {netlist.name}"
        )
    return {n: provided[n] for n in netlist.inputs}


def equivalence_sweep(netlist: SwitchNetlist, plan: OraclePlan) -> SweepReport:
    """Exercise the netlist over the plan's whole domain against its function."""
    cases = 0
    mismatches: list[SweepCaseIssue] = []
    anomalies: list[SweepCaseIssue] = []
    out = netlist.outputs[0]
    for assignment in plan.assignments():
        cases += 1
        key = tuple(sorted(assignment.items()))
        try:
            result = solve(netlist, _plan_inputs(netlist, plan, assignment))
        except OscillationError as exc:
            anomalies.append(SweepCaseIssue(key, out, f"oscillation: {exc}"))
            continue
        expected = level_to_voltage(plan.expected(**assignment))
        state = result.states[out]
        if not state.is_resolved or state.voltage != expected:
            mismatches.append(
                SweepCaseIssue(key, out, f"expected {expected}, got {state.describe()}")
            )
        for node, node_state in sorted(result.states.items()):
            if node_state.kind in (StateKind.FLOATING, StateKind.CONTENTION):
                anomalies.append(SweepCaseIssue(key, node, node_state.kind.value))
    return SweepReport(
        netlist=netlist.name,
        oracle=plan.name,
        cases_checked=cases,
        mismatches=tuple(mismatches),
        anomalies=tuple(anomalies),
    )


def static_power_scan(netlist: SwitchNetlist, plan: OraclePlan) -> StaticPowerReport:
    """Record which input assignments leave divider nodes burning static power."""
    rows = []
    for assignment in plan.assignments():
        result = solve(netlist, _plan_inputs(netlist, plan, assignment))
        key = tuple(sorted(assignment.items()))
        rows.append((key, tuple(sorted(result.static_power_nodes))))
    return StaticPowerReport(netlist=netlist.name, oracle=plan.name, rows=tuple(rows))
