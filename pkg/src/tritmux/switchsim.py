"""Switch-level transistor netlists and a conservative steady-state solver.

A Device is a voltage-controlled switch between channel terminals a and b.
An N device conducts when its gate voltage is at or above vth, a P device
when it is at or below vth. Thresholds are absolute gate voltages in (0, 1),
which is how the multi-threshold ternary inverters are modeled: an N device
with vth 1/4 turns on at the middle level, one with vth 3/4 does not. Pass
gates therefore transmit whatever voltage their channel sees; there is no
body effect or level degradation in this model.

Devices are strong unless marked resistive. A node driven only through
resistive paths to both rails settles at Vdd/2, the trick the one-supply
circuits use to make the middle level, and the solver reports such nodes in
static_power_nodes since that divider burns current as long as it is enabled.

solve() runs Jacobi sweeps of a three-valued relaxation: each sweep
reclassifies every non-input node from the previous sweep's state, so device
order cannot influence anything. A node whose neighborhood still contains a
device with an unresolved gate stays Unknown rather than committing early,
which keeps resolved states final and the iteration monotone. Sweeps stop at
the first fixpoint; netlists with level-sensitive feedback that never
settles trip the iteration bound instead of looping forever.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .levels import QUIESCENT, V_GND, V_HALF, V_VDD


class SupplyMode(enum.Enum):
    TWO = "two"
    ONE = "one"


class StateKind(enum.Enum):
    RESOLVED = "resolved"
    UNKNOWN = "unknown"
    FLOATING = "floating"
    CONTENTION = "contention"


class NetlistStructureError(ValueError):
    """The netlist references undeclared names or breaks a structural rule."""


class IllegalInputVoltageError(ValueError):
    """solve() inputs must cover exactly the input nodes with quiescent levels."""


class OscillationError(RuntimeError):
    """The relaxation failed to reach a fixpoint within its iteration bound."""


@dataclass(frozen=True)
class NodeState:
    kind: StateKind
    voltage: Fraction | None = None

    @staticmethod
    def resolved(voltage: Fraction) -> "NodeState":
        return NodeState(StateKind.RESOLVED, Fraction(voltage))

    @property
    def is_resolved(self) -> bool:
        return self.kind is StateKind.RESOLVED

    def describe(self) -> str:
        if self.is_resolved:
            return str(self.voltage)
        return self.kind.value


UNKNOWN = NodeState(StateKind.UNKNOWN)
FLOATING = NodeState(StateKind.FLOATING)
CONTENTION = NodeState(StateKind.CONTENTION)


@dataclass(frozen=True)
class Rail:
    name: str
    level: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "level", Fraction(self.level))
        if self.level not in QUIESCENT:
            raise NetlistStructureError(f"rail {self.name}: level {self.level} is not quiescent")


@dataclass(frozen=True)
class Device:
    name: str
    polarity: str  # "N" or "P"
    gate: str
    a: str
    b: str
    vth: Fraction
    resistive: bool = False

    def __post_init__(self) -> None:
        if self.polarity not in ("N", "P"):
            raise NetlistStructureError(f"device {self.name}: polarity {self.polarity!r}")
        object.__setattr__(self, "vth", Fraction(self.vth))
        if not (0 < self.vth < 1):
            raise NetlistStructureError(f"device {self.name}: vth {self.vth} outside (0, 1)")

    def conducts(self, gate_voltage: Fraction) -> bool:
        if self.polarity == "N":
            return gate_voltage >= self.vth
        return gate_voltage <= self.vth


@dataclass(frozen=True)
class SwitchNetlist:
    """Normalized netlist: rails and internal nodes sorted, devices sorted by name."""

    name: str
    supply: SupplyMode
    rails: tuple[Rail, ...]
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    internal: tuple[str, ...]
    devices: tuple[Device, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rails", tuple(sorted(self.rails, key=lambda r: r.name)))
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        object.__setattr__(self, "internal", tuple(sorted(self.internal)))
        object.__setattr__(self, "devices", tuple(sorted(self.devices, key=lambda d: d.name)))
        self._validate()

    def _validate(self) -> None:
        names = [r.name for r in self.rails] + list(self.inputs) + list(self.outputs) + list(self.internal)
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise NetlistStructureError(f"{self.name}: duplicate names {dupes}")
        if self.supply is SupplyMode.ONE:
            for rail in self.rails:
                if rail.level == V_HALF:
                    raise NetlistStructureError(
                        f"{self.name}: rail {rail.name} at Vdd/2 requires two supplies"
                    )
        dev_names = [d.name for d in self.devices]
        if len(set(dev_names)) != len(dev_names):
            dupes = sorted({n for n in dev_names if dev_names.count(n) > 1})
            raise NetlistStructureError(f"{self.name}: duplicate device names {dupes}")
        known = set(names)
        for dev in self.devices:
            for ref in (dev.gate, dev.a, dev.b):
                if ref not in known:
                    raise NetlistStructureError(
                        f"{self.name}: device {dev.name} references unknown name {ref!r}"
                    )

    @property
    def nodes(self) -> tuple[str, ...]:
        return self.inputs + self.outputs + self.internal

    @property
    def rail_levels(self) -> dict[str, Fraction]:
        return {r.name: r.level for r in self.rails}


@dataclass(frozen=True)
class SolveResult:
    states: Mapping[str, NodeState]
    static_power_nodes: frozenset[str]
    iterations: int

    def voltage(self, node: str) -> Fraction:
        state = self.states[node]
        if not state.is_resolved:
            raise ValueError(f"node {node} is {state.kind.value}, not resolved")
        return state.voltage  # type: ignore[return-value]


def iteration_bound(netlist: SwitchNetlist) -> int:
    return 4 + 2 * len(netlist.nodes)


def solve(netlist: SwitchNetlist, inputs: Mapping[str, Fraction | int | float | str]) -> SolveResult:
    """Relax the netlist to a steady state under the given input voltages."""
    rail_levels = netlist.rail_levels
    given = set(inputs)
    wanted = set(netlist.inputs)
    if given != wanted:
        missing = sorted(wanted - given)
        extra = sorted(given - wanted)
        raise IllegalInputVoltageError(
            f"{netlist.name}: inputs must cover exactly {sorted(wanted)}"
            + (f"; missing {missing}" if missing else "")
            + (f"; unexpected {extra}" if extra else "")
        )
    fixed: dict[str, Fraction] = {}
    for name in netlist.inputs:
        try:
            voltage = Fraction(inputs[name])
        except (ValueError, TypeError) as exc:
            raise IllegalInputVoltageError(f"{netlist.name}: {name}={inputs[name]!r}") from exc
        if voltage not in QUIESCENT:
            raise IllegalInputVoltageError(
                f"{netlist.name}: {name}={voltage} is not a quiescent level"
            )
        fixed[name] = voltage

    states: dict[str, NodeState] = {n: UNKNOWN for n in netlist.nodes}
    for name, voltage in fixed.items():
        states[name] = NodeState.resolved(voltage)

    bound = iteration_bound(netlist)
    iterations = 0
    while True:
        iterations += 1
        if iterations > bound:
            raise OscillationError(f"{netlist.name}: no fixpoint after {bound} sweeps")
        new_states, static = _sweep(netlist, states, rail_levels, fixed)
        if new_states == states:
            return SolveResult(states=states, static_power_nodes=static, iterations=iterations)
        states = new_states


def _sweep(
    netlist: SwitchNetlist,
    states: dict[str, NodeState],
    rail_levels: dict[str, Fraction],
    fixed: dict[str, Fraction],
) -> tuple[dict[str, NodeState], frozenset[str]]:
    definite: dict[str, list[tuple[str, bool]]] = defaultdict(list)
    possible: dict[str, list[str]] = defaultdict(list)

    for dev in netlist.devices:
        if dev.gate in rail_levels:
            gate_voltage = rail_levels[dev.gate]
        else:
            gate_state = states[dev.gate]
            gate_voltage = gate_state.voltage if gate_state.is_resolved else None
        if gate_voltage is None:
            possible[dev.a].append(dev.b)
            possible[dev.b].append(dev.a)
        elif dev.conducts(gate_voltage):
            definite[dev.a].append((dev.b, dev.resistive))
            definite[dev.b].append((dev.a, dev.resistive))

    sources = set(rail_levels) | set(fixed)

    def source_level(name: str) -> Fraction:
        return rail_levels[name] if name in rail_levels else fixed[name]

    new_states: dict[str, NodeState] = {}
    static: set[str] = set()
    for node in netlist.nodes:
        if node in fixed:
            new_states[node] = states[node]
            continue
        strong, weak = _definite_reach(node, definite, sources, source_level)
        if len(strong) >= 2:
            new_states[node] = CONTENTION
        elif _unknown_path(node, definite, possible, sources):
            new_states[node] = UNKNOWN
        elif len(strong) == 1:
            new_states[node] = NodeState.resolved(next(iter(strong)))
        elif weak == {V_VDD, V_GND}:
            new_states[node] = NodeState.resolved(V_HALF)
            static.add(node)
        elif len(weak) == 1:
            new_states[node] = NodeState.resolved(next(iter(weak)))
        elif len(weak) >= 2:
            new_states[node] = CONTENTION
        else:
            new_states[node] = FLOATING
    return new_states, frozenset(static)


def _definite_reach(start, definite, sources, source_level):
    """Levels reachable through definitely-on devices, split strong/weak."""
    strong: set[Fraction] = set()
    weak: set[Fraction] = set()
    seen = {(start, False)}
    frontier = [(start, False)]
    while frontier:
        vertex, through_resistive = frontier.pop()
        for neighbor, resistive in definite.get(vertex, ()):
            flag = through_resistive or resistive
            if neighbor in sources:
                (weak if flag else strong).add(source_level(neighbor))
                continue
            key = (neighbor, flag)
            if key not in seen:
                seen.add(key)
                frontier.append(key)
    return strong, weak


def _unknown_path(start, definite, possible, sources) -> bool:
    """True when some path to a source runs through at least one unresolved gate."""
    seen = {(start, False)}
    frontier = [(start, False)]
    while frontier:
        vertex, used_unknown = frontier.pop()
        neighbors: list[tuple[str, bool]] = [
            (n, used_unknown) for n, _ in definite.get(vertex, ())
        ] + [(n, True) for n in possible.get(vertex, ())]
        for neighbor, flag in neighbors:
            if neighbor in sources:
                if flag:
                    return True
                continue
            key = (neighbor, flag)
            if key not in seen:
                seen.add(key)
                frontier.append(key)
    return False
