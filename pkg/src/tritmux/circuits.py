"""Behavioral gate graphs for the MUX-style adders and their verification.

A CircuitGraph is a DAG of primitive gates (ternary inverters, succ/pred
shifters, multiplexers, constants) over named nets. Nets are the primary
input names plus one net per gate, named after the gate that drives it, so
every net has exactly one driver. Evaluation is a topological sweep; there
is no notion of time or strength at this level, the switch-level model
handles that.

The builders construct the seven adders the rest of the package reasons
about: the ternary half adder, two ternary full adders that differ only in
how SUM is decomposed, and MUX-based plus standard-cell binary counterparts.
The std variants share the mux graphs behaviorally and differ only in cost
accounting, which the metrics module keys off the circuit name.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .levels import (
    BINARY_LEVELS,
    TERNARY_LEVELS,
    DomainViolationError,
    add_digits,
    bool_to_bin,
    check_radix,
    mux2,
    mux3,
    ni,
    not_bin,
    pi,
    pred,
    succ,
)

TERNARY = "ternary"
BINARY = "binary"


class CycleDetectedError(ValueError):
    """The gate list does not form a DAG."""


class MissingInputError(KeyError):
    """evaluate() was not given a value for some primary input."""


class PortSignatureMismatchError(ValueError):
    """A circuit does not expose the adder port shape a caller expects."""


class GateKind(enum.Enum):
    NI = "ni"
    PI = "pi"
    NOT_BIN = "not"
    SUCC = "succ"
    PRED = "pred"
    MUX3 = "mux3"
    MUX2 = "mux2"
    CONST = "const"


# input domains per kind; MUX3 is (select, a0, a1, a2), MUX2 is (control, a0, a1)
_ARITY = {
    GateKind.NI: (TERNARY,),
    GateKind.PI: (TERNARY,),
    GateKind.NOT_BIN: (BINARY,),
    GateKind.SUCC: (TERNARY,),
    GateKind.PRED: (TERNARY,),
    GateKind.MUX3: (TERNARY, TERNARY, TERNARY, TERNARY),
    GateKind.MUX2: (BINARY, TERNARY, TERNARY),
    GateKind.CONST: (),
}


@dataclass(frozen=True)
class Gate:
    """One primitive instance. `level` is only meaningful for CONST."""

    name: str
    kind: GateKind
    inputs: tuple[str, ...] = ()
    level: int | None = None

    def __post_init__(self) -> None:
        expected = len(_ARITY[self.kind])
        if len(self.inputs) != expected:
            raise ValueError(
                f"gate {self.name}: {self.kind.value} takes {expected} inputs, got {len(self.inputs)}"
            )
        if self.kind is GateKind.CONST:
            if self.level not in TERNARY_LEVELS:
                raise DomainViolationError(f"gate {self.name}: bad constant {self.level!r}")
        elif self.level is not None:
            raise ValueError(f"gate {self.name}: only CONST gates carry a level")


@dataclass(frozen=True)
class Mismatch:
    inputs: tuple[int, ...]
    expected: tuple[int, ...]
    actual: tuple[int, ...]


@dataclass(frozen=True)
class VerificationReport:
    circuit: str
    cases_checked: int
    mismatches: tuple[Mismatch, ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches


@dataclass(frozen=True)
class TruthTable:
    circuit: str
    input_names: tuple[str, ...]
    output_names: tuple[str, ...]
    rows: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    def outputs_for(self, inputs: Sequence[int]) -> tuple[int, ...]:
        key = tuple(inputs)
        for ins, outs in self.rows:
            if ins == key:
                return outs
        raise KeyError(key)


class CircuitGraph:
    """Immutable-by-convention gate DAG with named, ordered ports."""

    def __init__(
        self,
        name: str,
        radix: int,
        inputs: Sequence[tuple[str, str]],
        outputs: Sequence[tuple[str, str]],
        gates: Iterable[Gate],
    ) -> None:
        self.name = name
        self.radix = check_radix(radix)
        self.inputs = tuple((str(n), d) for n, d in inputs)
        self.outputs = tuple((str(n), str(net)) for n, net in outputs)
        self.gates = tuple(gates)
        self._validate()

    def _validate(self) -> None:
        for _, domain in self.inputs:
            if domain not in (TERNARY, BINARY):
                raise ValueError(f"{self.name}: bad port domain {domain!r}")
        names = [n for n, _ in self.inputs] + [g.name for g in self.gates]
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"{self.name}: duplicate net names {dupes}")
        known = set(names)
        for gate in self.gates:
            for ref in gate.inputs:
                if ref not in known:
                    raise ValueError(f"{self.name}: gate {gate.name} reads unknown net {ref!r}")
        for port, net in self.outputs:
            if net not in known:
                raise ValueError(f"{self.name}: output {port} bound to unknown net {net!r}")
        self._order = self._topo_order()
        self._domains = self._net_domains()
        self._check_binary_feeds()

    def _topo_order(self) -> tuple[Gate, ...]:
        by_name = {g.name: g for g in self.gates}
        input_names = {n for n, _ in self.inputs}
        state: dict[str, int] = {}  # 1 = visiting, 2 = done
        order: list[Gate] = []

        def visit(name: str) -> None:
            if name in input_names or state.get(name) == 2:
                return
            if state.get(name) == 1:
                raise CycleDetectedError(f"{self.name}: cycle through net {name!r}")
            state[name] = 1
            for dep in by_name[name].inputs:
                visit(dep)
            state[name] = 2
            order.append(by_name[name])

        for gate in self.gates:
            visit(gate.name)
        return tuple(order)

    def _net_domains(self) -> dict[str, str]:
        domains = dict(self.inputs)
        for gate in self._order:
            if gate.kind in (GateKind.NI, GateKind.PI, GateKind.NOT_BIN):
                domains[gate.name] = BINARY
            elif gate.kind is GateKind.CONST:
                domains[gate.name] = BINARY if gate.level in BINARY_LEVELS else TERNARY
            elif gate.kind is GateKind.MUX2:
                _, a0, a1 = gate.inputs
                both = domains[a0] == BINARY and domains[a1] == BINARY
                domains[gate.name] = BINARY if both else TERNARY
            else:
                domains[gate.name] = TERNARY
        return domains

    def _check_binary_feeds(self) -> None:
        for gate in self.gates:
            for ref, want in zip(gate.inputs, _ARITY[gate.kind]):
                if want == BINARY and self._domains[ref] != BINARY:
                    raise DomainViolationError(
                        f"{self.name}: gate {gate.name} needs a binary net on {ref!r}"
                    )

    @property
    def input_names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.inputs)

    @property
    def output_names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.outputs)

    def input_domain(self, name: str) -> tuple[int, ...]:
        for port, domain in self.inputs:
            if port == name:
                return TERNARY_LEVELS if domain == TERNARY else BINARY_LEVELS
        raise KeyError(name)

    def evaluate(self, assignment: Mapping[str, int]) -> dict[str, int]:
        values: dict[str, int] = {}
        for port, domain in self.inputs:
            if port not in assignment:
                raise MissingInputError(port)
            value = assignment[port]
            legal = TERNARY_LEVELS if domain == TERNARY else BINARY_LEVELS
            if value not in legal:
                raise DomainViolationError(f"{self.name}: input {port}={value!r} outside {domain}")
            values[port] = value
        for gate in self._order:
            args = tuple(values[ref] for ref in gate.inputs)
            values[gate.name] = _apply(gate, args)
        return {port: values[net] for port, net in self.outputs}


def _apply(gate: Gate, args: tuple[int, ...]) -> int:
    kind = gate.kind
    if kind is GateKind.CONST:
        return gate.level  # type: ignore[return-value]
    if kind is GateKind.NI:
        return ni(args[0])
    if kind is GateKind.PI:
        return pi(args[0])
    if kind is GateKind.NOT_BIN:
        return not_bin(args[0])
    if kind is GateKind.SUCC:
        return succ(args[0])
    if kind is GateKind.PRED:
        return pred(args[0])
    if kind is GateKind.MUX3:
        return mux3(*args)
    if kind is GateKind.MUX2:
        return mux2(*args)
    raise AssertionError(kind)


def exhaustive_table(circuit: CircuitGraph) -> TruthTable:
    """Evaluate the circuit over its whole input domain, in lexicographic order."""
    domains = [circuit.input_domain(name) for name in circuit.input_names]
    rows = []
    for combo in itertools.product(*domains):
        assignment = dict(zip(circuit.input_names, combo))
        out = circuit.evaluate(assignment)
        rows.append((combo, tuple(out[name] for name in circuit.output_names)))
    return TruthTable(
        circuit=circuit.name,
        input_names=circuit.input_names,
        output_names=circuit.output_names,
        rows=tuple(rows),
    )


def _check_adder_signature(circuit: CircuitGraph) -> bool:
    """Return True when the circuit has a Cin port; raise when it is not an adder."""
    names = circuit.input_names
    digit = TERNARY if circuit.radix == 3 else BINARY
    if names == ("X", "Y"):
        with_cin = False
    elif names == ("X", "Y", "Cin"):
        with_cin = True
    else:
        raise PortSignatureMismatchError(f"{circuit.name}: inputs {names} are not an adder's")
    expected = [digit, digit] + ([BINARY] if with_cin else [])
    actual = [d for _, d in circuit.inputs]
    if actual != expected:
        raise PortSignatureMismatchError(f"{circuit.name}: input domains {actual} != {expected}")
    if circuit.output_names != ("SUM", "COUT"):
        raise PortSignatureMismatchError(f"{circuit.name}: outputs {circuit.output_names}")
    return with_cin


def verification_rows(circuit: CircuitGraph):
    """Yield (inputs, actual, expected, match) over the whole adder domain."""
    with_cin = _check_adder_signature(circuit)
    table = exhaustive_table(circuit)
    for ins, outs in table.rows:
        if with_cin:
            x, y, cin = ins
            digit_x, digit_y = _level_to_digit(x, circuit.radix), _level_to_digit(y, circuit.radix)
            s, co = add_digits(digit_x, digit_y, cin == 2, circuit.radix)
        else:
            x, y = ins
            digit_x, digit_y = _level_to_digit(x, circuit.radix), _level_to_digit(y, circuit.radix)
            s, co = add_digits(digit_x, digit_y, False, circuit.radix)
        expected = (_digit_to_level(s, circuit.radix), bool_to_bin(co))
        yield ins, outs, expected, outs == expected


def exhaustive_verify(circuit: CircuitGraph) -> VerificationReport:
    """Compare the circuit against the digit-addition oracle on every input."""
    cases = 0
    mismatches = []
    for ins, outs, expected, match in verification_rows(circuit):
        cases += 1
        if not match:
            mismatches.append(Mismatch(inputs=ins, expected=expected, actual=outs))
    return VerificationReport(circuit=circuit.name, cases_checked=cases, mismatches=tuple(mismatches))


def _level_to_digit(level: int, radix: int) -> int:
    return level if radix == 3 else (1 if level == 2 else 0)


def _digit_to_level(digit: int, radix: int) -> int:
    return digit if radix == 3 else (2 if digit else 0)


def table_to_csv(table: TruthTable) -> str:
    header = ",".join(table.input_names + table.output_names)
    lines = [header]
    for ins, outs in table.rows:
        lines.append(",".join(str(v) for v in ins + outs))
    return "\n".join(lines) + "\n"


def verification_to_csv(circuit: CircuitGraph) -> str:
    ins = circuit.input_names
    outs = circuit.output_names
    header = (
        list(ins)
        + list(outs)
        + [f"expected_{name}" for name in outs]
        + ["match"]
    )
    lines = [",".join(header)]
    for combo, actual, expected, match in verification_rows(circuit):
        row = list(combo) + list(actual) + list(expected) + [1 if match else 0]
        lines.append(",".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# builders

def build_ternary_ha() -> CircuitGraph:
    """Ternary half adder: SUM muxes Y/Y+1/Y-1 on X, CARRY muxes 0/PI'/NI' on X."""
    gates = [
        Gate("succ0", GateKind.SUCC, ("Y",)),
        Gate("pred0", GateKind.PRED, ("Y",)),
        Gate("sum0", GateKind.MUX3, ("X", "Y", "succ0", "pred0")),
        Gate("pi0", GateKind.PI, ("Y",)),
        Gate("ni0", GateKind.NI, ("Y",)),
        Gate("npi0", GateKind.NOT_BIN, ("pi0",)),
        Gate("nni0", GateKind.NOT_BIN, ("ni0",)),
        Gate("zero0", GateKind.CONST, (), level=0),
        Gate("carry0", GateKind.MUX3, ("X", "zero0", "npi0", "nni0")),
    ]
    return CircuitGraph(
        name="ternary-ha",
        radix=3,
        inputs=[("X", TERNARY), ("Y", TERNARY)],
        outputs=[("SUM", "sum0"), ("COUT", "carry0")],
        gates=gates,
    )


def _fa_carry_gates() -> list[Gate]:
    # shared between both FA variants: HA carry, the Cin=1 carry, final select
    return [
        Gate("pi0", GateKind.PI, ("Y",)),
        Gate("ni0", GateKind.NI, ("Y",)),
        Gate("npi0", GateKind.NOT_BIN, ("pi0",)),
        Gate("nni0", GateKind.NOT_BIN, ("ni0",)),
        Gate("zero0", GateKind.CONST, (), level=0),
        Gate("two0", GateKind.CONST, (), level=2),
        Gate("carry0", GateKind.MUX3, ("X", "zero0", "npi0", "nni0")),
        Gate("carry1", GateKind.MUX3, ("X", "npi0", "nni0", "two0")),
        Gate("carryout", GateKind.MUX2, ("Cin", "carry0", "carry1")),
    ]


def build_ternary_fa_v1() -> CircuitGraph:
    """Full adder, first variant: half-adder SUM then a +1 correction on Cin."""
    gates = [
        Gate("succ0", GateKind.SUCC, ("Y",)),
        Gate("pred0", GateKind.PRED, ("Y",)),
        Gate("sumha", GateKind.MUX3, ("X", "Y", "succ0", "pred0")),
        Gate("succ1", GateKind.SUCC, ("sumha",)),
        Gate("sumout", GateKind.MUX2, ("Cin", "sumha", "succ1")),
    ] + _fa_carry_gates()
    return CircuitGraph(
        name="ternary-fa-v1",
        radix=3,
        inputs=[("X", TERNARY), ("Y", TERNARY), ("Cin", BINARY)],
        outputs=[("SUM", "sumout"), ("COUT", "carryout")],
        gates=gates,
    )


def build_ternary_fa_v2() -> CircuitGraph:
    """Full adder, second variant: per-X 2-way muxes on Cin feeding one 3-way mux."""
    gates = [
        Gate("succ0", GateKind.SUCC, ("Y",)),
        Gate("pred0", GateKind.PRED, ("Y",)),
        Gate("m0", GateKind.MUX2, ("Cin", "Y", "succ0")),
        Gate("m1", GateKind.MUX2, ("Cin", "succ0", "pred0")),
        Gate("m2", GateKind.MUX2, ("Cin", "pred0", "Y")),
        Gate("sumout", GateKind.MUX3, ("X", "m0", "m1", "m2")),
    ] + _fa_carry_gates()
    return CircuitGraph(
        name="ternary-fa-v2",
        radix=3,
        inputs=[("X", TERNARY), ("Y", TERNARY), ("Cin", BINARY)],
        outputs=[("SUM", "sumout"), ("COUT", "carryout")],
        gates=gates,
    )


def _binary_ha(name: str) -> CircuitGraph:
    gates = [
        Gate("noty", GateKind.NOT_BIN, ("Y",)),
        Gate("sum0", GateKind.MUX2, ("X", "Y", "noty")),
        Gate("zero0", GateKind.CONST, (), level=0),
        Gate("carry0", GateKind.MUX2, ("X", "zero0", "Y")),
    ]
    return CircuitGraph(
        name=name,
        radix=2,
        inputs=[("X", BINARY), ("Y", BINARY)],
        outputs=[("SUM", "sum0"), ("COUT", "carry0")],
        gates=gates,
    )


def _binary_fa(name: str) -> CircuitGraph:
    gates = [
        Gate("noty", GateKind.NOT_BIN, ("Y",)),
        Gate("xor0", GateKind.MUX2, ("X", "Y", "noty")),
        Gate("nxor0", GateKind.MUX2, ("X", "noty", "Y")),
        Gate("zero0", GateKind.CONST, (), level=0),
        Gate("two0", GateKind.CONST, (), level=2),
        Gate("and0", GateKind.MUX2, ("X", "zero0", "Y")),
        Gate("or0", GateKind.MUX2, ("X", "Y", "two0")),
        Gate("sumout", GateKind.MUX2, ("Cin", "xor0", "nxor0")),
        Gate("carryout", GateKind.MUX2, ("Cin", "and0", "or0")),
    ]
    return CircuitGraph(
        name=name,
        radix=2,
        inputs=[("X", BINARY), ("Y", BINARY), ("Cin", BINARY)],
        outputs=[("SUM", "sumout"), ("COUT", "carryout")],
        gates=gates,
    )


def build_binary_ha_mux() -> CircuitGraph:
    """Binary half adder out of 2-way muxes (SUM = mux(X; Y, not Y))."""
    return _binary_ha("binary-ha-mux")


def build_binary_ha_std14() -> CircuitGraph:
    """Same behavior as the mux half adder, costed as standard CMOS cells."""
    return _binary_ha("binary-ha-std")


def build_binary_fa_mux() -> CircuitGraph:
    """Binary full adder out of 2-way muxes."""
    return _binary_fa("binary-fa-mux")


def build_binary_fa_std28() -> CircuitGraph:
    """Same behavior as the mux full adder, costed as standard CMOS cells."""
    return _binary_fa("binary-fa-std")


BUILDERS = {
    "ternary-ha": build_ternary_ha,
    "ternary-fa-v1": build_ternary_fa_v1,
    "ternary-fa-v2": build_ternary_fa_v2,
    "binary-ha-mux": build_binary_ha_mux,
    "binary-ha-std": build_binary_ha_std14,
    "binary-fa-mux": build_binary_fa_mux,
    "binary-fa-std": build_binary_fa_std28,
}


def build_circuit(circuit_id: str) -> CircuitGraph:
    try:
        return BUILDERS[circuit_id]()
    except KeyError:
        raise KeyError(f"unknown circuit id: {circuit_id!r}") from None
