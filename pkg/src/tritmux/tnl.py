"""Line-oriented text format for switch-level netlists (.tnl files).

    circuit <name>
    supply <two|one>
    rail <name> <0|half|vdd>
    input <name> ...
    output <name> ...
    node <name> ...
    dev <id> <N|P> gate=<ref> a=<ref> b=<ref> vth=<decimal> [res]
    end

'#' starts a comment that runs to end of line; blank lines are ignored.
Tokens are whitespace-separated. The circuit line comes first and end comes
last; other declarations may appear in any order in between, but exactly one
supply line is required, and dev lines keep the field order shown. vth is a
plain decimal strictly between 0 and 1.

Rails, inputs, outputs and nodes share one namespace; device ids have their
own. All diagnostics carry the 1-based line number they were raised on, and
reference errors point at the dev line that made the dangling reference.

serialize() emits a canonical form: fixed section order (circuit, supply,
rails, inputs, outputs, nodes, devices, end), rails and nodes sorted,
devices sorted by id, ports in declared order, minimal decimal for vth, one
trailing newline. parse(serialize(n)) reproduces n exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .levels import V_GND, V_HALF, V_VDD
from .switchsim import Device, Rail, SupplyMode, SwitchNetlist

MAX_SOURCE_BYTES = 1 << 20

_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_DECIMAL = re.compile(r"^\d+\.\d+$|^\d+$")

_RAIL_LEVELS = {"0": V_GND, "half": V_HALF, "vdd": V_VDD}
_LEVEL_NAMES = {V_GND: "0", V_HALF: "half", V_VDD: "vdd"}


class NetlistError(ValueError):
    """Base for every .tnl diagnostic; line is 1-based."""

    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


class NetlistSyntaxError(NetlistError):
    pass


class DuplicateNameError(NetlistError):
    pass


class UnresolvedReferenceError(NetlistError):
    pass


class InvalidThresholdError(NetlistError):
    pass


class SupplyModeViolationError(NetlistError):
    pass


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    code: str
    message: str
    line: int


@dataclass(frozen=True)
class NetlistDocument:
    netlist: SwitchNetlist
    # (kind, name) -> line of the declaration, for diagnostics
    locations: dict[tuple[str, str], int]


def parse(source: str | bytes) -> NetlistDocument:
    if isinstance(source, bytes):
        if len(source) > MAX_SOURCE_BYTES:
            raise NetlistSyntaxError(1, "source exceeds 1 MiB")
        text = source.decode("utf-8", errors="replace")
    else:
        if len(source) > MAX_SOURCE_BYTES:
            raise NetlistSyntaxError(1, "source exceeds 1 MiB")
        text = source

    circuit_name: str | None = None
    supply: SupplyMode | None = None
    supply_line = 0
    rails: list[Rail] = []
    inputs: list[str] = []
    outputs: list[str] = []
    internal: list[str] = []
    devices: list[tuple[int, Device]] = []
    locations: dict[tuple[str, str], int] = {}
    node_names: set[str] = set()
    dev_names: set[str] = set()
    ended = False
    last_line = 1

    def name_token(line_no: int, token: str, what: str) -> str:
        if not _NAME.match(token):
            raise NetlistSyntaxError(line_no, f"bad {what} name {token!r}")
        return token

    def declare_node(line_no: int, name: str, bucket: list[str]) -> None:
        if name in node_names:
            raise DuplicateNameError(line_no, f"name {name!r} already declared")
        node_names.add(name)
        bucket.append(name)
        locations[("node", name)] = line_no

    for line_no, raw in enumerate(text.splitlines(), start=1):
        last_line = line_no
        body = raw.split("#", 1)[0]
        tokens = body.split()
        if not tokens:
            continue
        if ended:
            raise NetlistSyntaxError(line_no, "content after end")
        keyword = tokens[0]

        if circuit_name is None:
            if keyword != "circuit":
                raise NetlistSyntaxError(line_no, "expected circuit declaration first")
            if len(tokens) != 2:
                raise NetlistSyntaxError(line_no, "circuit takes exactly one name")
            circuit_name = name_token(line_no, tokens[1], "circuit")
            locations[("circuit", circuit_name)] = line_no
            continue

        if keyword == "circuit":
            raise NetlistSyntaxError(line_no, "duplicate circuit declaration")
        if keyword == "supply":
            if supply is not None:
                raise NetlistSyntaxError(line_no, "duplicate supply declaration")
            if len(tokens) != 2 or tokens[1] not in ("two", "one"):
                raise NetlistSyntaxError(line_no, "supply takes 'two' or 'one'")
            supply = SupplyMode(tokens[1])
            supply_line = line_no
        elif keyword == "rail":
            if len(tokens) != 3:
                raise NetlistSyntaxError(line_no, "rail takes a name and a level")
            name = name_token(line_no, tokens[1], "rail")
            if tokens[2] not in _RAIL_LEVELS:
                raise NetlistSyntaxError(line_no, f"rail level must be 0, half or vdd, got {tokens[2]!r}")
            if name in node_names:
                raise DuplicateNameError(line_no, f"name {name!r} already declared")
            node_names.add(name)
            rails.append(Rail(name, _RAIL_LEVELS[tokens[2]]))
            locations[("rail", name)] = line_no
        elif keyword in ("input", "output", "node"):
            if len(tokens) < 2:
                raise NetlistSyntaxError(line_no, f"{keyword} takes at least one name")
            bucket = {"input": inputs, "output": outputs, "node": internal}[keyword]
            for token in tokens[1:]:
                declare_node(line_no, name_token(line_no, token, keyword), bucket)
        elif keyword == "dev":
            devices.append(_parse_device(line_no, tokens, dev_names))
            locations[("dev", devices[-1][1].name)] = line_no
        elif keyword == "end":
            if len(tokens) != 1:
                raise NetlistSyntaxError(line_no, "end takes no arguments")
            ended = True
        else:
            raise NetlistSyntaxError(line_no, f"unknown declaration {keyword!r}")

    if circuit_name is None:
        raise NetlistSyntaxError(last_line, "empty netlist: missing circuit declaration")
    if not ended:
        raise NetlistSyntaxError(last_line, "missing end")
    if supply is None:
        raise NetlistSyntaxError(last_line, "missing supply declaration")

    if supply is SupplyMode.ONE:
        for rail in rails:
            if rail.level == V_HALF:
                raise SupplyModeViolationError(
                    locations[("rail", rail.name)],
                    f"rail {rail.name} at the half level needs two supplies",
                )

    for line_no, dev in devices:
        for ref in (dev.gate, dev.a, dev.b):
            if ref not in node_names:
                raise UnresolvedReferenceError(line_no, f"device {dev.name}: unknown reference {ref!r}")

    netlist = SwitchNetlist(
        name=circuit_name,
        supply=supply,
        rails=tuple(rails),
        inputs=tuple(inputs),
        outputs=tuple(outputs),
        internal=tuple(internal),
        devices=tuple(dev for _, dev in devices),
    )
    locations[("supply", supply.value)] = supply_line
    return NetlistDocument(netlist=netlist, locations=locations)


def _parse_device(line_no: int, tokens: list[str], dev_names: set[str]) -> tuple[int, Device]:
    if len(tokens) < 7 or len(tokens) > 8:
        raise NetlistSyntaxError(line_no, "dev takes id, polarity, gate=, a=, b=, vth= and optional res")
    name = tokens[1]
    if not _NAME.match(name):
        raise NetlistSyntaxError(line_no, f"bad device id {name!r}")
    if name in dev_names:
        raise DuplicateNameError(line_no, f"device id {name!r} already declared")
    dev_names.add(name)
    polarity = tokens[2]
    if polarity not in ("N", "P"):
        raise NetlistSyntaxError(line_no, f"polarity must be N or P, got {polarity!r}")
    fields = {}
    for token, key in zip(tokens[3:7], ("gate", "a", "b", "vth")):
        prefix = key + "="
        if not token.startswith(prefix):
            raise NetlistSyntaxError(line_no, f"expected {prefix}..., got {token!r}")
        value = token[len(prefix):]
        if not value:
            raise NetlistSyntaxError(line_no, f"empty {key}= field")
        fields[key] = value
    resistive = False
    if len(tokens) == 8:
        if tokens[7] != "res":
            raise NetlistSyntaxError(line_no, f"trailing token must be 'res', got {tokens[7]!r}")
        resistive = True
    for key in ("gate", "a", "b"):
        if not _NAME.match(fields[key]):
            raise NetlistSyntaxError(line_no, f"bad {key} reference {fields[key]!r}")
    raw_vth = fields["vth"]
    if not _DECIMAL.match(raw_vth):
        raise InvalidThresholdError(line_no, f"vth must be a plain decimal, got {raw_vth!r}")
    vth = Fraction(raw_vth)
    if not (0 < vth < 1):
        raise InvalidThresholdError(line_no, f"vth {raw_vth} outside (0, 1)")
    return line_no, Device(
        name=name,
        polarity=polarity,
        gate=fields["gate"],
        a=fields["a"],
        b=fields["b"],
        vth=vth,
        resistive=resistive,
    )


def format_vth(vth: Fraction) -> str:
    """Minimal decimal expansion; only terminating fractions are representable."""
    digits = []
    remainder = vth
    while remainder:
        if len(digits) > 40:
            raise ValueError(f"vth {vth} has no terminating decimal expansion")
        remainder *= 10
        whole = int(remainder)
        digits.append(str(whole))
        remainder -= whole
    return "0." + "".join(digits) if digits else "0"


def serialize(netlist: SwitchNetlist) -> str:
    lines = [f"circuit {netlist.name}", f"supply {netlist.supply.value}"]
    for rail in netlist.rails:  # already sorted by name
        lines.append(f"rail {rail.name} {_LEVEL_NAMES[rail.level]}")
    if netlist.inputs:
        lines.append("input " + " ".join(netlist.inputs))
    if netlist.outputs:
        lines.append("output " + " ".join(netlist.outputs))
    if netlist.internal:
        lines.append("node " + " ".join(netlist.internal))
    for dev in netlist.devices:  # already sorted by id
        line = (
            f"dev {dev.name} {dev.polarity} gate={dev.gate} a={dev.a} b={dev.b}"
            f" vth={format_vth(dev.vth)}"
        )
        if dev.resistive:
            line += " res"
        lines.append(line)
    lines.append("end")
    return "\n".join(lines) + "\n"


def validate(document: NetlistDocument) -> list[Diagnostic]:
    """Lint a parsed document. Errors make it unusable, warnings are advice."""
    netlist = document.netlist
    diagnostics: list[Diagnostic] = []
    touched: set[str] = set()
    driven: set[str] = set()
    for dev in netlist.devices:
        touched.update((dev.gate, dev.a, dev.b))
        driven.update((dev.a, dev.b))
    for name in netlist.outputs:
        if name not in driven:
            diagnostics.append(
                Diagnostic(
                    severity="error",
                    code="undriven-output",
                    message=f"output {name} has no device channel attached",
                    line=document.locations.get(("node", name), 0),
                )
            )
    for name in netlist.internal + netlist.inputs:
        if name not in touched:
            diagnostics.append(
                Diagnostic(
                    severity="warning",
                    code="unused-node",
                    message=f"node {name} is not referenced by any device",
                    line=document.locations.get(("node", name), 0),
                )
            )
    return sorted(diagnostics, key=lambda d: (d.line, d.code, d.message))


def load_file(path) -> NetlistDocument:
    with open(path, "rb") as handle:
        return parse(handle.read())


def dump_file(path, netlist: SwitchNetlist) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(serialize(netlist))
