"""Request and response models for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class CircuitInfo(BaseModel):
    id: str
    radix: int
    inputs: list[str]
    outputs: list[str]


class CircuitList(BaseModel):
    circuits: list[CircuitInfo]


class MismatchModel(BaseModel):
    inputs: list[int]
    expected: list[int]
    actual: list[int]


class VerifyResponse(BaseModel):
    circuit: str
    cases_checked: int
    mismatches: list[MismatchModel]
    ok: bool


class TableRow(BaseModel):
    inputs: list[int]
    outputs: list[int]


class TableResponse(BaseModel):
    circuit: str
    input_names: list[str]
    output_names: list[str]
    rows: list[TableRow]


class CostRowModel(BaseModel):
    section: str | None = None
    component: str
    count: int


class CostResponse(BaseModel):
    circuit: str
    supply: str
    rows: list[CostRowModel]
    row_sum: int
    printed_total: int | None
    total: int
    discrepancy: bool


class RatioRow(BaseModel):
    ternary: str
    binary: str
    ternary_count: int
    binary_count: int
    ratio: float
    ratio_exact: str
    ratio_display: str
    exceeds_information_ratio: bool


class RatiosResponse(BaseModel):
    information_ratio: float
    rows: list[RatioRow]


class PriorWorkModel(BaseModel):
    citation: str
    circuit_class: str
    transistor_count: int
    supply_mode: str | None
    proposed: bool


class PriorWorkResponse(BaseModel):
    entries: list[PriorWorkModel]


class WordComparisonResponse(BaseModel):
    bits: int
    trits: int
    trits_covering: int
    binary_total: int
    ternary_total: int
    ratio: float
    ratio_exact: str
    ratio_display: str
    information_ratio: float


class SimulateRequest(BaseModel):
    source: str = Field(max_length=1 << 20, description=".tnl netlist text")
    inputs: dict[str, int] = Field(default_factory=dict, description="input node -> level")


class NodeStateModel(BaseModel):
    state: str
    level: int | None = None
    voltage: str | None = None


class SimulateResponse(BaseModel):
    circuit: str
    outputs: dict[str, NodeStateModel]
    nodes: dict[str, NodeStateModel]
    static_power_nodes: list[str]
    iterations: int
    ok: bool


class SweepRequest(BaseModel):
    source: str = Field(max_length=1 << 20, description=".tnl netlist text")
    oracle: str


class SweepIssueModel(BaseModel):
    assignment: dict[str, int]
    node: str
    detail: str


class SweepResponse(BaseModel):
    netlist: str
    oracle: str
    cases_checked: int
    mismatches: list[SweepIssueModel]
    anomalies: list[SweepIssueModel]
    ok: bool


class ValidateRequest(BaseModel):
    source: str = Field(max_length=1 << 20, description=".tnl netlist text")


class DiagnosticModel(BaseModel):
    severity: str
    code: str
    message: str
    line: int


class ValidateResponse(BaseModel):
    circuit: str
    diagnostics: list[DiagnosticModel]
    ok: bool


class ServiceInfo(BaseModel):
    name: str
    version: str
    circuits: list[str]
    oracles: list[str]
