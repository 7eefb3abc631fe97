"""FastAPI service exposing the simulator, verifier and cost tables."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException, Query

from .. import __version__, circuits, metrics, refnets, ripple, tnl
from ..levels import level_to_voltage, voltage_to_level
from ..switchsim import (
    IllegalInputVoltageError,
    NodeState,
    OscillationError,
    SupplyMode,
    solve,
)
from . import schemas


def _build(circuit_id: str) -> circuits.CircuitGraph:
    try:
        return circuits.build_circuit(circuit_id)
    except KeyError:
        raise HTTPException(status_code=404, detail=f"unknown circuit {circuit_id!r}")


def _supply(value: str) -> SupplyMode:
    if value not in ("two", "one"):
        raise HTTPException(status_code=422, detail="supply must be 'two' or 'one'")
    return SupplyMode(value)


def _node_state(state: NodeState) -> schemas.NodeStateModel:
    if not state.is_resolved:
        return schemas.NodeStateModel(state=state.kind.value)
    try:
        level = voltage_to_level(state.voltage)
    except Exception:
        level = None
    return schemas.NodeStateModel(state="resolved", level=level, voltage=str(state.voltage))


def _parse_source(source: str) -> tnl.NetlistDocument:
    try:
        return tnl.parse(source)
    except tnl.NetlistError as exc:
        raise HTTPException(status_code=422, detail=str(exc))


def create_app() -> FastAPI:
    app = FastAPI(
        title="tritmux",
        version=__version__,
        description="MUX-based ternary and binary adders: simulation, verification, costs.",
    )

    @app.get("/", response_model=schemas.ServiceInfo)
    def info() -> schemas.ServiceInfo:
        return schemas.ServiceInfo(
            name="tritmux",
            version=__version__,
            circuits=list(circuits.BUILDERS),
            oracles=list(refnets.ORACLES),
        )

    @app.get("/circuits", response_model=schemas.CircuitList)
    def list_circuits() -> schemas.CircuitList:
        out = []
        for circuit_id in circuits.BUILDERS:
            circuit = circuits.build_circuit(circuit_id)
            out.append(
                schemas.CircuitInfo(
                    id=circuit_id,
                    radix=circuit.radix,
                    inputs=list(circuit.input_names),
                    outputs=list(circuit.output_names),
                )
            )
        return schemas.CircuitList(circuits=out)

    @app.get("/circuits/{circuit_id}/verify", response_model=schemas.VerifyResponse)
    def verify(circuit_id: str) -> schemas.VerifyResponse:
        report = circuits.exhaustive_verify(_build(circuit_id))
        return schemas.VerifyResponse(
            circuit=report.circuit,
            cases_checked=report.cases_checked,
            mismatches=[
                schemas.MismatchModel(
                    inputs=list(m.inputs), expected=list(m.expected), actual=list(m.actual)
                )
                for m in report.mismatches
            ],
            ok=report.ok,
        )

    @app.get("/circuits/{circuit_id}/table", response_model=schemas.TableResponse)
    def table(circuit_id: str) -> schemas.TableResponse:
        result = circuits.exhaustive_table(_build(circuit_id))
        return schemas.TableResponse(
            circuit=result.circuit,
            input_names=list(result.input_names),
            output_names=list(result.output_names),
            rows=[
                schemas.TableRow(inputs=list(ins), outputs=list(outs))
                for ins, outs in result.rows
            ],
        )

    @app.get("/circuits/{circuit_id}/cost", response_model=schemas.CostResponse)
    def cost(circuit_id: str, supply: str = Query(default="two")) -> schemas.CostResponse:
        breakdown = metrics.count_transistors(_build(circuit_id), _supply(supply))
        return schemas.CostResponse(
            circuit=breakdown.circuit,
            supply=breakdown.supply.value,
            rows=[
                schemas.CostRowModel(section=r.section, component=r.component, count=r.count)
                for r in breakdown.rows
            ],
            row_sum=breakdown.row_sum,
            printed_total=breakdown.printed_total,
            total=breakdown.total,
            discrepancy=breakdown.discrepancy,
        )

    @app.get("/ratios", response_model=schemas.RatiosResponse)
    def ratios() -> schemas.RatiosResponse:
        report = metrics.ratio_report()
        return schemas.RatiosResponse(
            information_ratio=report.information_ratio,
            rows=[
                schemas.RatioRow(
                    ternary=row.ternary,
                    binary=row.binary,
                    ternary_count=row.ternary_count,
                    binary_count=row.binary_count,
                    ratio=float(row.ratio),
                    ratio_exact=f"{row.ratio.numerator}/{row.ratio.denominator}",
                    ratio_display=row.ratio_display,
                    exceeds_information_ratio=row.exceeds_information_ratio(),
                )
                for row in report.rows
            ],
        )

    @app.get("/prior-work", response_model=schemas.PriorWorkResponse)
    def prior_work() -> schemas.PriorWorkResponse:
        return schemas.PriorWorkResponse(
            entries=[
                schemas.PriorWorkModel(
                    citation=e.citation,
                    circuit_class=e.circuit_class,
                    transistor_count=e.transistor_count,
                    supply_mode=e.supply_mode.value if e.supply_mode else None,
                    proposed=e.proposed,
                )
                for e in metrics.prior_work_tables()
            ]
        )

    @app.get("/word-comparison", response_model=schemas.WordComparisonResponse)
    def word_comparison(
        bits: int = Query(default=8, ge=1, le=64),
        supply: str = Query(default="two"),
        fa_version: str = Query(default="v2"),
    ) -> schemas.WordComparisonResponse:
        if fa_version not in ("v1", "v2"):
            raise HTTPException(status_code=422, detail="fa_version must be 'v1' or 'v2'")
        word = ripple.word_comparison(bits, _supply(supply), fa_version)
        return schemas.WordComparisonResponse(
            bits=word.bits,
            trits=word.trits,
            trits_covering=word.trits_covering,
            binary_total=word.binary_total,
            ternary_total=word.ternary_total,
            ratio=float(word.ratio),
            ratio_exact=f"{word.ratio.numerator}/{word.ratio.denominator}",
            ratio_display=word.ratio_display,
            information_ratio=word.information_ratio,
        )

    @app.post("/netlists/validate", response_model=schemas.ValidateResponse)
    def validate(request: schemas.ValidateRequest) -> schemas.ValidateResponse:
        document = _parse_source(request.source)
        diagnostics = tnl.validate(document)
        return schemas.ValidateResponse(
            circuit=document.netlist.name,
            diagnostics=[
                schemas.DiagnosticModel(
                    severity=d.severity, code=d.code, message=d.message, line=d.line
                )
                for d in diagnostics
            ],
            ok=not any(d.severity == "error" for d in diagnostics),
        )

    @app.post("/netlists/simulate", response_model=schemas.SimulateResponse)
    def simulate(request: schemas.SimulateRequest) -> schemas.SimulateResponse:
        document = _parse_source(request.source)
        netlist = document.netlist
        voltages = {}
        for name, level in request.inputs.items():
            if level not in (0, 1, 2):
                raise HTTPException(
                    status_code=422, detail=f"input {name}: level must be 0, 1 or 2"
                )
            voltages[name] = level_to_voltage(level)
        try:
            result = solve(netlist, voltages)
        except IllegalInputVoltageError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        except OscillationError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        outputs = {name: _node_state(result.states[name]) for name in netlist.outputs}
        return schemas.SimulateResponse(
            circuit=netlist.name,
            outputs=outputs,
            nodes={name: _node_state(state) for name, state in sorted(result.states.items())},
            static_power_nodes=sorted(result.static_power_nodes),
            iterations=result.iterations,
            ok=all(state.state == "resolved" for state in outputs.values()),
        )

    @app.post("/netlists/sweep", response_model=schemas.SweepResponse)
    def sweep(request: schemas.SweepRequest) -> schemas.SweepResponse:
        document = _parse_source(request.source)
        try:
            plan = refnets.oracle_plan(request.oracle)
        except KeyError:
            raise HTTPException(status_code=422, detail=f"unknown oracle {request.oracle!r}")
        try:
            report = refnets.equivalence_sweep(document.netlist, plan)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        def issues(items):
            return [
                schemas.SweepIssueModel(
                    assignment=dict(issue.assignment), node=issue.node, detail=issue.detail
                )
                for issue in items
            ]
        return schemas.SweepResponse(
            netlist=report.netlist,
            oracle=report.oracle,
            cases_checked=report.cases_checked,
            mismatches=issues(report.mismatches),
            anomalies=issues(report.anomalies),
            ok=report.ok,
        )

    return app


app = create_app()
