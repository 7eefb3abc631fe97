"""Gate-graph construction, evaluation and exhaustive verification."""

import pytest

from tritmux import circuits
from tritmux.circuits import (
    BINARY,
    TERNARY,
    CircuitGraph,
    CycleDetectedError,
    Gate,
    GateKind,
    MissingInputError,
    PortSignatureMismatchError,
)
from tritmux.levels import DomainViolationError

EXPECTED_CASES = {
    "ternary-ha": 9,
    "ternary-fa-v1": 18,
    "ternary-fa-v2": 18,
    "binary-ha-mux": 4,
    "binary-ha-std": 4,
    "binary-fa-mux": 8,
    "binary-fa-std": 8,
}

# ternary half adder truth table, SUM and COUT (carry at binary level)
HA_ROWS = {
    (0, 0): (0, 0), (0, 1): (1, 0), (0, 2): (2, 0),
    (1, 0): (1, 0), (1, 1): (2, 0), (1, 2): (0, 2),
    (2, 0): (2, 0), (2, 1): (0, 2), (2, 2): (1, 2),
}

# full adder slice at Cin high
FA1_ROWS = {
    (0, 0): (1, 0), (0, 1): (2, 0), (0, 2): (0, 2),
    (1, 0): (2, 0), (1, 1): (0, 2), (1, 2): (1, 2),
    (2, 0): (0, 2), (2, 1): (1, 2), (2, 2): (2, 2),
}


def test_all_builders_verify_clean():
    for circuit_id, expected in EXPECTED_CASES.items():
        report = circuits.exhaustive_verify(circuits.build_circuit(circuit_id))
        assert report.cases_checked == expected, circuit_id
        assert report.mismatches == (), circuit_id


def test_ternary_ha_truth_table():
    table = circuits.exhaustive_table(circuits.build_ternary_ha())
    assert table.input_names == ("X", "Y")
    assert table.output_names == ("SUM", "COUT")
    assert len(table.rows) == 9
    for ins, outs in table.rows:
        assert outs == HA_ROWS[ins]


def test_fa_cin_high_slice_both_variants():
    for build in (circuits.build_ternary_fa_v1, circuits.build_ternary_fa_v2):
        circuit = build()
        for (x, y), expected in FA1_ROWS.items():
            out = circuit.evaluate({"X": x, "Y": y, "Cin": 2})
            assert (out["SUM"], out["COUT"]) == expected, (build.__name__, x, y)


def test_fa_cin_low_slice_matches_ha():
    ha = circuits.build_ternary_ha()
    for build in (circuits.build_ternary_fa_v1, circuits.build_ternary_fa_v2):
        fa = build()
        for x in (0, 1, 2):
            for y in (0, 1, 2):
                expected = ha.evaluate({"X": x, "Y": y})
                got = fa.evaluate({"X": x, "Y": y, "Cin": 0})
                assert got == expected


def test_fa_variants_agree_everywhere():
    v1 = circuits.build_ternary_fa_v1()
    v2 = circuits.build_ternary_fa_v2()
    cases = 0
    for x in (0, 1, 2):
        for y in (0, 1, 2):
            for cin in (0, 2):
                cases += 1
                assignment = {"X": x, "Y": y, "Cin": cin}
                assert v1.evaluate(assignment) == v2.evaluate(assignment)
    assert cases == 18


def _corrupted_ha() -> CircuitGraph:
    # succ and pred swapped in the SUM mux
    gates = [
        Gate("succ0", GateKind.SUCC, ("Y",)),
        Gate("pred0", GateKind.PRED, ("Y",)),
        Gate("sum0", GateKind.MUX3, ("X", "Y", "pred0", "succ0")),
        Gate("pi0", GateKind.PI, ("Y",)),
        Gate("ni0", GateKind.NI, ("Y",)),
        Gate("npi0", GateKind.NOT_BIN, ("pi0",)),
        Gate("nni0", GateKind.NOT_BIN, ("ni0",)),
        Gate("zero0", GateKind.CONST, (), level=0),
        Gate("carry0", GateKind.MUX3, ("X", "zero0", "npi0", "nni0")),
    ]
    return CircuitGraph(
        name="ternary-ha-corrupted",
        radix=3,
        inputs=[("X", TERNARY), ("Y", TERNARY)],
        outputs=[("SUM", "sum0"), ("COUT", "carry0")],
        gates=gates,
    )


def test_corrupted_ha_reports_exact_mismatches():
    report = circuits.exhaustive_verify(_corrupted_ha())
    # swap is invisible at X=0, wrong for every Y at X=1 and X=2
    assert report.cases_checked == 9
    assert len(report.mismatches) == 6
    assert all(m.inputs[0] in (1, 2) for m in report.mismatches)


def test_evaluate_missing_input():
    ha = circuits.build_ternary_ha()
    with pytest.raises(MissingInputError):
        ha.evaluate({"X": 0})


def test_evaluate_domain_checks():
    ha = circuits.build_ternary_ha()
    with pytest.raises(DomainViolationError):
        ha.evaluate({"X": 3, "Y": 0})
    fa = circuits.build_ternary_fa_v1()
    with pytest.raises(DomainViolationError):
        fa.evaluate({"X": 0, "Y": 0, "Cin": 1})
    bha = circuits.build_binary_ha_mux()
    with pytest.raises(DomainViolationError):
        bha.evaluate({"X": 1, "Y": 0})


def test_cycle_detection():
    with pytest.raises(CycleDetectedError):
        CircuitGraph(
            name="loop",
            radix=3,
            inputs=[("X", TERNARY)],
            outputs=[("OUT", "a")],
            gates=[
                Gate("a", GateKind.SUCC, ("b",)),
                Gate("b", GateKind.SUCC, ("a",)),
            ],
        )


def test_duplicate_net_rejected():
    with pytest.raises(ValueError, match="duplicate"):
        CircuitGraph(
            name="dup",
            radix=3,
            inputs=[("X", TERNARY)],
            outputs=[("OUT", "X")],
            gates=[Gate("X", GateKind.SUCC, ("X",))],
        )


def test_unknown_net_rejected():
    with pytest.raises(ValueError, match="unknown net"):
        CircuitGraph(
            name="dangling",
            radix=3,
            inputs=[("X", TERNARY)],
            outputs=[("OUT", "a")],
            gates=[Gate("a", GateKind.SUCC, ("nope",))],
        )


def test_binary_port_static_check():
    # a ternary input may not drive a binary inverter
    with pytest.raises(DomainViolationError):
        CircuitGraph(
            name="bad-domain",
            radix=3,
            inputs=[("X", TERNARY)],
            outputs=[("OUT", "a")],
            gates=[Gate("a", GateKind.NOT_BIN, ("X",))],
        )


def test_const_gate_arity_and_level():
    with pytest.raises(DomainViolationError):
        Gate("k", GateKind.CONST, (), level=5)
    with pytest.raises(ValueError):
        Gate("s", GateKind.SUCC, ("a",), level=1)
    with pytest.raises(ValueError):
        Gate("m", GateKind.MUX3, ("a", "b"))


def test_port_signature_mismatch():
    not_an_adder = CircuitGraph(
        name="just-succ",
        radix=3,
        inputs=[("A", TERNARY)],
        outputs=[("OUT", "s")],
        gates=[Gate("s", GateKind.SUCC, ("A",))],
    )
    with pytest.raises(PortSignatureMismatchError):
        circuits.exhaustive_verify(not_an_adder)


def test_verify_rejects_wrong_cin_domain():
    bad = CircuitGraph(
        name="ternary-cin",
        radix=3,
        inputs=[("X", TERNARY), ("Y", TERNARY), ("Cin", TERNARY)],
        outputs=[("SUM", "s"), ("COUT", "k")],
        gates=[
            Gate("s", GateKind.SUCC, ("X",)),
            Gate("k", GateKind.CONST, (), level=0),
        ],
    )
    with pytest.raises(PortSignatureMismatchError):
        circuits.exhaustive_verify(bad)


def test_table_csv_shape():
    text = circuits.table_to_csv(circuits.exhaustive_table(circuits.build_ternary_ha()))
    lines = text.strip().split("\n")
    assert lines[0] == "X,Y,SUM,COUT"
    assert len(lines) == 10
    assert lines[1] == "0,0,0,0"
    assert lines[-1] == "2,2,1,2"


def test_verification_csv_has_match_flags():
    text = circuits.verification_to_csv(circuits.build_ternary_ha())
    lines = text.strip().split("\n")
    assert lines[0] == "X,Y,SUM,COUT,expected_SUM,expected_COUT,match"
    assert len(lines) == 10
    assert all(line.endswith(",1") for line in lines[1:])
    corrupted = circuits.verification_to_csv(_corrupted_ha())
    bad_rows = [line for line in corrupted.strip().split("\n")[1:] if line.endswith(",0")]
    assert len(bad_rows) == 6


def test_gate_ids_are_stable():
    a = circuits.build_ternary_fa_v2()
    b = circuits.build_ternary_fa_v2()
    assert [g.name for g in a.gates] == [g.name for g in b.gates]
    assert a.evaluate({"X": 2, "Y": 2, "Cin": 2}) == {"SUM": 2, "COUT": 2}


def test_build_circuit_unknown_id():
    with pytest.raises(KeyError):
        circuits.build_circuit("ternary-fa-v3")
