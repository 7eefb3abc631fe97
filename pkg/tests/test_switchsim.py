"""Solver semantics: resolution rules, determinism, and the iteration bound."""

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tritmux import refnets
from tritmux.switchsim import (
    CONTENTION,
    FLOATING,
    Device,
    IllegalInputVoltageError,
    NetlistStructureError,
    NodeState,
    Rail,
    StateKind,
    SupplyMode,
    SwitchNetlist,
    iteration_bound,
    solve,
)

H = Fraction(1, 2)


def _inverter(vth=H) -> SwitchNetlist:
    return SwitchNetlist(
        name="inv",
        supply=SupplyMode.TWO,
        rails=(Rail("vdd", 1), Rail("gnd", 0)),
        inputs=("x",),
        outputs=("out",),
        internal=(),
        devices=(
            Device("pu", "P", gate="x", a="vdd", b="out", vth=vth),
            Device("pd", "N", gate="x", a="out", b="gnd", vth=vth),
        ),
    )


def test_inverter_levels():
    inv = _inverter()
    assert solve(inv, {"x": 0}).voltage("out") == 1
    assert solve(inv, {"x": 1}).voltage("out") == 0


def test_inverter_contention_at_middle():
    # both devices conduct at the exact threshold
    result = solve(_inverter(), {"x": H})
    assert result.states["out"] == CONTENTION
    assert result.states["out"].kind is StateKind.CONTENTION


def test_threshold_semantics_absolute():
    # an N device with a quarter threshold sees the middle level as on
    n_low = SwitchNetlist(
        name="nlow",
        supply=SupplyMode.TWO,
        rails=(Rail("gnd", 0),),
        inputs=("g",),
        outputs=("out",),
        internal=(),
        devices=(Device("d", "N", gate="g", a="gnd", b="out", vth=Fraction(1, 4)),),
    )
    assert solve(n_low, {"g": H}).voltage("out") == 0
    n_high = SwitchNetlist(
        name="nhigh",
        supply=SupplyMode.TWO,
        rails=(Rail("gnd", 0),),
        inputs=("g",),
        outputs=("out",),
        internal=(),
        devices=(Device("d", "N", gate="g", a="gnd", b="out", vth=Fraction(3, 4)),),
    )
    assert solve(n_high, {"g": H}).states["out"] is FLOATING


def test_pass_gate_transmits_any_level():
    # no degradation: the middle level passes through an on transistor
    net = SwitchNetlist(
        name="pass",
        supply=SupplyMode.TWO,
        rails=(Rail("vdd", 1),),
        inputs=("a",),
        outputs=("out",),
        internal=(),
        devices=(Device("t", "N", gate="vdd", a="a", b="out", vth=H),),
    )
    assert solve(net, {"a": H}).voltage("out") == H
    assert solve(net, {"a": 0}).voltage("out") == 0


def test_floating_and_contention():
    net = SwitchNetlist(
        name="fc",
        supply=SupplyMode.TWO,
        rails=(Rail("vdd", 1), Rail("gnd", 0)),
        inputs=("g",),
        outputs=("out",),
        internal=(),
        devices=(
            Device("u", "N", gate="g", a="vdd", b="out", vth=H),
            Device("d", "N", gate="g", a="gnd", b="out", vth=H),
        ),
    )
    assert solve(net, {"g": 0}).states["out"] is FLOATING
    assert solve(net, {"g": 1}).states["out"] is CONTENTION


def test_divider_resolves_half_and_flags_static_power():
    net = SwitchNetlist(
        name="div",
        supply=SupplyMode.ONE,
        rails=(Rail("vdd", 1), Rail("gnd", 0)),
        inputs=("en",),
        outputs=("out",),
        internal=(),
        devices=(
            Device("r1", "N", gate="en", a="vdd", b="out", vth=H, resistive=True),
            Device("r2", "N", gate="en", a="out", b="gnd", vth=H, resistive=True),
        ),
    )
    on = solve(net, {"en": 1})
    assert on.voltage("out") == H
    assert on.static_power_nodes == frozenset({"out"})
    off = solve(net, {"en": 0})
    assert off.states["out"] is FLOATING
    assert off.static_power_nodes == frozenset()


def test_strong_beats_weak():
    net = SwitchNetlist(
        name="sw",
        supply=SupplyMode.TWO,
        rails=(Rail("vdd", 1), Rail("gnd", 0)),
        inputs=("en",),
        outputs=("out",),
        internal=(),
        devices=(
            Device("w", "N", gate="en", a="vdd", b="out", vth=H, resistive=True),
            Device("s", "N", gate="en", a="gnd", b="out", vth=H),
        ),
    )
    result = solve(net, {"en": 1})
    assert result.voltage("out") == 0
    assert result.static_power_nodes == frozenset()


def test_weak_contention_between_non_rail_levels():
    net = SwitchNetlist(
        name="wc",
        supply=SupplyMode.TWO,
        rails=(Rail("vdd", 1), Rail("half", H)),
        inputs=("en",),
        outputs=("out",),
        internal=(),
        devices=(
            Device("w1", "N", gate="en", a="vdd", b="out", vth=H, resistive=True),
            Device("w2", "N", gate="en", a="half", b="out", vth=H, resistive=True),
        ),
    )
    assert solve(net, {"en": 1}).states["out"] == CONTENTION


def test_input_validation():
    inv = _inverter()
    with pytest.raises(IllegalInputVoltageError):
        solve(inv, {})
    with pytest.raises(IllegalInputVoltageError):
        solve(inv, {"x": 0, "bogus": 1})
    with pytest.raises(IllegalInputVoltageError):
        solve(inv, {"x": Fraction(1, 3)})
    with pytest.raises(IllegalInputVoltageError):
        solve(inv, {"x": 0.3})


def test_inputs_stay_resolved():
    inv = _inverter()
    result = solve(inv, {"x": 1})
    assert result.states["x"] == NodeState.resolved(Fraction(1))


def test_structure_validation():
    with pytest.raises(NetlistStructureError):
        Device("d", "X", gate="a", a="b", b="c", vth=H)
    with pytest.raises(NetlistStructureError):
        Device("d", "N", gate="a", a="b", b="c", vth=Fraction(3, 2))
    with pytest.raises(NetlistStructureError):
        Rail("r", Fraction(1, 3))
    with pytest.raises(NetlistStructureError):
        SwitchNetlist(
            name="dup",
            supply=SupplyMode.TWO,
            rails=(Rail("a", 1),),
            inputs=("a",),
            outputs=("out",),
            internal=(),
            devices=(),
        )
    with pytest.raises(NetlistStructureError):
        SwitchNetlist(
            name="halfrail",
            supply=SupplyMode.ONE,
            rails=(Rail("half", H),),
            inputs=(),
            outputs=(),
            internal=(),
            devices=(),
        )
    with pytest.raises(NetlistStructureError):
        SwitchNetlist(
            name="dangling",
            supply=SupplyMode.TWO,
            rails=(),
            inputs=("a",),
            outputs=(),
            internal=(),
            devices=(Device("d", "N", gate="a", a="a", b="nowhere", vth=H),),
        )


def _rename_devices(netlist: SwitchNetlist, mapping) -> SwitchNetlist:
    devices = tuple(
        Device(
            name=mapping[d.name],
            polarity=d.polarity,
            gate=d.gate,
            a=d.a,
            b=d.b,
            vth=d.vth,
            resistive=d.resistive,
        )
        for d in netlist.devices
    )
    return SwitchNetlist(
        name=netlist.name,
        supply=netlist.supply,
        rails=netlist.rails,
        inputs=netlist.inputs,
        outputs=netlist.outputs,
        internal=netlist.internal,
        devices=devices,
    )


@given(st.randoms(use_true_random=False))
def test_solver_deterministic_under_device_permutation(rng):
    # renaming devices permutes their normalized order; results must not move
    netlist = refnets.netlist_mux3()
    names = [d.name for d in netlist.devices]
    shuffled = names[:]
    rng.shuffle(shuffled)
    renamed = _rename_devices(netlist, dict(zip(names, shuffled)))
    plan = refnets.oracle_plan("mux3")
    for assignment in plan.assignments():
        inputs = {k: v for k, v in plan.provide(**assignment).items() if k in netlist.inputs}
        a = solve(netlist, inputs)
        b = solve(renamed, inputs)
        assert a.states == b.states
        assert a.static_power_nodes == b.static_power_nodes
        assert a.iterations == b.iterations


def test_declaration_order_is_normalized_away():
    netlist = refnets.netlist_succ(SupplyMode.ONE)
    devices = list(netlist.devices)
    random.Random(7).shuffle(devices)
    shuffled = SwitchNetlist(
        name=netlist.name,
        supply=netlist.supply,
        rails=tuple(reversed(netlist.rails)),
        inputs=netlist.inputs,
        outputs=netlist.outputs,
        internal=tuple(reversed(netlist.internal)),
        devices=tuple(devices),
    )
    assert shuffled == netlist


def test_iteration_bound_holds_on_reference_netlists():
    for netlist in refnets.reference_netlists():
        plan = refnets.oracle_plan(refnets.oracle_for_netlist(netlist.name))
        bound = iteration_bound(netlist)
        for assignment in plan.assignments():
            provided = plan.provide(**assignment)
            inputs = {k: provided[k] for k in netlist.inputs}
            result = solve(netlist, inputs)
            assert result.iterations <= bound, netlist.name


def test_solver_is_idempotent_across_calls():
    netlist = refnets.netlist_pred_full(SupplyMode.ONE)
    first = solve(netlist, {"y": 1})
    second = solve(netlist, {"y": 1})
    assert first == second
