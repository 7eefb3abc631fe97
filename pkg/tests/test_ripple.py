"""Multi-digit ripple adders: digit vectors, simulation, oracle checks."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tritmux import circuits, ripple
from tritmux.ripple import (
    DigitVector,
    InvalidWidthError,
    RadixMismatchError,
    WidthMismatchError,
    build_ripple_adder,
)
from tritmux.switchsim import SupplyMode


def test_digit_vector_value_round_trip():
    vector = DigitVector.from_int(42, 3, 4)
    assert vector.digits == (0, 2, 1, 1)  # 0 + 2*3 + 1*9 + 1*27
    assert vector.value() == 42
    assert DigitVector.from_int(255, 2, 8).value() == 255


def test_digit_vector_validation():
    with pytest.raises(ValueError):
        DigitVector(radix=3, digits=(0, 3))
    with pytest.raises(ValueError):
        DigitVector(radix=2, digits=(2,))  # binary digits are 0/1, not levels
    with pytest.raises(InvalidWidthError):
        DigitVector(radix=3, digits=())
    with pytest.raises(ValueError):
        DigitVector.from_int(9, 3, 2)


def test_adder_shape():
    adder = build_ripple_adder(3, 5, "v2")
    assert adder.stages[0].name == "ternary-ha"
    assert all(stage.name == "ternary-fa-v2" for stage in adder.stages[1:])
    binary = build_ripple_adder(2, 4)
    assert binary.stages[0].name == "binary-ha-std"
    assert all(stage.name == "binary-fa-std" for stage in binary.stages[1:])
    with pytest.raises(InvalidWidthError):
        build_ripple_adder(3, 0)
    with pytest.raises(ValueError):
        build_ripple_adder(3, 2, "v9")


def test_add_wraps_with_carry():
    adder = build_ripple_adder(2, 8)
    a = DigitVector.from_int(255, 2, 8)
    b = DigitVector.from_int(1, 2, 8)
    total, carry = adder.add(a, b)
    assert total.value() == 0
    assert carry is True


def test_add_mismatch_errors():
    adder = build_ripple_adder(3, 3)
    with pytest.raises(WidthMismatchError):
        adder.add(DigitVector.from_int(0, 3, 2), DigitVector.from_int(0, 3, 3))
    with pytest.raises(RadixMismatchError):
        adder.add(DigitVector.from_int(0, 2, 3), DigitVector.from_int(0, 2, 3))


@given(
    st.integers(min_value=1, max_value=4),
    st.sampled_from(["v1", "v2"]),
    st.data(),
)
@settings(max_examples=40, deadline=None)
def test_ternary_add_matches_integers(width, version, data):
    adder = build_ripple_adder(3, width, version)
    top = 3**width - 1
    value_a = data.draw(st.integers(min_value=0, max_value=top))
    value_b = data.draw(st.integers(min_value=0, max_value=top))
    total, carry = adder.add(
        DigitVector.from_int(value_a, 3, width), DigitVector.from_int(value_b, 3, width)
    )
    assert total.value() + (3**width if carry else 0) == value_a + value_b


def test_oracle_check_exhaustive_small():
    report = ripple.oracle_check(build_ripple_adder(3, 2))
    assert report.cases_checked == 81
    assert report.mismatches == ()
    report = ripple.oracle_check(build_ripple_adder(2, 3))
    assert report.cases_checked == 64
    assert report.mismatches == ()


def test_oracle_check_sampled_is_seeded_and_bounded():
    adder = build_ripple_adder(2, 8)
    first = ripple.oracle_check(adder)
    second = ripple.oracle_check(adder)
    assert first.cases_checked == second.cases_checked
    assert first.cases_checked >= ripple.MIN_SAMPLES
    assert first.mismatches == () and second.mismatches == ()


def test_oracle_check_catches_corrupted_stage_carry():
    # stage 3 carries out as if no carry ever happened
    adder = build_ripple_adder(3, 5, "v2")
    broken = circuits.CircuitGraph(
        name="ternary-fa-broken",
        radix=3,
        inputs=list(zip(("X", "Y", "Cin"), ("ternary", "ternary", "binary"))),
        outputs=[("SUM", "sumout"), ("COUT", "zeroed")],
        gates=list(adder.stages[3].gates) + [circuits.Gate("zeroed", circuits.GateKind.CONST, (), level=0)],
    )
    adder.stages = adder.stages[:3] + (broken,) + adder.stages[4:]
    report = ripple.oracle_check(adder)
    assert report.mismatches != ()


def test_oracle_check_catches_swapped_sum():
    adder = build_ripple_adder(3, 2, "v1")
    corrupted = []
    for gate in adder.stages[1].gates:
        if gate.name == "sumout":
            corrupted.append(
                circuits.Gate("sumout", circuits.GateKind.MUX2, ("Cin", "succ1", "sumha"))
            )
        else:
            corrupted.append(gate)
    broken = circuits.CircuitGraph(
        name="ternary-fa-swapped",
        radix=3,
        inputs=list(adder.stages[1].inputs),
        outputs=list(adder.stages[1].outputs),
        gates=corrupted,
    )
    adder.stages = (adder.stages[0], broken)
    report = ripple.oracle_check(adder)
    assert report.mismatches != ()


def test_costs_compose_from_stage_tables():
    assert build_ripple_adder(3, 5, "v2").cost(SupplyMode.TWO) == 42 + 4 * 72
    assert build_ripple_adder(3, 5, "v1").cost(SupplyMode.ONE) == 48 + 4 * 83
    assert build_ripple_adder(2, 8).cost(SupplyMode.TWO) == 14 + 7 * 28
    assert build_ripple_adder(3, 1).cost(SupplyMode.TWO) == 42


def test_word_comparison_eight_bits():
    word = ripple.word_comparison(8)
    assert word.trits == 5
    assert word.trits_covering == 6
    assert word.binary_total == 210
    assert word.ternary_total == 330
    assert word.ratio_display == "1.57"
    assert float(word.ratio) > 1.0
    assert word.information_ratio == pytest.approx(1.585, abs=0.001)


def test_word_comparison_single_bit():
    word = ripple.word_comparison(1)
    assert word.trits == 1
    assert word.binary_total == 14
    assert word.ternary_total == 42
    assert word.ratio_display == "3.00"
