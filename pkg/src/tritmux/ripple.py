"""Multi-digit ripple-carry adders built from the single-digit circuits.

Words are DigitVectors, least significant digit first, with numeric digits
(0..radix-1 even for radix 2; digits are mapped to wire levels at the
circuit boundary). A RippleAdder instantiates a half adder for stage 0 and
full adders above it, and add() actually evaluates those gate graphs rather
than doing integer math, so a wiring fault in any stage shows up in the
result. oracle_check() compares against integer addition, exhaustively when
the input space is small enough and otherwise with a fixed-seed sample plus
the boundary patterns that exercise long carry chains.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import circuits, metrics
from .levels import check_radix
from .switchsim import SupplyMode


class InvalidWidthError(ValueError):
    pass


class WidthMismatchError(ValueError):
    pass


class RadixMismatchError(ValueError):
    pass


SAMPLE_SEED = 1585
MIN_SAMPLES = 10_000


@dataclass(frozen=True)
class DigitVector:
    """Fixed-width unsigned word, least significant digit first."""

    radix: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        check_radix(self.radix)
        object.__setattr__(self, "digits", tuple(self.digits))
        if not self.digits:
            raise InvalidWidthError("empty digit vector")
        for digit in self.digits:
            if not (0 <= digit < self.radix):
                raise ValueError(f"digit {digit!r} out of range for radix {self.radix}")

    @property
    def width(self) -> int:
        return len(self.digits)

    def value(self) -> int:
        total = 0
        for digit in reversed(self.digits):
            total = total * self.radix + digit
        return total

    @classmethod
    def from_int(cls, value: int, radix: int, width: int) -> "DigitVector":
        check_radix(radix)
        if width < 1:
            raise InvalidWidthError(f"width must be positive, got {width}")
        if not (0 <= value < radix**width):
            raise ValueError(f"{value} does not fit in {width} radix-{radix} digits")
        digits = []
        for _ in range(width):
            digits.append(value % radix)
            value //= radix
        return cls(radix=radix, digits=tuple(digits))


def _digit_to_level(digit: int, radix: int) -> int:
    return digit if radix == 3 else (2 if digit else 0)


def _level_to_digit(level: int, radix: int) -> int:
    return level if radix == 3 else (1 if level == 2 else 0)


class RippleAdder:
    """Stage 0 is a half adder, stages 1..width-1 are full adders."""

    def __init__(self, radix: int, width: int, fa_version: str = "v2") -> None:
        check_radix(radix)
        if width < 1:
            raise InvalidWidthError(f"width must be positive, got {width}")
        if radix == 3 and fa_version not in ("v1", "v2"):
            raise ValueError(f"full adder version must be v1 or v2, got {fa_version!r}")
        self.radix = radix
        self.width = width
        self.fa_version = fa_version if radix == 3 else None
        if radix == 3:
            ha = circuits.build_ternary_ha()
            fa = (
                circuits.build_ternary_fa_v1()
                if fa_version == "v1"
                else circuits.build_ternary_fa_v2()
            )
        else:
            ha = circuits.build_binary_ha_std14()
            fa = circuits.build_binary_fa_std28()
        self.stages = (ha,) + tuple(fa for _ in range(width - 1))

    def add(self, a: DigitVector, b: DigitVector) -> tuple[DigitVector, bool]:
        """Simulate the stage circuits digit by digit; returns (sum, carry out)."""
        if a.radix != self.radix or b.radix != self.radix:
            raise RadixMismatchError(f"expected radix {self.radix}, got {a.radix}/{b.radix}")
        if a.width != self.width or b.width != self.width:
            raise WidthMismatchError(f"expected width {self.width}, got {a.width}/{b.width}")
        digits = []
        carry = False
        for position, stage in enumerate(self.stages):
            assignment = {
                "X": _digit_to_level(a.digits[position], self.radix),
                "Y": _digit_to_level(b.digits[position], self.radix),
            }
            if position > 0:
                assignment["Cin"] = 2 if carry else 0
            out = stage.evaluate(assignment)
            digits.append(_level_to_digit(out["SUM"], self.radix))
            carry = out["COUT"] == 2
        return DigitVector(radix=self.radix, digits=tuple(digits)), carry

    def cost(self, mode: SupplyMode = SupplyMode.TWO) -> int:
        """Total transistors: the sum of the stage circuits' costs."""
        return sum(metrics.count_transistors(stage, mode).total for stage in self.stages)


def build_ripple_adder(radix: int, width: int, fa_version: str = "v2") -> RippleAdder:
    return RippleAdder(radix=radix, width=width, fa_version=fa_version)


def _boundary_pairs(radix: int, width: int) -> list[tuple[int, int]]:
    top = radix**width - 1
    pairs = [
        (0, 0),
        (top, top),
        (top, 1),
        (1, top),
    ]
    # force a carry out of each single position
    for position in range(width):
        unit = radix**position
        pairs.append(((radix - 1) * unit, unit))
    return pairs


def oracle_check(adder: RippleAdder, exhaustive_limit: int = 10_000):
    """Verify the adder against integer addition.

    Exhaustive when radix**(2*width) fits the limit, otherwise a fixed-seed
    uniform sample of at least MIN_SAMPLES pairs plus the boundary pairs.
    """
    radix, width = adder.radix, adder.width
    space = radix ** (2 * width)
    mismatches = []
    cases = 0

    def check(value_a: int, value_b: int) -> None:
        nonlocal cases
        cases += 1
        a = DigitVector.from_int(value_a, radix, width)
        b = DigitVector.from_int(value_b, radix, width)
        total, carry = adder.add(a, b)
        got = total.value() + (radix**width if carry else 0)
        if got != value_a + value_b:
            mismatches.append(
                circuits.Mismatch(
                    inputs=(value_a, value_b),
                    expected=(value_a + value_b,),
                    actual=(got,),
                )
            )

    if space <= exhaustive_limit:
        for value_a in range(radix**width):
            for value_b in range(radix**width):
                check(value_a, value_b)
    else:
        rng = random.Random(SAMPLE_SEED)
        top = radix**width - 1
        for _ in range(MIN_SAMPLES):
            check(rng.randint(0, top), rng.randint(0, top))
        for value_a, value_b in _boundary_pairs(radix, width):
            check(value_a, value_b)
    name = f"ripple-{radix}x{width}" + (f"-{adder.fa_version}" if adder.fa_version else "")
    return circuits.VerificationReport(circuit=name, cases_checked=cases, mismatches=tuple(mismatches))


@dataclass(frozen=True)
class WordComparison:
    bits: int
    trits: int
    trits_covering: int
    binary_total: int
    ternary_total: int
    ratio: Fraction
    information_ratio: float

    @property
    def ratio_display(self) -> str:
        return f"{float(self.ratio):.2f}"


def word_comparison(
    bits: int,
    mode: SupplyMode = SupplyMode.TWO,
    fa_version: str = "v2",
) -> WordComparison:
    """Compare an N-bit binary ripple adder against its ternary equivalent.

    The ternary width is the conventional nearest-integer equivalent; the
    covering width (smallest range superset) is reported alongside since the
    two differ for some widths.
    """
    trits = metrics.equivalent_trits(bits)
    binary = build_ripple_adder(2, bits)
    ternary = build_ripple_adder(3, trits, fa_version)
    binary_total = binary.cost(mode)
    ternary_total = ternary.cost(mode)
    return WordComparison(
        bits=bits,
        trits=trits,
        trits_covering=metrics.trits_covering(bits),
        binary_total=binary_total,
        ternary_total=ternary_total,
        ratio=Fraction(ternary_total, binary_total),
        information_ratio=metrics.information_ratio(3),
    )
