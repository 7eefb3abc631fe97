"""Logic levels, their voltage encoding, and the primitive gate functions.

Ternary signals take the values 0, 1 and 2, carried on a wire as 0, Vdd/2
and Vdd. Binary signals use only 0 and 2, so every binary value is a legal
ternary value and can feed a ternary input directly. Carries are plain bools
in arithmetic code and binary levels at circuit ports; conversion goes
through bool_to_bin / bin_to_bool only.

Voltages are exact Fractions normalized to Vdd = 1. Quiescent levels then
compare exactly and nothing downstream needs a tolerance.
"""

from __future__ import annotations

from fractions import Fraction

TERNARY_LEVELS = (0, 1, 2)
BINARY_LEVELS = (0, 2)

V_GND = Fraction(0)
V_HALF = Fraction(1, 2)
V_VDD = Fraction(1)

QUIESCENT = (V_GND, V_HALF, V_VDD)


class DomainViolationError(ValueError):
    """A value is outside the domain its consumer accepts."""


class UnresolvedVoltageError(ValueError):
    """A voltage does not sit exactly on a quiescent logic level."""


def check_level(x: int) -> int:
    if x not in TERNARY_LEVELS:
        raise DomainViolationError(f"not a ternary level: {x!r}")
    return x


def check_binary(x: int) -> int:
    # 1 is a legal ternary level but never a legal binary one
    if x not in BINARY_LEVELS:
        raise DomainViolationError(f"not a binary level: {x!r}")
    return x


def check_radix(radix: int) -> int:
    if radix not in (2, 3):
        raise DomainViolationError(f"unsupported radix: {radix!r}")
    return radix


def ni(x: int) -> int:
    """Negative ternary inverter: 2 when the input is 0, else 0."""
    return 2 if check_level(x) == 0 else 0


def pi(x: int) -> int:
    """Positive ternary inverter: 2 when the input is 0 or 1, else 0."""
    return 2 if check_level(x) <= 1 else 0


def succ(y: int) -> int:
    """Increment mod 3."""
    return (check_level(y) + 1) % 3


def pred(y: int) -> int:
    """Decrement mod 3."""
    return (check_level(y) + 2) % 3


def not_bin(x: int) -> int:
    """Binary inverter. Rejects the middle level instead of guessing."""
    return 2 - check_binary(x)


def mux3(s: int, a0: int, a1: int, a2: int) -> int:
    """Three-way multiplexer steered by a ternary select."""
    branches = (check_level(a0), check_level(a1), check_level(a2))
    return branches[check_level(s)]


def mux2(c: int, a0: int, a1: int) -> int:
    """Two-way multiplexer steered by a binary select."""
    check_level(a0)
    check_level(a1)
    return a0 if check_binary(c) == 0 else a1


def add_digits(x: int, y: int, cin: bool, radix: int = 3) -> tuple[int, bool]:
    """One-digit addition oracle: returns (sum digit, carry out)."""
    check_radix(radix)
    if not (0 <= x < radix) or not (0 <= y < radix):
        raise DomainViolationError(f"digit out of range for radix {radix}: {x}, {y}")
    total = x + y + (1 if cin else 0)
    return total % radix, total >= radix


def bool_to_bin(carry: bool) -> int:
    return 2 if carry else 0


def bin_to_bool(x: int) -> bool:
    return check_binary(x) == 2


_LEVEL_TO_V = {
    3: {0: V_GND, 1: V_HALF, 2: V_VDD},
    2: {0: V_GND, 2: V_VDD},
}


def level_to_voltage(x: int, radix: int = 3) -> Fraction:
    table = _LEVEL_TO_V[check_radix(radix)]
    if x not in table:
        raise DomainViolationError(f"level {x!r} not encodable at radix {radix}")
    return table[x]


def voltage_to_level(v: Fraction | int | float | str, radix: int = 3) -> int:
    table = _LEVEL_TO_V[check_radix(radix)]
    try:
        exact = Fraction(v)
    except (ValueError, TypeError) as exc:
        raise UnresolvedVoltageError(f"not a voltage: {v!r}") from exc
    for level, quiescent in table.items():
        if exact == quiescent:
            return level
    raise UnresolvedVoltageError(f"voltage {exact} is not a quiescent level at radix {radix}")
