"""MUX-based ternary and binary adders: simulation, verification, costs.

The package has two simulation levels. circuits models the adders as DAGs
of ternary primitives and verifies them exhaustively against digit
addition; switchsim models the same primitives as transistor netlists with
a conservative steady-state solver, and refnets checks those against the
behavioral functions. metrics carries the transistor budgets and the
ternary-versus-binary comparisons, ripple composes multi-digit adders, tnl
reads and writes netlist files, and cli / service are the two front ends.
"""

__version__ = "0.1.0"

from .circuits import (  # noqa: F401
    BUILDERS,
    CircuitGraph,
    Gate,
    GateKind,
    build_circuit,
    exhaustive_table,
    exhaustive_verify,
)
from .levels import (  # noqa: F401
    add_digits,
    mux2,
    mux3,
    ni,
    not_bin,
    pi,
    pred,
    succ,
)
from .metrics import (  # noqa: F401
    count_transistors,
    equivalent_trits,
    fa_cost_table,
    ha_cost_table,
    information_ratio,
    prior_work_tables,
    ratio_report,
)
from .refnets import (  # noqa: F401
    ORACLES,
    equivalence_sweep,
    oracle_plan,
    reference_netlists,
    static_power_scan,
)
from .ripple import DigitVector, RippleAdder, build_ripple_adder, oracle_check, word_comparison  # noqa: F401
from .switchsim import Device, Rail, SupplyMode, SwitchNetlist, solve  # noqa: F401
from .tnl import parse, serialize, validate  # noqa: F401
