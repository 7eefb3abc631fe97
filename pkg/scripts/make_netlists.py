"""Regenerate the netlists/ directory from the reference builders."""

from __future__ import annotations

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from tritmux import refnets, tnl  # noqa: E402
from tritmux.switchsim import SupplyMode  # noqa: E402

OUT = pathlib.Path(__file__).resolve().parents[1] / "netlists"

# file stem -> netlist; the succ/pred stems without _core are the
# self-contained variants so they can be driven by the ternary input directly
FILES = {
    "ni": refnets.netlist_inverter("ni"),
    "pi": refnets.netlist_inverter("pi"),
    "not": refnets.netlist_inverter("not"),
    "mux2": refnets.netlist_mux2(),
    "mux3": refnets.netlist_mux3(),
    "succ_2ps": refnets.netlist_succ_full(SupplyMode.TWO),
    "succ_1ps": refnets.netlist_succ_full(SupplyMode.ONE),
    "pred_2ps": refnets.netlist_pred_full(SupplyMode.TWO),
    "pred_1ps": refnets.netlist_pred_full(SupplyMode.ONE),
    "succ_2ps_core": refnets.netlist_succ(SupplyMode.TWO),
    "succ_1ps_core": refnets.netlist_succ(SupplyMode.ONE),
    "pred_2ps_core": refnets.netlist_pred(SupplyMode.TWO),
    "pred_1ps_core": refnets.netlist_pred(SupplyMode.ONE),
}


def main() -> None:
    OUT.mkdir(exist_ok=True)
    for stem, netlist in FILES.items():
        path = OUT / f"{stem}.tnl"
        tnl.dump_file(path, netlist)
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
