#!/usr/bin/env python3
"""Exercise the reversible comparator on every input pair.

The circuit writes (a >= b) into the flag qubit while leaving both price
registers and all scratch ancillas exactly as it found them.  Here the full
truth table for 3-bit prices is read back from basis-state simulations and
checked against plain integer comparison.
"""

import numpy as np

from q3pen import PriceScenario, build_comparator, classical_f, comparison_layout
from q3pen.statevec import prepare_basis

d = 3
scenario = PriceScenario(A=((1 << d) - 1,), B=(0,), epsilon=1)
layout = comparison_layout(scenario, "alice")
comparator = build_comparator(d, layout)
print(f"layout: {layout}")
print(f"comparator: {len(comparator)} mixed-polarity NOT gates, "
      f"{layout['ancilla'].width} scratch qubits\n")

print("      b=" + "  ".join(f"{b}" for b in range(1 << d)))
mismatches = 0
for a in range(1 << d):
    row = []
    for b in range(1 << d):
        x = (a << layout["priceA"].offset) | (b << layout["priceB"].offset)
        out = comparator.apply(prepare_basis(layout.num_qubits, x))
        y = int(np.argmax(np.abs(out.amplitudes)))
        flag = layout["flag"].value(y)
        clean = (layout["priceA"].value(y) == a and layout["priceB"].value(y) == b
                 and layout["ancilla"].value(y) == 0)
        mismatches += (flag != classical_f(a, b)) or not clean
        row.append(str(flag))
    print(f"a={a}     " + "  ".join(row))

print(f"\nmismatches against classical a >= b: {mismatches} of {1 << (2 * d)} pairs")
print("(1s on and above the diagonal: ties count as a >= b)")
