#!/usr/bin/env python3
"""Walk the six-step negotiation end to end on the six-product scenario.

The buyer's limits beat the seller's asks on five of the six products, and
the threshold is five, so an honest run must end in a trade.
"""

from q3pen import PriceScenario, run_negotiation, transcript_costs
from q3pen.counting import CountingParams

scenario = PriceScenario(A=(3, 2, 5, 4, 7, 6), B=(2, 2, 5, 5, 6, 6), epsilon=5)
print("buyer limits :", scenario.A)
print("seller asks  :", scenario.B)
print(f"threshold    : {scenario.epsilon} of {scenario.N} products")
print(f"registers    : index {scenario.n} qubits, price {scenario.d} qubits")
print()

transcript = run_negotiation(scenario, CountingParams(t=6, shots=11), master_seed=42)

print("messages on the channel:")
for msg in transcript.messages:
    cost = f"{msg.qubit_cost} qubits" if msg.qubit_cost else f"{msg.cbit_cost} cbits"
    value = "" if msg.value is None else f"  (value {msg.value})"
    print(f"  step {msg.step}: {msg.sender:>5} -> {msg.recipient:<5} {msg.label:<12} {cost}{value}")
print()

t_A, t_B = transcript.t_A, transcript.t_B
print(f"buyer's count estimate  t_A = {t_A.m_hat}  (error bound {t_A.delta:.3f})")
print(f"seller's count estimate t_B = {t_B.m_hat}  (error bound {t_B.delta:.3f})")
print(f"consistency |t_A - t_B| <= {transcript.delta:.3f}:", transcript.consistent)
print("commitment checks:", transcript.verifications)
print()

costs = transcript_costs(transcript)
print(f"headline traffic: {costs.qubits} qubits + {costs.cbits} cbits "
      f"(+ {costs.fingerprint_qubits} fingerprint qubits)")
print("trade:", transcript.trade)
