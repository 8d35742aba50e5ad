#!/usr/bin/env python3
"""What a dishonest party can and cannot get away with.

Measuring the received price state yields exactly one (index, price) pair,
uniformly at random, and destroys the superposition the cheater needed for
counting.  The entropy bound says no cleverer measurement beats log2(N)
bits.  To survive the later consistency check the cheater has to unveil a
count that differs from the one they committed, and the fingerprint
verification catches that with probability 1 - overlap^2.
"""

import math

from q3pen import (
    PriceScenario,
    holevo_bound,
    make_random_code,
    measurement_attack_statistics,
    run_with_adversary,
)
from q3pen.commitment import empirical_accept_rate, fingerprint_state
from q3pen.counting import CountingParams
from q3pen.statevec import inner_product

scenario = PriceScenario(A=(3, 2, 5, 4, 7, 6), B=(2, 2, 5, 5, 6, 6), epsilon=5)

print("-- the measurement attack ------------------------------------")
stats = measurement_attack_statistics(scenario, trials=60000, seed=9)
print("index frequencies over 60000 attacks (uniform 1/6 = 0.1667):")
for i in range(1, scenario.N + 1):
    print(f"  product {i}: {stats.frequency(i):.4f}")
print("every observed pair matched the buyer's actual price:", stats.pairs_valid)
print(f"entropy cap on any measurement: {holevo_bound(scenario):.4f} bits"
      f" = log2({scenario.N}); one pair is all there is\n")

print("-- one full adversarial run ----------------------------------")
tr = run_with_adversary(scenario, "bob", "measure-and-cheat",
                        CountingParams(t=6, shots=11), master_seed=5)
adv = tr.adversary
print(f"cheater learned (index, price) = ({adv['learned']['index']}, {adv['learned']['price']})")
print(f"committed a blind guess of {adv['committed']}, then parroted the honest"
      f" count {adv['unveiled']} at unveil time")
print(f"verification rejected: {adv['detected_by']['verification']}, trade: {tr.trade}\n")

print("-- cheating-unveil odds --------------------------------------")
code = make_random_code(scenario.n, c=2.0, seed=1)
print(f"code: {code.n} -> {code.m} bits, distance window {code.delta_code}")
committed = 5
for unveiled in range(8):
    overlap = inner_product(fingerprint_state(committed, code),
                            fingerprint_state(unveiled, code))
    rate = empirical_accept_rate(committed, unveiled, code, trials=20000, seed=unveiled)
    tag = "honest" if unveiled == committed else "cheat "
    print(f"  unveil {unveiled} ({tag}): accept rate {rate:.4f}"
          f"   overlap^2 = {abs(overlap)**2:.4f}")
print(f"\ncheat accept rates stay below (1 - 2*{code.delta_code})^2"
      f" = {(1 - 2 * code.delta_code) ** 2:.4f}")
