"""Reversible circuits for the negotiation protocol.

Three builders cover the quantum side of the price comparison:

* ``build_price_oracle`` loads a party's price list into a register,
  ``|i>|t> -> |i>|t XOR price_i>`` for index values 1..N (identity
  elsewhere, which keeps the operator unitary).
* ``build_comparator`` writes ``a >= b`` into a flag qubit, restoring the
  price registers and all scratch ancillas.
* ``build_flag_oracle`` is the comparator viewed as an oracle acting on the
  whole superposition produced by the two price oracles.

All circuits are built from NOT gates with mixed-polarity controls, so every
circuit is its own gate-by-gate inverse when reversed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .statevec import Gate, RegisterLayout, StateVector, apply_gate_inplace


def classical_f(a: int, b: int) -> int:
    """Comparison bit: 1 iff a >= b."""
    return 1 if a >= b else 0


# ---------------------------------------------------------------------------
# scenarios


@dataclass(frozen=True)
class PriceScenario:
    """One negotiation instance: buyer prices A, seller prices B, threshold.

    ``n`` and ``d`` are the derived register widths: n indexes the N
    products (values 1..N, so n = ceil(log2(N+1))) and d holds the largest
    price.  Prices are non-negative integers in arbitrary currency units.
    """

    A: tuple[int, ...]
    B: tuple[int, ...]
    epsilon: int

    def __post_init__(self):
        A = tuple(int(a) for a in self.A)
        B = tuple(int(b) for b in self.B)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        if len(A) == 0 or len(A) != len(B):
            raise ValueError(f"price lists must be equal-length and non-empty: {len(A)} vs {len(B)}")
        if any(p < 0 for p in A + B):
            raise ValueError("prices must be non-negative")
        if not 1 <= self.epsilon <= len(A):
            raise ValueError(f"threshold {self.epsilon} outside 1..{len(A)}")

    @property
    def N(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return self.N.bit_length()  # equals ceil(log2(N+1)) for N >= 1

    @property
    def d(self) -> int:
        # width of the widest price; at least 1 so a price register exists
        return max(1, max(self.A + self.B).bit_length())


def brute_force_count(scenario: PriceScenario) -> int:
    """Classical count of products with buyer price >= seller price."""
    return sum(classical_f(a, b) for a, b in zip(scenario.A, scenario.B))


def comparator_ancilla_width(d: int) -> int:
    """Scratch qubits the comparator needs for a d-bit price register."""
    return d


def announcement_layout(scenario: PriceScenario, owner: str) -> RegisterLayout:
    """Layout of the (n+d)-qubit state a party announces: index + own price."""
    price = "priceA" if owner == "alice" else "priceB"
    return RegisterLayout(("index", scenario.n), (price, scenario.d))


def comparison_layout(scenario: PriceScenario, announced_by: str, t: int = 0) -> RegisterLayout:
    """Full working layout for the state announced by one party.

    The announcer's price register sits directly above the index register,
    the receiving party's register above that; segment names keep the
    buyer/seller roles unambiguous whichever order they are laid out in.
    ``t > 0`` appends a counting register on top.
    """
    first, second = ("priceA", "priceB") if announced_by == "alice" else ("priceB", "priceA")
    segs = [
        ("index", scenario.n),
        (first, scenario.d),
        (second, scenario.d),
        ("flag", 1),
        ("ancilla", comparator_ancilla_width(scenario.d)),
    ]
    if t > 0:
        segs.append(("counting", t))
    return RegisterLayout(*segs)


# ---------------------------------------------------------------------------
# circuits


@dataclass(frozen=True)
class Circuit:
    """Immutable ordered gate list over a register layout.

    If ``ancilla`` names a segment, the circuit promises to return it to
    |0...0> on every computational-basis input that enters with it zeroed
    (compute/uncompute discipline); tests verify this exhaustively.
    """

    gates: tuple[Gate, ...]
    layout: RegisterLayout
    ancilla: str | None = None
    name: str = ""
    _compiled: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if g.max_qubit() >= self.layout.num_qubits:
                raise ValueError(f"gate touches qubit {g.max_qubit()} outside layout ({self.layout})")

    def __len__(self):
        return len(self.gates)

    def inverse(self) -> "Circuit":
        gates = tuple(g.inverse() for g in reversed(self.gates))
        return Circuit(gates, self.layout, self.ancilla, name=self.name + "^-1")

    # -- application ----------------------------------------------------

    def _compile(self, dim: int):
        """Precompute index arrays per gate; amortized over repeated applies."""
        ops = self._compiled.get(dim)
        if ops is None:
            ops = []
            for g in self.gates:
                mask = np.nonzero(_gate_mask(g, dim))[0]
                i1 = mask | (1 << g.target)
                if g.kind == "not":
                    ops.append(("swap", mask, i1, None))
                elif g.kind == "phase":
                    ops.append(("scale", None, i1, np.exp(1j * g.angle)))
                else:
                    ops.append(("mix", mask, i1, g.matrix))
            self._compiled[dim] = ops
        return ops

    def apply_to_array(self, amplitudes: np.ndarray) -> None:
        """Run the circuit on a raw amplitude array, in place (hot path)."""
        for op, i0, i1, extra in self._compile(amplitudes.size):
            if op == "swap":
                a = amplitudes[i0]
                amplitudes[i0] = amplitudes[i1]
                amplitudes[i1] = a
            elif op == "scale":
                amplitudes[i1] *= extra
            else:
                a0 = amplitudes[i0]
                a1 = amplitudes[i1]
                amplitudes[i0] = extra[0, 0] * a0 + extra[0, 1] * a1
                amplitudes[i1] = extra[1, 0] * a0 + extra[1, 1] * a1

    def apply(self, state: StateVector) -> StateVector:
        if state.num_qubits != self.layout.num_qubits:
            raise ValueError(
                f"circuit is laid out for {self.layout.num_qubits} qubits, state has {state.num_qubits}"
            )
        amps = state.amplitudes.copy()
        self.apply_to_array(amps)
        return StateVector(state.num_qubits, amps)


def _gate_mask(gate: Gate, dim: int) -> np.ndarray:
    idx = np.arange(dim)
    mask = (idx >> gate.target) & 1 == 0
    for qubit, polarity in gate.controls:
        mask &= ((idx >> qubit) & 1) == polarity
    return mask


def build_price_oracle(prices, layout: RegisterLayout, target: str) -> Circuit:
    """XOR-load a price list into ``target``, controlled on the index register.

    Product i (1-based) occupies index value i; each set bit of price_i
    becomes one multi-controlled NOT whose controls spell out the binary
    pattern of i across the index register.  Index values 0 and > N are left
    untouched.
    """
    index = layout["index"]
    tgt = layout[target]
    prices = [int(p) for p in prices]
    if len(prices) >= 1 << index.width:
        raise ValueError(f"{len(prices)} products do not fit an index register of width {index.width}")
    gates = []
    for i, price in enumerate(prices, start=1):
        if price >= 1 << tgt.width:
            raise ValueError(f"price {price} needs more than {tgt.width} bits")
        controls = tuple((index.offset + j, (i >> j) & 1) for j in range(index.width))
        for b in range(tgt.width):
            if (price >> b) & 1:
                gates.append(Gate.x(tgt.offset + b, controls))
    return Circuit(tuple(gates), layout, name=f"load-{target}")


def build_comparator(d: int, layout: RegisterLayout) -> Circuit:
    """Flag <- flag XOR (priceA >= priceB), price registers restored.

    Works most-significant-bit first with "first differing bit decides"
    semantics: the priceB register temporarily holds the XOR a_j ^ b_j, an
    equal-so-far chain of ancillas gates each lower bit through negative
    controls, and mutually exclusive Toffoli terms accumulate (a < b) into a
    scratch bit.  The flag is then flipped through a negative control on
    that bit (a >= b is NOT(a < b)) and everything else is uncomputed.
    """
    a = layout["priceA"]
    b = layout["priceB"]
    flag = layout["flag"]
    if a.width != d or b.width != d:
        raise ValueError(f"price registers are {a.width}/{b.width} bits, expected {d}")
    if flag.width != 1:
        raise ValueError("flag segment must be a single qubit")
    if "ancilla" not in layout or layout["ancilla"].width < comparator_ancilla_width(d):
        raise ValueError(f"comparator needs {comparator_ancilla_width(d)} ancilla qubits")
    anc = layout["ancilla"]
    less = anc.offset           # accumulates a < b
    eq = lambda k: anc.offset + k  # "bits d-1..k of a and b agree", k in 1..d-1

    compute: list[Gate] = []
    # b_j <- a_j ^ b_j
    for j in range(d):
        compute.append(Gate.x(b.offset + j, ((a.offset + j, 1),)))
    # equal-so-far chain, top bit downward
    if d >= 2:
        compute.append(Gate.x(eq(d - 1), ((b.offset + d - 1, 0),)))
        for k in range(d - 2, 0, -1):
            compute.append(Gate.x(eq(k), ((eq(k + 1), 1), (b.offset + k, 0))))
    # first-difference terms: a_j = 0 and (a_j ^ b_j) = 1 means a_j < b_j
    msb = d - 1
    compute.append(Gate.x(less, ((a.offset + msb, 0), (b.offset + msb, 1))))
    for j in range(d - 2, -1, -1):
        compute.append(
            Gate.x(less, ((eq(j + 1), 1), (a.offset + j, 0), (b.offset + j, 1)))
        )

    flag_copy = Gate.x(flag.offset, ((less, 0),))
    gates = tuple(compute) + (flag_copy,) + tuple(reversed(compute))
    return Circuit(gates, layout, ancilla="ancilla", name=f"compare-{d}bit")


def build_flag_oracle(layout: RegisterLayout) -> Circuit:
    """Comparison oracle on a full protocol layout.

    Linearity does the rest: on a superposition of ``|i>|a_i>|b_i>|0>``
    components each branch picks up its own flag bit (XOR semantics on the
    flag, so a pre-set flag is flipped back where the comparison holds).
    """
    return build_comparator(layout["priceA"].width, layout)


# ---------------------------------------------------------------------------
# ancilla hygiene check (shared by tests and state-prep validation)


def ancillas_clean(circuit: Circuit, basis_index: int) -> bool:
    """True if a basis input with zeroed ancillas leaves them zeroed."""
    if circuit.ancilla is None:
        return True
    seg = circuit.layout[circuit.ancilla]
    if seg.value(basis_index) != 0:
        raise ValueError("ancillas_clean expects an input with zeroed ancillas")
    dim = 1 << circuit.layout.num_qubits
    amps = np.zeros(dim, dtype=np.complex128)
    amps[basis_index] = 1.0
    circuit.apply_to_array(amps)
    support = np.nonzero(np.abs(amps) > 1e-12)[0]
    return all(seg.value(int(x)) == 0 for x in support)
