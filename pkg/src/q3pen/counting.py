"""Counting marked items by phase estimation on the search iterate.

The count of products whose comparison flag is 1 is estimated without
measuring the flag directly.  With ``A`` the unitary that prepares the
comparison-ready state from |0...0> and ``S_f``/``S_0`` the sign flips on
flag-set components and on the all-zeros state, the iterate

    Q = A . S_0 . A^-1 . S_f

acts on the span of the marked and unmarked components as a reflection
composed with a rotation by 2*theta, where sin^2(theta) = M/N.  Its
eigenphases are therefore pi +/- 2*theta, and a phase register outcome
``omega`` (t qubits) converts as

    theta_hat = |pi - 2*pi*omega / 2**t|        (the 2*theta estimate)
    m_hat     = round(N * sin^2(theta_hat / 2))

This convention is pinned by tests against brute-force counts rather than
trusted from any single statement of the algorithm.  Outcomes ``omega`` and
``2**t - omega`` fold to the same estimate.

Because the uniform superposition over index values 1..N has no natural
gate construction for general N, ``A`` is realized as a Householder
reflection on the index register (exactly self-inverse) followed by the
oracle circuits.  Phase estimation is simulated by expanding the joint
state over the counting register into rows ``Q^k |psi>`` and applying the
inverse quantum Fourier transform as an FFT along the counting axis, which
is arithmetically identical to the gate-level circuit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import circuits
from .circuits import PriceScenario
from .statevec import CapacityError, DEFAULT_MAX_QUBITS, StateVector, prepare_basis


@dataclass(frozen=True)
class CountingParams:
    """Phase-estimation knobs: precision qubits, shots, and the seed."""

    t: int = 6
    shots: int = 11
    rng_seed: int = 42

    def __post_init__(self):
        if self.t < 1:
            raise ValueError("need at least one precision qubit")
        if self.shots < 1:
            raise ValueError("need at least one shot")


@dataclass(frozen=True)
class CountEstimate:
    """Result of one counting run (possibly a median over several shots)."""

    m_hat: int
    theta_hat: float
    delta: float
    outcomes: tuple[int, ...]


# ---------------------------------------------------------------------------
# state preparation


class StatePreparation:
    """Unitary taking |0...0> to the comparison-ready superposition.

    Composition: a Householder reflection rotates the index register from
    |0...0> onto the uniform superposition over values 1..N, then the two
    price oracles and the flag oracle run.  The reflection is self-inverse
    and all oracle gates are self-inverse NOTs, so the exact inverse is the
    mirrored sequence.

    The ``*_to_array`` methods may hand back a different array than they
    were given (the index rotation is a reshape-matmul); always use the
    return value.
    """

    def __init__(self, layout, index_matrix: np.ndarray, oracle_circuits):
        self.layout = layout
        self.num_qubits = layout.num_qubits
        self._index_matrix = index_matrix
        self._index_width = layout["index"].width
        self._circuits = tuple(oracle_circuits)
        self._inverses = tuple(c.inverse() for c in reversed(self._circuits))
        if layout["index"].offset != 0:
            raise ValueError("index register must start at qubit 0")

    def _apply_index_matrix(self, amps: np.ndarray, matrix: np.ndarray) -> np.ndarray:
        block = 1 << self._index_width
        return (amps.reshape(-1, block) @ matrix.T).reshape(-1)

    def apply_to_array(self, amps: np.ndarray) -> np.ndarray:
        amps = self._apply_index_matrix(amps, self._index_matrix)
        for c in self._circuits:
            c.apply_to_array(amps)
        return amps

    def inverse_to_array(self, amps: np.ndarray) -> np.ndarray:
        for c in self._inverses:
            c.apply_to_array(amps)
        return self._apply_index_matrix(amps, self._index_matrix.conj().T)

    def apply(self, state: StateVector) -> StateVector:
        if state.num_qubits != self.num_qubits:
            raise ValueError("state size does not match the preparation layout")
        return StateVector(self.num_qubits, self.apply_to_array(state.amplitudes.copy()))

    def apply_inverse(self, state: StateVector) -> StateVector:
        if state.num_qubits != self.num_qubits:
            raise ValueError("state size does not match the preparation layout")
        return StateVector(self.num_qubits, self.inverse_to_array(state.amplitudes.copy()))


def uniform_index_unitary(n: int, N: int) -> np.ndarray:
    """Householder reflection sending |0> to the uniform state over 1..N.

    The target vector has no overlap with |0> (index 0 is excluded), so the
    reflection through (|0> - |u>)/sqrt(2) maps one onto the other and is
    real, symmetric, and self-inverse.
    """
    dim = 1 << n
    if N >= dim:
        raise ValueError(f"{N} index values do not fit {n} qubits")
    u = np.zeros(dim)
    u[1 : N + 1] = 1.0 / math.sqrt(N)
    v = np.zeros(dim)
    v[0] = 1.0
    v = (v - u) / np.linalg.norm(v - u)
    return np.eye(dim) - 2.0 * np.outer(v, v)


def build_state_preparation(scenario: PriceScenario, announced_by: str = "alice") -> StatePreparation:
    """Preparation of the comparison-ready state announced by one party.

    ``announced_by="alice"`` yields the state the seller works on (buyer
    prices loaded first), ``"bob"`` the mirror image; both carry the same
    flag values, so both count the same M.
    """
    layout = circuits.comparison_layout(scenario, announced_by)
    first_owner = "priceA" if announced_by == "alice" else "priceB"
    second_owner = "priceB" if announced_by == "alice" else "priceA"
    first_prices = scenario.A if announced_by == "alice" else scenario.B
    second_prices = scenario.B if announced_by == "alice" else scenario.A
    oracles = (
        circuits.build_price_oracle(first_prices, layout, first_owner),
        circuits.build_price_oracle(second_prices, layout, second_owner),
        circuits.build_flag_oracle(layout),
    )
    return StatePreparation(layout, uniform_index_unitary(scenario.n, scenario.N), oracles)


# ---------------------------------------------------------------------------
# the iterate


class GroverIterate:
    """Q = A . S_0 . A^-1 . S_f over a given state preparation."""

    def __init__(self, state_prep: StatePreparation, flag_qubit: int):
        for attr in ("apply_to_array", "inverse_to_array", "num_qubits"):
            if not hasattr(state_prep, attr):
                raise ValueError("state preparation must expose an exact inverse")
        if not 0 <= flag_qubit < state_prep.num_qubits:
            raise ValueError(f"flag qubit {flag_qubit} outside the prepared register")
        self.state_prep = state_prep
        self.flag_qubit = flag_qubit
        self.num_qubits = state_prep.num_qubits
        idx = np.arange(1 << self.num_qubits)
        self._flag_set = ((idx >> flag_qubit) & 1) == 1

    def apply_to_array(self, amps: np.ndarray) -> np.ndarray:
        amps[self._flag_set] *= -1.0          # S_f
        amps = self.state_prep.inverse_to_array(amps)
        amps[0] *= -1.0                       # S_0
        return self.state_prep.apply_to_array(amps)

    def apply(self, state: StateVector) -> StateVector:
        if state.num_qubits != self.num_qubits:
            raise ValueError("state size does not match the iterate")
        return StateVector(self.num_qubits, self.apply_to_array(state.amplitudes.copy()))

    def to_matrix(self) -> np.ndarray:
        """Dense matrix of Q; only sensible at small sizes (<= ~10 qubits)."""
        if self.num_qubits > 12:
            raise CapacityError("dense iterate matrix limited to 12 qubits")
        dim = 1 << self.num_qubits
        cols = np.eye(dim, dtype=np.complex128)
        out = np.empty_like(cols)
        for j in range(dim):
            out[:, j] = self.apply_to_array(cols[:, j].copy())
        return out


def build_grover_iterate(state_prep: StatePreparation, flag_qubit: int) -> GroverIterate:
    return GroverIterate(state_prep, flag_qubit)


# ---------------------------------------------------------------------------
# phase estimation


def outcome_to_theta(omega: int, t: int) -> float:
    """Fold a phase-register outcome to the 2*theta rotation estimate."""
    return abs(math.pi - 2.0 * math.pi * omega / (1 << t))


def theta_to_count(theta: float, N: int) -> int:
    """Round the rotation estimate to an integer count in [0, N]."""
    m = N * math.sin(theta / 2.0) ** 2
    return min(N, max(0, int(round(m))))


def error_bound(t: int, N: int, m_hat: int) -> float:
    """Worst-case counting error after t-qubit phase estimation.

    The bound 2*pi*sqrt(m_hat*N)/2**t + pi^2*N/2**(2t) is the standard
    estimate-dependent form; it is monotone decreasing in t, and once it
    drops below 0.5 the rounded estimate is exact with high probability.
    """
    if t < 1:
        raise ValueError("need at least one precision qubit")
    if N < 1 or m_hat < 0:
        raise ValueError("N must be >= 1 and m_hat >= 0")
    grid = float(1 << t)
    return 2.0 * math.pi * math.sqrt(m_hat * N) / grid + math.pi**2 * N / grid**2


def phase_register_distribution(scenario: PriceScenario, t: int,
                                announced_by: str = "alice",
                                max_qubits: int = DEFAULT_MAX_QUBITS) -> np.ndarray:
    """Outcome probabilities of the t-qubit phase register.

    Expands the joint state row by row (row k holds Q^k |psi>) and applies
    the inverse Fourier transform along the counting axis; the squared row
    norms are exactly the measurement distribution of the gate-level
    circuit.
    """
    layout_with_counting = circuits.comparison_layout(scenario, announced_by, t=t)
    if layout_with_counting.num_qubits > max_qubits:
        raise CapacityError(
            f"{layout_with_counting.num_qubits} qubits exceed the budget of {max_qubits}"
        )
    prep = build_state_preparation(scenario, announced_by)
    flag = prep.layout["flag"].offset
    iterate = GroverIterate(prep, flag)

    dim = 1 << prep.num_qubits
    rows = np.empty((1 << t, dim), dtype=np.complex128)
    rows[0] = prep.apply_to_array(prepare_basis(prep.num_qubits, 0).amplitudes.copy())
    for k in range(1, 1 << t):
        rows[k] = iterate.apply_to_array(rows[k - 1].copy())
    rows = np.fft.fft(rows, axis=0, norm="forward")  # inverse QFT on the counting register
    probs = np.einsum("ij,ij->i", rows, rows.conj()).real
    total = probs.sum()
    if abs(total - 1.0) > 1e-9:
        raise RuntimeError(f"phase distribution sums to {total}, not 1")
    return np.clip(probs, 0.0, None) / total


def quantum_count(scenario: PriceScenario, params: CountingParams = CountingParams(),
                  announced_by: str = "alice",
                  max_qubits: int = DEFAULT_MAX_QUBITS) -> CountEstimate:
    """Estimate the number of products whose comparison flag is set.

    Draws ``params.shots`` independent phase-register samples (each shot
    uses its own child seed, so results do not depend on evaluation order),
    folds them to rotation estimates, and reports the median.  Deterministic
    for fixed inputs.
    """
    probs = phase_register_distribution(scenario, params.t, announced_by, max_qubits)
    cdf = np.cumsum(probs)
    cdf /= cdf[-1]
    children = np.random.SeedSequence(params.rng_seed).spawn(params.shots)
    outcomes = tuple(
        int(np.searchsorted(cdf, np.random.default_rng(child).random(), side="right"))
        for child in children
    )
    thetas = sorted(outcome_to_theta(w, params.t) for w in outcomes)
    theta_hat = float(np.median(thetas))
    m_hat = theta_to_count(theta_hat, scenario.N)
    return CountEstimate(
        m_hat=m_hat,
        theta_hat=theta_hat,
        delta=error_bound(params.t, scenario.N, m_hat),
        outcomes=outcomes,
    )
