"""Dense state-vector simulation: states, controlled gates, measurement,
inner products, and density-matrix entropy.

Conventions used throughout the package:

* Qubit 0 is the least significant bit of a basis-state index.  The basis
  state ``|x>`` lives at position ``x`` of the amplitude array, and a
  register segment ``[offset, offset + width)`` holds the integer value
  ``(x >> offset) & (2**width - 1)``.
* Tolerances follow a three-level ladder: 1e-10 for single-gate checks,
  1e-9 for whole-circuit checks, 1e-8 for input validation.

This is a desk-scale exact simulator (intended for <= ~20 qubits); there is
no mixed-state evolution and no noise model.  All operations either return
fresh StateVector values or work on caller-owned arrays; nothing here locks
or shares mutable state, so distinct states can be processed concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

ATOL_GATE = 1e-10
ATOL_CIRCUIT = 1e-9
ATOL_INPUT = 1e-8

DEFAULT_MAX_QUBITS = 20


class CapacityError(RuntimeError):
    """A requested simulation exceeds the configured qubit budget."""


# ---------------------------------------------------------------------------
# register bookkeeping


@dataclass(frozen=True)
class Segment:
    """A named contiguous block of qubits."""

    name: str
    offset: int
    width: int

    def __post_init__(self):
        if self.offset < 0 or self.width < 1:
            raise ValueError(f"bad segment {self.name}: offset={self.offset} width={self.width}")

    def qubits(self) -> range:
        return range(self.offset, self.offset + self.width)

    def value(self, basis_index: int) -> int:
        """Integer held by this segment within a basis-state index."""
        return (basis_index >> self.offset) & ((1 << self.width) - 1)


class RegisterLayout:
    """Named, disjoint qubit segments packed upward from qubit 0.

    Built from ``(name, width)`` pairs; offsets are assigned cumulatively,
    which makes the segments disjoint and covering by construction.
    """

    def __init__(self, *segments: tuple[str, int]):
        if not segments:
            raise ValueError("layout needs at least one segment")
        offset = 0
        self._segments: dict[str, Segment] = {}
        for name, width in segments:
            if name in self._segments:
                raise ValueError(f"duplicate segment name {name!r}")
            self._segments[name] = Segment(name, offset, width)
            offset += width
        self.num_qubits = offset

    def __getitem__(self, name: str) -> Segment:
        return self._segments[name]

    def __contains__(self, name: str) -> bool:
        return name in self._segments

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self._segments)

    def __repr__(self):
        parts = ", ".join(f"{s.name}[{s.offset}:{s.offset + s.width}]" for s in self._segments.values())
        return f"RegisterLayout({parts})"


# ---------------------------------------------------------------------------
# states


class StateVector:
    """Normalized complex amplitudes over the 2**num_qubits basis states."""

    __slots__ = ("num_qubits", "amplitudes")

    def __init__(self, num_qubits: int, amplitudes: np.ndarray):
        amplitudes = np.asarray(amplitudes, dtype=np.complex128)
        if amplitudes.shape != (1 << num_qubits,):
            raise ValueError(
                f"expected {1 << num_qubits} amplitudes for {num_qubits} qubits, "
                f"got shape {amplitudes.shape}"
            )
        norm = float(np.linalg.norm(amplitudes))
        if abs(norm - 1.0) > ATOL_INPUT:
            raise ValueError(f"state norm {norm} deviates from 1 by more than {ATOL_INPUT}")
        self.num_qubits = num_qubits
        self.amplitudes = amplitudes

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def copy(self) -> "StateVector":
        return StateVector(self.num_qubits, self.amplitudes.copy())

    def __repr__(self):
        kept = [
            f"{a:.4g}|{i:0{self.num_qubits}b}>"
            for i, a in enumerate(self.amplitudes)
            if abs(a) > 1e-6
        ]
        if len(kept) > 8:
            kept = kept[:8] + ["..."]
        return " + ".join(kept) or "0"


def prepare_basis(num_qubits: int, basis_index: int) -> StateVector:
    """Computational basis state |basis_index> on num_qubits qubits."""
    dim = 1 << num_qubits
    if not 0 <= basis_index < dim:
        raise ValueError(f"basis index {basis_index} out of range for {num_qubits} qubits")
    amps = np.zeros(dim, dtype=np.complex128)
    amps[basis_index] = 1.0
    return StateVector(num_qubits, amps)


def prepare_amplitudes(num_qubits: int, amplitudes) -> StateVector:
    """State with the given amplitudes, renormalized.

    Used to inject superpositions that have no convenient gate construction,
    e.g. a uniform superposition over index values 1..N when N is not a
    power of two.  Raises on an all-zero input.
    """
    amps = np.asarray(amplitudes, dtype=np.complex128)
    if amps.shape != (1 << num_qubits,):
        raise ValueError(f"expected {1 << num_qubits} amplitudes, got shape {amps.shape}")
    if not np.all(np.isfinite(amps.view(np.float64))):
        raise ValueError("amplitudes must be finite")
    norm = float(np.linalg.norm(amps))
    if norm < 1e-12:
        raise ValueError("cannot normalize an all-zero amplitude vector")
    return StateVector(num_qubits, amps / norm)


def extend_with_zeros(state: StateVector, extra_qubits: int) -> StateVector:
    """Tensor |0>^extra onto the top (most significant) end of the register."""
    if extra_qubits < 0:
        raise ValueError("extra_qubits must be >= 0")
    if extra_qubits == 0:
        return state.copy()
    amps = np.zeros(state.dim << extra_qubits, dtype=np.complex128)
    amps[: state.dim] = state.amplitudes
    return StateVector(state.num_qubits + extra_qubits, amps)


# ---------------------------------------------------------------------------
# gates

_NOT = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2)

KIND_NOT = "not"
KIND_HADAMARD = "hadamard"
KIND_PHASE = "phase"
KIND_UNITARY = "unitary"


def _normalize_controls(controls) -> tuple[tuple[int, int], ...]:
    out = []
    for c in controls:
        if isinstance(c, (tuple, list)):
            qubit, polarity = int(c[0]), int(c[1])
        else:
            qubit, polarity = int(c), 1
        if polarity not in (0, 1):
            raise ValueError(f"control polarity must be 0 or 1, got {polarity}")
        out.append((qubit, polarity))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class Gate:
    """A 2x2 unitary on one target qubit with optional polarity-tagged controls.

    ``controls`` is a tuple of (qubit, polarity) pairs; polarity 1 means the
    gate fires when that qubit is |1> (a solid control), polarity 0 when it
    is |0> (a negative control).
    """

    kind: str
    target: int
    controls: tuple[tuple[int, int], ...]
    matrix: np.ndarray
    angle: float | None = None

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        if m.shape != (2, 2):
            raise ValueError("gate matrix must be 2x2")
        if np.max(np.abs(m.conj().T @ m - np.eye(2))) > ATOL_GATE:
            raise ValueError("gate matrix is not unitary within 1e-10")
        object.__setattr__(self, "matrix", m)
        seen = {self.target}
        for qubit, _ in self.controls:
            if qubit in seen:
                raise ValueError(f"target/control qubits overlap on {qubit}")
            seen.add(qubit)
        if min(seen) < 0:
            raise ValueError("qubit indices must be non-negative")

    # -- constructors -------------------------------------------------

    @classmethod
    def x(cls, target: int, controls=()) -> "Gate":
        return cls(KIND_NOT, target, _normalize_controls(controls), _NOT)

    @classmethod
    def h(cls, target: int, controls=()) -> "Gate":
        return cls(KIND_HADAMARD, target, _normalize_controls(controls), _HADAMARD)

    @classmethod
    def phase(cls, angle: float, target: int, controls=()) -> "Gate":
        m = np.array([[1, 0], [0, np.exp(1j * angle)]], dtype=np.complex128)
        return cls(KIND_PHASE, target, _normalize_controls(controls), m, angle=float(angle))

    @classmethod
    def unitary(cls, matrix, target: int, controls=()) -> "Gate":
        return cls(KIND_UNITARY, target, _normalize_controls(controls), matrix)

    # -- algebra ------------------------------------------------------

    def inverse(self) -> "Gate":
        if self.kind in (KIND_NOT, KIND_HADAMARD):
            return self
        if self.kind == KIND_PHASE:
            return Gate.phase(-self.angle, self.target, self.controls)
        return Gate(KIND_UNITARY, self.target, self.controls, self.matrix.conj().T)

    def max_qubit(self) -> int:
        return max([self.target] + [q for q, _ in self.controls])


def _control_mask(gate: Gate, dim: int) -> np.ndarray:
    """Boolean mask of basis indices whose target bit is 0 and controls fire."""
    idx = np.arange(dim)
    mask = (idx >> gate.target) & 1 == 0
    for qubit, polarity in gate.controls:
        mask &= ((idx >> qubit) & 1) == polarity
    return mask


def apply_gate_inplace(amplitudes: np.ndarray, gate: Gate) -> None:
    """Apply a gate to a raw amplitude array, in place."""
    dim = amplitudes.size
    mask = _control_mask(gate, dim)
    i0 = np.nonzero(mask)[0]
    i1 = i0 | (1 << gate.target)
    a0 = amplitudes[i0]
    a1 = amplitudes[i1]
    m = gate.matrix
    amplitudes[i0] = m[0, 0] * a0 + m[0, 1] * a1
    amplitudes[i1] = m[1, 0] * a0 + m[1, 1] * a1


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Return the new state after applying one (controlled) gate."""
    if gate.max_qubit() >= state.num_qubits:
        raise ValueError(
            f"gate touches qubit {gate.max_qubit()} but state has {state.num_qubits} qubits"
        )
    amps = state.amplitudes.copy()
    apply_gate_inplace(amps, gate)
    return StateVector(state.num_qubits, amps)


# ---------------------------------------------------------------------------
# measurement


def _as_generator(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def _segment_bounds(segment) -> tuple[int, int]:
    if isinstance(segment, Segment):
        return segment.offset, segment.width
    offset, width = segment
    return int(offset), int(width)


def measure(state: StateVector, segment, rng=0) -> tuple[int, StateVector]:
    """Projectively measure one register segment.

    Returns ``(outcome, collapsed_state)`` where outcome is the integer read
    from the segment (qubit ``offset`` is its least significant bit).  The
    outcome is sampled from the marginal distribution of the segment and the
    remaining amplitudes are renormalized.  ``rng`` is an integer seed or a
    numpy Generator; identical seeds give identical outcome sequences.
    """
    offset, width = _segment_bounds(segment)
    if width < 1:
        raise ValueError("cannot measure an empty segment")
    if offset + width > state.num_qubits:
        raise ValueError("segment lies outside the state's qubits")
    gen = _as_generator(rng)

    idx = np.arange(state.dim)
    values = (idx >> offset) & ((1 << width) - 1)
    weights = state.probabilities()
    probs = np.bincount(values, weights=weights, minlength=1 << width)
    probs = np.clip(probs, 0.0, None)
    cdf = np.cumsum(probs)
    cdf /= cdf[-1]
    outcome = int(np.searchsorted(cdf, gen.random(), side="right"))

    amps = np.where(values == outcome, state.amplitudes, 0.0)
    norm = np.linalg.norm(amps)
    if norm == 0.0:  # numerically impossible outcome; guard anyway
        raise RuntimeError("measurement collapsed to a zero state")
    return outcome, StateVector(state.num_qubits, amps / norm)


# ---------------------------------------------------------------------------
# inner products and entropy


def inner_product(s1: StateVector, s2: StateVector) -> complex:
    """<s1|s2> (conjugate-linear in the first argument)."""
    if s1.num_qubits != s2.num_qubits:
        raise ValueError("inner product needs equal qubit counts")
    return complex(np.vdot(s1.amplitudes, s2.amplitudes))


def pure_density(state: StateVector) -> np.ndarray:
    """Rank-1 density matrix |psi><psi| of a pure state."""
    a = state.amplitudes
    return np.outer(a, a.conj())


def von_neumann_entropy(rho: np.ndarray) -> float:
    """Entropy -sum(lambda log2 lambda) of a density matrix, in bits.

    Validates hermiticity and unit trace within 1e-8 and tolerates
    eigenvalues down to -1e-10 (clipped to zero); 0*log(0) is taken as 0.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError("density matrix must be square")
    if np.max(np.abs(rho - rho.conj().T)) > ATOL_INPUT:
        raise ValueError("density matrix is not Hermitian within 1e-8")
    trace = complex(np.trace(rho))
    if abs(trace - 1.0) > ATOL_INPUT:
        raise ValueError(f"density matrix trace {trace} is not 1 within 1e-8")
    evals = np.linalg.eigvalsh(rho)
    if evals.min() < -1e-10:
        raise ValueError(f"density matrix has negative eigenvalue {evals.min()}")
    evals = evals[evals > 0.0]
    return float(-(evals * np.log2(evals)).sum())
