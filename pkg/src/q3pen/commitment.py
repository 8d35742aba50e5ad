"""Bit-string commitment through small phase-fingerprint states.

A party commits an n-bit value by encoding it with a binary linear code of
length m = c*n (c > 1) and handing over the log2(m)-qubit state

    |tau_x> = (1/sqrt(m)) * sum_j (-1)^(E(x)_j) |j>        j = 0..m-1

where E is the code's encoding.  When m is not a power of two the register
is sized up to the next power and the padded positions carry no amplitude,
so overlaps follow the exact law

    <tau_x | tau_y> = 1 - 2 * dist(E(x), E(y)) / m.

Unveiling is classical; the receiver verifies by projecting the held
fingerprint onto the state matching the unveiled value.  An honest unveil
projects onto itself (accept probability exactly 1); a cheating unveil is
accepted only with probability (1 - 2*dist/m)^2, which the code's distance
window pins below (1 - 2*delta_code)^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .statevec import StateVector, inner_product

PHASE_COMMITTED = "committed"
PHASE_UNVEILED = "unveiled"
PHASE_ACCEPT = "verified-accept"
PHASE_REJECT = "verified-reject"


def _bits(value: int, n: int) -> np.ndarray:
    if not 0 <= value < 1 << n:
        raise ValueError(f"value {value} does not fit {n} bits")
    return np.array([(value >> k) & 1 for k in range(n)], dtype=np.uint8)


@dataclass(frozen=True, eq=False)
class CodeParams:
    """A binary linear code used to fingerprint n-bit messages.

    ``delta_code`` is the declared relative-distance window: every pair of
    distinct codewords differs in at least delta_code*m and at most
    (1-delta_code)*m positions.  The upper bound matters as much as the
    lower one, since a cheating-unveil accept probability (1 - 2*dist/m)^2
    grows again once distances pass m/2.
    """

    n: int
    m: int
    generator: np.ndarray  # shape (n, m) over GF(2)
    delta_code: float

    def __post_init__(self):
        g = np.asarray(self.generator, dtype=np.uint8) % 2
        object.__setattr__(self, "generator", g)
        if g.shape != (self.n, self.m):
            raise ValueError(f"generator shape {g.shape} != ({self.n}, {self.m})")
        if self.m <= self.n:
            raise ValueError("code must expand the message (m > n)")
        if not 0.0 < self.delta_code < 0.5:
            raise ValueError("delta_code must lie in (0, 1/2)")

    def encode(self, value: int) -> np.ndarray:
        return (_bits(value, self.n) @ self.generator) % 2

    @property
    def num_fingerprint_qubits(self) -> int:
        return max(1, math.ceil(math.log2(self.m)))

    def codeword_weights(self) -> np.ndarray:
        """Hamming weights of all nonzero codewords (exhaustive, n <= 16)."""
        if self.n > 16:
            raise ValueError("exhaustive weight enumeration limited to n <= 16")
        msgs = np.array(
            [_bits(v, self.n) for v in range(1, 1 << self.n)], dtype=np.uint8
        )
        return ((msgs @ self.generator) % 2).sum(axis=1)

    def check_distance_window(self) -> bool:
        """True if all pairwise distances lie in [delta*m, (1-delta)*m].

        For a linear code pairwise distances are codeword weights, so the
        check is exhaustive over the nonzero codewords.
        """
        w = self.codeword_weights()
        lo = math.ceil(self.delta_code * self.m)
        hi = math.floor((1.0 - self.delta_code) * self.m)
        return bool(w.min() >= lo and w.max() <= hi)


def make_random_code(n: int, c: float = 2.0, delta: float = 0.25, seed: int = 0,
                     max_tries: int = 20000) -> CodeParams:
    """Seeded random generator matrix, resampled until the distance window holds.

    The window also guarantees injectivity (no nonzero message may encode to
    weight zero).  Deterministic for a fixed seed.
    """
    if c <= 1.0:
        raise ValueError("expansion constant c must exceed 1")
    m = int(round(c * n))
    if m <= n:
        raise ValueError(f"m = round(c*n) = {m} does not expand {n} message bits")
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        g = rng.integers(0, 2, size=(n, m), dtype=np.uint8)
        code = CodeParams(n=n, m=m, generator=g, delta_code=delta)
        if code.check_distance_window():
            return code
    raise RuntimeError(f"no [{m},{n}] code with distance window {delta} in {max_tries} tries")


def parity_repetition_code(n: int) -> CodeParams:
    """Deterministic fallback code with m = 2n: the message followed by its
    cyclic parity stream p_j = x_j XOR x_(j+1 mod n).

    Reproducible without a seed (useful for documentation examples).  Its
    minimum weight stays at 3 once n grows, so the declared distance floor
    is taken from the measured weights (capped at 0.25) rather than assumed.
    """
    m = 2 * n
    g = np.zeros((n, m), dtype=np.uint8)
    for i in range(n):
        g[i, i] = 1
        g[i, n + i] ^= 1
        g[i, n + (i - 1) % n] ^= 1  # at n=1 both XORs cancel: the parity bit vanishes
    msgs = np.array([_bits(v, n) for v in range(1, 1 << n)], dtype=np.uint8)
    w = ((msgs @ g) % 2).sum(axis=1)
    balanced = min(int(w.min()), m - int(w.max())) / m
    code = CodeParams(n=n, m=m, generator=g, delta_code=min(0.25, balanced))
    if not code.check_distance_window():
        raise RuntimeError(f"parity repetition code fails its distance window at n={n}")
    return code


# ---------------------------------------------------------------------------
# commit / unveil / verify


def fingerprint_state(value: int, code: CodeParams) -> StateVector:
    """The phase-fingerprint state |tau_value> for this code."""
    enc = code.encode(value)
    q = code.num_fingerprint_qubits
    amps = np.zeros(1 << q, dtype=np.complex128)
    amps[: code.m] = (1.0 - 2.0 * enc.astype(np.float64)) / math.sqrt(code.m)
    return StateVector(q, amps)


@dataclass
class CommitmentRecord:
    """Receiver-side view of one commitment.

    Holds the fingerprint handed over at commit time; the committed value
    itself is deliberately absent (the record knows only what a receiver
    would know).  The phase only moves forward:
    committed -> unveiled -> verified-accept | verified-reject.
    """

    fingerprint: StateVector
    code: CodeParams
    phase: str = PHASE_COMMITTED
    committed_length: int = field(init=False)

    def __post_init__(self):
        self.committed_length = self.code.n


def commit(value: int, code: CodeParams) -> CommitmentRecord:
    """Commit an n-bit value; returns the record the receiver holds."""
    return CommitmentRecord(fingerprint=fingerprint_state(value, code), code=code)


def accept_probability(record: CommitmentRecord, unveiled: int) -> float:
    """Probability that projecting onto |tau_unveiled> yields eigenvalue 1.

    Probabilities within 1e-9 of 0 or 1 snap exactly (honest unveils accept
    with probability exactly 1, orthogonal fingerprints never).
    """
    overlap = inner_product(fingerprint_state(unveiled, record.code), record.fingerprint)
    p = min(1.0, max(0.0, abs(overlap) ** 2))
    if p > 1.0 - 1e-9:
        return 1.0
    if p < 1e-9:
        return 0.0
    return p


def verify(record: CommitmentRecord, unveiled: int, rng=0) -> bool:
    """Projective check of an unveiled value against the held fingerprint.

    Mutates the record's phase; a record can be unveiled and verified only
    once.  ``rng`` is an integer seed or numpy Generator driving the
    measurement outcome.
    """
    if record.phase != PHASE_COMMITTED:
        raise RuntimeError(f"record already {record.phase}; cannot unveil twice")
    record.phase = PHASE_UNVEILED
    p = accept_probability(record, unveiled)
    gen = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    accepted = bool(gen.random() < p)
    record.phase = PHASE_ACCEPT if accepted else PHASE_REJECT
    return accepted


def empirical_accept_rate(committed: int, unveiled: int, code: CodeParams,
                          trials: int, seed: int = 0) -> float:
    """Accept frequency over repeated commit/unveil/verify rounds.

    Each trial is an independent projective measurement of a fresh
    commitment of ``committed`` checked against ``unveiled``; the rounds are
    iid, so they are sampled in one vectorized draw.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    p = accept_probability(commit(committed, code), unveiled)
    gen = np.random.default_rng(seed)
    return float(np.mean(gen.random(trials) < p))


def cheat_detection_probability(n: int, m: float) -> float:
    """Chance that stealing all n committed bits from an m-bit commitment fails.

    1 - 2^-(m - log2 n); requires m > log2(n).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    log_n = math.log2(n)
    if m <= log_n:
        raise ValueError(f"m = {m} must exceed log2(n) = {log_n}")
    return 1.0 - 2.0 ** (-(m - log_n))
