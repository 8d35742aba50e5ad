"""Independent oracles shared by the test modules.

The dense-matrix builders here deliberately avoid the simulator's vectorized
application path: they assemble operators column by column from projector
algebra, so agreement between the two is a real check and not a tautology.
"""

import numpy as np


def dense_gate_matrix(gate, num_qubits: int) -> np.ndarray:
    """Full 2^q x 2^q matrix of a controlled gate, built classically."""
    dim = 1 << num_qubits
    mat = np.zeros((dim, dim), dtype=np.complex128)
    for x in range(dim):
        if any(((x >> q) & 1) != pol for q, pol in gate.controls):
            mat[x, x] = 1.0
            continue
        tbit = (x >> gate.target) & 1
        x0 = x & ~(1 << gate.target)
        x1 = x0 | (1 << gate.target)
        mat[x0, x] += gate.matrix[0, tbit]
        mat[x1, x] += gate.matrix[1, tbit]
    return mat


def dense_circuit_matrix(circuit, num_qubits: int | None = None) -> np.ndarray:
    """Matrix of a whole circuit: later gates multiply from the left."""
    q = circuit.layout.num_qubits if num_qubits is None else num_qubits
    mat = np.eye(1 << q, dtype=np.complex128)
    for gate in circuit.gates:
        mat = dense_gate_matrix(gate, q) @ mat
    return mat


def basis_component(layout, **values) -> int:
    """Basis-state index with the named segments set to the given values."""
    x = 0
    for name, value in values.items():
        seg = layout[name]
        if not 0 <= value < 1 << seg.width:
            raise ValueError(f"{value} does not fit segment {name}")
        x |= value << seg.offset
    return x
