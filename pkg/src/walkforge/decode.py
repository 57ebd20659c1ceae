"""Inverse mappings from qubit Hamiltonians back to walk graphs.

static_to_walk inverts a fixed coupling template (single-qubit Z/X terms,
Z_iX_j cross terms, X_iX_j and Z_iZ_j pair terms) in closed form; the sign
conventions are pinned by requiring walk_matrix(result) to equal the dense
matrix of the input exactly. matrix_to_walk does the same job numerically
for any Hamiltonian whose dense matrix is real symmetric.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._config import check_qubit_count
from .circuit import Gate
from .pauli import PauliHamiltonian, PauliString, to_matrix
from .walkgraph import WalkGraph

__all__ = [
    "StaticQubitHamiltonian",
    "static_to_pauli",
    "static_to_walk",
    "matrix_to_walk",
    "PulseWalkEdges",
    "pulse_to_walk_edges",
]

_EDGE_TOL = 1e-14


@dataclass(frozen=True)
class StaticQubitHamiltonian:
    """Always-on qubit couplings: H = sum_a (-eps_a Z_a - delta_a X_a)
    + sum_{a != b} chi_ab Z_a X_b + sum_{a<b} (-vperp_ab X_a X_b + vpar_ab Z_a Z_b).

    chi is a full matrix (row = Z qubit, column = X qubit); vperp and vpar
    are symmetric; all diagonals must be zero.
    """

    n_qubits: int
    eps: np.ndarray
    delta: np.ndarray
    chi: np.ndarray
    vperp: np.ndarray
    vpar: np.ndarray

    def __post_init__(self) -> None:
        n = int(self.n_qubits)
        if n < 1:
            raise ValueError("need at least one qubit")
        object.__setattr__(self, "n_qubits", n)
        for name in ("eps", "delta"):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.shape != (n,):
                raise ValueError(f"{name} must have shape ({n},)")
            object.__setattr__(self, name, v)
        for name in ("chi", "vperp", "vpar"):
            m = np.asarray(getattr(self, name), dtype=float)
            if m.shape != (n, n):
                raise ValueError(f"{name} must have shape ({n}, {n})")
            if np.any(np.diag(m) != 0.0):
                raise ValueError(f"{name} diagonal must be zero")
            if name != "chi" and np.max(np.abs(m - m.T)) > 0.0:
                raise ValueError(f"{name} must be symmetric")
            object.__setattr__(self, name, m)


def static_to_pauli(h: StaticQubitHamiltonian) -> PauliHamiltonian:
    """Expand the coupling template into explicit Pauli terms."""
    n = h.n_qubits

    def one(letter: str, a: int) -> PauliString:
        return PauliString(n, "I" * a + letter + "I" * (n - a - 1))

    def two(la: str, a: int, lb: str, b: int) -> PauliString:
        letters = ["I"] * n
        letters[a], letters[b] = la, lb
        return PauliString(n, "".join(letters))

    terms: list[tuple[complex, PauliString]] = []
    for a in range(n):
        if h.eps[a] != 0.0:
            terms.append((-h.eps[a], one("Z", a)))
        if h.delta[a] != 0.0:
            terms.append((-h.delta[a], one("X", a)))
    for a in range(n):
        for b in range(n):
            if a != b and h.chi[a, b] != 0.0:
                terms.append((h.chi[a, b], two("Z", a, "X", b)))
    for a in range(n):
        for b in range(a + 1, n):
            if h.vperp[a, b] != 0.0:
                terms.append((-h.vperp[a, b], two("X", a, "X", b)))
            if h.vpar[a, b] != 0.0:
                terms.append((h.vpar[a, b], two("Z", a, "Z", b)))
    return PauliHamiltonian(n, tuple(terms))


def static_to_walk(h: StaticQubitHamiltonian) -> WalkGraph:
    """Closed-form walk graph on 2^N nodes (bit-string labels, up = 1).

    Node energies: eps_j = sum_a (-1)^{j_a} eps_a + sum_{a<b} (-1)^{j_a+j_b}
    vpar_ab. Single-bit-flip edge at qubit a: Delta_a + sum_{c != a}
    (-1)^{j_c} chi_ca; double-flip edge at qubits a<b: vperp_ab.
    """
    n = h.n_qubits
    check_qubit_count(n, "static decode")
    dim = 1 << n
    bits = ((np.arange(dim)[:, None] >> np.arange(n - 1, -1, -1)[None, :]) & 1).astype(float)
    signs = 1.0 - 2.0 * bits  # (-1)^{j_a} per node and qubit
    onsite = signs @ h.eps
    for a in range(n):
        for b in range(a + 1, n):
            onsite = onsite + signs[:, a] * signs[:, b] * h.vpar[a, b]
    edges: list[tuple[int, int, float]] = []
    for j in range(dim):
        for a in range(n):
            i = j ^ (1 << (n - 1 - a))
            if i < j:
                continue
            w = h.delta[a]
            for c in range(n):
                if c != a:
                    w += signs[j, c] * h.chi[c, a]
            if abs(w) > _EDGE_TOL:
                edges.append((j, i, float(w)))
        for a in range(n):
            for b in range(a + 1, n):
                i = j ^ (1 << (n - 1 - a)) ^ (1 << (n - 1 - b))
                if i < j:
                    continue
                w = h.vperp[a, b]
                if abs(w) > _EDGE_TOL:
                    edges.append((j, i, float(w)))
    labels = tuple(format(j, f"0{n}b") for j in range(dim))
    return WalkGraph(dim, tuple(edges), tuple(float(e) for e in onsite), labels)


def matrix_to_walk(h: PauliHamiltonian) -> WalkGraph:
    """Read a walk graph off the dense matrix: energies from the diagonal,
    hop amplitudes as the negated off-diagonal elements."""
    check_qubit_count(h.m_qubits, "matrix decode")
    mat = to_matrix(h)
    scale = max(1.0, float(np.max(np.abs(mat))))
    if np.max(np.abs(mat - mat.T.conj())) > 1e-12 * scale:
        raise ValueError("matrix is not hermitian")
    if np.max(np.abs(mat.imag)) > 1e-12 * scale:
        raise ValueError("not a stoquastic-form walk; complex amplitudes unsupported")
    real = mat.real
    dim = real.shape[0]
    edges = []
    for j in range(dim):
        for i in range(j + 1, dim):
            if abs(real[j, i]) > _EDGE_TOL * scale:
                edges.append((j, i, float(-real[j, i])))
    labels = tuple(format(j, f"0{h.m_qubits}b") for j in range(dim))
    onsite = tuple(float(real[j, j]) for j in range(dim))
    return WalkGraph(dim, tuple(edges), onsite, labels)


@dataclass(frozen=True)
class PulseWalkEdges:
    """Walk-picture reading of one fundamental pulse on the n-qubit hypercube:
    edges it switches on, and basis states acquiring a relative phase."""

    n_qubits: int
    edges: tuple[tuple[int, int], ...]
    phase_nodes: tuple[int, ...]


def pulse_to_walk_edges(gate: Gate, n_qubits: int) -> PulseWalkEdges:
    """Describe RX/XX/RZ pulses as hypercube edges or half-cube phase marks.

    RX on qubit k connects every pair differing in bit k; XX on (j, k)
    connects face diagonals differing in both bits; RZ marks the half of the
    cube with bit k up and adds no edges.
    """
    if any(q > n_qubits for q in gate.qubits):
        raise ValueError("gate wires exceed the register")
    dim = 1 << n_qubits
    if gate.kind == "RX":
        mask = 1 << (n_qubits - gate.qubits[0])
        edges = tuple((j, j ^ mask) for j in range(dim) if j < j ^ mask)
        return PulseWalkEdges(n_qubits, edges, ())
    if gate.kind == "XX":
        mask = (1 << (n_qubits - gate.qubits[0])) | (1 << (n_qubits - gate.qubits[1]))
        edges = tuple((j, j ^ mask) for j in range(dim) if j < j ^ mask)
        return PulseWalkEdges(n_qubits, edges, ())
    if gate.kind == "RZ":
        mask = 1 << (n_qubits - gate.qubits[0])
        nodes = tuple(j for j in range(dim) if j & mask)
        return PulseWalkEdges(n_qubits, (), nodes)
    raise ValueError(f"unsupported gate kind {gate.kind!r}")
