"""Forward mappings from walk graphs to qubit Hamiltonians.

Two encodings: one qubit per node (the walk lives in the single-up-spin
subspace) and a binary encoding where node labels are bit strings over
ceil(log2 n) qubits. Coefficients are normalized so the encoded matrix
equals walk_matrix exactly on the embedded subspace; that equality is the
contract every test checks.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pauli import PauliHamiltonian, PauliString, hop_string, projector_string
from .walkgraph import WalkGraph, build_line

__all__ = [
    "EncodingSpec",
    "encode_single_excitation",
    "encode_binary",
    "gray_labels",
    "line_position",
    "line_qubit_hamiltonian",
    "hyperlattice_qubit_hamiltonian",
]


@dataclass(frozen=True)
class EncodingSpec:
    """Which encoding to use and, for the binary scheme, the node labels.

    labels, when given, is one bit string per node (characters '0'/'1',
    equal length, distinct); otherwise labels come from the graph or fall
    back to the plain binary expansion of the node index.
    """

    scheme: str
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.scheme not in ("single_excitation", "binary"):
            raise ValueError(f"unknown encoding scheme {self.scheme!r}")
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))


def _check_labels(labels: tuple[str, ...], n_nodes: int) -> int:
    if len(labels) != n_nodes:
        raise ValueError("need exactly one label per node")
    if not labels:
        raise ValueError("label list is empty")
    m = len(labels[0])
    for s in labels:
        if len(s) != m or set(s) - {"0", "1"}:
            raise ValueError("labels must be equal-length bit strings over 0/1")
    if len(set(labels)) != n_nodes:
        raise ValueError("duplicate labels")
    return m


def _index_labels(n_nodes: int) -> tuple[str, ...]:
    m = max(1, (n_nodes - 1).bit_length())
    return tuple(format(j, f"0{m}b") for j in range(n_nodes))


def encode_single_excitation(g: WalkGraph) -> PauliHamiltonian:
    """One qubit per node: hops become -(Delta/2)(XX+YY), energies (eps/2)(I+Z).

    Restricted to the states with exactly one qubit up (node j = qubit j+1 up),
    the matrix equals walk_matrix(g) exactly.
    """
    m = g.n_nodes
    terms: list[tuple[complex, PauliString]] = []
    for i, j, delta in g.edges:
        for letter in ("X", "Y"):
            s = "".join(letter if q in (i, j) else "I" for q in range(m))
            terms.append((-delta / 2.0, PauliString(m, s)))
    for j, eps in enumerate(g.onsite):
        if eps == 0.0:
            continue
        terms.append((eps / 2.0, PauliString(m, "I" * m)))
        terms.append((eps / 2.0, PauliString(m, "I" * j + "Z" + "I" * (m - j - 1))))
    return PauliHamiltonian(m, tuple(terms))


def encode_binary(g: WalkGraph, spec: EncodingSpec | None = None) -> PauliHamiltonian:
    """Binary encoding: node j at basis state |label_j>, hops via hop_string.

    H = sum_j eps_j * projector(label_j) - sum_edges Delta_ij * hop(label_i,
    label_j). Unlabeled basis states are exactly decoupled (zero rows).
    """
    if spec is not None and spec.scheme != "binary":
        raise ValueError("encode_binary needs a binary-scheme spec")
    if spec is not None and spec.labels is not None:
        labels = spec.labels
    elif g.labels is not None:
        labels = g.labels
    else:
        labels = _index_labels(g.n_nodes)
    m = _check_labels(labels, g.n_nodes)
    terms: list[tuple[complex, PauliString]] = []
    for j, eps in enumerate(g.onsite):
        if eps == 0.0:
            continue
        terms.extend((eps * c, s) for c, s in projector_string(labels[j]).terms)
    for i, j, delta in g.edges:
        hop = hop_string(labels[i], labels[j])
        terms.extend((-delta * c, s) for c, s in hop.terms)
    return PauliHamiltonian(m, tuple(terms))


def gray_labels(n_qubits: int) -> tuple[str, ...]:
    """Bit-string labels for line positions 1..2^N; neighbors differ in one bit."""
    if n_qubits < 1:
        raise ValueError("need at least one qubit")
    out = []
    for p in range(2**n_qubits):
        v = p ^ (p >> 1)
        out.append(format(v, f"0{n_qubits}b"))
    return tuple(out)


def line_position(x: str) -> int:
    """Position 1..2^N of a bit string on the relabeled line (prefix-XOR map)."""
    if not x or set(x) - {"0", "1"}:
        raise ValueError("input must be a nonempty bit string over 0/1")
    acc = 0
    pos = 0
    for c in x:
        acc ^= int(c)
        pos = (pos << 1) | acc
    return pos + 1


def _per_axis(value, count: int, length: int, what: str) -> list[np.ndarray]:
    """Broadcast scalars/sequences/nested sequences to one array per axis."""
    if value is None:
        return [np.zeros(length) for _ in range(count)]
    if np.isscalar(value):
        return [np.full(length, float(value)) for _ in range(count)]
    arr = [np.asarray(v, dtype=float) for v in value]
    if all(a.ndim == 0 for a in arr):
        arr = [np.full(length, float(a)) for a in arr]
    if len(arr) == count and all(a.shape == (length,) for a in arr):
        return arr
    flat = np.asarray(value, dtype=float)
    if flat.shape == (length,):
        return [flat.copy() for _ in range(count)]
    raise ValueError(f"{what} must broadcast to {count} axes of length {length}")


def line_qubit_hamiltonian(n_qubits: int, deltas=1.0, eps=None) -> PauliHamiltonian:
    """Walk on a 2^N-node path, binary-encoded with the prefix-XOR labeling.

    With uniform hopping the result merges to the single-X-per-bit cascade
    (X on the flipping qubit, up/down projectors on the qubits before it).
    """
    if n_qubits < 1:
        raise ValueError("need at least one qubit")
    n_nodes = 2**n_qubits
    g = build_line(n_nodes, deltas=deltas, eps=eps)
    return encode_binary(g, EncodingSpec("binary", gray_labels(n_qubits)))


def hyperlattice_qubit_hamiltonian(
    d: int, n_qubits_per_axis: int, deltas=1.0, eps=None
) -> PauliHamiltonian:
    """Kronecker sum of d independent line walks on disjoint qubit blocks.

    Axis 0 owns qubits 1..N (most significant), axis 1 the next N, and so on;
    there are no cross-axis terms.
    """
    if d < 1:
        raise ValueError("need at least one axis")
    n = int(n_qubits_per_axis)
    n_nodes = 2**n
    delta_ax = _per_axis(deltas, d, n_nodes - 1, "deltas")
    eps_ax = _per_axis(eps, d, n_nodes, "eps")
    m_total = d * n
    terms: list[tuple[complex, PauliString]] = []
    for ax in range(d):
        h_line = line_qubit_hamiltonian(n, deltas=delta_ax[ax], eps=eps_ax[ax])
        off = ax * n
        pad_left = "I" * off
        pad_right = "I" * (m_total - off - n)
        for c, s in h_line.terms:
            terms.append((c, PauliString(m_total, pad_left + s.letters + pad_right, s.phase)))
    return PauliHamiltonian(m_total, tuple(terms))
