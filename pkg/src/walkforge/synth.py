"""Circuit synthesis: Trotterized walk evolution, projector-dressed Pauli
exponentials, the line-walk step cascade, pulse compilation, and the QFT.

Every synthesized factor is exact for its own term; only the interleaving
(Trotter splitting) is approximate. Decompositions carry explicit GPHASE
gates so synthesized circuits can be compared entrywise, not just
projectively, against dense propagators.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from ._config import max_qubits
from .circuit import Circuit, Gate
from .encode import encode_binary, line_qubit_hamiltonian
from .gatelib import (
    FundamentalPulse,
    decompose_cnot,
    decompose_controlled_rk,
    decompose_controlled_rx,
    decompose_cphase,
    decompose_swap,
    decompose_toffoli,
    euler_decompose,
    expand_multicontrol,
)
from .pauli import PauliHamiltonian, PauliString, to_matrix
from .sim import _expm_herm
from .walkgraph import WalkGraph

__all__ = [
    "Schedule",
    "TrotterPlan",
    "exact_propagator",
    "trotterize",
    "time_sliced",
    "synth_onsite",
    "synth_pauli_evolution",
    "synth_line_walk_step",
    "expand_to_basic",
    "to_fundamental",
    "PulseStrengths",
    "uniform_strengths",
    "circuit_to_pulses",
    "replay_pulses",
    "pulses_to_csv",
    "pulses_from_csv",
    "build_qft_circuit",
    "qft_reference",
]

_PI = np.pi


@dataclass(frozen=True)
class TrotterPlan:
    """Step count and term ordering for first-order splitting."""

    n_steps: int
    ordering: str = "diagonal-first"

    def __post_init__(self) -> None:
        if int(self.n_steps) < 1:
            raise ValueError("step count must be at least 1")
        object.__setattr__(self, "n_steps", int(self.n_steps))
        if self.ordering not in ("diagonal-first", "given"):
            raise ValueError(f"unknown term ordering {self.ordering!r}")


@dataclass(frozen=True)
class Schedule:
    """Piecewise-constant Hamiltonian: ordered (duration, generator) segments.

    Generators may be PauliHamiltonians or WalkGraphs (binary-encoded on use).
    """

    segments: tuple[tuple[float, object], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "segments", tuple((float(d), h) for d, h in self.segments))
        if not self.segments:
            raise ValueError("schedule has no segments")
        if any(d <= 0 for d, _ in self.segments):
            raise ValueError("segment durations must be positive")


def exact_propagator(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i h t) by exact eigendecomposition; the oracle all tests compare to."""
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError("matrix must be square")
    cap = 1 << max_qubits()
    if h.shape[0] > cap:
        raise ValueError(f"matrix dimension {h.shape[0]} above the dense cap {cap}")
    return _expm_herm(h, t)


def _term_sort_key(item: tuple[complex, PauliString]) -> tuple:
    _, s = item
    diagonal = 0 if set(s.letters) <= {"I", "Z"} else 1
    return (diagonal, s.support, s.letters)


def _ordered_terms(h: PauliHamiltonian, ordering: str) -> list[tuple[float, PauliString]]:
    items = list(h.terms)
    if ordering == "diagonal-first":
        items.sort(key=_term_sort_key)
    out = []
    for c, s in items:
        if abs(c.imag) > 1e-12 * max(1.0, abs(c)):
            raise ValueError(f"term {s.letters} has a complex coefficient; not synthesizable")
        out.append((float(c.real), s))
    return out


def _synth_term(coeff: float, s: PauliString, delta: float, m: int) -> tuple[list[Gate], bool]:
    """Gates realizing exp(-i delta coeff P) exactly; flag = ancilla used."""
    angle = coeff * delta
    support = s.support
    if not support:
        return [Gate("GPHASE", (), (-angle,))], False
    letters = [s.letters[q - 1] for q in support]
    if len(support) == 1:
        kind = {"X": "RX", "Y": "RY", "Z": "RZ"}[letters[0]]
        return [Gate(kind, (support[0],), (2.0 * angle,))], False
    if len(support) == 2 and letters == ["X", "X"]:
        return [Gate("XX", support, (-angle,))], False
    sub = synth_pauli_evolution(s, angle)
    return list(sub.gates), True


def trotterize(h: PauliHamiltonian, t: float, plan: TrotterPlan) -> Circuit:
    """First-order split of exp(-i h t) into plan.n_steps sweeps over the terms.

    Within each sweep the per-term factors exp(-i t H_k / N) are applied in
    the plan's fixed order, first term first; each factor is synthesized
    exactly (single rotations, XX pulses, or the laddered construction with
    one shared ancilla).
    """
    m = h.m_qubits
    delta = float(t) / plan.n_steps
    terms = _ordered_terms(h, plan.ordering)
    step_gates: list[Gate] = []
    any_ancilla = False
    for coeff, s in terms:
        gates, used = _synth_term(coeff, s, delta, m)
        any_ancilla = any_ancilla or used
        step_gates.extend(gates)
    all_gates = tuple(step_gates) * plan.n_steps
    return Circuit(m, 1 if any_ancilla else 0, all_gates)


def _segment_hamiltonian(seg) -> PauliHamiltonian:
    if isinstance(seg, PauliHamiltonian):
        return seg
    if isinstance(seg, WalkGraph):
        return encode_binary(seg)
    raise ValueError("schedule segments must hold PauliHamiltonians or WalkGraphs")


def time_sliced(s: Schedule, plan: TrotterPlan | tuple[TrotterPlan, ...]) -> Circuit:
    """Trotterize each segment in order; the earliest segment acts first."""
    plans = (plan,) * len(s.segments) if isinstance(plan, TrotterPlan) else tuple(plan)
    if len(plans) != len(s.segments):
        raise ValueError("need one plan per segment")
    pieces = [
        trotterize(_segment_hamiltonian(seg), duration, p)
        for (duration, seg), p in zip(s.segments, plans)
    ]
    m = pieces[0].n_qubits
    if any(c.n_qubits != m for c in pieces):
        raise ValueError("segments act on different register sizes")
    n_anc = max(c.n_ancillas for c in pieces)
    gates: tuple[Gate, ...] = ()
    for c in pieces:
        gates += c.gates
    return Circuit(m, n_anc, gates)


def synth_onsite(label: str, eps: float) -> Circuit:
    """exp(-i eps |label><label|) on the data qubits, via one ancilla.

    A polarity-matched multi-control folds "am I at this node" into the
    ancilla, a single APHASE applies the phase, and the fold is undone.
    """
    if not label or set(label) - {"0", "1"}:
        raise ValueError("label must be a nonempty bit string over 0/1")
    m = len(label)
    anc = m + 1
    controls = tuple(range(1, m + 1))
    pols = tuple(int(c) for c in label)
    fold = Gate("MCX", controls + (anc,), (), pols)
    gates = (fold, Gate("APHASE", (anc,), (float(eps),)), fold)
    return Circuit(m, 1, gates)


def synth_pauli_evolution(
    string: PauliString, theta: float, controls: tuple[tuple[int, int], ...] = ()
) -> Circuit:
    """exp(-i theta P Pi) for a Pauli string P, optionally dressed by
    up/down projectors Pi on extra qubits, using one ancilla.

    Per-qubit basis changes turn X/Y letters into Z, a CNOT ladder folds the
    string's parity onto the ancilla, and a Z rotation there (split around a
    polarity-matched multi-control when projectors are present) applies the
    angle before everything is undone. controls is a tuple of
    (qubit, polarity) pairs with polarity 1 = up, 0 = down.
    """
    if string.phase != 1:
        raise ValueError("string must carry no phase factor")
    support = string.support
    if not support:
        raise ValueError("pauli string has empty support")
    m = string.m_qubits
    anc = m + 1
    ctrl_qubits = tuple(q for q, _ in controls)
    if set(ctrl_qubits) & set(support):
        raise ValueError("projector controls must be disjoint from the string support")
    if any(not 1 <= q <= m for q in ctrl_qubits):
        raise ValueError("projector controls out of range")
    n_z = sum(1 for q in support if string.letters[q - 1] == "Z")
    tt = float(theta) * (-1.0) ** n_z

    enter: list[Gate] = []
    leave: list[Gate] = []
    for q in support:
        letter = string.letters[q - 1]
        if letter == "X":
            enter.append(Gate("H", (q,)))
            leave.append(Gate("H", (q,)))
        elif letter == "Y":
            enter.append(Gate("RX", (q,), (-_PI / 2,)))
            leave.append(Gate("RX", (q,), (_PI / 2,)))
    ladder = [Gate("CNOT", (q, anc)) for q in support]

    if controls:
        pols = tuple(int(p) for _, p in controls)
        fold = Gate("MCX", ctrl_qubits + (anc,), (), pols)
        core = [
            Gate("RZ", (anc,), (-tt,)),
            fold,
            Gate("RZ", (anc,), (tt,)),
            fold,
        ]
    else:
        core = [Gate("RZ", (anc,), (-2.0 * tt,))]

    gates = enter + ladder + core + ladder[::-1] + leave
    return Circuit(m, 1, tuple(gates))


def _line_step_terms(n_qubits: int, cycle: bool) -> list[tuple[int, tuple[tuple[int, int], ...]]]:
    """(target qubit, ((control qubit, polarity), ...)) per hopping term."""
    n = n_qubits
    terms: list[tuple[int, tuple[tuple[int, int], ...]]] = [(n, ())]
    for m in range(2, n + 1):
        target = n - m + 1
        ctrls = [(n - m + 2, 1)]
        ctrls += [(q, 0) for q in range(n - m + 3, n + 1)]
        if cycle and m == n:
            ctrls = [(q, 0) for q in range(3, n + 1)]
        terms.append((target, tuple(ctrls)))
    return terms


def synth_line_walk_step(
    n_qubits: int, eps: float, *, delta0: float = 1.0, cycle: bool = False, expand: bool = True
) -> Circuit:
    """One Trotter step exp(+i eps delta0 X Pi) per hopping term of the
    2^N-node uniform line (or cycle) under the prefix-XOR labeling.

    Each term is a single X on the flipping qubit dressed by one up projector
    and a tail of down projectors, so the step is a cascade of multiply
    controlled RX rotations. With expand=True the cascade is rewritten via
    the Toffoli ladder onto shared ancillas.
    """
    if n_qubits < 1:
        raise ValueError("need at least one qubit")
    if cycle and n_qubits < 2:
        raise ValueError("cycle needs at least two qubits")
    angle = -2.0 * float(eps) * float(delta0)
    gates: list[Gate] = []
    n_anc = 0
    for target, ctrls in _line_step_terms(n_qubits, cycle):
        if not ctrls:
            g = Gate("RX", (target,), (angle,))
            gates.append(g)
            continue
        qubits = tuple(q for q, _ in ctrls) + (target,)
        pols = tuple(p for _, p in ctrls)
        g = Gate("MCRX", qubits, (angle,), pols)
        if expand:
            sub = expand_multicontrol(g, n_qubits)
            gates.extend(sub.gates)
            n_anc = max(n_anc, sub.n_ancillas)
        else:
            gates.append(g)
    return Circuit(n_qubits, n_anc, tuple(gates))


_REMAP_SAFE = {"RX", "RY", "RZ", "H", "X", "APHASE", "CNOT", "XX", "GPHASE"}


def _remap(gates: tuple[Gate, ...], wires: dict[int, int]) -> list[Gate]:
    return [
        Gate(g.kind, tuple(wires[q] for q in g.qubits), g.params, g.polarities)
        for g in gates
    ]


def expand_to_basic(c: Circuit) -> Circuit:
    """Rewrite every gate into one- and two-qubit named gates.

    Multi-controls go through the Toffoli ladder (fresh shared ancillas
    beyond the existing wires), then Toffoli, controlled-RX, SWAP, CRK and
    CPHASE are replaced by their decompositions.
    """
    base = c.n_wires
    staged: list[Gate] = []
    extra = 0
    for g in c.gates:
        if g.kind in ("MCX", "MCRX"):
            sub = expand_multicontrol(g, base)
            staged.extend(sub.gates)
            extra = max(extra, sub.n_ancillas)
        else:
            staged.append(g)
    out: list[Gate] = []
    for g in staged:
        if g.kind in _REMAP_SAFE:
            out.append(g)
        elif g.kind == "TOFFOLI":
            wires = dict(zip((1, 2, 3), g.qubits))
            out.extend(_remap(decompose_toffoli().gates, wires))
        elif g.kind == "CRX":
            wires = dict(zip((1, 2), g.qubits))
            out.extend(_remap(decompose_controlled_rx(g.params[0] / 2.0).gates, wires))
        elif g.kind == "SWAP":
            wires = dict(zip((1, 2), g.qubits))
            out.extend(_remap(decompose_swap().gates, wires))
        elif g.kind == "CRK":
            wires = dict(zip((1, 2), g.qubits))
            out.extend(_remap(decompose_controlled_rk(int(g.params[0])).gates, wires))
        elif g.kind == "CPHASE":
            wires = dict(zip((1, 2), g.qubits))
            out.extend(_remap(decompose_cphase(g.params[0]).gates, wires))
        else:
            raise ValueError(f"cannot lower gate kind {g.kind!r}")
    return Circuit(c.n_qubits, c.n_ancillas + extra, tuple(out))


def to_fundamental(c: Circuit) -> Circuit:
    """Rewrite a circuit over the fundamental set {RX, RZ, XX} plus GPHASE."""
    basic = expand_to_basic(c)
    out: list[Gate] = []
    for g in basic.gates:
        if g.kind in ("RX", "RZ", "XX", "GPHASE"):
            out.append(g)
        elif g.kind == "RY":
            q = g.qubits
            out += [Gate("RZ", q, (-_PI / 2,)), Gate("RX", q, g.params), Gate("RZ", q, (_PI / 2,))]
        elif g.kind == "X":
            out += [Gate("RX", g.qubits, (_PI,)), Gate("GPHASE", (), (_PI / 2,))]
        elif g.kind == "APHASE":
            eps = g.params[0]
            out += [Gate("RZ", g.qubits, (eps,)), Gate("GPHASE", (), (-eps / 2.0,))]
        elif g.kind == "H":
            alpha, theta, gamma, xi = euler_decompose(
                np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)
            )
            q = g.qubits
            out += [
                Gate("RZ", q, (xi,)),
                Gate("RX", q, (gamma,)),
                Gate("RZ", q, (theta,)),
                Gate("GPHASE", (), (alpha,)),
            ]
        elif g.kind == "CNOT":
            wires = dict(zip((1, 2), g.qubits))
            out.extend(_remap(decompose_cnot().gates, wires))
        else:
            raise ValueError(f"cannot lower gate kind {g.kind!r}")
    return Circuit(basic.n_qubits, basic.n_ancillas, tuple(out))


@dataclass(frozen=True)
class PulseStrengths:
    """Available always-on term strengths: one eps and delta per wire, and a
    symmetric vperp matrix for pairs. All needed entries must be positive."""

    eps: np.ndarray
    delta: np.ndarray
    vperp: np.ndarray

    def __post_init__(self) -> None:
        eps = np.asarray(self.eps, dtype=float)
        delta = np.asarray(self.delta, dtype=float)
        vperp = np.asarray(self.vperp, dtype=float)
        n = eps.size
        if eps.shape != (n,) or delta.shape != (n,) or vperp.shape != (n, n):
            raise ValueError("strength arrays have inconsistent shapes")
        if np.max(np.abs(vperp - vperp.T)) > 0.0:
            raise ValueError("vperp must be symmetric")
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "vperp", vperp)


def uniform_strengths(n_wires: int, value: float = 1.0) -> PulseStrengths:
    """The same positive strength for every term on every wire and pair."""
    if n_wires < 1:
        raise ValueError("need at least one wire")
    v = float(value)
    vperp = np.full((n_wires, n_wires), v)
    np.fill_diagonal(vperp, 0.0)
    return PulseStrengths(np.full(n_wires, v), np.full(n_wires, v), vperp)


def _need(strength: float, what: str) -> float:
    if strength <= 0.0:
        raise ValueError(f"zero strength for needed term {what}")
    return strength


def circuit_to_pulses(c: Circuit, strengths: PulseStrengths) -> tuple[FundamentalPulse, ...]:
    """Compile a fundamental circuit into timed pulses of the always-on terms.

    Angles become durations: RX(gamma) on wire j runs the X term for
    -gamma/(2 delta_j) (with gamma -> gamma - 2 pi whenever the raw duration
    would be negative; the leftover is a global sign), RZ(theta) runs the Z
    term for theta/(2 eps_j) (theta -> theta + 2 pi likewise), XX(chi) runs
    the pair term for chi/vperp (chi -> chi + 2 pi, exactly phase-free).
    GPHASE gates are dropped. Replay matches unitary(c) up to global phase.
    """
    if strengths.eps.size != c.n_wires:
        raise ValueError("strengths sized for a different wire count")
    pulses: list[FundamentalPulse] = []
    for g in c.gates:
        if g.kind == "GPHASE":
            continue
        if g.kind == "RX":
            gamma = g.params[0]
            if gamma == 0.0:
                continue
            j = g.qubits[0]
            d = _need(float(strengths.delta[j - 1]), f"delta on wire {j}")
            if gamma > 0.0:
                gamma -= 2.0 * _PI
            pulses.append(FundamentalPulse("delta", (j,), d, -gamma / (2.0 * d)))
        elif g.kind == "RZ":
            theta = g.params[0]
            if theta == 0.0:
                continue
            j = g.qubits[0]
            e = _need(float(strengths.eps[j - 1]), f"eps on wire {j}")
            if theta < 0.0:
                theta += 2.0 * _PI
            pulses.append(FundamentalPulse("eps", (j,), e, theta / (2.0 * e)))
        elif g.kind == "XX":
            chi = g.params[0]
            if chi == 0.0:
                continue
            i, j = g.qubits
            v = _need(float(strengths.vperp[i - 1, j - 1]), f"vperp on wires {i},{j}")
            if chi < 0.0:
                chi += 2.0 * _PI
            pulses.append(FundamentalPulse("vperp", (i, j), v, chi / v))
        else:
            raise ValueError(f"gate {g.kind} is outside the fundamental set")
    return tuple(pulses)


def _pulse_generator(p: FundamentalPulse, n_wires: int) -> PauliHamiltonian:
    letters = ["I"] * n_wires
    if p.term == "eps":
        letters[p.qubits[0] - 1] = "Z"
        coeff = p.strength
    elif p.term == "delta":
        letters[p.qubits[0] - 1] = "X"
        coeff = -p.strength
    else:
        letters[p.qubits[0] - 1] = "X"
        letters[p.qubits[1] - 1] = "X"
        coeff = -p.strength
    return PauliHamiltonian(n_wires, ((coeff, PauliString(n_wires, "".join(letters))),))


def replay_pulses(pulses: tuple[FundamentalPulse, ...], n_wires: int) -> np.ndarray:
    """Exact propagator product of the pulse schedule, earliest pulse first."""
    dim = 1 << n_wires
    u = np.eye(dim, dtype=complex)
    for p in pulses:
        h = to_matrix(_pulse_generator(p, n_wires))
        u = exact_propagator(h, p.duration) @ u
    return u


def pulses_to_csv(pulses: tuple[FundamentalPulse, ...]) -> str:
    """CSV rows term,qubits,strength,duration in execution order."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["term", "qubits", "strength", "duration"])
    for p in pulses:
        qubits = " ".join(str(q) for q in p.qubits)
        w.writerow([p.term, qubits, f"{p.strength:.17g}", f"{p.duration:.17g}"])
    return buf.getvalue()


def pulses_from_csv(text: str) -> tuple[FundamentalPulse, ...]:
    """Parse the pulse CSV format."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != ["term", "qubits", "strength", "duration"]:
        raise ValueError("pulse csv must start with the term,qubits,strength,duration header")
    out = []
    for row in rows[1:]:
        if not row:
            continue
        if len(row) != 4:
            raise ValueError("pulse rows need exactly four fields")
        term, qubits, strength, duration = row
        out.append(
            FundamentalPulse(
                term, tuple(int(q) for q in qubits.split()), float(strength), float(duration)
            )
        )
    return tuple(out)


def build_qft_circuit(n: int, level: str = "named_gates") -> Circuit:
    """Fourier transform circuit: per-qubit H plus controlled phase cascade,
    then the reversing SWAP network.

    level="named_gates" keeps H/CRK/SWAP; level="fundamental" expands each of
    them through the decomposition library so only {RX, RZ, XX, GPHASE}
    remain.
    """
    if n < 1:
        raise ValueError("need at least one qubit")
    if level not in ("named_gates", "fundamental"):
        raise ValueError(f"unknown synthesis level {level!r}")
    gates: list[Gate] = []
    for j in range(1, n + 1):
        gates.append(Gate("H", (j,)))
        for k in range(2, n - j + 2):
            gates.append(Gate("CRK", (j + k - 1, j), (float(k),)))
    for i in range(1, n // 2 + 1):
        gates.append(Gate("SWAP", (i, n + 1 - i)))
    c = Circuit(n, 0, tuple(gates))
    if level == "fundamental":
        return to_fundamental(c)
    return c


def qft_reference(n: int) -> np.ndarray:
    """The DFT matrix F_jk = exp(i 2 pi j k / 2^n) / 2^{n/2}."""
    if not 1 <= n <= 12:
        raise ValueError("reference matrix supported for 1..12 qubits")
    dim = 1 << n
    jk = np.outer(np.arange(dim), np.arange(dim))
    return np.exp(2j * _PI * jk / dim) / np.sqrt(dim)
