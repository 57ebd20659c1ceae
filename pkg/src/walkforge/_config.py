"""Shared capacity limits for dense-matrix construction."""
from __future__ import annotations

import os

_DEFAULT_MAX_QUBITS = 14


def max_qubits() -> int:
    """Dense-matrix qubit cap; override with WALKFORGE_MAX_QUBITS at your own risk."""
    raw = os.environ.get("WALKFORGE_MAX_QUBITS")
    if raw is None:
        return _DEFAULT_MAX_QUBITS
    try:
        value = int(raw)
    except ValueError:
        raise ValueError("WALKFORGE_MAX_QUBITS must be an integer") from None
    if value < 1:
        raise ValueError("WALKFORGE_MAX_QUBITS must be positive")
    return value


def check_qubit_count(m: int, what: str) -> None:
    cap = max_qubits()
    if m > cap:
        raise ValueError(f"{what} needs {m} qubits, above the dense cap of {cap}")
