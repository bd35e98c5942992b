"""Minimal dense statevector simulator.

States are 1-D complex numpy arrays of length 2^n; qubit 0 is the least
significant bit of the basis index. All operations return new arrays and
leave their input untouched.

Basis-index-conditioned operations (phase flips from a predicate, rotations
whose angle is a function of the basis index) are applied by direct iteration
over amplitudes; this implements classical oracles without reversible-logic
synthesis while staying exactly unitary.
"""
from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

MAX_QUBITS = 24

Predicate = Callable[[np.ndarray], np.ndarray]


def n_qubits_of(state: np.ndarray) -> int:
    n = int(np.log2(len(state)))
    if 1 << n != len(state):
        raise ValueError("state length is not a power of two")
    return n


def init_state(n_qubits: int, max_qubits: int = MAX_QUBITS) -> np.ndarray:
    if not (1 <= n_qubits <= max_qubits):
        raise ValueError(f"n_qubits must be in [1, {max_qubits}]")
    state = np.zeros(1 << n_qubits, dtype=complex)
    state[0] = 1.0
    return state


def _control_filter(indices: np.ndarray, control: int | None) -> np.ndarray:
    if control is None:
        return indices
    return indices[((indices >> control) & 1) == 1]


def _apply_1q(
    state: np.ndarray, qubit: int, matrix: np.ndarray, control: int | None = None
) -> np.ndarray:
    n = n_qubits_of(state)
    if not (0 <= qubit < n) or (control is not None and not (0 <= control < n)):
        raise ValueError("qubit index out of range")
    if control == qubit:
        raise ValueError("control equals target")
    idx = np.arange(len(state))
    i0 = _control_filter(idx[((idx >> qubit) & 1) == 0], control)
    i1 = i0 | (1 << qubit)
    out = state.copy()
    a0, a1 = state[i0], state[i1]
    out[i0] = matrix[0, 0] * a0 + matrix[0, 1] * a1
    out[i1] = matrix[1, 0] * a0 + matrix[1, 1] * a1
    return out


_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_X = np.array([[0, 1], [1, 0]], dtype=complex)


def apply_h(state: np.ndarray, qubit: int, control: int | None = None) -> np.ndarray:
    return _apply_1q(state, qubit, _H, control)


def apply_x(state: np.ndarray, qubit: int, control: int | None = None) -> np.ndarray:
    return _apply_1q(state, qubit, _X, control)


def ry_matrix(angle: float) -> np.ndarray:
    c, s = np.cos(angle / 2), np.sin(angle / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def apply_ry(
    state: np.ndarray, qubit: int, angle: float, control: int | None = None
) -> np.ndarray:
    return _apply_1q(state, qubit, ry_matrix(angle), control)


def apply_ry_indexed(
    state: np.ndarray,
    qubit: int,
    angle_of_index: Callable[[np.ndarray], np.ndarray],
    control: int | None = None,
) -> np.ndarray:
    """Ry on ``qubit`` with the angle computed per basis index.

    ``angle_of_index`` receives the basis indices with the target bit cleared
    (vectorized over an integer array) and returns the rotation angles.
    """
    n = n_qubits_of(state)
    if not (0 <= qubit < n):
        raise ValueError("qubit index out of range")
    idx = np.arange(len(state))
    i0 = _control_filter(idx[((idx >> qubit) & 1) == 0], control)
    i1 = i0 | (1 << qubit)
    theta = np.asarray(angle_of_index(i0), dtype=float)
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    out = state.copy()
    a0, a1 = state[i0], state[i1]
    out[i0] = c * a0 - s * a1
    out[i1] = s * a0 + c * a1
    return out


def phase_flip_if(state: np.ndarray, predicate: Predicate | np.ndarray) -> np.ndarray:
    """Multiply by -1 every amplitude whose basis index satisfies the predicate."""
    if callable(predicate):
        mask = np.asarray(predicate(np.arange(len(state))), dtype=bool)
    else:
        mask = np.asarray(predicate, dtype=bool)
    out = state.copy()
    out[mask] *= -1
    return out


def _register_view(state: np.ndarray, register: Sequence[int]):
    """Reshape so the register forms the leading axis of size 2^m.

    Returns (block, restore) where block has shape (2^m, rest) and restore
    maps a modified block back to a flat state.
    """
    n = n_qubits_of(state)
    m = len(register)
    if len(set(register)) != m or any(not (0 <= q < n) for q in register):
        raise ValueError("bad register")
    arr = state.reshape([2] * n)
    src_axes = [n - 1 - q for q in reversed(register)]  # MSB of y first
    moved = np.moveaxis(arr, src_axes, range(m))
    shape = moved.shape
    block = moved.reshape(1 << m, -1)

    def restore(new_block: np.ndarray) -> np.ndarray:
        back = np.moveaxis(new_block.reshape(shape), range(m), src_axes)
        return np.ascontiguousarray(back).reshape(-1)

    return block, restore


def diffusion(state: np.ndarray, qubits: Sequence[int] | None = None) -> np.ndarray:
    """Reflect amplitudes about their mean over the given register."""
    if qubits is None:
        qubits = list(range(n_qubits_of(state)))
    block, restore = _register_view(state, qubits)
    mean = block.mean(axis=0, keepdims=True)
    return restore(2 * mean - block)


def _dft_matrix(m: int, inverse: bool) -> np.ndarray:
    dim = 1 << m
    sign = -2j if inverse else 2j
    k = np.arange(dim)
    return np.exp(sign * np.pi * np.outer(k, k) / dim) / np.sqrt(dim)


def qft(state: np.ndarray, register: Sequence[int]) -> np.ndarray:
    block, restore = _register_view(state, register)
    return restore(_dft_matrix(len(register), inverse=False) @ block)


def inverse_qft(state: np.ndarray, register: Sequence[int]) -> np.ndarray:
    block, restore = _register_view(state, register)
    return restore(_dft_matrix(len(register), inverse=True) @ block)


def probability_of(state: np.ndarray, qubit: int, outcome: int) -> float:
    n = n_qubits_of(state)
    if not (0 <= qubit < n):
        raise ValueError("qubit index out of range")
    idx = np.arange(len(state))
    mask = ((idx >> qubit) & 1) == outcome
    return float(np.sum(np.abs(state[mask]) ** 2))


def register_distribution(state: np.ndarray, register: Sequence[int] | None = None) -> np.ndarray:
    """Measurement distribution marginalized onto a register (LSB-first)."""
    probs = np.abs(state) ** 2
    if register is None:
        return probs
    idx = np.arange(len(state))
    y = np.zeros(len(state), dtype=np.int64)
    for j, q in enumerate(register):
        y |= ((idx >> q) & 1) << j
    return np.bincount(y, weights=probs, minlength=1 << len(register))


def sample_index(state: np.ndarray, rng: np.random.Generator) -> int:
    probs = np.abs(state) ** 2
    probs /= probs.sum()
    return int(rng.choice(len(state), p=probs))
