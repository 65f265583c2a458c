"""In-place gate kernels on flat amplitude buffers.

A two-qubit matrix acting on ``(q0, q1)`` is indexed by ``bit_q0 + 2 * bit_q1``.
"""

from __future__ import annotations

import numpy as np


def apply_1q(psi: np.ndarray, n_qubits: int, q: int, u: np.ndarray) -> None:
    view = psi.reshape(1 << (n_qubits - q - 1), 2, 1 << q)
    a0 = view[:, 0, :].copy()
    a1 = view[:, 1, :].copy()
    view[:, 0, :] = u[0, 0] * a0 + u[0, 1] * a1
    view[:, 1, :] = u[1, 0] * a0 + u[1, 1] * a1


def apply_diag_1q(psi: np.ndarray, n_qubits: int, q: int, d0: complex, d1: complex) -> None:
    view = psi.reshape(1 << (n_qubits - q - 1), 2, 1 << q)
    view[:, 0, :] *= d0
    view[:, 1, :] *= d1


def apply_2q(psi: np.ndarray, n_qubits: int, q0: int, q1: int, u: np.ndarray) -> None:
    lo, hi = (q0, q1) if q0 < q1 else (q1, q0)
    view = psi.reshape(1 << (n_qubits - hi - 1), 2, 1 << (hi - lo - 1), 2, 1 << lo)
    blocks = []
    for local in range(4):
        b0, b1 = local & 1, local >> 1
        b_lo, b_hi = (b0, b1) if q0 == lo else (b1, b0)
        blocks.append((b_hi, b_lo))
    amps = [view[:, b_hi, :, b_lo, :].copy() for b_hi, b_lo in blocks]
    for row, (b_hi, b_lo) in enumerate(blocks):
        acc = np.zeros_like(amps[0])
        for col in range(4):
            c = u[row, col]
            if c != 0:
                acc += c * amps[col]
        view[:, b_hi, :, b_lo, :] = acc


def apply_cnot(psi: np.ndarray, n_qubits: int, control: int, target: int) -> None:
    lo, hi = (control, target) if control < target else (target, control)
    view = psi.reshape(1 << (n_qubits - hi - 1), 2, 1 << (hi - lo - 1), 2, 1 << lo)
    if control == hi:
        a = view[:, 1, :, 0, :].copy()
        view[:, 1, :, 0, :] = view[:, 1, :, 1, :]
        view[:, 1, :, 1, :] = a
    else:
        a = view[:, 0, :, 1, :].copy()
        view[:, 0, :, 1, :] = view[:, 1, :, 1, :]
        view[:, 1, :, 1, :] = a
