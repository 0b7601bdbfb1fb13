"""Two-qubit concurrence and symmetric Dicke states."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, sqrt

import numpy as np

from gmewit.qubit_algebra import PAULI_Y, validate_density

MAX_DICKE_QUBITS = 24


@dataclass(frozen=True)
class DickeSpec:
    """``N`` qubits with ``k`` of them in ``|1>`` (spin up)."""

    N: int
    k: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"N must be positive, got {self.N}")
        if not 0 <= self.k <= self.N:
            raise ValueError(f"k must lie in [0, {self.N}], got {self.k}")

    @property
    def jz(self) -> float:
        return (2 * self.k - self.N) / 2


def dicke_state(spec: DickeSpec) -> np.ndarray:
    """Dense vector: uniform superposition of all weight-``k`` bitstrings."""
    n, k = spec.N, spec.k
    if n > MAX_DICKE_QUBITS:
        raise ValueError(f"dense Dicke vectors are limited to N <= {MAX_DICKE_QUBITS}")
    psi = np.zeros(2**n, dtype=complex)
    idx = [sum(1 << (n - 1 - i) for i in ones) for ones in itertools.combinations(range(n), k)]
    psi[idx] = 1 / np.sqrt(comb(n, k))
    return psi


_YY = np.kron(PAULI_Y, PAULI_Y)


def wootters_concurrence(rho) -> float:
    """Concurrence ``max(0, l1 - l2 - l3 - l4)`` from the square roots of the
    eigenvalues of ``rho (Y x Y) rho* (Y x Y)``, in decreasing order."""
    rho = validate_density(rho, 2)
    ev = np.linalg.eigvals(rho @ _YY @ rho.conj() @ _YY)
    # eigenvalues are real and non-negative up to round-off
    lam = np.sort(np.sqrt(np.abs(ev.real)))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def _check_n_jz(N: int, Jz: float) -> None:
    if N < 2:
        raise ValueError(f"N must be at least 2, got {N}")
    two_jz = 2 * Jz
    if two_jz != int(two_jz) or abs(two_jz) > N or (int(two_jz) - N) % 2:
        raise ValueError(f"Jz={Jz} is not a valid magnetization for N={N}")


def dicke_concurrence(N: int, Jz: float) -> float:
    """Closed-form two-site concurrence of the Dicke state ``|N/2, Jz>``; the same
    for every site pair."""
    _check_n_jz(N, Jz)
    a = N**2 - 4 * Jz**2
    b = (N - 2) ** 2 - 4 * Jz**2
    return (a - sqrt(a * b)) / (2 * N * (N - 1))


def dicke_pair_rdm(N: int, k: int) -> np.ndarray:
    """Two-site reduction of the Dicke state with ``k`` up spins out of ``N``.

    With ``Jz = (2k - N)/2`` the nonzero elements are
    ``rho_00,00 = (N - 2Jz)(N - 2 - 2Jz) / (4N(N-1))``, ``rho_11,11`` with ``+Jz``,
    and ``(N^2 - 4Jz^2) / (4N(N-1))`` on the four entries of the ``{01, 10}`` block.
    The sign pairing was fixed against brute-force partial traces.
    """
    spec = DickeSpec(N, k)
    if N < 2:
        raise ValueError("a pair reduction needs N >= 2")
    jz = spec.jz
    norm = 4 * N * (N - 1)
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = (N - 2 * jz) * (N - 2 - 2 * jz) / norm
    rho[3, 3] = (N + 2 * jz) * (N - 2 + 2 * jz) / norm
    rho[1:3, 1:3] = (N**2 - 4 * jz**2) / norm
    return rho
