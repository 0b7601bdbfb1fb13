"""Elementary qubit operators, the permutation (R) basis, partial traces and samplers.

Tensor factors are ordered with site 0 as the most significant bit, so the basis
index of ``|a_0 a_1 ... a_{n-1}>`` is ``sum(a_i << (n - 1 - i))``. States are plain
complex ``numpy`` arrays; :func:`validate_density` is the single gatekeeper for the
density-matrix invariants.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

TRACE_TOL = 1e-12
HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-10

IDENTITY2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

PARTITIONS = ("1|23", "2|13", "3|12")


class InvalidStateError(ValueError):
    """Raised when a matrix fails the density-matrix invariants."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def permutation_operator(perm: Sequence[int]) -> np.ndarray:
    """Operator sending ``|a_0 ... a_{n-1}>`` to ``|a_perm[0] ... a_perm[n-1]>``."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"not a permutation of range({n}): {perm!r}")
    dim = 2**n
    op = np.zeros((dim, dim))
    for bits in itertools.product((0, 1), repeat=n):
        src = int("".join(map(str, bits)), 2)
        dst = int("".join(str(bits[p]) for p in perm), 2)
        op[dst, src] = 1.0
    return op


def swap_operator(i: int, j: int, n: int) -> np.ndarray:
    """Real symmetric operator exchanging tensor factors ``i`` and ``j`` of ``n`` qubits."""
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"site indices ({i}, {j}) out of range for {n} qubits")
    if i == j:
        raise ValueError("swap_operator needs two distinct sites")
    perm = list(range(n))
    perm[i], perm[j] = perm[j], perm[i]
    return permutation_operator(perm)


@dataclass(frozen=True)
class RBasis:
    """The five SU(2)-invariant Hermitian operators on three qubits.

    ``r_plus`` and ``r_zero`` are the projectors onto total spin 3/2 and 1/2;
    ``r_one``, ``r_two``, ``r_three`` act as Pauli matrices on the two-fold
    multiplicity of the spin-1/2 sector. All pairwise Hilbert-Schmidt products
    are ``4 * delta_jk``.
    """

    r_plus: np.ndarray
    r_zero: np.ndarray
    r_one: np.ndarray
    r_two: np.ndarray
    r_three: np.ndarray

    def __iter__(self) -> Iterator[np.ndarray]:
        return iter((self.r_plus, self.r_zero, self.r_one, self.r_two, self.r_three))

    def stack(self) -> np.ndarray:
        """All five operators as a ``(5, 8, 8)`` array."""
        return np.stack(list(self))


@lru_cache(maxsize=None)
def build_r_basis() -> RBasis:
    one = np.eye(8)
    v12 = swap_operator(0, 1, 3)
    v23 = swap_operator(1, 2, 3)
    v13 = swap_operator(0, 2, 3)
    v123 = v12 @ v23
    v321 = v23 @ v12
    s3 = np.sqrt(3.0)
    ops = [
        (one + v12 + v23 + v13 + v123 + v321) / 6,
        (2 * one - v123 - v321) / 3,
        (2 * v23 - v13 - v12) / 3,
        (v12 - v13) / s3,
        1j * (v123 - v321) / s3,
    ]
    basis = RBasis(*(_frozen(np.asarray(op, dtype=complex)) for op in ops))

    gram = np.einsum("aij,bji->ab", basis.stack(), basis.stack())
    if not np.allclose(gram, 4 * np.eye(5), rtol=0, atol=1e-12):
        raise AssertionError("R basis is not Hilbert-Schmidt orthogonal")
    return basis


def validate_density(
    rho,
    n_qubits: int | None = None,
    *,
    trace_tol: float = TRACE_TOL,
    hermitian_tol: float = HERMITIAN_TOL,
    psd_tol: float = PSD_TOL,
) -> np.ndarray:
    """Return ``rho`` as a complex array after checking the density-matrix invariants.

    Raises :class:`InvalidStateError` on a bad shape, non-Hermiticity, a trace
    away from one, or an eigenvalue below ``-psd_tol``. States are never repaired.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidStateError(f"expected a square matrix, got shape {rho.shape}")
    dim = rho.shape[0]
    n = dim.bit_length() - 1
    if dim < 2 or 2**n != dim:
        raise InvalidStateError(f"dimension {dim} is not a power of two")
    if n_qubits is not None and n != n_qubits:
        raise InvalidStateError(f"expected {n_qubits} qubits, got {n}")
    herm_err = np.abs(rho - rho.conj().T).max()
    if herm_err > hermitian_tol:
        raise InvalidStateError(f"matrix is not Hermitian (max deviation {herm_err:.3g})")
    tr = np.trace(rho)
    if abs(tr - 1) > trace_tol:
        raise InvalidStateError(f"trace is {tr.real:.15g}, expected 1")
    lam_min = np.linalg.eigvalsh((rho + rho.conj().T) / 2)[0]
    if lam_min < -psd_tol:
        raise InvalidStateError(f"matrix is not positive semidefinite (min eigenvalue {lam_min:.3g})")
    return rho


def partial_trace(rho, keep: Sequence[int]) -> np.ndarray:
    """Reduced density matrix on the sites in ``keep`` (strictly increasing).

    Passing every site returns ``rho`` unchanged; an empty ``keep`` is an error
    (the full trace is just ``np.trace``).
    """
    rho = validate_density(rho)
    n = rho.shape[0].bit_length() - 1
    keep = list(keep)
    if not keep:
        raise ValueError("keep must name at least one site")
    if any(k < 0 or k >= n for k in keep):
        raise ValueError(f"site index out of range for {n} qubits: {keep}")
    if any(b <= a for a, b in zip(keep, keep[1:])):
        raise ValueError(f"keep must be strictly increasing without duplicates: {keep}")

    traced = [i for i in range(n) if i not in keep]
    t = rho.reshape([2] * (2 * n))
    # bra indices of traced sites are tied to their ket indices
    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    ket = list(letters[:n])
    bra = list(letters[n : 2 * n])
    for i in traced:
        bra[i] = ket[i]
    out = [ket[i] for i in keep] + [bra[i] for i in keep]
    red = np.einsum("".join(ket + bra) + "->" + "".join(out), t)
    d = 2 ** len(keep)
    return red.reshape(d, d)


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def kron_all(*factors) -> np.ndarray:
    out = np.ones(1, dtype=complex) if np.ndim(factors[0]) == 1 else np.ones((1, 1), dtype=complex)
    for f in factors:
        out = np.kron(out, f)
    return out


def ghz_state() -> np.ndarray:
    psi = np.zeros(8, dtype=complex)
    psi[0] = psi[7] = 1 / np.sqrt(2)
    return psi


def w_state() -> np.ndarray:
    psi = np.zeros(8, dtype=complex)
    psi[[1, 2, 4]] = 1 / np.sqrt(3)
    return psi


def singlet() -> np.ndarray:
    """(|01> - |10>)/sqrt(2)."""
    return np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)


def embed_pair(pair_state, single_state, pair: tuple[int, int]) -> np.ndarray:
    """Three-qubit vector with ``pair_state`` on the (0-based) sites ``pair`` and
    ``single_state`` on the remaining site."""
    psi = np.kron(pair_state, single_state)  # sites ordered (p0, p1, other)
    other = ({0, 1, 2} - set(pair)).pop()
    order = [pair[0], pair[1], other]
    # psi holds factors in `order`; move them to natural positions
    inv = [order.index(k) for k in range(3)]
    return permutation_operator(inv) @ psi


def random_pure_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unit vector."""
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_density_matrix(n_qubits: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Induced (Ginibre) random state; ``rank=None`` gives the Hilbert-Schmidt measure."""
    dim = 2**n_qubits
    rank = dim if rank is None else rank
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def sample_biseparable(partition: str, seed: int, n_terms: int = 4) -> np.ndarray:
    """Random biseparable three-qubit state.

    A Dirichlet-weighted mixture of ``n_terms`` Haar-random pure vectors, each a
    product across ``partition`` ("1|23", "2|13", "3|12"), or across a randomly
    chosen bipartition per term when ``partition == "mixture"``.
    Deterministic in ``seed``.
    """
    if partition not in PARTITIONS and partition != "mixture":
        raise ValueError(f"unknown partition {partition!r}")
    if n_terms < 1:
        raise ValueError("n_terms must be positive")
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.ones(n_terms)) if n_terms > 1 else np.ones(1)
    rho = np.zeros((8, 8), dtype=complex)
    for w in weights:
        part = PARTITIONS[rng.integers(3)] if partition == "mixture" else partition
        single = int(part[0]) - 1
        pair = tuple(s for s in range(3) if s != single)
        psi = embed_pair(random_pure_state(4, rng), random_pure_state(2, rng), pair)
        rho += w * projector(psi)
    return rho
