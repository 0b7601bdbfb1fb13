"""Open XXZ chain in a fixed-magnetization sector.

``H = sum_{i<N-1} J (X_i X_{i+1} + Y_i Y_{i+1}) + lambda Z_i Z_{i+1}`` with Pauli
matrices. Basis words are N-bit integers whose bit ``N-1-i`` is the state of site
``i`` (1 = up), so a word equals its index in the full tensor-product basis.

Amplitudes are stored as real vectors: the sector Hamiltonian is real symmetric.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Sequence

import numpy as np

from gmewit.lanczos import LanczosResult, lanczos_lowest

log = logging.getLogger(__name__)

MAX_SITES = 24
DENSE_LIMIT = 2000
GAP_FLAG_THRESHOLD = 1e-6


@dataclass(frozen=True)
class XxzParams:
    N: int
    lam: float
    J: float = 1.0

    def __post_init__(self):
        if not 2 <= self.N <= MAX_SITES:
            raise ValueError(f"N must lie in [2, {MAX_SITES}], got {self.N}")
        if not np.isfinite(self.lam) or not np.isfinite(self.J):
            raise ValueError("lambda and J must be finite")


class SectorBasis:
    """All N-bit words with ``n_up`` set bits, in increasing order."""

    def __init__(self, N: int, n_up: int):
        if not 0 <= n_up <= N:
            raise ValueError(f"n_up must lie in [0, {N}], got {n_up}")
        self.N = N
        self.n_up = n_up
        words = [sum(1 << (N - 1 - i) for i in ones) for ones in itertools.combinations(range(N), n_up)]
        self.states = np.array(sorted(words), dtype=np.int64)
        self.states.setflags(write=False)

    def __len__(self) -> int:
        return len(self.states)

    def lookup(self, words) -> np.ndarray:
        """Indices of ``words``; every word must belong to the sector."""
        words = np.asarray(words, dtype=np.int64)
        idx = np.searchsorted(self.states, words)
        idx_c = np.minimum(idx, len(self.states) - 1)
        if np.any(self.states[idx_c] != words):
            raise KeyError("word outside the sector")
        return idx

    def site_bits(self, site: int) -> np.ndarray:
        return (self.states >> (self.N - 1 - site)) & 1

    @cached_property
    def _bonds(self) -> tuple[np.ndarray, list[tuple[np.ndarray, np.ndarray]]]:
        zz = np.zeros(len(self), dtype=float)
        flips = []
        for i in range(self.N - 1):
            differ = self.site_bits(i) != self.site_bits(i + 1)
            zz += np.where(differ, -1.0, 1.0)
            src = np.flatnonzero(differ)
            mask = (1 << (self.N - 1 - i)) | (1 << (self.N - 2 - i))
            flips.append((src, self.lookup(self.states[src] ^ mask)))
        return zz, flips

    def zz_diagonal(self) -> np.ndarray:
        """``sum_i Z_i Z_{i+1}`` on each basis word."""
        return self._bonds[0]

    def flip_pairs(self) -> list[tuple[np.ndarray, np.ndarray]]:
        """Per bond, the (source, target) indices connected by a flip-flop."""
        return self._bonds[1]


def build_basis(N: int, n_up: int) -> SectorBasis:
    return SectorBasis(N, n_up)


def apply_hamiltonian(params: XxzParams, basis: SectorBasis, v: np.ndarray) -> np.ndarray:
    """``H v`` without forming ``H``. ``v`` may carry extra trailing columns."""
    if basis.N != params.N:
        raise ValueError("basis and parameters disagree on N")
    v = np.asarray(v)
    if v.shape[0] != len(basis):
        raise ValueError(f"vector length {v.shape[0]} != sector dimension {len(basis)}")
    diag = params.lam * basis.zz_diagonal()
    out = diag.reshape((-1,) + (1,) * (v.ndim - 1)) * v
    # X X + Y Y = 2 (|01><10| + |10><01|)
    for src, tgt in basis.flip_pairs():
        out[tgt] += 2 * params.J * v[src]
    return out


def sector_matrix(params: XxzParams, basis: SectorBasis) -> np.ndarray:
    """Dense sector Hamiltonian, for small sectors and tests."""
    return apply_hamiltonian(params, basis, np.eye(len(basis)))


@dataclass
class SectorState:
    basis: SectorBasis
    amplitudes: np.ndarray
    energy: float
    residual: float = 0.0
    second_energy: float | None = None
    solver: str = "dense"
    info: dict = field(default_factory=dict)

    @property
    def gap(self) -> float | None:
        return None if self.second_energy is None else self.second_energy - self.energy

    @property
    def degenerate(self) -> bool:
        return self.gap is not None and self.gap < GAP_FLAG_THRESHOLD

    def full_vector(self) -> np.ndarray:
        """Embedding into the ``2**N`` tensor-product space."""
        psi = np.zeros(2**self.basis.N, dtype=complex)
        psi[self.basis.states] = self.amplitudes
        return psi


def _fix_sign(psi: np.ndarray) -> np.ndarray:
    # largest-magnitude amplitude positive, so repeated solves agree bitwise
    return -psi if psi[np.argmax(np.abs(psi))] < 0 else psi


def ground_state(
    params: XxzParams,
    n_up: int | None = None,
    *,
    method: str = "auto",
    seed: int = 0,
    tol: float = 1e-8,
    max_matvecs: int = 2000,
    krylov_dim: int = 120,
    second: bool = True,
) -> SectorState:
    """Lowest eigenpair in the sector with ``n_up`` up spins (default ``N // 2``).

    ``method="auto"`` uses dense diagonalization up to ``DENSE_LIMIT`` states and
    Lanczos above. With ``second=True`` the next eigenvalue is also computed (by
    deflation for Lanczos) to flag near-degenerate ground spaces.
    """
    n_up = params.N // 2 if n_up is None else n_up
    basis = build_basis(params.N, n_up)
    dim = len(basis)
    if method == "auto":
        method = "dense" if dim <= DENSE_LIMIT else "lanczos"

    if method == "dense":
        w, v = np.linalg.eigh(sector_matrix(params, basis))
        psi = _fix_sign(v[:, 0])
        resid = float(np.linalg.norm(apply_hamiltonian(params, basis, psi) - w[0] * psi))
        e1 = float(w[1]) if second and dim > 1 else None
        return SectorState(basis, psi, float(w[0]), resid, e1, "dense")
    if method != "lanczos":
        raise ValueError(f"unknown method {method!r}")

    def matvec(x):
        return apply_hamiltonian(params, basis, x)

    kw = dict(seed=seed, tol=tol, max_matvecs=max_matvecs, krylov_dim=krylov_dim)
    res: LanczosResult = lanczos_lowest(matvec, dim, **kw)
    e0, psi, resid, e1 = res.eigenvalue, res.vector, res.residual, None
    info = {"matvecs": res.matvecs, "restarts": res.restarts}
    if second and dim > 1:
        res1 = lanczos_lowest(matvec, dim, deflate=[res.vector], **kw)
        info["matvecs_second"] = res1.matvecs
        # A single Krylov sequence cannot split a cluster narrower than its resolution
        # and returns a mixture. Rayleigh-Ritz on both vectors separates the pair.
        q = np.column_stack([res.vector, res1.vector])
        hq = apply_hamiltonian(params, basis, q)
        theta, s = np.linalg.eigh(q.T @ hq)
        psi = q @ s[:, 0]
        psi /= np.linalg.norm(psi)
        e0, e1 = float(theta[0]), float(theta[1])
        resid = float(np.linalg.norm(hq @ s[:, 0] - e0 * psi))
    psi = _fix_sign(psi)
    log.debug("N=%d lambda=%g E0=%.12g residual=%.2g", params.N, params.lam, e0, resid)
    return SectorState(basis, psi, e0, resid, e1, "lanczos", info)


def reduced_density(state: SectorState, sites: Sequence[int]) -> np.ndarray:
    """Reduced density matrix of ``sites`` (strictly increasing, 0-based).

    Basis words are grouped by their bits outside ``sites``; each group forms one
    column of ``M`` and ``rho = M M^dagger``.
    """
    basis = state.basis
    sites = list(sites)
    if not sites or any(s < 0 or s >= basis.N for s in sites):
        raise ValueError(f"sites out of range for N={basis.N}: {sites}")
    if any(b <= a for a, b in zip(sites, sites[1:])):
        raise ValueError(f"sites must be strictly increasing: {sites}")

    kept = np.zeros(len(basis), dtype=np.int64)
    for s in sites:
        kept = 2 * kept + basis.site_bits(s)
    mask = sum(1 << (basis.N - 1 - s) for s in sites)
    _, env = np.unique(basis.states & ~mask, return_inverse=True)
    m = np.zeros((2 ** len(sites), env.max() + 1), dtype=complex)
    m[kept, env] = state.amplitudes
    rho = m @ m.conj().T
    return (rho + rho.conj().T) / 2


def sector_dimension(N: int, n_up: int) -> int:
    return comb(N, n_up)
