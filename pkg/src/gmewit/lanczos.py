"""Restarted Lanczos for the lowest eigenpair of a real symmetric operator.

Every new Krylov vector is orthogonalized twice against the whole current basis
(and against any deflation vectors), so no spurious copies of converged Ritz values
appear. When the basis reaches ``krylov_dim`` vectors the iteration restarts from
the current Ritz vector.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import eigh_tridiagonal

log = logging.getLogger(__name__)


class ConvergenceError(RuntimeError):
    pass


@dataclass
class LanczosResult:
    eigenvalue: float
    vector: np.ndarray
    residual: float
    matvecs: int
    restarts: int
    ritz_history: list[float] = field(default_factory=list)


def _orthogonalize(w: np.ndarray, basis: Sequence[np.ndarray]) -> np.ndarray:
    if not basis:
        return w
    q = np.asarray(basis)
    for _ in range(2):
        w = w - q.T @ (q @ w)
    return w


def lanczos_lowest(
    matvec: Callable[[np.ndarray], np.ndarray],
    dim: int,
    *,
    v0: np.ndarray | None = None,
    seed: int | None = 0,
    tol: float = 1e-8,
    max_matvecs: int = 2000,
    krylov_dim: int = 120,
    deflate: Sequence[np.ndarray] = (),
) -> LanczosResult:
    """Lowest eigenpair of ``matvec`` restricted to the complement of ``deflate``.

    Converged when the true residual ``||A x - theta x||`` is at most ``tol``.
    ``ritz_history`` records the lowest Ritz value after every Krylov step; within
    one restart cycle it is non-increasing.

    Raises :class:`ConvergenceError` once ``max_matvecs`` products are spent.
    """
    deflate = [np.asarray(d, dtype=float) for d in deflate]
    if v0 is None:
        v0 = np.random.default_rng(seed).standard_normal(dim)
    v = _orthogonalize(np.asarray(v0, dtype=float), deflate)
    nrm = np.linalg.norm(v)
    if nrm == 0:
        raise ValueError("start vector lies in the deflated subspace")
    v /= nrm

    history: list[float] = []
    matvecs = 0
    restarts = 0
    m_cap = min(krylov_dim, dim - len(deflate))

    while True:
        basis = [v]
        alpha: list[float] = []
        beta: list[float] = []
        while True:
            w = matvec(basis[-1])
            matvecs += 1
            alpha.append(float(basis[-1] @ w))
            w = _orthogonalize(w, deflate + basis)
            b = float(np.linalg.norm(w))
            theta, s = eigh_tridiagonal(
                np.array(alpha), np.array(beta), select="i", select_range=(0, 0)
            )
            history.append(float(theta[0]))
            # Ritz residual estimate |b * last component of the Ritz coefficients|
            estimate = abs(b * s[-1, 0])
            exhausted = b <= 1e-14 * max(1.0, abs(theta[0]))
            if estimate <= tol or exhausted or len(basis) >= m_cap or matvecs >= max_matvecs:
                break
            beta.append(b)
            basis.append(w / b)

        x = np.asarray(basis).T @ s[:, 0]
        x /= np.linalg.norm(x)
        ax = matvec(x)
        matvecs += 1
        theta0 = float(x @ ax)
        residual = float(np.linalg.norm(ax - theta0 * x))
        if residual <= tol or exhausted:
            return LanczosResult(theta0, x, residual, matvecs, restarts, history)
        if matvecs >= max_matvecs:
            raise ConvergenceError(
                f"Lanczos did not converge: residual {residual:.3g} after {matvecs} products"
            )
        restarts += 1
        log.debug("restart %d: theta=%.12g residual=%.3g", restarts, theta0, residual)
        v = _orthogonalize(x, deflate)
        v /= np.linalg.norm(v)
