"""Invariant coordinates, twirling, biseparable lobes and the tangent-plane witness family.

A three-qubit state is located in the invariant cone by ``r_k = tr(rho R_k)``.
Its twirl is ``(1/4) sum_k r_k R_k``; all tests here act on those five numbers.

Angular conventions in the ``(r1, r2)`` plane: the lobe of states separable across
``1|23`` sits at 180 degrees, ``2|13`` at +60 and ``3|12`` at -60. The witness with
orientation 0 touches the hull of the 2|13 and 3|12 lobes at angle 0; orientations
+1 and -1 are its images under rotation by +120 and -120 degrees.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from gmewit.qubit_algebra import build_r_basis, validate_density

COORD_TOL = 1e-10
DETECTION_THRESHOLD = -1e-10

R0_MIN = 2.0 / 3.0
R0_GRID = np.linspace(R0_MIN + 1e-4, 1.0 - 1e-4, 256)
ORIENTATIONS = (0, 1, -1)
REFINE_XATOL = 1e-8

LOBE_ANGLES = {1: np.pi, 2: np.pi / 3, 3: -np.pi / 3}


@dataclass(frozen=True)
class InvariantCoords:
    r_plus: float
    r_zero: float
    r_one: float
    r_two: float
    r_three: float = 0.0

    @classmethod
    def from_array(cls, a) -> "InvariantCoords":
        return cls(*(float(x) for x in a))

    def as_array(self) -> np.ndarray:
        return np.array([self.r_plus, self.r_zero, self.r_one, self.r_two, self.r_three])

    def is_physical(self, tol: float = COORD_TOL) -> bool:
        return (
            self.r_plus >= -tol
            and self.r_zero >= -tol
            and abs(self.r_plus + self.r_zero - 1) <= tol
            and self.r_one**2 + self.r_two**2 + self.r_three**2 <= self.r_zero**2 + tol
        )

    def rotated(self, angle: float) -> "InvariantCoords":
        """Rotate ``(r1, r2)`` by ``angle`` about the ``r0`` axis."""
        c, s = np.cos(angle), np.sin(angle)
        return InvariantCoords(
            self.r_plus,
            self.r_zero,
            c * self.r_one - s * self.r_two,
            s * self.r_one + c * self.r_two,
            self.r_three,
        )


def coords_of(rho) -> InvariantCoords:
    rho = validate_density(rho, 3)
    r = np.einsum("kij,ji->k", build_r_basis().stack(), rho).real
    return InvariantCoords.from_array(r)


def invariant_state(c: InvariantCoords) -> np.ndarray:
    """The rotationally invariant density matrix with coordinates ``c``."""
    if not c.is_physical():
        raise ValueError(f"coordinates outside the invariant cone: {c}")
    return np.einsum("k,kij->ij", c.as_array(), build_r_basis().stack()) / 4


def twirl(rho) -> np.ndarray:
    """Exact projection onto the U x U x U invariant subspace."""
    return invariant_state(coords_of(rho))


def separable_mask(rp, r1, r2, r3, tol: float = COORD_TOL):
    """Array form of :func:`is_separable_invariant`."""
    lhs = 3 * r3**2 + (1 - 3 * rp) ** 2
    rhs = (r1 + rp) * ((r1 - 2 * rp) ** 2 - 3 * r2**2)
    return (rp >= 0.25 - tol) & (rp <= 1 + tol) & (lhs <= rhs + tol)


def lobe_mask(rp, r0, r1, r2, r3, lobe: int, tol: float = COORD_TOL):
    """Array form of :func:`is_biseparable_lobe`."""
    if lobe not in LOBE_ANGLES:
        raise ValueError(f"lobe must be 1, 2 or 3, got {lobe!r}")
    ang = LOBE_ANGLES[1] - LOBE_ANGLES[lobe]
    c, s = np.cos(ang), np.sin(ang)
    r1, r2 = c * r1 - s * r2, s * r1 + c * r2
    # m = <11|s|11> - <00|s|00> for the pair state s of a 1|23 product with qubit 1 in |0>;
    # the remaining freedom is one diagonal weight, optimized out in closed form.
    m = np.abs(1 + r1 - 2 * rp)
    return (m <= 1 + tol) & (3 * (r2**2 + r3**2) <= (r0 - r1) * (3 * rp - m) + tol)


def is_separable_invariant(c: InvariantCoords, tol: float = COORD_TOL) -> bool:
    return bool(separable_mask(c.r_plus, c.r_one, c.r_two, c.r_three, tol))


def is_biseparable_lobe(c: InvariantCoords, lobe: int, tol: float = COORD_TOL) -> bool:
    """Membership of invariant coordinates in the lobe of states separable across
    ``1|23`` (lobe 1), ``2|13`` (lobe 2) or ``3|12`` (lobe 3)."""
    return bool(lobe_mask(*c.as_array(), lobe, tol))


@dataclass(frozen=True)
class WitnessSpec:
    r0_param: float
    orientation: int = 0

    def __post_init__(self):
        if not (R0_MIN < self.r0_param < 1):
            raise ValueError(f"r0_param must lie in (2/3, 1), got {self.r0_param!r}")
        if self.orientation not in ORIENTATIONS:
            raise ValueError(f"orientation must be 0, +1 or -1, got {self.orientation!r}")

    @property
    def angle(self) -> float:
        return self.orientation * 2 * np.pi / 3

    @property
    def direction(self) -> np.ndarray:
        """Unit vector in the ``(r1, r2)`` plane pointing at the detected region."""
        return np.array([np.cos(self.angle), np.sin(self.angle)])


def witness_coefficients(r0):
    """``(A, B)`` with ``W = A R0 - R1 - B 1`` for orientation 0. Vectorized in ``r0``."""
    r0 = np.asarray(r0, dtype=float)
    root = np.sqrt(-1 + 4 * r0 - 3 * r0**2)
    a = 1 + np.sqrt(3) / 2 * (2 - 3 * r0) / root
    b = np.sqrt(3) * (1 - 2 * r0) / (2 * root) + 0.5
    return a, b


def tangent_point(w: WitnessSpec) -> np.ndarray:
    """Point ``(r0, r1, r2)`` where the witness plane touches the biseparable hull."""
    t = w.r0_param
    radius = (-1 + 2 * t + np.sqrt(3) * np.sqrt(-1 + 4 * t - 3 * t**2)) / 2
    return np.array([t, *(radius * w.direction)])


def witness_normal(w: WitnessSpec, normalized: bool = False) -> np.ndarray:
    """Normal of the witness plane in ``(r0, r1, r2)``.

    Unnormalized, it is the exact coefficient vector of the witness:
    ``tr(W rho) = n . (r - P)``.
    """
    a, _ = witness_coefficients(w.r0_param)
    n = np.array([float(a), *(-w.direction)])
    return n / np.linalg.norm(n) if normalized else n


def witness_matrix(w: WitnessSpec) -> np.ndarray:
    rb = build_r_basis()
    a, b = witness_coefficients(w.r0_param)
    d1, d2 = w.direction
    return a * rb.r_zero - (d1 * rb.r_one + d2 * rb.r_two) - b * np.eye(8)


def witness_value(rho, w: WitnessSpec) -> float:
    rho = validate_density(rho, 3)
    return float(np.trace(witness_matrix(w) @ rho).real)


def witness_value_from_coords(c: InvariantCoords, r0_param, orientation: int = 0):
    """``tr(W rho)`` from coordinates; vectorized in ``r0_param``."""
    a, b = witness_coefficients(r0_param)
    ang = orientation * 2 * np.pi / 3
    return a * c.r_zero - (np.cos(ang) * c.r_one + np.sin(ang) * c.r_two) - b


class Label(enum.Enum):
    SEPARABLE = "Separable"
    BISEPARABLE_LOBE = "BiseparableLobe"
    INDETERMINATE_HULL = "IndeterminateHull"
    GENUINE_TRIPARTITE = "GenuineTripartite"


@dataclass(frozen=True)
class Classification:
    label: Label
    witness_value: float
    witness_argmin: WitnessSpec
    coords: InvariantCoords
    lobe: int | None = None

    def __str__(self) -> str:
        if self.label is Label.BISEPARABLE_LOBE:
            return f"{self.label.value}({self.lobe})"
        return self.label.value


def minimize_witness(c: InvariantCoords) -> tuple[float, WitnessSpec]:
    """Smallest witness expectation over the family, with its argmin.

    Grid search over ``R0_GRID`` x orientations (ties go to smaller ``r0``, then
    orientation order 0, +1, -1) followed by bounded refinement of the best cell.
    """
    values = np.stack(
        [witness_value_from_coords(c, R0_GRID, o) for o in ORIENTATIONS], axis=1
    )
    i, j = np.unravel_index(np.argmin(values), values.shape)
    best, t_best, orient = float(values[i, j]), float(R0_GRID[i]), ORIENTATIONS[j]

    lo, hi = R0_GRID[max(i - 1, 0)], R0_GRID[min(i + 1, len(R0_GRID) - 1)]
    res = minimize_scalar(
        lambda t: float(witness_value_from_coords(c, t, orient)),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": REFINE_XATOL},
    )
    if res.fun < best:
        best, t_best = float(res.fun), float(res.x)
    return best, WitnessSpec(t_best, orient)


def classify_coords(c: InvariantCoords) -> Classification:
    value, arg = minimize_witness(c)
    if value < DETECTION_THRESHOLD:
        return Classification(Label.GENUINE_TRIPARTITE, value, arg, c)
    if is_separable_invariant(c):
        return Classification(Label.SEPARABLE, value, arg, c)
    for lobe in (1, 2, 3):
        if is_biseparable_lobe(c, lobe):
            return Classification(Label.BISEPARABLE_LOBE, value, arg, c, lobe)
    return Classification(Label.INDETERMINATE_HULL, value, arg, c)


def witness_minimize(rho) -> Classification:
    """Classify a three-qubit state through its twirl.

    ``GenuineTripartite`` certifies the input itself. The other labels describe the
    twirled state; for a non-invariant input they are not separability statements
    about ``rho``.
    """
    return classify_coords(coords_of(rho))
