"""Genuine tripartite entanglement witnesses for SU(2)-invariant three-qubit states,
and an exact-diagonalization driver for the open XXZ chain."""

from gmewit.qubit_algebra import (
    InvalidStateError,
    RBasis,
    build_r_basis,
    partial_trace,
    sample_biseparable,
    swap_operator,
    validate_density,
)
from gmewit.geometry import (
    Classification,
    InvariantCoords,
    Label,
    WitnessSpec,
    coords_of,
    invariant_state,
    is_biseparable_lobe,
    is_separable_invariant,
    twirl,
    witness_matrix,
    witness_minimize,
    witness_value,
)
from gmewit.measures import (
    dicke_concurrence,
    dicke_pair_rdm,
    dicke_state,
    wootters_concurrence,
)
from gmewit.xxz import (
    SectorBasis,
    SectorState,
    XxzParams,
    apply_hamiltonian,
    build_basis,
    ground_state,
    reduced_density,
)

__all__ = [
    "Classification",
    "InvalidStateError",
    "InvariantCoords",
    "Label",
    "RBasis",
    "SectorBasis",
    "SectorState",
    "WitnessSpec",
    "XxzParams",
    "apply_hamiltonian",
    "build_basis",
    "build_r_basis",
    "coords_of",
    "dicke_concurrence",
    "dicke_pair_rdm",
    "dicke_state",
    "ground_state",
    "invariant_state",
    "is_biseparable_lobe",
    "is_separable_invariant",
    "partial_trace",
    "reduced_density",
    "sample_biseparable",
    "swap_operator",
    "twirl",
    "validate_density",
    "witness_matrix",
    "witness_minimize",
    "witness_value",
    "wootters_concurrence",
]
