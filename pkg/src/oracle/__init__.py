"""Exact-diagonalization oracle for small periodic chains."""

from .eigen import ground_state
from .hamiltonian import bond_couplings, build_hamiltonian
from .observables import correlator, magnetization_site, reduced_density_matrix
from .types import MAX_ORACLE_SIZE, DenseGroundState, OracleError, OracleErrorKind

__all__ = [
    "DenseGroundState",
    "MAX_ORACLE_SIZE",
    "OracleError",
    "OracleErrorKind",
    "bond_couplings",
    "build_hamiltonian",
    "correlator",
    "ground_state",
    "magnetization_site",
    "reduced_density_matrix",
]
