"""Graded invariants of projective hypersurfaces with nodes, computed exactly over prime fields."""

from .field import PrimeField, make_prime_field, root_of_unity, sample_verification_primes
from .invariants import (SMOOTH, HypersurfaceJob, coincidence_threshold, grf_complement_dim,
                         minimal_syzygy_degree, sernesi_deformation_dim, theorem_bounds,
                         verify_vanishing_and_sharpness)
from .koszul import cohomology_dim, milnor_dim, smooth_milnor_dim, socle_degree
from .linalg import PrimePolicy, SparseMatrix, consensus_rank, rank
from .nodal import (NodeSet, chebyshev_hypersurface, chebyshev_node_set, defect,
                    symbolic_power_dim, tjurina_number, verify_node)
from .poly import Poly, parse_poly

__version__ = "0.1.0"

__all__ = [
    "PrimeField", "make_prime_field", "root_of_unity", "sample_verification_primes",
    "SMOOTH", "HypersurfaceJob", "coincidence_threshold", "grf_complement_dim",
    "minimal_syzygy_degree", "sernesi_deformation_dim", "theorem_bounds",
    "verify_vanishing_and_sharpness", "cohomology_dim", "milnor_dim", "smooth_milnor_dim",
    "socle_degree", "PrimePolicy", "SparseMatrix", "consensus_rank", "rank", "NodeSet",
    "chebyshev_hypersurface", "chebyshev_node_set", "defect", "symbolic_power_dim",
    "tjurina_number", "verify_node", "Poly", "parse_poly",
]
