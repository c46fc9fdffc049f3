"""qcf: exact quantum cluster algebras over commutative coefficient rings,
plus a desk-scale quantum-group representation oracle."""

from .rings import (
    ExactDivisionError,
    FRAC,
    LaurentZ,
    ModRing,
    Specialization,
    SpecializationUndefined,
    ZV,
    ZV_LOC,
    Z_HALF,
    ZZ,
    qbinom,
    qfactorial,
    qint,
)
from .seeds import AssumptionError, Incompatible, Seed, classical_seed, principal_quantum_seed
from .torus import (
    LaurentViolation,
    NoDegree,
    QuantumTorus,
    TwistedLaurent,
    degree_of,
    divide_left_exact,
    dominance_leq,
    exact_divide_monomial,
    vanishing_order,
)
from .cluster import (
    ClusterState,
    NotPointed,
    a1_basis_check,
    compatibly_pointed_check,
    expand_in_frame,
    explore_exchange_graph,
    extract_gf,
    injective_reachable_witness,
    optimized_check,
    tropical_transform,
    tropical_transform_path,
    upper_membership_bounded,
)
from .lie import RootData

__all__ = [name for name in dir() if not name.startswith("_")]
