"""Exact numerical invariants of Fourier-Mukai transforms of coherent systems
on an elliptic curve."""

from .bgn import BGNType, bgn_feasible, delta_alpha, esta_bgn_test, ext_dimension, transform_bgn
from .bundles import CohomologyDims, SemistableBundleType, cohomology_dims, jh_type, transform_bundle
from .chern import (
    ChernCharacter,
    DomainError,
    FMMatrix,
    WitIndex,
    WitResult,
    apply_matrix,
    compose,
    phi_a,
    psi_a,
    slope,
    slope_transform,
    wit_index,
    wit_index_adjoint,
)
from .moduli import birational_class, class_census, iso_certificate, residue_class
from .systems import (
    SubsystemCandidate,
    SystemType,
    WallSet,
    alpha_slope,
    brill_noether,
    g0_constraints,
    ln_nonempty,
    moduli_dimension,
    transform_system,
    wall_candidates,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
