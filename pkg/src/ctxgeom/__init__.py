"""Contextuality quantities from joint-eigenspace projector geometry."""

from .linalg import HermitianOperator, StateVector
from .projectors import LabeledProjector, ProjectorFamily, coarse_grain, joint_eigenprojectors
from .overlap import (
    ContextInvariants,
    OverlapMatrix,
    commutator_identity_residual,
    context_invariants,
    overlap_matrix,
    principal_angles,
)
from .scenarios import (
    BELL_OPTIMAL_ANGLES,
    ENTROPIC_OPTIMAL_ANGLES,
    ChshConfig,
    Context,
    Scenario,
    build_chsh,
    build_ncycle,
    ms0_eigenstate,
    spin1_operators,
)
from .states import DensityMatrix, kcbs_mixing_state, named_state, sweep_state
from .witnesses import (
    chaves_fritz,
    commutator_witness_D,
    contextual_fraction,
    cycle_correlator,
    joint_distribution,
    mu_bound,
    p_star,
)
from .analysis import (
    ExactnessReport,
    MonotonicityReport,
    ncycle_scan,
    richardson_extrapolate,
    s2_total,
    verify_coarse_graining,
    verify_exactness,
)

__version__ = "0.1.0"
