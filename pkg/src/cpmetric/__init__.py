"""Bures distance and representation metric on matrix algebras.

Closed-form and fully constructive computation of the Bures distance beta
and the representation metric gamma for states and unital completely
positive maps, linked by gamma = beta sqrt(4 - beta^2), together with the
representation-theoretic machinery (GNS, Stinespring, common and joint
representations, commutant distances, constrained unitary dilations) and a
deterministic verification-suite runner.
"""

from .channels import QuantumChannel
from .dilations import (
    CommonRepresentation,
    DilationResult,
    IntertwinerResult,
    JointRepresentationTuple,
    Representation,
    ad_unitary,
    choi_li_dilation,
    common_representation,
    gns_state,
    halmos_dilation,
    intertwining_unitary,
    joint_rep_direct_sum,
    rescale_isometry_pair,
    stinespring,
)
from .errors import (
    CertificationError,
    CpmetricError,
    DilationSearchError,
    DimensionMismatch,
    InvariantViolation,
    MalformedInputError,
)
from .geometry import (
    DistanceResult,
    NumericalRangeSummary,
    StarAlgebraPresentation,
    SubspaceBasis,
    commutant,
    dist_to_scalars,
    dist_to_subspace,
    full_matrix_algebra,
    numerical_range,
    smallest_enclosing_circle,
)
from .linalg import (
    SpectralDecomposition,
    herm_eig,
    operator_norm,
    polar,
    psd_sqrt,
    svd,
    trace_norm,
)
from .metrics import (
    ExampleReport,
    MetricReport,
    beta_from_gamma,
    bures_channels,
    cb_distance_lower_bound,
    channel_marginal_state,
    check_ampliation,
    check_composition,
    example_one,
    example_two,
    gamma_channels,
    gamma_from_beta,
    gamma_states,
    gamma_states_constructive,
)
from .states import (
    DensityState,
    StateDistanceReport,
    bures_states,
    functional_cb_distance,
    sqrt_fidelity,
    state_distance_report,
)
from .suites import SuiteResult, run_suite, suite_names
from .tolerances import ToleranceProfile, active_profile, set_profile

__version__ = "0.1.0"
