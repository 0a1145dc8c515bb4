"""Low-weight fermion-to-qubit mappings and Bell-basis RDM estimation."""

from .baselines import (
    FenwickTree,
    WeightStats,
    bravyi_kitaev,
    bravyi_kitaev_max_weight_bound,
    jordan_wigner,
    weight_stats,
)
from .fermion import (
    FermionEstimate,
    MajoranaMonomial,
    attenuation_bound,
    encode_fock_state,
    encode_monomial,
    encoded_vacuum,
    estimate_monomial,
    exact_fermionic_rdm,
    hermitization_phase,
    number_operator_strings,
    sampled_fermionic_rdm,
)
from .pauli import PauliString, anticommutes, multiply, to_dense
from .qudit import (
    FiducialState,
    HwEstimate,
    calibration_factor,
    estimate_hw_correlator,
    exact_hw_correlator,
    fiducial_overlaps,
    hw_sic_elements,
    load_fiducial,
    qubit_fiducial,
    qutrit_fiducial,
    save_fiducial,
    validate_fiducial,
)
from .statesim import (
    BellShotStream,
    CapacityError,
    DenseState,
    ShotRecord,
    apply_pauli,
    attach_ancillas,
    bell_basis_matrix,
    bell_measure_all_pairs,
    bell_outcome_distribution,
    expectation,
    generalized_bell_state,
    hw_operator,
    prepare_xi,
    random_state,
    sample_bell_shots,
    xi_density,
)
from .ternary import (
    MappingVerification,
    TernaryTreeMapping,
    build_mapping,
    load_mapping,
    majorana_operator,
    max_weight_bound,
    node_index,
    path_operator,
    save_mapping,
    verify_mapping,
    verify_table,
    weight_lower_bound,
)
from .tomography import (
    BELL_EIGENVALUES,
    RdmEstimate,
    estimate_all_k_rdms,
    estimate_rdm_element,
    merge_streams,
    reconstruct_qubit_state,
    sic_povm_elements,
)

__version__ = "0.1.0"

__all__ = [
    "BELL_EIGENVALUES",
    "BellShotStream",
    "CapacityError",
    "DenseState",
    "FenwickTree",
    "FermionEstimate",
    "FiducialState",
    "HwEstimate",
    "MajoranaMonomial",
    "MappingVerification",
    "PauliString",
    "RdmEstimate",
    "ShotRecord",
    "TernaryTreeMapping",
    "WeightStats",
    "anticommutes",
    "apply_pauli",
    "attach_ancillas",
    "attenuation_bound",
    "bell_basis_matrix",
    "bell_measure_all_pairs",
    "bell_outcome_distribution",
    "bravyi_kitaev",
    "bravyi_kitaev_max_weight_bound",
    "build_mapping",
    "calibration_factor",
    "encode_fock_state",
    "encode_monomial",
    "encoded_vacuum",
    "estimate_all_k_rdms",
    "estimate_hw_correlator",
    "estimate_monomial",
    "estimate_rdm_element",
    "exact_fermionic_rdm",
    "exact_hw_correlator",
    "expectation",
    "fiducial_overlaps",
    "generalized_bell_state",
    "hermitization_phase",
    "hw_operator",
    "hw_sic_elements",
    "jordan_wigner",
    "load_fiducial",
    "load_mapping",
    "majorana_operator",
    "max_weight_bound",
    "merge_streams",
    "multiply",
    "node_index",
    "number_operator_strings",
    "path_operator",
    "prepare_xi",
    "qubit_fiducial",
    "qutrit_fiducial",
    "random_state",
    "reconstruct_qubit_state",
    "sample_bell_shots",
    "sampled_fermionic_rdm",
    "save_fiducial",
    "save_mapping",
    "sic_povm_elements",
    "to_dense",
    "verify_mapping",
    "verify_table",
    "weight_lower_bound",
    "weight_stats",
    "xi_density",
]
