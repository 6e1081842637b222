"""Bond percolation laboratory on hypercubes.

Percolation sampling, component labeling, branching-process survival
oracles, expansion and isoperimetry probes, cycle and minor certificates,
genus lower bounds, and the reproducible experiment harness. Everything is
a thin wrapper over the C++ core; seeds behave identically here, in the
CLI, and in the test suites.
"""

from cubelab._core import (
    ComponentInfo,
    ComponentLabeling,
    ConfigError,
    CutReport,
    CycleCensus,
    CycleCertificate,
    CycleExpectation,
    DecompositionParams,
    ExcessStats,
    ExpansionCertificate,
    GenusBound,
    IsoBound,
    IsoCheck,
    MiddleLayerReport,
    MinorCertificate,
    MinorValidation,
    PieceDecomposition,
    RootedTree,
    Sample,
    SeparatorReport,
    Summary,
    SurvivalResult,
    TailBound,
    binomial_survival,
    build_minor,
    census_short_cycles,
    certificates_csv,
    check_cycle,
    chernoff_factor,
    chernoff_upper,
    cut_report,
    cycle_from_json,
    cycle_to_json,
    decompose,
    default_face_threshold,
    default_minor_target,
    excess_experiment,
    expected_short_cycles,
    flatten_pieces,
    genus_lower_bound,
    genus_lower_bound_multi,
    host_four_cycles,
    host_six_cycles,
    iso_matching_bound,
    label_components,
    load_sample,
    long_cycle_search,
    middle_layer_probe,
    minor_from_json,
    minor_to_json,
    mix64,
    piece_cover,
    poisson_survival,
    result_schema_json,
    run_experiment_csv,
    run_experiment_json,
    sample,
    sample_vertex_boundary,
    separator_refutation,
    size_histogram_csv,
    spanning_tree,
    tree_from_parents,
    trial_seed,
    validate_minor,
    verify_iso_matching,
    worst_cut_exact,
    worst_cut_heuristic,
)

__all__ = [
    "ComponentInfo",
    "ComponentLabeling",
    "ConfigError",
    "CutReport",
    "CycleCensus",
    "CycleCertificate",
    "CycleExpectation",
    "DecompositionParams",
    "ExcessStats",
    "ExpansionCertificate",
    "GenusBound",
    "IsoBound",
    "IsoCheck",
    "MiddleLayerReport",
    "MinorCertificate",
    "MinorValidation",
    "PieceDecomposition",
    "RootedTree",
    "Sample",
    "SeparatorReport",
    "Summary",
    "SurvivalResult",
    "TailBound",
    "binomial_survival",
    "build_minor",
    "census_short_cycles",
    "certificates_csv",
    "check_cycle",
    "chernoff_factor",
    "chernoff_upper",
    "cut_report",
    "cycle_from_json",
    "cycle_to_json",
    "decompose",
    "default_face_threshold",
    "default_minor_target",
    "excess_experiment",
    "expected_short_cycles",
    "flatten_pieces",
    "genus_lower_bound",
    "genus_lower_bound_multi",
    "host_four_cycles",
    "host_six_cycles",
    "iso_matching_bound",
    "label_components",
    "load_sample",
    "long_cycle_search",
    "middle_layer_probe",
    "minor_from_json",
    "minor_to_json",
    "mix64",
    "piece_cover",
    "poisson_survival",
    "result_schema_json",
    "run_experiment_csv",
    "run_experiment_json",
    "sample",
    "sample_vertex_boundary",
    "separator_refutation",
    "size_histogram_csv",
    "spanning_tree",
    "tree_from_parents",
    "trial_seed",
    "validate_minor",
    "verify_iso_matching",
    "worst_cut_exact",
    "worst_cut_heuristic",
]
