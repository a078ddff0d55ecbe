"""Acyclic quantum network layouts and their n-local correlation inequalities.

Build chain, star, tree, or custom layouts of two-particle sources, evaluate
the nonlinear witness S = |I0|^(1/p) + |I1|^(1/p) for entangled two-qubit
sources under Pauli-plane measurements, maximize it over measurement angles,
and certify the classical bound S <= 1 by brute-force search over
hidden-variable models.
"""

from .correlators import (SettingAssignment, correlator_factorized,
                          correlator_statevector, distribution_correlator,
                          joint_distribution)
from .errors import (ConfigurationError, InvalidParameterError, NlocalError,
                     ResourceLimitError)
from .inequality import (VIOLATION_TOLERANCE, EvaluationResult, closed_form_S,
                         closed_form_smax, evaluate_I, evaluate_S,
                         evaluate_S_from_correlator)
from .lhv import (LHVModel, lhv_best_S, lhv_distribution, lhv_evaluate_S,
                  model_to_jsonable, validate_model)
from .optimize import (FreeOptimum, golden_section_max, optimize_alpha_equal,
                       optimize_alpha_free, sweep)
from .quantum import (PAULI_X, PAULI_Y, PAULI_Z, BlochObservable,
                      MeasurementPlan, canonical_plan, check_plan, concurrence,
                      extremal_observable, normalize_angle, pair_expectation,
                      source_state)
from .topology import (AttachmentMap, NetworkConfig, NodeId, attachments,
                       build_chain, build_star, build_tree, extremal_nodes,
                       intermediate_nodes, parse_config, serialize_config,
                       validate)

__version__ = "0.1.0"

__all__ = [
    "AttachmentMap",
    "BlochObservable",
    "ConfigurationError",
    "EvaluationResult",
    "FreeOptimum",
    "InvalidParameterError",
    "LHVModel",
    "MeasurementPlan",
    "NetworkConfig",
    "NlocalError",
    "NodeId",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "ResourceLimitError",
    "SettingAssignment",
    "VIOLATION_TOLERANCE",
    "attachments",
    "build_chain",
    "build_star",
    "build_tree",
    "canonical_plan",
    "check_plan",
    "closed_form_S",
    "closed_form_smax",
    "concurrence",
    "correlator_factorized",
    "correlator_statevector",
    "distribution_correlator",
    "evaluate_I",
    "evaluate_S",
    "evaluate_S_from_correlator",
    "extremal_nodes",
    "extremal_observable",
    "golden_section_max",
    "intermediate_nodes",
    "joint_distribution",
    "lhv_best_S",
    "lhv_distribution",
    "lhv_evaluate_S",
    "model_to_jsonable",
    "normalize_angle",
    "optimize_alpha_equal",
    "optimize_alpha_free",
    "pair_expectation",
    "parse_config",
    "serialize_config",
    "source_state",
    "sweep",
    "validate",
    "validate_model",
]
