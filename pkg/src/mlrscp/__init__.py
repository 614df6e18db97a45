"""Testing single crossing with stochastic choice data."""
from .exceptions import (
    CannotStrictifyError,
    ConstructionFailedError,
    DegenerateSystemError,
    DimensionError,
    NotMLRError,
    RetryExhaustedError,
    SchemaError,
    ValidationError,
)
from .feasibility import FeasibilityOutcome, InequalitySystem, solve, verify_certificate
from .lehmann import LehmannReport, cdf, lehmann_compare, revealed_informedness_test
from .mlr import MlrReport, check_dataset_mlr, check_mlr, mlr_dominates
from .model import (
    ChoiceRule,
    Dataset,
    InformationStructure,
    Rationalization,
    UtilityMatrix,
    best_responses,
    check_single_crossing,
    expected_utility,
    posteriors_from_signals,
    simulate,
)
from .rationalizer import (
    DifferenceTable,
    argmax_states,
    build_info_and_choice,
    build_pair_system,
    crossing_sequence,
    rationalize,
    rationalize_binary,
    recover_utility,
    scp_alone_feasible,
    signed_ratio_rows,
    strictify,
)
from .verifier import VerificationReport, check_nias, necessity_suite, verify

__all__ = [
    "CannotStrictifyError",
    "ConstructionFailedError",
    "DegenerateSystemError",
    "DimensionError",
    "NotMLRError",
    "RetryExhaustedError",
    "SchemaError",
    "ValidationError",
    "FeasibilityOutcome",
    "InequalitySystem",
    "solve",
    "verify_certificate",
    "LehmannReport",
    "cdf",
    "lehmann_compare",
    "revealed_informedness_test",
    "MlrReport",
    "check_dataset_mlr",
    "check_mlr",
    "mlr_dominates",
    "ChoiceRule",
    "Dataset",
    "InformationStructure",
    "Rationalization",
    "UtilityMatrix",
    "best_responses",
    "check_single_crossing",
    "expected_utility",
    "posteriors_from_signals",
    "simulate",
    "DifferenceTable",
    "argmax_states",
    "build_info_and_choice",
    "build_pair_system",
    "crossing_sequence",
    "rationalize",
    "rationalize_binary",
    "recover_utility",
    "scp_alone_feasible",
    "signed_ratio_rows",
    "strictify",
    "VerificationReport",
    "check_nias",
    "necessity_suite",
    "verify",
]
