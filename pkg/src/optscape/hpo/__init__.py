from .external import (
    BrokenEvaluatorError,
    EvaluatorRequestError,
    ExternalEvaluator,
    ExternalProblem,
    ProtocolError,
)
from .losses import InvalidProbabilitiesError, logloss, validate_probabilities
from .space import ParamSpec, SearchSpace, boosting_space
from .toy import (
    DATASETS,
    TOY_DIMS,
    Dataset,
    ToyHpoProblem,
    fold_assignment,
    load_dataset,
    toy_problem_grid,
    toy_space,
    train_logistic,
)

__all__ = [
    "BrokenEvaluatorError",
    "EvaluatorRequestError",
    "ExternalEvaluator",
    "ExternalProblem",
    "ProtocolError",
    "InvalidProbabilitiesError",
    "logloss",
    "validate_probabilities",
    "ParamSpec",
    "SearchSpace",
    "boosting_space",
    "DATASETS",
    "TOY_DIMS",
    "Dataset",
    "ToyHpoProblem",
    "fold_assignment",
    "load_dataset",
    "toy_problem_grid",
    "toy_space",
    "train_logistic",
]
