from .suite import (
    BBOBInstance,
    SUITE_DIMS,
    VALID_FIDS,
    VALID_IIDS,
    full_suite,
    instance_seed,
    make_instance,
)
from .transforms import (
    boundary_penalty,
    lambda_scales,
    rotation_matrix,
    t_asy,
    t_osz,
)

__all__ = [
    "BBOBInstance",
    "SUITE_DIMS",
    "VALID_FIDS",
    "VALID_IIDS",
    "full_suite",
    "instance_seed",
    "make_instance",
    "boundary_penalty",
    "lambda_scales",
    "rotation_matrix",
    "t_asy",
    "t_osz",
]
