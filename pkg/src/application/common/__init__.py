"""
Application Common - 공통 유틸리티 및 Base 클래스
"""

from src.application.common.decorators import log_execution, operation
from src.application.common.dto import ArrayDTO, BaseDTO
from src.application.common.exceptions import (
    ApplicationError,
    BudgetExceededError,
    ConeViolationError,
    ConfigurationError,
    ConstantDataViolatedError,
    DensityVanishesError,
    DuplicateOrbitError,
    EndpointMismatchError,
    InversionFailureError,
    NewtonDivergedError,
    NoConvergenceError,
    NotExpandingError,
    NotHyperbolicError,
    NotSimpleSpectrumError,
    NumericalError,
    ResolutionExhaustedError,
    RootBracketFailureError,
    SignatureMismatchError,
    ValidationError,
)
from src.application.common.formatters import (
    SKIPPED,
    format_flag,
    format_float,
    render_key_values,
    write_columns,
    write_csv,
    write_text,
)
from src.application.common.parallel import ParallelExecutor, tree_mean, tree_sum

__all__ = [
    # Decorators
    "operation",
    "log_execution",
    # DTOs
    "BaseDTO",
    "ArrayDTO",
    # Formatters
    "SKIPPED",
    "format_float",
    "format_flag",
    "render_key_values",
    "write_csv",
    "write_columns",
    "write_text",
    # Parallel
    "ParallelExecutor",
    "tree_sum",
    "tree_mean",
    # Exceptions
    "ApplicationError",
    "ValidationError",
    "ConfigurationError",
    "NumericalError",
    "NotExpandingError",
    "BudgetExceededError",
    "RootBracketFailureError",
    "ConstantDataViolatedError",
    "NoConvergenceError",
    "DensityVanishesError",
    "EndpointMismatchError",
    "NotHyperbolicError",
    "NotSimpleSpectrumError",
    "ConeViolationError",
    "NewtonDivergedError",
    "DuplicateOrbitError",
    "SignatureMismatchError",
    "ResolutionExhaustedError",
    "InversionFailureError",
]
