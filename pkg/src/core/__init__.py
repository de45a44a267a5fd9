from .linalg import (
    as_matrix, operator_norm, psd_sqrt, range_basis, column_space, canonical_basis, solve,
    corner_resolvent, transfer_function
)
from .defects import analyze_contraction, elementary_rotation
from .cmv import assemble, hat_lift, finite_cmv, CAP_ZERO, CAP_ACTUAL
from .coefficients import CoefficientFunction, resolvent_update, check_disk

__all__ = [
    'as_matrix',
    'operator_norm',
    'psd_sqrt',
    'range_basis',
    'column_space',
    'canonical_basis',
    'solve',
    'corner_resolvent',
    'transfer_function',
    'analyze_contraction',
    'elementary_rotation',
    'assemble',
    'hat_lift',
    'finite_cmv',
    'CAP_ZERO',
    'CAP_ACTUAL',
    'CoefficientFunction',
    'resolvent_update',
    'check_disk'
]
