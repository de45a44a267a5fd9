from .schur_sequence import (
    build_toeplitz, krein_short, shorted_via_params, defect_square,
    SchurAlgorithm, ProblemClassifier, SIDE_M, SIDE_N
)
from .processor import SchurProblemProcessor, PreparedProblem, compression_check
from .validators import InvariantSuite, RandomInstanceFactory

__all__ = [
    'build_toeplitz',
    'krein_short',
    'shorted_via_params',
    'defect_square',
    'SchurAlgorithm',
    'ProblemClassifier',
    'SIDE_M',
    'SIDE_N',
    'SchurProblemProcessor',
    'PreparedProblem',
    'compression_check',
    'InvariantSuite',
    'RandomInstanceFactory'
]
