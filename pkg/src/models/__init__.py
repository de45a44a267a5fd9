from .defect import DefectData, RotationBlock, ContractionClass, RotationKind
from .sequence import SchurProblemData, ChoiceSequence, ProblemClassification
from .cmv import BlockIndex, CmvAssembly, FiniteCmv
from .solution import CoefficientBlocks, SolutionReport, InvariantResult
from .documents import ProblemDocument, ParameterDocument, ParameterKind

__all__ = [
    'DefectData',
    'RotationBlock',
    'ContractionClass',
    'RotationKind',
    'SchurProblemData',
    'ChoiceSequence',
    'ProblemClassification',
    'BlockIndex',
    'CmvAssembly',
    'FiniteCmv',
    'CoefficientBlocks',
    'SolutionReport',
    'InvariantResult',
    'ProblemDocument',
    'ParameterDocument',
    'ParameterKind'
]
