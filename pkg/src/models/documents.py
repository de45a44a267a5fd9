from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple

import numpy as np


class ParameterKind(Enum):
    """Representações aceitas para o parâmetro livre E"""
    CONSTANT = "constant"
    CENTRAL = "central"
    TERMINATED = "terminated"


@dataclass(frozen=True, eq=False)
class ProblemDocument:
    """Arquivo de problema: coeficientes de Taylor ou parâmetros de Schur"""
    dim_m: int
    dim_n: int
    coefficients: Optional[Tuple[np.ndarray, ...]] = None
    parameters: Optional[Tuple[np.ndarray, ...]] = None
    tolerances: Dict[str, float] = field(default_factory=dict)

    @property
    def given_as_parameters(self) -> bool:
        return self.parameters is not None


@dataclass(frozen=True, eq=False)
class ParameterDocument:
    """Arquivo do parâmetro livre E"""
    kind: ParameterKind
    matrix: Optional[np.ndarray] = None
    coefficients: Optional[Tuple[np.ndarray, ...]] = None
