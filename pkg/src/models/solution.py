from dataclasses import dataclass
from typing import Optional

import numpy as np


@dataclass(frozen=True, eq=False)
class CoefficientBlocks:
    """Valor Q(z) = [[Θ⁽⁰⁾, C], [B, A]] da função coeficiente"""
    theta0: np.ndarray
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    z: complex

    def as_matrix(self) -> np.ndarray:
        return np.block([[self.theta0, self.c], [self.b, self.a]])


@dataclass(frozen=True, eq=False)
class SolutionReport:
    """Valor de uma solução Θ(z) com sua certificação pontual"""
    value: np.ndarray
    parameter_used: str
    z: complex
    certified_norm: float

    def is_contractive(self, cert_tol: float) -> bool:
        return self.certified_norm <= 1.0 + cert_tol


@dataclass(frozen=True)
class InvariantResult:
    """Resultado de uma verificação de invariante"""
    name: str
    residual: float
    threshold: float
    detail: Optional[str] = None

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.threshold)
