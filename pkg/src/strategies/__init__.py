"""
Estratégias de avaliação pontual de funções da classe de Schur a partir
de seus parâmetros (funções de transferência de sistemas conservativos),
extração de coeficientes de Taylor por somas de contorno e certificação
da norma em grades.
"""

from abc import ABC, abstractmethod
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from src.config import ToleranceConfig, resolve_config
from src.core import (
    CoefficientFunction, check_disk, finite_cmv, operator_norm, solve, transfer_function, as_matrix
)
from src.exceptions import DegenerateTail, NotContraction, NotTerminated
from src.models import ChoiceSequence, ContractionClass


class SchurEvaluator(ABC):
    """Interface para representações avaliáveis de funções de Schur"""

    kind: str = "abstract"

    def __init__(self, config: Optional[ToleranceConfig] = None):
        self.config = resolve_config(config)

    @property
    @abstractmethod
    def shape(self) -> Tuple[int, int]:
        """(dimensão de saída, dimensão de entrada)"""
        pass

    @abstractmethod
    def _evaluate(self, z: complex) -> np.ndarray:
        pass

    def evaluate(self, z: complex) -> np.ndarray:
        """Θ(z) para |z| <= 1 − guarda"""
        return self._evaluate(check_disk(z, self.config))

    def __call__(self, z: complex) -> np.ndarray:
        return self.evaluate(z)

    def describe(self) -> str:
        return f"{self.kind}{self.shape}"

    @staticmethod
    def from_sequence(sequence: ChoiceSequence,
                      config: Optional[ToleranceConfig] = None) -> 'SchurEvaluator':
        """Avaliador terminado ou central conforme a sequência"""
        if sequence.terminated is not None:
            return TerminatedEvaluator(sequence, config=config)
        return CentralEvaluator(sequence, config=config)


class ConstantEvaluator(SchurEvaluator):
    """Função constante Θ ≡ M com ‖M‖ ≤ 1"""

    kind = "constant"

    def __init__(self, matrix, config: Optional[ToleranceConfig] = None):
        super().__init__(config)
        self.matrix = as_matrix(matrix, "parâmetro constante")
        norm = operator_norm(self.matrix)
        if norm > 1.0 + self.config.contraction_slack:
            raise NotContraction(f"parâmetro constante com norma {norm:.12g}")

    @property
    def shape(self) -> Tuple[int, int]:
        return self.matrix.shape

    def _evaluate(self, z: complex) -> np.ndarray:
        return self.matrix.copy()


class CentralEvaluator(SchurEvaluator):
    """
    Função central de parâmetros Γ₀..Γ_m, 0, 0, …: Θ⁽⁰⁾ da função
    coeficiente montada sobre a sequência completada com zeros até o
    menor índice ímpar >= max(1, m).
    """

    kind = "central"

    def __init__(self, sequence: ChoiceSequence, extra_padding: int = 0,
                 config: Optional[ToleranceConfig] = None):
        super().__init__(config)
        if sequence.terminated is not None:
            raise DegenerateTail("sequência terminada: use TerminatedEvaluator")
        self.sequence = sequence
        last = max(1, sequence.last_index)
        if last % 2 == 0:
            last += 1
        last += 2 * extra_padding
        self.coefficients = CoefficientFunction(sequence.padded(last), self.config)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.sequence.dim_n, self.sequence.dim_m

    def _evaluate(self, z: complex) -> np.ndarray:
        return self.coefficients.evaluate(z).theta0


class TerminatedEvaluator(SchurEvaluator):
    """
    Sequência terminada em Γ_p. Terminação unitária: transferência da
    unitária CMV finita. Terminação isométrica/co-isométrica: função
    coeficiente de nível p−1 fechada com Γ_p constante.
    """

    kind = "terminated"

    def __init__(self, sequence: ChoiceSequence, via_finite_cmv: Optional[bool] = None,
                 config: Optional[ToleranceConfig] = None):
        super().__init__(config)
        p = sequence.terminated
        if p is None:
            raise NotTerminated("TerminatedEvaluator exige sequência terminada")
        self.sequence = sequence
        self.p = p
        unitary = sequence.reason is ContractionClass.UNITARY
        self.via_finite_cmv = unitary if via_finite_cmv is None else via_finite_cmv
        if self.via_finite_cmv and not unitary:
            raise NotTerminated("CMV finita só é unitária para terminação unitária")

        self.terminal = sequence.entries[p].gamma
        self.finite = finite_cmv(sequence) if self.via_finite_cmv else None
        self.coefficients = (
            CoefficientFunction(sequence.prefix(p - 1), self.config)
            if not self.via_finite_cmv and p > 0 else None
        )

    @property
    def shape(self) -> Tuple[int, int]:
        return self.sequence.dim_n, self.sequence.dim_m

    def describe(self) -> str:
        return f"terminated(p={self.p}, {self.sequence.reason.value})"

    def _evaluate(self, z: complex) -> np.ndarray:
        if self.finite is not None:
            return transfer_function(self.finite.u0, self.finite.dim_n, self.finite.dim_m, z, self.config)
        if self.coefficients is None:
            return self.terminal.copy()
        blocks = self.coefficients.evaluate(z)
        return self.coefficients.compose(blocks, self.terminal)


class RecursiveEvaluator(SchurEvaluator):
    """
    Reconstrução de Möbius de trás para frente a partir da cauda nula:
        Θ_k = Γ_k + z D_{Γ*_k} Θ_{k+1} (I + z Γ*_k Θ_{k+1})⁻¹ D_{Γ_k}
    """

    kind = "recursive"

    def __init__(self, sequence: ChoiceSequence, config: Optional[ToleranceConfig] = None):
        super().__init__(config)
        self.sequence = sequence

    @property
    def shape(self) -> Tuple[int, int]:
        return self.sequence.dim_n, self.sequence.dim_m

    def _evaluate(self, z: complex) -> np.ndarray:
        theta = np.zeros(self.sequence.next_shape, dtype=complex)
        for entry in reversed(self.sequence.entries):
            inner = np.eye(theta.shape[0]) + z * theta @ entry.gstar_leg
            moebius = solve(inner, theta, self.config)
            theta = entry.gamma + z * entry.dstar_leg @ moebius @ entry.d_leg
        return theta


class SolutionEvaluator(SchurEvaluator):
    """Θ_E(z) = Θ⁽⁰⁾ + C E (I − A E)⁻¹ B para um parâmetro E avaliável"""

    kind = "solution"

    def __init__(self, coefficients: CoefficientFunction, parameter: SchurEvaluator,
                 config: Optional[ToleranceConfig] = None):
        super().__init__(config)
        self.coefficients = coefficients
        self.parameter = parameter

    @property
    def shape(self) -> Tuple[int, int]:
        return self.coefficients.gamma0.shape

    def describe(self) -> str:
        return f"solution(E={self.parameter.describe()})"

    def _evaluate(self, z: complex) -> np.ndarray:
        blocks = self.coefficients.evaluate(z)
        return self.coefficients.compose(blocks, self.parameter.evaluate(z))


def taylor_extract(evaluator: Callable[[complex], np.ndarray], order: int,
                   radius: Optional[float] = None, nodes: Optional[int] = None,
                   config: Optional[ToleranceConfig] = None) -> List[np.ndarray]:
    """
    C_k = r^{−k} (1/K) Σ_j f(r e^{iθ_j}) e^{−ikθ_j}, k = 0..order,
    com K nós equiespaçados no círculo de raio r.
    """
    config = resolve_config(config)
    radius = config.contour_radius if radius is None else radius
    nodes = config.contour_nodes if nodes is None else nodes
    if order < 0 or order >= nodes:
        raise ValueError(f"ordem {order} incompatível com {nodes} nós")
    angles = 2.0 * np.pi * np.arange(nodes) / nodes
    samples = np.array([np.asarray(evaluator(radius * np.exp(1j * angle)), dtype=complex)
                        for angle in angles])
    coefficients = []
    for k in range(order + 1):
        weights = np.exp(-1j * k * angles)
        coefficients.append(np.tensordot(weights, samples, axes=(0, 0)) / nodes / radius ** k)
    return coefficients


def certify_schur_norm(evaluator: Callable[[complex], np.ndarray],
                       radii: Sequence[float] = (0.3, 0.6, 0.9),
                       points_per_circle: int = 64) -> float:
    """Máximo de ‖Θ(z)‖ sobre a grade (certificado amostral, não analítico)"""
    if any(not (0.0 < r < 1.0) for r in radii):
        raise ValueError("raios devem estar em (0, 1)")
    best = 0.0
    for radius in radii:
        for j in range(points_per_circle):
            z = radius * np.exp(2j * np.pi * j / points_per_circle)
            best = max(best, operator_norm(evaluator(z)))
    return best


__all__ = [
    'SchurEvaluator',
    'ConstantEvaluator',
    'CentralEvaluator',
    'TerminatedEvaluator',
    'RecursiveEvaluator',
    'SolutionEvaluator',
    'taylor_extract',
    'certify_schur_norm'
]
