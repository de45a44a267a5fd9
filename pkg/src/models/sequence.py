from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from src.exceptions import ShapeMismatch, IndexOutOfRange
from .defect import DefectData, ContractionClass


@dataclass(frozen=True, eq=False)
class SchurProblemData:
    """Dados de Taylor C₀..C_N do problema de Schur, cada um dim_n × dim_m"""
    dim_m: int
    dim_n: int
    coeffs: Tuple[np.ndarray, ...]

    def __post_init__(self):
        if self.dim_m < 1 or self.dim_n < 1:
            raise ShapeMismatch("dimensões devem ser positivas", (1, 1), (self.dim_n, self.dim_m))
        if not self.coeffs:
            raise ShapeMismatch("ao menos um coeficiente é necessário")
        normalized = []
        for coeff in self.coeffs:
            matrix = np.asarray(coeff, dtype=complex)
            if matrix.ndim == 0:
                matrix = matrix.reshape(1, 1)
            if matrix.shape != (self.dim_n, self.dim_m):
                raise ShapeMismatch(
                    "coeficiente com forma incorreta", (self.dim_n, self.dim_m), matrix.shape
                )
            if not np.all(np.isfinite(matrix)):
                raise ShapeMismatch("coeficiente com entradas não finitas")
            normalized.append(matrix)
        object.__setattr__(self, 'coeffs', tuple(normalized))

    @property
    def order(self) -> int:
        """N"""
        return len(self.coeffs) - 1

    def prefix(self, order: int) -> 'SchurProblemData':
        return SchurProblemData(self.dim_m, self.dim_n, self.coeffs[:order + 1])

    def adjoint(self) -> 'SchurProblemData':
        """Dados {C*_k} com dimensões trocadas"""
        return SchurProblemData(
            self.dim_n, self.dim_m, tuple(c.conj().T for c in self.coeffs)
        )


@dataclass(frozen=True, eq=False)
class ChoiceSequence:
    """
    Sequência de escolha Γ₀..Γ_L comprimida às bases de defeito da
    predecessora: Γ_k tem forma r*_{k−1} × r_{k−1} (k ≥ 1) e Γ₀ é dim_n × dim_m.

    A sequência termina no primeiro parâmetro isométrico, co-isométrico
    ou unitário; nenhuma entrada pode segui-lo.
    """
    entries: Tuple[DefectData, ...]
    dim_m: int
    dim_n: int

    def __post_init__(self):
        object.__setattr__(self, 'entries', tuple(self.entries))
        rows, cols = self.dim_n, self.dim_m
        for index, entry in enumerate(self.entries):
            if entry.shape != (rows, cols):
                raise ShapeMismatch(
                    f"parâmetro {index} não encadeia com a predecessora", (rows, cols), entry.shape
                )
            if entry.kind.is_degenerate and index != len(self.entries) - 1:
                raise ShapeMismatch(f"parâmetro {index} é degenerado mas não é o último")
            rows, cols = entry.rank_star, entry.rank

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def gammas(self) -> List[np.ndarray]:
        return [entry.gamma for entry in self.entries]

    @property
    def last_index(self) -> int:
        return len(self.entries) - 1

    @property
    def terminated(self) -> Optional[int]:
        """Índice p da terminação, se houver"""
        if self.entries and self.entries[-1].kind.is_degenerate:
            return self.last_index
        return None

    @property
    def reason(self) -> Optional[ContractionClass]:
        if self.terminated is None:
            return None
        return self.entries[-1].kind

    @property
    def next_shape(self) -> Tuple[int, int]:
        """Forma do parâmetro seguinte ao último: r*_L × r_L"""
        if not self.entries:
            return self.dim_n, self.dim_m
        last = self.entries[-1]
        return last.rank_star, last.rank

    def param(self, index: int) -> DefectData:
        """
        Parâmetro Γ_index; além da última entrada a continuação é nula
        (cauda central, ou pernas desaparecidas após a terminação).
        """
        if index < 0:
            raise IndexOutOfRange(f"índice negativo: {index}")
        if index < len(self.entries):
            return self.entries[index]
        return DefectData.zero(*self.next_shape)

    def padded(self, last_index: int) -> 'ChoiceSequence':
        """Sequência estendida com parâmetros nulos até last_index"""
        if self.terminated is not None and last_index > self.last_index:
            raise ShapeMismatch("sequência terminada não pode ser estendida")
        extra = [self.param(k) for k in range(len(self.entries), last_index + 1)]
        return ChoiceSequence(self.entries + tuple(extra), self.dim_m, self.dim_n)

    def prefix(self, last_index: int) -> 'ChoiceSequence':
        if last_index >= len(self.entries):
            raise IndexOutOfRange(f"sequência não possui o índice {last_index}")
        return ChoiceSequence(self.entries[:last_index + 1], self.dim_m, self.dim_n)

    def tail(self, start: int) -> 'ChoiceSequence':
        """Parâmetros Γ_start, Γ_start+1, … como sequência própria"""
        if start < 1:
            raise IndexOutOfRange("a cauda começa em índice >= 1")
        previous = self.param(start - 1)
        return ChoiceSequence(self.entries[start:], previous.rank, previous.rank_star)

    def adjoint(self) -> 'ChoiceSequence':
        return ChoiceSequence(
            tuple(entry.adjoint() for entry in self.entries), self.dim_n, self.dim_m
        )


@dataclass(eq=False)
class ProblemClassification:
    """Resultado da classificação de um problema de Schur"""
    solvable: bool
    unique: bool
    first_degenerate_index: Optional[int]
    shorted_m: Optional[np.ndarray]
    shorted_n: Optional[np.ndarray]
    toeplitz_norm: float
    degeneracy_threshold: float
    shorted_norms: List[Tuple[float, float]] = field(default_factory=list)

    def __post_init__(self):
        if self.unique and not self.solvable:
            raise ValueError("problema único precisa ser solúvel")
