from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np


class ContractionClass(Enum):
    """Classificação de uma contração pelos seus espaços de defeito"""
    STRICT = "strict"
    ISOMETRIC = "isometric"
    CO_ISOMETRIC = "co_isometric"
    UNITARY = "unitary"

    @classmethod
    def from_ranks(cls, rank: int, rank_star: int) -> 'ContractionClass':
        if rank == 0 and rank_star == 0:
            return cls.UNITARY
        if rank == 0:
            return cls.ISOMETRIC
        if rank_star == 0:
            return cls.CO_ISOMETRIC
        return cls.STRICT

    @property
    def is_degenerate(self) -> bool:
        return self is not ContractionClass.STRICT

    def adjoint(self) -> 'ContractionClass':
        if self is ContractionClass.ISOMETRIC:
            return ContractionClass.CO_ISOMETRIC
        if self is ContractionClass.CO_ISOMETRIC:
            return ContractionClass.ISOMETRIC
        return self


class RotationKind(Enum):
    """Forma da rotação elementar"""
    FULL = "full"
    ROW = "row"
    COLUMN = "column"
    UNITARY_CORE = "unitary_core"


_ROTATION_KIND = {
    ContractionClass.STRICT: RotationKind.FULL,
    ContractionClass.ISOMETRIC: RotationKind.ROW,
    ContractionClass.CO_ISOMETRIC: RotationKind.COLUMN,
    ContractionClass.UNITARY: RotationKind.UNITARY_CORE,
}


@dataclass(frozen=True, eq=False)
class DefectData:
    """
    Contração Γ (n_out × n_in) com seus operadores de defeito e bases
    ortonormais dos subespaços de defeito.

    As "pernas" comprimidas são as matrizes usadas em toda a montagem:
      d_leg     = basis_d* D_Γ                 (r × n_in)
      dstar_leg = D_{Γ*} basis_d_star          (n_out × r*)
      gstar_leg = basis_d* Γ* basis_d_star     (r × r*)
    """
    gamma: np.ndarray
    d_gamma: np.ndarray
    d_gamma_star: np.ndarray
    basis_d: np.ndarray
    basis_d_star: np.ndarray
    kind: ContractionClass
    truncation: float = 0.0   # maior √(autovalor de defeito) descartado

    @classmethod
    def zero(cls, rows: int, cols: int) -> 'DefectData':
        """Contração nula: defeitos são identidades, bases canônicas"""
        eye_in = np.eye(cols, dtype=complex)
        eye_out = np.eye(rows, dtype=complex)
        return cls(
            gamma=np.zeros((rows, cols), dtype=complex),
            d_gamma=eye_in,
            d_gamma_star=eye_out,
            basis_d=eye_in.copy(),
            basis_d_star=eye_out.copy(),
            kind=ContractionClass.from_ranks(cols, rows)
        )

    @property
    def shape(self) -> Tuple[int, int]:
        return self.gamma.shape

    @property
    def rank(self) -> int:
        """dim 𝔇_Γ"""
        return self.basis_d.shape[1]

    @property
    def rank_star(self) -> int:
        """dim 𝔇_{Γ*}"""
        return self.basis_d_star.shape[1]

    @property
    def d_leg(self) -> np.ndarray:
        return self.basis_d.conj().T @ self.d_gamma

    @property
    def dstar_leg(self) -> np.ndarray:
        return self.d_gamma_star @ self.basis_d_star

    @property
    def gstar_leg(self) -> np.ndarray:
        return self.basis_d.conj().T @ self.gamma.conj().T @ self.basis_d_star

    def adjoint(self) -> 'DefectData':
        """Dados de defeito de Γ*: troca exata dos dois lados"""
        return DefectData(
            gamma=self.gamma.conj().T.copy(),
            d_gamma=self.d_gamma_star,
            d_gamma_star=self.d_gamma,
            basis_d=self.basis_d_star,
            basis_d_star=self.basis_d,
            kind=self.kind.adjoint(),
            truncation=self.truncation
        )


@dataclass(frozen=True, eq=False)
class RotationBlock:
    """Rotação elementar 𝐉_Γ = [[Γ, D_{Γ*}], [D_Γ, −Γ*]] com pernas comprimidas"""
    matrix: np.ndarray
    kind: RotationKind
    in_split: Tuple[int, int]   # (n_in, r*)
    out_split: Tuple[int, int]  # (n_out, r)

    @staticmethod
    def kind_for(contraction_class: ContractionClass) -> RotationKind:
        return _ROTATION_KIND[contraction_class]
