from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .defect import ContractionClass


@dataclass(frozen=True)
class BlockIndex:
    """Soma direta ordenada de espaços (rótulo, dimensão); dimensões 0 são legais"""
    spaces: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        object.__setattr__(self, 'spaces', tuple((str(l), int(d)) for l, d in self.spaces))
        if any(dim < 0 for _, dim in self.spaces):
            raise ValueError("dimensão negativa em BlockIndex")

    @property
    def dims(self) -> List[int]:
        return [dim for _, dim in self.spaces]

    @property
    def labels(self) -> List[str]:
        return [label for label, _ in self.spaces]

    @property
    def offsets(self) -> List[int]:
        offsets, position = [], 0
        for dim in self.dims:
            offsets.append(position)
            position += dim
        return offsets

    @property
    def total(self) -> int:
        return int(sum(self.dims))

    def __len__(self) -> int:
        return len(self.spaces)

    def slot(self, position: int) -> slice:
        start = self.offsets[position]
        return slice(start, start + self.dims[position])

    def span(self, positions: Sequence[int]) -> slice:
        """Fatia contígua cobrindo as posições consecutivas dadas"""
        first, last = min(positions), max(positions)
        return slice(self.offsets[first], self.offsets[last] + self.dims[last])

    def embedding(self, positions: Sequence[int]) -> np.ndarray:
        """Injeção canônica da soma das posições dadas no espaço total"""
        columns = [np.arange(self.slot(p).start, self.slot(p).stop) for p in positions]
        selected = np.concatenate(columns) if columns else np.zeros(0, dtype=int)
        matrix = np.zeros((self.total, selected.size), dtype=complex)
        matrix[selected, np.arange(selected.size)] = 1.0
        return matrix

    def projection(self, positions: Sequence[int]) -> np.ndarray:
        return self.embedding(positions).T.copy()


@dataclass(frozen=True, eq=False)
class CmvAssembly:
    """
    Fatores V_n (𝒦ₙ → 𝒦̃ₙ), W_n, W_{n,0} (𝒦̃ₙ → 𝒦ₙ) e os produtos
    𝒮ₙ = W_n V_n, 𝒮̃ₙ = V_n W_n e suas versões de tampa nula.
    """
    n: int
    v_n: np.ndarray
    w_n: np.ndarray
    w_n0: np.ndarray
    s_n: np.ndarray
    s_tilde_n: np.ndarray
    s_n0: np.ndarray
    s_tilde_n0: np.ndarray
    index: BlockIndex
    index_tilde: BlockIndex
    cap: Optional[np.ndarray]
    # Mapas de fronteira
    cap_row: np.ndarray          # [D_{Γ_{2n+1}}, −Γ*_{2n+1}] P_{𝓗_{n+1}}
    cap_column: np.ndarray       # injeção de 𝔇_{Γ*_{2n+1}} em 𝒦ₙ
    cap_row_tilde: np.ndarray    # P_{𝔇_{Γ_{2n+1}}} em 𝒦̃ₙ
    cap_column_tilde: np.ndarray  # [D_{Γ*_{2n+1}}; −Γ*_{2n+1}] injetado em 𝒦̃ₙ
    boundary: Dict[str, np.ndarray] = field(default_factory=dict)

    @property
    def cap_shape(self) -> Tuple[int, int]:
        """Forma de Γ_{2n+2}: r*_{2n+1} × r_{2n+1}"""
        return self.cap_column.shape[1], self.cap_row.shape[0]

    def with_cap(self, gamma: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """(𝒮ₙ,Γ, 𝒮̃ₙ,Γ) pela atualização de posto finito da tampa nula"""
        gamma = np.asarray(gamma, dtype=complex)
        s_gamma = self.s_n0 + self.cap_column @ gamma @ self.cap_row
        s_tilde_gamma = self.s_tilde_n0 + self.cap_column_tilde @ gamma @ self.cap_row_tilde
        return s_gamma, s_tilde_gamma


@dataclass(frozen=True, eq=False)
class FiniteCmv:
    """
    Unitária CMV finita 𝒰₀ = 𝓛₀𝓜₀ (e 𝒰̃₀ = 𝓜̃₀𝓛₀) de uma sequência terminada.
    Para terminação isométrica/co-isométrica guarda a seção noroeste e a
    aridade do deslocamento residual.
    """
    u0: np.ndarray
    u0_tilde: np.ndarray
    index: BlockIndex        # espaço de entrada de 𝒰₀ (sem 𝔐)
    reason: ContractionClass
    tail_arity: int
    dim_m: int
    dim_n: int

    @property
    def unitary(self) -> bool:
        return self.tail_arity == 0

    @property
    def state_operator(self) -> np.ndarray:
        """CMV truncada 𝒯₀ = P_{𝓗₀} 𝒰₀ |𝓗₀"""
        return self.u0[self.dim_n:, self.dim_m:]
