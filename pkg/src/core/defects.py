"""
Operadores e subespaços de defeito de contrações e rotações elementares 𝐉_Γ.
"""

from typing import Optional

import numpy as np
import scipy.linalg

from src.config import ToleranceConfig, resolve_config
from src.exceptions import NotContraction
from src.models import DefectData, RotationBlock, ContractionClass
from .linalg import as_matrix, block2x2, canonical_basis


def analyze_contraction(gamma, rel_tol: Optional[float] = None,
                        config: Optional[ToleranceConfig] = None,
                        force: Optional[ContractionClass] = None) -> DefectData:
    """
    Calcula D_Γ, D_{Γ*} e bases de 𝔇_Γ, 𝔇_{Γ*} a partir da SVD Γ = U Σ V*.

    Autovalores de defeito 1 − σ² abaixo de rel_tol são anulados nos dois
    lados, o que mantém Γ D_Γ = D_{Γ*} Γ exata na forma fatorada.
    force declara Γ isométrica, co-isométrica ou unitária: o lado
    correspondente é anulado por inteiro, junto com as direções pareadas
    por σ do outro lado.

    As bases dependem só dos projetores sobre os subespaços mantidos, logo
    analisar Γ* devolve exatamente as bases trocadas.
    """
    config = resolve_config(config)
    rel_tol = config.rank_tol if rel_tol is None else rel_tol
    gamma = as_matrix(gamma, "gamma")
    n_out, n_in = gamma.shape
    if gamma.size == 0 or (force is None and not np.any(gamma)):
        return DefectData.zero(n_out, n_in)

    u, s, vh = scipy.linalg.svd(gamma, full_matrices=True)
    if s[0] > 1.0 + config.contraction_slack:
        raise NotContraction(f"‖Γ‖ = {s[0]:.12g} excede 1 + {config.contraction_slack:.1e}")
    s = np.minimum(s, 1.0)

    defect_in = np.ones(n_in)
    defect_in[:s.size] = 1.0 - s ** 2
    defect_out = np.ones(n_out)
    defect_out[:s.size] = 1.0 - s ** 2
    keep_in = defect_in > rel_tol
    keep_out = defect_out > rel_tol
    if force in (ContractionClass.ISOMETRIC, ContractionClass.UNITARY):
        keep_in[:] = False
        keep_out[:s.size] = False
    if force in (ContractionClass.CO_ISOMETRIC, ContractionClass.UNITARY):
        keep_out[:] = False
        keep_in[:s.size] = False

    v = vh.conj().T
    d_gamma = (v * np.sqrt(np.where(keep_in, defect_in, 0.0))) @ v.conj().T
    d_gamma_star = (u * np.sqrt(np.where(keep_out, defect_out, 0.0))) @ u.conj().T

    kept_in, kept_out = v[:, keep_in], u[:, keep_out]
    basis_d = canonical_basis(kept_in @ kept_in.conj().T, kept_in.shape[1])
    basis_d_star = canonical_basis(kept_out @ kept_out.conj().T, kept_out.shape[1])

    dropped = np.concatenate([defect_in[~keep_in], defect_out[~keep_out]])
    truncation = float(np.sqrt(np.max(dropped))) if dropped.size else 0.0

    return DefectData(
        gamma=gamma,
        d_gamma=(d_gamma + d_gamma.conj().T) / 2,
        d_gamma_star=(d_gamma_star + d_gamma_star.conj().T) / 2,
        basis_d=basis_d,
        basis_d_star=basis_d_star,
        kind=ContractionClass.from_ranks(basis_d.shape[1], basis_d_star.shape[1]),
        truncation=truncation
    )


def elementary_rotation(dd: DefectData) -> RotationBlock:
    """
    𝐉_Γ = [[Γ, D_{Γ*}], [D_Γ, −Γ*]] com pernas comprimidas às bases de defeito.
    Blocos de largura zero produzem as formas linha, coluna e núcleo unitário.
    """
    matrix = block2x2(dd.gamma, dd.dstar_leg, dd.d_leg, -dd.gstar_leg)
    n_out, n_in = dd.shape
    return RotationBlock(
        matrix=matrix,
        kind=RotationBlock.kind_for(dd.kind),
        in_split=(n_in, dd.rank_star),
        out_split=(n_out, dd.rank)
    )
