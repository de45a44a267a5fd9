"""
Montagem das camadas bloco-diagonais de rotações elementares e de seus
produtos: sub-matrizes 𝒮ₙ, 𝒮̃ₙ, versões de tampa nula, elevação "chapéu"
para dados de comprimento par e unitárias CMV finitas de sequências terminadas.

Ordem dos espaços (posição k = 0..2n+1):
    𝒦ₙ : 𝔇_{Γ_k} para k par, 𝔇_{Γ*_k} para k ímpar  (𝓗ₖ = posições 2k−2, 2k−1)
    𝒦̃ₙ : 𝔇_{Γ*_k} para k par, 𝔇_{Γ_k} para k ímpar
"""

import logging
from typing import List, Optional, Union

import numpy as np

from src.exceptions import DegenerateTail, IndexOutOfRange, NotTerminated, ShapeMismatch
from src.models import BlockIndex, ChoiceSequence, CmvAssembly, ContractionClass, DefectData, FiniteCmv
from .defects import elementary_rotation

logger = logging.getLogger(__name__)

CAP_ZERO = "zero"
CAP_ACTUAL = "actual"


def _space_index(params: List[DefectData], tilde: bool) -> BlockIndex:
    spaces = []
    for k, dd in enumerate(params):
        primal = (k % 2 == 0) != tilde
        label = f"D(G{k})" if primal else f"D*(G{k})"
        spaces.append((label, dd.rank if primal else dd.rank_star))
    return BlockIndex(tuple(spaces))


def _place(target: np.ndarray, rows: slice, cols: slice, block: np.ndarray) -> None:
    if block.shape != (rows.stop - rows.start, cols.stop - cols.start):
        raise ShapeMismatch(
            "bloco não encaixa no índice", (rows.stop - rows.start, cols.stop - cols.start), block.shape
        )
    target[rows, cols] = block


def assemble(cs: ChoiceSequence, n: int, cap: Union[str, np.ndarray, None] = CAP_ZERO,
             allow_zero_tail: bool = False) -> CmvAssembly:
    """
    Monta V_n, W_n, W_{n,0} e os produtos 𝒮ₙ = W_n V_n, 𝒮̃ₙ = V_n W_n.

    cap: "zero" (𝒮ₙ,₀), "actual" (usa Γ_{2n+2} da sequência) ou uma matriz
    r*_{2n+1} × r_{2n+1}. A tampa nula exige 𝔇_{Γ_{2n+1}} e 𝔇_{Γ*_{2n+1}} não triviais.
    """
    if n < 0:
        raise IndexOutOfRange(f"n negativo: {n}")
    last = 2 * n + 1
    if not allow_zero_tail and last > cs.last_index:
        raise IndexOutOfRange(f"a sequência não possui Γ_{last}")
    params = [cs.param(k) for k in range(last + 1)]
    tail = params[last]

    if isinstance(cap, str) and cap == CAP_ACTUAL:
        if last + 1 > cs.last_index and not allow_zero_tail:
            raise IndexOutOfRange(f"a sequência não possui Γ_{last + 1} para a tampa")
        cap_matrix = cs.param(last + 1).gamma
    elif cap is None or (isinstance(cap, str) and cap == CAP_ZERO):
        if tail.rank == 0 or tail.rank_star == 0:
            raise DegenerateTail(
                f"tampa nula com defeitos triviais em Γ_{last} (r={tail.rank}, r*={tail.rank_star})"
            )
        cap_matrix = None
    else:
        cap_matrix = np.asarray(cap, dtype=complex)
    if cap_matrix is not None and cap_matrix.shape != (tail.rank_star, tail.rank):
        raise ShapeMismatch("tampa com forma incorreta", (tail.rank_star, tail.rank), cap_matrix.shape)

    index = _space_index(params, tilde=False)
    index_tilde = _space_index(params, tilde=True)

    v_n = np.zeros((index_tilde.total, index.total), dtype=complex)
    for j in range(1, last + 1, 2):
        rotation = elementary_rotation(params[j]).matrix
        _place(v_n, index_tilde.span([j - 1, j]), index.span([j - 1, j]), rotation)

    w_n0 = np.zeros((index.total, index_tilde.total), dtype=complex)
    _place(w_n0, index.slot(0), index_tilde.slot(0), -params[0].gstar_leg)
    for j in range(2, last, 2):
        rotation = elementary_rotation(params[j]).matrix
        _place(w_n0, index.span([j - 1, j]), index_tilde.span([j - 1, j]), rotation)

    w_n = w_n0.copy()
    if cap_matrix is not None:
        _place(w_n, index.slot(last), index_tilde.slot(last), cap_matrix)

    # Mapas de fronteira da atualização de tampa
    cap_row = np.zeros((tail.rank, index.total), dtype=complex)
    _place(cap_row, slice(0, tail.rank), index.span([last - 1, last]),
           np.hstack([tail.d_leg, -tail.gstar_leg]))
    cap_column = index.embedding([last])
    cap_row_tilde = index_tilde.projection([last])
    cap_column_tilde = np.zeros((index_tilde.total, tail.rank_star), dtype=complex)
    _place(cap_column_tilde, index_tilde.span([last - 1, last]), slice(0, tail.rank_star),
           np.vstack([tail.dstar_leg, -tail.gstar_leg]))

    boundary = {
        "h1": index.projection([0, 1]),
        "h_last": index.projection([last - 1, last]),
        "d_gamma0": index.embedding([0]),
        "d_gamma_star_last": cap_column,
        "d_gamma_last": cap_row_tilde,
    }

    logger.debug("montagem CMV n=%d, dim 𝒦ₙ=%d, tampa=%s", n, index.total,
                 "nula" if cap_matrix is None else "explícita")
    return CmvAssembly(
        n=n,
        v_n=v_n,
        w_n=w_n,
        w_n0=w_n0,
        s_n=w_n @ v_n,
        s_tilde_n=v_n @ w_n,
        s_n0=w_n0 @ v_n,
        s_tilde_n0=v_n @ w_n0,
        index=index,
        index_tilde=index_tilde,
        cap=cap_matrix,
        cap_row=cap_row,
        cap_column=cap_column,
        cap_row_tilde=cap_row_tilde,
        cap_column_tilde=cap_column_tilde,
        boundary=boundary
    )


def hat_lift(cs: ChoiceSequence) -> ChoiceSequence:
    """Prefixa Γ̂₀ = 0 ∈ 𝐋(𝔐, 𝔑); os defeitos de Γ̂₀ são identidades, então Γ̂_l = Γ_{l−1}"""
    head = DefectData.zero(cs.dim_n, cs.dim_m)
    return ChoiceSequence((head,) + cs.entries, cs.dim_m, cs.dim_n)


def finite_cmv(cs: ChoiceSequence) -> FiniteCmv:
    """
    𝒰₀ = 𝓛₀𝓜₀ e 𝒰̃₀ = 𝓜̃₀𝓛₀ com
        𝓛₀ = 𝐉_{Γ₀} ⊕ 𝐉_{Γ₂} ⊕ …,   𝓜₀ = I_𝔐 ⊕ 𝐉_{Γ₁} ⊕ 𝐉_{Γ₃} ⊕ …,   𝓜̃₀ = I_𝔑 ⊕ 𝐉_{Γ₁} ⊕ …

    Terminação unitária: matrizes finitas e unitárias. Terminação isométrica
    ou co-isométrica: seção noroeste até a posição p + 1 e aridade do
    deslocamento residual.
    """
    p = cs.terminated
    if p is None:
        raise NotTerminated("finite_cmv exige sequência terminada")
    reason = cs.reason
    terminal = cs.entries[p]
    if reason is ContractionClass.UNITARY:
        last, arity = p, 0
    else:
        last = p + 1
        arity = terminal.rank_star if reason is ContractionClass.ISOMETRIC else terminal.rank

    # uma posição extra garante a seção noroeste exata do produto banda
    params = [cs.param(k) for k in range(last + 2)]
    domain = _space_index(params, tilde=False)   # 𝓗₀: 𝔇_{Γ₀}, 𝔇_{Γ*₁}, 𝔇_{Γ₂}, …
    middle = _space_index(params, tilde=True)    # 𝓗̃₀: 𝔇_{Γ*₀}, 𝔇_{Γ₁}, …
    m, nn = cs.dim_m, cs.dim_n

    def shifted(index: BlockIndex, positions, offset: int) -> slice:
        span = index.span(positions)
        return slice(span.start + offset, span.stop + offset)

    # 𝓜₀ : 𝔐 ⊕ 𝓗₀ → 𝔐 ⊕ 𝓗̃₀
    m0 = np.zeros((m + middle.total, m + domain.total), dtype=complex)
    m0[:m, :m] = np.eye(m)
    # 𝓜̃₀ : 𝔑 ⊕ 𝓗₀ → 𝔑 ⊕ 𝓗̃₀
    m0_tilde = np.zeros((nn + middle.total, nn + domain.total), dtype=complex)
    m0_tilde[:nn, :nn] = np.eye(nn)
    for j in range(1, len(params), 2):
        rotation = elementary_rotation(params[j]).matrix
        _place(m0, shifted(middle, [j - 1, j], m), shifted(domain, [j - 1, j], m), rotation)
        _place(m0_tilde, shifted(middle, [j - 1, j], nn), shifted(domain, [j - 1, j], nn), rotation)

    # 𝓛₀ : 𝔐 ⊕ 𝓗̃₀ → 𝔑 ⊕ 𝓗₀
    l0 = np.zeros((nn + domain.total, m + middle.total), dtype=complex)
    rotation = elementary_rotation(params[0]).matrix
    _place(l0, slice(0, nn + domain.dims[0]), slice(0, m + middle.dims[0]), rotation)
    for j in range(2, len(params), 2):
        rotation = elementary_rotation(params[j]).matrix
        _place(l0, shifted(domain, [j - 1, j], nn), shifted(middle, [j - 1, j], m), rotation)

    u0 = l0 @ m0
    u0_tilde = m0_tilde @ l0
    keep = BlockIndex(domain.spaces[:last + 1])
    keep_tilde = BlockIndex(middle.spaces[:last + 1])
    u0 = u0[:nn + keep.total, :m + keep.total]
    u0_tilde = u0_tilde[:nn + keep_tilde.total, :m + keep_tilde.total]

    logger.debug("CMV finita: terminação %s em p=%d, aridade %d", reason.value, p, arity)
    return FiniteCmv(
        u0=u0,
        u0_tilde=u0_tilde,
        index=keep,
        reason=reason,
        tail_arity=arity,
        dim_m=m,
        dim_n=nn
    )
